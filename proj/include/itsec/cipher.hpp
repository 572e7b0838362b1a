#pragma once

#include "itsec/dist.hpp"

namespace itsec {

/// A (possibly randomized) symmetric-key encryption scheme over finite alphabets.
/// enc[k][m] is a distribution over ciphertexts; dec[k][c] a distribution over
/// the decode alphabet, which may differ from the message alphabet.
struct CipherSpec {
    std::string name;
    NumMode mode = NumMode::rational;
    std::vector<std::string> messages;
    std::vector<std::string> keys;
    std::vector<std::string> ciphertexts;
    std::vector<std::string> decoded;
    Dist p_key = Dist::uniform({"0"}, NumMode::rational);
    std::vector<std::vector<Dist>> enc; // [key][message] -> Dist over ciphertexts
    std::vector<std::vector<Dist>> dec; // [key][ciphertext] -> Dist over decoded
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> notices;
    bool ok() const { return violations.empty(); }
};

/// Structural validation: alphabet integrity, table shapes, mode consistency,
/// distributions normalized. Zero-probability keys and undecodable messages are
/// notices, not violations.
ValidationReport validate_spec(const CipherSpec& s, double tol = kDefaultTol);

/// Drops keys with exactly zero probability, renormalizing nothing (the
/// remaining mass already sums to one).
CipherSpec prune_zero_keys(const CipherSpec& s);

/// Full experiment joint over (message, decode, ciphertext) under message
/// distribution p_m: P(m, m~, c) = p_m(m) · Σ_k P_K(k) enc[k][m](c) dec[k][c](m~).
/// Axis names are "M", "Mdec", "C".
Joint execute(const CipherSpec& s, const Dist& p_m);

/// The induced message-to-ciphertext channel: A(c|m) = Σ_k P_K(k) enc[k][m](c).
Channel channel_matrix(const CipherSpec& s);

/// Decoding error probability per message: Pr{decode != m | M = m}. A decode
/// symbol outside the message alphabet always counts as an error.
std::vector<Num> per_message_error(const CipherSpec& s);

/// Deterministic scheme from an encryption table: enc_table[k][m] is the index
/// of the ciphertext for key k and message m. Each key's map must be injective;
/// decoding inverts it (unreachable ciphertexts decode to message 0).
CipherSpec deterministic_cipher(std::string name, std::vector<std::string> messages,
                                std::vector<std::string> keys,
                                std::vector<std::string> ciphertexts, Dist p_key,
                                const std::vector<std::vector<std::size_t>>& enc_table);

} // namespace itsec
