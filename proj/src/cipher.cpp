#include "itsec/cipher.hpp"

#include <set>

namespace itsec {

namespace {

void require_alphabet(const std::vector<std::string>& labels, const char* what,
                      std::vector<std::string>& violations) {
    if (labels.empty()) {
        violations.push_back(std::string(what) + ": empty alphabet");
        return;
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) violations.push_back(std::string(what) + ": empty label");
        if (!seen.insert(l).second)
            violations.push_back(std::string(what) + ": duplicate label '" + l + "'");
    }
}

} // namespace

ValidationReport validate_spec(const CipherSpec& s, double tol) {
    ValidationReport r;
    require_alphabet(s.messages, "messages", r.violations);
    require_alphabet(s.keys, "keys", r.violations);
    require_alphabet(s.ciphertexts, "ciphertexts", r.violations);
    require_alphabet(s.decoded, "decoded", r.violations);
    if (!r.violations.empty()) return r;

    if (s.p_key.labels() != s.keys) r.violations.push_back("key distribution alphabet mismatch");
    if (s.p_key.mode() != s.mode) r.violations.push_back("key distribution mode mismatch");

    if (s.enc.size() != s.keys.size()) {
        r.violations.push_back("enc table: one row per key expected");
    } else {
        for (std::size_t k = 0; k < s.enc.size(); ++k) {
            if (s.enc[k].size() != s.messages.size()) {
                r.violations.push_back("enc table: row " + s.keys[k] +
                                       " must have one entry per message");
                continue;
            }
            for (const Dist& d : s.enc[k]) {
                if (d.labels() != s.ciphertexts)
                    r.violations.push_back("enc entry under key " + s.keys[k] +
                                           ": ciphertext alphabet mismatch");
                if (d.mode() != s.mode)
                    r.violations.push_back("enc entry under key " + s.keys[k] +
                                           ": mode mismatch");
            }
        }
    }
    if (s.dec.size() != s.keys.size()) {
        r.violations.push_back("dec table: one row per key expected");
    } else {
        for (std::size_t k = 0; k < s.dec.size(); ++k) {
            if (s.dec[k].size() != s.ciphertexts.size()) {
                r.violations.push_back("dec table: row " + s.keys[k] +
                                       " must have one entry per ciphertext");
                continue;
            }
            for (const Dist& d : s.dec[k]) {
                if (d.labels() != s.decoded)
                    r.violations.push_back("dec entry under key " + s.keys[k] +
                                           ": decode alphabet mismatch");
                if (d.mode() != s.mode)
                    r.violations.push_back("dec entry under key " + s.keys[k] +
                                           ": mode mismatch");
            }
        }
    }
    (void)tol; // Dist construction already enforced normalization.

    if (r.violations.empty()) {
        for (std::size_t k = 0; k < s.keys.size(); ++k)
            if (s.p_key.prob(k).is_zero_exact())
                r.notices.push_back("key " + s.keys[k] + " has zero probability");
        for (const auto& m : s.messages) {
            bool decodable = false;
            for (const auto& d : s.decoded)
                if (d == m) {
                    decodable = true;
                    break;
                }
            if (!decodable)
                r.notices.push_back("message " + m + " is absent from the decode alphabet");
        }
    }
    return r;
}

CipherSpec prune_zero_keys(const CipherSpec& s) {
    CipherSpec out = s;
    out.keys.clear();
    out.enc.clear();
    out.dec.clear();
    std::vector<Num> probs;
    for (std::size_t k = 0; k < s.keys.size(); ++k) {
        if (s.p_key.prob(k).is_zero_exact()) continue;
        out.keys.push_back(s.keys[k]);
        probs.push_back(s.p_key.prob(k));
        out.enc.push_back(s.enc[k]);
        out.dec.push_back(s.dec[k]);
    }
    if (out.keys.empty()) throw Error(Errc::invalid_argument, "all keys have zero probability");
    out.p_key = Dist::create(out.keys, probs, 1e-6);
    return out;
}

Joint execute(const CipherSpec& s, const Dist& p_m) {
    if (p_m.labels() != s.messages)
        throw Error(Errc::alphabet_mismatch, "execute: message distribution alphabet mismatch");
    if (p_m.mode() != s.mode) throw Error(Errc::mode_mismatch, "execute: mixed modes");
    const std::size_t nm = s.messages.size(), nd = s.decoded.size(), nc = s.ciphertexts.size();
    std::vector<Num> cells(nm * nd * nc, Num::zero(s.mode));
    for (std::size_t m = 0; m < nm; ++m) {
        if (p_m.prob(m).is_zero_exact()) continue;
        for (std::size_t k = 0; k < s.keys.size(); ++k) {
            const Num pk = p_m.prob(m) * s.p_key.prob(k);
            if (pk.is_zero_exact()) continue;
            const Dist& ek = s.enc[k][m];
            for (std::size_t c = 0; c < nc; ++c) {
                if (ek.prob(c).is_zero_exact()) continue;
                const Num pkc = pk * ek.prob(c);
                const Dist& dk = s.dec[k][c];
                for (std::size_t d = 0; d < nd; ++d)
                    cells[(m * nd + d) * nc + c] = cells[(m * nd + d) * nc + c] + pkc * dk.prob(d);
            }
        }
    }
    return Joint::create({Axis{"M", s.messages}, Axis{"Mdec", s.decoded},
                          Axis{"C", s.ciphertexts}},
                         cells, 1e-6);
}

Channel channel_matrix(const CipherSpec& s) {
    std::vector<Dist> columns;
    columns.reserve(s.messages.size());
    for (std::size_t m = 0; m < s.messages.size(); ++m) {
        std::vector<Num> col(s.ciphertexts.size(), Num::zero(s.mode));
        for (std::size_t k = 0; k < s.keys.size(); ++k) {
            const Num pk = s.p_key.prob(k);
            if (pk.is_zero_exact()) continue;
            for (std::size_t c = 0; c < s.ciphertexts.size(); ++c)
                col[c] = col[c] + pk * s.enc[k][m].prob(c);
        }
        columns.push_back(Dist::create(s.ciphertexts, col, 1e-6));
    }
    return Channel::create(s.messages, std::move(columns));
}

std::vector<Num> per_message_error(const CipherSpec& s) {
    // Map each message label to its slot in the decode alphabet, if any.
    std::vector<std::optional<std::size_t>> slot(s.messages.size());
    for (std::size_t m = 0; m < s.messages.size(); ++m)
        for (std::size_t d = 0; d < s.decoded.size(); ++d)
            if (s.decoded[d] == s.messages[m]) {
                slot[m] = d;
                break;
            }
    std::vector<Num> err(s.messages.size(), Num::zero(s.mode));
    for (std::size_t m = 0; m < s.messages.size(); ++m) {
        Num correct = Num::zero(s.mode);
        if (slot[m]) {
            for (std::size_t k = 0; k < s.keys.size(); ++k) {
                const Num pk = s.p_key.prob(k);
                if (pk.is_zero_exact()) continue;
                for (std::size_t c = 0; c < s.ciphertexts.size(); ++c) {
                    const Num w = pk * s.enc[k][m].prob(c);
                    if (!w.is_zero_exact()) correct = correct + w * s.dec[k][c].prob(*slot[m]);
                }
            }
        }
        err[m] = Num::one(s.mode) - correct;
    }
    return err;
}

CipherSpec deterministic_cipher(std::string name, std::vector<std::string> messages,
                                std::vector<std::string> keys,
                                std::vector<std::string> ciphertexts, Dist p_key,
                                const std::vector<std::vector<std::size_t>>& enc_table) {
    const NumMode mode = p_key.mode();
    CipherSpec s;
    s.name = std::move(name);
    s.mode = mode;
    s.messages = std::move(messages);
    s.keys = std::move(keys);
    s.ciphertexts = std::move(ciphertexts);
    s.decoded = s.messages;
    s.p_key = std::move(p_key);
    if (enc_table.size() != s.keys.size())
        throw Error(Errc::invalid_argument, "enc table: one row per key expected");
    s.enc.resize(s.keys.size());
    s.dec.resize(s.keys.size());
    for (std::size_t k = 0; k < s.keys.size(); ++k) {
        if (enc_table[k].size() != s.messages.size())
            throw Error(Errc::invalid_argument, "enc table: one entry per message expected");
        std::vector<std::optional<std::size_t>> inverse(s.ciphertexts.size());
        for (std::size_t m = 0; m < s.messages.size(); ++m) {
            const std::size_t c = enc_table[k][m];
            if (c >= s.ciphertexts.size())
                throw Error(Errc::invalid_argument, "enc table: ciphertext index out of range");
            if (inverse[c])
                throw Error(Errc::invalid_argument, "enc table: key map not injective");
            inverse[c] = m;
            s.enc[k].push_back(Dist::point_mass(s.ciphertexts, c, mode));
        }
        for (std::size_t c = 0; c < s.ciphertexts.size(); ++c)
            s.dec[k].push_back(Dist::point_mass(s.decoded, inverse[c].value_or(0), mode));
    }
    return s;
}

} // namespace itsec
