#pragma once

#include <cstdint>
#include <map>

#include "itsec/cipher.hpp"
#include "itsec/metric_value.hpp"

namespace itsec {

struct MetricOptions {
    double tol = kDefaultTol;          // capacity gap target and float comparisons
    std::size_t ba_max_iter = 100000;  // capacity iteration cap
    std::size_t lp_cell_cap = 4096;    // |M|·|C| limit for the exact-rational LP
    std::size_t state_cap = 1000000;   // protocol path-enumeration limit
    int search_restarts = 8;           // randomized restarts for prior searches
    std::uint64_t seed = 1;            // restart PRNG seed (fully deterministic)
};

/// Decoding failure, worst case over priors. All three standard readings of
/// correctness coincide; in rational mode the joint-distance reading is
/// recomputed at every vertex prior and asserted equal.
MetricValue delta_all(const CipherSpec& s);

/// Worst pairwise ciphertext-distribution distance (indistinguishability
/// advantage; also the binary-test advantage and the worst conditional-vs-
/// marginal distance, which all coincide). Exact.
MetricValue eps_ind(const CipherSpec& s);

/// Chebyshev radius of the channel columns in total variation: the least
/// worst-case distance to a common center. Exact LP optimum with a verified
/// dual certificate. Equals the simulator-style advantage at E's interface.
MetricValue eps_radius(const CipherSpec& s, const MetricOptions& opts = {});

/// sup over priors of I(M;C) = capacity of the message-to-ciphertext channel.
/// Certified interval from alternating maximization; closed forms for
/// constant and noiseless channels.
MetricValue eps_mi_sup(const CipherSpec& s, const MetricOptions& opts = {});

/// sup over priors of the joint-vs-product distance. Interval: hi is the
/// pairwise advantage, lo the best evaluated prior (always >= hi/2 via the
/// two-point prior on the worst pair).
MetricValue eps_joint_tv(const CipherSpec& s, const MetricOptions& opts = {});

/// sup over priors of the worst posterior-vs-prior distance. Interval: lo
/// from candidate priors, pairwise posterior distances, and a vertex-limit
/// rule; hi from the Fano/Pinsker envelope when applicable, else 1.
MetricValue eps_posterior(const CipherSpec& s, const MetricOptions& opts = {});

/// Semantic-security advantage, bracketed by the binary-test advantage:
/// [eps_ind/4, eps_ind]. The inner optimization is not computed.
MetricValue eps_semantic(const CipherSpec& s);

/// Full simulator advantage (real vs ideal with decode), bracketed by
/// [max(radius, delta), min(1, radius + delta)].
MetricValue eps_composable(const CipherSpec& s, const MetricOptions& opts = {});

struct SecurityReport {
    MetricValue delta;              // common value of the three correctness readings
    std::map<int, MetricValue> eps; // j in 1..10
    std::size_t n_keys = 0, n_messages = 0, n_ciphertexts = 0;
};

/// All metrics at once, with cross-metric consistency asserted on construction.
SecurityReport security_report(const CipherSpec& s, const MetricOptions& opts = {});

/// The internal consistency net applied to every fresh report: the tied
/// pairwise/joint/radius orderings must hold or the report is rejected.
/// Exposed so corrupted-report negative controls can prove the net catches.
void check_report_consistency(const SecurityReport& r, double tol = kDefaultTol);

enum class Ternary { yes, no, unknown };

inline const char* ternary_name(Ternary t) {
    switch (t) {
        case Ternary::yes: return "yes";
        case Ternary::no: return "no";
        case Ternary::unknown: return "unknown";
    }
    return "?";
}

/// Threshold test for type (i, j): yes if the metric surely meets the bound,
/// no if it surely exceeds it, unknown when the interval straddles.
Ternary is_type_secure(const SecurityReport& r, int i, int j, const Num& delta_star,
                       const Num& eps_star);

} // namespace itsec
