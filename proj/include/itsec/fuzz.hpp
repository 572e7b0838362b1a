#pragma once

#include "itsec/keyagree.hpp"
#include "itsec/prng.hpp"

namespace itsec {

/// Campaign settings. Trial i always runs on the stream derived from
/// (seed, i), so the report is identical for every --jobs value.
struct FuzzConfig {
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t jobs = 0; // 0: one worker per logical core
    NumMode mode = NumMode::rational;
    /// Negative control: corrupt one measured metric per trial and demand the
    /// downstream checks notice. A run with this flag must end with at least
    /// one recorded violation per trial, never zero.
    bool inject_defect = false;
    MetricOptions metric_options{};
};

struct TrialOutcome {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> violations;
    std::string error; // nonempty when the trial itself failed to run
    bool clean() const { return violations.empty() && error.empty(); }
};

struct CampaignReport {
    std::string kind; // "cipher" or "keyagreement"
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    bool defect_injected = false;
    std::size_t checks_run = 0;   // relation + bound checks evaluated in total
    std::size_t n_violations = 0; // violating checks summed over trials
    std::vector<TrialOutcome> failures; // non-clean trials only, by index
    double elapsed_seconds = 0;
};

/// Random scheme: alphabet sizes in [1,5], exact rational entries with small
/// denominators (converted once when mode is float), decode tables split
/// between deterministic and randomized.
CipherSpec random_cipher_spec(SplitMix64& rng, NumMode mode = NumMode::rational);

/// Random protocol: alphabet sizes in [1,3], one or three rounds, output
/// tables split between agreeing point masses and independent noise.
KASpec random_ka_spec(SplitMix64& rng, NumMode mode = NumMode::rational);

/// Measures every generated scheme, runs the full relation web plus the
/// key/message-size bounds, and records each "violated" verdict. With
/// inject_defect the corrupted report must be rejected by the consistency
/// net instead.
CampaignReport run_cipher_campaign(const FuzzConfig& cfg);

/// Same for protocols: the cross-metric relations, the resource bounds, and
/// containment of the LP-computed simulator advantage in its reported
/// bracket. With inject_defect the corrupted report must fail a relation.
CampaignReport run_ka_campaign(const FuzzConfig& cfg);

} // namespace itsec
