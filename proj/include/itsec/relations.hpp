#pragma once

#include <string>
#include <vector>

#include "itsec/inequalities.hpp"
#include "itsec/metrics.hpp"

namespace itsec {

/// One verified inequality or identity between measured metrics. slack is
/// rhs - lhs in the mode the comparison ran in. A check is skipped only when
/// the two interval-valued sides genuinely cannot decide it.
struct RelationCheck {
    std::string name;
    Num lhs = Num::floating(0);
    Num rhs = Num::floating(0);
    Num slack = Num::floating(0);
    CheckStatus status = CheckStatus::holds;
    std::string note;
};

/// Evaluates the whole web of cross-metric relations on one scheme:
/// correctness route agreement, leakage lower/upper envelopes against the
/// joint distance, the pairwise/joint/posterior orderings, binary-test
/// equivalence, the simulator sandwich, and the center-radius orderings.
std::vector<RelationCheck> check_theorem1(const CipherSpec& s, const MetricOptions& opts = {});

enum class PriorMetric { joint_tv, posterior };

/// Exhaustive simplex-grid maximization of a prior-dependent metric,
/// independent of the adaptive search inside the metrics module. Corner
/// probes at gamma = resolution^-2 cover near-vertex suprema.
struct GridOracleResult {
    Num value = Num::floating(0);  // best objective over the probe set
    std::vector<double> argmax;
    double upper_estimate = 1.0;   // value plus a coarse allowance for grid gaps
    std::string note;
};

GridOracleResult grid_oracle(const CipherSpec& s, PriorMetric metric, std::size_t resolution);

/// One measured point of a scheme family, reduced to the quantities the
/// asymptotic class conditions talk about.
struct FamilySample {
    double kappa = 0;       // family index
    double n_messages = 0;
    double eps_ind = 0;     // worst message-pair advantage
    double delta = 0;       // correctness defect
    double mi_lower = 0;    // leakage bracket
    double mi_upper = 0;
};

/// Measures one materialized scheme into a sample point.
FamilySample sample_from_spec(double kappa, const CipherSpec& s, const MetricOptions& opts = {});

/// Parameter rules for the leaky-shift family.
enum class FamilyRule { inv_log_n, inv_n_squared };

/// Closed-form samples of the leaky-shift family: the transition matrix is
/// circulant, so the uniform prior attains the leakage supremum exactly and
/// sizes far beyond any materialized table are fine.
std::vector<FamilySample> leaky_shift_family(FamilyRule rule, const std::vector<double>& sizes);

struct TrendSeries {
    std::string name;
    std::vector<double> values;
    std::string trend; // "vanishing" / "growing" / "flat" / "inconclusive" (heuristic)
};

/// Products eps*log2|M|, eps*|M|, delta*log2|M| plus the leakage bracket,
/// with a fixed, explicitly heuristic trend classification: a series is
/// vanishing when it decreases across the last three samples and ends below
/// half its first value.
struct TrendReport {
    std::vector<FamilySample> samples;
    std::vector<TrendSeries> series;
    std::string classification;
};

TrendReport equivalence_diagnostics(const std::vector<FamilySample>& samples);

} // namespace itsec
