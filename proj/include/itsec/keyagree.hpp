#pragma once

#include "itsec/bounds.hpp"
#include "itsec/relations.hpp"

namespace itsec {

/// Round-based key agreement over a correlated resource (X, Y). Party A holds
/// x, party B holds y; they alternate sending one symbol from T per round
/// (A sends the odd rounds), each choice drawn from a table indexed by the
/// sender's symbol and the transcript so far. After the last round both sides
/// map (own symbol, full transcript) to a key. A silent round is encoded as a
/// constant distribution.
struct KASpec {
    std::string name;
    NumMode mode = NumMode::rational;
    std::vector<std::string> xs, ys, ts, keys;
    Joint p_xy = Joint::product(Dist::uniform({"0"}, NumMode::rational),
                                Dist::uniform({"0"}, NumMode::rational), "X", "Y");
    std::size_t rounds = 1; // odd

    /// f[i][sym][prefix]: distribution over ts sent in round i+1, where sym
    /// indexes xs for even i (A's rounds 1,3,...) and ys for odd i, and prefix
    /// is the big-endian index of the transcript so far (t1 most significant).
    std::vector<std::vector<std::vector<Dist>>> f;
    std::vector<std::vector<Dist>> g_a; // [x][full transcript index] -> Dist over keys
    std::vector<std::vector<Dist>> g_b; // [y][full transcript index]
};

/// Structural validation mirroring the cipher-side validator.
ValidationReport validate_ka(const KASpec& s, double tol = kDefaultTol);

/// Number of full transcripts |T|^rounds, guarding against overflow.
std::size_t transcript_count(const KASpec& s);

/// Exact joint over (K_A, K_B, T^rounds) by enumerating resource support,
/// every transcript path, and the output randomness. Axes "KA", "KB", "T";
/// transcript labels join the round symbols with commas.
Joint execute_ka(const KASpec& s, std::size_t cap = 1000000);

/// Measured security of one executed protocol against a uniform target key:
/// delta1 = max(Pr{K_A != K_B}, log2|K| - H(K_A)); delta2 the distance from
/// the ideal identical-uniform pair; eps1 the transcript leakage in bits;
/// eps2 the distance from key/transcript independence; eps3 the least such
/// distance over adversarially chosen transcript models (an LP optimum).
struct KAReport {
    MetricValue delta1, delta2, eps1, eps2, eps3;
    MetricValue simulator;               // bracket for the best simulator's advantage
    Num lower_bound = Num::rational(Rat(0)); // resource-size floor on any protocol
    std::size_t n_keys = 0, n_transcripts = 0, rounds = 0;
    double h0_xy = 0; // Hartley entropy of the resource support
};

KAReport ka_metrics(const KASpec& s, const MetricOptions& opts = {});

/// The six cross-metric inequalities between the report fields, with the
/// continuity-style ones decided only inside their sound regime (distance
/// <= 1/4) and otherwise skipped, never silently passed.
std::vector<RelationCheck> check_relation_ka(const KAReport& r, std::size_t n_keys,
                                             std::size_t n_transcript_symbols,
                                             std::size_t rounds);

/// [max(eps3/3, delta2), min(1, eps3 + 2 delta2)].
MetricValue ka_simulator_interval(const KAReport& r);

/// Exact best-simulator advantage inf_Q dist(P_{K_A K_B T}, ideal pair x Q),
/// as an LP optimum with a verified certificate.
MetricValue ka_simulator_advantage(const KASpec& s, const MetricOptions& opts = {});

/// max(0, 1 - |supp(P_XY)| * max_prob(target)): no protocol on this resource
/// can push the distinguishing advantage below this floor.
Num ka_lower_bound(const KASpec& s, const Dist& target_key);

/// Defect-plus-leakage floors against 1 - 2^{H0(X,Y)}/|K|, in four branch
/// shapes mixing sqrt(delta1), delta2, sqrt(eps1) and eps2/eps3. Branches
/// whose stated precondition delta1 <= 1 fails are reported indeterminate.
std::vector<BoundReport> check_bound303(const KAReport& r, double h0_xy, std::size_t n_keys);

/// Minimal admissible 2^{H0(X,Y)}/|K| ratio for a (delta*, eps*) target of
/// type (i, j), i in {1,2}, j in {1,2,3}; clamped at 0.
Num ka_resource_bound(const Num& delta_star, const Num& eps_star, int i, int j);

/// True when the branch bracket at (delta*, eps*) sits strictly below
/// 1 - 2^{h0 - hmin}: no such protocol can exist.
bool ka_impossible(const Num& delta_star, const Num& eps_star, double h0_xy,
                   double hmin_key, int i, int j);

} // namespace itsec
