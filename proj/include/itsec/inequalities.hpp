#pragma once

#include <optional>
#include <utility>

#include "itsec/infotheory.hpp"

namespace itsec {

enum class CheckStatus { holds, violated, skipped };

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::holds: return "holds";
        case CheckStatus::violated: return "violated";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

struct IdentityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    CheckStatus status = CheckStatus::skipped;
    std::string note;
};

/// TV distance between same-shape joints (any rank). Exact in rational mode.
Num tv_joint(const Joint& a, const Joint& b);

/// Pr{X != X'} of a rank-3 coupling over (X, X', Y) with shared X/X' alphabet.
Num coupling_mismatch_probability(const Joint& coupling);

struct DistanceIdentityInput {
    /// Rank-3 coupling over (X, X', Y); axes 0 and 1 share an alphabet.
    std::optional<Joint> coupling;
    /// Two same-shape rank-2 joints (for marginal-vs-joint TV monotonicity).
    std::optional<std::pair<Joint, Joint>> joint_pair;
    /// Two channels over identical input/output alphabets (sup-over-priors
    /// distance versus worst-row distance).
    std::optional<std::pair<Channel, Channel>> channel_pair;
    /// A 2x2 joint (diagonal correlation splits into per-symbol halves).
    std::optional<Joint> binary_joint;
};

/// Distance identities, checked exactly in rational mode:
///  - coupling-diagonal-tv: Δ(P_XXY, P_XX'Y) = Pr{X≠X'}
///  - coupling-marginal-tv: Δ(P_X, P_X') ≤ Pr{X≠X'}
///  - marginal-le-joint-tv: Δ of marginals ≤ Δ of joints (each axis)
///  - prior-sup-equals-worst-row: sup_P Δ(P∘W1, P∘W2) = max_x Δ(W1(·|x), W2(·|x)),
///    the sup evaluated by vertex + grid + near-vertex search over priors
///  - binary-correlation-split: |P(ℓ,ℓ) − P_X(ℓ)P_Y(ℓ)| = s/2 per symbol,
///    where s = |Pr{X=Y} − Σ_ℓ P_X(ℓ)P_Y(ℓ)|
std::vector<IdentityCheck> verify_distance_identities(const DistanceIdentityInput& in,
                                                      double tol = kDefaultTol);

struct EntropyBoundInput {
    std::optional<std::pair<Dist, Dist>> dist_pair;
    std::optional<Joint> joint;
};

/// Entropy/distance inequalities with 0·log 0 := 0:
///  - pinsker: D(p‖q) ≥ (2/ln 2)·Δ(p,q)²       (total: D may be +∞)
///  - entropy-continuity: |H(p) − H(q)| ≤ −2Δ·log2(2Δ/|X|), guarded by Δ ≤ 1/4
///    (skipped with a precondition note otherwise)
///  - mi-tv-lower: I(X;Y) ≥ (2/ln 2)·Δ(P_XY, P_X×P_Y)²
///  - mi-tv-upper: I(X;Y) ≤ −2Δ·log2(2Δ/(|X||Y|)), guarded by Δ ≤ 1/4
std::vector<IdentityCheck> verify_entropy_distance_bounds(const EntropyBoundInput& in,
                                                          double tol = kDefaultTol);

} // namespace itsec
