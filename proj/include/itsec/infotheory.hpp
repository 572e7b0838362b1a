#pragma once

#include "itsec/dist.hpp"

namespace itsec {

/// Total variation (statistical) distance, (1/2)·Σ|p−q|. Mode-preserving and
/// exact in rational mode. Operands must share one alphabet.
Num tv_distance(const Dist& p, const Dist& q);

/// All logs are base 2 and 0·log 0 := 0 throughout.
struct EntropyTriple {
    Num shannon;  ///< H(P) in bits
    Num min_ent;  ///< −log2 max_x P(x), minimized over the support
    Num hartley;  ///< log2 |supp(P)|
};

/// Entropy values are float-mode (they are transcendental in general) with
/// exact special cases: point mass → all 0; exactly uniform → all log2(n).
EntropyTriple entropies(const Dist& p);

/// h(p) = −p log p − (1−p) log(1−p); argument must lie in [0,1].
Num binary_entropy(const Num& p);

/// I(X;Y) of a rank-2 joint, in bits (float-mode Num). Exactly 0 iff the
/// joint equals the product of its marginals (decided exactly in rational
/// mode, so independence yields hard zero).
Num mutual_information(const Joint& j);

/// D(p‖q) in bits. Support violation yields +infinity (a value, not an
/// error), so downstream inequality checks remain total.
Num kl_divergence(const Dist& p, const Dist& q);

/// Δ(P_{X|Z}, P_{Y|Z}) := Σ_z P(z)·Δ(P_{X|Z=z}, P_{Y|Z=z}) for two rank-2
/// joints over (Z, X) and (Z, Y) with identical Z marginals and a shared
/// X/Y alphabet. Mode-preserving; exact in rational mode.
Num conditional_tv(const Joint& zx, const Joint& zy, double tol = kDefaultTol);

} // namespace itsec
