#pragma once

#include <cstdint>
#include <vector>

#include "itsec/cipher.hpp"

namespace itsec {

/// Square transition matrix, a[i][j] = P(output i | input j).
using Matrix = std::vector<std::vector<Num>>;

bool is_doubly_stochastic(const Matrix& a, double tol = kDefaultTol);

struct BirkhoffTerm {
    Num weight;                    // > 0
    std::vector<std::size_t> perm; // input j maps to output perm[j]
};

struct BirkhoffDecomposition {
    std::vector<BirkhoffTerm> terms;

    /// Σ weight · permutation-matrix.
    Matrix reconstruct(std::size_t n, NumMode mode) const;
};

/// Shift cipher with a uniform key: c = m + k (mod n). Perfectly secret.
CipherSpec one_time_pad(std::size_t n);

/// Sometimes-identity shift cipher: the identity shift carries probability
/// eps + (1-eps)/n and each other shift (1-eps)/n. Its transition matrix has
/// eps + (1-eps)/n on the diagonal and (1-eps)/n elsewhere; the worst message
/// pair is exactly eps apart while the uniform-prior leakage stays large.
struct LeakyShiftScheme {
    CipherSpec spec;
    Matrix matrix;
    double mi_uniform; // closed-form mutual information at the uniform prior
};
LeakyShiftScheme counterexample_scheme(std::size_t n, const Rat& eps);

/// Closed form for the uniform-prior mutual information of the family above;
/// usable at sizes far beyond what a materialized table could hold.
double counterexample_mi(double n, double eps);

/// Worst pairwise column distance of the family (equals eps by construction).
/// Kept as a named helper so large-size diagnostics share one source of truth.
double counterexample_eps_ind(double eps);

/// Greedy extraction: repeatedly take the lexicographically smallest perfect
/// matching on the strictly positive entries and subtract its minimum covered
/// entry. A Caratheodory pass afterwards enforces the (n-1)^2 + 1 term cap.
BirkhoffDecomposition birkhoff_decompose(const Matrix& a, double tol = kDefaultTol);

/// Keys = decomposition permutations, key distribution = weights. The induced
/// transition matrix reproduces `a` and decryption never errs.
CipherSpec scheme_from_matrix(const Matrix& a, double tol = kDefaultTol);

/// Convex combination of `term_count` random permutations with random
/// rational weights. Deterministic per seed.
Matrix random_doubly_stochastic(std::size_t n, std::size_t term_count, std::uint64_t seed);

/// Tight trade-off constructions: shrink the key below |M| by either giving
/// up correctness (zero_advantage: every message errs with probability
/// exactly delta while ciphertexts stay message-independent) or secrecy
/// (zero_error: decryption is perfect and the worst pair advantage stays
/// at most eps).
enum class TightKind { zero_advantage, zero_error };

/// zero_advantage: param = delta, requires delta * n integral; |K| = (1-delta)n.
/// zero_error:     param = eps, requires eps * n / 2 integral; |K| = (1-eps/2)n.
CipherSpec tight_scheme(TightKind kind, std::size_t n, const Rat& param);

} // namespace itsec
