#pragma once

#include <vector>

#include "itsec/error.hpp"
#include "itsec/rational.hpp"

namespace itsec {

/// Linear program in the canonical form
///     minimize    c·x
///     subject to  A x >= b,  x >= 0.
/// Equality rows are passed as a pair of opposing inequalities by the caller.
template <class T>
struct LinearProgram {
    std::vector<std::vector<T>> a; // m rows, n columns
    std::vector<T> b;              // m
    std::vector<T> c;              // n
};

enum class LPStatus { optimal, infeasible, unbounded };

inline const char* lp_status_name(LPStatus s) {
    switch (s) {
        case LPStatus::optimal: return "optimal";
        case LPStatus::infeasible: return "infeasible";
        case LPStatus::unbounded: return "unbounded";
    }
    return "?";
}

/// Solution with a dual certificate. For the canonical form above the dual is
///     maximize    b·y
///     subject to  A^T y <= c,  y >= 0,
/// and optimality is witnessed by c·x = b·y.
template <class T>
struct LPSolution {
    LPStatus status = LPStatus::infeasible;
    std::vector<T> x;
    std::vector<T> y;
    T objective{};
    bool certified = false; // dual certificate re-verified from scratch
};

/// Dense two-phase simplex with Bland's pivoting rule (guaranteed terminating
/// in exact arithmetic). The T=double instantiation treats magnitudes below an
/// internal pivot tolerance as zero. On optimal exit the dual certificate is
/// re-checked constructively; a failed check raises an error rather than
/// returning an unverified optimum.
template <class T>
LPSolution<T> solve_lp(const LinearProgram<T>& lp);

/// Standalone certificate verification: primal feasibility, dual feasibility,
/// and matching objectives, each within tol (exactly for T=Rat with tol
/// ignored).
template <class T>
bool lp_certificate_ok(const LinearProgram<T>& lp, const LPSolution<T>& sol,
                       double tol = 1e-7);

extern template LPSolution<Rat> solve_lp<Rat>(const LinearProgram<Rat>&);
extern template LPSolution<double> solve_lp<double>(const LinearProgram<double>&);
extern template bool lp_certificate_ok<Rat>(const LinearProgram<Rat>&, const LPSolution<Rat>&,
                                            double);
extern template bool lp_certificate_ok<double>(const LinearProgram<double>&,
                                               const LPSolution<double>&, double);

} // namespace itsec
