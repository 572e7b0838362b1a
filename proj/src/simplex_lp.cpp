#include "itsec/simplex_lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace itsec {

namespace {

template <class T>
struct Scalar;

template <>
struct Scalar<Rat> {
    static bool is_zero(const Rat& v) { return sgn(v) == 0; }
    static bool is_neg(const Rat& v) { return sgn(v) < 0; }
    static bool is_pos(const Rat& v) { return sgn(v) > 0; }
    static bool feas_tol(const Rat& v, double) { return sgn(v) >= 0; } // v >= 0 exactly
};

template <>
struct Scalar<double> {
    static constexpr double kPivotEps = 1e-11;
    static bool is_zero(double v) { return std::abs(v) < kPivotEps; }
    static bool is_neg(double v) { return v < -kPivotEps; }
    static bool is_pos(double v) { return v > kPivotEps; }
    static bool feas_tol(double v, double tol) { return v >= -tol; }
};

constexpr std::size_t kNoCol = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kMaxPivots = 2000000;

template <class T>
class Tableau {
public:
    Tableau(const LinearProgram<T>& lp) : lp_(lp), m_(lp.a.size()), n_(lp.c.size()) {
        for (const auto& row : lp.a)
            if (row.size() != n_)
                throw Error(Errc::invalid_argument, "lp: ragged constraint matrix");
        if (lp.b.size() != m_) throw Error(Errc::invalid_argument, "lp: rhs size mismatch");

        negated_.assign(m_, false);
        aux_col_.assign(m_, kNoCol);
        art_col_.assign(m_, kNoCol);
        std::size_t n_art = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (!Scalar<T>::is_neg(lp.b[i])) ++n_art;
        cols_ = n_ + m_ + n_art;
        rows_.assign(m_, std::vector<T>(cols_ + 1, T(0)));
        basis_.assign(m_, kNoCol);

        std::size_t next_art = n_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            const bool neg = Scalar<T>::is_neg(lp.b[i]);
            negated_[i] = neg;
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = neg ? T(-lp.a[i][j]) : lp.a[i][j];
            rows_[i][cols_] = neg ? T(-lp.b[i]) : lp.b[i];
            aux_col_[i] = n_ + i;
            if (neg) {
                rows_[i][aux_col_[i]] = T(1); // slack of the flipped <= row
                basis_[i] = aux_col_[i];
            } else {
                rows_[i][aux_col_[i]] = T(-1); // surplus of the >= row
                art_col_[i] = next_art++;
                rows_[i][art_col_[i]] = T(1);
                basis_[i] = art_col_[i];
            }
        }
    }

    LPSolution<T> run() {
        LPSolution<T> sol;
        // Phase 1: minimize the sum of artificials.
        std::vector<T> z(cols_ + 1, T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (art_col_[i] != kNoCol) z[art_col_[i]] = T(1);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] == art_col_[i] && art_col_[i] != kNoCol)
                for (std::size_t j = 0; j <= cols_; ++j) z[j] = z[j] - rows_[i][j];
        if (!iterate(z, /*allow_artificial=*/true)) // phase 1 is always bounded
            throw Error(Errc::invalid_argument, "lp: phase 1 reported unbounded");
        T infeas(0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_ + m_) infeas = infeas + rows_[i][cols_];
        if (Scalar<T>::is_pos(infeas)) {
            sol.status = LPStatus::infeasible;
            return sol;
        }
        drive_out_artificials();

        // Phase 2: minimize the real objective, artificials barred from entering.
        z.assign(cols_ + 1, T(0));
        for (std::size_t j = 0; j < n_; ++j) z[j] = lp_.c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_ || Scalar<T>::is_zero(lp_.c[basis_[i]])) continue;
            const T cb = lp_.c[basis_[i]];
            for (std::size_t j = 0; j <= cols_; ++j) z[j] = z[j] - cb * rows_[i][j];
        }
        if (!iterate(z, /*allow_artificial=*/false)) {
            sol.status = LPStatus::unbounded;
            return sol;
        }

        sol.status = LPStatus::optimal;
        sol.x.assign(n_, T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = rows_[i][cols_];
        sol.objective = T(0);
        for (std::size_t j = 0; j < n_; ++j) sol.objective = sol.objective + lp_.c[j] * sol.x[j];
        // Dual values read off the reduced costs of the unit columns +e_i.
        sol.y.assign(m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t unit = (art_col_[i] != kNoCol) ? art_col_[i] : aux_col_[i];
            T yi = T(0) - z[unit];
            sol.y[i] = negated_[i] ? T(-yi) : yi;
        }
        return sol;
    }

private:
    // Bland's rule simplex loop on the current cost row z. Returns false on
    // detecting an unbounded direction.
    bool iterate(std::vector<T>& z, bool allow_artificial) {
        for (std::size_t pivots = 0; pivots < kMaxPivots; ++pivots) {
            const std::size_t limit = allow_artificial ? cols_ : n_ + m_;
            std::size_t enter = kNoCol;
            for (std::size_t j = 0; j < limit; ++j)
                if (Scalar<T>::is_neg(z[j])) {
                    enter = j;
                    break;
                }
            if (enter == kNoCol) return true;

            std::size_t leave = kNoCol;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!Scalar<T>::is_pos(rows_[i][enter])) continue;
                if (leave == kNoCol) {
                    leave = i;
                    continue;
                }
                // compare rhs_i / a_i vs rhs_l / a_l without division
                const T lhs = rows_[i][cols_] * rows_[leave][enter];
                const T rhs = rows_[leave][cols_] * rows_[i][enter];
                if (Scalar<T>::is_neg(lhs - rhs) ||
                    (Scalar<T>::is_zero(lhs - rhs) && basis_[i] < basis_[leave]))
                    leave = i;
            }
            if (leave == kNoCol) return false;
            pivot(leave, enter, z);
        }
        throw Error(Errc::iteration_cap, "lp: pivot cap exceeded");
    }

    void pivot(std::size_t r, std::size_t c, std::vector<T>& z) {
        const T inv = T(1) / rows_[r][c];
        for (std::size_t j = 0; j <= cols_; ++j) rows_[r][j] = rows_[r][j] * inv;
        rows_[r][c] = T(1); // kill residual rounding in the double instantiation
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || Scalar<T>::is_zero(rows_[i][c])) continue;
            const T f = rows_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] = rows_[i][j] - f * rows_[r][j];
            rows_[i][c] = T(0);
        }
        if (!Scalar<T>::is_zero(z[c])) {
            const T f = z[c];
            for (std::size_t j = 0; j <= cols_; ++j) z[j] = z[j] - f * rows_[r][j];
            z[c] = T(0);
        }
        basis_[r] = c;
    }

    // Degenerate-pivot basic artificials onto real columns where possible;
    // rows that cannot be cleared are linearly dependent and stay inert.
    void drive_out_artificials() {
        std::vector<T> dummy(cols_ + 1, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_ + m_) continue;
            for (std::size_t j = 0; j < n_ + m_; ++j)
                if (!Scalar<T>::is_zero(rows_[i][j])) {
                    pivot(i, j, dummy);
                    break;
                }
        }
    }

    const LinearProgram<T>& lp_;
    std::size_t m_, n_, cols_ = 0;
    std::vector<std::vector<T>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<bool> negated_;
    std::vector<std::size_t> aux_col_, art_col_;
};

template <class T>
bool leq_tol(const T& a, const T& b, double tol);

template <>
bool leq_tol<Rat>(const Rat& a, const Rat& b, double) {
    return a <= b;
}
template <>
bool leq_tol<double>(const double& a, const double& b, double tol) {
    return a <= b + tol;
}

} // namespace

template <class T>
bool lp_certificate_ok(const LinearProgram<T>& lp, const LPSolution<T>& sol, double tol) {
    if (sol.status != LPStatus::optimal) return false;
    const std::size_t m = lp.a.size(), n = lp.c.size();
    if (sol.x.size() != n || sol.y.size() != m) return false;
    for (const T& v : sol.x)
        if (!leq_tol<T>(T(0), v, tol)) return false;
    for (const T& v : sol.y)
        if (!leq_tol<T>(T(0), v, tol)) return false;
    for (std::size_t i = 0; i < m; ++i) {
        T ax(0);
        for (std::size_t j = 0; j < n; ++j) ax = ax + lp.a[i][j] * sol.x[j];
        if (!leq_tol<T>(lp.b[i], ax, tol)) return false;
    }
    T primal(0), dual(0);
    for (std::size_t j = 0; j < n; ++j) {
        T aty(0);
        for (std::size_t i = 0; i < m; ++i) aty = aty + lp.a[i][j] * sol.y[i];
        if (!leq_tol<T>(aty, lp.c[j], tol)) return false;
        primal = primal + lp.c[j] * sol.x[j];
    }
    for (std::size_t i = 0; i < m; ++i) dual = dual + lp.b[i] * sol.y[i];
    return leq_tol<T>(primal, dual, tol) && leq_tol<T>(dual, primal, tol);
}

template <class T>
LPSolution<T> solve_lp(const LinearProgram<T>& lp) {
    if (lp.a.empty()) {
        LPSolution<T> sol;
        for (const T& cj : lp.c)
            if (Scalar<T>::is_neg(cj)) {
                sol.status = LPStatus::unbounded;
                return sol;
            }
        sol.status = LPStatus::optimal;
        sol.x.assign(lp.c.size(), T(0));
        sol.objective = T(0);
        sol.certified = true;
        return sol;
    }
    Tableau<T> tab(lp);
    LPSolution<T> sol = tab.run();
    if (sol.status == LPStatus::optimal) {
        sol.certified = lp_certificate_ok(lp, sol, 1e-7);
        if (!sol.certified)
            throw Error(Errc::invalid_argument, "lp: optimal basis failed certificate check");
    }
    return sol;
}

template LPSolution<Rat> solve_lp<Rat>(const LinearProgram<Rat>&);
template LPSolution<double> solve_lp<double>(const LinearProgram<double>&);
template bool lp_certificate_ok<Rat>(const LinearProgram<Rat>&, const LPSolution<Rat>&, double);
template bool lp_certificate_ok<double>(const LinearProgram<double>&, const LPSolution<double>&,
                                        double);

} // namespace itsec
