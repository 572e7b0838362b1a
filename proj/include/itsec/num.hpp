#pragma once

#include <cmath>
#include <string>

#include "itsec/rational.hpp"

namespace itsec {

/// Numeric mode of a value, a distribution, or a whole specification.
/// Rational-mode arithmetic is exact; float mode carries IEEE doubles and
/// compares with an absolute tolerance (default kDefaultTol).
enum class NumMode { rational, floating };

inline constexpr double kDefaultTol = 1e-9;

inline const char* mode_name(NumMode m) {
    return m == NumMode::rational ? "rational" : "float";
}

/// Dual-mode scalar. Mode is part of the value; mixed-mode arithmetic throws
/// Errc::mode_mismatch rather than silently coercing.
class Num {
public:
    Num() : mode_(NumMode::rational), r_(0), f_(0.0) {}

    static Num rational(Rat r) {
        Num n;
        n.mode_ = NumMode::rational;
        n.r_ = std::move(r);
        return n;
    }
    static Num floating(double v) {
        Num n;
        n.mode_ = NumMode::floating;
        n.f_ = v;
        return n;
    }
    static Num zero(NumMode m) { return m == NumMode::rational ? rational(Rat(0)) : floating(0.0); }
    static Num one(NumMode m) { return m == NumMode::rational ? rational(Rat(1)) : floating(1.0); }
    /// Exact integer in either mode.
    static Num integer(long v, NumMode m) {
        return m == NumMode::rational ? rational(Rat(v)) : floating(static_cast<double>(v));
    }
    /// num/den in either mode.
    static Num frac(long num, long den, NumMode m) {
        return m == NumMode::rational ? rational(rat(num, den))
                                      : floating(static_cast<double>(num) / static_cast<double>(den));
    }

    NumMode mode() const { return mode_; }
    bool is_rational() const { return mode_ == NumMode::rational; }

    const Rat& rat_value() const {
        require(NumMode::rational);
        return r_;
    }
    double to_double() const { return mode_ == NumMode::rational ? rat_to_double(r_) : f_; }

    Num operator+(const Num& o) const { return apply(o, [](const Rat& a, const Rat& b) { return Rat(a + b); }, [](double a, double b) { return a + b; }); }
    Num operator-(const Num& o) const { return apply(o, [](const Rat& a, const Rat& b) { return Rat(a - b); }, [](double a, double b) { return a - b; }); }
    Num operator*(const Num& o) const { return apply(o, [](const Rat& a, const Rat& b) { return Rat(a * b); }, [](double a, double b) { return a * b; }); }
    Num operator/(const Num& o) const {
        if (o.is_zero_exact()) throw Error(Errc::invalid_argument, "division by zero");
        return apply(o, [](const Rat& a, const Rat& b) { return Rat(a / b); }, [](double a, double b) { return a / b; });
    }
    Num operator-() const { return mode_ == NumMode::rational ? rational(Rat(-r_)) : floating(-f_); }

    Num abs() const { return mode_ == NumMode::rational ? rational(Rat(::abs(r_))) : floating(std::fabs(f_)); }

    /// Exact sign/zero tests (no tolerance; float mode tests the raw double).
    bool is_zero_exact() const { return mode_ == NumMode::rational ? r_ == 0 : f_ == 0.0; }
    int sgn() const {
        if (mode_ == NumMode::rational) return ::sgn(r_);
        return f_ > 0 ? 1 : (f_ < 0 ? -1 : 0);
    }

    /// Mode-aware comparison: exact in rational mode, absolute tolerance in
    /// float mode. All metric and bound decisions go through these.
    bool eq(const Num& o, double tol = kDefaultTol) const {
        check_same_mode(o);
        if (mode_ == NumMode::rational) return r_ == o.r_;
        return std::fabs(f_ - o.f_) <= tol;
    }
    bool le(const Num& o, double tol = kDefaultTol) const {
        check_same_mode(o);
        if (mode_ == NumMode::rational) return r_ <= o.r_;
        return f_ <= o.f_ + tol;
    }
    bool lt(const Num& o, double tol = kDefaultTol) const { return !o.le(*this, tol); }
    bool ge(const Num& o, double tol = kDefaultTol) const { return o.le(*this, tol); }

    /// Exact total order (used by algorithms; no tolerance).
    bool less_exact(const Num& o) const {
        check_same_mode(o);
        return mode_ == NumMode::rational ? r_ < o.r_ : f_ < o.f_;
    }
    bool eq_exact(const Num& o) const {
        check_same_mode(o);
        return mode_ == NumMode::rational ? r_ == o.r_ : f_ == o.f_;
    }

    std::string str() const;

private:
    template <class FR, class FF>
    Num apply(const Num& o, FR fr, FF ff) const {
        check_same_mode(o);
        if (mode_ == NumMode::rational) return rational(fr(r_, o.r_));
        return floating(ff(f_, o.f_));
    }
    void require(NumMode m) const {
        if (mode_ != m) throw Error(Errc::mode_mismatch, "value is not in " + std::string(mode_name(m)) + " mode");
    }
    void check_same_mode(const Num& o) const {
        if (mode_ != o.mode_) throw Error(Errc::mode_mismatch, "mixed rational/float operands");
    }

    NumMode mode_;
    Rat r_;
    double f_;
};

inline Num max(const Num& a, const Num& b) { return a.less_exact(b) ? b : a; }
inline Num min(const Num& a, const Num& b) { return a.less_exact(b) ? a : b; }

inline std::string Num::str() const {
    if (mode_ == NumMode::rational) return rat_str(r_);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", f_);
    return buf;
}

} // namespace itsec
