#include "itsec/bounds.hpp"

#include <cmath>
#include <optional>

namespace itsec {

namespace {

constexpr double kSqrtHalfLn2 = 0.58870501125773733; // sqrt(ln2 / 2)
constexpr double kSqrtTwoLn2 = 1.1774100225154747;   // sqrt(2 ln2)

bool ge_num(const Num& a, const Num& b, double tol) {
    if (a.mode() == NumMode::rational && b.mode() == NumMode::rational)
        return !a.less_exact(b);
    return a.to_double() >= b.to_double() - tol;
}

BoundReport judge(std::string name, const Num& rhs, const Num& lhs_lo, const Num& lhs_hi,
                  std::string note) {
    BoundReport rep;
    rep.name = std::move(name);
    rep.rhs = rhs;
    rep.lhs_lo = lhs_lo;
    rep.lhs_hi = lhs_hi;
    rep.note = std::move(note);
    const bool hi_ok = ge_num(lhs_hi, rhs, kDefaultTol);
    const bool lo_ok = ge_num(lhs_lo, rhs, kDefaultTol);
    rep.status = hi_ok ? (lo_ok ? BoundStatus::satisfied : BoundStatus::indeterminate)
                       : BoundStatus::violated;
    return rep;
}

} // namespace

Num pope_bound(std::size_t n_keys, std::size_t n_messages) {
    if (n_keys < 1 || n_messages < 1)
        throw Error(Errc::invalid_argument, "pope bound: sizes must be >= 1");
    const Rat ratio = rat(static_cast<long>(n_keys), static_cast<long>(n_messages));
    const Rat v = Rat(1) - ratio;
    return Num::rational(v < 0 ? Rat(0) : v);
}

const char* bound_status_name(BoundStatus s) {
    switch (s) {
    case BoundStatus::satisfied: return "satisfied";
    case BoundStatus::violated: return "violated";
    default: return "indeterminate";
    }
}

std::vector<BoundReport> check_bound103(const SecurityReport& r) {
    const Rat rhs_rat = Rat(1) - rat(static_cast<long>(r.n_keys),
                                     static_cast<long>(r.n_messages));
    const Num rhs = Num::rational(rhs_rat);
    const Num rhs_f = Num::floating(rat_to_double(rhs_rat));
    std::vector<BoundReport> out;

    auto linear = [&](int j, long scale) {
        const MetricValue& e = r.eps.at(j);
        const Num c = Num::integer(scale, e.lo.mode());
        Num lo = r.delta.hi + c * e.lo; // delta is exact; e may be an interval
        Num hi = r.delta.hi + c * e.hi;
        const std::string name = scale == 1 ? "delta+eps[" + std::to_string(j) + "]"
                                            : "delta+" + std::to_string(scale) + "*eps[" +
                                                  std::to_string(j) + "]";
        const Num rhs_use = e.lo.mode() == NumMode::rational &&
                                    r.delta.hi.mode() == NumMode::rational
                                ? rhs
                                : rhs_f;
        out.push_back(judge(name, rhs_use, lo, hi,
                            "defect plus scaled advantage clears the key deficit"));
    };

    for (int j : {3, 5, 6, 8, 9, 10}) linear(j, 1);
    for (int j : {2, 4}) linear(j, 2);
    linear(7, 4);

    {
        const MetricValue& e1 = r.eps.at(1);
        const double d = r.delta.hi.to_double();
        const Num lo = Num::floating(d + kSqrtHalfLn2 * std::sqrt(std::max(0.0, e1.lo_d())));
        const Num hi = Num::floating(d + kSqrtHalfLn2 * std::sqrt(std::max(0.0, e1.hi_d())));
        out.push_back(judge("delta+sqrt(ln2/2)*sqrt(eps[1])", rhs_f, lo, hi,
                            "defect plus root-leakage clears the key deficit"));
    }
    return out;
}

Num key_size_bound(const Num& delta_star, const Num& eps_star, int j) {
    if (j < 1 || j > 10) throw Error(Errc::invalid_argument, "key size bound: j out of range");
    const double ds = delta_star.to_double(), es = eps_star.to_double();
    if (ds < -kDefaultTol || ds > 1 + kDefaultTol || es < -kDefaultTol || es > 1 + kDefaultTol)
        throw Error(Errc::invalid_argument, "key size bound: targets must lie in [0, 1]");
    if (j == 1) {
        const double v = 1.0 - (ds + kSqrtTwoLn2 * std::sqrt(std::max(0.0, es)));
        return Num::floating(std::max(0.0, v));
    }
    long c = 1;
    if (j == 2 || j == 4) c = 2;
    if (j == 7) c = 4;
    if (delta_star.mode() == NumMode::rational && eps_star.mode() == NumMode::rational) {
        const Rat v = Rat(1) - (delta_star.rat_value() + c * eps_star.rat_value());
        return Num::rational(v < 0 ? Rat(0) : v);
    }
    const double v = 1.0 - (ds + static_cast<double>(c) * es);
    return Num::floating(std::max(0.0, v));
}

bool impossibility(const Num& delta_star, const Num& eps_star, std::size_t n_keys,
                   std::size_t n_messages, int i, int j) {
    if (i < 1 || i > 3) throw Error(Errc::invalid_argument, "impossibility: i out of range");
    if (n_keys < 1 || n_messages < 1)
        throw Error(Errc::invalid_argument, "impossibility: sizes must be >= 1");
    const Num ratio = key_size_bound(delta_star, eps_star, j);
    if (ratio.is_rational()) {
        const Rat needed = ratio.rat_value() * static_cast<long>(n_messages);
        return Rat(static_cast<long>(n_keys)) < needed;
    }
    return static_cast<double>(n_keys) <
           ratio.to_double() * static_cast<double>(n_messages) - kDefaultTol;
}

Num distinguisher_advantage(const CipherSpec& s, const Dist& pm, const Dist& q) {
    if (q.labels() != s.ciphertexts)
        throw Error(Errc::alphabet_mismatch, "distinguisher: q must range over the ciphertexts");
    if (pm.mode() != s.mode || q.mode() != s.mode)
        throw Error(Errc::mode_mismatch, "distinguisher: numeric modes differ");
    const Joint real = execute(s, pm); // axes M, Mdec, C
    std::vector<std::optional<std::size_t>> slot(s.messages.size());
    for (std::size_t m = 0; m < s.messages.size(); ++m)
        for (std::size_t d = 0; d < s.decoded.size(); ++d)
            if (s.decoded[d] == s.messages[m]) {
                slot[m] = d;
                break;
            }
    Num acc = Num::zero(s.mode);
    for (std::size_t m = 0; m < s.messages.size(); ++m)
        for (std::size_t d = 0; d < s.decoded.size(); ++d)
            for (std::size_t c = 0; c < s.ciphertexts.size(); ++c) {
                const Num ideal = (slot[m] && *slot[m] == d) ? pm.prob(m) * q.prob(c)
                                                             : Num::zero(s.mode);
                acc = acc + (real.at(m, d, c) - ideal).abs();
            }
    // ideal mass for messages whose copy target is missing from the decode
    // alphabet lies off the realizable grid entirely
    for (std::size_t m = 0; m < s.messages.size(); ++m)
        if (!slot[m]) acc = acc + pm.prob(m);
    return acc / Num::integer(2, s.mode);
}

} // namespace itsec
