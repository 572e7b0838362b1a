#include "itsec/keyagree.hpp"

#include <cmath>
#include <functional>

#include "itsec/inequalities.hpp"
#include "itsec/infotheory.hpp"
#include "itsec/simplex_lp.hpp"

namespace itsec {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kSqrtHalfLn2 = 0.58870501125773733; // sqrt(ln2/2)

void check_alphabet(const std::vector<std::string>& a, const char* what,
                    std::vector<std::string>& out) {
    if (a.empty()) {
        out.push_back(std::string(what) + ": empty alphabet");
        return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].empty()) out.push_back(std::string(what) + ": empty label");
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] == a[j]) {
                out.push_back(std::string(what) + ": duplicate label '" + a[i] + "'");
                return;
            }
    }
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t limit) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (v > limit / std::max<std::size_t>(base, 1))
            throw Error(Errc::cap_exceeded,
                        "transcript space too large; shrink the transcript alphabet or "
                        "the round count");
        v *= base;
    }
    return v;
}

std::vector<std::string> transcript_labels(const KASpec& s, std::size_t total) {
    std::vector<std::string> out;
    out.reserve(total);
    const std::size_t nt = s.ts.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        // decode big-endian digits
        std::vector<std::size_t> digits(s.rounds);
        std::size_t v = idx;
        for (std::size_t r = s.rounds; r-- > 0;) {
            digits[r] = v % nt;
            v /= nt;
        }
        std::string label = s.ts[digits[0]];
        for (std::size_t r = 1; r < s.rounds; ++r) label += "," + s.ts[digits[r]];
        out.push_back(std::move(label));
    }
    return out;
}

// min over q in the simplex of sum_{r,t} (target[r][t] - w_r q_t)^+, i.e. the
// least total-variation distance to any product w x q. Exact when asked.
struct ProductFitResult {
    Num value;
    std::vector<double> center;
    std::string certification;
};

ProductFitResult best_product_fit(const std::vector<std::vector<Num>>& target,
                                  const std::vector<Num>& w, NumMode mode, bool exact) {
    const std::size_t nr = target.size(), nt = target.front().size();
    const std::size_t nq = nt, nu = nr * nt, nvar = nq + nu;
    auto ucol = [&](std::size_t r, std::size_t t) { return nq + r * nt + t; };
    ProductFitResult res{Num::zero(mode), {}, ""};
    if (exact) {
        LinearProgram<Rat> lp;
        lp.c.assign(nvar, Rat(0));
        for (std::size_t i = nq; i < nvar; ++i) lp.c[i] = 1;
        std::vector<Rat> ones(nvar, Rat(0));
        for (std::size_t t = 0; t < nt; ++t) ones[t] = 1;
        lp.a.push_back(ones);
        lp.b.push_back(Rat(1));
        for (auto& v : ones) v = -v;
        lp.a.push_back(ones);
        lp.b.push_back(Rat(-1));
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t t = 0; t < nt; ++t) {
                std::vector<Rat> row(nvar, Rat(0));
                row[ucol(r, t)] = 1;
                row[t] = w[r].rat_value();
                lp.a.push_back(std::move(row));
                lp.b.push_back(target[r][t].rat_value());
            }
        const LPSolution<Rat> sol = solve_lp(lp);
        if (sol.status != LPStatus::optimal)
            throw Error(Errc::infeasible, "product-fit LP unexpectedly not optimal");
        res.value = Num::rational(sol.objective);
        res.center.resize(nt);
        for (std::size_t t = 0; t < nt; ++t) res.center[t] = rat_to_double(sol.x[t]);
        res.certification = "exact LP optimum, dual certificate verified";
        return res;
    }
    LinearProgram<double> lp;
    lp.c.assign(nvar, 0.0);
    for (std::size_t i = nq; i < nvar; ++i) lp.c[i] = 1.0;
    std::vector<double> ones(nvar, 0.0);
    for (std::size_t t = 0; t < nt; ++t) ones[t] = 1.0;
    lp.a.push_back(ones);
    lp.b.push_back(1.0);
    for (auto& v : ones) v = -v;
    lp.a.push_back(ones);
    lp.b.push_back(-1.0);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t t = 0; t < nt; ++t) {
            std::vector<double> row(nvar, 0.0);
            row[ucol(r, t)] = 1.0;
            row[t] = w[r].to_double();
            lp.a.push_back(std::move(row));
            lp.b.push_back(target[r][t].to_double());
        }
    const LPSolution<double> sol = solve_lp(lp);
    if (sol.status != LPStatus::optimal)
        throw Error(Errc::infeasible, "product-fit LP unexpectedly not optimal");
    res.value = Num::floating(std::max(0.0, sol.objective));
    res.center.assign(sol.x.begin(), sol.x.begin() + nt);
    res.certification = "float LP optimum, dual certificate within tolerance";
    return res;
}

} // namespace

std::size_t transcript_count(const KASpec& s) {
    return checked_pow(s.ts.size(), s.rounds, std::size_t{1} << 52);
}

ValidationReport validate_ka(const KASpec& s, double tol) {
    ValidationReport rep;
    auto& bad = rep.violations;
    check_alphabet(s.xs, "xs", bad);
    check_alphabet(s.ys, "ys", bad);
    check_alphabet(s.ts, "ts", bad);
    check_alphabet(s.keys, "keys", bad);
    if (s.rounds < 1 || s.rounds % 2 == 0) bad.push_back("rounds: must be odd and >= 1");
    if (!bad.empty()) return rep;

    if (s.p_xy.rank() != 2 || s.p_xy.dim(0) != s.xs.size() || s.p_xy.dim(1) != s.ys.size())
        bad.push_back("p_xy: shape must be |xs| x |ys|");
    if (s.p_xy.mode() != s.mode) bad.push_back("p_xy: numeric mode mismatch");
    if (!bad.empty()) return rep;

    std::size_t paths = 1;
    try {
        paths = transcript_count(s);
    } catch (const Error&) {
        bad.push_back("transcript space too large to enumerate");
        return rep;
    }
    if (s.f.size() != s.rounds) {
        bad.push_back("f: one table per round expected");
        return rep;
    }
    std::size_t prefix_count = 1;
    for (std::size_t r = 0; r < s.rounds; ++r) {
        const bool a_sends = r % 2 == 0;
        const std::size_t symbols = a_sends ? s.xs.size() : s.ys.size();
        if (s.f[r].size() != symbols) {
            bad.push_back("f: round " + std::to_string(r + 1) + " must have one row per " +
                          (a_sends ? "x" : "y"));
            return rep;
        }
        for (std::size_t sym = 0; sym < symbols; ++sym) {
            if (s.f[r][sym].size() != prefix_count) {
                bad.push_back("f: round " + std::to_string(r + 1) +
                              " must cover every transcript prefix");
                return rep;
            }
            for (const Dist& d : s.f[r][sym]) {
                if (d.labels() != s.ts) bad.push_back("f: entry not over the transcript alphabet");
                if (d.mode() != s.mode) bad.push_back("f: entry mode mismatch");
            }
        }
        prefix_count *= s.ts.size();
    }
    auto check_g = [&](const std::vector<std::vector<Dist>>& g, std::size_t symbols,
                       const char* what) {
        if (g.size() != symbols) {
            bad.push_back(std::string(what) + ": one row per resource symbol expected");
            return;
        }
        for (const auto& row : g) {
            if (row.size() != paths) {
                bad.push_back(std::string(what) + ": one entry per full transcript expected");
                return;
            }
            for (const Dist& d : row) {
                if (d.labels() != s.keys)
                    bad.push_back(std::string(what) + ": entry not over the key alphabet");
                if (d.mode() != s.mode)
                    bad.push_back(std::string(what) + ": entry mode mismatch");
            }
        }
    };
    check_g(s.g_a, s.xs.size(), "g_a");
    check_g(s.g_b, s.ys.size(), "g_b");
    (void)tol;
    return rep;
}

Joint execute_ka(const KASpec& s, std::size_t cap) {
    {
        const ValidationReport rep = validate_ka(s);
        if (!rep.ok())
            throw Error(Errc::invalid_argument, "execute_ka: " + rep.violations.front());
    }
    const std::size_t nt = s.ts.size(), nk = s.keys.size();
    const std::size_t paths = transcript_count(s);
    const std::size_t supp = s.p_xy.support_size();
    if (supp > 0 && paths > cap / supp)
        throw Error(Errc::cap_exceeded,
                    "execute_ka: enumeration would exceed the state cap; shrink the "
                    "transcript alphabet or the round count");

    std::vector<Num> acc(nk * nk * paths, Num::zero(s.mode));
    for (std::size_t x = 0; x < s.xs.size(); ++x)
        for (std::size_t y = 0; y < s.ys.size(); ++y) {
            const Num pxy = s.p_xy.at(x, y);
            if (pxy.is_zero_exact()) continue;
            std::function<void(std::size_t, std::size_t, const Num&)> walk =
                [&](std::size_t round, std::size_t prefix, const Num& prob) {
                    if (round == s.rounds) {
                        const Dist& da = s.g_a[x][prefix];
                        const Dist& db = s.g_b[y][prefix];
                        for (std::size_t a = 0; a < nk; ++a) {
                            if (da.prob(a).is_zero_exact()) continue;
                            const Num pa = prob * da.prob(a);
                            for (std::size_t b = 0; b < nk; ++b) {
                                if (db.prob(b).is_zero_exact()) continue;
                                const std::size_t cell = (a * nk + b) * paths + prefix;
                                acc[cell] = acc[cell] + pa * db.prob(b);
                            }
                        }
                        return;
                    }
                    const bool a_sends = round % 2 == 0;
                    const Dist& d = s.f[round][a_sends ? x : y][prefix];
                    for (std::size_t t = 0; t < nt; ++t) {
                        if (d.prob(t).is_zero_exact()) continue;
                        walk(round + 1, prefix * nt + t, prob * d.prob(t));
                    }
                };
            walk(0, 0, pxy);
        }
    std::vector<Axis> axes{{"KA", s.keys}, {"KB", s.keys}, {"T", transcript_labels(s, paths)}};
    return Joint::create(std::move(axes), std::move(acc), 1e-6);
}

KAReport ka_metrics(const KASpec& s, const MetricOptions& opts) {
    const Joint j = execute_ka(s, opts.state_cap);
    const std::size_t nk = s.keys.size();
    const std::size_t paths = j.dim(2);
    const Joint pair_kk = j.marginal_pair(0, 1);
    const Joint ka_t = j.marginal_pair(0, 2);
    const Dist p_ka = j.marginal(0);
    const Dist p_t = j.marginal(2);

    KAReport r;
    r.n_keys = nk;
    r.n_transcripts = paths;
    r.rounds = s.rounds;
    r.h0_xy = std::log2(static_cast<double>(s.p_xy.support_size()));

    // delta1: agreement failure vs uniformity gap, whichever is worse
    Num mismatch = Num::one(s.mode);
    for (std::size_t k = 0; k < nk; ++k) mismatch = mismatch - pair_kk.at(k, k);
    bool uniform_exact = true;
    const Num inv_k = Num::frac(1, static_cast<long>(nk), s.mode);
    for (std::size_t k = 0; k < nk; ++k)
        uniform_exact = uniform_exact && p_ka.prob(k).eq_exact(inv_k);
    if (uniform_exact) {
        Witness w;
        w.note = "output key exactly uniform; agreement failure dominates";
        r.delta1 = MetricValue::exact(mismatch, std::move(w), "exact");
    } else {
        const double gap = std::max(
            0.0, std::log2(static_cast<double>(nk)) - entropies(p_ka).shannon.to_double());
        const double worse = std::max(mismatch.to_double(), gap);
        Witness w;
        w.note = mismatch.to_double() >= gap ? "agreement failure dominates"
                                             : "uniformity gap dominates";
        r.delta1 = MetricValue::exact(Num::floating(worse), std::move(w),
                                      "float (entropy term)");
    }

    // delta2: distance from the ideal identical-uniform key pair
    {
        Num acc = Num::zero(s.mode);
        for (std::size_t a = 0; a < nk; ++a)
            for (std::size_t b = 0; b < nk; ++b) {
                const Num ideal = a == b ? inv_k : Num::zero(s.mode);
                acc = acc + (pair_kk.at(a, b) - ideal).abs();
            }
        r.delta2 = MetricValue::exact(acc / Num::integer(2, s.mode), {}, "exact");
    }

    r.eps1 = MetricValue::exact(mutual_information(ka_t), {},
                                "entropy arithmetic; exactly zero iff independent");
    r.eps2 = MetricValue::exact(tv_joint(ka_t, Joint::product(p_ka, p_t, "KA", "T")), {},
                                s.mode == NumMode::rational ? "exact" : "float");

    {
        std::vector<std::vector<Num>> target(nk, std::vector<Num>(paths, Num::zero(s.mode)));
        for (std::size_t k = 0; k < nk; ++k)
            for (std::size_t t = 0; t < paths; ++t) target[k][t] = ka_t.at(k, t);
        std::vector<Num> w(nk, Num::zero(s.mode));
        for (std::size_t k = 0; k < nk; ++k) w[k] = p_ka.prob(k);
        const bool exact = s.mode == NumMode::rational && nk * paths <= opts.lp_cell_cap;
        ProductFitResult fit = best_product_fit(target, w, s.mode, exact);
        Witness wit;
        wit.center = std::move(fit.center);
        wit.note = "least-distance transcript model";
        r.eps3 = MetricValue::exact(fit.value, std::move(wit), std::move(fit.certification));
    }

    r.simulator = ka_simulator_interval(r);
    r.lower_bound = ka_lower_bound(s, Dist::uniform(s.keys, s.mode));
    return r;
}

std::vector<RelationCheck> check_relation_ka(const KAReport& r, std::size_t n_keys,
                                             std::size_t n_transcript_symbols,
                                             std::size_t rounds) {
    std::vector<RelationCheck> out;
    const double tol = kDefaultTol;
    const double d1 = r.delta1.hi_d(), d2 = r.delta2.hi_d();
    const double e1 = r.eps1.hi_d(), e2 = r.eps2.hi_d(), e3 = r.eps3.hi_d();

    auto push = [&](std::string name, double lhs, double rhs, bool guard_fail,
                    std::string note) {
        RelationCheck c;
        c.name = std::move(name);
        c.lhs = Num::floating(lhs);
        c.rhs = Num::floating(rhs);
        c.slack = Num::floating(rhs - lhs);
        if (guard_fail)
            c.status = CheckStatus::skipped;
        else if (lhs <= rhs + tol)
            c.status = CheckStatus::holds;
        else
            c.status = CheckStatus::violated;
        c.note = std::move(note);
        if (c.status == CheckStatus::skipped)
            c.note += "; skipped: outside the distance <= 1/4 continuity regime";
        out.push_back(std::move(c));
    };

    push("agreement-le-defect-plus-root", d2, d1 + std::sqrt(d1 * kLn2 / 2.0), false,
         "pair distance capped by defect plus root-defect");
    {
        const double env =
            d2 <= 0 ? 0.0
                    : -2.0 * d2 * std::log2(2.0 * d2 / static_cast<double>(n_keys));
        push("defect-le-agreement-envelope", d1, env, d2 > 0.25,
             "defect capped by the pair-distance continuity envelope");
    }
    push("leakage-pinsker-lower-ka", 2.0 / kLn2 * e2 * e2, e1, false,
         "squared independence distance lower-bounds leakage");
    {
        const double cells = static_cast<double>(n_keys) *
                             std::pow(static_cast<double>(n_transcript_symbols),
                                      static_cast<double>(rounds));
        const double env = e2 <= 0 ? 0.0 : -2.0 * e2 * std::log2(2.0 * e2 / cells);
        push("leakage-continuity-upper-ka", e1, env, e2 > 0.25,
             "leakage capped by the independence-distance envelope");
    }
    push("simulatable-le-joint", e3, e2, false,
         "the true transcript marginal is one admissible model");
    push("joint-le-twice-simulatable", e2, 2.0 * e3, false,
         "triangle through the best model doubles the distance");
    return out;
}

MetricValue ka_simulator_interval(const KAReport& r) {
    const NumMode mode = r.eps3.hi.mode() == r.delta2.hi.mode() ? r.eps3.hi.mode()
                                                                : NumMode::floating;
    const Num e3 = mode == r.eps3.hi.mode() ? r.eps3.hi : Num::floating(r.eps3.hi_d());
    const Num d2 = mode == r.delta2.hi.mode() ? r.delta2.hi : Num::floating(r.delta2.hi_d());
    const Num lo = max(e3 / Num::integer(3, mode), d2);
    const Num hi = min(Num::one(mode), e3 + d2 + d2);
    Witness w;
    w.note = "bracketed by the transcript-model distance and the pair defect";
    return MetricValue::interval(lo, max(lo, hi), std::move(w), "sandwich, not computed exactly");
}

MetricValue ka_simulator_advantage(const KASpec& s, const MetricOptions& opts) {
    const Joint j = execute_ka(s, opts.state_cap);
    const std::size_t nk = s.keys.size(), paths = j.dim(2);
    const Num inv_k = Num::frac(1, static_cast<long>(nk), s.mode);
    std::vector<std::vector<Num>> target(nk * nk, std::vector<Num>(paths, Num::zero(s.mode)));
    std::vector<Num> w(nk * nk, Num::zero(s.mode));
    for (std::size_t a = 0; a < nk; ++a)
        for (std::size_t b = 0; b < nk; ++b) {
            if (a == b) w[a * nk + b] = inv_k;
            for (std::size_t t = 0; t < paths; ++t) target[a * nk + b][t] = j.at(a, b, t);
        }
    const bool exact = s.mode == NumMode::rational && nk * nk * paths <= opts.lp_cell_cap;
    ProductFitResult fit = best_product_fit(target, w, s.mode, exact);
    Witness wit;
    wit.center = std::move(fit.center);
    wit.note = "best simulated transcript distribution";
    return MetricValue::exact(fit.value, std::move(wit), std::move(fit.certification));
}

Num ka_lower_bound(const KASpec& s, const Dist& target_key) {
    const std::size_t supp = s.p_xy.support_size();
    const Num prod =
        Num::integer(static_cast<long>(supp), target_key.mode()) * target_key.max_prob();
    const Num v = Num::one(target_key.mode()) - prod;
    return max(Num::zero(target_key.mode()), v);
}

std::vector<BoundReport> check_bound303(const KAReport& r, double h0_xy, std::size_t n_keys) {
    const double rhs_d = 1.0 - std::exp2(h0_xy) / static_cast<double>(n_keys);
    const Num rhs = Num::floating(rhs_d);
    const double d1 = r.delta1.hi_d(), d2 = r.delta2.hi_d();
    const double e1 = r.eps1.hi_d(), e2 = r.eps2.hi_d(), e3 = r.eps3.hi_d();
    const double c0 = 2.0 * (1.0 + kSqrtHalfLn2);
    std::vector<BoundReport> out;
    auto push = [&](std::string name, double lhs, bool precondition_ok, std::string note) {
        BoundReport rep;
        rep.name = std::move(name);
        rep.rhs = rhs;
        rep.lhs_lo = rep.lhs_hi = Num::floating(lhs);
        if (!precondition_ok) {
            rep.status = BoundStatus::indeterminate;
            rep.note = "stated precondition delta1 <= 1 unmet";
        } else {
            rep.status = lhs >= rhs_d - kDefaultTol ? BoundStatus::satisfied
                                                    : BoundStatus::violated;
            rep.note = std::move(note);
        }
        out.push_back(std::move(rep));
    };
    const bool d1_ok = d1 <= 1.0 + kDefaultTol;
    const double root_d1 = std::sqrt(std::max(0.0, d1));
    const double root_e1 = std::sqrt(std::max(0.0, e1));
    push("root-defect+root-leakage", c0 * root_d1 + kSqrtHalfLn2 * root_e1, d1_ok,
         "root defect plus root leakage clears the resource deficit");
    push("root-defect+eps2", c0 * root_d1 + e2, d1_ok,
         "root defect plus independence distance clears the resource deficit");
    push("root-defect+eps3", c0 * root_d1 + e3, d1_ok,
         "root defect plus model distance clears the resource deficit");
    push("2*agreement+root-leakage", 2.0 * d2 + kSqrtHalfLn2 * root_e1, true,
         "pair defect plus root leakage clears the resource deficit");
    push("2*agreement+eps2", 2.0 * d2 + e2, true,
         "pair defect plus independence distance clears the resource deficit");
    push("2*agreement+eps3", 2.0 * d2 + e3, true,
         "pair defect plus model distance clears the resource deficit");
    return out;
}

Num ka_resource_bound(const Num& delta_star, const Num& eps_star, int i, int j) {
    if (i < 1 || i > 2 || j < 1 || j > 3)
        throw Error(Errc::invalid_argument, "resource bound: type out of range");
    const double d = delta_star.to_double(), e = eps_star.to_double();
    if (d < -kDefaultTol || e < -kDefaultTol)
        throw Error(Errc::invalid_argument, "resource bound: targets must be nonnegative");
    if (i == 1 && d > 1 + kDefaultTol)
        throw Error(Errc::invalid_argument, "resource bound: delta must lie in [0,1] here");
    const double c0 = 2.0 * (1.0 + kSqrtHalfLn2);
    double take;
    if (i == 1 && j == 1)
        take = kSqrtHalfLn2 * std::sqrt(std::max(0.0, e)) + c0 * std::sqrt(std::max(0.0, d));
    else if (i == 1)
        take = e + c0 * std::sqrt(std::max(0.0, d));
    else if (j == 1)
        take = kSqrtHalfLn2 * std::sqrt(std::max(0.0, e)) + 2.0 * d;
    else {
        if (delta_star.mode() == NumMode::rational && eps_star.mode() == NumMode::rational) {
            const Rat v = Rat(1) - (eps_star.rat_value() + 2 * delta_star.rat_value());
            return Num::rational(v < 0 ? Rat(0) : v);
        }
        take = e + 2.0 * d;
    }
    return Num::floating(std::max(0.0, 1.0 - take));
}

bool ka_impossible(const Num& delta_star, const Num& eps_star, double h0_xy, double hmin_key,
                   int i, int j) {
    if (i < 1 || i > 2 || j < 1 || j > 3)
        throw Error(Errc::invalid_argument, "impossibility: type out of range");
    const double d = delta_star.to_double(), e = eps_star.to_double();
    const double c0 = 2.0 * (1.0 + kSqrtHalfLn2);
    double lhs;
    if (i == 1 && j == 1)
        lhs = kSqrtHalfLn2 * std::sqrt(std::max(0.0, e)) + c0 * std::sqrt(std::max(0.0, d));
    else if (i == 1)
        lhs = e + c0 * std::sqrt(std::max(0.0, d));
    else if (j == 1)
        lhs = kSqrtHalfLn2 * std::sqrt(std::max(0.0, e)) + 2.0 * d;
    else
        lhs = e + 2.0 * d;
    const double threshold = 1.0 - std::exp2(h0_xy - hmin_key);
    return lhs < threshold - kDefaultTol;
}

} // namespace itsec
