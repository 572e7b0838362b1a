#include "itsec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "itsec/blahut_arimoto.hpp"
#include "itsec/infotheory.hpp"
#include "itsec/prng.hpp"
#include "itsec/simplex_lp.hpp"

namespace itsec {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

std::vector<double> to_doubles(const std::vector<Num>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
    return out;
}

// --- double-precision prior-search objectives -------------------------------

using RowsD = std::vector<std::vector<double>>; // rows[m][c]

double eps2_objective_d(const RowsD& rows, const std::vector<double>& p) {
    const std::size_t nm = rows.size(), nc = rows.front().size();
    std::vector<double> mix(nc, 0.0);
    for (std::size_t m = 0; m < nm; ++m)
        for (std::size_t c = 0; c < nc; ++c) mix[c] += p[m] * rows[m][c];
    double acc = 0.0;
    for (std::size_t m = 0; m < nm; ++m) {
        if (p[m] <= 0.0) continue;
        double tv = 0.0;
        for (std::size_t c = 0; c < nc; ++c) tv += std::abs(rows[m][c] - mix[c]);
        acc += p[m] * tv * 0.5;
    }
    return acc;
}

double eps4_objective_d(const RowsD& rows, const std::vector<double>& p) {
    const std::size_t nm = rows.size(), nc = rows.front().size();
    std::vector<double> mix(nc, 0.0);
    for (std::size_t m = 0; m < nm; ++m)
        for (std::size_t c = 0; c < nc; ++c) mix[c] += p[m] * rows[m][c];
    std::vector<std::vector<double>> post;
    post.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        if (mix[c] <= 0.0) continue;
        std::vector<double> q(nm);
        for (std::size_t m = 0; m < nm; ++m) q[m] = p[m] * rows[m][c] / mix[c];
        post.push_back(std::move(q));
    }
    double best = 0.0;
    for (const auto& q : post) {
        double tv = 0.0;
        for (std::size_t m = 0; m < nm; ++m) tv += std::abs(q[m] - p[m]);
        best = std::max(best, 0.5 * tv);
    }
    // pairwise posterior distances also lower-bound the same supremum
    for (std::size_t a = 0; a < post.size(); ++a)
        for (std::size_t b = a + 1; b < post.size(); ++b) {
            double tv = 0.0;
            for (std::size_t m = 0; m < nm; ++m) tv += std::abs(post[a][m] - post[b][m]);
            best = std::max(best, 0.5 * tv);
        }
    return best;
}

template <class Obj>
std::vector<double> hill_climb(const Obj& obj, std::vector<double> p, double& val) {
    val = obj(p);
    const std::size_t n = p.size();
    double step = 0.25;
    while (step > 1e-4) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (p[i] <= 1e-15) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double move = step * p[i];
                std::vector<double> cand = p;
                cand[i] -= move;
                cand[j] += move;
                const double v = obj(cand);
                if (v > val + 1e-13) {
                    p = std::move(cand);
                    val = v;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return p;
}

// Deterministic random point on the simplex (positive entries).
std::vector<double> random_prior(SplitMix64& rng, std::size_t n) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(rng.next() >> 11) + 1.0) / 9007199254740993.0;
        p[i] = -std::log(u);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

// Nearby exact-rational point on the simplex (for exact re-evaluation).
std::vector<Num> rationalize_prior(const std::vector<double>& p) {
    const long kDen = 720720; // 2^4·3^2·5·7·11·13, divisible by all small sizes
    std::vector<long> num(p.size());
    long total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        num[i] = std::lround(std::max(0.0, p[i]) * static_cast<double>(kDen));
        total += num[i];
    }
    std::vector<Num> out;
    out.reserve(p.size());
    if (total <= 0) {
        for (std::size_t i = 0; i < p.size(); ++i)
            out.push_back(Num::frac(1, static_cast<long>(p.size()), NumMode::rational));
        return out;
    }
    for (std::size_t i = 0; i < p.size(); ++i)
        out.push_back(Num::rational(rat(num[i], total)));
    return out;
}

// --- exact (mode-generic) objectives ----------------------------------------

std::vector<Num> mixture(const Channel& ch, const std::vector<Num>& p) {
    const std::size_t nc = ch.outputs(), nm = ch.inputs();
    const NumMode mode = p.front().mode();
    std::vector<Num> mix(nc, Num::zero(mode));
    for (std::size_t m = 0; m < nm; ++m) {
        if (p[m].is_zero_exact()) continue;
        for (std::size_t c = 0; c < nc; ++c) mix[c] = mix[c] + p[m] * ch.column(m).prob(c);
    }
    return mix;
}

Num eps2_objective(const Channel& ch, const std::vector<Num>& p) {
    const NumMode mode = p.front().mode();
    const std::vector<Num> mix = mixture(ch, p);
    Num acc = Num::zero(mode);
    for (std::size_t m = 0; m < ch.inputs(); ++m) {
        if (p[m].is_zero_exact()) continue;
        Num tv = Num::zero(mode);
        for (std::size_t c = 0; c < ch.outputs(); ++c)
            tv = tv + (ch.column(m).prob(c) - mix[c]).abs();
        acc = acc + p[m] * tv / Num::integer(2, mode);
    }
    return acc;
}

Num eps4_objective(const Channel& ch, const std::vector<Num>& p) {
    const NumMode mode = p.front().mode();
    const std::size_t nm = ch.inputs(), nc = ch.outputs();
    const std::vector<Num> mix = mixture(ch, p);
    std::vector<std::vector<Num>> post;
    for (std::size_t c = 0; c < nc; ++c) {
        if (mix[c].is_zero_exact()) continue;
        std::vector<Num> q;
        q.reserve(nm);
        for (std::size_t m = 0; m < nm; ++m) q.push_back(p[m] * ch.column(m).prob(c) / mix[c]);
        post.push_back(std::move(q));
    }
    Num best = Num::zero(mode);
    const Num two = Num::integer(2, mode);
    for (const auto& q : post) {
        Num tv = Num::zero(mode);
        for (std::size_t m = 0; m < nm; ++m) tv = tv + (q[m] - p[m]).abs();
        best = max(best, tv / two);
    }
    for (std::size_t a = 0; a < post.size(); ++a)
        for (std::size_t b = a + 1; b < post.size(); ++b) {
            Num tv = Num::zero(mode);
            for (std::size_t m = 0; m < nm; ++m) tv = tv + (post[a][m] - post[b][m]).abs();
            best = max(best, tv / two);
        }
    return best;
}

std::vector<Num> uniform_prior(std::size_t n, NumMode mode) {
    return std::vector<Num>(n, Num::frac(1, static_cast<long>(n), mode));
}

std::vector<Num> pair_prior(std::size_t n, std::size_t i, std::size_t j, NumMode mode) {
    std::vector<Num> p(n, Num::zero(mode));
    p[i] = Num::frac(1, 2, mode);
    p[j] = Num::frac(1, 2, mode);
    return p;
}

std::vector<Num> near_vertex_prior(std::size_t n, std::size_t m, long inv_gamma, NumMode mode) {
    // (1 - g) e_m + g·uniform with g = 1/inv_gamma
    std::vector<Num> p(n, Num::frac(1, inv_gamma * static_cast<long>(n), mode));
    p[m] = Num::one(mode) - Num::frac(1, inv_gamma, mode) +
           Num::frac(1, inv_gamma * static_cast<long>(n), mode);
    return p;
}

// worst pairwise column distance with its arg pair
struct PairMax {
    Num value;
    std::size_t a = 0, b = 0;
};

PairMax worst_pair(const Channel& ch) {
    const NumMode mode = ch.column(0).mode();
    PairMax res{Num::zero(mode), 0, 0};
    for (std::size_t a = 0; a < ch.inputs(); ++a)
        for (std::size_t b = a + 1; b < ch.inputs(); ++b) {
            Num d = tv_distance(ch.column(a), ch.column(b));
            if (res.value.less_exact(d)) res = PairMax{d, a, b};
        }
    return res;
}

// Joint-distance route to the correctness metric at a vertex prior, through
// the full experiment joint rather than the per-message error formula.
Num vertex_joint_delta(const CipherSpec& s, std::size_t m) {
    const Dist pm = Dist::point_mass(s.messages, m, s.mode);
    const Joint j = execute(s, pm).marginal_pair(0, 1); // (M, Mdec)
    std::optional<std::size_t> slot;
    for (std::size_t d = 0; d < s.decoded.size(); ++d)
        if (s.decoded[d] == s.messages[m]) {
            slot = d;
            break;
        }
    Num acc = Num::zero(s.mode);
    for (std::size_t mm = 0; mm < s.messages.size(); ++mm)
        for (std::size_t d = 0; d < s.decoded.size(); ++d) {
            Num ideal = (slot && mm == m && d == *slot) ? pm.prob(m) : Num::zero(s.mode);
            acc = acc + (j.at(mm, d) - ideal).abs();
        }
    if (!slot) acc = acc + Num::one(s.mode); // diagonal mass lies off-alphabet
    return acc / Num::integer(2, s.mode);
}

} // namespace

MetricValue delta_all(const CipherSpec& s) {
    const std::vector<Num> err = per_message_error(s);
    std::size_t worst = 0;
    for (std::size_t m = 1; m < err.size(); ++m)
        if (err[worst].less_exact(err[m])) worst = m;
    if (s.mode == NumMode::rational) {
        for (std::size_t m = 0; m < err.size(); ++m)
            if (!vertex_joint_delta(s, m).eq_exact(err[m]))
                throw Error(Errc::invalid_argument,
                            "correctness routes disagree (internal defect)");
    }
    Witness w;
    w.message = s.messages[worst];
    w.note = "worst-case message; joint-distance route asserted at every vertex prior";
    return MetricValue::exact(err[worst], std::move(w),
                              s.mode == NumMode::rational ? "exact; dual route verified"
                                                          : "float evaluation");
}

MetricValue eps_ind(const CipherSpec& s) {
    const Channel ch = channel_matrix(s);
    if (ch.inputs() < 2) {
        Witness w;
        w.note = "single message: empty pair maximum";
        return MetricValue::exact(Num::zero(s.mode), std::move(w), "degenerate");
    }
    const PairMax pm = worst_pair(ch);
    Witness w;
    w.message_pair = {s.messages[pm.a], s.messages[pm.b]};
    w.note = "maximizing message pair";
    return MetricValue::exact(pm.value, std::move(w),
                              s.mode == NumMode::rational ? "exact pairwise maximum"
                                                          : "float pairwise maximum");
}

MetricValue eps_radius(const CipherSpec& s, const MetricOptions& opts) {
    const Channel ch = channel_matrix(s);
    const std::size_t nm = ch.inputs(), nc = ch.outputs();
    if (nm < 2 || ch.all_columns_equal()) {
        Witness w;
        w.center = to_doubles(ch.column(0).probs());
        w.note = nm < 2 ? "single message: any center is exact"
                        : "all columns equal: the common column is an exact center";
        return MetricValue::exact(Num::zero(s.mode), std::move(w), "closed form");
    }

    // variables: q (nc) | slack s_{m,c} (nm·nc) | t; minimize t
    const std::size_t nq = nc, ns = nm * nc, nvar = nq + ns + 1, tcol = nq + ns;
    auto slack_col = [&](std::size_t m, std::size_t c) { return nq + m * nc + c; };

    const bool exact = s.mode == NumMode::rational && nm * nc <= opts.lp_cell_cap;
    if (exact) {
        LinearProgram<Rat> lp;
        lp.c.assign(nvar, Rat(0));
        lp.c[tcol] = 1;
        std::vector<Rat> row(nvar, Rat(0));
        for (std::size_t c = 0; c < nc; ++c) row[c] = 1;
        lp.a.push_back(row);
        lp.b.push_back(Rat(1)); // sum q >= 1
        for (auto& v : row) v = -v;
        lp.a.push_back(row);
        lp.b.push_back(Rat(-1)); // sum q <= 1
        for (std::size_t m = 0; m < nm; ++m)
            for (std::size_t c = 0; c < nc; ++c) {
                std::vector<Rat> r(nvar, Rat(0));
                r[c] = 1;
                r[slack_col(m, c)] = 1;
                lp.a.push_back(std::move(r));
                lp.b.push_back(ch.column(m).prob(c).rat_value());
            }
        for (std::size_t m = 0; m < nm; ++m) {
            std::vector<Rat> r(nvar, Rat(0));
            r[tcol] = 1;
            for (std::size_t c = 0; c < nc; ++c) r[slack_col(m, c)] = -1;
            lp.a.push_back(std::move(r));
            lp.b.push_back(Rat(0));
        }
        const LPSolution<Rat> sol = solve_lp(lp);
        if (sol.status != LPStatus::optimal)
            throw Error(Errc::infeasible, "radius LP unexpectedly not optimal");
        Witness w;
        std::vector<double> center(nc);
        for (std::size_t c = 0; c < nc; ++c) center[c] = rat_to_double(sol.x[c]);
        w.center = std::move(center);
        w.note = "optimal common center from the LP";
        return MetricValue::exact(Num::rational(sol.objective), std::move(w),
                                  "exact LP optimum, dual certificate verified");
    }

    LinearProgram<double> lp;
    lp.c.assign(nvar, 0.0);
    lp.c[tcol] = 1.0;
    std::vector<double> row(nvar, 0.0);
    for (std::size_t c = 0; c < nc; ++c) row[c] = 1.0;
    lp.a.push_back(row);
    lp.b.push_back(1.0);
    for (auto& v : row) v = -v;
    lp.a.push_back(row);
    lp.b.push_back(-1.0);
    for (std::size_t m = 0; m < nm; ++m)
        for (std::size_t c = 0; c < nc; ++c) {
            std::vector<double> r(nvar, 0.0);
            r[c] = 1.0;
            r[slack_col(m, c)] = 1.0;
            lp.a.push_back(std::move(r));
            lp.b.push_back(ch.column(m).prob(c).to_double());
        }
    for (std::size_t m = 0; m < nm; ++m) {
        std::vector<double> r(nvar, 0.0);
        r[tcol] = 1.0;
        for (std::size_t c = 0; c < nc; ++c) r[slack_col(m, c)] = -1.0;
        lp.a.push_back(std::move(r));
        lp.b.push_back(0.0);
    }
    const LPSolution<double> sol = solve_lp(lp);
    if (sol.status != LPStatus::optimal)
        throw Error(Errc::infeasible, "radius LP unexpectedly not optimal");
    Witness w;
    w.center = std::vector<double>(sol.x.begin(), sol.x.begin() + nc);
    w.note = "optimal common center from the LP";
    return MetricValue::exact(Num::floating(std::max(0.0, sol.objective)), std::move(w),
                              "float LP optimum, dual certificate within tolerance");
}

MetricValue eps_mi_sup(const CipherSpec& s, const MetricOptions& opts) {
    const Channel ch = channel_matrix(s);
    if (ch.inputs() < 2 || ch.all_columns_equal()) {
        Witness w;
        w.input_dist = std::vector<double>(ch.inputs(), 1.0 / (double)ch.inputs());
        w.note = "constant channel: information is zero at every prior";
        return MetricValue::interval(Num::floating(0.0), Num::floating(0.0), std::move(w),
                                     "closed form");
    }
    bool noiseless = true;
    std::set<std::size_t> used;
    for (std::size_t m = 0; m < ch.inputs() && noiseless; ++m) {
        const Dist& col = ch.column(m);
        if (col.support_size() != 1) noiseless = false;
        std::size_t arg = 0;
        for (std::size_t c = 0; c < col.size(); ++c)
            if (!col.prob(c).is_zero_exact()) arg = c;
        used.insert(arg);
    }
    if (noiseless) {
        const double v = std::log2(static_cast<double>(used.size()));
        Witness w;
        w.input_dist = std::vector<double>(ch.inputs(), 1.0 / (double)ch.inputs());
        w.note = "noiseless channel: capacity is the log of the distinct-output count";
        return MetricValue::interval(Num::floating(v), Num::floating(v), std::move(w),
                                     "closed form");
    }
    const CapacityResult cap = channel_capacity(ch.to_double_rows(), opts.tol, opts.ba_max_iter);
    double lo = std::max(0.0, cap.lower);
    double hi = std::min(cap.upper,
                         std::log2(static_cast<double>(std::min(ch.inputs(), ch.outputs()))));
    hi = std::max(hi, lo);
    Witness w;
    w.input_dist = cap.input_dist;
    w.note = "best input distribution found by alternating maximization";
    std::string cert = cap.converged
                           ? "two-sided capacity bounds, gap <= tol"
                           : "iteration cap reached; bounds valid but gap above tol";
    return MetricValue::interval(Num::floating(lo), Num::floating(hi), std::move(w),
                                 std::move(cert));
}

MetricValue eps_joint_tv(const CipherSpec& s, const MetricOptions& opts) {
    const MetricValue ind = eps_ind(s);
    const Channel ch = channel_matrix(s);
    const std::size_t nm = ch.inputs();
    if (nm < 2 || ind.hi.is_zero_exact()) {
        Witness w;
        w.input_dist = std::vector<double>(nm, 1.0 / (double)nm);
        w.note = "collapsed: pairwise advantage is zero";
        return MetricValue::interval(Num::zero(s.mode), Num::zero(s.mode), std::move(w),
                                     "exact (pairwise advantage dominates)");
    }
    const PairMax wp = worst_pair(ch);
    const RowsD rows = ch.to_double_rows();
    auto obj = [&](const std::vector<double>& p) { return eps2_objective_d(rows, p); };

    // candidate priors, then local refinement from the best
    std::vector<std::vector<double>> starts;
    starts.emplace_back(nm, 1.0 / (double)nm);
    if (nm <= 10) {
        for (std::size_t a = 0; a < nm; ++a)
            for (std::size_t b = a + 1; b < nm; ++b) {
                std::vector<double> p(nm, 0.0);
                p[a] = p[b] = 0.5;
                starts.push_back(std::move(p));
            }
    } else {
        std::vector<double> p(nm, 0.0);
        p[wp.a] = p[wp.b] = 0.5;
        starts.push_back(std::move(p));
    }
    SplitMix64 rng(opts.seed);
    for (int r = 0; r < opts.search_restarts; ++r) starts.push_back(random_prior(rng, nm));

    std::vector<double> best_p = starts.front();
    double best_v = obj(best_p);
    for (const auto& p : starts) {
        const double v = obj(p);
        if (v > best_v) {
            best_v = v;
            best_p = p;
        }
    }
    double climbed_v = 0.0;
    std::vector<double> climbed = hill_climb(obj, best_p, climbed_v);
    if (climbed_v > best_v) {
        best_v = climbed_v;
        best_p = climbed;
    }
    if (nm == 2) {
        // golden-section refinement over the 1-D simplex
        const double phi = 0.6180339887498949;
        double a = 0.0, b = 1.0;
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        auto f = [&](double t) { return obj({t, 1.0 - t}); };
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = f(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = f(x1);
            }
        }
        const double t = (a + b) / 2, ft = f(t);
        if (ft > best_v) {
            best_v = ft;
            best_p = {t, 1.0 - t};
        }
    }

    Num lo = Num::zero(s.mode), hi = ind.hi;
    Witness w;
    if (s.mode == NumMode::rational) {
        // exact evaluation at: the worst pair (guarantees hi/2), uniform, and the
        // rationalized best search point
        std::vector<std::vector<Num>> cands{pair_prior(nm, wp.a, wp.b, s.mode),
                                            uniform_prior(nm, s.mode),
                                            rationalize_prior(best_p)};
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const Num v = eps2_objective(ch, cands[i]);
            if (lo.less_exact(v)) {
                lo = v;
                best_i = i;
            }
        }
        w.input_dist = to_doubles(cands[best_i]);
    } else {
        std::vector<double> pairp(nm, 0.0);
        pairp[wp.a] = pairp[wp.b] = 0.5;
        const double pv = obj(pairp);
        if (pv > best_v) {
            best_v = pv;
            best_p = pairp;
        }
        lo = Num::floating(std::min(best_v, hi.to_double()));
        w.input_dist = best_p;
    }
    if (hi.less_exact(lo)) lo = hi; // guard against float round-off
    w.note = "prior achieving lo (re-evaluable); two-point prior on the worst pair "
             "guarantees lo >= hi/2";
    return MetricValue::interval(lo, hi, std::move(w),
                                 "hi: pairwise-advantage dominance; lo: evaluated prior");
}

MetricValue eps_posterior(const CipherSpec& s, const MetricOptions& opts) {
    const MetricValue ind = eps_ind(s);
    const Channel ch = channel_matrix(s);
    const std::size_t nm = ch.inputs(), nc = ch.outputs();
    if (nm < 2 || ind.hi.is_zero_exact()) {
        Witness w;
        w.input_dist = std::vector<double>(nm, 1.0 / (double)nm);
        w.note = "posteriors equal the prior for every prior";
        return MetricValue::interval(Num::zero(s.mode), Num::zero(s.mode), std::move(w),
                                     "exact (pairwise advantage is zero)");
    }

    // vertex-limit rule: the supremum is 1 iff some column position is exactly
    // zero for one message but reachable from another
    bool sup_is_one = false;
    std::size_t rule_m = 0, rule_c = 0;
    for (std::size_t c = 0; c < nc && !sup_is_one; ++c) {
        bool any_pos = false, any_zero = false;
        std::size_t zm = 0;
        for (std::size_t m = 0; m < nm; ++m) {
            if (ch.column(m).prob(c).is_zero_exact()) {
                any_zero = true;
                zm = m;
            } else {
                any_pos = true;
            }
        }
        if (any_pos && any_zero) {
            sup_is_one = true;
            rule_m = zm;
            rule_c = c;
        }
    }

    const MetricValue delta = delta_all(s);
    const double d1 = delta.hi.to_double();
    const double hbin = (d1 <= 0.0 || d1 >= 1.0)
                            ? 0.0
                            : -d1 * std::log2(d1) - (1 - d1) * std::log2(1 - d1);
    const double eta =
        std::max(0.0, std::log2((double)nc) - (1 - d1) * std::log2((double)nm) + hbin);
    const double den = 1.0 - std::sqrt(2.0 * kLn2 * eta);
    double hi_d = 1.0;
    std::string hi_note = "trivial bound (distance <= 1)";
    if (den > opts.tol) {
        const double envelope = 2.0 * ind.hi.to_double() * (double)nc / den;
        if (envelope < 1.0) {
            hi_d = envelope;
            hi_note = "Fano/Pinsker envelope on the least ciphertext mass";
        }
    }

    Num lo = Num::zero(s.mode);
    Witness w;
    if (sup_is_one) {
        lo = Num::one(s.mode);
        hi_d = 1.0;
        hi_note = "supremum attained in the vertex limit";
        std::vector<Num> probe = near_vertex_prior(nm, rule_m, 1024, s.mode);
        w.input_dist = to_doubles(probe);
        w.note = "vertex-limit rule: output '" + s.ciphertexts[rule_c] +
                 "' is unreachable from '" + s.messages[rule_m] +
                 "' but reachable otherwise; the stored near-vertex prior approaches 1";
    } else {
        const PairMax wp = worst_pair(ch);
        const RowsD rows = ch.to_double_rows();
        auto obj = [&](const std::vector<double>& p) { return eps4_objective_d(rows, p); };

        std::vector<std::vector<double>> starts;
        starts.emplace_back(nm, 1.0 / (double)nm);
        {
            std::vector<double> third(nm, 0.0);
            if (nm >= 3) {
                third[0] = third[1] = 1.0 / 3.0;
                for (std::size_t m = 2; m < nm; ++m) third[m] = 1.0 / (3.0 * (double)(nm - 2));
            } else {
                third[0] = third[1] = 0.5;
            }
            starts.push_back(std::move(third));
        }
        if (nm <= 10) {
            for (std::size_t a = 0; a < nm; ++a)
                for (std::size_t b = a + 1; b < nm; ++b) {
                    std::vector<double> p(nm, 0.0);
                    p[a] = p[b] = 0.5;
                    starts.push_back(std::move(p));
                }
        } else {
            std::vector<double> p(nm, 0.0);
            p[wp.a] = p[wp.b] = 0.5;
            starts.push_back(std::move(p));
        }
        for (std::size_t m = 0; m < nm; ++m)
            for (long g : {8L, 64L, 512L})
                starts.push_back(to_doubles(near_vertex_prior(nm, m, g, NumMode::floating)));
        SplitMix64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
        for (int r = 0; r < opts.search_restarts; ++r) starts.push_back(random_prior(rng, nm));

        std::vector<double> best_p = starts.front();
        double best_v = obj(best_p);
        for (const auto& p : starts) {
            const double v = obj(p);
            if (v > best_v) {
                best_v = v;
                best_p = p;
            }
        }
        double climbed_v = 0.0;
        std::vector<double> climbed = hill_climb(obj, best_p, climbed_v);
        if (climbed_v > best_v) {
            best_v = climbed_v;
            best_p = climbed;
        }

        if (s.mode == NumMode::rational) {
            std::vector<std::vector<Num>> cands;
            cands.push_back(uniform_prior(nm, s.mode));
            {
                std::vector<Num> third(nm, Num::zero(s.mode));
                if (nm >= 3) {
                    third[0] = third[1] = Num::frac(1, 3, s.mode);
                    for (std::size_t m = 2; m < nm; ++m)
                        third[m] = Num::frac(1, 3 * static_cast<long>(nm - 2), s.mode);
                } else {
                    third[0] = third[1] = Num::frac(1, 2, s.mode);
                }
                cands.push_back(std::move(third));
            }
            cands.push_back(pair_prior(nm, wp.a, wp.b, s.mode));
            for (std::size_t m = 0; m < nm; ++m)
                for (long g : {8L, 64L, 512L}) cands.push_back(near_vertex_prior(nm, m, g, s.mode));
            cands.push_back(rationalize_prior(best_p));
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < cands.size(); ++i) {
                const Num v = eps4_objective(ch, cands[i]);
                if (lo.less_exact(v)) {
                    lo = v;
                    best_i = i;
                }
            }
            w.input_dist = to_doubles(cands[best_i]);
        } else {
            lo = Num::floating(best_v);
            w.input_dist = best_p;
        }
        w.note = "prior achieving lo; includes worst posterior-vs-prior and "
                 "posterior-pair distances";
    }

    // the joint-vs-product value at any prior also lower-bounds this metric
    const MetricValue e2 = eps_joint_tv(s, opts);
    if (lo.less_exact(e2.lo) && e2.lo.mode() == lo.mode()) {
        lo = e2.lo;
        w.input_dist = e2.witness.input_dist;
        w.note = "joint-vs-product witness dominates posterior candidates here";
    }

    Num hi = s.mode == NumMode::rational && hi_d == 1.0 ? Num::one(s.mode)
                                                        : Num::floating(hi_d);
    // the endpoints must stay ordered even under float round-off
    if (hi.mode() != lo.mode()) {
        if (hi.to_double() < lo.to_double()) hi = Num::floating(lo.to_double());
        lo = Num::floating(std::min(lo.to_double(), hi.to_double()));
    } else if (hi.less_exact(lo)) {
        hi = lo;
    }
    return MetricValue::interval(lo, hi, std::move(w), "lo: evaluated priors; hi: " + hi_note);
}

MetricValue eps_semantic(const CipherSpec& s) {
    const MetricValue ind = eps_ind(s);
    Witness w;
    w.note = "interval from the binary-test sandwich; the inner optimum is not computed";
    return MetricValue::interval(ind.hi / Num::integer(4, ind.hi.mode()), ind.hi, std::move(w),
                                 "sandwich against the binary-test advantage");
}

MetricValue eps_composable(const CipherSpec& s, const MetricOptions& opts) {
    const MetricValue radius = eps_radius(s, opts);
    const MetricValue delta = delta_all(s);
    const Num lo = max(radius.hi, delta.hi);
    const Num hi = min(Num::one(s.mode), radius.hi + delta.hi);
    Witness w;
    w.center = radius.witness.center;
    w.note = "bracketed by the common-center advantage and the correctness defect";
    return MetricValue::interval(lo, max(lo, hi), std::move(w),
                                 "simulator sandwich around the radius");
}

void check_report_consistency(const SecurityReport& r, double tol) {
    const auto& eps = r.eps;
    const double e3 = eps.at(3).hi_d();
    if (std::abs(eps.at(2).hi_d() - e3) > tol)
        throw Error(Errc::invalid_argument, "report: joint-tv hi must equal pairwise advantage");
    if (2 * eps.at(2).lo_d() < e3 - tol)
        throw Error(Errc::invalid_argument, "report: joint-tv lo below half the advantage");
    if (eps.at(9).hi_d() > e3 + tol)
        throw Error(Errc::invalid_argument, "report: radius above pairwise advantage");
    if (2 * eps.at(9).lo_d() < e3 - tol)
        throw Error(Errc::invalid_argument, "report: radius below half the advantage");
    if (eps.at(4).lo_d() < eps.at(2).lo_d() - tol)
        throw Error(Errc::invalid_argument, "report: posterior lo below joint-tv lo");
    if (eps.at(8).lo_d() < eps.at(9).lo_d() - tol)
        throw Error(Errc::invalid_argument, "report: composable lo below radius");
}

SecurityReport security_report(const CipherSpec& s, const MetricOptions& opts) {
    SecurityReport r;
    r.n_keys = s.keys.size();
    r.n_messages = s.messages.size();
    r.n_ciphertexts = s.ciphertexts.size();
    r.delta = delta_all(s);
    const MetricValue ind = eps_ind(s);
    r.eps[1] = eps_mi_sup(s, opts);
    r.eps[2] = eps_joint_tv(s, opts);
    r.eps[3] = ind;
    r.eps[4] = eps_posterior(s, opts);
    r.eps[5] = ind;
    r.eps[6] = ind;
    r.eps[7] = eps_semantic(s);
    r.eps[8] = eps_composable(s, opts);
    r.eps[9] = eps_radius(s, opts);
    r.eps[10] = r.eps[9];
    check_report_consistency(r, s.mode == NumMode::rational ? 1e-12 : opts.tol);
    return r;
}

namespace {

bool le_threshold(const Num& v, const Num& t) {
    if (v.mode() == t.mode() && v.mode() == NumMode::rational) return !t.less_exact(v);
    return v.to_double() <= t.to_double();
}

} // namespace

Ternary is_type_secure(const SecurityReport& r, int i, int j, const Num& delta_star,
                       const Num& eps_star) {
    if (i < 1 || i > 3 || j < 1 || j > 10)
        throw Error(Errc::invalid_argument, "type indices out of range");
    const MetricValue& e = r.eps.at(j);
    const bool delta_yes = le_threshold(r.delta.hi, delta_star);
    const bool delta_no = !le_threshold(r.delta.lo, delta_star);
    const bool eps_yes = le_threshold(e.hi, eps_star);
    const bool eps_no = !le_threshold(e.lo, eps_star);
    if (delta_no || eps_no) return Ternary::no;
    if (delta_yes && eps_yes) return Ternary::yes;
    return Ternary::unknown;
}

} // namespace itsec
