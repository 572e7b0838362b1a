#include "itsec/inequalities.hpp"

#include <cmath>

namespace itsec {

namespace {

IdentityCheck make_check(std::string name, double lhs, double rhs, bool is_le, double tol,
                         std::string note = {}) {
    IdentityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.note = std::move(note);
    bool ok = is_le ? (lhs <= rhs + tol) : (std::abs(lhs - rhs) <= tol);
    c.status = ok ? CheckStatus::holds : CheckStatus::violated;
    return c;
}

IdentityCheck skipped_check(std::string name, double lhs, double rhs, std::string note) {
    IdentityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.status = CheckStatus::skipped;
    c.note = std::move(note);
    return c;
}

// -2d·log2(2d/n), the alphabet-size continuity envelope, with 0·log 0 := 0.
double continuity_envelope(double d, double n) {
    if (d <= 0.0) return 0.0;
    return -2.0 * d * std::log2(2.0 * d / n);
}

constexpr double kTwoOverLn2 = 2.0 / 0.69314718055994530941723212145818;

} // namespace

Num tv_joint(const Joint& a, const Joint& b) {
    if (!a.same_shape(b)) throw Error(Errc::alphabet_mismatch, "tv_joint: shape mismatch");
    if (a.mode() != b.mode()) throw Error(Errc::mode_mismatch, "tv_joint: mixed modes");
    Num acc = Num::zero(a.mode());
    for (std::size_t i = 0; i < a.cells(); ++i) acc = acc + (a.probs()[i] - b.probs()[i]).abs();
    return acc / Num::integer(2, a.mode());
}

Num coupling_mismatch_probability(const Joint& coupling) {
    if (coupling.rank() != 3) throw Error(Errc::invalid_argument, "coupling must have rank 3");
    if (coupling.axis(0).labels != coupling.axis(1).labels)
        throw Error(Errc::alphabet_mismatch, "coupling axes 0 and 1 must share an alphabet");
    const std::size_t nx = coupling.dim(0), ny = coupling.dim(2);
    Num agree = Num::zero(coupling.mode());
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) agree = agree + coupling.at(x, x, y);
    return Num::one(coupling.mode()) - agree;
}

namespace {

// Replaces axis 1 of the coupling with a copy of axis 0: (x, x', y) -> 1{x=x'}·P(x, y).
Joint diagonal_copy(const Joint& coupling) {
    const Joint pxy = coupling.marginal_pair(0, 2);
    const std::size_t nx = coupling.dim(0), ny = coupling.dim(2);
    std::vector<Num> cells(nx * nx * ny, Num::zero(coupling.mode()));
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) cells[(x * nx + x) * ny + y] = pxy.at(x, y);
    return Joint::create({coupling.axis(0), coupling.axis(1), coupling.axis(2)}, cells, 1e-6);
}

void check_coupling(const Joint& coupling, double tol, std::vector<IdentityCheck>& out) {
    const Num mismatch = coupling_mismatch_probability(coupling);
    const Num diag_tv = tv_joint(diagonal_copy(coupling), coupling);
    if (coupling.mode() == NumMode::rational) {
        bool eq = diag_tv.eq_exact(mismatch);
        IdentityCheck c;
        c.name = "coupling-diagonal-tv";
        c.lhs = diag_tv.to_double();
        c.rhs = mismatch.to_double();
        c.status = eq ? CheckStatus::holds : CheckStatus::violated;
        c.note = "exact";
        out.push_back(c);
    } else {
        out.push_back(make_check("coupling-diagonal-tv", diag_tv.to_double(),
                                 mismatch.to_double(), false, tol));
    }
    const Num marg_tv = tv_distance(coupling.marginal(0), coupling.marginal(1));
    out.push_back(make_check("coupling-marginal-tv", marg_tv.to_double(), mismatch.to_double(),
                             true, tol));
}

void check_joint_pair(const Joint& a, const Joint& b, double tol,
                      std::vector<IdentityCheck>& out) {
    if (!a.same_shape(b)) throw Error(Errc::alphabet_mismatch, "joint pair: shape mismatch");
    const Num joint_tv = tv_joint(a, b);
    for (std::size_t ax = 0; ax < a.rank(); ++ax) {
        const Num m = tv_distance(a.marginal(ax), b.marginal(ax));
        out.push_back(make_check("marginal-le-joint-tv[" + a.axis(ax).name + "]", m.to_double(),
                                 joint_tv.to_double(), true, tol));
    }
}

// sup over priors of Δ(P∘W1, P∘W2): evaluated through explicit joint construction at
// vertices, the uniform midpoint, all pairwise midpoints, and near-vertex mixtures.
// The closed form is the worst row distance; the two routes must agree at the top.
void check_channel_pair(const Channel& w1, const Channel& w2, double tol,
                        std::vector<IdentityCheck>& out) {
    if (w1.input_labels() != w2.input_labels() || w1.output_labels() != w2.output_labels())
        throw Error(Errc::alphabet_mismatch, "channel pair: alphabet mismatch");
    const std::size_t n = w1.inputs();
    const NumMode mode = w1.column(0).mode();

    Num worst_row = Num::zero(mode);
    for (std::size_t x = 0; x < n; ++x)
        worst_row = max(worst_row, tv_distance(w1.column(x), w2.column(x)));

    auto objective = [&](const std::vector<Num>& weights) {
        Dist prior = Dist::create(w1.input_labels(), weights, 1e-6);
        Joint j1 = w1.joint_with_input(prior, "X", "Y");
        Joint j2 = w2.joint_with_input(prior, "X", "Y");
        return tv_joint(j1, j2);
    };

    std::vector<std::vector<Num>> probes;
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<Num> v(n, Num::zero(mode));
        v[x] = Num::one(mode);
        probes.push_back(v);
    }
    probes.push_back(std::vector<Num>(n, Num::one(mode) / Num::integer((long)n, mode)));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            std::vector<Num> v(n, Num::zero(mode));
            v[x] = Num::frac(1, 2, mode);
            v[y] = Num::frac(1, 2, mode);
            probes.push_back(v);
        }
    // near-vertex: (1 - 1/16) on one symbol, the rest spread uniformly
    if (n > 1)
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<Num> v(n, Num::frac(1, 16 * (long)(n - 1), mode));
            v[x] = Num::one(mode) - Num::frac(1, 16, mode);
            probes.push_back(v);
        }

    Num searched = Num::zero(mode);
    for (const auto& p : probes) searched = max(searched, objective(p));

    if (mode == NumMode::rational) {
        IdentityCheck c;
        c.name = "prior-sup-equals-worst-row";
        c.lhs = searched.to_double();
        c.rhs = worst_row.to_double();
        c.status = searched.eq_exact(worst_row) ? CheckStatus::holds : CheckStatus::violated;
        c.note = "exact; sup attained at a vertex prior";
        out.push_back(c);
    } else {
        out.push_back(make_check("prior-sup-equals-worst-row", searched.to_double(),
                                 worst_row.to_double(), false, tol,
                                 "sup attained at a vertex prior"));
    }
}

void check_binary_joint(const Joint& j, double tol, std::vector<IdentityCheck>& out) {
    if (j.rank() != 2 || j.dim(0) != 2 || j.dim(1) != 2)
        throw Error(Errc::invalid_argument, "binary-correlation-split needs a 2x2 joint");
    const Dist px = j.marginal(0), py = j.marginal(1);
    const NumMode mode = j.mode();
    // s = |Pr{X=Y} - sum_l P_X(l) P_Y(l)|; each |P(l,l) - P_X(l)P_Y(l)| must equal s/2.
    Num agree = j.at(0, 0) + j.at(1, 1);
    Num indep = px.prob(0) * py.prob(0) + px.prob(1) * py.prob(1);
    Num s = (agree - indep).abs();
    Num half_s = s / Num::integer(2, mode);
    for (std::size_t l = 0; l < 2; ++l) {
        Num term = (j.at(l, l) - px.prob(l) * py.prob(l)).abs();
        std::string name = "binary-correlation-split[" + px.label(l) + "]";
        if (mode == NumMode::rational) {
            IdentityCheck c;
            c.name = name;
            c.lhs = term.to_double();
            c.rhs = half_s.to_double();
            c.status = term.eq_exact(half_s) ? CheckStatus::holds : CheckStatus::violated;
            c.note = "exact";
            out.push_back(c);
        } else {
            out.push_back(make_check(name, term.to_double(), half_s.to_double(), false, tol));
        }
    }
}

} // namespace

std::vector<IdentityCheck> verify_distance_identities(const DistanceIdentityInput& in,
                                                      double tol) {
    std::vector<IdentityCheck> out;
    if (in.coupling) check_coupling(*in.coupling, tol, out);
    if (in.joint_pair) check_joint_pair(in.joint_pair->first, in.joint_pair->second, tol, out);
    if (in.channel_pair)
        check_channel_pair(in.channel_pair->first, in.channel_pair->second, tol, out);
    if (in.binary_joint) check_binary_joint(*in.binary_joint, tol, out);
    return out;
}

std::vector<IdentityCheck> verify_entropy_distance_bounds(const EntropyBoundInput& in,
                                                          double tol) {
    std::vector<IdentityCheck> out;
    if (in.dist_pair) {
        const Dist& p = in.dist_pair->first;
        const Dist& q = in.dist_pair->second;
        const double d = tv_distance(p, q).to_double();
        const double kl = kl_divergence(p, q).to_double();
        if (std::isinf(kl)) {
            out.push_back(make_check("pinsker", kTwoOverLn2 * d * d, kl, true, tol,
                                     "divergence infinite; bound vacuous"));
        } else {
            out.push_back(make_check("pinsker", kTwoOverLn2 * d * d, kl, true, tol));
        }
        const double h1 = entropies(p).shannon.to_double();
        const double h2 = entropies(q).shannon.to_double();
        const double gap = std::abs(h1 - h2);
        if (d <= 0.25 + tol) {
            out.push_back(make_check("entropy-continuity", gap,
                                     continuity_envelope(d, (double)p.size()), true, tol));
        } else {
            out.push_back(skipped_check("entropy-continuity", gap,
                                        continuity_envelope(d, (double)p.size()),
                                        "precondition d <= 1/4 unmet"));
        }
    }
    if (in.joint) {
        const Joint& j = *in.joint;
        if (j.rank() != 2)
            throw Error(Errc::invalid_argument, "entropy-distance bounds need a rank-2 joint");
        const Joint prod = Joint::product(j.marginal(0), j.marginal(1), j.axis(0).name,
                                          j.axis(1).name);
        const double d = tv_joint(j, prod).to_double();
        const double mi = mutual_information(j).to_double();
        out.push_back(make_check("mi-tv-lower", kTwoOverLn2 * d * d, mi, true, tol));
        const double cells = (double)j.dim(0) * (double)j.dim(1);
        if (d <= 0.25 + tol) {
            out.push_back(make_check("mi-tv-upper", mi, continuity_envelope(d, cells), true, tol));
        } else {
            out.push_back(skipped_check("mi-tv-upper", mi, continuity_envelope(d, cells),
                                        "precondition d <= 1/4 unmet"));
        }
    }
    return out;
}

} // namespace itsec
