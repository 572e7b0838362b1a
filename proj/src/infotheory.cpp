#include "itsec/infotheory.hpp"

#include <cmath>
#include <limits>

namespace itsec {

Num tv_distance(const Dist& p, const Dist& q) {
    if (!p.same_alphabet(q)) throw Error(Errc::alphabet_mismatch, "tv_distance: different alphabets");
    Num acc = Num::zero(p.mode());
    for (std::size_t i = 0; i < p.size(); ++i) acc = acc + (p.prob(i) - q.prob(i)).abs();
    return acc / Num::integer(2, p.mode());
}

namespace {

bool exactly_uniform(const Dist& p) {
    for (std::size_t i = 1; i < p.size(); ++i)
        if (!p.prob(i).eq_exact(p.prob(0))) return false;
    return true;
}

} // namespace

EntropyTriple entropies(const Dist& p) {
    const std::size_t supp = p.support_size();
    if (supp == 1) {
        Num z = Num::floating(0.0);
        return {z, z, z};
    }
    if (exactly_uniform(p)) {
        Num v = Num::floating(std::log2(static_cast<double>(p.size())));
        return {v, v, v};
    }
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double v = p.prob(i).to_double();
        if (v > 0.0) h -= v * std::log2(v);
    }
    const double hmin = -std::log2(p.max_prob().to_double());
    const double h0 = std::log2(static_cast<double>(supp));
    return {Num::floating(h), Num::floating(hmin), Num::floating(h0)};
}

Num binary_entropy(const Num& p) {
    const double v = p.to_double();
    if (v < 0.0 || v > 1.0) throw Error(Errc::invalid_argument, "binary_entropy: argument outside [0,1]");
    if (v == 0.0 || v == 1.0) return Num::floating(0.0);
    return Num::floating(-v * std::log2(v) - (1.0 - v) * std::log2(1.0 - v));
}

Num mutual_information(const Joint& j) {
    if (j.rank() != 2) throw Error(Errc::invalid_argument, "mutual_information: rank-2 joint required");
    const Dist px = j.marginal(0);
    const Dist py = j.marginal(1);
    bool independent = true;
    for (std::size_t x = 0; x < j.dim(0) && independent; ++x)
        for (std::size_t y = 0; y < j.dim(1); ++y)
            if (!j.at(x, y).eq_exact(px.prob(x) * py.prob(y))) {
                independent = false;
                break;
            }
    if (independent) return Num::floating(0.0);
    double acc = 0.0;
    for (std::size_t x = 0; x < j.dim(0); ++x)
        for (std::size_t y = 0; y < j.dim(1); ++y) {
            const double pxy = j.at(x, y).to_double();
            if (pxy > 0.0) acc += pxy * std::log2(pxy / (px.prob(x).to_double() * py.prob(y).to_double()));
        }
    return Num::floating(acc < 0.0 ? 0.0 : acc);
}

Num kl_divergence(const Dist& p, const Dist& q) {
    if (!p.same_alphabet(q)) throw Error(Errc::alphabet_mismatch, "kl_divergence: different alphabets");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.prob(i).is_zero_exact()) continue;
        if (q.prob(i).is_zero_exact()) return Num::floating(std::numeric_limits<double>::infinity());
        const double pv = p.prob(i).to_double();
        acc += pv * std::log2(pv / q.prob(i).to_double());
    }
    return Num::floating(acc < 0.0 ? 0.0 : acc);
}

Num conditional_tv(const Joint& zx, const Joint& zy, double tol) {
    if (zx.rank() != 2 || zy.rank() != 2)
        throw Error(Errc::invalid_argument, "conditional_tv: rank-2 joints required");
    if (zx.axis(0).labels != zy.axis(0).labels)
        throw Error(Errc::alphabet_mismatch, "conditional_tv: conditioning alphabets differ");
    if (zx.axis(1).labels != zy.axis(1).labels)
        throw Error(Errc::alphabet_mismatch, "conditional_tv: target alphabets differ");
    if (zx.mode() != zy.mode()) throw Error(Errc::mode_mismatch, "conditional_tv: mixed modes");
    const Dist mz1 = zx.marginal(0);
    const Dist mz2 = zy.marginal(0);
    for (std::size_t z = 0; z < mz1.size(); ++z)
        if (!mz1.prob(z).eq(mz2.prob(z), tol))
            throw Error(Errc::invalid_argument,
                        "conditional_tv: conditioning marginals differ at '" + mz1.label(z) + "'");
    Num acc = Num::zero(zx.mode());
    for (std::size_t z = 0; z < mz1.size(); ++z) {
        if (mz1.prob(z).is_zero_exact()) continue;
        acc = acc + mz1.prob(z) * tv_distance(zx.conditional(1, z), zy.conditional(1, z));
    }
    return acc;
}

} // namespace itsec
