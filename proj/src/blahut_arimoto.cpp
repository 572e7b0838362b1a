#include "itsec/blahut_arimoto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "itsec/error.hpp"

namespace itsec {

CapacityResult channel_capacity(const std::vector<std::vector<double>>& rows, double tol,
                                std::size_t max_iter) {
    if (rows.empty() || rows.front().empty())
        throw Error(Errc::invalid_argument, "capacity: empty channel");
    const std::size_t nm = rows.size(), nc = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != nc) throw Error(Errc::invalid_argument, "capacity: ragged rows");
        double sum = 0.0;
        for (double v : row) {
            if (v < -1e-12) throw Error(Errc::invalid_argument, "capacity: negative entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw Error(Errc::invalid_argument, "capacity: row not normalized");
    }

    std::vector<double> p(nm, 1.0 / static_cast<double>(nm));
    std::vector<double> q(nc), d(nm);
    CapacityResult res;
    res.lower = -std::numeric_limits<double>::infinity();
    res.upper = std::numeric_limits<double>::infinity();
    res.input_dist = p;

    for (std::size_t it = 0; it < max_iter; ++it) {
        for (std::size_t c = 0; c < nc; ++c) {
            double acc = 0.0;
            for (std::size_t m = 0; m < nm; ++m) acc += p[m] * rows[m][c];
            q[c] = acc;
        }
        double mi = 0.0, worst = 0.0;
        for (std::size_t m = 0; m < nm; ++m) {
            double div = 0.0;
            for (std::size_t c = 0; c < nc; ++c) {
                const double w = rows[m][c];
                if (w <= 0.0) continue;
                div += w * std::log2(w / q[c]);
            }
            d[m] = div;
            mi += p[m] * div;
            worst = std::max(worst, div);
        }
        res.iterations = it + 1;
        if (mi > res.lower) {
            res.lower = mi;
            res.input_dist = p;
        }
        res.upper = std::min(res.upper, worst);
        if (res.upper - res.lower <= tol) {
            res.converged = true;
            break;
        }
        double norm = 0.0;
        for (std::size_t m = 0; m < nm; ++m) {
            p[m] *= std::exp2(d[m]);
            norm += p[m];
        }
        for (std::size_t m = 0; m < nm; ++m) p[m] /= norm;
    }
    res.lower = std::max(res.lower, 0.0);
    res.upper = std::max(res.upper, res.lower);
    return res;
}

} // namespace itsec
