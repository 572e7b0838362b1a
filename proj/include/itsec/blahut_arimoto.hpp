#pragma once

#include <cstddef>
#include <vector>

namespace itsec {

/// Two-sided capacity estimate in bits. `lower` is the best achieved mutual
/// information I(p_t); `upper` the best achieved max_m D(W(·|m) ‖ q_t). Both
/// are valid bounds at every iteration, so the interval is trustworthy even
/// when the iteration cap is hit (converged = false).
struct CapacityResult {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> input_dist;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Alternating-maximization capacity iteration for a discrete memoryless
/// channel given as rows[m][c] = W(c|m). Stops when upper - lower <= tol or
/// after max_iter rounds. Conventions: logs base 2 and 0·log 0 = 0.
CapacityResult channel_capacity(const std::vector<std::vector<double>>& rows,
                                double tol = 1e-9, std::size_t max_iter = 100000);

} // namespace itsec
