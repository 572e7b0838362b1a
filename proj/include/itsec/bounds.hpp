#pragma once

#include <string>
#include <vector>

#include "itsec/metrics.hpp"

namespace itsec {

/// Smallest achievable distinguishing advantage given key and message counts:
/// max(0, 1 - |K|/|M|). Exact rational.
Num pope_bound(std::size_t n_keys, std::size_t n_messages);

enum class BoundStatus { satisfied, violated, indeterminate };
const char* bound_status_name(BoundStatus s);

/// One evaluated lower bound. rhs is the unclamped 1 - |K|/|M|; the left side
/// is an interval when the metric feeding it is. A violated status on a valid
/// scheme is a build-stopping defect: these are theorems.
struct BoundReport {
    std::string name;
    Num rhs = Num::floating(0);
    Num lhs_lo = Num::floating(0);
    Num lhs_hi = Num::floating(0);
    BoundStatus status = BoundStatus::satisfied;
    std::string note;
};

/// Defect-plus-advantage lower bounds: delta + eps_j for j in {3,5,6,8,9,10},
/// delta + 2 eps_j for j in {2,4}, delta + 4 eps_7, and
/// delta + sqrt(ln2/2) * sqrt(eps_1), each against 1 - |K|/|M|. Satisfied when
/// both endpoints clear the bound, indeterminate when only the hi endpoint does.
std::vector<BoundReport> check_bound103(const SecurityReport& r);

/// Minimal admissible |K|/|M| ratio for a (delta*, eps*) security target of
/// type (i, j): 1 - (delta* + c eps*^p) clamped at 0, where (c, p) is (1,1)
/// for j in {3,5,6,8,9,10}, (2,1) for j in {2,4}, (4,1) for j=7 and
/// (sqrt(2 ln 2), 1/2) for j=1.
Num key_size_bound(const Num& delta_star, const Num& eps_star, int j);

/// True when no scheme with the given sizes can reach the target: exactly
/// |K| < key_size_bound(...) * |M|.
bool impossibility(const Num& delta_star, const Num& eps_star, std::size_t n_keys,
                   std::size_t n_messages, int i, int j);

/// Exact distance between the realized (message, decode, ciphertext) joint
/// and the ideal world where decoding copies the message and the ciphertext
/// is drawn from q independently.
Num distinguisher_advantage(const CipherSpec& s, const Dist& pm, const Dist& q);

} // namespace itsec
