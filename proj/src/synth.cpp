#include "itsec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "itsec/prng.hpp"

namespace itsec {

namespace {

std::vector<std::string> numbered(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

bool positive_entry(const Num& v, double tol) {
    return v.is_rational() ? v.sgn() > 0 : v.to_double() > std::max(tol * 1e-3, 1e-12);
}

NumMode matrix_mode(const Matrix& a) { return a.front().front().mode(); }

void require_square(const Matrix& a) {
    if (a.empty()) throw Error(Errc::invalid_argument, "matrix: empty");
    for (const auto& row : a)
        if (row.size() != a.size()) throw Error(Errc::non_square, "matrix: not square");
}

// Perfect matching of inputs [from, n) into outputs with used[i] == false,
// along positive entries. Kuhn's augmenting paths.
bool can_complete(const std::vector<std::vector<std::size_t>>& adj, std::size_t from,
                  std::vector<bool> used, std::size_t n) {
    std::vector<long> owner(n, -1); // output -> input
    for (std::size_t i = 0; i < n; ++i)
        if (used[i]) owner[i] = -2;
    std::vector<bool> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t j) -> bool {
        for (std::size_t i : adj[j]) {
            if (owner[i] == -2 || seen[i]) continue;
            seen[i] = true;
            if (owner[i] < 0 || augment(static_cast<std::size_t>(owner[i]))) {
                owner[i] = static_cast<long>(j);
                return true;
            }
        }
        return false;
    };
    for (std::size_t j = from; j < n; ++j) {
        seen.assign(n, false);
        if (!augment(j)) return false;
    }
    return true;
}

// Lexicographically smallest perfect matching on positive entries.
std::vector<std::size_t> lex_matching(const Matrix& a, double tol) {
    const std::size_t n = a.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (positive_entry(a[i][j], tol)) adj[j].push_back(i);
    std::vector<std::size_t> perm(n);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        bool placed = false;
        for (std::size_t i : adj[j]) {
            if (used[i]) continue;
            used[i] = true;
            if (can_complete(adj, j + 1, used, n)) {
                perm[j] = i;
                placed = true;
                break;
            }
            used[i] = false;
        }
        if (!placed)
            throw Error(Errc::infeasible,
                        "matching missing on a doubly stochastic support (internal defect)");
    }
    return perm;
}

// Affine dependency among permutation matrices: solve V·lambda = 0 where V
// stacks the vectorized permutations plus an all-ones row. Returns a nonzero
// lambda when terms exceed the Birkhoff-polytope dimension plus one.
std::vector<Num> affine_dependency(const std::vector<BirkhoffTerm>& terms, std::size_t n,
                                   NumMode mode, double tol) {
    const std::size_t t = terms.size(), rows = n * n + 1;
    std::vector<std::vector<Num>> v(rows, std::vector<Num>(t, Num::zero(mode)));
    for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t j = 0; j < n; ++j) v[terms[k].perm[j] * n + j][k] = Num::one(mode);
        v[rows - 1][k] = Num::one(mode);
    }
    // row echelon with column pivots
    std::vector<long> pivot_of_col(t, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < t && r < rows; ++c) {
        std::size_t best = r;
        bool found = false;
        for (std::size_t i = r; i < rows; ++i) {
            const bool nz = mode == NumMode::rational ? v[i][c].sgn() != 0
                                                      : std::abs(v[i][c].to_double()) > tol;
            if (nz) {
                best = i;
                found = true;
                break;
            }
        }
        if (!found) continue; // free column
        std::swap(v[r], v[best]);
        const Num piv = v[r][c];
        for (std::size_t cc = c; cc < t; ++cc) v[r][cc] = v[r][cc] / piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Num f = v[i][c];
            if (f.is_zero_exact()) continue;
            for (std::size_t cc = c; cc < t; ++cc) v[i][cc] = v[i][cc] - f * v[r][cc];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    long free_col = -1;
    for (std::size_t c = 0; c < t; ++c)
        if (pivot_of_col[c] < 0) {
            free_col = static_cast<long>(c);
            break;
        }
    if (free_col < 0) return {}; // affinely independent, nothing to reduce
    std::vector<Num> lambda(t, Num::zero(mode));
    lambda[static_cast<std::size_t>(free_col)] = Num::one(mode);
    for (std::size_t c = 0; c < t; ++c)
        if (pivot_of_col[c] >= 0)
            lambda[c] =
                -v[static_cast<std::size_t>(pivot_of_col[c])][static_cast<std::size_t>(free_col)];
    return lambda;
}

void caratheodory_reduce(std::vector<BirkhoffTerm>& terms, std::size_t n, NumMode mode,
                         double tol) {
    const std::size_t cap = (n - 1) * (n - 1) + 1;
    std::size_t guard = 0;
    while (terms.size() > cap) {
        if (++guard > n * n + 2)
            throw Error(Errc::iteration_cap, "decomposition reduction failed to shrink");
        std::vector<Num> lambda = affine_dependency(terms, n, mode, tol);
        if (lambda.empty())
            throw Error(Errc::invalid_argument,
                        "decomposition above the term cap but affinely independent "
                        "(internal defect)");
        bool has_pos = false;
        for (const Num& l : lambda) has_pos = has_pos || l.sgn() > 0;
        if (!has_pos)
            for (Num& l : lambda) l = -l;
        // largest step keeping all weights nonnegative; zeroes the argmin term
        bool first = true;
        Num step = Num::zero(mode);
        for (std::size_t k = 0; k < terms.size(); ++k) {
            if (lambda[k].sgn() <= 0) continue;
            const Num ratio = terms[k].weight / lambda[k];
            if (first || ratio.less_exact(step)) {
                step = ratio;
                first = false;
            }
        }
        std::vector<BirkhoffTerm> kept;
        kept.reserve(terms.size() - 1);
        for (std::size_t k = 0; k < terms.size(); ++k) {
            Num w = terms[k].weight - step * lambda[k];
            const bool zero = mode == NumMode::rational ? w.sgn() <= 0 : w.to_double() <= 1e-13;
            if (zero) continue;
            kept.push_back(BirkhoffTerm{w, terms[k].perm});
        }
        if (kept.size() >= terms.size())
            throw Error(Errc::iteration_cap, "decomposition reduction failed to shrink");
        terms = std::move(kept);
    }
}

} // namespace

bool is_doubly_stochastic(const Matrix& a, double tol) {
    require_square(a);
    const std::size_t n = a.size();
    const NumMode mode = matrix_mode(a);
    const Num one = Num::one(mode);
    for (std::size_t i = 0; i < n; ++i) {
        Num rsum = Num::zero(mode), csum = Num::zero(mode);
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][j].mode() != mode || a[j][i].mode() != mode)
                throw Error(Errc::mode_mismatch, "matrix: mixed numeric modes");
            const bool neg = a[i][j].is_rational() ? a[i][j].sgn() < 0
                                                   : a[i][j].to_double() < -tol;
            if (neg) return false;
            rsum = rsum + a[i][j];
            csum = csum + a[j][i];
        }
        if (!rsum.eq(one, tol) || !csum.eq(one, tol)) return false;
    }
    return true;
}

Matrix BirkhoffDecomposition::reconstruct(std::size_t n, NumMode mode) const {
    Matrix a(n, std::vector<Num>(n, Num::zero(mode)));
    for (const auto& term : terms)
        for (std::size_t j = 0; j < n; ++j)
            a[term.perm[j]][j] = a[term.perm[j]][j] + term.weight;
    return a;
}

CipherSpec one_time_pad(std::size_t n) {
    if (n < 1) throw Error(Errc::invalid_argument, "one_time_pad: n >= 1 required");
    const std::vector<std::string> labels = numbered(n);
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) table[k][m] = (m + k) % n;
    return deterministic_cipher("otp-" + std::to_string(n), labels, labels, labels,
                                Dist::uniform(labels, NumMode::rational), table);
}

LeakyShiftScheme counterexample_scheme(std::size_t n, const Rat& eps) {
    if (n < 2) throw Error(Errc::invalid_argument, "counterexample: n >= 2 required");
    if (n > 64)
        throw Error(Errc::cap_exceeded,
                    "counterexample: materialization capped at n = 64; use the closed-form "
                    "helpers for larger sizes");
    if (eps <= 0 || eps > 1)
        throw Error(Errc::invalid_argument, "counterexample: eps must lie in (0, 1]");
    const long nl = static_cast<long>(n);
    const Rat off = (Rat(1) - eps) / nl; // each non-identity shift
    const Rat diag = eps + off;
    std::vector<Num> p_key;
    p_key.push_back(Num::rational(diag));
    for (std::size_t s = 1; s < n; ++s) p_key.push_back(Num::rational(off));
    const std::vector<std::string> labels = numbered(n);
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) table[k][m] = (m + k) % n;

    LeakyShiftScheme out;
    out.spec = deterministic_cipher("leaky-shift-" + std::to_string(n), labels, labels, labels,
                                    Dist::create(labels, p_key), table);
    out.matrix.assign(n, std::vector<Num>(n, Num::rational(off)));
    for (std::size_t i = 0; i < n; ++i) out.matrix[i][i] = Num::rational(diag);
    out.mi_uniform = counterexample_mi(static_cast<double>(n), rat_to_double(eps));
    return out;
}

double counterexample_mi(double n, double eps) {
    const double diag = eps + (1.0 - eps) / n;
    double value = (eps + 1.0 / n) * std::log2(n) + diag * std::log2(diag) -
                   (eps / n) * std::log2(n);
    if (eps < 1.0) value += (1.0 - 1.0 / n) * (1.0 - eps) * std::log2(1.0 - eps);
    return value;
}

double counterexample_eps_ind(double eps) { return eps; }

BirkhoffDecomposition birkhoff_decompose(const Matrix& a, double tol) {
    if (!is_doubly_stochastic(a, tol))
        throw Error(Errc::invalid_argument, "decompose: matrix is not doubly stochastic");
    const std::size_t n = a.size();
    const NumMode mode = matrix_mode(a);
    Matrix rest = a;
    BirkhoffDecomposition out;
    const std::size_t hard_cap = n * n + 2;
    while (true) {
        bool any = false;
        for (std::size_t i = 0; i < n && !any; ++i)
            for (std::size_t j = 0; j < n && !any; ++j) any = positive_entry(rest[i][j], tol);
        if (!any) break;
        if (out.terms.size() >= hard_cap)
            throw Error(Errc::iteration_cap, "decompose: extraction failed to terminate");
        const std::vector<std::size_t> perm = lex_matching(rest, tol);
        Num w = rest[perm[0]][0];
        for (std::size_t j = 1; j < n; ++j) w = min(w, rest[perm[j]][j]);
        for (std::size_t j = 0; j < n; ++j) {
            Num& cell = rest[perm[j]][j];
            cell = cell - w;
            if (mode == NumMode::floating && std::abs(cell.to_double()) <= 1e-13)
                cell = Num::zero(mode); // kill round-off residue
        }
        out.terms.push_back(BirkhoffTerm{w, perm});
    }
    caratheodory_reduce(out.terms, n, mode, tol);
    return out;
}

CipherSpec scheme_from_matrix(const Matrix& a, double tol) {
    const BirkhoffDecomposition dec = birkhoff_decompose(a, tol);
    const std::size_t n = a.size();
    const std::vector<std::string> labels = numbered(n);
    std::vector<std::string> keys = numbered(dec.terms.size());
    std::vector<Num> weights;
    std::vector<std::vector<std::size_t>> table;
    weights.reserve(dec.terms.size());
    table.reserve(dec.terms.size());
    for (const auto& term : dec.terms) {
        weights.push_back(term.weight);
        table.push_back(term.perm);
    }
    return deterministic_cipher("synth-" + std::to_string(n), labels, keys, labels,
                                Dist::create(keys, weights), table);
}

Matrix random_doubly_stochastic(std::size_t n, std::size_t term_count, std::uint64_t seed) {
    if (n < 1 || term_count < 1)
        throw Error(Errc::invalid_argument, "random matrix: n >= 1 and term_count >= 1");
    SplitMix64 rng(seed);
    std::vector<long> units(term_count);
    long total = 0;
    for (auto& u : units) {
        u = rng.range(1, 64);
        total += u;
    }
    Matrix a(n, std::vector<Num>(n, Num::rational(Rat(0))));
    std::vector<std::size_t> perm(n);
    for (std::size_t t = 0; t < term_count; ++t) {
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        const Num w = Num::rational(rat(units[t], total));
        for (std::size_t j = 0; j < n; ++j) a[perm[j]][j] = a[perm[j]][j] + w;
    }
    return a;
}

CipherSpec tight_scheme(TightKind kind, std::size_t n, const Rat& param) {
    if (n < 1) throw Error(Errc::invalid_argument, "tight scheme: n >= 1 required");
    const long nl = static_cast<long>(n);
    if (kind == TightKind::zero_error) {
        if (param < 0 || param > 1)
            throw Error(Errc::invalid_argument, "tight scheme: eps must lie in [0, 1]");
        const Rat cut = param * nl / 2;
        if (cut.get_den() != 1)
            throw Error(Errc::invalid_argument,
                        "tight scheme: eps * n / 2 must be an integer");
        const std::size_t drop = static_cast<std::size_t>(cut.get_num().get_si());
        const std::size_t t = n - drop;
        if (t == 0) throw Error(Errc::invalid_argument, "tight scheme: key alphabet empty");
        // shift cipher with the key range truncated to t values: decryption is
        // perfect; column windows of width t overlap in all but drop positions
        const std::vector<std::string> labels = numbered(n);
        std::vector<std::vector<std::size_t>> table(t, std::vector<std::size_t>(n));
        for (std::size_t k = 0; k < t; ++k)
            for (std::size_t m = 0; m < n; ++m) table[k][m] = (m + k) % n;
        return deterministic_cipher("tight-err0-" + std::to_string(n), labels, numbered(t),
                                    labels, Dist::uniform(numbered(t), NumMode::rational),
                                    table);
    }

    // zero_advantage: param = delta
    if (param < 0 || param > 1)
        throw Error(Errc::invalid_argument, "tight scheme: delta must lie in [0, 1]");
    const Rat cut = param * nl;
    if (cut.get_den() != 1)
        throw Error(Errc::invalid_argument, "tight scheme: delta * n must be an integer");
    const std::size_t drop = static_cast<std::size_t>(cut.get_num().get_si());
    if (drop == 0) {
        CipherSpec s = one_time_pad(n);
        s.name = "tight-adv0-" + std::to_string(n);
        return s;
    }
    const std::size_t t = n - drop;
    if (t == 0) throw Error(Errc::invalid_argument, "tight scheme: key alphabet empty");

    // Publicly rotate the message by a fresh uniform shift s, then pad the
    // rotated value inside Z_t when it lands there; otherwise emit uniform
    // noise. Every message errs with probability exactly drop/n and the
    // ciphertext (s, y) is exactly uniform regardless of the message.
    CipherSpec s;
    s.name = "tight-adv0-" + std::to_string(n);
    s.mode = NumMode::rational;
    s.messages = numbered(n);
    s.keys = numbered(t);
    s.decoded = s.messages;
    s.ciphertexts.reserve(n * t);
    for (std::size_t rot = 0; rot < n; ++rot)
        for (std::size_t y = 0; y < t; ++y)
            s.ciphertexts.push_back(std::to_string(rot) + "|" + std::to_string(y));
    s.p_key = Dist::uniform(s.keys, NumMode::rational);
    const Num cell_hit = Num::frac(1, nl, NumMode::rational);
    const Num cell_noise = Num::frac(1, nl * static_cast<long>(t), NumMode::rational);
    s.enc.resize(t);
    s.dec.resize(t);
    for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
            std::vector<Num> probs(n * t, Num::zero(NumMode::rational));
            for (std::size_t rot = 0; rot < n; ++rot) {
                const std::size_t shifted = (m + rot) % n;
                if (shifted < t)
                    probs[rot * t + (shifted + k) % t] = probs[rot * t + (shifted + k) % t] + cell_hit;
                else
                    for (std::size_t y = 0; y < t; ++y)
                        probs[rot * t + y] = probs[rot * t + y] + cell_noise;
            }
            s.enc[k].push_back(Dist::create(s.ciphertexts, probs));
        }
        for (std::size_t rot = 0; rot < n; ++rot)
            for (std::size_t y = 0; y < t; ++y) {
                const std::size_t unshifted = (y + t - k) % t;
                const std::size_t m_hat = (unshifted + n - rot) % n;
                s.dec[k].push_back(Dist::point_mass(s.decoded, m_hat, NumMode::rational));
            }
    }
    return s;
}

} // namespace itsec
