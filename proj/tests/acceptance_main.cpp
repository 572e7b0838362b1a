// Acceptance gate. Each criterion re-derives its expected values from
// independent routes (closed forms, exhaustive grids, brute-force
// enumeration) and prints one PASS/FAIL line plus supporting measurements.
// The process exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "itsec/blahut_arimoto.hpp"
#include "itsec/specdoc.hpp"
#include "itsec/synth.hpp"

using namespace itsec;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            notes.push_back("unmet: " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Num rq(long num, long den = 1) { return Num::rational(rat(num, den)); }

// ---------------------------------------------------------------- criterion 1

void criterion_1(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    SecurityReport r = security_report(one_time_pad(16));
    const double el = seconds_since(t0);

    c.expect(r.delta.is_exact() && r.delta.lo.is_zero_exact(),
             "correctness defect must be exactly zero");
    for (const auto& [j, v] : r.eps)
        c.expect(v.lo.is_zero_exact() && v.hi.is_zero_exact(),
                 "metric " + std::to_string(j) + " must be exactly zero");
    c.expect(r.eps.size() == 10, "all ten leakage metrics must be reported");
    c.expect(r.n_keys == 16 && r.n_messages == 16, "sixteen keys for sixteen messages");
    c.note("all eleven metrics exactly 0 (rational), " + fmt(el) + "s");
    c.expect(el < 1.0, "report must finish under one second");
}

// ---------------------------------------------------------------- criterion 2

void criterion_2(Criterion& c) {
    LeakyShiftScheme ls = counterexample_scheme(4, rat(1, 2));
    SecurityReport r = security_report(ls.spec);

    for (int j : {3, 5, 6})
        c.expect(r.eps.at(j).lo.eq_exact(rq(1, 2)) && r.eps.at(j).hi.eq_exact(rq(1, 2)),
                 "pairwise reading " + std::to_string(j) + " must be exactly 1/2");

    for (int j : {9, 10})
        c.expect(r.eps.at(j).lo.eq_exact(rq(3, 8)) && r.eps.at(j).hi.eq_exact(rq(3, 8)),
                 "center reading " + std::to_string(j) + " must be exactly 3/8");
    c.expect(r.eps.at(9).certification.find("dual certificate") != std::string::npos,
             "center value must carry an LP dual certificate");

    c.expect(r.eps.at(2).lo.eq_exact(rq(3, 8)) && r.eps.at(2).hi.eq_exact(rq(1, 2)),
             "joint-distance bracket must be [3/8, 1/2]");

    // two independent routes to the uniform-prior leakage
    const double closed = counterexample_mi(4, 0.5);
    const double via_entropy =
        2.0 - entropies(Dist::create({"0", "1", "2", "3"},
                                     {rq(5, 8), rq(1, 8), rq(1, 8), rq(1, 8)}))
                  .shannon.to_double();
    c.expect(std::fabs(closed - via_entropy) <= 1e-12,
             "closed form and entropy-difference route must agree to 1e-12");
    c.expect(r.eps.at(1).lo.to_double() <= closed + 1e-9 &&
                 r.eps.at(1).hi.to_double() >= closed - 1e-9,
             "leakage bracket must contain the uniform-prior value");
    c.note("uniform-prior leakage " + fmt(closed) + " bits, both routes agree");
    c.note("pairwise 1/2 exact, center 3/8 exact (LP certified), joint [3/8, 1/2]");
}

// ---------------------------------------------------------------- criterion 3

void criterion_3(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> sizes = {4, 16, 256, 65536};
    auto fam = leaky_shift_family(FamilyRule::inv_log_n, sizes);

    // worst-pair advantage must shrink along the family
    bool shrinking = true;
    for (std::size_t i = 1; i < fam.size(); ++i)
        shrinking = shrinking && fam[i].eps_ind < fam[i - 1].eps_ind;
    c.expect(shrinking && fam.back().eps_ind == 1.0 / 16.0,
             "pairwise advantage must fall to 1/16 along the family");

    std::string vals;
    for (const auto& s : fam) vals += (vals.empty() ? "" : ", ") + fmt(s.mi_lower);
    c.note("uniform-prior leakage along the family: " + vals + " bits");

    // iterative capacity estimates confirm the closed form wherever the full
    // matrix is tractable; the transition rows are built directly here, so
    // this route shares nothing with the scheme constructors. The largest
    // size stays symbolic: the matrix is circulant, the uniform prior is a
    // fixed point of the iteration, so the closed form is already the capacity.
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        const std::size_t n = static_cast<std::size_t>(sizes[i]);
        const double eps = 1.0 / std::log2(sizes[i]);
        const double off = (1.0 - eps) / static_cast<double>(n);
        std::vector<std::vector<double>> rows(n, std::vector<double>(n, off));
        for (std::size_t m = 0; m < n; ++m) rows[m][m] += eps;
        CapacityResult cap = channel_capacity(rows, 1e-9);
        c.expect(cap.upper - cap.lower <= 1e-9 + 1e-12,
                 "capacity iteration must close to 1e-9 at n=" + std::to_string(n));
        c.expect(fam[i].mi_lower >= cap.lower - 1e-9 && fam[i].mi_lower <= cap.upper + 1e-9,
                 "closed form must sit inside the capacity bracket at n=" +
                     std::to_string(n));
    }
    c.note("iterative capacity bracket confirms the closed form at n = 4, 16, 256;"
           " n = 65536 is circulant, so the uniform prior attains capacity exactly");

    bool monotone = true;
    for (std::size_t i = 1; i < fam.size(); ++i)
        monotone = monotone && fam[i].mi_lower > fam[i - 1].mi_lower;
    c.expect(monotone, "leakage must increase monotonically along the family");
    c.expect(fam.back().mi_lower > 0.9, "final leakage must exceed 0.9 bits");

    if (!monotone || fam.back().mi_lower <= 0.9) {
        c.note("analysis: with advantage 1/log2(n), the uniform-prior leakage is");
        c.note("  log2(n) - H(transition column) = 1 - log2(log2 n)/log2 n"
               " - O(1/log2 n) bits as n grows,");
        c.note("  so it tends to 1 from below but non-monotonically: the"
               " -log2(log2 n)/log2 n dip dominates between n = 4 and n = 16"
               " (0.4512 -> 0.3755), and 0.9 bits is first crossed only near"
               " log2 n = 77, i.e. n ~ 1.5e23, far beyond 65536.");
        c.note("  the computed values themselves are verified against the"
               " iterative capacity bracket to 1e-9 above; the family does"
               " keep its leakage bounded away from zero (>= 0.3755 bits)"
               " while the pairwise advantage falls to 1/16.");
    }
    c.note(fmt(seconds_since(t0)) + "s");
    c.expect(seconds_since(t0) < 30.0, "family sweep must finish under 30 seconds");
}

// ---------------------------------------------------------------- criterion 4

void criterion_4(Criterion& c) {
    for (std::size_t n : {4u, 8u, 16u}) {
        CipherSpec s = counterexample_scheme(n, rat(1, static_cast<long>(n))).spec;

        // the probing prior puts 1/3 on two messages, the rest spread evenly
        std::vector<Num> probs(n, Num::rational(rat(1, 3 * (static_cast<long>(n) - 2))));
        probs[0] = rq(1, 3);
        probs[1] = rq(1, 3);
        Dist prior = Dist::create(s.messages, probs);

        // independent route: enumerate all posteriors exactly
        Joint mc = execute(s, prior).marginal_pair(0, 2);
        std::vector<Dist> posteriors;
        for (std::size_t ct = 0; ct < n; ++ct)
            posteriors.push_back(mc.conditional(0, ct));
        Num worst = Num::zero(NumMode::rational);
        for (std::size_t a = 0; a < posteriors.size(); ++a)
            for (std::size_t b = a + 1; b < posteriors.size(); ++b)
                worst = max(worst, tv_distance(posteriors[a], posteriors[b]));

        const Num expected = rq(static_cast<long>(n), 4 * static_cast<long>(n) - 3);
        c.expect(worst.eq_exact(expected),
                 "worst posterior pair at n=" + std::to_string(n) + " must be exactly " +
                     rat_str(expected.rat_value()));

        MetricValue posterior = eps_posterior(s);
        c.expect(posterior.lo.ge(expected, 0),
                 "reported posterior floor must reach the probing-prior value at n=" +
                     std::to_string(n));
        MetricValue adv = eps_ind(s);
        c.expect(adv.lo.eq_exact(rq(1, static_cast<long>(n))),
                 "pairwise advantage must be exactly 1/n at n=" + std::to_string(n));
        c.note("n=" + std::to_string(n) + ": posterior pair distance exactly " +
               rat_str(expected.rat_value()) + " = 1/(4-3/n), pairwise advantage 1/" +
               std::to_string(n));
    }
}

// ---------------------------------------------------------------- criterion 5

void criterion_5(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    FuzzConfig cfg;
    cfg.trials = 1000;
    cfg.seed = 1;
    CampaignReport r = run_cipher_campaign(cfg);
    const double el = seconds_since(t0);

    c.expect(r.trials == 1000, "campaign must run 1000 trials");
    c.expect(r.n_violations == 0, "no relation or bound may be violated");
    c.expect(r.failures.empty(), "every trial must complete");
    c.note(std::to_string(r.checks_run) + " checks over 1000 random schemes, " +
           std::to_string(r.n_violations) + " violations, " + fmt(el) + "s");
    c.expect(el < 300.0, "campaign must finish under five minutes");

    // negative control: corrupted measurements must be flagged, never pass
    cfg.trials = 25;
    cfg.inject_defect = true;
    CampaignReport neg = run_cipher_campaign(cfg);
    bool all_caught = neg.failures.size() == 25;
    for (const auto& f : neg.failures)
        all_caught = all_caught && f.error.empty() && !f.violations.empty() &&
                     f.violations[0].rfind("injected-defect-caught", 0) == 0;
    c.expect(all_caught, "all 25 injected defects must be caught by the consistency net");
    c.note("25/25 injected defects caught");
}

// ---------------------------------------------------------------- criterion 6

void criterion_6(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 seeder(1234);
    std::size_t worst_terms = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 7);
        const std::uint64_t seed = seeder.derive(static_cast<std::uint64_t>(i));
        Matrix m = random_doubly_stochastic(n, 3 + i % 20, seed);

        BirkhoffDecomposition d = birkhoff_decompose(m);
        const std::size_t cap = (n - 1) * (n - 1) + 1;
        if (d.terms.size() > worst_terms) worst_terms = d.terms.size();
        c.expect(d.terms.size() <= cap,
                 "term count must respect the Caratheodory cap at trial " +
                     std::to_string(i));

        Matrix back = d.reconstruct(n, NumMode::rational);
        bool equal = true;
        Num total = Num::zero(NumMode::rational);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t cc = 0; cc < n; ++cc) equal &= back[r][cc].eq_exact(m[r][cc]);
        for (const auto& t : d.terms) total = total + t.weight;
        c.expect(equal, "reconstruction must be exact at trial " + std::to_string(i));
        c.expect(total.eq_exact(rq(1)), "weights must sum to one at trial " + std::to_string(i));

        CipherSpec s = scheme_from_matrix(m);
        Channel ch = channel_matrix(s);
        bool round = true;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t cc = 0; cc < n; ++cc)
                round &= ch.column(cc).prob(r).eq_exact(m[r][cc]);
        c.expect(round, "induced channel must reproduce the matrix at trial " +
                            std::to_string(i));
        c.expect(delta_all(s).hi.is_zero_exact(),
                 "matrix-built scheme must decode perfectly at trial " + std::to_string(i));
        if (!c.pass) break;
    }
    c.note("200 random doubly stochastic matrices (n = 2..8), all exact round trips,"
           " worst term count " +
           std::to_string(worst_terms) + ", " + fmt(seconds_since(t0)) + "s");
}

// ---------------------------------------------------------------- criterion 7

void criterion_7(Criterion& c) {
    c.expect(pope_bound(2, 4).eq_exact(rq(1, 2)), "floor at 2 keys / 4 messages is 1/2");

    // eight messages, six keys: exact-defect construction meets the floor
    CipherSpec a = tight_scheme(TightKind::zero_advantage, 8, rat(1, 4));
    SecurityReport ra = security_report(a);
    c.expect(ra.n_keys == 6, "construction must use six keys");
    c.expect(ra.delta.lo.eq_exact(rq(1, 4)), "defect must be exactly 1/4");
    c.expect(ra.eps.at(5).hi.is_zero_exact(), "pairwise advantage must be exactly 0");
    Num sum_a = ra.delta.hi + ra.eps.at(5).hi;
    c.expect(sum_a.eq_exact(pope_bound(6, 8)),
             "defect plus advantage must equal the floor exactly");
    c.note("8 messages / 6 keys: defect 1/4 + pairwise 0 = floor 1/4, met with equality");

    // four messages, two keys, pairwise reading: the shift-family point
    CipherSpec b = tight_scheme(TightKind::zero_advantage, 4, rat(1, 2));
    SecurityReport rb = security_report(b);
    c.expect(rb.n_keys == 2, "shift-family construction must use two keys");
    Num sum_b = rb.delta.hi + rb.eps.at(5).hi;
    c.expect(sum_b.eq_exact(rq(1, 2)), "defect plus pairwise advantage must equal 1/2");
    c.note("4 messages / 2 keys: defect 1/2 + pairwise 0 = floor 1/2, met with equality");

    // same sizes, perfect decoding: the truncated-shift cipher meets the floor
    // in the center reading (its pairwise advantage is 1, not tight)
    CipherSpec d = tight_scheme(TightKind::zero_error, 4, Rat(1));
    SecurityReport rd = security_report(d);
    c.expect(rd.n_keys == 2, "truncated shift must use two keys");
    c.expect(rd.delta.hi.is_zero_exact(), "truncated shift decodes perfectly");
    for (int j : {9, 10})
        c.expect(rd.eps.at(j).lo.eq_exact(rq(1, 2)) && rd.eps.at(j).hi.eq_exact(rq(1, 2)),
                 "center reading " + std::to_string(j) + " must be exactly 1/2");
    c.expect((rd.delta.hi + rd.eps.at(9).hi).eq_exact(pope_bound(2, 4)),
             "defect plus center advantage must equal the floor exactly");
    c.note("4 messages / 2 keys, perfect decoding: defect 0 + center 1/2 = floor 1/2"
           " (pairwise reading is 1 there, so the center reading is the tight one)");
}

// ---------------------------------------------------------------- criterion 8

KASpec preshared_bit_spec() {
    KASpec s;
    s.name = "preshared";
    s.xs = {"0", "1"};
    s.ys = {"0", "1"};
    s.ts = {"t"};
    s.keys = {"0", "1"};
    s.p_xy = Joint::create({{"X", s.xs}, {"Y", s.ys}},
                           {Num::rational(rat(1, 2)), Num::rational(Rat(0)),
                            Num::rational(Rat(0)), Num::rational(rat(1, 2))});
    s.rounds = 1;
    Dist t = Dist::point_mass(s.ts, 0, NumMode::rational);
    s.f = {{{t}, {t}}};
    s.g_a = {{Dist::point_mass(s.keys, 0, NumMode::rational)},
             {Dist::point_mass(s.keys, 1, NumMode::rational)}};
    s.g_b = s.g_a;
    return s;
}

void criterion_8(Criterion& c) {
    // a preshared uniform bit is the exact ideal: everything must be zero
    KASpec psk = preshared_bit_spec();
    KAReport r = ka_metrics(psk);
    c.expect(r.delta1.hi.is_zero_exact() && r.delta2.hi.is_zero_exact() &&
                 r.eps1.hi.is_zero_exact() && r.eps2.hi.is_zero_exact() &&
                 r.eps3.hi.is_zero_exact(),
             "preshared uniform bit must measure exactly zero everywhere");
    for (const auto& chk : check_relation_ka(r, 2, 1, 1))
        c.expect(chk.status != CheckStatus::violated,
                 "relation " + chk.name + " on the preshared bit");
    for (const auto& b : check_bound303(r, r.h0_xy, 2))
        c.expect(b.status == BoundStatus::satisfied,
                 "floor " + b.name + " on the preshared bit");
    c.note("preshared uniform bit: all five metrics exactly 0, all checks pass");

    // randomized protocols: relations, floors, and the simulator bracket
    const auto t0 = std::chrono::steady_clock::now();
    FuzzConfig cfg;
    cfg.trials = 500;
    cfg.seed = 1;
    CampaignReport camp = run_ka_campaign(cfg);
    c.expect(camp.n_violations == 0 && camp.failures.empty(),
             "500 random protocols must pass every check");
    c.note(std::to_string(camp.checks_run) + " checks over 500 random protocols"
           " (simulator bracket containment verified per trial), " +
           fmt(seconds_since(t0)) + "s");

    cfg.trials = 10;
    cfg.inject_defect = true;
    CampaignReport neg = run_ka_campaign(cfg);
    bool caught = neg.failures.size() == 10;
    for (const auto& f : neg.failures) caught = caught && !f.violations.empty();
    c.expect(caught, "all 10 injected protocol defects must be flagged");
    c.note("10/10 injected defects flagged");

    // one uniform bit cannot seed a near-ideal two-bit key
    Dist four = Dist::uniform({"0", "1", "2", "3"}, NumMode::rational);
    c.expect(ka_lower_bound(psk, four).eq_exact(rq(1, 2)),
             "advantage floor for 1 bit -> 2 uniform bits must be exactly 1/2");
    bool impossible_all = true;
    for (int i : {1, 2})
        for (int j : {1, 2, 3})
            impossible_all = impossible_all && ka_impossible(rq(0), rq(0), 1.0, 2.0, i, j);
    c.expect(impossible_all,
             "a perfect two-bit key from a one-bit resource must be impossible in"
             " every branch");
    c.note("expansion floor 1/2 exact; perfect 1-bit -> 2-bit expansion impossible"
           " in all six branches");
}

// ---------------------------------------------------------------- criterion 9

Dist rand_dist(SplitMix64& rng, std::size_t n) {
    std::vector<long> raw(n);
    long total = 0;
    for (auto& v : raw) {
        v = rng.range(0, 12);
        total += v;
    }
    if (total == 0) {
        raw[rng.below(n)] = 1;
        total = 1;
    }
    std::vector<Num> probs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        probs.push_back(Num::rational(rat(raw[i], total)));
        labels.push_back(std::to_string(i));
    }
    return Dist::create(labels, probs);
}

std::vector<Num> rand_cells(SplitMix64& rng, std::size_t cells) {
    std::vector<long> raw(cells);
    long total = 0;
    for (auto& v : raw) {
        v = rng.range(0, 9);
        total += v;
    }
    if (total == 0) {
        raw[rng.below(cells)] = 1;
        total = 1;
    }
    std::vector<Num> probs;
    for (long v : raw) probs.push_back(Num::rational(rat(v, total)));
    return probs;
}

std::vector<std::string> idx_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

void criterion_9(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(90210);
    std::size_t evaluated = 0, skipped = 0, violations = 0;
    std::vector<std::string> first_violations;

    auto absorb = [&](const std::vector<IdentityCheck>& checks) {
        for (const auto& chk : checks) {
            if (chk.status == CheckStatus::skipped) {
                ++skipped;
            } else {
                ++evaluated;
                if (chk.status == CheckStatus::violated) {
                    ++violations;
                    if (first_violations.size() < 5)
                        first_violations.push_back(chk.name + ": lhs=" + fmt(chk.lhs) +
                                                   " rhs=" + fmt(chk.rhs));
                }
            }
        }
    };

    // entropy/distance bounds on random pairs, half of them forced close so
    // the guarded continuity bound is exercised rather than skipped
    for (int i = 0; i < 5000; ++i) {
        const std::size_t n = 2 + rng.below(4);
        Dist p = rand_dist(rng, n);
        Dist q = [&] {
            if (i % 2 == 0) return rand_dist(rng, n);
            Dist rnd = rand_dist(rng, n);
            std::vector<Num> mix;
            for (std::size_t k = 0; k < n; ++k)
                mix.push_back((rq(3) * p.prob(k) + rnd.prob(k)) / rq(4));
            return Dist::create(p.labels(), mix); // distance to p at most 1/4
        }();
        EntropyBoundInput in;
        in.dist_pair = {p, q};
        absorb(verify_entropy_distance_bounds(in));
    }

    // leakage bounds on random joints
    for (int i = 0; i < 2000; ++i) {
        const std::size_t nx = 2 + rng.below(3), ny = 2 + rng.below(3);
        EntropyBoundInput in;
        in.joint = Joint::create({{"X", idx_labels(nx)}, {"Y", idx_labels(ny)}},
                                 rand_cells(rng, nx * ny));
        absorb(verify_entropy_distance_bounds(in));
    }

    // coupling identities on random rank-3 couplings
    for (int i = 0; i < 1200; ++i) {
        const std::size_t n = 2 + rng.below(2), ny = 2 + rng.below(2);
        DistanceIdentityInput in;
        in.coupling = Joint::create(
            {{"X", idx_labels(n)}, {"X'", idx_labels(n)}, {"Y", idx_labels(ny)}},
            rand_cells(rng, n * n * ny));
        absorb(verify_distance_identities(in));
    }

    // marginal monotonicity on random same-shape joint pairs
    for (int i = 0; i < 800; ++i) {
        const std::size_t nx = 2 + rng.below(3), ny = 2 + rng.below(3);
        std::vector<Axis> axes = {{"X", idx_labels(nx)}, {"Y", idx_labels(ny)}};
        DistanceIdentityInput in;
        in.joint_pair = {Joint::create(axes, rand_cells(rng, nx * ny)),
                         Joint::create(axes, rand_cells(rng, nx * ny))};
        absorb(verify_distance_identities(in));
    }

    // prior-sup identity on random channel pairs, certified gap 1e-3
    for (int i = 0; i < 500; ++i) {
        const std::size_t nin = 2 + rng.below(2), nout = 2 + rng.below(2);
        auto mk = [&] {
            std::vector<Dist> cols;
            for (std::size_t m = 0; m < nin; ++m) cols.push_back(rand_dist(rng, nout));
            return Channel::create(idx_labels(nin), cols);
        };
        DistanceIdentityInput in;
        in.channel_pair = {mk(), mk()};
        absorb(verify_distance_identities(in, 1e-3));
    }

    // binary correlation split, exhaustively over the step-0.05 grid
    std::size_t grid_joints = 0;
    for (long a = 0; a <= 20; ++a)
        for (long b = 0; a + b <= 20; ++b)
            for (long d = 0; a + b + d <= 20; ++d) {
                const long e = 20 - a - b - d;
                DistanceIdentityInput in;
                in.binary_joint = Joint::create(
                    {{"X", {"0", "1"}}, {"Y", {"0", "1"}}},
                    {Num::rational(rat(a, 20)), Num::rational(rat(b, 20)),
                     Num::rational(rat(d, 20)), Num::rational(rat(e, 20))});
                absorb(verify_distance_identities(in));
                ++grid_joints;
            }

    c.expect(grid_joints == 1771, "the 0.05 grid must enumerate all 1771 binary joints");
    c.expect(evaluated >= 10000, "at least ten thousand evaluated cases required");
    c.expect(violations == 0, "no identity or bound may be violated");
    for (const auto& v : first_violations) c.note("violated: " + v);
    c.note(std::to_string(evaluated) + " cases evaluated (" + std::to_string(skipped) +
           " outside their guarded regime, reported as skipped, never passed), " +
           std::to_string(grid_joints) + " exhaustive binary-grid joints, " +
           fmt(seconds_since(t0)) + "s");
}

// --------------------------------------------------------------- criterion 10

void criterion_10(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(777);
    std::size_t used = 0, attempts = 0;
    double worst_slack2 = 0, worst_slack4 = 0;
    while (used < 80 && attempts < 4000) {
        ++attempts;
        CipherSpec s = random_cipher_spec(rng);
        if (s.messages.size() > 3) continue; // the exhaustive oracle covers |M| <= 3
        ++used;
        SecurityReport r = security_report(s);

        GridOracleResult g2 = grid_oracle(s, PriorMetric::joint_tv, 100);
        c.expect(g2.value.to_double() <= r.eps.at(2).hi.to_double() + 1e-9,
                 "grid value above the joint-distance upper end (spec " +
                     std::to_string(used) + ")");
        c.expect(r.eps.at(2).lo.to_double() <= g2.upper_estimate + 1e-9,
                 "joint-distance lower end above the grid estimate (spec " +
                     std::to_string(used) + ")");
        worst_slack2 = std::max(worst_slack2,
                                r.eps.at(2).lo.to_double() - g2.value.to_double());

        GridOracleResult g4 = grid_oracle(s, PriorMetric::posterior, 100);
        c.expect(g4.value.to_double() <= r.eps.at(4).hi.to_double() + 1e-9,
                 "grid value above the posterior upper end (spec " +
                     std::to_string(used) + ")");
        c.expect(r.eps.at(4).lo.to_double() <= g4.upper_estimate + 1e-9,
                 "posterior lower end above the grid estimate (spec " +
                     std::to_string(used) + ")");
        worst_slack4 = std::max(worst_slack4,
                                r.eps.at(4).lo.to_double() - g4.value.to_double());
        if (!c.pass) break;
    }
    c.expect(used >= 80, "at least 80 small-message specs must be exercised");
    c.note(std::to_string(used) + " specs with at most 3 messages, resolution 1/100;"
           " worst reported-minus-grid gap: joint " +
           fmt(worst_slack2) + ", posterior " + fmt(worst_slack4) + ", " +
           fmt(seconds_since(t0)) + "s");
}

} // namespace

int main(int argc, char** argv) {
    struct Entry {
        int id;
        const char* name;
        std::function<void(Criterion&)> run;
    };
    const std::vector<Entry> entries = {
        {1, "perfect-secrecy-zero-metrics", criterion_1},
        {2, "leaky-shift-exact-metrics", criterion_2},
        {3, "asymptotic-family-trend", criterion_3},
        {4, "posterior-pair-floor", criterion_4},
        {5, "cipher-fuzz-campaign", criterion_5},
        {6, "birkhoff-round-trip", criterion_6},
        {7, "key-size-trade-off-tightness", criterion_7},
        {8, "protocol-gate", criterion_8},
        {9, "identity-suite-bulk", criterion_9},
        {10, "grid-oracle-containment", criterion_10},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0, ran = 0;
    for (const auto& e : entries) {
        if (only != 0 && e.id != only) continue;
        ++ran;
        Criterion c{e.id, e.name, true, {}};
        try {
            e.run(c);
        } catch (const std::exception& ex) {
            c.pass = false;
            c.notes.push_back(std::string("exception: ") + ex.what());
        }
        std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion-" << c.id << "  "
                  << c.name << "\n";
        for (const auto& n : c.notes) std::cout << "        " << n << "\n";
        if (!c.pass) ++failures;
    }
    if (ran == 0) {
        std::cerr << "no such criterion: " << (argv[1] ? argv[1] : "") << "\n";
        return 64;
    }
    std::cout << (ran - failures) << "/" << ran << " criteria green\n";
    return failures;
}
