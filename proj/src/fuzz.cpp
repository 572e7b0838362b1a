#include "itsec/fuzz.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace itsec {

namespace {

Num to_mode(const Rat& r, NumMode mode) {
    return mode == NumMode::rational ? Num::rational(r) : Num::floating(rat_to_double(r));
}

/// Integer weights in [0,12] normalized exactly; at least one positive, so
/// denominators stay at or below 60 for alphabets up to five symbols.
Dist random_dist(SplitMix64& rng, const std::vector<std::string>& labels, NumMode mode) {
    const std::size_t n = labels.size();
    std::vector<long> w(n);
    long total = 0;
    for (auto& v : w) {
        v = rng.range(0, 12);
        total += v;
    }
    if (total == 0) {
        w[rng.below(n)] = 1;
        total = 1;
    }
    std::vector<Num> probs(n, Num::zero(mode));
    for (std::size_t i = 0; i < n; ++i) probs[i] = to_mode(rat(w[i], total), mode);
    return Dist::create(labels, std::move(probs));
}

Dist random_point_mass(SplitMix64& rng, const std::vector<std::string>& labels, NumMode mode) {
    return Dist::point_mass(labels, rng.below(labels.size()), mode);
}

std::vector<std::string> numbered(const char* stem, std::size_t n) {
    std::vector<std::string> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

std::string format_num(const Num& v) {
    std::ostringstream os;
    if (v.mode() == NumMode::rational)
        os << rat_str(v.rat_value());
    else
        os << v.to_double();
    return os.str();
}

void collect_relation_violations(const std::vector<RelationCheck>& checks,
                                 std::vector<std::string>& out) {
    for (const auto& c : checks)
        if (c.status == CheckStatus::violated)
            out.push_back(c.name + ": lhs=" + format_num(c.lhs) + " rhs=" + format_num(c.rhs));
}

void collect_bound_violations(const std::vector<BoundReport>& bounds,
                              std::vector<std::string>& out) {
    for (const auto& b : bounds)
        if (b.status == BoundStatus::violated)
            out.push_back(b.name + ": lhs_hi=" + format_num(b.lhs_hi) +
                          " rhs=" + format_num(b.rhs));
}

std::size_t cipher_trial(std::uint64_t seed, const FuzzConfig& cfg, TrialOutcome& out) {
    SplitMix64 rng(seed);
    const CipherSpec s = random_cipher_spec(rng, cfg.mode);
    if (cfg.inject_defect) {
        SecurityReport r = security_report(s, cfg.metric_options);
        // push the pairwise advantage past its tied twins; the net must object
        const Num bump = r.eps.at(3).hi + Num::frac(1, 10, r.eps.at(3).hi.mode());
        r.eps[3] = MetricValue::exact(bump);
        try {
            check_report_consistency(r, cfg.mode == NumMode::rational
                                             ? 1e-12
                                             : cfg.metric_options.tol);
            out.error = "injected defect escaped the consistency net";
        } catch (const Error& e) {
            out.violations.push_back(std::string("injected-defect-caught: ") + e.what());
        }
        return 1;
    }
    const std::vector<RelationCheck> checks = check_theorem1(s, cfg.metric_options);
    const SecurityReport r = security_report(s, cfg.metric_options);
    const std::vector<BoundReport> bounds = check_bound103(r);
    collect_relation_violations(checks, out.violations);
    collect_bound_violations(bounds, out.violations);
    return checks.size() + bounds.size();
}

std::size_t ka_trial(std::uint64_t seed, const FuzzConfig& cfg, TrialOutcome& out) {
    SplitMix64 rng(seed);
    const KASpec s = random_ka_spec(rng, cfg.mode);
    KAReport r = ka_metrics(s, cfg.metric_options);
    if (cfg.inject_defect) {
        // push the independence distance past twice the model distance
        const NumMode m = r.eps3.hi.mode();
        r.eps2 = MetricValue::exact(r.eps3.hi + r.eps3.hi + Num::frac(1, 10, m));
    }
    const std::vector<RelationCheck> checks =
        check_relation_ka(r, s.keys.size(), s.ts.size(), s.rounds);
    const std::vector<BoundReport> bounds = check_bound303(r, r.h0_xy, s.keys.size());
    collect_relation_violations(checks, out.violations);
    collect_bound_violations(bounds, out.violations);
    std::size_t n_checks = checks.size() + bounds.size();
    if (!cfg.inject_defect) {
        const MetricValue adv = ka_simulator_advantage(s, cfg.metric_options);
        const double tol = cfg.metric_options.tol;
        if (adv.hi_d() < r.simulator.lo_d() - tol || adv.lo_d() > r.simulator.hi_d() + tol)
            out.violations.push_back("simulator-advantage-outside-bracket: adv=" +
                                     format_num(adv.hi) + " bracket=[" +
                                     format_num(r.simulator.lo) + ", " +
                                     format_num(r.simulator.hi) + "]");
        n_checks += 1;
    }
    return n_checks;
}

template <class TrialFn>
CampaignReport run_campaign(const char* kind, const FuzzConfig& cfg, TrialFn&& trial) {
    CampaignReport rep;
    rep.kind = kind;
    rep.trials = cfg.trials;
    rep.seed = cfg.seed;
    rep.defect_injected = cfg.inject_defect;
    std::size_t jobs = cfg.jobs != 0
                           ? cfg.jobs
                           : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    jobs = std::min<std::size_t>(jobs, std::max<std::size_t>(cfg.trials, 1));
    rep.jobs = jobs;

    SplitMix64 seeder(cfg.seed);
    std::vector<std::uint64_t> seeds(cfg.trials);
    for (std::size_t i = 0; i < cfg.trials; ++i) seeds[i] = seeder.derive(i);

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialOutcome> outcomes(cfg.trials);
    std::vector<std::size_t> per_trial_checks(cfg.trials, 0);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= cfg.trials) return;
            TrialOutcome& out = outcomes[i];
            out.index = i;
            out.seed = seeds[i];
            try {
                per_trial_checks[i] = trial(seeds[i], cfg, out);
            } catch (const std::exception& e) {
                out.error = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();

    for (std::size_t i = 0; i < cfg.trials; ++i) {
        rep.checks_run += per_trial_checks[i];
        rep.n_violations += outcomes[i].violations.size();
        if (!outcomes[i].clean()) rep.failures.push_back(std::move(outcomes[i]));
    }
    return rep;
}

} // namespace

CipherSpec random_cipher_spec(SplitMix64& rng, NumMode mode) {
    CipherSpec s;
    s.name = "fuzz-cipher";
    s.mode = mode;
    const std::size_t nm = static_cast<std::size_t>(rng.range(1, 5));
    const std::size_t nk = static_cast<std::size_t>(rng.range(1, 5));
    const std::size_t nc = static_cast<std::size_t>(rng.range(1, 5));
    s.messages = numbered("m", nm);
    s.keys = numbered("k", nk);
    s.ciphertexts = numbered("c", nc);
    s.decoded = s.messages;
    s.p_key = random_dist(rng, s.keys, mode);
    s.enc.resize(nk);
    s.dec.resize(nk);
    const bool deterministic_dec = rng.below(2) == 0;
    for (std::size_t k = 0; k < nk; ++k) {
        s.enc[k].reserve(nm);
        for (std::size_t m = 0; m < nm; ++m) s.enc[k].push_back(random_dist(rng, s.ciphertexts, mode));
        s.dec[k].reserve(nc);
        for (std::size_t c = 0; c < nc; ++c)
            s.dec[k].push_back(deterministic_dec ? random_point_mass(rng, s.decoded, mode)
                                                 : random_dist(rng, s.decoded, mode));
    }
    return s;
}

KASpec random_ka_spec(SplitMix64& rng, NumMode mode) {
    KASpec s;
    s.name = "fuzz-ka";
    s.mode = mode;
    const std::size_t nx = static_cast<std::size_t>(rng.range(1, 3));
    const std::size_t ny = static_cast<std::size_t>(rng.range(1, 3));
    const std::size_t nt = static_cast<std::size_t>(rng.range(1, 3));
    const std::size_t nk = static_cast<std::size_t>(rng.range(1, 3));
    s.xs = numbered("x", nx);
    s.ys = numbered("y", ny);
    s.ts = numbered("t", nt);
    s.keys = numbered("key", nk);
    s.rounds = rng.below(2) == 0 ? 1 : 3;

    {
        std::vector<long> w(nx * ny);
        long total = 0;
        for (auto& v : w) {
            v = rng.range(0, 12);
            total += v;
        }
        if (total == 0) {
            w[rng.below(w.size())] = 1;
            total = 1;
        }
        std::vector<Num> probs(w.size(), Num::zero(mode));
        for (std::size_t i = 0; i < w.size(); ++i) probs[i] = to_mode(rat(w[i], total), mode);
        s.p_xy = Joint::create({{"X", s.xs}, {"Y", s.ys}}, std::move(probs));
    }

    s.f.resize(s.rounds);
    std::size_t prefixes = 1;
    for (std::size_t r = 0; r < s.rounds; ++r) {
        const std::size_t symbols = r % 2 == 0 ? nx : ny;
        s.f[r].assign(symbols, {});
        for (std::size_t sym = 0; sym < symbols; ++sym) {
            s.f[r][sym].reserve(prefixes);
            for (std::size_t p = 0; p < prefixes; ++p)
                s.f[r][sym].push_back(rng.below(3) == 0 ? random_point_mass(rng, s.ts, mode)
                                                        : random_dist(rng, s.ts, mode));
        }
        prefixes *= nt;
    }

    // half the specs share one per-transcript key map so agreement is common
    const bool agreeing = rng.below(2) == 0;
    std::vector<Dist> shared;
    if (agreeing) {
        shared.reserve(prefixes);
        for (std::size_t p = 0; p < prefixes; ++p)
            shared.push_back(random_point_mass(rng, s.keys, mode));
    }
    auto fill_outputs = [&](std::vector<std::vector<Dist>>& g, std::size_t symbols) {
        g.assign(symbols, {});
        for (std::size_t sym = 0; sym < symbols; ++sym) {
            g[sym].reserve(prefixes);
            for (std::size_t p = 0; p < prefixes; ++p)
                g[sym].push_back(agreeing ? shared[p]
                                 : rng.below(2) == 0 ? random_point_mass(rng, s.keys, mode)
                                                     : random_dist(rng, s.keys, mode));
        }
    };
    fill_outputs(s.g_a, nx);
    fill_outputs(s.g_b, ny);
    return s;
}

CampaignReport run_cipher_campaign(const FuzzConfig& cfg) {
    return run_campaign("cipher", cfg,
                        [](std::uint64_t seed, const FuzzConfig& c, TrialOutcome& out) {
                            return cipher_trial(seed, c, out);
                        });
}

CampaignReport run_ka_campaign(const FuzzConfig& cfg) {
    return run_campaign("keyagreement", cfg,
                        [](std::uint64_t seed, const FuzzConfig& c, TrialOutcome& out) {
                            return ka_trial(seed, c, out);
                        });
}

} // namespace itsec
