#include <string>

#include "doctest.h"
#include "itsec/fuzz.hpp"
#include "testutil.hpp"

using namespace itsec;

namespace {

bool same_outcome(const TrialOutcome& a, const TrialOutcome& b) {
    return a.index == b.index && a.seed == b.seed && a.violations == b.violations &&
           a.error == b.error;
}

bool same_report(const CampaignReport& a, const CampaignReport& b) {
    // jobs and wall clock are allowed to differ; everything measured must not
    if (a.kind != b.kind || a.trials != b.trials || a.seed != b.seed ||
        a.defect_injected != b.defect_injected || a.checks_run != b.checks_run ||
        a.n_violations != b.n_violations || a.failures.size() != b.failures.size())
        return false;
    for (std::size_t i = 0; i < a.failures.size(); ++i)
        if (!same_outcome(a.failures[i], b.failures[i])) return false;
    return true;
}

} // namespace

TEST_CASE("generated specs are structurally valid") {
    SplitMix64 rng(11);
    for (int i = 0; i < 50; ++i) {
        CipherSpec s = random_cipher_spec(rng);
        CHECK(validate_spec(s).ok());
    }
    for (int i = 0; i < 25; ++i) {
        CipherSpec s = random_cipher_spec(rng, NumMode::floating);
        CHECK(s.mode == NumMode::floating);
        CHECK(validate_spec(s).ok());
    }
    for (int i = 0; i < 30; ++i) {
        KASpec s = random_ka_spec(rng);
        CHECK(validate_ka(s).ok());
    }
}

TEST_CASE("cipher campaign is clean and independent of worker count") {
    FuzzConfig cfg;
    cfg.trials = 30;
    cfg.seed = 7;
    cfg.jobs = 1;
    CampaignReport r1 = run_cipher_campaign(cfg);
    CHECK(r1.kind == "cipher");
    CHECK(r1.trials == 30);
    CHECK(r1.n_violations == 0);
    CHECK(r1.failures.empty());
    CHECK(r1.checks_run > 30); // many checks per trial

    cfg.jobs = 4;
    CampaignReport r4 = run_cipher_campaign(cfg);
    CHECK(same_report(r1, r4));
}

TEST_CASE("ka campaign is clean and independent of worker count") {
    FuzzConfig cfg;
    cfg.trials = 12;
    cfg.seed = 3;
    cfg.jobs = 1;
    CampaignReport r1 = run_ka_campaign(cfg);
    CHECK(r1.kind == "keyagreement");
    CHECK(r1.n_violations == 0);
    CHECK(r1.failures.empty());

    cfg.jobs = 3;
    CampaignReport r3 = run_ka_campaign(cfg);
    CHECK(same_report(r1, r3));
}

TEST_CASE("injected defects never escape the nets") {
    FuzzConfig cfg;
    cfg.trials = 6;
    cfg.seed = 21;
    cfg.inject_defect = true;

    CampaignReport rc = run_cipher_campaign(cfg);
    CHECK(rc.defect_injected);
    CHECK(rc.failures.size() == 6);
    CHECK(rc.n_violations >= 6);
    for (const auto& f : rc.failures) {
        REQUIRE(f.error.empty());
        REQUIRE_FALSE(f.violations.empty());
        CHECK(f.violations[0].rfind("injected-defect-caught", 0) == 0);
    }

    CampaignReport rk = run_ka_campaign(cfg);
    CHECK(rk.failures.size() == 6);
    CHECK(rk.n_violations >= 6);
    for (const auto& f : rk.failures) {
        REQUIRE(f.error.empty());
        CHECK_FALSE(f.violations.empty());
    }
}

TEST_CASE("per-trial seeds derive from the campaign seed") {
    FuzzConfig cfg;
    cfg.trials = 4;
    cfg.seed = 99;
    cfg.inject_defect = true; // forces per-trial outcomes into the report
    CampaignReport r = run_cipher_campaign(cfg);
    REQUIRE(r.failures.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(r.failures[i].index == i);
        CHECK(r.failures[i].seed == SplitMix64(99).derive(i));
    }
}
