#include "doctest.h"
#include "itsec/relations.hpp"
#include "itsec/synth.hpp"
#include "testutil.hpp"

using namespace itsec;
using testutil::fails_with;
using testutil::rq;

TEST_CASE("relation web holds on reference schemes") {
    for (const CipherSpec& s : {one_time_pad(3), counterexample_scheme(4, rat(1, 2)).spec,
                                tight_scheme(TightKind::zero_error, 4, rat(1, 2)),
                                tight_scheme(TightKind::zero_advantage, 6, rat(1, 3))}) {
        auto checks = check_theorem1(s);
        CHECK(checks.size() >= 10);
        for (const auto& c : checks) {
            INFO(s.name, " / ", c.name, ": lhs=", c.lhs.to_double(),
                 " rhs=", c.rhs.to_double(), " ", c.note);
            CHECK(c.status != CheckStatus::violated);
        }
    }
}

TEST_CASE("relation web covers the expected edges") {
    auto checks = check_theorem1(counterexample_scheme(3, rat(1, 3)).spec);
    auto has = [&](const char* name) {
        for (const auto& c : checks)
            if (c.name == name) return true;
        return false;
    };
    CHECK(has("correctness-routes-agree"));
    CHECK(has("leakage-pinsker-lower"));
    CHECK(has("joint-le-pairwise"));
    CHECK(has("pairwise-le-twice-joint"));
    CHECK(has("joint-le-posterior"));
    CHECK(has("pairwise-binary-test-agree"));
    CHECK(has("simulator-sandwich-lower"));
    CHECK(has("simulator-sandwich-upper"));
    CHECK(has("semantic-sandwich-lower"));
    CHECK(has("semantic-sandwich-upper"));
    CHECK(has("half-joint-le-center"));
    CHECK(has("center-le-pairwise"));
    CHECK(has("pairwise-routes-agree"));
}

TEST_CASE("grid oracle stays inside reported intervals") {
    CipherSpec s = counterexample_scheme(3, rat(1, 3)).spec;
    SecurityReport r = security_report(s);

    GridOracleResult g2 = grid_oracle(s, PriorMetric::joint_tv, 60);
    CHECK(g2.value.to_double() <= r.eps.at(2).hi.to_double() + 1e-9);
    CHECK(r.eps.at(2).lo.to_double() <= g2.upper_estimate + 1e-9);

    GridOracleResult g4 = grid_oracle(s, PriorMetric::posterior, 60);
    CHECK(g4.value.to_double() <= r.eps.at(4).hi.to_double() + 1e-9);
    CHECK(r.eps.at(4).lo.to_double() <= g4.upper_estimate + 1e-9);

    CHECK(fails_with(Errc::invalid_argument, [] {
        grid_oracle(one_time_pad(4), PriorMetric::joint_tv, 10);
    }));
    CHECK(fails_with(Errc::invalid_argument, [&] {
        grid_oracle(s, PriorMetric::joint_tv, 0);
    }));
}

TEST_CASE("grid oracle finds the separating posterior of a noiseless pair") {
    // deterministic distinct columns: any interior prior separates posteriors fully
    Dist pk = Dist::uniform({"k"}, NumMode::rational);
    CipherSpec s = deterministic_cipher("id2", {"m0", "m1"}, {"k"}, {"c0", "c1"}, pk,
                                        {{0, 1}});
    GridOracleResult g = grid_oracle(s, PriorMetric::posterior, 20);
    CHECK(g.value.to_double() == 1.0);
}

TEST_CASE("family diagnostics and trend classes") {
    auto fam = leaky_shift_family(FamilyRule::inv_log_n, {4, 16, 256, 65536});
    REQUIRE(fam.size() == 4);
    CHECK(fam[0].eps_ind == 0.5);
    CHECK(fam[3].eps_ind == doctest::Approx(1.0 / 16.0));
    CHECK(fam[0].mi_lower == doctest::Approx(0.45120505930460153).epsilon(1e-12));
    CHECK(fam[1].mi_lower == doctest::Approx(0.3755302388731261).epsilon(1e-12));
    CHECK(fam[2].mi_lower == doctest::Approx(0.47918175295740095).epsilon(1e-12));
    CHECK(fam[3].mi_lower == doctest::Approx(0.6629035669609689).epsilon(1e-9));

    TrendReport rep = equivalence_diagnostics(fam);
    CHECK(rep.classification.rfind("out-of-class", 0) == 0);
    REQUIRE(rep.series.size() == 4);

    auto fam2 = leaky_shift_family(FamilyRule::inv_n_squared, {4, 16, 64, 256});
    TrendReport rep2 = equivalence_diagnostics(fam2);
    CHECK(rep2.classification.rfind("in-class", 0) == 0);

    CHECK(fails_with(Errc::invalid_argument,
                     [] { leaky_shift_family(FamilyRule::inv_log_n, {1}); }));
    CHECK(fails_with(Errc::invalid_argument, [] { equivalence_diagnostics({}); }));
}

TEST_CASE("materialized family point matches the closed form") {
    auto ls = counterexample_scheme(8, rat(1, 3));
    FamilySample s = sample_from_spec(8, ls.spec);
    CHECK(s.n_messages == 8.0);
    CHECK(s.eps_ind == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(s.delta == 0.0);
    CHECK(s.mi_lower <= ls.mi_uniform + 1e-9);
    CHECK(s.mi_upper >= ls.mi_uniform - 1e-9);
}
