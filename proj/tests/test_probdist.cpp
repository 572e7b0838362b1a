#include <vector>

#include "doctest.h"
#include "itsec/dist.hpp"
#include "itsec/prng.hpp"
#include "itsec/simplex_lp.hpp"
#include "testutil.hpp"

using namespace itsec;
using testutil::fails_with;
using testutil::rq;

TEST_CASE("rational helpers") {
    CHECK(rat_str(rat(2, 4)) == "1/2");
    CHECK(rat_str(Rat(3)) == "3");
    CHECK(rat_parse("7/3") == rat(7, 3));
    CHECK(rat_parse("-2/8") == rat(-1, 4));
    CHECK(rat_to_double(rat(1, 4)) == 0.25);
    CHECK(rat_from_double(0.25) == rat(1, 4));
    CHECK(rat_from_double(-1.5) == rat(-3, 2));
    CHECK(fails_with(Errc::parse_error, [] { rat_parse("1/0"); }));
    CHECK(fails_with(Errc::parse_error, [] { rat_parse("abc"); }));
}

TEST_CASE("Num arithmetic stays in mode") {
    Num a = rq(1, 3), b = rq(1, 6);
    CHECK((a + b).eq_exact(rq(1, 2)));
    CHECK((a - b).eq_exact(rq(1, 6)));
    CHECK((a * b).eq_exact(rq(1, 18)));
    CHECK((a / b).eq_exact(rq(2)));
    CHECK((-a).abs().eq_exact(a));
    CHECK(max(a, b).eq_exact(a));
    CHECK(min(a, b).eq_exact(b));

    Num f = Num::floating(0.5);
    CHECK(fails_with(Errc::mode_mismatch, [&] { (void)(a + f); }));
    CHECK(fails_with(Errc::mode_mismatch, [&] { (void)a.eq_exact(f); }));

    CHECK(Num::frac(3, 12, NumMode::rational).eq_exact(rq(1, 4)));
    CHECK(Num::frac(1, 4, NumMode::floating).to_double() == 0.25);
    CHECK(Num::zero(NumMode::rational).is_zero_exact());
    CHECK(Num::floating(1e-12).le(Num::floating(0.0), 1e-9));
    CHECK_FALSE(Num::floating(1e-6).le(Num::floating(0.0), 1e-9));
}

TEST_CASE("Dist invariants") {
    Dist u = Dist::uniform({"a", "b", "c", "d"}, NumMode::rational);
    CHECK(u.size() == 4);
    CHECK(u.prob(0).eq_exact(rq(1, 4)));
    CHECK(u.full_support());
    CHECK(u.support_size() == 4);
    CHECK(u.max_prob().eq_exact(rq(1, 4)));
    CHECK(u.index_of("c") == 2);
    CHECK_FALSE(u.index_of("z").has_value());

    Dist pm = Dist::point_mass({"a", "b"}, 1, NumMode::rational);
    CHECK(pm.prob(0).is_zero_exact());
    CHECK(pm.prob(1).eq_exact(rq(1)));
    CHECK(pm.support_size() == 1);

    CHECK(fails_with(Errc::invalid_argument, [] {
        Dist::create({"a", "b"}, {rq(3, 4), rq(3, 4)});
    }));
    CHECK(fails_with(Errc::invalid_argument, [] {
        Dist::create({"a", "b"}, {rq(-1, 4), rq(5, 4)});
    }));
    CHECK(fails_with(Errc::invalid_argument, [] {
        Dist::create({"a", "a"}, {rq(1, 2), rq(1, 2)});
    }));
    // float mode tolerates tiny normalization error, rejects gross error
    CHECK_NOTHROW(Dist::create({"a", "b"}, {Num::floating(0.5 + 1e-12), Num::floating(0.5)}));
    CHECK(fails_with(Errc::invalid_argument, [] {
        Dist::create({"a", "b"}, {Num::floating(0.6), Num::floating(0.6)});
    }));
}

TEST_CASE("Joint marginals and conditionals") {
    // P(x,y): rows x in {0,1}, columns y in {0,1,2}
    Joint j = Joint::create({{"X", {"x0", "x1"}}, {"Y", {"y0", "y1", "y2"}}},
                            {rq(1, 4), rq(1, 8), rq(1, 8), rq(1, 4), rq(1, 8), rq(1, 8)});
    CHECK(j.rank() == 2);
    CHECK(j.at(0, 1).eq_exact(rq(1, 8)));
    Dist mx = j.marginal(0);
    CHECK(mx.prob(0).eq_exact(rq(1, 2)));
    Dist my = j.marginal(1);
    CHECK(my.prob(0).eq_exact(rq(1, 2)));
    CHECK(my.prob(2).eq_exact(rq(1, 4)));

    Dist c0 = j.conditional(0, 0); // P(X | Y = y0)
    CHECK(c0.prob(0).eq_exact(rq(1, 2)));
    Dist c1 = j.conditional(1, 1); // P(Y | X = x1)
    CHECK(c1.prob(0).eq_exact(rq(1, 2)));
    CHECK(c1.prob(1).eq_exact(rq(1, 4)));

    Joint z = Joint::create({{"X", {"a", "b"}}, {"Y", {"c", "d"}}},
                            {rq(1), rq(0), rq(0), rq(0)});
    CHECK(fails_with(Errc::invalid_argument, [&] { z.conditional(0, 1); }));

    Joint prod = Joint::product(mx, my, "X", "Y");
    CHECK(prod.at(1, 2).eq_exact(rq(1, 8)));
    CHECK(prod.support_size() == 6);

    Joint r3 = Joint::create({{"A", {"0", "1"}}, {"B", {"0", "1"}}, {"C", {"0", "1"}}},
                             {rq(1, 2), rq(0), rq(0), rq(0), rq(0), rq(0), rq(0), rq(1, 2)});
    CHECK(r3.rank() == 3);
    Joint ab = r3.marginal_pair(0, 1);
    CHECK(ab.at(0, 0).eq_exact(rq(1, 2)));
    CHECK(ab.at(1, 1).eq_exact(rq(1, 2)));
    CHECK(r3.marginal(2).prob(0).eq_exact(rq(1, 2)));
}

TEST_CASE("Channel push-forward") {
    Dist col0 = Dist::create({"c0", "c1"}, {rq(3, 4), rq(1, 4)});
    Dist col1 = Dist::create({"c0", "c1"}, {rq(1, 4), rq(3, 4)});
    Channel ch = Channel::create({"m0", "m1"}, {col0, col1});
    CHECK(ch.inputs() == 2);
    CHECK(ch.outputs() == 2);
    CHECK_FALSE(ch.all_columns_equal());

    Dist p = Dist::create({"m0", "m1"}, {rq(1, 2), rq(1, 2)});
    Dist out = ch.push_forward(p);
    CHECK(out.prob(0).eq_exact(rq(1, 2)));

    Joint jw = ch.joint_with_input(p);
    CHECK(jw.at(0, 0).eq_exact(rq(3, 8)));
    CHECK(jw.at(1, 0).eq_exact(rq(1, 8)));

    Channel same = Channel::create({"m0", "m1"}, {col0, col0});
    CHECK(same.all_columns_equal());
}

TEST_CASE("SplitMix64 reference vectors") {
    // frozen outputs of the published algorithm; replay depends on these
    SplitMix64 g0(0);
    CHECK(g0.next() == 0xe220a8397b1dcdafULL);
    CHECK(g0.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(g0.next() == 0x06c45d188009454fULL);
    SplitMix64 g42(42);
    CHECK(g42.next() == 0xbdd732262feb6e95ULL);

    SplitMix64 a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    SplitMix64 c(7);
    for (int i = 0; i < 200; ++i) {
        auto v = c.below(10);
        CHECK(v < 10);
        auto w = c.range(-3, 3);
        CHECK(w >= -3);
        CHECK(w <= 3);
    }
    CHECK(SplitMix64(1).derive(5) == SplitMix64(1).derive(5));
    CHECK(SplitMix64(1).derive(5) != SplitMix64(1).derive(6));
    CHECK(SplitMix64(1).derive(5) != SplitMix64(2).derive(5));
}

TEST_CASE("simplex solves and certifies") {
    // min x0 + x1  s.t.  x0 + 2 x1 >= 1
    LinearProgram<Rat> lp;
    lp.a = {{Rat(1), Rat(2)}};
    lp.b = {Rat(1)};
    lp.c = {Rat(1), Rat(1)};
    auto sol = solve_lp(lp);
    CHECK(sol.status == LPStatus::optimal);
    CHECK(sol.objective == rat(1, 2));
    CHECK(sol.certified);
    CHECK(lp_certificate_ok(lp, sol));

    // x0 >= 1 and -x0 >= 0 cannot both hold
    LinearProgram<Rat> bad;
    bad.a = {{Rat(1)}, {Rat(-1)}};
    bad.b = {Rat(1), Rat(0)};
    bad.c = {Rat(1)};
    CHECK(solve_lp(bad).status == LPStatus::infeasible);

    // min -x0 with x0 free upward
    LinearProgram<Rat> unb;
    unb.a = {{Rat(1)}};
    unb.b = {Rat(0)};
    unb.c = {Rat(-1)};
    CHECK(solve_lp(unb).status == LPStatus::unbounded);

    LinearProgram<double> lpd;
    lpd.a = {{1.0, 2.0}};
    lpd.b = {1.0};
    lpd.c = {1.0, 1.0};
    auto sold = solve_lp(lpd);
    CHECK(sold.status == LPStatus::optimal);
    CHECK(sold.objective == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lp_certificate_ok(lpd, sold));
}
