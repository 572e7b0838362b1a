#include "doctest.h"
#include "itsec/metrics.hpp"
#include "itsec/synth.hpp"
#include "testutil.hpp"

using namespace itsec;
using testutil::fails_with;
using testutil::rq;

namespace {

bool matrices_equal(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!a[i][j].eq_exact(b[i][j])) return false;
    }
    return true;
}

} // namespace

TEST_CASE("leaky shift construction") {
    LeakyShiftScheme ls = counterexample_scheme(4, rat(1, 2));
    CHECK(validate_spec(ls.spec).ok());
    CHECK(ls.matrix[0][0].eq_exact(rq(5, 8)));
    CHECK(ls.matrix[1][0].eq_exact(rq(1, 8)));
    CHECK(ls.matrix[2][3].eq_exact(rq(1, 8)));
    CHECK(ls.mi_uniform == doctest::Approx(0.45120505930460153).epsilon(1e-13));
    CHECK(counterexample_mi(4, 0.5) == doctest::Approx(ls.mi_uniform).epsilon(1e-15));
    CHECK(counterexample_eps_ind(0.5) == 0.5);

    CHECK(fails_with(Errc::invalid_argument, [] { counterexample_scheme(4, Rat(0)); }));
    CHECK(fails_with(Errc::invalid_argument, [] { counterexample_scheme(4, rat(3, 2)); }));
    CHECK(fails_with(Errc::invalid_argument, [] { counterexample_scheme(1, rat(1, 2)); }));
    CHECK(fails_with(Errc::cap_exceeded, [] { counterexample_scheme(65, rat(1, 2)); }));

    // eps = 1 collapses to the always-identity shift
    LeakyShiftScheme id = counterexample_scheme(3, Rat(1));
    CHECK(id.matrix[0][0].eq_exact(rq(1)));
    CHECK(id.matrix[1][0].is_zero_exact());
}

TEST_CASE("Birkhoff decomposition structure") {
    SUBCASE("identity is one term") {
        Matrix eye(3, std::vector<Num>(3, rq(0)));
        for (int i = 0; i < 3; ++i) eye[i][i] = rq(1);
        auto d = birkhoff_decompose(eye);
        REQUIRE(d.terms.size() == 1);
        CHECK(d.terms[0].weight.eq_exact(rq(1)));
        CHECK(d.terms[0].perm == std::vector<std::size_t>{0, 1, 2});
    }

    SUBCASE("uniform 3x3 splits into the three cyclic shifts, lex first") {
        Matrix u(3, std::vector<Num>(3, rq(1, 3)));
        auto d = birkhoff_decompose(u);
        REQUIRE(d.terms.size() == 3);
        CHECK(d.terms[0].perm == std::vector<std::size_t>{0, 1, 2});
        for (const auto& t : d.terms) CHECK(t.weight.eq_exact(rq(1, 3)));
        CHECK(matrices_equal(d.reconstruct(3, NumMode::rational), u));
    }

    SUBCASE("random matrices reconstruct exactly under the term cap") {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            std::size_t n = 2 + seed % 5;
            Matrix m = random_doubly_stochastic(n, 40, seed);
            REQUIRE(is_doubly_stochastic(m));
            auto d = birkhoff_decompose(m);
            CHECK(d.terms.size() <= (n - 1) * (n - 1) + 1);
            CHECK(matrices_equal(d.reconstruct(n, NumMode::rational), m));
        }
    }

    SUBCASE("rejects non-doubly-stochastic input") {
        Matrix bad = {{rq(1, 2), rq(1, 2)}, {rq(1, 4), rq(1, 2)}};
        CHECK_FALSE(is_doubly_stochastic(bad));
        CHECK(fails_with(Errc::invalid_argument, [&] { birkhoff_decompose(bad); }));
        Matrix nonsquare = {{rq(1), rq(0)}};
        CHECK(fails_with(Errc::non_square, [&] { (void)is_doubly_stochastic(nonsquare); }));
    }
}

TEST_CASE("random doubly stochastic matrices are deterministic per seed") {
    Matrix a = random_doubly_stochastic(4, 6, 9);
    Matrix b = random_doubly_stochastic(4, 6, 9);
    Matrix c = random_doubly_stochastic(4, 6, 10);
    CHECK(matrices_equal(a, b));
    CHECK_FALSE(matrices_equal(a, c));
    CHECK(is_doubly_stochastic(a));
    CHECK(is_doubly_stochastic(c));
}

TEST_CASE("scheme from matrix round-trips the channel") {
    Matrix m = random_doubly_stochastic(5, 7, 3);
    CipherSpec s = scheme_from_matrix(m);
    CHECK(validate_spec(s).ok());
    Channel ch = channel_matrix(s);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(ch.column(j).prob(i).eq_exact(m[i][j]));
    for (const Num& e : per_message_error(s)) CHECK(e.is_zero_exact());
}

TEST_CASE("tight trade-off schemes") {
    SUBCASE("give up correctness, keep perfect secrecy") {
        CipherSpec s = tight_scheme(TightKind::zero_advantage, 8, rat(1, 4));
        CHECK(validate_spec(s).ok());
        CHECK(s.keys.size() == 6);
        for (const Num& e : per_message_error(s)) CHECK(e.eq_exact(rq(1, 4)));
        MetricValue adv = eps_ind(s);
        CHECK(adv.lo.is_zero_exact());
        CHECK(adv.hi.is_zero_exact());
    }

    SUBCASE("delta = 0 collapses to the full-key pad") {
        CipherSpec s = tight_scheme(TightKind::zero_advantage, 4, Rat(0));
        CHECK(s.keys.size() == 4);
        CHECK(delta_all(s).hi.is_zero_exact());
        CHECK(eps_ind(s).hi.is_zero_exact());
    }

    SUBCASE("give up secrecy, keep perfect correctness") {
        CipherSpec s = tight_scheme(TightKind::zero_error, 8, rat(1, 2));
        CHECK(validate_spec(s).ok());
        CHECK(s.keys.size() == 6);
        for (const Num& e : per_message_error(s)) CHECK(e.is_zero_exact());
        CHECK(eps_ind(s).hi.eq_exact(rq(1, 3)));
    }

    SUBCASE("parameter must make the key count integral") {
        CHECK(fails_with(Errc::invalid_argument,
                         [] { tight_scheme(TightKind::zero_advantage, 4, rat(1, 3)); }));
        CHECK(fails_with(Errc::invalid_argument,
                         [] { tight_scheme(TightKind::zero_error, 4, rat(1, 3)); }));
        CHECK(fails_with(Errc::invalid_argument,
                         [] { tight_scheme(TightKind::zero_advantage, 4, rat(5, 4)); }));
    }
}
