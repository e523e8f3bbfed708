#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

using namespace expsolve;
using namespace testutil;

namespace {

// independent closed form: m_{i,j} = (1/i!) sum_k (-1)^k C(i,k) (i-k)^j,
// computed with gmp's own binomial and factorial
mpz_class stirling_closed_form(int i, int j) {
    if (i == 0)
        return j == 0 ? 1 : 0;
    mpz_class sum = 0;
    for (int k = 0; k <= i; ++k) {
        mpz_class b, p;
        mpz_bin_uiui(b.get_mpz_t(), unsigned(i), unsigned(k));
        mpz_ui_pow_ui(p.get_mpz_t(), unsigned(i - k), unsigned(j));
        sum += (k % 2 ? -1 : 1) * b * p;
    }
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), unsigned(i));
    mpz_class q = sum / fact;
    CHECK(q * fact == sum); // the division must be exact
    return q;
}

} // namespace

TEST_CASE("stirling matrix") {
    StirlingMatrix s = stirling_matrix(5);
    CHECK(s.at(0, 0) == 1);
    for (int i = 1; i <= 5; ++i)
        CHECK(s.at(i, 0) == 0);
    for (int j = 1; j <= 5; ++j)
        CHECK(s.at(0, j) == 0);
    CHECK(s.at(2, 3) == 3);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j < i; ++j)
            CHECK(s.at(i, j) == 0);
}

TEST_CASE("stirling recurrence equals the closed form, n <= 12") {
    for (int n = 1; n <= 12; ++n) {
        StirlingMatrix s = stirling_matrix(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                CHECK(s.at(i, j) == stirling_closed_form(i, j));
    }
}

TEST_CASE("q matrix") {
    QMatrix id = q_matrix(Scalar(), 3);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            CHECK(id.at(i, j) == (i == j ? S(1) : S(0)));

    QMatrix q = q_matrix(SQ(-4, 3), 2);
    CHECK(q.at(0, 1) == SQ(-4, 3));
    CHECK(q.at(0, 2) == SQ(28, 9));
    CHECK(q.at(1, 2) == SQ(-8, 3));
    for (int j = 0; j <= 2; ++j)
        CHECK(q.at(j, j) == S(1));
    CHECK(q.at(2, 1) == S(0));
}

TEST_CASE("t-domain equation") {
    NormalizedProblem ex38 = normalize(load_corpus("order2_nonexistence.json"));
    TDomainODE t38 = to_t_domain(ex38);
    CHECK(t38.alpha[0] == P(Var::t, {S(0), S(1)}));
    CHECK(t38.alpha[1] == P(Var::t, {S(2)}));
    CHECK(t38.alpha[2] == P(Var::t, {S(1)}));

    NormalizedProblem ex35 = normalize(load_corpus("cubic_simple_plus_double.json"));
    TDomainODE t35 = to_t_domain(ex35);
    CHECK(t35.alpha[1] == P(Var::t, {SQ(-1, 3), S(1)}));
    CHECK(t35.alpha[3] == P(Var::t, {S(1)}));

    // constant coefficients stay constant
    NormalizedProblem cc;
    cc.n = 2;
    cc.gamma = 0;
    cc.P = {P(Var::t, {S(2)}), P(Var::t, {S(3)}), P(Var::t, {S(1)})};
    for (const Poly& a : to_t_domain(cc).alpha)
        CHECK(a.degree() <= 0);

    NormalizedProblem irregular = cc;
    irregular.gamma = 1;
    irregular.P[2] = Poly::monomial(Var::t, 1);
    CHECK_THROWS_AS(to_t_domain(irregular), unsupported_error);
    CHECK_THROWS_AS(indicial_polynomial(irregular), unsupported_error);
}

TEST_CASE("lambda shift") {
    NormalizedProblem ex35 = normalize(load_corpus("cubic_simple_plus_double.json"));
    TDomainODE tdom = to_t_domain(ex35);

    UDomainODE u = shift_by_lambda(tdom, SQ(-4, 3));
    CHECK(u.beta[0] == P(Var::t, {S(0), S(7)}));
    CHECK(u.beta[1] == P(Var::t, {S(1), S(-7)}));
    CHECK(u.beta[2] == P(Var::t, {S(-1), S(3)}));
    CHECK(u.beta[3] == P(Var::t, {S(1)}));
    // u = 1 - 7t lies in the kernel: direct substitution
    CHECK(substitute_u(u.beta, P(Var::t, {S(1), S(-7)})).is_zero());

    // shifting by zero is the identity
    UDomainODE u0 = shift_by_lambda(tdom, Scalar());
    for (size_t i = 0; i < u0.beta.size(); ++i)
        CHECK(u0.beta[i] == tdom.alpha[i]);

    // the nonexistence example at lambda = -1 reduces to t(t u'' + u)
    NormalizedProblem ex38 = normalize(load_corpus("order2_nonexistence.json"));
    UDomainODE u38 = shift_by_lambda(to_t_domain(ex38), S(-1));
    CHECK(u38.beta[0] == P(Var::t, {S(0), S(1)}));
    CHECK(u38.beta[1].is_zero());
    CHECK(u38.beta[2] == P(Var::t, {S(1)}));
}

TEST_CASE("indicial polynomial") {
    CHECK(indicial_polynomial(normalize(load_corpus("cubic_simple_plus_double.json"))) ==
          P(Var::lambda, {SQ(16, 27), SQ(-4, 3), S(0), S(1)}));
    CHECK(indicial_polynomial(normalize(load_corpus("cubic_gaussian_pair.json"))) ==
          P(Var::lambda, {S(1), S(1), S(1), S(1)}));
    CHECK(indicial_polynomial(normalize(load_corpus("order2_nonexistence.json"))) ==
          P(Var::lambda, {S(0), S(1), S(1)}));

    // constant coefficients: the characteristic polynomial
    NormalizedProblem cc;
    cc.n = 2;
    cc.gamma = 0;
    cc.P = {P(Var::t, {S(2)}), P(Var::t, {S(3)}), P(Var::t, {S(1)})};
    CHECK(indicial_polynomial(cc) == P(Var::lambda, {S(2), S(3), S(1)}));
}

TEST_CASE("indicial identity: power form equals falling-factorial form") {
    Rng rng;
    for (int i = 0; i < 20; ++i) {
        NormalizedProblem np = rng.problem();
        CHECK(indicial_polynomial(np) == indicial_from_alpha(to_t_domain(np)));
    }
}

TEST_CASE("conjugation coherence on the corpus") {
    // f = e^{lambda z} u(e^z) solves the normalized equation exactly when u
    // solves the shifted t-domain equation; check both routes, both signs
    struct Case {
        const char* doc;
        Scalar lambda;
        Poly u;
        bool solves;
    };
    std::vector<Case> cases = {
        {"cubic_simple_plus_double.json", SQ(-4, 3), P(Var::t, {S(1), S(-7)}), true},
        {"cubic_gaussian_pair.json", SI(0, -1), P(Var::t, {S(1)}), true},
        {"cubic_gaussian_pair.json", S(-1), P(Var::t, {S(1)}), true},
        {"cubic_gaussian_pair.json", SI(0, 1), P(Var::t, {S(1)}), false},
        {"cubic_triple_root.json", S(1), P(Var::t, {S(1)}), true},
        {"cubic_triple_root.json", S(1), P(Var::t, {S(0), S(1)}), false},
    };
    for (const Case& c : cases) {
        NormalizedProblem np = normalize(load_corpus(c.doc));
        UDomainODE u = shift_by_lambda(to_t_domain(np), c.lambda);
        bool t_route = substitute_u(u.beta, c.u).is_zero();
        CHECK(t_route == c.solves);

        ExpSum f = expand_poly_solution(c.lambda, c.u);
        ExpSum deriv = f;
        ExpSum acc;
        for (int i = 0; i <= np.n; ++i) {
            acc = acc + coefficient_expsum(np, i) * deriv;
            deriv = deriv.derivative();
        }
        CHECK(acc.is_zero() == c.solves);
    }
}
