#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "test_util.hpp"

using namespace expsolve;
using namespace testutil;

namespace {

UDomainODE shifted(const char* doc, const Scalar& lambda) {
    NormalizedProblem np = normalize(load_corpus(doc));
    return shift_by_lambda(to_t_domain(np), lambda);
}

bool contains_scalar(const std::vector<Scalar>& xs, const Scalar& v) {
    return std::find(xs.begin(), xs.end(), v) != xs.end();
}

} // namespace

TEST_CASE("recurrence data") {
    UDomainODE u = shifted("cubic_simple_plus_double.json", SQ(-4, 3));
    RecurrenceData rec = recurrence_polys(u);
    CHECK(rec.band() == 1);
    CHECK(rec.R[0] == P(Var::lambda, {S(0), S(4), S(-4), S(1)})); // x(x-2)^2
    CHECK(rec.R[1] == P(Var::lambda, {S(7), S(-10), S(3)}));      // (3x-7)(x-1)

    // forward recurrence from g_0 = 1 reproduces the known coefficients,
    // and the next band term vanishes so the series terminates
    Scalar g0 = S(1);
    Scalar g1 = -(rec.R[1].eval(S(0)) * g0) / rec.R[0].eval(S(1));
    CHECK(g1 == S(-7));
    CHECK(rec.R[1].eval(S(1)).is_zero());

    // constant-coefficient equation: band 0
    NormalizedProblem cc;
    cc.n = 2;
    cc.gamma = 0;
    cc.P = {P(Var::t, {S(2)}), P(Var::t, {S(3)}), P(Var::t, {S(1)})};
    RecurrenceData rec0 = recurrence_polys(shift_by_lambda(to_t_domain(cc), S(-1)));
    CHECK(rec0.band() == 0);
}

TEST_CASE("recurrence head equals the shifted indicial polynomial") {
    Rng rng;
    for (int i = 0; i < 20; ++i) {
        NormalizedProblem np = rng.problem();
        Scalar lambda = rng.rational();
        // recurrence_polys throws internal_error if the identity fails
        RecurrenceData rec = recurrence_polys(shift_by_lambda(to_t_domain(np), lambda));
        CHECK(rec.R[0] == indicial_polynomial(np).shifted(lambda));
    }
}

TEST_CASE("degree candidates") {
    std::vector<long> c35 = degree_candidates(shifted("cubic_simple_plus_double.json", SQ(-4, 3)));
    CHECK(c35 == std::vector<long>{1});

    CHECK(degree_candidates(shifted("order2_nonexistence.json", Scalar())).empty());
    CHECK(degree_candidates(shifted("order2_nonexistence.json", S(-1))).empty());

    std::vector<long> c36 = degree_candidates(shifted("cubic_gaussian_pair.json", S(-1)));
    CHECK(std::find(c36.begin(), c36.end(), 0L) != c36.end());
}

TEST_CASE("polynomial solutions") {
    std::vector<Poly> b35 = poly_solutions(shifted("cubic_simple_plus_double.json", SQ(-4, 3)), 500);
    REQUIRE(b35.size() == 1);
    CHECK(b35[0] == P(Var::t, {S(1), S(-7)}));

    std::vector<Poly> bmi = poly_solutions(shifted("cubic_gaussian_pair.json", SI(0, -1)), 500);
    REQUIRE(bmi.size() == 1);
    CHECK(bmi[0] == P(Var::t, {S(1)}));

    CHECK(poly_solutions(shifted("cubic_gaussian_pair.json", SI(0, 1)), 500).empty());
    CHECK(poly_solutions(shifted("order2_nonexistence.json", S(-1)), 500).empty());

    CHECK_THROWS_AS(poly_solutions(shifted("cubic_simple_plus_double.json", SQ(-4, 3)), 0),
                    cap_error);
}

TEST_CASE("pure exponential shortcut") {
    NormalizedProblem triple = normalize(load_corpus("cubic_triple_root.json"));
    std::vector<Scalar> s37 = pure_exponential(triple);
    REQUIRE(s37.size() == 1);
    CHECK(s37[0] == S(1));

    NormalizedProblem gauss = normalize(load_corpus("cubic_gaussian_pair.json"));
    std::vector<Scalar> s36 = pure_exponential(gauss);
    REQUIRE(s36.size() == 2);
    CHECK(contains_scalar(s36, S(-1)));
    CHECK(contains_scalar(s36, SI(0, -1)));

    CHECK(pure_exponential(normalize(load_corpus("order2_nonexistence.json"))).empty());

    // oracle: lambda^n + sum_j P_j(t) lambda^j must vanish identically in t
    for (const auto& [np, freqs] :
         {std::pair{triple, s37}, std::pair{gauss, s36}}) {
        for (const Scalar& lam : freqs) {
            Poly total(Var::t);
            for (int j = 0; j <= np.n; ++j)
                total = total + np.P[size_t(j)].scaled(pow_int(lam, j));
            CHECK(total.is_zero());
        }
    }
}

TEST_CASE("class ansatz: triple root gives a two-dimensional log basis") {
    NormalizedProblem np = normalize(load_corpus("cubic_triple_root.json"));
    std::vector<RootClass> classes = group_into_classes(all_roots(indicial_polynomial(np)));
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].total() == 3);

    std::vector<LogSolution> sols = class_ansatz_solve(np, classes[0], 500);
    REQUIRE(sols.size() == 2);
    // reduced basis: e^z, then z e^z
    CHECK(assemble(sols[0]) == ExpSum::exponential(S(1)));
    CHECK(assemble(sols[1]) == ExpSum::from_terms({term(S(1), {S(0), S(1)})}));
}

TEST_CASE("class ansatz: nonexistence certified") {
    NormalizedProblem np = normalize(load_corpus("order2_nonexistence.json"));
    std::vector<RootClass> classes = group_into_classes(all_roots(indicial_polynomial(np)));
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].offsets == std::vector<int>{0, 1});
    CHECK(class_ansatz_solve(np, classes[0], 500).empty());
}

TEST_CASE("singleton simple classes agree with the polynomial route") {
    NormalizedProblem np = normalize(load_corpus("cubic_gaussian_pair.json"));
    std::vector<RootClass> classes = group_into_classes(all_roots(indicial_polynomial(np)));
    REQUIRE(classes.size() == 3);
    for (const RootClass& cls : classes) {
        if (cls.total() != 1)
            continue;
        std::vector<LogSolution> via_class = class_ansatz_solve(np, cls, 500);
        std::vector<Poly> via_poly =
            poly_solutions(shift_by_lambda(to_t_domain(np), cls.base), 500);
        CHECK(via_class.size() == via_poly.size());

        std::vector<ExpSum> joint;
        for (const LogSolution& s : via_class)
            joint.push_back(assemble(s));
        size_t dim = joint.size();
        for (const Poly& u : via_poly)
            joint.push_back(expand_poly_solution(cls.base, u));
        CHECK(independence(joint).rank == int(dim)); // same span
    }
}

TEST_CASE("solve_all on the corpus") {
    SolveOptions opts;

    SolutionBasis b35 = solve_all(normalize(load_corpus("cubic_simple_plus_double.json")), opts);
    ExpSum expected35 =
        ExpSum::from_terms({term(SQ(-4, 3), {S(1)}), term(SQ(-1, 3), {S(-7)})});
    bool found = false;
    for (const ExpSum& a : b35.assembled)
        found = found || a == expected35;
    CHECK(found);
    CHECK(b35.independence.rank == int(b35.assembled.size()));

    SolutionBasis b36 = solve_all(normalize(load_corpus("cubic_gaussian_pair.json")), opts);
    REQUIRE(b36.assembled.size() == 2);
    CHECK(b36.assembled[0] == ExpSum::exponential(S(-1)));
    CHECK(b36.assembled[1] == ExpSum::exponential(SI(0, -1)));
    CHECK(b36.independence.rank == 2);

    SolutionBasis b38 = solve_all(normalize(load_corpus("order2_nonexistence.json")), opts);
    CHECK(b38.assembled.empty());
    REQUIRE(b38.classes.size() == 1);
    CHECK(b38.classes[0].candidates.empty());

    SolutionBasis frei = solve_all(normalize(load_corpus("order2_negative_frequency.json")), opts);
    REQUIRE(frei.assembled.size() == 1);
    CHECK(frei.assembled[0] ==
          ExpSum::from_terms({term(S(-1), {S(1)}), term(S(0), {S(1)})}));

    // gamma > 0 is refused
    RawProblem mixed;
    mixed.order = 2;
    mixed.coeffs.push_back(ExpSum::exponential(S(1)) + ExpSum::exponential(S(-1)));
    mixed.coeffs.push_back(ExpSum());
    CHECK_THROWS_AS(solve_all(normalize(mixed), opts), unsupported_error);
}

TEST_CASE("assembled solutions") {
    LogSolution plain{SQ(-4, 3), {P(Var::t, {S(1), S(-7)})}};
    CHECK(assemble(plain) ==
          ExpSum::from_terms({term(SQ(-4, 3), {S(1)}), term(SQ(-1, 3), {S(-7)})}));

    LogSolution log_term{S(1), {Poly(Var::t), P(Var::t, {S(1)})}};
    CHECK(assemble(log_term) == ExpSum::from_terms({term(S(1), {S(0), S(1)})}));

    LogSolution expo{S(-1), {P(Var::t, {S(1)})}};
    CHECK(assemble(expo) == ExpSum::exponential(S(-1)));
}

TEST_CASE("constant coefficients reduce to the indicial equation") {
    auto cc_problem = [](std::initializer_list<Scalar> p) {
        NormalizedProblem np;
        np.n = int(p.size());
        np.gamma = 0;
        for (const Scalar& c : p)
            np.P.push_back(Poly::constant(Var::t, c));
        np.P.push_back(Poly::constant(Var::t, S(1)));
        return np;
    };

    // f'' - 3f' + 2f = 0 -> e^z, e^{2z}
    SolutionBasis a = solve_all(cc_problem({S(2), S(-3)}), SolveOptions{});
    REQUIRE(a.assembled.size() == 2);
    CHECK(a.assembled[0] == ExpSum::exponential(S(1)));
    CHECK(a.assembled[1] == ExpSum::exponential(S(2)));

    // f'' - 2f' + f = 0 -> e^z, z e^z (band-0 resonance)
    SolutionBasis b = solve_all(cc_problem({S(1), S(-2)}), SolveOptions{});
    REQUIRE(b.assembled.size() == 2);
    CHECK(b.assembled[0] == ExpSum::exponential(S(1)));
    CHECK(b.assembled[1] == ExpSum::from_terms({term(S(1), {S(0), S(1)})}));

    // f'' + f = 0 -> e^{iz}, e^{-iz}
    SolutionBasis c = solve_all(cc_problem({S(1), S(0)}), SolveOptions{});
    REQUIRE(c.assembled.size() == 2);
    CHECK(c.assembled[0] == ExpSum::exponential(SI(0, -1)));
    CHECK(c.assembled[1] == ExpSum::exponential(SI(0, 1)));
}

TEST_CASE("denormalized corpus solutions solve the raw problems") {
    for (const char* name :
         {"cubic_simple_plus_double.json", "cubic_gaussian_pair.json", "cubic_triple_root.json",
          "order2_nonexistence.json", "order2_negative_frequency.json"}) {
        RawProblem raw = load_corpus(name);
        NormalizedProblem np = normalize(raw);
        SolutionBasis basis = solve_all(np, SolveOptions{});
        for (const ExpSum& a : basis.assembled) {
            ExpSum mapped = denormalize_solution(a, np);
            CHECK(residual(mapped, raw).is_zero());
            // scaling invariance: any constant multiple still solves
            CHECK(residual(mapped.scaled(SQ(3, 7)), raw).is_zero());
        }
    }
}

TEST_CASE("random instances: soundness and bounds") {
    Rng rng;
    SolveOptions opts;
    for (int i = 0; i < 20; ++i) {
        NormalizedProblem np = rng.problem();
        SolutionBasis basis = solve_all(np, opts);
        CHECK(int(basis.assembled.size()) <= np.n);
        for (const ExpSum& a : basis.assembled) {
            if (!a.has_approx()) {
                CHECK(residual(a, np).is_zero());
            }
            ExpSum r = residual(a.to_approx(), np.to_approx());
            double scale = 0;
            for (const Poly& p : np.P)
                for (const Scalar& c : p.coeffs())
                    scale = std::max(scale, c.magnitude());
            CHECK(is_zero(r, 1e-9, std::max(scale, 1.0)).zero);
        }
    }
}
