#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "test_util.hpp"

using namespace expsolve;
using namespace testutil;

namespace {

const Poly cubic_16_27 = P(Var::lambda, {SQ(16, 27), SQ(-4, 3), S(0), S(1)});

bool has_root(const RootSet& rs, const Scalar& v, int mult, bool exact) {
    for (const Root& r : rs.roots)
        if (r.exact == exact && r.multiplicity == mult &&
            (exact ? r.value == v : approx_equal(r.value, v, 1e-7)))
            return true;
    return false;
}

} // namespace

TEST_CASE("exact roots with multiplicities") {
    RootSet a = exact_roots(P(Var::lambda, {S(0), S(1), S(1)})); // x^2 + x
    CHECK(a.exhaustive);
    CHECK(a.roots.size() == 2);
    CHECK(has_root(a, S(0), 1, true));
    CHECK(has_root(a, S(-1), 1, true));

    RootSet b = exact_roots(P(Var::lambda, {S(1), S(1), S(1), S(1)})); // x^3+x^2+x+1
    CHECK(b.roots.size() == 3);
    CHECK(has_root(b, S(-1), 1, true));
    CHECK(has_root(b, SI(0, 1), 1, true));
    CHECK(has_root(b, SI(0, -1), 1, true));

    RootSet c = exact_roots(P(Var::lambda, {S(-1), S(3), S(-3), S(1)})); // (x-1)^3
    CHECK(c.roots.size() == 1);
    CHECK(has_root(c, S(1), 3, true));

    RootSet d = exact_roots(cubic_16_27);
    CHECK(has_root(d, SQ(-4, 3), 1, true));
    CHECK(has_root(d, SQ(2, 3), 2, true));

    // x^2 - 2 has no Gaussian rational roots
    CHECK(exact_roots(P(Var::lambda, {S(-2), S(0), S(1)})).roots.empty());
}

TEST_CASE("numeric roots") {
    RootSet a = numeric_roots(P(Var::lambda, {S(-2), S(0), S(1)}));
    CHECK(a.roots.size() == 2);
    CHECK(has_root(a, Scalar::approx(-1.4142135623730951), 1, false));
    CHECK(has_root(a, Scalar::approx(1.4142135623730951), 1, false));

    // the double root clusters to multiplicity 2
    RootSet b = numeric_roots(cubic_16_27);
    CHECK(b.roots.size() == 2);
    CHECK(has_root(b, Scalar::approx(-4.0 / 3.0), 1, false));
    CHECK(has_root(b, Scalar::approx(2.0 / 3.0), 2, false));

    RootSet c = numeric_roots(P(Var::lambda, {S(1), S(0), S(1)}).to_approx());
    CHECK(has_root(c, Scalar::approx(0.0, 1.0), 1, false));
    CHECK(has_root(c, Scalar::approx(0.0, -1.0), 1, false));

    // a triple root clusters to one root of multiplicity 3
    RootSet t = numeric_roots(P(Var::lambda, {S(-1), S(3), S(-3), S(1)}));
    REQUIRE(t.roots.size() == 1);
    CHECK(t.roots[0].multiplicity == 3);
    CHECK(approx_equal(t.roots[0].value, Scalar::approx(1.0), 1e-9));

    // nearby but distinct roots stay separate: (x - 1)(x - 1 - 1e-4)
    Poly close = P(Var::lambda, {Scalar::approx(-1.0), Scalar::approx(1.0)}) *
                 P(Var::lambda, {Scalar::approx(-1.0 - 1e-4), Scalar::approx(1.0)});
    RootSet n = numeric_roots(close);
    CHECK(n.roots.size() == 2);

    // every reported root satisfies its backward-error certificate
    for (const Poly* p : {&cubic_16_27}) {
        double pnorm = 0;
        for (const Scalar& s : p->coeffs())
            pnorm = std::max(pnorm, s.magnitude());
        for (const Root& r : numeric_roots(*p).roots)
            CHECK(p->to_approx().eval(r.value).magnitude() <= 1e-8 * pnorm);
    }
}

TEST_CASE("snapping to exact values") {
    auto s = snap_to_exact({0.66666667, 0.0}, cubic_16_27, 64);
    REQUIRE(s.has_value());
    CHECK(*s == SQ(2, 3));

    auto i = snap_to_exact({0.0, 1.00000001}, P(Var::lambda, {S(1), S(0), S(1)}), 64);
    REQUIRE(i.has_value());
    CHECK(*i == SI(0, 1));

    CHECK_FALSE(snap_to_exact({1.41421356, 0.0}, P(Var::lambda, {S(-2), S(0), S(1)}), 64));

    // fuzz: a perturbed rational with a small denominator snaps back exactly
    Rng rng;
    for (int k = 0; k < 20; ++k) {
        Scalar r = rng.rational();
        Poly p = P(Var::lambda, {-r, S(1)}); // x - r
        auto back = snap_to_exact(r.to_complex() + std::complex<double>(3e-9, -2e-9), p, 16);
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
}

TEST_CASE("full pipeline splits exact and numeric parts") {
    // (x^2 - 2)(x - 1/2)
    Poly p = P(Var::lambda, {S(-2), S(0), S(1)}) * P(Var::lambda, {SQ(-1, 2), S(1)});
    RootSet rs = all_roots(p);
    CHECK(rs.total_multiplicity() == 3);
    CHECK(has_root(rs, SQ(1, 2), 1, true));
    CHECK(has_root(rs, Scalar::approx(1.4142135623730951), 1, false));
    CHECK(has_root(rs, Scalar::approx(-1.4142135623730951), 1, false));
    CHECK(std::is_sorted(rs.roots.begin(), rs.roots.end(), [](const Root& a, const Root& b) {
        return a.value.to_complex().real() < b.value.to_complex().real();
    }));

    RootSet all_exact = all_roots(cubic_16_27);
    CHECK(all_exact.total_multiplicity() == 3);
    CHECK(has_root(all_exact, SQ(-4, 3), 1, true));
    CHECK(has_root(all_exact, SQ(2, 3), 2, true));
}

TEST_CASE("exact roots recover planted rational roots") {
    Rng rng;
    for (int iter = 0; iter < 15; ++iter) {
        Scalar r1 = rng.rational() + rng.rational() * Scalar::imaginary_unit();
        Scalar r2 = rng.rational() + rng.rational() * Scalar::imaginary_unit();
        Poly p = P(Var::lambda, {-r1, S(1)}) * P(Var::lambda, {-r2, S(1)});
        RootSet rs = exact_roots(p);
        REQUIRE(rs.exhaustive);
        CHECK(rs.total_multiplicity() == 2);
        for (const Root& r : rs.roots) {
            CHECK(r.exact);
            CHECK(p.eval(r.value).is_zero()); // residual exactly zero
        }
    }
}

TEST_CASE("integer-difference classes") {
    RootSet gauss;
    gauss.roots = {{S(-1), 1, true}, {SI(0, 1), 1, true}, {SI(0, -1), 1, true}};
    std::vector<RootClass> singletons = group_into_classes(gauss);
    CHECK(singletons.size() == 3);
    for (const RootClass& c : singletons) {
        CHECK(c.offsets == std::vector<int>{0});
        CHECK(c.total() == 1);
    }

    RootSet pair;
    pair.roots = {{S(0), 1, true}, {S(-1), 1, true}};
    std::vector<RootClass> joined = group_into_classes(pair);
    REQUIRE(joined.size() == 1);
    CHECK(joined[0].base == S(-1));
    CHECK(joined[0].offsets == std::vector<int>{0, 1});

    RootSet triple;
    triple.roots = {{S(1), 3, true}};
    std::vector<RootClass> one = group_into_classes(triple);
    REQUIRE(one.size() == 1);
    CHECK(one[0].offsets == std::vector<int>{0});
    CHECK(one[0].multiplicities == std::vector<int>{3});
    CHECK(one[0].total() == 3);

    // the 16/27 cubic: -4/3 and 2/3 differ by 2, one class
    std::vector<RootClass> merged = group_into_classes(all_roots(cubic_16_27));
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].base == SQ(-4, 3));
    CHECK(merged[0].offsets == std::vector<int>{0, 2});
    CHECK(merged[0].multiplicities == std::vector<int>{1, 2});
}

TEST_CASE("classes form an order-independent partition") {
    Rng rng;
    for (int iter = 0; iter < 20; ++iter) {
        RootSet rs;
        long n = rng.pick(1, 5);
        for (long i = 0; i < n; ++i)
            rs.roots.push_back({rng.rational() + rng.rational() * Scalar::imaginary_unit(),
                                int(rng.pick(1, 2)), true});
        // deduplicate equal values to keep the input a valid root set
        std::sort(rs.roots.begin(), rs.roots.end(), [](const Root& a, const Root& b) {
            return Scalar::cmp(a.value, b.value) < 0;
        });
        rs.roots.erase(std::unique(rs.roots.begin(), rs.roots.end(),
                                   [](const Root& a, const Root& b) { return a.value == b.value; }),
                       rs.roots.end());

        std::vector<RootClass> base = group_into_classes(rs);
        int members = 0;
        for (const RootClass& c : base)
            members += int(c.offsets.size());
        CHECK(members == int(rs.roots.size()));

        RootSet shuffled = rs;
        std::shuffle(shuffled.roots.begin(), shuffled.roots.end(), rng.gen);
        std::vector<RootClass> again = group_into_classes(shuffled);
        REQUIRE(again.size() == base.size());
        for (size_t c = 0; c < base.size(); ++c) {
            CHECK(base[c].base == again[c].base);
            CHECK(base[c].offsets == again[c].offsets);
            CHECK(base[c].multiplicities == again[c].multiplicities);
        }
    }
}

TEST_CASE("approximate classes carry boundary warnings") {
    RootSet rs;
    rs.roots = {{Scalar::approx(0.0), 1, false}, {Scalar::approx(1.5 + 1e-9), 1, false}};
    std::vector<RootClass> classes = group_into_classes(rs, 1e-8);
    CHECK(classes.size() == 2); // not merged, but flagged
    bool warned = false;
    for (const RootClass& c : classes)
        warned = warned || !c.warnings.empty();
    CHECK(warned);

    RootSet near;
    near.roots = {{Scalar::approx(0.0), 1, false}, {Scalar::approx(1.0 + 1e-10), 1, false}};
    std::vector<RootClass> merged = group_into_classes(near, 1e-8);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].offsets == std::vector<int>{0, 1});
}
