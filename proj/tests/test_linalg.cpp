#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "expsolve/linalg.hpp"
#include "test_util.hpp"

using namespace expsolve;
using namespace testutil;

namespace {

Matrix make(size_t rows, size_t cols, std::initializer_list<Scalar> entries) {
    Matrix m(rows, cols);
    size_t k = 0;
    for (const Scalar& s : entries)
        m.at(k / cols, k % cols) = s, ++k;
    return m;
}

bool product_vanishes(const Matrix& m, const std::vector<Scalar>& v, double tol) {
    for (size_t i = 0; i < m.rows(); ++i) {
        Scalar acc;
        for (size_t j = 0; j < m.cols(); ++j)
            acc += m.at(i, j) * v[j];
        if (acc.is_exact() ? !acc.is_zero() : acc.magnitude() > tol)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("exact elimination") {
    Matrix m = make(2, 3, {S(1), S(1), S(0), S(0), S(0), S(1)});
    EliminationResult e = elimination_info(m);
    CHECK(e.rank == 2);
    CHECK(e.pivot_cols == std::vector<size_t>{0, 2});

    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] == S(1)); // first nonzero scaled to 1
    CHECK(ns[0][1] == S(-1));
    CHECK(ns[0][2] == S(0));

    // singular square matrix
    Matrix s = make(3, 3, {S(1), S(2), S(3), S(2), S(4), S(6), S(1), S(0), S(1)});
    CHECK(rank(s) == 2);
    CHECK(nullspace(s).size() == 1);

    // Gaussian rational entries
    Matrix g = make(1, 2, {SI(0, 1), S(1)}); // i x + y = 0
    auto gn = nullspace(g);
    REQUIRE(gn.size() == 1);
    CHECK(product_vanishes(g, gn[0], 0));
}

TEST_CASE("exact nullspace on random matrices") {
    Rng rng;
    for (int iter = 0; iter < 25; ++iter) {
        size_t rows = size_t(rng.pick(1, 5)), cols = size_t(rng.pick(1, 5));
        Matrix m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                m.at(i, j) = rng.rational() + rng.rational() * Scalar::imaginary_unit();
        auto ns = nullspace(m);
        CHECK(int(ns.size()) + rank(m) == int(cols));
        for (const auto& v : ns)
            CHECK(product_vanishes(m, v, 0));
    }
}

TEST_CASE("approximate rank and nullspace") {
    Matrix m = make(2, 2, {Scalar::approx(1.0), Scalar::approx(1.0),
                           Scalar::approx(1.0), Scalar::approx(1.0)});
    CHECK(rank(m) == 1);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(product_vanishes(m, ns[0], 1e-10));

    std::vector<double> sv = singular_values(m);
    std::sort(sv.begin(), sv.end());
    CHECK(sv[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(sv[1] == doctest::Approx(2.0));

    // random rectangular
    Rng rng;
    for (int iter = 0; iter < 20; ++iter) {
        size_t rows = size_t(rng.pick(1, 6)), cols = size_t(rng.pick(1, 6));
        Matrix a(rows, cols);
        double scale = 0;
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) {
                a.at(i, j) = Scalar::approx(double(rng.pick(-9, 9)) / double(rng.pick(1, 9)),
                                            double(rng.pick(-9, 9)) / double(rng.pick(1, 9)));
                scale = std::max(scale, a.at(i, j).magnitude());
            }
        auto ns = nullspace(a);
        CHECK(int(ns.size()) >= int(cols) - int(rows));
        for (const auto& v : ns)
            CHECK(product_vanishes(a, v, 1e-7 * std::max(scale, 1.0)));
    }
}

TEST_CASE("exact and approximate ranks agree") {
    Rng rng;
    for (int iter = 0; iter < 15; ++iter) {
        size_t rows = size_t(rng.pick(1, 4)), cols = size_t(rng.pick(1, 4));
        Matrix m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                m.at(i, j) = rng.rational();
        CHECK(rank(m) == rank(m.to_approx()));
    }
}

TEST_CASE("zero matrix") {
    Matrix m(2, 3);
    CHECK(rank(m) == 0);
    CHECK(nullspace(m).size() == 3);
    Matrix a = m.to_approx();
    CHECK(rank(a) == 0);
    CHECK(nullspace(a).size() == 3);
}
