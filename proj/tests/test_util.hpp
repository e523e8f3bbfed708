#ifndef EXPSOLVE_TEST_UTIL_HPP
#define EXPSOLVE_TEST_UTIL_HPP

#include <random>
#include <string>

#include "expsolve/io.hpp"

namespace testutil {

using namespace expsolve;

inline Scalar S(long n) { return Scalar(n); }
inline Scalar SQ(long num, long den) { return Scalar::rational(num, den); }
inline Scalar SI(long re, long im) {
    return Scalar(GaussianRational{mpq_class(re), mpq_class(im)});
}

inline Poly P(Var v, std::initializer_list<Scalar> coeffs) {
    return Poly::from_coeffs(v, std::vector<Scalar>(coeffs));
}

// c * e^{freq z} with a polynomial coefficient in z
inline ExpTerm term(Scalar freq, std::initializer_list<Scalar> zcoeffs) {
    return {std::move(freq), P(Var::z, zcoeffs)};
}

inline RawProblem load_corpus(const std::string& name) {
    return load_problem(std::string(CORPUS_DIR) + "/" + name);
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed = 0x5eed) : gen(seed) {}

    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }

    // rational with |numerator| <= 9, denominator <= 9
    Scalar rational() { return SQ(pick(-9, 9), pick(1, 9)); }
    Scalar nonzero_rational() {
        while (true) {
            Scalar s = rational();
            if (!s.is_zero())
                return s;
        }
    }

    Poly poly(Var v, int max_deg) {
        std::vector<Scalar> c;
        int d = int(pick(0, max_deg));
        for (int k = 0; k <= d; ++k)
            c.push_back(rational());
        return Poly::from_coeffs(v, std::move(c));
    }

    // canonical-form problem: gamma = 0, P_n = 1, P_0 not identically zero
    NormalizedProblem problem(int max_order = 4, int max_deg = 3) {
        NormalizedProblem np;
        np.n = int(pick(1, max_order));
        np.gamma = 0;
        for (int j = 0; j < np.n; ++j)
            np.P.push_back(poly(Var::t, max_deg));
        while (np.P[0].is_zero())
            np.P[0] = poly(Var::t, max_deg);
        np.P.push_back(Poly::constant(Var::t, S(1)));
        return np;
    }

    ExpSum expsum(int max_terms = 3, int max_zdeg = 2) {
        std::vector<ExpTerm> terms;
        long nt = pick(1, max_terms);
        for (long i = 0; i < nt; ++i) {
            std::vector<Scalar> c;
            int d = int(pick(0, max_zdeg));
            for (int k = 0; k <= d; ++k)
                c.push_back(rational());
            terms.push_back({rational(), Poly::from_coeffs(Var::z, std::move(c))});
        }
        return ExpSum::from_terms(std::move(terms));
    }
};

// sum_i beta_i(t) t^i u^(i)(t), the direct substitution oracle
inline Poly substitute_u(const std::vector<Poly>& beta, const Poly& u) {
    Poly acc(Var::t);
    Poly deriv = u;
    for (size_t i = 0; i < beta.size(); ++i) {
        acc = acc + beta[i] * Poly::monomial(Var::t, int(i)) * deriv;
        deriv = deriv.derivative();
    }
    return acc;
}

// e^{lambda z} u(e^z) as an exponential sum
inline ExpSum expand_poly_solution(const Scalar& lambda, const Poly& u) {
    std::vector<ExpTerm> terms;
    for (int k = 0; k <= std::max(u.degree(), 0); ++k) {
        Scalar c = u.coeff(k);
        if (c.is_zero())
            continue;
        terms.push_back({lambda + Scalar(long(k)).in_mode(lambda.mode()),
                         Poly::constant(Var::z, c)});
    }
    return ExpSum::from_terms(std::move(terms));
}

} // namespace testutil

#endif
