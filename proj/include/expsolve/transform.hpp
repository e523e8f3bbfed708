#ifndef EXPSOLVE_TRANSFORM_HPP
#define EXPSOLVE_TRANSFORM_HPP

#include "expsolve/problem.hpp"

namespace expsolve {

/*
 * Change-of-basis matrix between d^j/dz^j and t^i d^i/dt^i under t = e^z.
 * Entries are Stirling numbers of the second kind: m[i][j] counts the
 * partitions of a j-set into i blocks; m[i][j] = 0 for i > j.
 */
struct StirlingMatrix {
    int n = 0;
    std::vector<std::vector<mpz_class>> m; // (n+1) x (n+1)

    const mpz_class& at(int i, int j) const { return m.at(size_t(i)).at(size_t(j)); }
};

// Built by the recurrence m[i][j] = i*m[i][j-1] + m[i-1][j-1].
StirlingMatrix stirling_matrix(int n);

/*
 * Substitution matrix for v = t^lambda u: q[i][j] = C(j,i) * lambda^(j-i
 * falling) above the diagonal, 1 on it, 0 below.
 */
struct QMatrix {
    int n = 0;
    Scalar lambda;
    std::vector<std::vector<Scalar>> q;

    const Scalar& at(int i, int j) const { return q.at(size_t(i)).at(size_t(j)); }
};

QMatrix q_matrix(const Scalar& lambda, int n);

// The equation sum_i alpha_i(t) t^i v^(i) = 0 obtained from the normalized
// problem under t = e^z. alpha_n = 1, so t = 0 is a regular singular point.
struct TDomainODE {
    std::vector<Poly> alpha; // alpha_0 .. alpha_n, Var::t
    int order() const { return int(alpha.size()) - 1; }
};

// alpha_i = sum_j m[i][j] P_j. Requires gamma = 0.
TDomainODE to_t_domain(const NormalizedProblem& np);

// The equation sum_i beta_i(t) t^i u^(i) = 0 satisfied by u when
// v = t^lambda u. Carries the indicial polynomial of the parent equation so
// downstream consistency checks are self-contained.
struct UDomainODE {
    Scalar lambda;
    std::vector<Poly> beta;   // beta_0 .. beta_n, Var::t
    Poly indicial = Poly(Var::lambda);
    int order() const { return int(beta.size()) - 1; }
};

// beta_i = sum_j q[i][j](lambda) alpha_j.
UDomainODE shift_by_lambda(const TDomainODE& ode, const Scalar& lambda);

// lambda^n + P_{n-1}(0) lambda^{n-1} + ... + P_0(0). Requires gamma = 0.
Poly indicial_polynomial(const NormalizedProblem& np);

// The same polynomial assembled the other way, sum_i alpha_i(0) *
// lambda^(i falling); kept as an independent algebraic route.
Poly indicial_from_alpha(const TDomainODE& ode);

} // namespace expsolve

#endif
