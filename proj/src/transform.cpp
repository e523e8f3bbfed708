#include "expsolve/transform.hpp"

namespace expsolve {

StirlingMatrix stirling_matrix(int n) {
    if (n < 1)
        throw error("stirling matrix needs n >= 1");
    StirlingMatrix s;
    s.n = n;
    s.m.assign(size_t(n) + 1, std::vector<mpz_class>(size_t(n) + 1, 0));
    s.m[0][0] = 1;
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= j; ++i)
            s.m[size_t(i)][size_t(j)] = i * s.m[size_t(i)][size_t(j) - 1] + s.m[size_t(i) - 1][size_t(j) - 1];
    return s;
}

QMatrix q_matrix(const Scalar& lambda, int n) {
    if (n < 1)
        throw error("q matrix needs n >= 1");
    QMatrix q;
    q.n = n;
    q.lambda = lambda;
    Mode m = lambda.mode();
    q.q.assign(size_t(n) + 1, std::vector<Scalar>(size_t(n) + 1, Scalar().in_mode(m)));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            q.q[size_t(i)][size_t(j)] =
                Scalar(binomial(j, i)).in_mode(m) * falling_factorial(lambda, j - i);
    return q;
}

TDomainODE to_t_domain(const NormalizedProblem& np) {
    if (np.gamma != 0)
        throw unsupported_error("gamma > 0: irregular singularity, no t-domain transform");
    const int n = np.n;
    StirlingMatrix s = stirling_matrix(n);
    Mode mode = np.has_approx() ? Mode::approx : Mode::exact;
    TDomainODE ode;
    for (int i = 0; i <= n; ++i) {
        Poly acc(Var::t);
        for (int j = i; j <= n; ++j) {
            if (sgn(s.at(i, j)) == 0)
                continue;
            acc = acc + np.P[size_t(j)].scaled(Scalar(s.at(i, j)).in_mode(mode));
        }
        ode.alpha.push_back(std::move(acc));
    }
    return ode;
}

UDomainODE shift_by_lambda(const TDomainODE& ode, const Scalar& lambda) {
    const int n = ode.order();
    QMatrix q = q_matrix(lambda, n);
    // shifting by a numeric exponent pulls the whole equation into approx mode
    std::vector<Poly> alpha;
    for (const Poly& a : ode.alpha)
        alpha.push_back(lambda.is_exact() ? a : a.to_approx());
    UDomainODE u;
    u.lambda = lambda;
    u.indicial = indicial_from_alpha({alpha});
    for (int i = 0; i <= n; ++i) {
        Poly acc(Var::t);
        for (int j = i; j <= n; ++j)
            acc = acc + alpha[size_t(j)].scaled(q.at(i, j));
        u.beta.push_back(std::move(acc));
    }
    return u;
}

Poly indicial_polynomial(const NormalizedProblem& np) {
    if (np.gamma != 0)
        throw unsupported_error("gamma > 0: irregular singularity, no indicial equation");
    std::vector<Scalar> c(size_t(np.n) + 1, Scalar());
    for (int j = 0; j < np.n; ++j)
        c[size_t(j)] = np.P[size_t(j)].coeff(0);
    c[size_t(np.n)] = Scalar(1).in_mode(np.has_approx() ? Mode::approx : Mode::exact);
    return Poly::from_coeffs(Var::lambda, std::move(c));
}

Poly indicial_from_alpha(const TDomainODE& ode) {
    Poly acc(Var::lambda);
    for (int i = 0; i <= ode.order(); ++i) {
        Scalar a0 = ode.alpha[size_t(i)].coeff(0);
        if (a0.is_zero())
            continue;
        Poly ff = falling_factorial_poly(Var::lambda, i);
        if (!a0.is_exact())
            ff = ff.to_approx();
        acc = acc + ff.scaled(a0);
    }
    return acc;
}

} // namespace expsolve
