#ifndef EXPSOLVE_SOLVER_HPP
#define EXPSOLVE_SOLVER_HPP

#include "expsolve/roots.hpp"
#include "expsolve/transform.hpp"
#include "expsolve/verify.hpp"

namespace expsolve {

/*
 * Coefficient recurrence of the series ansatz u = sum_k g_k t^k for a
 * shifted equation: the t^N coefficient reads
 *     sum_{s=0..band} R_s(N - s) * g_{N-s} = 0,
 * with R_s(x) = sum_i beta_{i,s} x^(i falling). R_0 coincides with the
 * indicial polynomial evaluated at lambda + x; recurrence_polys checks that
 * identity and refuses to hand out inconsistent data.
 */
struct RecurrenceData {
    Scalar lambda;
    std::vector<Poly> R; // R_0 .. R_band, Var::lambda

    int band() const { return int(R.size()) - 1; }
};

RecurrenceData recurrence_polys(const UDomainODE& ode);

/*
 * Admissible degrees for a nonzero polynomial solution: the nonnegative
 * integer roots of R_band (of R_0 in the constant-coefficient case, where
 * every admissible degree is an exponent offset). An empty result certifies
 * that no nonzero polynomial solution exists.
 */
std::vector<long> degree_candidates(const UDomainODE& ode, const RootOptions& ropts = {});

// Basis of polynomial solutions of the shifted equation, from the nullspace
// of the banded system over g_0..g_D, D the largest degree candidate.
// Candidates beyond cap raise cap_error.
std::vector<Poly> poly_solutions(const UDomainODE& ode, long cap, const RootOptions& ropts = {},
                                 double svd_tol = 1e-10);

// Frequencies lambda for which c*e^{lambda z} solves the equation outright:
// common roots of the t-power slices of lambda^n + sum_j P_j(t) lambda^j
// (gcd chain over Q(i) in exact mode, filtered numeric roots otherwise).
std::vector<Scalar> pure_exponential(const NormalizedProblem& np, const RootOptions& ropts = {},
                                     double tol = 1e-9);

/*
 * One basis element e^{lambda z} * sum_p z^p u_p(e^z). components[p] is u_p;
 * a plain polynomial solution has a single component.
 */
struct LogSolution {
    Scalar lambda;
    std::vector<Poly> components; // Var::t, index = z-power

    int log_depth() const { return int(components.size()) - 1; }
};

ExpSum assemble(const LogSolution& s);

// All finite-order solutions supported on one integer-difference class of
// indicial roots, via the z-polynomial ansatz with P = class multiplicity-1
// and degrees bounded by the class degree candidates. Basis reduced so
// leading z-powers are minimal.
std::vector<LogSolution> class_ansatz_solve(const NormalizedProblem& np, const RootClass& cls,
                                            long cap, const RootOptions& ropts = {},
                                            double svd_tol = 1e-10);

struct SolveOptions {
    long max_degree = 500;
    double tol = 1e-9;      // residual tolerance (relative) in approx mode
    double svd_tol = 1e-10; // nullspace threshold relative to sigma_max
    RootOptions roots;
};

struct ClassReport {
    RootClass cls;
    std::vector<long> candidates; // degree candidates at the class base
    int dimension = 0;            // solutions contributed
};

struct SolutionBasis {
    std::vector<LogSolution> solutions;
    std::vector<ExpSum> assembled; // parallel to solutions
    IndependenceReport independence;
    Poly indicial = Poly(Var::lambda);
    RootSet roots;
    std::vector<ClassReport> classes;
    std::vector<Scalar> pure_frequencies;
};

/*
 * Full constructive pipeline: indicial roots, classes, the pure-exponential
 * shortcut, per-class ansatz solves, dedup, verification of every element
 * (failure is an internal error, never silently emitted), independence
 * certificate. gamma > 0 is refused; verification of externally supplied
 * candidates remains available through the verify module.
 */
SolutionBasis solve_all(const NormalizedProblem& np, const SolveOptions& opts = {});

} // namespace expsolve

#endif
