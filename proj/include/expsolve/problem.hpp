#ifndef EXPSOLVE_PROBLEM_HPP
#define EXPSOLVE_PROBLEM_HPP

#include <vector>

#include "expsolve/expsum.hpp"

namespace expsolve {

/*
 * A raw linear ODE  leading * f^(n) + A_{n-1} f^(n-1) + ... + A_0 f = 0
 * with exponential-sum coefficients. The constructive hypothesis: every
 * frequency is real rational, every term coefficient is constant, and A_0 is
 * not identically zero.
 */
struct RawProblem {
    int order = 0;
    ExpSum leading = ExpSum::constant(Scalar(1));
    std::vector<ExpSum> coeffs; // A_0 .. A_{n-1}

    RawProblem to_approx() const;
    bool has_approx() const;
};

// Checks the structural invariants above; throws parse_error/unsupported_error.
void validate(const RawProblem& p);

struct CommonFrequency {
    mpq_class value;    // positive; 1 when the problem has no exponentials
    bool all_constant;  // no nonzero frequencies were present
};

// Largest positive rational dividing every input frequency (gcd of
// numerators over lcm of denominators, on absolute values). Zeros are
// ignored; an empty/all-zero input is the distinct constant-coefficient
// outcome with value 1.
CommonFrequency common_frequency(const std::vector<mpq_class>& freqs);

struct OrientationResult {
    RawProblem problem;
    bool flipped = false;
};

// If every nonzero frequency is negative, substitute z -> -z: coefficient
// A_i picks up the sign (-1)^{n-i} and every frequency negates. Otherwise
// the problem passes through unchanged.
OrientationResult orientation_normalize(const RawProblem& p);

/*
 * Canonical form  e^{gamma w} f^(n) + P_{n-1}(e^w) f^(n-1) + ... + P_0(e^w) f = 0
 * in the rescaled variable w = lambda' * (possibly flipped) z, with all
 * exponents nonnegative integers. P has n+1 entries; P[n] = t^gamma, so
 * P[n] = 1 exactly when gamma = 0.
 */
struct NormalizedProblem {
    int n = 0;
    int gamma = 0;
    std::vector<Poly> P;     // P_0 .. P_n, Var::t
    mpq_class lambda_prime = 1;
    bool flipped = false;
    int shift_m = 0;         // exponent-clearing shift M
    bool leading_was_unit = true;

    NormalizedProblem to_approx() const;
    bool has_approx() const;
    // Index of the last nonconstant P_j below n, or -1 when all coefficients
    // are constants. Bounds the number of finite-order solutions.
    int last_transcendental_index() const;
};

// Rescales to lambda' = 1 and clears negative exponents. Expects an
// orientation-normalized problem with exact scalars.
NormalizedProblem to_canonical_form(const OrientationResult& p);

// orientation_normalize followed by to_canonical_form.
NormalizedProblem normalize(const RawProblem& p);

// Maps a solution of the normalized problem back to the raw variable:
// frequencies multiply by lambda' (negated again if flipped), z-polynomials
// rescale their argument accordingly.
ExpSum denormalize_solution(const ExpSum& s, const NormalizedProblem& np);

// The coefficient of f^(i) as an exponential sum in w, P_i(e^w).
ExpSum coefficient_expsum(const NormalizedProblem& np, int i);

} // namespace expsolve

#endif
