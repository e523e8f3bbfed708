#ifndef EXPSOLVE_VERIFY_HPP
#define EXPSOLVE_VERIFY_HPP

#include <complex>
#include <optional>

#include "expsolve/problem.hpp"

namespace expsolve {

// Substitutes f into the equation and returns the canonical exponential sum
// sum_i A_i f^(i) + leading f^(n). Empty means f solves the equation
// identically. Scalar modes of f and the problem must agree.
ExpSum residual(const ExpSum& f, const RawProblem& p);

// Same against the normalized equation, in the rescaled variable. Works for
// gamma > 0 as well: the leading factor enters as the exponential sum of
// t^gamma.
ExpSum residual(const ExpSum& f, const NormalizedProblem& np);

struct ZeroCheck {
    bool zero = true;
    double worst_magnitude = 0;
    std::optional<Scalar> worst_freq; // largest offending term, if any
    int worst_zpow = 0;
};

// Exact residuals are zero iff structurally empty. Approximate residuals
// are zero when every coefficient magnitude stays below tol * input_scale;
// the certificate names the worst term either way.
ZeroCheck is_zero(const ExpSum& r, double tol, double input_scale = 1.0);

struct IndependenceReport {
    int rank = 0;
    // pivot slots (frequency, z-power) certifying the rank
    std::vector<std::pair<Scalar, int>> pivot_slots;
};

// Rank of the coefficient matrix over the union of (frequency, z-power)
// slots; exact elimination when every element is exact, singular values
// otherwise.
IndependenceReport independence(const std::vector<ExpSum>& basis, double rel_tol = 1e-10);

struct SpotSample {
    std::complex<double> point;
    double magnitude = 0;
    bool overflow = false;
};

struct SpotcheckReport {
    double max_magnitude = 0; // over the finite samples
    std::vector<SpotSample> samples;
};

// Evaluates the residual at sample points; a coefficient-level complement
// that is immune to merge-tolerance artifacts.
SpotcheckReport numeric_spotcheck(const ExpSum& f, const RawProblem& p,
                                  const std::vector<std::complex<double>>& points);
SpotcheckReport numeric_spotcheck(const ExpSum& f, const NormalizedProblem& np,
                                  const std::vector<std::complex<double>>& points);

} // namespace expsolve

#endif
