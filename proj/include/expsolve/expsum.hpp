#ifndef EXPSOLVE_EXPSUM_HPP
#define EXPSOLVE_EXPSUM_HPP

#include <optional>
#include <vector>

#include "expsolve/poly.hpp"

namespace expsolve {

// One summand c(z) * e^{freq * z}; c is a Poly in z.
struct ExpTerm {
    Scalar freq;
    Poly coeff;
};

/*
 * Finite sum of polynomial-times-exponential terms. Canonical form: terms
 * sorted by frequency (lexicographic on (re, im)), frequencies pairwise
 * distinct (in approximate mode, separated by more than the merge
 * tolerance), no zero coefficient polynomial. All operations re-canonicalize.
 */
class ExpSum {
public:
    ExpSum() = default;

    static ExpSum from_terms(std::vector<ExpTerm> terms);
    static ExpSum from_terms(std::vector<ExpTerm> terms, double merge_tol);
    static ExpSum constant(Scalar c);
    // amplitude * e^{freq z}
    static ExpSum exponential(Scalar freq, Scalar amplitude = Scalar(1));

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    Mode mode_or(Mode fallback) const;
    bool has_approx() const;

    ExpSum operator-() const;
    friend ExpSum operator+(const ExpSum& a, const ExpSum& b);
    friend ExpSum operator-(const ExpSum& a, const ExpSum& b);
    friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
    ExpSum scaled(const Scalar& s) const;

    // Termwise (freq, c) -> (freq, c' + freq*c).
    ExpSum derivative() const;
    ExpSum derivative(int times) const;

    std::complex<double> eval(std::complex<double> z) const;

    ExpSum to_approx() const;

    // Largest coefficient magnitude over all terms; 0 for the zero sum.
    double max_coeff_magnitude() const;

    // Canonical structural equality.
    friend bool operator==(const ExpSum& a, const ExpSum& b);
    friend bool operator!=(const ExpSum& a, const ExpSum& b) { return !(a == b); }

    std::string str() const;

    // Process-wide default for the approximate-mode frequency merge
    // tolerance (absolute). Set once at startup; operations may also take an
    // explicit tolerance.
    static void set_default_merge_tolerance(double tol);
    static double default_merge_tolerance();

private:
    std::vector<ExpTerm> terms_;
};

} // namespace expsolve

#endif
