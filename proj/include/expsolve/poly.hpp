#ifndef EXPSOLVE_POLY_HPP
#define EXPSOLVE_POLY_HPP

#include <limits>
#include <vector>

#include "expsolve/scalar.hpp"

namespace expsolve {

// Role tag of a dense univariate polynomial. t = e^z lives in the
// transformed equations, lambda in indicial/recurrence polynomials, z in
// exponential-sum coefficients.
enum class Var { t, lambda, z };

const char* var_name(Var v);

/*
 * Dense univariate polynomial over Scalar, coefficients stored lowest degree
 * first with no trailing zero, so the zero polynomial is the empty vector.
 * Operands of a binary operation must share the role tag and scalar mode.
 */
class Poly {
public:
    // Degree of the zero polynomial: a distinguished "minus infinity".
    static constexpr int neg_inf_degree = std::numeric_limits<int>::min();

    explicit Poly(Var v) : var_(v) {}

    static Poly constant(Var v, Scalar c);
    static Poly monomial(Var v, int k, Scalar c = Scalar(1));
    static Poly from_coeffs(Var v, std::vector<Scalar> coeffs);

    Var var() const { return var_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? neg_inf_degree : int(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    // Coefficient of x^k; zero beyond the degree.
    Scalar coeff(int k) const;
    Scalar leading() const;

    // Mode of the nonzero coefficients; an all-zero polynomial adapts to
    // either mode. Mixed nonzero modes are rejected at construction.
    Mode mode_or(Mode fallback) const;
    bool has_approx() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Scalar& s) const;

    // Formal derivative.
    Poly derivative() const;
    // Horner evaluation.
    Scalar eval(const Scalar& x) const;
    // Composition with a shift: p(x + c).
    Poly shifted(const Scalar& c) const;
    // Argument scaling: p(a*x).
    Poly arg_scaled(const Scalar& a) const;

    Poly to_approx() const;
    Poly retagged(Var v) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string str() const;

private:
    void trim();
    void check_consistent_mode() const;
    Mode joint_mode(const Scalar& s) const;

    Var var_;
    std::vector<Scalar> c_;
};

// Exact polynomial division: returns {quotient, remainder}. The divisor must
// be nonzero; exact-mode coefficients only.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);

// Monic gcd over Q(i), Euclid's algorithm. gcd(0, 0) = 0.
Poly poly_gcd(Poly a, Poly b);

// x(x-1)...(x-k+1) as an exact polynomial in the given variable.
Poly falling_factorial_poly(Var v, int k);

// Exact binomial coefficient via the Pascal recurrence.
mpz_class binomial(int n, int k);

} // namespace expsolve

#endif
