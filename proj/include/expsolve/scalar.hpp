#ifndef EXPSOLVE_SCALAR_HPP
#define EXPSOLVE_SCALAR_HPP

#include <gmpxx.h>

#include <complex>
#include <string>
#include <variant>

#include "expsolve/error.hpp"

namespace expsolve {

enum class Mode { exact, approx };

/*
 * Gaussian rational a + b*i with exact rational parts. Both parts are kept
 * canonical (lowest terms, positive denominator); gmp guarantees that for
 * arithmetic results, constructors canonicalize explicitly.
 */
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(mpq_class r) : re(std::move(r)), im(0) { canonical(); }
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) { canonical(); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    GaussianRational conj() const { return {re, -im}; }
    // re^2 + im^2, the field norm down to Q.
    mpq_class norm() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

private:
    void canonical() {
        re.canonicalize();
        im.canonicalize();
    }
};

/*
 * The coefficient field: either an exact Gaussian rational or a complex
 * double. Arithmetic between a nonzero exact value and an approximate one is
 * a reported error; an exact zero is mode-neutral and embeds canonically
 * into either field. Approximate values never silently become exact.
 */
class Scalar {
public:
    Scalar() : v_(GaussianRational{}) {}
    Scalar(long n) : v_(GaussianRational{mpq_class(n)}) {}
    Scalar(const mpq_class& q) : v_(GaussianRational{q}) {}
    Scalar(const mpz_class& z) : v_(GaussianRational{mpq_class(z)}) {}
    Scalar(GaussianRational g) : v_(std::move(g)) {}

    static Scalar rational(long num, long den);
    static Scalar approx(std::complex<double> z) { return Scalar(z); }
    static Scalar approx(double re, double im = 0.0) { return Scalar(std::complex<double>(re, im)); }
    static Scalar imaginary_unit() { return Scalar(GaussianRational{mpq_class(0), mpq_class(1)}); }

    Mode mode() const { return is_exact() ? Mode::exact : Mode::approx; }
    bool is_exact() const { return std::holds_alternative<GaussianRational>(v_); }
    bool is_zero() const;
    bool is_one() const;

    const GaussianRational& exact_value() const;
    std::complex<double> to_complex() const;
    Scalar to_approx() const { return Scalar(to_complex()); }
    // Embeds into the requested mode; exact -> approx converts, approx ->
    // exact is a mode error unless the value is zero.
    Scalar in_mode(Mode m) const;

    Scalar operator-() const;
    Scalar conj() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    // Structural equality. Exact vs approx compares equal only when both are
    // zero; approximate equality up to a tolerance is a separate, explicit
    // operation (approx_equal).
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Lexicographic order on (re, im); operands must live in one mode
    // (an exact zero adapts). Returns <0, 0, >0.
    static int cmp(const Scalar& a, const Scalar& b);

    double magnitude() const { return std::abs(to_complex()); }

    // Canonical text form: "-4/3", "1+1i", "-1i" for exact values; decimal
    // forms (always carrying a '.' or exponent) for approximate ones.
    std::string str() const;

private:
    explicit Scalar(std::complex<double> z) : v_(z) {}

    std::variant<GaussianRational, std::complex<double>> v_;
};

bool approx_equal(const Scalar& a, const Scalar& b, double tol);

// x(x-1)...(x-k+1); the empty product for k = 0.
Scalar falling_factorial(const Scalar& x, long k);

// Exact nonnegative integer power.
Scalar pow_int(const Scalar& x, long k);

} // namespace expsolve

#endif
