#include "expsolve/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace expsolve {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero())
        throw error("division by zero");
    mpq_class n = b.norm();
    GaussianRational num = a * b.conj();
    return {num.re / n, num.im / n};
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0)
        throw error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

bool Scalar::is_zero() const {
    if (is_exact())
        return std::get<GaussianRational>(v_).is_zero();
    return std::get<std::complex<double>>(v_) == 0.0;
}

bool Scalar::is_one() const {
    if (is_exact())
        return std::get<GaussianRational>(v_).is_one();
    return std::get<std::complex<double>>(v_) == std::complex<double>(1.0, 0.0);
}

const GaussianRational& Scalar::exact_value() const {
    if (!is_exact())
        throw mode_error("exact value requested from an approximate scalar");
    return std::get<GaussianRational>(v_);
}

std::complex<double> Scalar::to_complex() const {
    if (is_exact())
        return std::get<GaussianRational>(v_).to_complex();
    return std::get<std::complex<double>>(v_);
}

Scalar Scalar::in_mode(Mode m) const {
    if (m == Mode::approx)
        return is_exact() ? to_approx() : *this;
    if (!is_exact()) {
        if (is_zero())
            return Scalar();
        throw mode_error("cannot promote an approximate scalar to exact");
    }
    return *this;
}

Scalar Scalar::operator-() const {
    if (is_exact())
        return Scalar(-std::get<GaussianRational>(v_));
    return Scalar(-std::get<std::complex<double>>(v_));
}

Scalar Scalar::conj() const {
    if (is_exact())
        return Scalar(std::get<GaussianRational>(v_).conj());
    return Scalar(std::conj(std::get<std::complex<double>>(v_)));
}

namespace {

// Resolves the working mode of a binary operation. Nonzero exact with approx
// is the reported mixing error; exact zeros adapt.
Mode join_modes(const Scalar& a, const Scalar& b) {
    if (a.mode() == b.mode())
        return a.mode();
    const Scalar& ex = a.is_exact() ? a : b;
    if (!ex.is_zero())
        throw mode_error("mixed exact/approx scalar arithmetic");
    return Mode::approx;
}

} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (join_modes(a, b) == Mode::exact)
        return Scalar(a.exact_value() + b.exact_value());
    return Scalar::approx(a.to_complex() + b.to_complex());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (join_modes(a, b) == Mode::exact)
        return Scalar(a.exact_value() - b.exact_value());
    return Scalar::approx(a.to_complex() - b.to_complex());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (join_modes(a, b) == Mode::exact)
        return Scalar(a.exact_value() * b.exact_value());
    return Scalar::approx(a.to_complex() * b.to_complex());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero())
        throw error("division by zero");
    if (join_modes(a, b) == Mode::exact)
        return Scalar(a.exact_value() / b.exact_value());
    return Scalar::approx(a.to_complex() / b.to_complex());
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact())
        return a.is_zero() && b.is_zero();
    if (a.is_exact())
        return a.exact_value() == b.exact_value();
    return a.to_complex() == b.to_complex();
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
    if (join_modes(a, b) == Mode::exact) {
        const GaussianRational& x = a.exact_value();
        const GaussianRational& y = b.exact_value();
        int c = ::cmp(x.re, y.re);
        if (c != 0)
            return c;
        return ::cmp(x.im, y.im);
    }
    std::complex<double> x = a.to_complex(), y = b.to_complex();
    if (x.real() != y.real())
        return x.real() < y.real() ? -1 : 1;
    if (x.imag() != y.imag())
        return x.imag() < y.imag() ? -1 : 1;
    return 0;
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    // Keep a decimal marker so the text re-parses as approximate.
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_of("nif") == std::string::npos) // nan/inf pass through
        s += ".0";
    return s;
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

// Assembles "a", "bi" or "a+bi" from already formatted parts.
std::string join_complex(const std::string& re, bool re_zero, std::string im, bool im_zero,
                         bool im_negative) {
    if (im_zero)
        return re;
    if (re_zero)
        return im + "i";
    if (!im_negative)
        return re + "+" + im + "i";
    return re + "-" + im.substr(1) + "i";
}

} // namespace

std::string Scalar::str() const {
    if (is_exact()) {
        const GaussianRational& g = exact_value();
        return join_complex(format_rational(g.re), sgn(g.re) == 0, format_rational(g.im),
                            sgn(g.im) == 0, sgn(g.im) < 0);
    }
    std::complex<double> z = to_complex();
    return join_complex(format_double(z.real()), z.real() == 0.0, format_double(z.imag()),
                        z.imag() == 0.0, std::signbit(z.imag()) && z.imag() != 0.0);
}

Scalar falling_factorial(const Scalar& x, long k) {
    if (k < 0)
        throw error("falling factorial of negative length");
    Scalar one = Scalar(1).in_mode(x.mode());
    Scalar acc = one;
    Scalar term = x;
    for (long j = 0; j < k; ++j) {
        acc = acc * term;
        term = term - one;
    }
    return acc;
}

Scalar pow_int(const Scalar& x, long k) {
    if (k < 0)
        throw error("negative power");
    Scalar acc = Scalar(1).in_mode(x.mode());
    for (long j = 0; j < k; ++j)
        acc = acc * x;
    return acc;
}

} // namespace expsolve
