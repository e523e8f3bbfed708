#include "expsolve/poly.hpp"

#include <sstream>

namespace expsolve {

const char* var_name(Var v) {
    switch (v) {
    case Var::t: return "t";
    case Var::lambda: return "x";
    case Var::z: return "z";
    }
    return "?";
}

Poly Poly::constant(Var v, Scalar c) {
    Poly p(v);
    if (!c.is_zero())
        p.c_.push_back(std::move(c));
    return p;
}

Poly Poly::monomial(Var v, int k, Scalar c) {
    Poly p(v);
    if (!c.is_zero()) {
        p.c_.assign(size_t(k) + 1, Scalar());
        p.c_[size_t(k)] = std::move(c);
    }
    return p;
}

Poly Poly::from_coeffs(Var v, std::vector<Scalar> coeffs) {
    Poly p(v);
    p.c_ = std::move(coeffs);
    p.trim();
    p.check_consistent_mode();
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

void Poly::check_consistent_mode() const {
    bool exact = false, approx = false;
    for (const Scalar& s : c_) {
        if (s.is_zero())
            continue;
        (s.is_exact() ? exact : approx) = true;
    }
    if (exact && approx)
        throw mode_error("polynomial mixes exact and approximate coefficients");
}

Scalar Poly::coeff(int k) const {
    if (k < 0 || size_t(k) >= c_.size())
        return Scalar();
    return c_[size_t(k)];
}

Scalar Poly::leading() const {
    if (c_.empty())
        return Scalar();
    return c_.back();
}

Mode Poly::mode_or(Mode fallback) const {
    for (const Scalar& s : c_)
        if (!s.is_zero())
            return s.mode();
    return fallback;
}

bool Poly::has_approx() const {
    for (const Scalar& s : c_)
        if (!s.is_exact())
            return true;
    return false;
}

namespace {

void require_same_var(const Poly& a, const Poly& b) {
    if (a.var() != b.var())
        throw mode_error(std::string("polynomial variable mismatch: ") + var_name(a.var()) +
                         " vs " + var_name(b.var()));
}

} // namespace

Poly Poly::operator-() const {
    std::vector<Scalar> out;
    out.reserve(c_.size());
    for (const Scalar& s : c_)
        out.push_back(-s);
    return from_coeffs(var_, std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same_var(a, b);
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), Scalar());
    for (size_t i = 0; i < a.c_.size(); ++i)
        out[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i)
        out[i] += b.c_[i];
    return Poly::from_coeffs(a.var(), std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    require_same_var(a, b);
    if (a.is_zero() || b.is_zero())
        return Poly(a.var());
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar());
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] += a.c_[i] * b.c_[j];
    return Poly::from_coeffs(a.var(), std::move(out));
}

// Parameterized operations promote to approx when either side is
// approximate; an approximate value never silently becomes exact.
Mode Poly::joint_mode(const Scalar& s) const {
    return (!s.is_exact() || has_approx()) ? Mode::approx : Mode::exact;
}

Poly Poly::scaled(const Scalar& s) const {
    Mode m = joint_mode(s);
    Scalar f = s.in_mode(m);
    std::vector<Scalar> out;
    out.reserve(c_.size());
    for (const Scalar& c : c_)
        out.push_back(c.in_mode(m) * f);
    return from_coeffs(var_, std::move(out));
}

Poly Poly::derivative() const {
    Mode m = mode_or(Mode::exact);
    std::vector<Scalar> out;
    for (size_t i = 1; i < c_.size(); ++i)
        out.push_back(c_[i] * Scalar(long(i)).in_mode(m));
    return from_coeffs(var_, std::move(out));
}

Scalar Poly::eval(const Scalar& x) const {
    Mode m = joint_mode(x);
    Scalar xx = x.in_mode(m);
    Scalar acc = Scalar().in_mode(m);
    for (size_t i = c_.size(); i-- > 0;)
        acc = acc * xx + c_[i].in_mode(m);
    return acc;
}

Poly Poly::shifted(const Scalar& c) const {
    // Synthetic Taylor shift: repeated Horner passes accumulate p(x + c).
    Mode m = joint_mode(c);
    Scalar cc = c.in_mode(m);
    std::vector<Scalar> a;
    a.reserve(c_.size());
    for (const Scalar& v : c_)
        a.push_back(v.in_mode(m));
    if (a.empty())
        return Poly(var_);
    size_t n = a.size();
    for (size_t k = 0; k + 1 < n; ++k)
        for (size_t j = n - 1; j-- > k;)
            a[j] += cc * a[j + 1];
    return from_coeffs(var_, std::move(a));
}

Poly Poly::arg_scaled(const Scalar& s) const {
    Mode m = joint_mode(s);
    Scalar f = s.in_mode(m);
    std::vector<Scalar> out;
    out.reserve(c_.size());
    Scalar p = Scalar(1).in_mode(m);
    for (size_t i = 0; i < c_.size(); ++i) {
        out.push_back(c_[i].in_mode(m) * p);
        p = p * f;
    }
    return from_coeffs(var_, std::move(out));
}

Poly Poly::to_approx() const {
    std::vector<Scalar> out;
    out.reserve(c_.size());
    for (const Scalar& s : c_)
        out.push_back(s.to_approx());
    return from_coeffs(var_, std::move(out));
}

Poly Poly::retagged(Var v) const {
    Poly p(v);
    p.c_ = c_;
    return p;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.var() != b.var() || a.c_.size() != b.c_.size())
        return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i])
            return false;
    return true;
}

std::string Poly::str() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero())
            continue;
        std::string cs = c_[i].str();
        if (!first)
            os << (cs.size() && cs[0] == '-' ? " - " : " + "), cs = cs[0] == '-' ? cs.substr(1) : cs;
        first = false;
        bool unit = (cs == "1") && i > 0;
        if (!unit) {
            bool needs_parens = cs.find_first_of("+-") != std::string::npos && i > 0;
            os << (needs_parens ? "(" + cs + ")" : cs);
        }
        if (i > 0) {
            if (!unit)
                os << "*";
            os << var_name(var_);
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    require_same_var(a, b);
    if (b.is_zero())
        throw error("polynomial division by zero");
    if (a.degree() < b.degree())
        return {Poly(a.var()), a};
    std::vector<Scalar> rem = a.coeffs();
    Scalar lead = b.leading();
    int db = b.degree();
    std::vector<Scalar> quot(size_t(a.degree() - db) + 1, Scalar());
    for (int k = a.degree() - db; k >= 0; --k) {
        Scalar q = rem[size_t(k + db)] / lead;
        quot[size_t(k)] = q;
        if (q.is_zero())
            continue;
        for (int j = 0; j <= db; ++j)
            rem[size_t(k + j)] -= q * b.coeff(j);
    }
    return {Poly::from_coeffs(a.var(), std::move(quot)), Poly::from_coeffs(a.var(), std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero())
        a = a.scaled(Scalar(1) / a.leading());
    return a;
}

Poly falling_factorial_poly(Var v, int k) {
    Poly acc = Poly::constant(v, Scalar(1));
    for (int j = 0; j < k; ++j)
        acc = acc * Poly::from_coeffs(v, {Scalar(-j), Scalar(1)});
    return acc;
}

mpz_class binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    // Pascal recurrence, additions only.
    std::vector<mpz_class> row(size_t(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j)
            row[size_t(j)] += row[size_t(j) - 1];
    return row[size_t(k)];
}

} // namespace expsolve
