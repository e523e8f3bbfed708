#include "expsolve/expsum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace expsolve {

namespace {

std::atomic<double> g_merge_tol{1e-9};

// Connected components of the "closer than tol" relation on frequencies.
// A component whose diameter exceeds tol cannot be merged consistently.
std::vector<size_t> proximity_components(const std::vector<ExpTerm>& terms, double tol) {
    size_t n = terms.size();
    std::vector<size_t> comp(n);
    for (size_t i = 0; i < n; ++i)
        comp[i] = i;
    std::vector<std::complex<double>> f(n);
    for (size_t i = 0; i < n; ++i)
        f[i] = terms[i].freq.to_complex();
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (std::abs(f[i] - f[j]) <= tol && comp[i] != comp[j]) {
                    size_t lo = std::min(comp[i], comp[j]);
                    size_t hi = std::max(comp[i], comp[j]);
                    for (size_t k = 0; k < n; ++k)
                        if (comp[k] == hi)
                            comp[k] = lo;
                    changed = true;
                }
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (comp[i] == comp[j] && std::abs(f[i] - f[j]) > tol)
                throw numeric_error("ambiguous frequency merge: component of diameter > tolerance");
    return comp;
}

std::vector<ExpTerm> canonicalize(std::vector<ExpTerm> terms, double merge_tol) {
    for (const ExpTerm& t : terms)
        if (t.coeff.var() != Var::z)
            throw mode_error("exponential-sum coefficient must be a polynomial in z");

    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](const ExpTerm& t) { return t.coeff.is_zero(); }),
                terms.end());
    if (terms.empty())
        return terms;

    bool exact = true;
    for (const ExpTerm& t : terms)
        if (!t.freq.is_exact() || t.coeff.has_approx()) {
            exact = false;
            break;
        }
    if (!exact)
        for (ExpTerm& t : terms) {
            t.freq = t.freq.to_approx();
            t.coeff = t.coeff.to_approx();
        }

    std::stable_sort(terms.begin(), terms.end(), [](const ExpTerm& a, const ExpTerm& b) {
        return Scalar::cmp(a.freq, b.freq) < 0;
    });

    std::vector<ExpTerm> out;
    if (exact) {
        for (ExpTerm& t : terms) {
            if (!out.empty() && out.back().freq == t.freq)
                out.back().coeff = out.back().coeff + t.coeff;
            else
                out.push_back(std::move(t));
        }
    } else {
        std::vector<size_t> comp = proximity_components(terms, merge_tol);
        // comp ids follow sorted order, so groups are contiguous after a
        // stable partition by id; gather them directly.
        std::vector<size_t> seen;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (std::find(seen.begin(), seen.end(), comp[i]) != seen.end())
                continue;
            seen.push_back(comp[i]);
            std::complex<double> centroid = 0;
            int count = 0;
            Poly sum(Var::z);
            for (size_t j = 0; j < terms.size(); ++j)
                if (comp[j] == comp[i]) {
                    centroid += terms[j].freq.to_complex();
                    ++count;
                    sum = sum + terms[j].coeff;
                }
            out.push_back({Scalar::approx(centroid / double(count)), std::move(sum)});
        }
    }

    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const ExpTerm& t) { return t.coeff.is_zero(); }),
              out.end());
    return out;
}

} // namespace

void ExpSum::set_default_merge_tolerance(double tol) { g_merge_tol.store(tol); }
double ExpSum::default_merge_tolerance() { return g_merge_tol.load(); }

ExpSum ExpSum::from_terms(std::vector<ExpTerm> terms) {
    return from_terms(std::move(terms), default_merge_tolerance());
}

ExpSum ExpSum::from_terms(std::vector<ExpTerm> terms, double merge_tol) {
    ExpSum s;
    s.terms_ = canonicalize(std::move(terms), merge_tol);
    return s;
}

ExpSum ExpSum::constant(Scalar c) { return exponential(Scalar(), std::move(c)); }

ExpSum ExpSum::exponential(Scalar freq, Scalar amplitude) {
    return from_terms({{std::move(freq), Poly::constant(Var::z, std::move(amplitude))}});
}

Mode ExpSum::mode_or(Mode fallback) const {
    for (const ExpTerm& t : terms_)
        if (!t.freq.is_zero() || !t.coeff.is_zero())
            return t.freq.is_exact() && !t.coeff.has_approx() ? Mode::exact : Mode::approx;
    return fallback;
}

bool ExpSum::has_approx() const {
    for (const ExpTerm& t : terms_)
        if (!t.freq.is_exact() || t.coeff.has_approx())
            return true;
    return false;
}

ExpSum ExpSum::operator-() const {
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const ExpTerm& t : terms_)
        out.push_back({t.freq, -t.coeff});
    return from_terms(std::move(out));
}

ExpSum operator+(const ExpSum& a, const ExpSum& b) {
    std::vector<ExpTerm> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return ExpSum::from_terms(std::move(out));
}

ExpSum operator-(const ExpSum& a, const ExpSum& b) { return a + (-b); }

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    std::vector<ExpTerm> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const ExpTerm& x : a.terms_)
        for (const ExpTerm& y : b.terms_)
            out.push_back({x.freq + y.freq, x.coeff * y.coeff});
    return ExpSum::from_terms(std::move(out));
}

ExpSum ExpSum::scaled(const Scalar& s) const {
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const ExpTerm& t : terms_)
        out.push_back({t.freq, t.coeff.scaled(s)});
    return from_terms(std::move(out));
}

ExpSum ExpSum::derivative() const {
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const ExpTerm& t : terms_)
        out.push_back({t.freq, t.coeff.derivative() + t.coeff.scaled(t.freq)});
    return from_terms(std::move(out));
}

ExpSum ExpSum::derivative(int times) const {
    ExpSum s = *this;
    for (int i = 0; i < times; ++i)
        s = s.derivative();
    return s;
}

std::complex<double> ExpSum::eval(std::complex<double> z) const {
    std::complex<double> acc = 0;
    for (const ExpTerm& t : terms_)
        acc += t.coeff.to_approx().eval(Scalar::approx(z)).to_complex() *
               std::exp(t.freq.to_complex() * z);
    return acc;
}

ExpSum ExpSum::to_approx() const {
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const ExpTerm& t : terms_)
        out.push_back({t.freq.to_approx(), t.coeff.to_approx()});
    return from_terms(std::move(out));
}

double ExpSum::max_coeff_magnitude() const {
    double m = 0;
    for (const ExpTerm& t : terms_)
        for (const Scalar& c : t.coeff.coeffs())
            m = std::max(m, c.magnitude());
    return m;
}

bool operator==(const ExpSum& a, const ExpSum& b) {
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].freq != b.terms_[i].freq || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

std::string ExpSum::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i)
            os << " + ";
        os << "(" << terms_[i].coeff.str() << ")";
        if (!terms_[i].freq.is_zero()) {
            std::string f = terms_[i].freq.str();
            bool needs_parens = f.find_first_of("+-/") != std::string::npos || f.find('i') != std::string::npos;
            os << "*e^(" << (needs_parens ? "(" + f + ")" : f) << "*z)";
        }
    }
    return os.str();
}

} // namespace expsolve
