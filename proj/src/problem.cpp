#include "expsolve/problem.hpp"

#include <algorithm>

namespace expsolve {

RawProblem RawProblem::to_approx() const {
    RawProblem p;
    p.order = order;
    p.leading = leading.to_approx();
    for (const ExpSum& a : coeffs)
        p.coeffs.push_back(a.to_approx());
    return p;
}

bool RawProblem::has_approx() const {
    if (leading.has_approx())
        return true;
    for (const ExpSum& a : coeffs)
        if (a.has_approx())
            return true;
    return false;
}

namespace {

mpq_class rational_frequency(const Scalar& freq) {
    if (!freq.is_exact())
        throw unsupported_error("non-rational frequency (approximate)");
    const GaussianRational& g = freq.exact_value();
    if (!g.is_real())
        throw unsupported_error("non-rational frequency (nonzero imaginary part)");
    return g.re;
}

// The hypothesis admits a single-term leading coefficient c*e^{mu z}; the
// equation is divided by the constant c and mu feeds the gamma bookkeeping.
std::pair<Scalar, Scalar> split_leading(const ExpSum& leading) {
    if (leading.size() != 1)
        throw unsupported_error("leading coefficient must be a single exponential term");
    const ExpTerm& t = leading.terms()[0];
    if (t.coeff.degree() > 0)
        throw unsupported_error("leading coefficient must be constant times an exponential");
    return {t.freq, t.coeff.coeff(0)};
}

} // namespace

void validate(const RawProblem& p) {
    if (p.order < 1)
        throw parse_error("order must be >= 1");
    if (int(p.coeffs.size()) != p.order)
        throw parse_error("coefficient list must cover indices 0..order-1");
    if (p.coeffs[0].is_zero())
        throw parse_error("coefficient of f must not be identically zero");
    for (const ExpSum& a : p.coeffs)
        for (const ExpTerm& t : a.terms()) {
            rational_frequency(t.freq);
            if (t.coeff.degree() > 0)
                throw unsupported_error("term coefficients must be constants");
        }
    rational_frequency(split_leading(p.leading).first);
}

CommonFrequency common_frequency(const std::vector<mpq_class>& freqs) {
    mpz_class num_gcd = 0, den_lcm = 1;
    bool any = false;
    for (const mpq_class& f : freqs) {
        if (sgn(f) == 0)
            continue;
        any = true;
        mpq_class a = abs(f);
        mpz_class g, l;
        mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), a.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den().get_mpz_t());
        num_gcd = g;
        den_lcm = l;
    }
    if (!any)
        return {mpq_class(1), true};
    mpq_class v(num_gcd, den_lcm);
    v.canonicalize();
    return {v, false};
}

namespace {

std::vector<mpq_class> all_frequencies(const RawProblem& p) {
    std::vector<mpq_class> freqs;
    for (const ExpSum& a : p.coeffs)
        for (const ExpTerm& t : a.terms())
            freqs.push_back(rational_frequency(t.freq));
    freqs.push_back(rational_frequency(split_leading(p.leading).first));
    return freqs;
}

// Term (mu, c(z)) -> (-mu, c(-z)).
ExpSum flip_argument(const ExpSum& s) {
    std::vector<ExpTerm> out;
    for (const ExpTerm& t : s.terms())
        out.push_back({-t.freq, t.coeff.arg_scaled(Scalar(-1))});
    return ExpSum::from_terms(std::move(out));
}

} // namespace

OrientationResult orientation_normalize(const RawProblem& p) {
    bool any_negative = false, any_positive = false;
    for (const mpq_class& f : all_frequencies(p)) {
        if (sgn(f) < 0)
            any_negative = true;
        if (sgn(f) > 0)
            any_positive = true;
    }
    if (!any_negative || any_positive)
        return {p, false};

    RawProblem q;
    q.order = p.order;
    q.leading = flip_argument(p.leading);
    for (int i = 0; i < p.order; ++i) {
        ExpSum a = flip_argument(p.coeffs[size_t(i)]);
        if ((p.order - i) % 2 != 0)
            a = a.scaled(Scalar(-1));
        q.coeffs.push_back(std::move(a));
    }
    return {std::move(q), true};
}

NormalizedProblem to_canonical_form(const OrientationResult& o) {
    const RawProblem& p = o.problem;
    validate(p);
    const int n = p.order;

    auto [lead_freq, lead_coeff] = split_leading(p.leading);
    if (lead_coeff.is_zero())
        throw parse_error("leading coefficient must not vanish");
    bool leading_was_unit = lead_coeff.is_one() && lead_freq.is_zero();

    CommonFrequency cf = common_frequency(all_frequencies(p));
    const mpq_class& lp = cf.value;

    // Rescale w = lambda' z and divide by lambda'^n * lead_coeff: the
    // coefficient of f^(i) picks up lambda'^{i-n}, frequencies become
    // integer exponents of e^w.
    auto exponent_of = [&](const Scalar& freq) -> long {
        mpq_class e = rational_frequency(freq) / lp;
        if (e.get_den() != 1)
            throw internal_error("frequency not an integer multiple of lambda'");
        if (!e.get_num().fits_slong_p())
            throw unsupported_error("exponent out of range");
        return e.get_num().get_si();
    };

    long lead_exp = exponent_of(lead_freq);
    long min_exp = std::min(lead_exp, 0L);
    std::vector<std::vector<std::pair<long, Scalar>>> scaled(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        mpq_class factor_q = 1; // lambda'^{i-n}
        for (int k = 0; k < n - i; ++k)
            factor_q /= lp;
        Scalar factor = Scalar(factor_q) / lead_coeff;
        for (const ExpTerm& t : p.coeffs[size_t(i)].terms()) {
            long e = exponent_of(t.freq);
            min_exp = std::min(min_exp, e);
            scaled[size_t(i)].push_back({e, t.coeff.coeff(0) * factor});
        }
    }

    const int M = int(-min_exp);
    NormalizedProblem np;
    np.n = n;
    np.gamma = int(lead_exp) + M;
    np.lambda_prime = lp;
    np.flipped = o.flipped;
    np.shift_m = M;
    np.leading_was_unit = leading_was_unit;
    for (int i = 0; i < n; ++i) {
        std::vector<Scalar> c;
        for (const auto& [e, v] : scaled[size_t(i)]) {
            size_t k = size_t(e + M);
            if (c.size() <= k)
                c.resize(k + 1, Scalar());
            c[k] += v;
        }
        np.P.push_back(Poly::from_coeffs(Var::t, std::move(c)));
    }
    np.P.push_back(Poly::monomial(Var::t, np.gamma));
    if (np.P[0].is_zero())
        throw parse_error("coefficient of f vanished during normalization");
    return np;
}

NormalizedProblem normalize(const RawProblem& p) { return to_canonical_form(orientation_normalize(p)); }

NormalizedProblem NormalizedProblem::to_approx() const {
    NormalizedProblem q = *this;
    for (Poly& p : q.P)
        p = p.to_approx();
    return q;
}

bool NormalizedProblem::has_approx() const {
    for (const Poly& p : P)
        if (p.has_approx())
            return true;
    return false;
}

int NormalizedProblem::last_transcendental_index() const {
    for (int j = n - 1; j >= 0; --j)
        if (P[size_t(j)].degree() > 0)
            return j;
    return -1;
}

ExpSum denormalize_solution(const ExpSum& s, const NormalizedProblem& np) {
    Mode m = s.mode_or(Mode::exact);
    Scalar factor = Scalar(np.lambda_prime).in_mode(m);
    if (np.flipped)
        factor = -factor;
    std::vector<ExpTerm> out;
    for (const ExpTerm& t : s.terms())
        out.push_back({t.freq * factor, t.coeff.arg_scaled(factor)});
    return ExpSum::from_terms(std::move(out));
}

ExpSum coefficient_expsum(const NormalizedProblem& np, int i) {
    const Poly& p = np.P.at(size_t(i));
    std::vector<ExpTerm> terms;
    for (int k = 0; k <= std::max(p.degree(), 0); ++k) {
        Scalar c = p.coeff(k);
        if (c.is_zero())
            continue;
        terms.push_back({Scalar(long(k)).in_mode(c.mode()), Poly::constant(Var::z, c)});
    }
    return ExpSum::from_terms(std::move(terms));
}

} // namespace expsolve
