#include "expsolve/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "expsolve/linalg.hpp"

namespace expsolve {

namespace {

bool poly_approx_equal(const Poly& a, const Poly& b, double tol) {
    int d = std::max(a.degree(), b.degree());
    for (int k = 0; k <= d; ++k)
        if (std::abs(a.coeff(k).to_complex() - b.coeff(k).to_complex()) > tol)
            return false;
    return true;
}

} // namespace

RecurrenceData recurrence_polys(const UDomainODE& ode) {
    const int n = ode.order();
    int band = 0;
    for (const Poly& b : ode.beta)
        band = std::max(band, std::max(b.degree(), 0));

    RecurrenceData rec;
    rec.lambda = ode.lambda;
    for (int s = 0; s <= band; ++s) {
        Poly r(Var::lambda);
        for (int i = 0; i <= n; ++i) {
            Scalar c = ode.beta[size_t(i)].coeff(s);
            if (c.is_zero())
                continue;
            Poly ff = falling_factorial_poly(Var::lambda, i);
            if (!c.is_exact())
                ff = ff.to_approx();
            r = r + ff.scaled(c);
        }
        rec.R.push_back(std::move(r));
    }

    // R_0(x) must equal the indicial polynomial at lambda + x.
    Poly expected = ode.indicial.shifted(ode.lambda);
    bool ok = expected.has_approx() || rec.R[0].has_approx()
                  ? poly_approx_equal(rec.R[0], expected,
                                      1e-9 * (1 + std::abs(expected.leading().to_complex())))
                  : rec.R[0] == expected;
    if (!ok)
        throw internal_error("recurrence head does not match the shifted indicial polynomial");
    return rec;
}

namespace {

// Nonnegative integer roots of an exact polynomial, complete via the exact
// root pass; numeric + snap when the enumeration is capped.
std::vector<long> nonneg_integer_roots(const Poly& p, const RootOptions& ropts) {
    std::vector<long> out;
    if (p.is_zero())
        throw internal_error("degree-candidate polynomial is identically zero");
    if (p.degree() == 0)
        return out;

    auto push_if_integer = [&](const Scalar& v) {
        if (!v.is_exact())
            return;
        const GaussianRational& g = v.exact_value();
        if (!g.is_real() || g.re.get_den() != 1 || sgn(g.re) < 0)
            return;
        if (!g.re.get_num().fits_slong_p())
            throw cap_error("integer root out of range");
        out.push_back(g.re.get_num().get_si());
    };

    if (!p.has_approx()) {
        RootSet rs = exact_roots(p, ropts);
        if (rs.exhaustive) {
            for (const Root& r : rs.roots)
                push_if_integer(r.value);
        } else {
            // capped enumeration: recover integer roots from the numeric pass
            for (const Root& r : all_roots(p, ropts).roots) {
                if (r.exact) {
                    push_if_integer(r.value);
                    continue;
                }
                std::complex<double> z = r.value.to_complex();
                double nearest = std::round(z.real());
                if (std::abs(z - std::complex<double>(nearest, 0)) > 1e-6 || nearest < 0)
                    continue;
                Scalar cand{mpq_class(long(nearest))};
                if (p.eval(cand).is_zero())
                    out.push_back(long(nearest));
            }
        }
    } else {
        for (const Root& r : numeric_roots(p, ropts).roots) {
            std::complex<double> z = r.value.to_complex();
            double nearest = std::round(z.real());
            if (std::abs(z - std::complex<double>(nearest, 0)) <= 1e-6 && nearest >= -0.1)
                out.push_back(long(nearest));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<long> degree_candidates(const UDomainODE& ode, const RootOptions& ropts) {
    RecurrenceData rec = recurrence_polys(ode);
    return nonneg_integer_roots(rec.R[size_t(rec.band())], ropts);
}

std::vector<Poly> poly_solutions(const UDomainODE& ode, long cap, const RootOptions& ropts,
                                 double svd_tol) {
    RecurrenceData rec = recurrence_polys(ode);
    std::vector<long> cands = nonneg_integer_roots(rec.R[size_t(rec.band())], ropts);
    if (cands.empty())
        return {};
    long D = cands.back();
    if (D > cap)
        throw cap_error("degree candidate " + std::to_string(D) + " exceeds the cap " +
                        std::to_string(cap));

    const int d = rec.band();
    Mode mode = Mode::exact;
    for (const Poly& r : rec.R)
        if (r.has_approx())
            mode = Mode::approx;

    Matrix m(size_t(D + d + 1), size_t(D + 1));
    for (long N = 0; N <= D + d; ++N)
        for (long k = std::max(0L, N - d); k <= std::min(D, N); ++k)
            m.at(size_t(N), size_t(k)) =
                rec.R[size_t(N - k)].eval(Scalar(k).in_mode(mode));

    std::vector<Poly> basis;
    for (const std::vector<Scalar>& v : nullspace(m, svd_tol)) {
        Poly u = Poly::from_coeffs(Var::t, v);
        if (!u.is_zero())
            basis.push_back(std::move(u));
    }

    // cross-check the recurrence route by direct substitution
    for (const Poly& u : basis) {
        Poly acc(Var::t);
        Poly deriv = u;
        for (size_t i = 0; i < ode.beta.size(); ++i) {
            acc = acc + ode.beta[i] * Poly::monomial(Var::t, int(i)) * deriv;
            deriv = deriv.derivative();
        }
        bool ok;
        if (!acc.has_approx()) {
            ok = acc.is_zero();
        } else {
            double scale = 0;
            for (const Poly& b : ode.beta)
                for (const Scalar& c : b.coeffs())
                    scale = std::max(scale, c.magnitude());
            ok = true;
            for (const Scalar& c : acc.coeffs())
                ok = ok && c.magnitude() <= 1e-8 * std::max(scale, 1.0);
        }
        if (!ok)
            throw internal_error("nullspace candidate fails direct substitution");
    }
    return basis;
}

std::vector<Scalar> pure_exponential(const NormalizedProblem& np, const RootOptions& ropts,
                                     double tol) {
    if (np.gamma != 0)
        throw unsupported_error("gamma > 0: no pure-exponential shortcut");
    const int n = np.n;
    int maxdeg = 0;
    for (const Poly& p : np.P)
        maxdeg = std::max(maxdeg, std::max(p.degree(), 0));

    // slice s: G_s(lambda) = sum_j [t^s] P_j * lambda^j  (P_n = 1)
    std::vector<Poly> slices;
    for (int s = 0; s <= maxdeg; ++s) {
        std::vector<Scalar> c(size_t(n) + 1, Scalar());
        for (int j = 0; j <= n; ++j)
            c[size_t(j)] = np.P[size_t(j)].coeff(s);
        slices.push_back(Poly::from_coeffs(Var::lambda, std::move(c)));
    }

    std::vector<Scalar> out;
    if (!np.has_approx()) {
        Poly g = slices[0];
        for (size_t s = 1; s < slices.size() && g.degree() > 0; ++s)
            g = poly_gcd(g, slices[s]);
        if (g.degree() < 1)
            return out;
        for (const Root& r : all_roots(g, ropts).roots)
            out.push_back(r.value);
    } else {
        double scale = 0;
        for (const Poly& s : slices)
            for (const Scalar& c : s.coeffs())
                scale = std::max(scale, c.magnitude());
        for (const Root& r : numeric_roots(slices[0], ropts).roots) {
            bool common = true;
            for (size_t s = 1; s < slices.size() && common; ++s)
                common = slices[s].eval(r.value).magnitude() <= tol * std::max(scale, 1.0);
            if (common)
                out.push_back(r.value);
        }
    }
    return out;
}

ExpSum assemble(const LogSolution& s) {
    Mode mode = s.lambda.mode();
    for (const Poly& c : s.components)
        if (c.has_approx())
            mode = Mode::approx;
    int D = 0;
    for (const Poly& c : s.components)
        D = std::max(D, std::max(c.degree(), 0));
    std::vector<ExpTerm> terms;
    for (int k = 0; k <= D; ++k) {
        std::vector<Scalar> zc;
        for (const Poly& c : s.components)
            zc.push_back(c.coeff(k));
        Poly zpoly = Poly::from_coeffs(Var::z, std::move(zc));
        if (zpoly.is_zero())
            continue;
        terms.push_back({s.lambda + Scalar(long(k)).in_mode(mode), std::move(zpoly)});
    }
    return ExpSum::from_terms(std::move(terms));
}

namespace {

bool scalar_small(const Scalar& s, double threshold) {
    return s.is_exact() ? s.is_zero() : s.magnitude() <= threshold;
}

/*
 * Gauss-Jordan over the span with pivots on the highest coordinate, so each
 * element ends up with a distinct top coordinate and the leading z-power of
 * every element is as small as the span allows. Vectors come back sorted by
 * pivot.
 */
void reduce_basis_high(std::vector<std::vector<Scalar>>& vecs, bool exact) {
    double scale = 0;
    if (!exact)
        for (const auto& v : vecs)
            for (const Scalar& s : v)
                scale = std::max(scale, s.magnitude());
    double thresh = exact ? 0.0 : 1e-8 * std::max(scale, 1e-300);

    std::vector<size_t> pivots;
    for (size_t e = 0; e < vecs.size(); ++e) {
        size_t piv = vecs[e].size();
        for (size_t j = vecs[e].size(); j-- > 0;)
            if (!scalar_small(vecs[e][j], thresh)) {
                piv = j;
                break;
            }
        if (piv == vecs[e].size())
            throw internal_error("zero vector in a nullspace basis");
        Scalar lead = vecs[e][piv];
        for (Scalar& s : vecs[e])
            s = s / lead;
        for (size_t o = 0; o < vecs.size(); ++o) {
            if (o == e || scalar_small(vecs[o][piv], thresh))
                continue;
            Scalar f = vecs[o][piv];
            for (size_t j = 0; j < vecs[o].size(); ++j)
                vecs[o][j] = vecs[o][j] - f * vecs[e][j];
        }
        pivots.push_back(piv);
    }
    if (!exact)
        for (auto& v : vecs) {
            double vecmax = 0;
            for (const Scalar& s : v)
                vecmax = std::max(vecmax, s.magnitude());
            for (Scalar& s : v)
                if (s.magnitude() <= 1e-8 * vecmax)
                    s = Scalar::approx(0.0);
        }
    std::vector<size_t> order(vecs.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivots[a] < pivots[b]; });
    std::vector<std::vector<Scalar>> sorted;
    for (size_t i : order)
        sorted.push_back(std::move(vecs[i]));
    vecs = std::move(sorted);
}

} // namespace

std::vector<LogSolution> class_ansatz_solve(const NormalizedProblem& np, const RootClass& cls,
                                            long cap, const RootOptions& ropts, double svd_tol) {
    if (np.gamma != 0)
        throw unsupported_error("gamma > 0: constructive solving unsupported");

    bool exact = !np.has_approx() && cls.all_exact && cls.base.is_exact();
    NormalizedProblem work = exact ? np : np.to_approx();
    Scalar base = exact ? cls.base : cls.base.to_approx();

    TDomainODE tdom = to_t_domain(work);
    UDomainODE udom = shift_by_lambda(tdom, base);
    std::vector<long> cands = degree_candidates(udom, ropts);
    if (cands.empty())
        return {};
    long D = cands.back();
    if (D > cap)
        throw cap_error("degree candidate " + std::to_string(D) + " exceeds the cap " +
                        std::to_string(cap));

    const int P = cls.total() - 1;
    const int n = work.n;
    Mode mode = exact ? Mode::exact : Mode::approx;

    std::vector<ExpSum> coefficients;
    for (int i = 0; i <= n; ++i)
        coefficients.push_back(coefficient_expsum(work, i));
    int dP = 0;
    for (const Poly& p : work.P)
        dP = std::max(dP, std::max(p.degree(), 0));

    // unknown (p, k) -> column p*(D+1)+k; rows are (offset N, z-power q);
    // differentiation and constant-coefficient products never raise the
    // z-degree, so q <= P
    const size_t ncols = size_t(P + 1) * size_t(D + 1);
    const size_t nrows = size_t(D + dP + 1) * size_t(P + 1);
    Matrix m(nrows, ncols);
    auto row_of = [&](long N, int q) { return size_t(N) * size_t(P + 1) + size_t(q); };

    for (int p = 0; p <= P; ++p)
        for (long k = 0; k <= D; ++k) {
            ExpSum g = ExpSum::from_terms(
                {{base + Scalar(k).in_mode(mode), Poly::monomial(Var::z, p)}});
            ExpSum image;
            ExpSum deriv = g;
            for (int i = 0; i <= n; ++i) {
                if (!coefficients[size_t(i)].is_zero())
                    image = image + coefficients[size_t(i)] * deriv;
                if (i < n)
                    deriv = deriv.derivative();
            }
            size_t col = size_t(p) * size_t(D + 1) + size_t(k);
            for (const ExpTerm& t : image.terms()) {
                long N;
                if (exact) {
                    GaussianRational diff = t.freq.exact_value() - base.exact_value();
                    if (!diff.is_real() || diff.re.get_den() != 1)
                        throw internal_error("image frequency off the class lattice");
                    N = diff.re.get_num().get_si();
                } else {
                    N = std::llround((t.freq.to_complex() - base.to_complex()).real());
                }
                if (N < 0 || N > D + dP)
                    throw internal_error("image frequency outside the expected band");
                for (int q = 0; q <= t.coeff.degree(); ++q) {
                    Scalar c = t.coeff.coeff(q);
                    if (c.is_zero())
                        continue;
                    if (q > P)
                        throw internal_error("image z-power outside the expected band");
                    m.at(row_of(N, q), col) = m.at(row_of(N, q), col) + c;
                }
            }
        }

    std::vector<std::vector<Scalar>> vecs = nullspace(m, svd_tol);
    if (vecs.empty())
        return {};
    reduce_basis_high(vecs, exact);

    std::vector<LogSolution> out;
    for (const std::vector<Scalar>& v : vecs) {
        LogSolution s;
        s.lambda = base;
        for (int p = 0; p <= P; ++p) {
            std::vector<Scalar> c(v.begin() + long(p) * (D + 1), v.begin() + (long(p) + 1) * (D + 1));
            s.components.push_back(Poly::from_coeffs(Var::t, std::move(c)));
        }
        while (!s.components.empty() && s.components.back().is_zero())
            s.components.pop_back();
        if (s.components.empty())
            throw internal_error("empty solution from a nullspace vector");
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

bool root_less(const Scalar& a, const Scalar& b) {
    if (a.is_exact() == b.is_exact())
        return Scalar::cmp(a, b) < 0;
    std::complex<double> x = a.to_complex(), y = b.to_complex();
    if (x.real() != y.real())
        return x.real() < y.real();
    if (x.imag() != y.imag())
        return x.imag() < y.imag();
    return a.is_exact();
}

// scale so the lowest (frequency, z-power) slot has coefficient 1
void normalize_solution(LogSolution& s, ExpSum& assembled) {
    if (assembled.is_zero())
        throw internal_error("zero candidate solution");
    const ExpTerm& t0 = assembled.terms().front();
    Scalar lead;
    for (const Scalar& c : t0.coeff.coeffs())
        if (!c.is_zero()) {
            lead = c;
            break;
        }
    if (lead.is_zero() || lead.is_one())
        return;
    Scalar inv = Scalar(1).in_mode(lead.mode()) / lead;
    for (Poly& c : s.components)
        c = c.scaled(inv);
    assembled = assembled.scaled(inv);
}

} // namespace

SolutionBasis solve_all(const NormalizedProblem& np, const SolveOptions& opts) {
    if (np.gamma != 0)
        throw unsupported_error(
            "gamma > 0: irregular singularity, solve unsupported (verification still available)");

    SolutionBasis out;
    out.indicial = indicial_polynomial(np);
    out.roots = all_roots(out.indicial, opts.roots);
    std::vector<RootClass> classes = group_into_classes(out.roots, opts.roots.class_tol);
    out.pure_frequencies = pure_exponential(np, opts.roots, opts.tol);

    // pure-exponential representatives first so dedup keeps them
    std::vector<std::pair<LogSolution, ExpSum>> candidates;
    for (const Scalar& freq : out.pure_frequencies) {
        LogSolution s;
        s.lambda = freq;
        s.components.push_back(Poly::constant(Var::t, Scalar(1).in_mode(freq.mode())));
        ExpSum a = assemble(s);
        candidates.push_back({std::move(s), std::move(a)});
    }

    for (const RootClass& cls : classes) {
        ClassReport report;
        report.cls = cls;
        {
            bool exact = !np.has_approx() && cls.all_exact && cls.base.is_exact();
            NormalizedProblem work = exact ? np : np.to_approx();
            UDomainODE udom =
                shift_by_lambda(to_t_domain(work), exact ? cls.base : cls.base.to_approx());
            report.candidates = degree_candidates(udom, opts.roots);
        }
        std::vector<LogSolution> sols =
            class_ansatz_solve(np, cls, opts.max_degree, opts.roots, opts.svd_tol);
        report.dimension = int(sols.size());
        out.classes.push_back(std::move(report));
        for (LogSolution& s : sols) {
            ExpSum a = assemble(s);
            candidates.push_back({std::move(s), std::move(a)});
        }
    }

    for (auto& [s, a] : candidates)
        normalize_solution(s, a);

    // drop duplicates and linear dependencies, keeping earlier entries
    double problem_scale = 0;
    for (const Poly& p : np.P)
        for (const Scalar& c : p.coeffs())
            problem_scale = std::max(problem_scale, c.magnitude());

    for (auto& [s, a] : candidates) {
        bool duplicate = false;
        for (const ExpSum& kept : out.assembled)
            if (kept == a)
                duplicate = true;
        if (duplicate)
            continue;
        std::vector<ExpSum> trial = out.assembled;
        trial.push_back(a);
        if (independence(trial, opts.svd_tol).rank <= int(out.assembled.size()))
            continue;
        out.solutions.push_back(std::move(s));
        out.assembled.push_back(std::move(a));
    }

    // verify every element before it leaves the solver
    for (const ExpSum& a : out.assembled) {
        ExpSum r = residual(a, a.has_approx() ? np.to_approx() : np);
        ZeroCheck z = is_zero(r, opts.tol, problem_scale);
        if (!z.zero)
            throw internal_error("candidate solution fails verification: residual magnitude " +
                                 std::to_string(z.worst_magnitude));
    }

    // deterministic order: by base root, then insertion (pivot) order
    std::vector<size_t> order(out.solutions.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) {
        return root_less(out.solutions[i].lambda, out.solutions[j].lambda);
    });
    std::vector<LogSolution> sorted_s;
    std::vector<ExpSum> sorted_a;
    for (size_t i : order) {
        sorted_s.push_back(std::move(out.solutions[i]));
        sorted_a.push_back(std::move(out.assembled[i]));
    }
    out.solutions = std::move(sorted_s);
    out.assembled = std::move(sorted_a);

    out.independence = independence(out.assembled, opts.svd_tol);
    if (out.independence.rank != int(out.assembled.size()))
        throw internal_error("emitted basis is not linearly independent");
    if (int(out.assembled.size()) > np.n)
        throw internal_error("basis larger than the equation order");
    int j = np.last_transcendental_index();
    if (j >= 0 && int(out.assembled.size()) > j)
        throw internal_error("basis exceeds the transcendental-coefficient bound");
    return out;
}

} // namespace expsolve
