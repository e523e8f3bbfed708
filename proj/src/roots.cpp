#include "expsolve/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

namespace expsolve {

int RootSet::total_multiplicity() const {
    int t = 0;
    for (const Root& r : roots)
        t += r.multiplicity;
    return t;
}

int RootClass::total() const {
    int t = 0;
    for (int m : multiplicities)
        t += m;
    return t;
}

namespace {

using cd = std::complex<double>;

// Order mixing exact and approximate values deterministically: numeric
// (re, im) first, exactness as tie-break.
bool root_value_less(const Scalar& a, const Scalar& b) {
    if (a.is_exact() == b.is_exact())
        return Scalar::cmp(a, b) < 0;
    cd x = a.to_complex(), y = b.to_complex();
    if (x.real() != y.real())
        return x.real() < y.real();
    if (x.imag() != y.imag())
        return x.imag() < y.imag();
    return a.is_exact();
}

void sort_roots(std::vector<Root>& roots) {
    std::sort(roots.begin(), roots.end(),
              [](const Root& a, const Root& b) { return root_value_less(a.value, b.value); });
}

// ---- exact pass ---------------------------------------------------------

struct GRLess {
    bool operator()(const GaussianRational& a, const GaussianRational& b) const {
        int c = cmp(a.re, b.re);
        if (c != 0)
            return c < 0;
        return cmp(a.im, b.im) < 0;
    }
};

// Strips x^k, returning the multiplicity of the zero root.
int strip_zero_root(Poly& p) {
    int k = 0;
    while (!p.is_zero() && p.coeff(0).is_zero()) {
        std::vector<Scalar> c(p.coeffs().begin() + 1, p.coeffs().end());
        p = Poly::from_coeffs(p.var(), std::move(c));
        ++k;
    }
    return k;
}

std::optional<std::vector<unsigned long>> divisors_up_to_cap(const mpz_class& n, long cap) {
    if (!n.fits_ulong_p())
        return std::nullopt;
    unsigned long v = n.get_ui();
    if (v == 0)
        return std::nullopt;
    if (v > 4000000000000UL) // trial division beyond 2e6 steps is not worth it
        return std::nullopt;
    std::vector<unsigned long> d;
    for (unsigned long i = 1; i * i <= v; ++i) {
        if (v % i)
            continue;
        d.push_back(i);
        if (i != v / i)
            d.push_back(v / i);
        if (long(d.size()) > cap)
            return std::nullopt;
    }
    std::sort(d.begin(), d.end());
    return d;
}

unsigned long isqrt_ul(unsigned long v) {
    auto r = (unsigned long)std::sqrt(double(v));
    while (r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    return r;
}

// All Gaussian integers of the given norm, as (re, im) pairs.
void gaussian_with_norm(unsigned long d, std::set<std::pair<long, long>>& out) {
    for (unsigned long a = 0; a * a <= d; ++a) {
        unsigned long b2 = d - a * a;
        unsigned long b = isqrt_ul(b2);
        if (b * b != b2)
            continue;
        long la = long(a), lb = long(b);
        for (long sa : {la, -la})
            for (long sb : {lb, -lb}) {
                out.insert({sa, sb});
                out.insert({sb, sa});
            }
    }
}

} // namespace

RootSet exact_roots(const Poly& p, const RootOptions& opts) {
    if (p.is_zero())
        throw error("root finding on the zero polynomial");
    if (p.has_approx())
        throw mode_error("exact root finding needs exact coefficients");

    RootSet rs;
    Poly work = p;
    int zero_mult = strip_zero_root(work);
    if (zero_mult > 0)
        rs.roots.push_back({Scalar(), zero_mult, true});
    if (work.degree() < 1)
        return rs;

    // clear denominators -> Gaussian integer coefficients
    mpz_class scale = 1;
    for (const Scalar& c : work.coeffs()) {
        const GaussianRational& g = c.exact_value();
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), g.re.get_den().get_mpz_t(), g.im.get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), scale.get_mpz_t());
        scale = l;
    }
    Poly integral = work.scaled(Scalar(mpq_class(scale)));

    mpz_class n0_q = integral.coeff(0).exact_value().norm().get_num();
    mpz_class nn_q = integral.leading().exact_value().norm().get_num();

    auto div0 = divisors_up_to_cap(n0_q, opts.candidate_cap);
    auto divn = divisors_up_to_cap(nn_q, opts.candidate_cap);
    if (!div0 || !divn) {
        rs.exhaustive = false;
        return rs;
    }

    // representation scans cost ~ sum sqrt(d); budget them
    double budget = 0;
    for (unsigned long d : *div0)
        budget += std::sqrt(double(d));
    for (unsigned long d : *divn)
        budget += std::sqrt(double(d));
    if (budget > 5e7) {
        rs.exhaustive = false;
        return rs;
    }

    std::set<std::pair<long, long>> nums, dens;
    for (unsigned long d : *div0)
        gaussian_with_norm(d, nums);
    for (unsigned long d : *divn)
        gaussian_with_norm(d, dens);
    dens.erase({0, 0});
    nums.erase({0, 0}); // zero root already stripped

    if (long(nums.size()) * long(dens.size()) > opts.candidate_cap) {
        rs.exhaustive = false;
        return rs;
    }

    std::set<GaussianRational, GRLess> candidates;
    for (const auto& [pa, pb] : nums)
        for (const auto& [qa, qb] : dens) {
            GaussianRational num{mpq_class(pa), mpq_class(pb)};
            GaussianRational den{mpq_class(qa), mpq_class(qb)};
            candidates.insert(num / den);
        }

    for (const GaussianRational& r : candidates) {
        if (work.degree() < 1)
            break;
        Scalar rv{r};
        int mult = 0;
        while (work.degree() >= 1 && work.eval(rv).is_zero()) {
            Poly divisor = Poly::from_coeffs(Var::lambda, {-rv, Scalar(1)}).retagged(work.var());
            auto [q, rem] = poly_divmod(work, divisor);
            if (!rem.is_zero())
                throw internal_error("nonzero remainder deflating a verified root");
            work = std::move(q);
            ++mult;
        }
        if (mult > 0)
            rs.roots.push_back({rv, mult, true});
    }
    sort_roots(rs.roots);
    return rs;
}

// ---- numeric pass -------------------------------------------------------

namespace {

cd poly_eval_cd(const std::vector<cd>& c, cd z) {
    cd acc = 0;
    for (size_t i = c.size(); i-- > 0;)
        acc = acc * z + c[i];
    return acc;
}

std::vector<cd> derivative_cd(const std::vector<cd>& c) {
    std::vector<cd> d;
    for (size_t i = 1; i < c.size(); ++i)
        d.push_back(double(i) * c[i]);
    return d;
}

// |p(r)| at the level of mere evaluation noise; what an exactly known root
// would produce in floating point.
double evaluation_noise(const std::vector<cd>& c, cd r) {
    double s = 0, pw = 1, ar = std::abs(r);
    for (const cd& x : c) {
        s += std::abs(x) * pw;
        pw *= ar;
    }
    return 100.0 * 1e-16 * std::max(s, 1e-30);
}

// One Aberth-Ehrlich run; returns approximations or nullopt on stagnation.
// A root is frozen once |p(z)| drops to evaluation noise, the reliable stop
// for ill-conditioned clusters where the step size chatters.
std::optional<std::vector<cd>> aberth(const std::vector<cd>& c, int max_iter, double angle0) {
    size_t n = c.size() - 1;
    std::vector<cd> dc = derivative_cd(c);
    double cauchy = 0;
    for (size_t i = 0; i < n; ++i)
        cauchy = std::max(cauchy, std::abs(c[i]));
    cauchy += 1.0;
    double r0 = std::clamp(std::pow(std::abs(c[0]) + 1e-30, 1.0 / double(n)), 0.25, cauchy);

    std::vector<cd> z(n);
    std::vector<bool> done(n, false);
    for (size_t k = 0; k < n; ++k) {
        double th = 2 * M_PI * double(k) / double(n) + angle0;
        z[k] = r0 * cd(std::cos(th), std::sin(th));
    }

    for (int it = 0; it < max_iter; ++it) {
        double worst = 0;
        bool all_done = true;
        for (size_t k = 0; k < n; ++k) {
            if (done[k])
                continue;
            cd pv = poly_eval_cd(c, z[k]);
            if (std::abs(pv) <= evaluation_noise(c, z[k])) {
                done[k] = true;
                continue;
            }
            all_done = false;
            cd dv = poly_eval_cd(dc, z[k]);
            if (dv == 0.0) {
                z[k] += 1e-6 * (std::abs(z[k]) + 1.0);
                worst = 1;
                continue;
            }
            cd newton = pv / dv;
            cd s = 0;
            for (size_t j = 0; j < n; ++j) {
                if (j == k)
                    continue;
                cd diff = z[k] - z[j];
                if (diff == 0.0)
                    diff = 1e-12 * (std::abs(z[k]) + 1.0);
                s += 1.0 / diff;
            }
            cd denom = 1.0 - newton * s;
            cd w = denom == 0.0 ? newton : newton / denom;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
        }
        if (all_done || worst < 1e-14)
            return z;
    }
    return std::nullopt;
}

// Newton on the (m-1)th derivative, where an m-fold root of p is simple.
cd polish_root(const std::vector<cd>& c, cd z0, int mult) {
    std::vector<cd> q = c;
    for (int i = 1; i < mult; ++i)
        q = derivative_cd(q);
    std::vector<cd> dq = derivative_cd(q);
    cd z = z0;
    cd best = z0;
    double best_val = std::abs(poly_eval_cd(q, z0));
    for (int it = 0; it < 60; ++it) {
        cd qv = poly_eval_cd(q, z);
        cd dv = poly_eval_cd(dq, z);
        if (dv == 0.0)
            break;
        z -= qv / dv;
        if (std::abs(z - z0) > 1.0 + std::abs(z0))
            break; // wandered off, keep the best seen
        double v = std::abs(poly_eval_cd(q, z));
        if (v < best_val) {
            best_val = v;
            best = z;
        }
        if (v == 0.0)
            break;
    }
    return best;
}

struct Cluster {
    cd root;
    int size = 1;
};

/*
 * Attempt-and-certify agglomeration. An m-fold root is located by the
 * simultaneous iteration only to about eps^(1/m), so nearby approximations
 * are tentatively merged with a generous multiplicity-adaptive radius; a
 * merge is committed only if the polished candidate root brings |p| down to
 * evaluation noise. A false merge of close but distinct roots lands on a
 * critical point instead and fails that certificate.
 */
std::vector<Cluster> agglomerate(const std::vector<cd>& c, std::vector<cd> pts,
                                 double cluster_tol) {
    int degree = int(c.size()) - 1;
    std::vector<Cluster> cl;
    for (cd p : pts)
        cl.push_back({p, 1});
    bool progress = true;
    while (progress && cl.size() > 1) {
        progress = false;
        for (size_t i = 0; i < cl.size() && !progress; ++i)
            for (size_t j = i + 1; j < cl.size() && !progress; ++j) {
                int m = cl[i].size + cl[j].size;
                if (m > degree)
                    continue;
                double scale = 1.0 + std::abs(cl[i].root);
                int lookahead = std::min(m + 1, degree);
                double radius = std::max(
                    cluster_tol, 100.0 * std::pow(1e-16, 1.0 / double(lookahead)) * scale);
                double dist = std::abs(cl[i].root - cl[j].root);
                if (dist > radius)
                    continue;
                cd centroid = (cl[i].root * double(cl[i].size) +
                               cl[j].root * double(cl[j].size)) /
                              double(m);
                cd polished = polish_root(c, centroid, m);
                if (std::abs(polished - centroid) > 2 * radius)
                    continue;
                if (std::abs(poly_eval_cd(c, polished)) > evaluation_noise(c, polished))
                    continue;
                cl[i] = {polished, m};
                cl.erase(cl.begin() + long(j));
                progress = true;
            }
    }
    return cl;
}

} // namespace

RootSet numeric_roots(const Poly& p, const RootOptions& opts) {
    if (p.is_zero())
        throw error("root finding on the zero polynomial");

    std::vector<cd> c;
    for (const Scalar& s : p.coeffs())
        c.push_back(s.to_complex());

    RootSet rs;
    size_t zero_mult = 0;
    while (c.size() > 1 && c.front() == 0.0) {
        c.erase(c.begin());
        ++zero_mult;
    }
    if (zero_mult > 0)
        rs.roots.push_back({Scalar::approx(0.0), int(zero_mult), false});
    if (c.size() <= 1) {
        sort_roots(rs.roots);
        return rs;
    }

    cd lead = c.back();
    for (cd& x : c)
        x /= lead;
    double pnorm = 0;
    for (cd x : c)
        pnorm = std::max(pnorm, std::abs(x));

    std::optional<std::vector<cd>> z;
    for (double angle : {0.4, 1.1, 2.3}) {
        z = aberth(c, opts.max_iterations, angle);
        if (z)
            break;
    }
    if (!z)
        throw numeric_error("root iteration did not converge within the iteration cap");

    std::vector<Cluster> clusters = agglomerate(c, *z, opts.cluster_tol);

    for (const Cluster& cl : clusters) {
        if (std::abs(poly_eval_cd(c, cl.root)) > opts.cluster_tol * pnorm)
            throw numeric_error("computed root fails its backward-error certificate");
        rs.roots.push_back({Scalar::approx(cl.root), cl.size, false});
    }
    sort_roots(rs.roots);
    return rs;
}

std::optional<Scalar> snap_to_exact(std::complex<double> r, const Poly& p, long denominator_bound) {
    if (p.has_approx())
        throw mode_error("snapping needs exact polynomial coefficients");
    if (std::abs(r.real()) > 1e12 || std::abs(r.imag()) > 1e12)
        return std::nullopt;
    for (long q = 1; q <= denominator_bound; ++q) {
        long nr = std::llround(r.real() * double(q));
        long ni = std::llround(r.imag() * double(q));
        cd cand(double(nr) / double(q), double(ni) / double(q));
        if (std::abs(cand - r) > 1e-4)
            continue;
        mpq_class re(nr, q), im(ni, q);
        re.canonicalize();
        im.canonicalize();
        Scalar v{GaussianRational{re, im}};
        if (p.eval(v).is_zero())
            return v;
    }
    return std::nullopt;
}

RootSet all_roots(const Poly& p, const RootOptions& opts) {
    if (p.is_zero())
        throw error("root finding on the zero polynomial");
    if (p.has_approx())
        return numeric_roots(p, opts);

    RootSet rs = exact_roots(p, opts);
    Poly rem = p;
    for (const Root& r : rs.roots) {
        Poly divisor = Poly::from_coeffs(Var::lambda, {-r.value, Scalar(1)}).retagged(p.var());
        for (int k = 0; k < r.multiplicity; ++k) {
            auto [q, re] = poly_divmod(rem, divisor);
            if (!re.is_zero())
                throw internal_error("exact root does not divide the polynomial");
            rem = std::move(q);
        }
    }

    if (rem.degree() >= 1 && !rs.exhaustive) {
        // the enumeration was capped; recover rational roots numerically
        bool progress = true;
        while (progress && rem.degree() >= 1) {
            progress = false;
            RootSet nr = numeric_roots(rem, opts);
            for (const Root& cand : nr.roots) {
                auto snapped = snap_to_exact(cand.value.to_complex(), rem,
                                             opts.snap_denominator_bound);
                if (!snapped)
                    continue;
                Poly divisor =
                    Poly::from_coeffs(Var::lambda, {-*snapped, Scalar(1)}).retagged(p.var());
                int mult = 0;
                while (rem.degree() >= 1 && rem.eval(*snapped).is_zero()) {
                    auto [q, re] = poly_divmod(rem, divisor);
                    if (!re.is_zero())
                        break;
                    rem = std::move(q);
                    ++mult;
                }
                if (mult > 0) {
                    rs.roots.push_back({*snapped, mult, true});
                    progress = true;
                    break;
                }
            }
        }
    }
    if (rem.degree() >= 1) {
        RootSet nr = numeric_roots(rem, opts);
        rs.roots.insert(rs.roots.end(), nr.roots.begin(), nr.roots.end());
    }

    sort_roots(rs.roots);
    if (rs.total_multiplicity() != p.degree())
        throw internal_error("root multiplicities do not sum to the degree");
    return rs;
}

namespace {

bool integer_difference(const Scalar& a, const Scalar& b, double class_tol, bool& near_boundary) {
    if (a.is_exact() && b.is_exact()) {
        GaussianRational d = a.exact_value() - b.exact_value();
        return d.is_real() && d.re.get_den() == 1;
    }
    cd d = a.to_complex() - b.to_complex();
    double nearest = std::round(d.real());
    double frac = std::abs(d.real() - nearest);
    if (std::abs(frac - 0.5) < 10 * class_tol)
        near_boundary = true;
    return std::abs(d - cd(nearest, 0.0)) < class_tol;
}

} // namespace

std::vector<RootClass> group_into_classes(const RootSet& rs, double class_tol) {
    size_t n = rs.roots.size();
    std::vector<size_t> comp(n);
    for (size_t i = 0; i < n; ++i)
        comp[i] = i;
    std::vector<bool> boundary_flag(n, false);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            bool near = false;
            bool linked = integer_difference(rs.roots[i].value, rs.roots[j].value, class_tol, near);
            if (near) {
                boundary_flag[i] = true;
                boundary_flag[j] = true;
            }
            if (linked && comp[i] != comp[j]) {
                size_t lo = std::min(comp[i], comp[j]), hi = std::max(comp[i], comp[j]);
                for (size_t k = 0; k < n; ++k)
                    if (comp[k] == hi)
                        comp[k] = lo;
            }
        }

    std::vector<RootClass> classes;
    std::vector<size_t> reps;
    for (size_t i = 0; i < n; ++i) {
        if (std::find(reps.begin(), reps.end(), comp[i]) != reps.end())
            continue;
        reps.push_back(comp[i]);
        std::vector<size_t> members;
        for (size_t j = 0; j < n; ++j)
            if (comp[j] == comp[i])
                members.push_back(j);
        std::sort(members.begin(), members.end(), [&](size_t a, size_t b) {
            return root_value_less(rs.roots[a].value, rs.roots[b].value);
        });

        RootClass cls;
        cls.base = rs.roots[members[0]].value;
        bool warn = false;
        for (size_t m : members) {
            const Root& r = rs.roots[m];
            long off;
            if (r.value.is_exact() && cls.base.is_exact()) {
                GaussianRational d = r.value.exact_value() - cls.base.exact_value();
                if (!d.is_real() || d.re.get_den() != 1)
                    throw internal_error("non-integer offset inside a root class");
                if (!d.re.get_num().fits_slong_p())
                    throw unsupported_error("root class offset out of range");
                off = d.re.get_num().get_si();
            } else {
                off = std::llround((r.value.to_complex() - cls.base.to_complex()).real());
            }
            if (off < 0)
                throw internal_error("negative offset from the class base");
            cls.offsets.push_back(int(off));
            cls.multiplicities.push_back(r.multiplicity);
            cls.all_exact = cls.all_exact && r.exact;
            warn = warn || boundary_flag[m];
        }
        if (warn)
            cls.warnings.push_back("a pairwise difference sits near a half-integer; "
                                   "class membership may be sensitive to the tolerance");
        classes.push_back(std::move(cls));
    }

    std::sort(classes.begin(), classes.end(),
              [](const RootClass& a, const RootClass& b) { return root_value_less(a.base, b.base); });
    return classes;
}

} // namespace expsolve
