#include "expsolve/verify.hpp"

#include <algorithm>
#include <cmath>

#include "expsolve/linalg.hpp"

namespace expsolve {

namespace {

void require_matching_modes(bool f_approx, bool p_approx) {
    if (f_approx != p_approx)
        throw mode_error("candidate and problem live in different scalar modes");
}

ExpSum accumulate_residual(const ExpSum& f, const std::vector<ExpSum>& coefficients) {
    ExpSum acc;
    ExpSum deriv = f;
    for (size_t i = 0; i < coefficients.size(); ++i) {
        if (!coefficients[i].is_zero())
            acc = acc + coefficients[i] * deriv;
        if (i + 1 < coefficients.size())
            deriv = deriv.derivative();
    }
    return acc;
}

} // namespace

ExpSum residual(const ExpSum& f, const RawProblem& p) {
    if (f.is_zero())
        return ExpSum();
    require_matching_modes(f.has_approx(), p.has_approx());
    std::vector<ExpSum> coefficients = p.coeffs;
    coefficients.push_back(p.leading);
    return accumulate_residual(f, coefficients);
}

ExpSum residual(const ExpSum& f, const NormalizedProblem& np) {
    if (f.is_zero())
        return ExpSum();
    require_matching_modes(f.has_approx(), np.has_approx());
    std::vector<ExpSum> coefficients;
    for (int i = 0; i <= np.n; ++i)
        coefficients.push_back(coefficient_expsum(np, i));
    return accumulate_residual(f, coefficients);
}

ZeroCheck is_zero(const ExpSum& r, double tol, double input_scale) {
    ZeroCheck c;
    for (const ExpTerm& t : r.terms()) {
        const auto& coeffs = t.coeff.coeffs();
        for (size_t k = 0; k < coeffs.size(); ++k) {
            double m = coeffs[k].magnitude();
            if (m > c.worst_magnitude) {
                c.worst_magnitude = m;
                c.worst_freq = t.freq;
                c.worst_zpow = int(k);
            }
        }
    }
    if (!r.has_approx())
        c.zero = r.is_zero(); // exact: structural emptiness decides
    else
        c.zero = c.worst_magnitude < tol * std::max(input_scale, 1e-300);
    return c;
}

IndependenceReport independence(const std::vector<ExpSum>& basis, double rel_tol) {
    IndependenceReport rep;
    if (basis.empty())
        return rep;

    bool any_approx = false;
    for (const ExpSum& b : basis)
        any_approx = any_approx || b.has_approx();
    std::vector<ExpSum> work;
    for (const ExpSum& b : basis)
        work.push_back(any_approx ? b.to_approx() : b);

    // union of (frequency, z-power) slots; approximate frequencies cluster
    // within the merge tolerance
    struct Slot {
        Scalar freq;
        int zpow;
    };
    std::vector<Slot> slots;
    auto slot_index = [&](const Scalar& freq, int zpow) -> size_t {
        for (size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].zpow != zpow)
                continue;
            if (!any_approx && slots[i].freq == freq)
                return i;
            if (any_approx &&
                std::abs(slots[i].freq.to_complex() - freq.to_complex()) <=
                    ExpSum::default_merge_tolerance())
                return i;
        }
        slots.push_back({freq, zpow});
        return slots.size() - 1;
    };

    std::vector<std::vector<std::pair<size_t, Scalar>>> entries(work.size());
    for (size_t e = 0; e < work.size(); ++e)
        for (const ExpTerm& t : work[e].terms())
            for (int k = 0; k <= std::max(t.coeff.degree(), 0); ++k) {
                Scalar c = t.coeff.coeff(k);
                if (c.is_zero())
                    continue;
                entries[e].push_back({slot_index(t.freq, k), c});
            }

    // deterministic slot order: by (freq, zpow)
    std::vector<size_t> order(slots.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        int c = Scalar::cmp(slots[a].freq, slots[b].freq);
        if (c != 0)
            return c < 0;
        return slots[a].zpow < slots[b].zpow;
    });
    std::vector<size_t> position(slots.size());
    for (size_t i = 0; i < order.size(); ++i)
        position[order[i]] = i;

    Matrix m(work.size(), slots.size());
    for (size_t e = 0; e < work.size(); ++e)
        for (const auto& [slot, c] : entries[e])
            m.at(e, position[slot]) = m.at(e, position[slot]) + c;

    rep.rank = rank(m, rel_tol);
    for (size_t col : elimination_info(m, rel_tol).pivot_cols) {
        const Slot& s = slots[order[col]];
        rep.pivot_slots.push_back({s.freq, s.zpow});
    }
    return rep;
}

namespace {

SpotcheckReport spotcheck(const ExpSum& r, const std::vector<std::complex<double>>& points) {
    SpotcheckReport rep;
    for (std::complex<double> z : points) {
        std::complex<double> v = r.eval(z);
        SpotSample s;
        s.point = z;
        s.magnitude = std::abs(v);
        s.overflow = !std::isfinite(s.magnitude);
        if (!s.overflow)
            rep.max_magnitude = std::max(rep.max_magnitude, s.magnitude);
        rep.samples.push_back(s);
    }
    return rep;
}

} // namespace

SpotcheckReport numeric_spotcheck(const ExpSum& f, const RawProblem& p,
                                  const std::vector<std::complex<double>>& points) {
    return spotcheck(residual(f.to_approx(), p.to_approx()), points);
}

SpotcheckReport numeric_spotcheck(const ExpSum& f, const NormalizedProblem& np,
                                  const std::vector<std::complex<double>>& points) {
    return spotcheck(residual(f.to_approx(), np.to_approx()), points);
}

} // namespace expsolve
