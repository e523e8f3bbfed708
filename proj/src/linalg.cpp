#include "expsolve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace expsolve {

bool Matrix::has_approx() const {
    for (const Scalar& s : a_)
        if (!s.is_exact())
            return true;
    return false;
}

Matrix Matrix::to_approx() const {
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        m.a_[i] = a_[i].to_approx();
    return m;
}

namespace {

// ---- exact path -------------------------------------------------------

struct Echelon {
    std::vector<std::vector<GaussianRational>> a;
    std::vector<size_t> pivot_cols; // one per used row, in order
};

mpz_class denominator_lcm(const GaussianRational& g) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), g.re.get_den().get_mpz_t(), g.im.get_den().get_mpz_t());
    return l;
}

/*
 * Fraction-free (Bareiss) row echelon with column pivoting. Rows are scaled
 * integral first; each condensation step divides by the previous pivot,
 * which is exact by the minor-determinant identity (and unconditionally
 * exact here since entries are rationals anyway).
 */
Echelon bareiss_echelon(const Matrix& m) {
    size_t rows = m.rows(), cols = m.cols();
    Echelon e;
    e.a.assign(rows, std::vector<GaussianRational>(cols));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j)
            e.a[i][j] = m.at(i, j).exact_value();
        mpz_class scale = 1;
        for (size_t j = 0; j < cols; ++j) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), denominator_lcm(e.a[i][j]).get_mpz_t());
            scale = l;
        }
        if (scale != 1) {
            GaussianRational s{mpq_class(scale)};
            for (size_t j = 0; j < cols; ++j)
                e.a[i][j] = e.a[i][j] * s;
        }
    }

    GaussianRational prev{mpq_class(1)};
    size_t cur = 0;
    for (size_t col = 0; col < cols && cur < rows; ++col) {
        // smallest-norm nonzero pivot keeps the integers small
        size_t best = rows;
        mpq_class best_norm;
        for (size_t i = cur; i < rows; ++i) {
            if (e.a[i][col].is_zero())
                continue;
            mpq_class nrm = e.a[i][col].norm();
            if (best == rows || nrm < best_norm) {
                best = i;
                best_norm = nrm;
            }
        }
        if (best == rows)
            continue;
        std::swap(e.a[cur], e.a[best]);
        const GaussianRational piv = e.a[cur][col];
        for (size_t i = cur + 1; i < rows; ++i) {
            GaussianRational head = e.a[i][col];
            for (size_t j = col + 1; j < cols; ++j)
                e.a[i][j] = (e.a[i][j] * piv - head * e.a[cur][j]) / prev;
            e.a[i][col] = GaussianRational{};
        }
        prev = piv;
        e.pivot_cols.push_back(col);
        ++cur;
    }
    return e;
}

std::vector<std::vector<Scalar>> exact_nullspace(const Matrix& m) {
    Echelon e = bareiss_echelon(m);
    size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : e.pivot_cols)
        is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<GaussianRational> x(cols);
        x[f] = GaussianRational{mpq_class(1)};
        for (size_t r = e.pivot_cols.size(); r-- > 0;) {
            size_t pc = e.pivot_cols[r];
            GaussianRational acc;
            for (size_t j = pc + 1; j < cols; ++j)
                if (!x[j].is_zero() && !e.a[r][j].is_zero())
                    acc = acc + e.a[r][j] * x[j];
            x[pc] = -acc / e.a[r][pc];
        }
        // first nonzero entry scaled to 1
        GaussianRational lead;
        for (const GaussianRational& v : x)
            if (!v.is_zero()) {
                lead = v;
                break;
            }
        std::vector<Scalar> out;
        out.reserve(cols);
        for (const GaussianRational& v : x)
            out.push_back(Scalar(v / lead));
        basis.push_back(std::move(out));
    }
    return basis;
}

// ---- approximate path -------------------------------------------------

using cd = std::complex<double>;

struct Jacobi {
    std::vector<std::vector<cd>> b; // rows x cols, the working copy
    std::vector<std::vector<cd>> v; // cols x cols, accumulated rotations
    std::vector<double> sigma;      // column norms after orthogonalization
};

Jacobi jacobi_orthogonalize(const Matrix& m) {
    size_t rows = m.rows(), cols = m.cols();
    Jacobi w;
    w.b.assign(rows, std::vector<cd>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            w.b[i][j] = m.at(i, j).to_complex();
    w.v.assign(cols, std::vector<cd>(cols, 0.0));
    for (size_t j = 0; j < cols; ++j)
        w.v[j][j] = 1.0;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0;
        for (size_t i = 0; i + 1 < cols; ++i) {
            for (size_t j = i + 1; j < cols; ++j) {
                double a = 0, bb = 0;
                cd c = 0;
                for (size_t k = 0; k < rows; ++k) {
                    a += std::norm(w.b[k][i]);
                    bb += std::norm(w.b[k][j]);
                    c += std::conj(w.b[k][i]) * w.b[k][j];
                }
                double ac = std::abs(c);
                if (ac == 0 || a == 0 || bb == 0)
                    continue;
                worst = std::max(worst, ac / std::sqrt(a * bb));
                if (ac <= 1e-15 * std::sqrt(a * bb))
                    continue;
                // phase out the coupling, then a real Jacobi rotation; this
                // rotation convention needs the small root of t^2 - 2 tau t - 1
                cd phase = c / ac; // e^{i phi}
                double tau = (bb - a) / (2 * ac);
                double t = (tau >= 0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double cs = 1 / std::sqrt(1 + t * t);
                double sn = cs * t;
                cd pj = std::conj(phase);
                for (size_t k = 0; k < rows; ++k) {
                    cd bi = w.b[k][i], bj = w.b[k][j] * pj;
                    w.b[k][i] = cs * bi + sn * bj;
                    w.b[k][j] = cs * bj - sn * bi;
                }
                for (size_t k = 0; k < cols; ++k) {
                    cd vi = w.v[k][i], vj = w.v[k][j] * pj;
                    w.v[k][i] = cs * vi + sn * vj;
                    w.v[k][j] = cs * vj - sn * vi;
                }
            }
        }
        if (worst < 1e-14)
            break;
    }

    w.sigma.assign(cols, 0.0);
    for (size_t j = 0; j < cols; ++j) {
        double s = 0;
        for (size_t k = 0; k < rows; ++k)
            s += std::norm(w.b[k][j]);
        w.sigma[j] = std::sqrt(s);
    }
    return w;
}

std::vector<std::vector<Scalar>> approx_nullspace(const Matrix& m, double rel_tol) {
    Jacobi w = jacobi_orthogonalize(m);
    size_t cols = m.cols();
    double smax = 0;
    for (double s : w.sigma)
        smax = std::max(smax, s);
    std::vector<std::vector<Scalar>> basis;
    for (size_t j = 0; j < cols; ++j) {
        if (w.sigma[j] > rel_tol * smax && smax > 0)
            continue;
        // scale so the largest entry is 1 (deterministic: first maximal)
        size_t arg = 0;
        double best = -1;
        for (size_t k = 0; k < cols; ++k)
            if (std::abs(w.v[k][j]) > best) {
                best = std::abs(w.v[k][j]);
                arg = k;
            }
        cd lead = w.v[arg][j];
        std::vector<Scalar> out;
        out.reserve(cols);
        for (size_t k = 0; k < cols; ++k)
            out.push_back(Scalar::approx(w.v[k][j] / lead));
        basis.push_back(std::move(out));
    }
    return basis;
}

EliminationResult approx_elimination(const Matrix& m, double rel_tol) {
    size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<cd>> a(rows, std::vector<cd>(cols));
    double amax = 0;
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            a[i][j] = m.at(i, j).to_complex();
            amax = std::max(amax, std::abs(a[i][j]));
        }
    EliminationResult r;
    size_t cur = 0;
    for (size_t col = 0; col < cols && cur < rows; ++col) {
        size_t best = cur;
        for (size_t i = cur + 1; i < rows; ++i)
            if (std::abs(a[i][col]) > std::abs(a[best][col]))
                best = i;
        if (std::abs(a[best][col]) <= rel_tol * amax)
            continue;
        std::swap(a[cur], a[best]);
        for (size_t i = cur + 1; i < rows; ++i) {
            cd f = a[i][col] / a[cur][col];
            a[i][col] = 0;
            for (size_t j = col + 1; j < cols; ++j)
                a[i][j] -= f * a[cur][j];
        }
        r.pivot_cols.push_back(col);
        ++cur;
    }
    r.rank = int(r.pivot_cols.size());
    return r;
}

} // namespace

EliminationResult elimination_info(const Matrix& m, double rel_tol) {
    if (m.has_approx())
        return approx_elimination(m, rel_tol);
    Echelon e = bareiss_echelon(m);
    EliminationResult r;
    r.pivot_cols = e.pivot_cols;
    r.rank = int(e.pivot_cols.size());
    return r;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m, double rel_tol) {
    if (m.has_approx())
        return approx_nullspace(m, rel_tol);
    return exact_nullspace(m);
}

std::vector<double> singular_values(const Matrix& m) {
    return jacobi_orthogonalize(m.has_approx() ? m : m.to_approx()).sigma;
}

int rank(const Matrix& m, double rel_tol) {
    if (!m.has_approx())
        return elimination_info(m, rel_tol).rank;
    std::vector<double> s = singular_values(m);
    double smax = 0;
    for (double x : s)
        smax = std::max(smax, x);
    if (smax == 0)
        return 0;
    int r = 0;
    for (double x : s)
        if (x > rel_tol * smax)
            ++r;
    return r;
}

} // namespace expsolve
