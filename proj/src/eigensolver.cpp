#include "gemo/eigensolver.hpp"

#include "gemo/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

namespace gemo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Upper band of a symmetric matrix with room for one bulge diagonal:
// a[i][d] = A(i, i+d), d ≤ 3.
class BulgeBand {
public:
    explicit BulgeBand(const SymmetricBandedMatrix& m) : n_(m.size()), a_(m.size())
    {
        for (int d = 0; d <= m.bandwidth(); ++d) {
            const auto b = m.band(d);
            for (std::size_t i = 0; i < b.size(); ++i) a_[i][static_cast<std::size_t>(d)] = b[i];
        }
    }

    [[nodiscard]] double get(std::size_t i, std::size_t j) const
    {
        if (i > j) std::swap(i, j);
        const std::size_t d = j - i;
        return d > 3 || j >= n_ ? 0.0 : a_[i][d];
    }

    void set(std::size_t i, std::size_t j, double v)
    {
        if (i > j) std::swap(i, j);
        const std::size_t d = j - i;
        if (d > 3) {
            if (v != 0.0) throw ConvergenceError("eigen.tridiagonalize", "fill outside the bulge band");
            return;
        }
        a_[i][d] = v;
    }

    // Similarity rotation in plane (p, p+1) chosen to annihilate A(r, p+1).
    void rotate_out(std::size_t r, std::size_t p)
    {
        const std::size_t q = p + 1;
        const double x = get(r, p);
        const double y = get(r, q);
        if (y == 0.0) return;
        const double t = std::hypot(x, y);
        const double c = x / t;
        const double s = y / t;

        const std::size_t lo = p >= 3 ? p - 3 : 0;
        const std::size_t hi = std::min(n_ - 1, q + 3);
        for (std::size_t k = lo; k <= hi; ++k) {
            if (k == p || k == q) continue;
            const double apk = get(p, k);
            const double aqk = get(q, k);
            if (apk == 0.0 && aqk == 0.0) continue;
            set(p, k, c * apk + s * aqk);
            set(q, k, -s * apk + c * aqk);
        }
        const double app = get(p, p);
        const double aqq = get(q, q);
        const double apq = get(p, q);
        set(p, p, c * c * app + 2.0 * c * s * apq + s * s * aqq);
        set(q, q, s * s * app - 2.0 * c * s * apq + c * c * aqq);
        set(p, q, c * s * (aqq - app) + (c * c - s * s) * apq);
        set(r, q, 0.0);
    }

    [[nodiscard]] Tridiagonal extract() const
    {
        Tridiagonal t;
        t.d.resize(n_);
        t.e.resize(n_ - 1);
        for (std::size_t i = 0; i < n_; ++i) t.d[i] = a_[i][0];
        for (std::size_t i = 0; i + 1 < n_; ++i) t.e[i] = a_[i][1];
        return t;
    }

private:
    std::size_t n_;
    std::vector<std::array<double, 4>> a_;
};

double pivot_floor(const Tridiagonal& t)
{
    double emax = 1.0;
    for (double e : t.e) emax = std::max(emax, e * e);
    return std::numeric_limits<double>::min() * emax;
}

std::size_t count_below(const Tridiagonal& t, double x, double pivmin)
{
    std::size_t count = 0;
    double q = t.d[0] - x;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < t.d.size(); ++i) {
        q = t.d[i] - x - t.e[i - 1] * t.e[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> tridiagonal_bounds(const Tridiagonal& t)
{
    const std::size_t n = t.d.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.e[i - 1]);
        if (i + 1 < n) r += std::abs(t.e[i]);
        lo = std::min(lo, t.d[i] - r);
        hi = std::max(hi, t.d[i] + r);
    }
    const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + std::numeric_limits<double>::min();
    return {lo - pad, hi + pad};
}

// Banded LU with partial pivoting of (M − shift·I). Row i of the working
// array holds columns i−b … i+2b at offsets 0 … 3b.
class ShiftedBandLU {
public:
    ShiftedBandLU(const SymmetricBandedMatrix& m, double shift, double tiny)
        : n_(m.size()), b_(static_cast<std::size_t>(m.bandwidth())), w_(3 * b_ + 1), rows_(n_ * w_, 0.0),
          lower_(n_ * b_, 0.0), piv_(n_)
    {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i >= b_ ? i - b_ : 0; j <= std::min(n_ - 1, i + b_); ++j) {
                at(i, j) = m.at(i, j) - (i == j ? shift : 0.0);
            }
        }
        for (std::size_t c = 0; c < n_; ++c) {
            const std::size_t last = std::min(n_ - 1, c + b_);
            std::size_t p = c;
            for (std::size_t r = c + 1; r <= last; ++r) {
                if (std::abs(at(r, c)) > std::abs(at(p, c))) p = r;
            }
            piv_[c] = p;
            const std::size_t jend = std::min(n_ - 1, c + 2 * b_);
            if (p != c) {
                for (std::size_t j = c; j <= jend; ++j) std::swap(at(p, j), at(c, j));
            }
            if (std::abs(at(c, c)) < tiny) at(c, c) = at(c, c) < 0.0 ? -tiny : tiny;
            const double pivot = at(c, c);
            for (std::size_t r = c + 1; r <= last; ++r) {
                const double f = at(r, c) / pivot;
                lower_[c * b_ + (r - c - 1)] = f;
                at(r, c) = 0.0;
                if (f == 0.0) continue;
                for (std::size_t j = c + 1; j <= jend; ++j) at(r, j) -= f * at(c, j);
            }
        }
    }

    void solve(std::vector<double>& y) const
    {
        for (std::size_t c = 0; c < n_; ++c) {
            if (piv_[c] != c) std::swap(y[c], y[piv_[c]]);
            const std::size_t last = std::min(n_ - 1, c + b_);
            for (std::size_t r = c + 1; r <= last; ++r) y[r] -= lower_[c * b_ + (r - c - 1)] * y[c];
        }
        for (std::size_t c = n_; c-- > 0;) {
            double s = y[c];
            const std::size_t jend = std::min(n_ - 1, c + 2 * b_);
            for (std::size_t j = c + 1; j <= jend; ++j) s -= at(c, j) * y[j];
            y[c] = s / at(c, c);
        }
    }

private:
    [[nodiscard]] double& at(std::size_t i, std::size_t j) { return rows_[i * w_ + (j + b_ - i)]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return rows_[i * w_ + (j + b_ - i)]; }

    std::size_t n_;
    std::size_t b_;
    std::size_t w_;
    std::vector<double> rows_;
    std::vector<double> lower_;
    std::vector<std::size_t> piv_;
};

double norm2(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void scale(std::vector<double>& v, double f)
{
    for (double& x : v) x *= f;
}

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double residual_inf(const SymmetricBandedMatrix& m, const std::vector<double>& v, double lambda)
{
    const auto mv = m.multiply(v);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(mv[i] - lambda * v[i]));
    return r;
}

std::vector<double> start_vector(std::size_t n, std::size_t index)
{
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + index);
    std::vector<double> v(n);
    for (double& x : v) x = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return v;
}

} // namespace

Tridiagonal tridiagonalize(const SymmetricBandedMatrix& m)
{
    const std::size_t n = m.size();
    BulgeBand a(m);
    if (m.bandwidth() == 2) {
        for (std::size_t j = 0; j + 2 < n; ++j) {
            if (a.get(j, j + 2) == 0.0) continue;
            a.rotate_out(j, j + 1);
            for (std::size_t r = j + 1; r + 3 < n; r += 2) {
                if (a.get(r, r + 3) == 0.0) break;
                a.rotate_out(r, r + 2);
            }
        }
    }
    return a.extract();
}

std::size_t sturm_count(const Tridiagonal& t, double x)
{
    if (t.d.empty()) return 0;
    return count_below(t, x, pivot_floor(t));
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, std::size_t k)
{
    constexpr const char* stage = "eigen.bisection";
    const std::size_t n = t.d.size();
    if (k == 0 || k > n) throw InputError(stage, "requested eigenvalue count must lie in [1, n]");
    const double pivmin = pivot_floor(t);
    const auto [glo, ghi] = tridiagonal_bounds(t);

    std::vector<double> out(k);
    double floor = glo;
    for (std::size_t j = 0; j < k; ++j) {
        double lo = floor;
        double hi = ghi;
        std::size_t count_lo = count_below(t, lo, pivmin);
        std::size_t count_hi = n;
        for (int it = 0; it < 4096; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const std::size_t c = count_below(t, mid, pivmin);
            if (c < count_lo || c > count_hi) {
                std::ostringstream msg;
                msg << "Sturm count " << c << " at " << mid << " outside [" << count_lo << ", " << count_hi << "]";
                throw ConvergenceError(stage, msg.str());
            }
            if (c > j) {
                hi = mid;
                count_hi = c;
            } else {
                lo = mid;
                count_lo = c;
            }
        }
        out[j] = 0.5 * (lo + hi);
        floor = lo;
    }
    return out;
}

std::vector<EigenPair> lowest_eigenpairs(const SymmetricBandedMatrix& m, std::size_t k, double weight)
{
    constexpr const char* stage = "eigen.lowest_eigenpairs";
    const std::size_t n = m.size();
    if (k == 0 || k > n) {
        std::ostringstream msg;
        msg << "requested " << k << " eigenpairs of a " << n << "x" << n << " matrix";
        throw InputError(stage, msg.str());
    }
    if (!(weight > 0.0 && std::isfinite(weight))) throw InputError(stage, "quadrature weight must be positive");
    for (int d = 0; d <= m.bandwidth(); ++d) {
        for (double v : m.band(d)) {
            if (!std::isfinite(v)) throw DomainError(stage, "matrix has non-finite entries");
        }
    }

    const auto values = lowest_eigenvalues(tridiagonalize(m), k);
    const double mnorm = std::max(m.norm_inf(), std::numeric_limits<double>::min());
    const auto [glo, ghi] = m.gershgorin();
    const double cluster_gap = 1e-8 * std::max(ghi - glo, mnorm * kEps);
    const double tiny = kEps * mnorm;
    const double target = 64.0 * std::sqrt(static_cast<double>(n)) * kEps * mnorm;

    std::vector<EigenPair> pairs;
    pairs.reserve(k);
    std::size_t cluster_start = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double lambda = values[j];
        if (j > 0 && lambda - values[j - 1] > cluster_gap) cluster_start = j;

        const ShiftedBandLU lu(m, lambda, tiny);
        std::vector<double> v = start_vector(n, j);
        scale(v, 1.0 / norm2(v));
        bool converged = false;
        int extra = 0;
        for (int it = 0; it < 50; ++it) {
            lu.solve(v);
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = cluster_start; c < j; ++c) {
                    const auto& u = pairs[c].vector;
                    const double proj = dot(u, v) / dot(u, u);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
                }
            }
            const double nv = norm2(v);
            if (!(nv > 0.0 && std::isfinite(nv))) break;
            scale(v, 1.0 / nv);
            if (converged) {
                if (++extra >= 1) break;
                continue;
            }
            if (it >= 1 && residual_inf(m, v, lambda) <= target) converged = true;
        }
        if (!converged) {
            std::ostringstream msg;
            msg << "inverse iteration did not converge for eigenvalue index " << j << " (lambda = " << lambda << ")";
            throw ConvergenceError(stage, msg.str());
        }

        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        }
        scale(v, (v[imax] < 0.0 ? -1.0 : 1.0) / std::sqrt(weight * dot(v, v)));
        EigenPair p;
        p.eigenvalue = lambda;
        p.residual = residual_inf(m, v, lambda);
        p.vector = std::move(v);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

double residual_check(const SymmetricBandedMatrix& m, std::span<const EigenPair> pairs)
{
    const std::size_t n = m.size();
    const auto b = static_cast<std::size_t>(m.bandwidth());
    double worst = 0.0;
    for (const auto& p : pairs) {
        if (p.vector.size() != n) throw InputError("eigen.residual_check", "vector length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            double s = -p.eigenvalue * p.vector[i];
            for (std::size_t j = i >= b ? i - b : 0; j <= std::min(n - 1, i + b); ++j) s += m.at(i, j) * p.vector[j];
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

} // namespace gemo
