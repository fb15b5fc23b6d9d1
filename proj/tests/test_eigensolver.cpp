#include "gemo/eigensolver.hpp"
#include "gemo/error.hpp"
#include "gemo/hamiltonian.hpp"
#include "gemo/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using gemo::SymmetricBandedMatrix;

namespace {

std::vector<double> values(const std::vector<gemo::EigenPair>& pairs)
{
    std::vector<double> out;
    for (const auto& p : pairs) out.push_back(p.eigenvalue);
    return out;
}

std::vector<std::vector<double>> dense(const SymmetricBandedMatrix& m)
{
    std::vector<std::vector<double>> a(m.size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = m.at(i, j);
    return a;
}

SymmetricBandedMatrix random_banded(std::mt19937_64& rng, std::size_t n, int b)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::vector<double>> bands(static_cast<std::size_t>(b) + 1);
    for (int d = 0; d <= b; ++d) {
        bands[d].resize(n > static_cast<std::size_t>(d) ? n - d : 0);
        for (auto& v : bands[d]) v = u(rng);
    }
    return SymmetricBandedMatrix::from_bands(std::move(bands));
}

} // namespace

TEST_CASE("2x2 and diagonal examples")
{
    const auto two = SymmetricBandedMatrix::from_bands({{2.0, 2.0}, {1.0}});
    const auto e = values(gemo::lowest_eigenpairs(two, 2));
    CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-15));

    const auto diag = SymmetricBandedMatrix::from_bands({{3.0, 1.0, 2.0}, {0.0, 0.0}});
    CHECK(values(gemo::lowest_eigenpairs(diag, 3)) == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("Toeplitz spectrum")
{
    constexpr std::size_t n = 50;
    const double a = 2.0, b = -1.0;
    const auto m = SymmetricBandedMatrix::from_bands({std::vector<double>(n, a), std::vector<double>(n - 1, b)});
    const auto e = values(gemo::lowest_eigenpairs(m, n));
    std::vector<double> exact;
    for (std::size_t j = 1; j <= n; ++j) exact.push_back(a + 2.0 * b * std::cos(j * std::numbers::pi / (n + 1)));
    std::sort(exact.begin(), exact.end());
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(e[j] - exact[j]) <= 1e-12);
}

TEST_CASE("property: random tri- and pentadiagonal matrices against the determinant root finder")
{
    std::mt19937_64 rng(2024);
    for (int b : {1, 2}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 2 + trial % 7;
            const auto m = random_banded(rng, n, b);
            const auto got = values(gemo::lowest_eigenpairs(m, n));
            const auto brute = gemo::brute_force_eigenvalues(dense(m));
            REQUIRE(brute.size() == n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - brute[i]) <= 1e-10);
            // Reduction preserves the spectrum.
            const auto t = gemo::lowest_eigenvalues(gemo::tridiagonalize(m), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(t[i] - brute[i]) <= 1e-10);
        }
    }
}

TEST_CASE("sturm count")
{
    const gemo::Tridiagonal t{{2.0, 2.0}, {1.0}};
    CHECK(gemo::sturm_count(t, 0.5) == 0);
    CHECK(gemo::sturm_count(t, 2.0) == 1);
    CHECK(gemo::sturm_count(t, 3.5) == 2);
}

TEST_CASE("residuals: exact pairs, identity and linear growth under perturbation")
{
    const auto id = SymmetricBandedMatrix::from_bands({std::vector<double>(6, 1.0), std::vector<double>(5, 0.0)});
    const auto ip = gemo::lowest_eigenpairs(id, 3);
    CHECK(gemo::residual_check(id, ip) == 0.0);

    constexpr std::size_t n = 40;
    const auto m = SymmetricBandedMatrix::from_bands({std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)});
    const auto pairs = gemo::lowest_eigenpairs(m, 3);
    CHECK(gemo::residual_check(m, pairs) <= 1e-12 * m.norm_inf());

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::sin(0.37 * i * i);
    double prev = 0.0;
    for (double eps : {1e-6, 2e-6, 4e-6, 8e-6}) {
        gemo::EigenPair p = pairs[0];
        for (std::size_t i = 0; i < n; ++i) p.vector[i] += eps * u[i];
        const double r = gemo::residual_check(m, std::span(&p, 1));
        if (prev > 0.0) CHECK(r / prev == doctest::Approx(2.0).epsilon(1e-3));
        prev = r;
    }
}

TEST_CASE("orthogonality and normalization under the grid weight")
{
    const gemo::Grid g = gemo::Grid::interior(-8.0, 8.0, 1500, gemo::Space::X);
    const auto h = gemo::build_x_hamiltonian(g, gemo::Deformation::quadratic(0.5), [](double x) { return 0.5 * x * x; });
    const auto pairs = gemo::lowest_eigenpairs(h, 6, g.spacing);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i; j < pairs.size(); ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < g.count; ++r) s += pairs[i].vector[r] * pairs[j].vector[r];
            s *= g.spacing;
            CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) <= (i == j ? 1e-12 : 1e-10));
        }
        if (i > 0) CHECK(pairs[i].eigenvalue >= pairs[i - 1].eigenvalue);
    }
}

TEST_CASE("degenerate cluster gets an orthonormal basis")
{
    // Two decoupled copies of the same block: every eigenvalue is double.
    std::vector<double> d(20, 2.0), e(19, -1.0);
    e[9] = 0.0;
    const auto pairs = gemo::lowest_eigenpairs(SymmetricBandedMatrix::from_bands({d, e}), 4);
    CHECK(pairs[0].eigenvalue == doctest::Approx(pairs[1].eigenvalue).epsilon(1e-14));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < 20; ++r) s += pairs[i].vector[r] * pairs[j].vector[r];
            CHECK(std::abs(s) <= 1e-10);
        }
}

TEST_CASE("argument errors")
{
    const auto m = SymmetricBandedMatrix::from_bands({{1.0, 2.0}, {0.5}});
    CHECK_THROWS_AS((void)gemo::lowest_eigenpairs(m, 3), gemo::InputError);
    CHECK_THROWS_AS((void)gemo::lowest_eigenpairs(m, 0), gemo::InputError);
}
