#pragma once

#include "gemo/banded.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gemo {

struct EigenPair {
    double eigenvalue = 0.0;
    /// Normalized so that weight·Σv² = 1, largest-magnitude entry positive.
    std::vector<double> vector;
    /// ‖Mv − λv‖∞ for the stored (normalized) vector.
    double residual = 0.0;
};

/// Symmetric tridiagonal matrix: diagonal d (n entries), off-diagonal e (n−1).
struct Tridiagonal {
    std::vector<double> d;
    std::vector<double> e;
};

/// Orthogonally similar tridiagonal form. Bandwidth-2 input is reduced with
/// Givens rotations, chasing the bulge down the band after every elimination.
[[nodiscard]] Tridiagonal tridiagonalize(const SymmetricBandedMatrix& m);

/// Number of eigenvalues of t strictly below x (negative pivots of the
/// LDLᵀ factorization of t − x).
[[nodiscard]] std::size_t sturm_count(const Tridiagonal& t, double x);

/// The k smallest eigenvalues of t in nondecreasing order, each bisected
/// until the bracket can no longer be split in double precision.
[[nodiscard]] std::vector<double> lowest_eigenvalues(const Tridiagonal& t, std::size_t k);

/// Lowest k eigenpairs of m. Vectors come from inverse iteration on m itself
/// (banded LU with partial pivoting, at most 50 sweeps); vectors whose
/// eigenvalues lie within 1e-8 of the spectral width of each other are
/// re-orthogonalized. `weight` is the quadrature weight of one sample.
/// Throws InputError for k = 0 or k > n and ConvergenceError naming the
/// eigenvalue index if an iteration stalls.
[[nodiscard]] std::vector<EigenPair> lowest_eigenpairs(const SymmetricBandedMatrix& m, std::size_t k,
                                                       double weight = 1.0);

/// max over pairs of ‖Mv − λv‖∞, recomputed entrywise from m.
[[nodiscard]] double residual_check(const SymmetricBandedMatrix& m, std::span<const EigenPair> pairs);

} // namespace gemo
