#pragma once

#include <cstdint>
#include <string>

#include "tgopt/matrix.hpp"

namespace tgopt::problems {

enum class ProblemKind { Laplacian1D, Laplacian2D, RandomHpd, FromFile };

struct ProblemSpec {
    ProblemKind kind = ProblemKind::Laplacian1D;
    Index n = 0;            // Laplacian1D / RandomHpd
    Index nx = 0, ny = 0;   // Laplacian2D
    double target_condition = 1.0;
    std::uint64_t seed = 0;
    std::string path;       // FromFile
};

/// Tridiagonal (-1, 2, -1) matrix of size n; eigenvalues are
/// 4 sin^2(k pi / (2(n+1))), k = 1..n.
Matrix laplacian_1d(Index n);

/// Five-point stencil on an nx-by-ny grid: the Kronecker sum of two 1D
/// Laplacians. Grid point (ix, iy) maps to row ix*ny + iy.
Matrix laplacian_2d(Index nx, Index ny);

/// Seeded random HPD matrix with lambda_max/lambda_min equal to
/// target_condition: Q diag(logarithmically spaced values) Q^H with Q a
/// random unitary drawn from the fixed generator in tgopt::rng.
Matrix random_hpd(Index n, double target_condition, std::uint64_t seed);

/// Linear interpolation from every second point of a 1D grid: column j
/// carries the stencil (1/2, 1, 1/2) centered at fine row 2j+1 (0-based).
/// n_fine must be odd; the coarse size is (n_fine - 1)/2.
Matrix geometric_interp_1d(Index n_fine);

/// Builds the matrix a ProblemSpec describes (loading from disk for
/// FromFile).
Matrix resolve(const ProblemSpec& spec);

} // namespace tgopt::problems
