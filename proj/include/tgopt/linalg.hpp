#pragma once

#include <vector>

#include "tgopt/matrix.hpp"

namespace tgopt::linalg {

/// Relative max-norm tolerance under which an input counts as Hermitian and
/// is symmetrized before factorization.
inline constexpr double kHermitianRelTol = 1e-12;

/// Strictness margin for positive definiteness decisions: HPD iff
/// lambda_min > kDefiniteMargin * ||.||_max.
inline constexpr double kDefiniteMargin = 1e-12;

/// Full column rank requires sigma_min > kRankRelTol * sigma_max.
inline constexpr double kRankRelTol = 1e-10;

struct CholeskyFactor {
    Matrix l;         // lower triangular, positive real diagonal
    Index source_dim; // dimension of the factored matrix
};

struct HermitianEigen {
    std::vector<double> values; // ascending
    Matrix vectors;             // unitary, columns are eigenvectors
};

struct GeneralizedEigen {
    std::vector<double> values; // ascending eigenvalues of A u = lambda X u
    Matrix vectors;             // X-orthonormal columns
    Matrix metric;              // the X used
};

/// Cholesky factorization h = l l^H of an HPD matrix.
CholeskyFactor cholesky(const Matrix& h);

/// Eigendecomposition of a Hermitian matrix, values ascending.
HermitianEigen eig_hermitian(const Matrix& h);

/// Generalized problem A u = lambda X u for Hermitian a and HPD x, reduced
/// through x = L L^H to the standard Hermitian problem L^{-1} a L^{-H} and
/// mapped back by u = L^{-H} y. The values are the spectrum of X^{-1}A.
GeneralizedEigen eig_generalized(const Matrix& a, const Matrix& x);

/// Eigenvalues with multiplicity of an arbitrary square matrix, via a unitary
/// reduction to complex triangular (Schur) form.
std::vector<Complex> spectrum_general(const Matrix& s);

/// Orthonormal basis of the orthogonal complement of the column span of u.
/// u must be n x k with full column rank and k < n.
Matrix orthonormal_complement(const Matrix& u);

/// Operator norm induced by an HPD a: the largest singular value of
/// a^{1/2} s a^{-1/2}.
double operator_a_norm(const Matrix& s, const Matrix& a);

/// max |z| over the spectrum of s.
double spectral_radius(const Matrix& s);

/// Hermitian positive definite square root.
Matrix hpd_sqrt(const Matrix& a);

// -- Shared dense-solve helpers used throughout the library. ----------------

/// Solves a x = rhs with full-pivot LU; throws SingularA when a is
/// numerically singular.
Matrix solve(const Matrix& a, const Matrix& rhs);

Matrix inverse(const Matrix& a);

/// sigma_min > rel_tol * sigma_max.
bool is_invertible(const Matrix& a, double rel_tol = 1e-12);

/// Largest singular value.
double spectral_norm(const Matrix& s);

/// Checks Hermiticity within kHermitianRelTol and returns (h + h^H)/2.
Matrix require_hermitian(const Matrix& h, const char* who);

/// Smallest eigenvalue of a Hermitian matrix (input symmetrized first).
double smallest_eigenvalue(const Matrix& h);

/// True iff h is Hermitian within tolerance and lambda_min exceeds the
/// definiteness margin.
bool is_hpd(const Matrix& h);

/// Sine of the largest principal angle between the column spans of two
/// n x k matrices of full column rank.
double subspace_sin_angle(const Matrix& u, const Matrix& v);

} // namespace tgopt::linalg
