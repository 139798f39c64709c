#pragma once

#include <vector>

#include "tgopt/matrix.hpp"
#include "tgopt/smoothers.hpp"

namespace tgopt::spectral {

/// Orthonormal bases of the Euclidean orthogonal complements of range(P) and
/// range(R^H).
struct ComplementBasis {
    Matrix p_tilde;  // n x (n-r)
    Matrix r_tilde;  // n x (n-r)
};

struct IdentityReport {
    std::vector<Complex> direct_spectrum;    // sigma(BA) from the dense eigensolver
    std::vector<Complex> identity_spectrum;  // {1 with multiplicity r} union sigma(Z)
    double max_matching_distance = 0.0;
    double tolerance_used = 0.0;
    bool passed = false;
};

ComplementBasis complement_bases(const Matrix& p, const Matrix& r_op);

/// The complement Rayleigh matrix Z = P~^H X^{-1} R~ (P~^H A^{-1} R~)^{-1}
/// whose eigenvalues, together with 1 repeated r times, make up sigma(BA).
/// Validates the hypotheses: A, X, RAP and RXP nonsingular, and the
/// complement Gram matrix P~^H A^{-1} R~ nonsingular.
Matrix complement_rayleigh(const Matrix& a, const smoothers::XOperator& x_op,
                           const Matrix& p, const Matrix& r_op);

/// sigma(BA) predicted by the spectral identity: the value 1 with
/// multiplicity r plus the spectrum of Z.
std::vector<Complex> spectrum_via_identity(const Matrix& a, const smoothers::XOperator& x_op,
                                           const Matrix& p, const Matrix& r_op);

/// Computes sigma(BA) both directly (assembling E = (I - P A_C^{-1} R A)(I - X^{-1}A)
/// and feeding I - E to the dense eigensolver) and through the identity, then
/// matches the two multisets one-to-one and reports the worst matched distance.
IdentityReport verify_identity(const Matrix& a, const smoothers::XOperator& x_op,
                               const Matrix& p, const Matrix& r_op, double tolerance = 1e-8);

} // namespace tgopt::spectral
