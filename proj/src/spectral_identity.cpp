#include "tgopt/spectral_identity.hpp"

#include <algorithm>

#include "tgopt/linalg.hpp"
#include "tgopt/matching.hpp"
#include "tgopt/twogrid.hpp"

namespace tgopt::spectral {

namespace {

void validate_inputs(const Matrix& a, const smoothers::XOperator& x_op, const Matrix& p,
                     const Matrix& r_op) {
    require_square(a, "spectral identity");
    const Index n = a.rows();
    const Index r = p.cols();
    if (p.rows() != n || r_op.cols() != n || r_op.rows() != r)
        throw DimensionMismatch("spectral identity: P must be n x r and R must be r x n");
    if (r < 1 || r >= n)
        throw InvalidRank("spectral identity: need 1 <= r < n");
    if (x_op.x_inv.rows() != n || !x_op.x_inv.is_square())
        throw DimensionMismatch("spectral identity: X dimension disagrees with A");

    if (!linalg::is_invertible(r_op * a * p))
        throw SingularCoarseMatrix("spectral identity: R A P is singular");
    if (!linalg::is_invertible(r_op * x_op.x * p))
        throw SingularRXP("spectral identity: R X P is singular");
}

} // namespace

ComplementBasis complement_bases(const Matrix& p, const Matrix& r_op) {
    return {linalg::orthonormal_complement(p),
            linalg::orthonormal_complement(r_op.adjoint())};
}

Matrix complement_rayleigh(const Matrix& a, const smoothers::XOperator& x_op, const Matrix& p,
                           const Matrix& r_op) {
    validate_inputs(a, x_op, p, r_op);
    const ComplementBasis bases = complement_bases(p, r_op);

    const Matrix a_inv_r_tilde = linalg::solve(a, bases.r_tilde);
    const Matrix gram = bases.p_tilde.adjoint() * a_inv_r_tilde;
    if (!linalg::is_invertible(gram))
        throw SingularComplementGram("spectral identity: P~^H A^{-1} R~ is singular");

    const Matrix numerator = bases.p_tilde.adjoint() * (x_op.x_inv * bases.r_tilde);
    // Z = (P~^H X^{-1} R~) (P~^H A^{-1} R~)^{-1}, via a solve from the right.
    return linalg::solve(gram.adjoint(), numerator.adjoint()).adjoint();
}

std::vector<Complex> spectrum_via_identity(const Matrix& a, const smoothers::XOperator& x_op,
                                           const Matrix& p, const Matrix& r_op) {
    const Matrix z = complement_rayleigh(a, x_op, p, r_op);
    std::vector<Complex> spectrum(static_cast<std::size_t>(p.cols()), Complex(1.0, 0.0));
    const auto z_spectrum = linalg::spectrum_general(z);
    spectrum.insert(spectrum.end(), z_spectrum.begin(), z_spectrum.end());
    return spectrum;
}

IdentityReport verify_identity(const Matrix& a, const smoothers::XOperator& x_op,
                               const Matrix& p, const Matrix& r_op, double tolerance) {
    IdentityReport report;
    report.identity_spectrum = spectrum_via_identity(a, x_op, p, r_op);

    const Matrix correction = twogrid::coarse_correction(a, p, r_op);
    const Matrix e = correction * (Matrix::identity(a.rows()) - x_op.x_inv * a);
    const Matrix ba = Matrix::identity(a.rows()) - e;
    report.direct_spectrum = linalg::spectrum_general(ba);

    report.max_matching_distance =
        matching::max_matched_distance(report.direct_spectrum, report.identity_spectrum);
    report.tolerance_used = tolerance * std::max(1.0, ba.max_abs());
    report.passed = report.max_matching_distance <= report.tolerance_used;
    return report;
}

} // namespace tgopt::spectral
