#include "tgopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace tgopt::linalg {

namespace {

Eigen::VectorXd singular_values(const EigenMatrix& m) {
    return Eigen::BDCSVD<EigenMatrix>(m).singularValues();
}

} // namespace

CholeskyFactor cholesky(const Matrix& h) {
    require_square(h, "cholesky");
    const Matrix sym = require_hermitian(h, "cholesky");
    Eigen::LLT<EigenMatrix> llt(sym.eigen());
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("cholesky: matrix is not positive definite");
    EigenMatrix l = llt.matrixL();
    return {Matrix(std::move(l)), h.rows()};
}

HermitianEigen eig_hermitian(const Matrix& h) {
    require_square(h, "eig_hermitian");
    const Matrix sym = require_hermitian(h, "eig_hermitian");
    Eigen::SelfAdjointEigenSolver<EigenMatrix> es(sym.eigen());
    if (es.info() != Eigen::Success)
        throw Error("eig_hermitian: eigensolver failed to converge");
    std::vector<double> values(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
    return {std::move(values), Matrix(es.eigenvectors())};
}

GeneralizedEigen eig_generalized(const Matrix& a, const Matrix& x) {
    require_square(a, "eig_generalized");
    require_same_shape(a, x, "eig_generalized");
    const Matrix a_sym = require_hermitian(a, "eig_generalized");

    const CholeskyFactor chol = [&] {
        try {
            return cholesky(x);
        } catch (const NotPositiveDefinite&) {
            throw NotPositiveDefinite("eig_generalized: the metric X is not HPD");
        }
    }();

    // Reduce to L^{-1} A L^{-H} and symmetrize away accumulation noise.
    const auto& l = chol.l.eigen();
    EigenMatrix reduced = l.triangularView<Eigen::Lower>().solve(a_sym.eigen());
    reduced = l.triangularView<Eigen::Lower>().solve(reduced.adjoint().eval());
    reduced = ((reduced + reduced.adjoint()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<EigenMatrix> es(reduced);
    if (es.info() != Eigen::Success)
        throw Error("eig_generalized: eigensolver failed to converge");

    // Map eigenvectors back: u = L^{-H} y, which makes them X-orthonormal.
    EigenMatrix u = l.adjoint().triangularView<Eigen::Upper>().solve(es.eigenvectors());

    std::vector<double> values(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
    return {std::move(values), Matrix(std::move(u)), x};
}

std::vector<Complex> spectrum_general(const Matrix& s) {
    require_square(s, "spectrum_general");
    if (s.rows() == 0)
        return {};
    Eigen::ComplexSchur<EigenMatrix> schur(s.eigen(), /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw Error("spectrum_general: Schur reduction failed to converge");
    const Eigen::VectorXcd diag = schur.matrixT().diagonal();
    return {diag.data(), diag.data() + diag.size()};
}

Matrix orthonormal_complement(const Matrix& u) {
    const Index n = u.rows();
    const Index k = u.cols();
    if (k == 0 || k > n)
        throw DimensionMismatch("orthonormal_complement: need 1 <= cols <= rows");
    if (k == n)
        throw NoComplement("orthonormal_complement: column span is the whole space");

    const Eigen::VectorXd sv = singular_values(u.eigen());
    if (sv(k - 1) <= kRankRelTol * sv(0))
        throw RankDeficient("orthonormal_complement: input is rank deficient");

    Eigen::HouseholderQR<EigenMatrix> qr(u.eigen());
    EigenMatrix q = qr.householderQ();
    return Matrix(q.rightCols(n - k).eval());
}

double operator_a_norm(const Matrix& s, const Matrix& a) {
    require_square(s, "operator_a_norm");
    if (s.rows() != a.rows())
        throw DimensionMismatch("operator_a_norm: s and a dimensions disagree");
    const Matrix root = hpd_sqrt(a);
    // s a^{-1/2} = (a^{-1/2} s^H)^H since the root is Hermitian.
    Eigen::LLT<EigenMatrix> llt(root.eigen());
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("operator_a_norm: a is not HPD");
    const EigenMatrix right = llt.solve(s.eigen().adjoint()).adjoint();
    return singular_values((root.eigen() * right).eval()).coeff(0);
}

double spectral_radius(const Matrix& s) {
    const auto spectrum = spectrum_general(s);
    double radius = 0.0;
    for (const Complex z : spectrum)
        radius = std::max(radius, std::abs(z));
    return radius;
}

Matrix hpd_sqrt(const Matrix& a) {
    const HermitianEigen eig = eig_hermitian(a);
    if (eig.values.front() <= kDefiniteMargin * a.max_abs())
        throw NotPositiveDefinite("hpd_sqrt: matrix is not positive definite");
    EigenMatrix scaled = eig.vectors.eigen();
    for (Index j = 0; j < scaled.cols(); ++j)
        scaled.col(j) *= std::sqrt(eig.values[static_cast<std::size_t>(j)]);
    EigenMatrix root = scaled * eig.vectors.eigen().adjoint();
    return Matrix(((root + root.adjoint()) / 2.0).eval());
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
    require_square(a, "solve");
    if (a.rows() != rhs.rows())
        throw DimensionMismatch("solve: rhs rows disagree with a");
    Eigen::FullPivLU<EigenMatrix> lu(a.eigen());
    lu.setThreshold(1e-13);
    if (!lu.isInvertible())
        throw SingularA("solve: matrix is numerically singular");
    return Matrix(lu.solve(rhs.eigen()).eval());
}

Matrix inverse(const Matrix& a) {
    return solve(a, Matrix::identity(a.rows()));
}

bool is_invertible(const Matrix& a, double rel_tol) {
    if (!a.is_square() || a.rows() == 0)
        return false;
    const Eigen::VectorXd sv = singular_values(a.eigen());
    return sv(sv.size() - 1) > rel_tol * sv(0);
}

double spectral_norm(const Matrix& s) {
    if (s.eigen().size() == 0)
        return 0.0;
    return singular_values(s.eigen()).coeff(0);
}

Matrix require_hermitian(const Matrix& h, const char* who) {
    require_square(h, who);
    if (!h.is_hermitian(kHermitianRelTol))
        throw NotHermitian(std::string(who) + ": matrix is not Hermitian within tolerance");
    return h.hermitian_part();
}

double smallest_eigenvalue(const Matrix& h) {
    return eig_hermitian(h).values.front();
}

bool is_hpd(const Matrix& h) {
    if (!h.is_square() || !h.is_hermitian(kHermitianRelTol))
        return false;
    return smallest_eigenvalue(h) > kDefiniteMargin * h.max_abs();
}

double subspace_sin_angle(const Matrix& u, const Matrix& v) {
    require_same_shape(u, v, "subspace_sin_angle");
    const Index k = u.cols();
    if (k == 0 || k > u.rows())
        throw DimensionMismatch("subspace_sin_angle: need 1 <= cols <= rows");
    const auto thin_q = [k](const Matrix& m) {
        Eigen::HouseholderQR<EigenMatrix> qr(m.eigen());
        EigenMatrix q = qr.householderQ();
        return q.leftCols(k).eval();
    };
    const EigenMatrix qu = thin_q(u);
    const EigenMatrix qv = thin_q(v);
    const EigenMatrix residual = qv - qu * (qu.adjoint() * qv);
    const double s = singular_values(residual).coeff(0);
    return std::min(s, 1.0);
}

} // namespace tgopt::linalg
