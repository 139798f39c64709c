#include "tgopt/smoothers.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "tgopt/linalg.hpp"

namespace tgopt::smoothers {

namespace {

Matrix invert_or_throw(const Matrix& m, const char* who) {
    try {
        return linalg::inverse(m);
    } catch (const SingularA&) {
        throw SingularSmoother(std::string(who) + ": smoother matrix is singular");
    }
}

SmootherOperator make_operator(Matrix m) {
    const bool hermitian = m.is_hermitian(linalg::kHermitianRelTol);
    Matrix m_inv = invert_or_throw(m, "build_smoother");
    return {std::move(m), std::move(m_inv), hermitian};
}

void require_nonzero_diagonal(const Matrix& a, const char* who) {
    for (Index i = 0; i < a.rows(); ++i)
        if (std::abs(a(i, i)) == 0.0)
            throw ZeroDiagonal(std::string(who) + ": zero diagonal entry at row " +
                               std::to_string(i));
}

Matrix diagonal_of(const Matrix& a) {
    EigenMatrix d = EigenMatrix::Zero(a.rows(), a.cols());
    d.diagonal() = a.eigen().diagonal();
    return Matrix(std::move(d));
}

Matrix strict_lower_of(const Matrix& a) {
    EigenMatrix l = a.eigen().triangularView<Eigen::StrictlyLower>();
    return Matrix(std::move(l));
}

} // namespace

SmootherOperator build_smoother(const SmootherSpec& spec, const Matrix& a) {
    require_square(a, "build_smoother");
    if (spec.kind != SmootherKind::ExplicitMatrix && !(spec.omega > 0.0))
        throw std::invalid_argument("build_smoother: omega must be positive");

    switch (spec.kind) {
    case SmootherKind::Richardson:
        return make_operator((1.0 / spec.omega) * Matrix::identity(a.rows()));
    case SmootherKind::Jacobi:
        require_nonzero_diagonal(a, "build_smoother(Jacobi)");
        return make_operator(diagonal_of(a));
    case SmootherKind::WeightedJacobi:
        require_nonzero_diagonal(a, "build_smoother(WeightedJacobi)");
        return make_operator((1.0 / spec.omega) * diagonal_of(a));
    case SmootherKind::GaussSeidel:
        require_nonzero_diagonal(a, "build_smoother(GaussSeidel)");
        return make_operator(diagonal_of(a) + strict_lower_of(a));
    case SmootherKind::Sor:
        if (!(spec.omega < 2.0))
            throw std::invalid_argument("build_smoother: SOR requires 0 < omega < 2");
        require_nonzero_diagonal(a, "build_smoother(SOR)");
        return make_operator((1.0 / spec.omega) * diagonal_of(a) + strict_lower_of(a));
    case SmootherKind::ExplicitMatrix:
        if (!spec.explicit_m)
            throw std::invalid_argument("build_smoother: ExplicitMatrix needs a matrix");
        if (spec.explicit_m->rows() != a.rows() || !spec.explicit_m->is_square())
            throw DimensionMismatch("build_smoother: explicit smoother shape disagrees with a");
        return make_operator(*spec.explicit_m);
    }
    throw std::invalid_argument("build_smoother: unknown smoother kind");
}

XOperator tg_x(const SmootherOperator& m) {
    return {m.m_inv, m.m, XOperator::Provenance::Tg};
}

XOperator symmetrized_x(const SmootherOperator& m, const Matrix& a) {
    require_square(a, "symmetrized_x");
    require_same_shape(m.m, a, "symmetrized_x");
    const Matrix condition = m.m + m.m.adjoint() - a;
    if (!linalg::is_hpd(condition))
        throw NotAConvergent("symmetrized_x: M + M^H - A is not positive definite");

    const Matrix m_inv_h = m.m_inv.adjoint();
    Matrix x_inv = (m.m_inv + m_inv_h - m.m_inv * a * m_inv_h).hermitian_part();
    // HPD by construction (congruence of M + M^H - A by M^{-1}); invert by
    // Cholesky to keep the inverse Hermitian.
    Eigen::LLT<EigenMatrix> llt(x_inv.eigen());
    if (llt.info() != Eigen::Success)
        throw NotAConvergent("symmetrized_x: X is not positive definite");
    Matrix x = Matrix(llt.solve(EigenMatrix::Identity(a.rows(), a.rows())).eval())
                   .hermitian_part();
    return {std::move(x_inv), std::move(x), XOperator::Provenance::Stg};
}

XOperator composed_x(const SmootherOperator& m1, int nu1, const SmootherOperator& m2,
                     int nu2, const Matrix& a) {
    require_square(a, "composed_x");
    if (nu1 < 0 || nu2 < 0 || nu1 + nu2 < 1)
        throw std::invalid_argument("composed_x: need nu1 + nu2 >= 1");
    const Index n = a.rows();
    const Matrix identity = Matrix::identity(n);

    Matrix sweep = identity;
    if (nu1 > 0) {
        require_same_shape(m1.m, a, "composed_x");
        const Matrix factor = identity - m1.m_inv * a;
        for (int k = 0; k < nu1; ++k)
            sweep = sweep * factor;
    }
    if (nu2 > 0) {
        require_same_shape(m2.m, a, "composed_x");
        const Matrix factor = identity - m2.m_inv * a;
        for (int k = 0; k < nu2; ++k)
            sweep = sweep * factor;
    }

    Matrix a_inv;
    try {
        a_inv = linalg::inverse(a);
    } catch (const SingularA&) {
        throw SingularX("composed_x: a is singular");
    }
    Matrix x_inv = (identity - sweep) * a_inv;
    if (!linalg::is_invertible(x_inv))
        throw SingularX("composed_x: 1 is an eigenvalue of the smoothing sweep, X is singular");
    Matrix x = linalg::inverse(x_inv);
    return {std::move(x_inv), std::move(x), XOperator::Provenance::Composed};
}

ConvergenceFlags check_convergence_conditions(const SmootherOperator& m, const Matrix& a) {
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("check_convergence_conditions: a must be HPD");
    require_same_shape(m.m, a, "check_convergence_conditions");

    ConvergenceFlags flags;
    flags.a_norm_convergent = linalg::is_hpd(m.m + m.m.adjoint() - a);
    const Matrix m_minus_a = m.m - a;
    flags.m_minus_a_hpd = linalg::is_hpd(m_minus_a);
    flags.rho = linalg::spectral_radius(Matrix::identity(a.rows()) - m.m_inv * a);
    flags.rho_convergent = flags.rho < 1.0 - linalg::kDefiniteMargin;
    return flags;
}

SmootherOperator scale_smoother(const SmootherOperator& m, const Matrix& a) {
    if (!linalg::is_hpd(m.m))
        throw NotPositiveDefinite("scale_smoother: M must be HPD");
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("scale_smoother: a must be HPD");
    const auto eig = linalg::eig_generalized(a, m.m);
    const double lambda_max = eig.values.back();
    Matrix scaled = lambda_max * m.m;
    Matrix scaled_inv = (1.0 / lambda_max) * m.m_inv;
    return {std::move(scaled), std::move(scaled_inv), true};
}

} // namespace tgopt::smoothers
