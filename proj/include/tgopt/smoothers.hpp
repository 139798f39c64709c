#pragma once

#include <optional>

#include "tgopt/matrix.hpp"

namespace tgopt::smoothers {

enum class SmootherKind { Richardson, Jacobi, WeightedJacobi, GaussSeidel, Sor, ExplicitMatrix };

struct SmootherSpec {
    SmootherKind kind = SmootherKind::Jacobi;
    double omega = 1.0;                // damping / relaxation where applicable
    std::optional<Matrix> explicit_m;  // ExplicitMatrix only
};

/// A smoother M with its inverse materialized. Every identity in the theory
/// manipulates M^{-1} algebraically, so at desk scale we keep it explicit.
struct SmootherOperator {
    Matrix m;
    Matrix m_inv;
    bool hermitian = false;
};

/// The operator X with I - X^{-1}A equal to the full smoothing sweep.
struct XOperator {
    enum class Provenance { Tg, Stg, Composed };
    Matrix x_inv;
    Matrix x;
    Provenance provenance = Provenance::Tg;
};

struct ConvergenceFlags {
    bool a_norm_convergent = false;  // M + M^H - A positive definite
    bool m_minus_a_hpd = false;      // M - A Hermitian positive definite
    bool rho_convergent = false;     // rho(I - M^{-1}A) < 1
    double rho = 0.0;                // measured rho(I - M^{-1}A)
};

/// Builds M for the requested kind: Richardson I/omega, Jacobi D,
/// WeightedJacobi D/omega, GaussSeidel D + L, SOR D/omega + L, or the given
/// explicit matrix. L is the strictly lower triangle of a.
SmootherOperator build_smoother(const SmootherSpec& spec, const Matrix& a);

/// X for the post-smoothing-only sweep: X^{-1} = M^{-1}.
XOperator tg_x(const SmootherOperator& m);

/// Symmetrized operator X^{-1} = M^{-1} + M^{-H} - M^{-1} A M^{-H}, defined
/// (and HPD) whenever M + M^H - A is positive definite.
XOperator symmetrized_x(const SmootherOperator& m, const Matrix& a);

/// X with I - X^{-1}A = (I - M1^{-1}A)^{nu1} (I - M2^{-1}A)^{nu2}.
XOperator composed_x(const SmootherOperator& m1, int nu1, const SmootherOperator& m2,
                     int nu2, const Matrix& a);

/// Eigenvalue-based convergence checks with a strictness margin.
ConvergenceFlags check_convergence_conditions(const SmootherOperator& m, const Matrix& a);

/// Scaled smoother M-hat with M-hat^{-1} = M^{-1} / lambda_max(M^{-1}A), so
/// lambda_max(M-hat^{-1}A) = 1 and M-hat - A is positive semidefinite.
SmootherOperator scale_smoother(const SmootherOperator& m, const Matrix& a);

} // namespace tgopt::smoothers
