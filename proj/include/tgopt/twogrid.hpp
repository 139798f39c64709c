#pragma once

#include <optional>
#include <vector>

#include "tgopt/matrix.hpp"
#include "tgopt/smoothers.hpp"

namespace tgopt::twogrid {

/// The (A, P, R, M1, nu1, M2, nu2) bundle of a two-grid method. When r_op is
/// empty the Galerkin choice R = P^H is used.
struct TwoGridConfig {
    Matrix a;
    Matrix p;
    Matrix r_op;
    std::optional<smoothers::SmootherOperator> pre;
    int nu1 = 0;
    std::optional<smoothers::SmootherOperator> post;
    int nu2 = 0;

    Matrix restriction() const { return r_op.empty() ? p.adjoint() : r_op; }
};

/// Which error-propagation operator to assemble:
///  - General: (I - M2^{-1}A)^{nu2} (I - P A_C^{-1} R A) (I - M1^{-1}A)^{nu1}
///  - Tg:      (I - M^{-H}A) (I - P A_C^{-1} P^H A), post-smoothing only
///  - Stg:     the Tg operator right-multiplied by (I - M^{-1}A)
/// Tg and Stg take their single smoother from the `post` slot and require
/// the Galerkin restriction.
enum class Variant { General, Tg, Stg };

struct ErrorPropagation {
    Matrix e;
    Variant variant = Variant::General;
    TwoGridConfig config;
};

struct PreconditionedSystem {
    Matrix b;   // the implicit preconditioner with E = I - BA
    Matrix ba;  // B A, stored as I - E exactly
};

/// Galerkin coarse matrix A_C = R A P; throws SingularCoarseMatrix when the
/// product is numerically singular.
Matrix coarse_matrix(const Matrix& a, const Matrix& p, const Matrix& r_op);

/// Coarse grid correction I - P A_C^{-1} R A.
Matrix coarse_correction(const Matrix& a, const Matrix& p, const Matrix& r_op);

ErrorPropagation assemble_error_propagation(const TwoGridConfig& config, Variant variant);

PreconditionedSystem preconditioner(const ErrorPropagation& e);

/// Coarse-space quality measure K(V_c) = sup_v ||(I-Q)v||^2_{M-tilde} / ||v||^2_A
/// with the symmetrized smoother M-tilde and the M-tilde-orthogonal projection
/// Q onto range(P), computed as the top generalized eigenvalue of
/// (I-Q)^H M-tilde (I-Q) v = kappa A v. Satisfies ||E_TG||_A^2 = 1 - 1/K.
double kvc(const Matrix& a, const smoothers::SmootherOperator& m, const Matrix& p);

/// Condition number of a preconditioned operator with real positive spectrum:
/// the ratio of the extreme eigenvalues of BA.
double condition_number_ba(const Matrix& ba);

struct SolveResult {
    enum class Status { Converged, MaxIterExceeded, Diverged };
    Matrix solution;  // n x 1
    int iterations = 0;
    double observed_factor = 0.0;  // trailing geometric-mean residual reduction
    Status status = Status::Converged;
    std::vector<double> residual_history;  // ||rhs - A x_k||_2, k = 0..iterations
};

/// Runs the stationary iteration x <- x + B(rhs - A x) whose error operator
/// is the assembled E, until ||rhs - A x||_2 <= tol ||rhs||_2.
SolveResult run_cycle_solver(const Matrix& a, const Matrix& rhs, const TwoGridConfig& config,
                             Variant variant, double tol, int max_iter);

} // namespace tgopt::twogrid
