#pragma once

#include <vector>

#include "tgopt/matrix.hpp"
#include "tgopt/smoothers.hpp"

namespace tgopt::optimal {

/// Which objective an optimal interpolation minimizes (or bounds).
enum class Objective { GeneralRho, StgANorm, TgRho, NonSymBound, StgKappa, TgKappa };

const char* objective_name(Objective objective);

struct OptimalInterp {
    Matrix p_opt;                      // n x r, columns normalized to unit 2-norm
    double predicted_value = 0.0;      // predicted optimal value (or upper bound)
    Objective variant = Objective::GeneralRho;
    std::vector<double> spectrum_used; // ascending eigenvalues behind the prediction
    bool boundary_degenerate = false;  // eigenvalue tie at the r / r+1 cut
};

struct MaxMinResult {
    double mu_r_plus_1 = 0.0;
    Matrix w_tilde;  // orthonormal basis of span{w_{r+1}, ..., w_n}, w_i = X u_i
};

/// The max-min value over (n-r)-dimensional complement subspaces of the
/// generalized Rayleigh quotient, which equals the (r+1)-th ascending
/// eigenvalue of X^{-1}A, together with the subspace achieving it.
MaxMinResult lemma_max_min(const Matrix& a, const smoothers::XOperator& x_op, Index r);

/// Interpolation minimizing the spectral radius of the error propagation
/// operator for an HPD X with lambda_max(BA) <= 1: the r lowest eigenvectors
/// of X^{-1}A, with minimum rho = 1 - lambda_{r+1}. The assembled operator is
/// re-measured; a spectrum exceeding one fails the hypothesis check.
OptimalInterp optimal_interpolation(const Matrix& a, const smoothers::XOperator& x_op, Index r);

struct StgOptima {
    OptimalInterp a_norm;  // min ||E_STG||_A = min ||E_TG||_A^2 = 1 - lambda_{r+1}
    OptimalInterp kappa;   // min kappa(B_STG A) = 1 / lambda_{r+1}
};

/// Optima for the symmetrized method, driven by the spectrum of X_STG^{-1}A.
StgOptima optimize_stg(const Matrix& a, const smoothers::SmootherOperator& m, Index r);

struct TgOptima {
    OptimalInterp rho;    // min rho(E_TG) = 1 - lambda~_{r+1}, needs M - A >= 0
    OptimalInterp kappa;  // min kappa(B_TG A) = lambda~_n / lambda~_{r+1}
};

/// Optima for the post-smoothing-only method, driven by the spectrum of
/// M^{-1}A. The rho path requires M - A positive semidefinite (scale the
/// smoother first if it is not); the kappa path only needs convergence.
TgOptima optimize_tg(const Matrix& a, const smoothers::SmootherOperator& m, Index r);

/// Upper bound for the unscaled non-symmetric method: eigenvectors of the r
/// largest eigenvalues of (I - M^{-1}A)^2 give rho(E_TG) <= sqrt(lambda^_{n-r}).
/// Eigenpairs are obtained from the generalized problem A u = lambda~ M u and
/// reordered by lambda^ = (1 - lambda~)^2.
OptimalInterp optimize_nonsym(const Matrix& a, const smoothers::SmootherOperator& m, Index r);

/// True iff, for every r, the r lowest eigenvectors of X_STG^{-1}A and of
/// M^{-1}A span the same space (so the A-norm and spectral-radius optima
/// coincide), and sigma(X_STG^{-1}A) is the image of sigma(M^{-1}A) under
/// p(t) = 2t - t^2. Ranks with an eigenvalue tie at the cut are skipped;
/// any choice there attains the optimum.
bool eigenvector_equivalence_check(const Matrix& a, const smoothers::SmootherOperator& m);

} // namespace tgopt::optimal
