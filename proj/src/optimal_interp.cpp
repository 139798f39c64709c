#include "tgopt/optimal_interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tgopt/linalg.hpp"
#include "tgopt/twogrid.hpp"

namespace tgopt::optimal {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kPostVerifyTol = 1e-8;

void require_rank(Index r, Index n, const char* who) {
    if (r < 1 || r >= n)
        throw InvalidRank(std::string(who) + ": need 1 <= r < n, got r = " +
                          std::to_string(r) + ", n = " + std::to_string(n));
}

Matrix normalize_columns(const Matrix& m) {
    EigenMatrix out = m.eigen();
    for (Index j = 0; j < out.cols(); ++j) {
        const double norm = out.col(j).norm();
        if (norm > 0.0)
            out.col(j) /= norm;
    }
    return Matrix(std::move(out));
}

bool tie_at_cut(const std::vector<double>& values, Index r) {
    const double scale = std::max(1.0, std::abs(values.back()));
    return std::abs(values[static_cast<std::size_t>(r)] -
                    values[static_cast<std::size_t>(r - 1)]) <= kTieTol * scale;
}

/// rho(E) for E assembled with the full sweep I - X^{-1}A and R = P^H.
double measured_rho(const Matrix& a, const Matrix& x_inv, const Matrix& p) {
    const Matrix e = twogrid::coarse_correction(a, p, p.adjoint()) *
                     (Matrix::identity(a.rows()) - x_inv * a);
    return linalg::spectral_radius(e);
}

double max_real_eigenvalue(const Matrix& s) {
    double top = -std::numeric_limits<double>::infinity();
    for (const Complex z : linalg::spectrum_general(s))
        top = std::max(top, z.real());
    return top;
}

} // namespace

const char* objective_name(Objective objective) {
    switch (objective) {
    case Objective::GeneralRho: return "general_rho";
    case Objective::StgANorm: return "stg_a_norm";
    case Objective::TgRho: return "tg_rho";
    case Objective::NonSymBound: return "nonsym_bound";
    case Objective::StgKappa: return "stg_kappa";
    case Objective::TgKappa: return "tg_kappa";
    }
    return "unknown";
}

MaxMinResult lemma_max_min(const Matrix& a, const smoothers::XOperator& x_op, Index r) {
    require_rank(r, a.rows(), "lemma_max_min");
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("lemma_max_min: a must be HPD");
    const auto eig = linalg::eig_generalized(a, x_op.x);
    const Index n = a.rows();

    // w_i = X u_i; orthonormalize the trailing block in the Euclidean sense.
    const Matrix w = x_op.x * eig.vectors;
    Eigen::HouseholderQR<EigenMatrix> qr(w.eigen().rightCols(n - r).eval());
    EigenMatrix q = qr.householderQ();
    Matrix w_tilde(q.leftCols(n - r).eval());

    const double mu = eig.values[static_cast<std::size_t>(r)];

    // Construction check: the achieved max-min value matches mu_{r+1}.
    const Matrix lhs = (w_tilde.adjoint() * x_op.x_inv * w_tilde).hermitian_part();
    const Matrix metric = (w_tilde.adjoint() * linalg::solve(a, w_tilde)).hermitian_part();
    const double achieved = linalg::eig_generalized(lhs, metric).values.front();
    if (std::abs(achieved - mu) > 1e-9 * std::max(1.0, std::abs(mu)))
        throw Error("lemma_max_min: achieved max-min value disagrees with mu_{r+1}");

    return {mu, std::move(w_tilde)};
}

OptimalInterp optimal_interpolation(const Matrix& a, const smoothers::XOperator& x_op,
                                    Index r) {
    require_rank(r, a.rows(), "optimal_interpolation");
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("optimal_interpolation: a must be HPD");
    const auto eig = linalg::eig_generalized(a, x_op.x);

    OptimalInterp result;
    result.variant = Objective::GeneralRho;
    result.spectrum_used = eig.values;
    result.p_opt = normalize_columns(eig.vectors.columns(0, r));
    result.predicted_value = std::max(0.0, 1.0 - eig.values[static_cast<std::size_t>(r)]);
    result.boundary_degenerate = tie_at_cut(eig.values, r);

    // Hypothesis and achievement checks on the assembled operator.
    const Matrix e = twogrid::coarse_correction(a, result.p_opt, result.p_opt.adjoint()) *
                     (Matrix::identity(a.rows()) - x_op.x_inv * a);
    const Matrix ba = Matrix::identity(a.rows()) - e;
    if (max_real_eigenvalue(ba) > 1.0 + 1e-10)
        throw HypothesisViolated(
            "optimal_interpolation: lambda_max(BA) exceeds one, the spectral-radius "
            "characterization does not apply");
    const double rho = linalg::spectral_radius(e);
    if (std::abs(rho - result.predicted_value) > kPostVerifyTol)
        throw Error("optimal_interpolation: assembled rho disagrees with the prediction");
    return result;
}

StgOptima optimize_stg(const Matrix& a, const smoothers::SmootherOperator& m, Index r) {
    require_rank(r, a.rows(), "optimize_stg");
    const auto x_stg = smoothers::symmetrized_x(m, a);  // throws NotAConvergent
    const auto eig = linalg::eig_generalized(a, x_stg.x);
    const double lambda_next = eig.values[static_cast<std::size_t>(r)];

    OptimalInterp shared;
    shared.spectrum_used = eig.values;
    shared.p_opt = normalize_columns(eig.vectors.columns(0, r));
    shared.boundary_degenerate = tie_at_cut(eig.values, r);

    StgOptima optima{shared, shared};
    optima.a_norm.variant = Objective::StgANorm;
    optima.a_norm.predicted_value = std::max(0.0, 1.0 - lambda_next);
    optima.kappa.variant = Objective::StgKappa;
    optima.kappa.predicted_value = 1.0 / lambda_next;
    return optima;
}

TgOptima optimize_tg(const Matrix& a, const smoothers::SmootherOperator& m, Index r) {
    require_rank(r, a.rows(), "optimize_tg");
    if (!m.hermitian)
        throw NotHermitian("optimize_tg: M must be Hermitian");
    if (!linalg::is_hpd(m.m))
        throw NotPositiveDefinite("optimize_tg: M must be positive definite");
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("optimize_tg: a must be HPD");

    const auto eig = linalg::eig_generalized(a, m.m);
    const double lambda_top = eig.values.back();
    const double lambda_next = eig.values[static_cast<std::size_t>(r)];

    // M - A positive semidefinite <=> lambda_max(M^{-1}A) <= 1. The scaled
    // smoother sits exactly on the boundary, so semidefiniteness suffices.
    if (lambda_top > 1.0 + 1e-10)
        throw SmootherNotDominating(
            "optimize_tg: M - A is not positive semidefinite; scale the smoother first");
    if (!(lambda_top < 2.0 - linalg::kDefiniteMargin))
        throw NotConvergent("optimize_tg: rho(I - M^{-1}A) >= 1");

    OptimalInterp shared;
    shared.spectrum_used = eig.values;
    shared.p_opt = normalize_columns(eig.vectors.columns(0, r));
    shared.boundary_degenerate = tie_at_cut(eig.values, r);

    TgOptima optima{shared, shared};
    optima.rho.variant = Objective::TgRho;
    optima.rho.predicted_value = std::max(0.0, 1.0 - lambda_next);
    optima.kappa.variant = Objective::TgKappa;
    optima.kappa.predicted_value = lambda_top / lambda_next;
    return optima;
}

OptimalInterp optimize_nonsym(const Matrix& a, const smoothers::SmootherOperator& m, Index r) {
    require_rank(r, a.rows(), "optimize_nonsym");
    if (!m.hermitian)
        throw NotHermitian("optimize_nonsym: M must be Hermitian");
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("optimize_nonsym: a must be HPD");

    const auto eig = [&] {
        try {
            return linalg::eig_generalized(a, m.m);
        } catch (const NotPositiveDefinite&) {
            throw NotConvergent("optimize_nonsym: M is not positive definite, so "
                                "rho(I - M^{-1}A) >= 1");
        }
    }();
    if (!(eig.values.back() < 2.0 - linalg::kDefiniteMargin))
        throw NotConvergent("optimize_nonsym: rho(I - M^{-1}A) >= 1");

    const Index n = a.rows();

    // lambda^ = (1 - lambda~)^2 shares eigenvectors with the generalized
    // problem; reorder stably by lambda^.
    std::vector<double> squared(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < squared.size(); ++i) {
        const double t = 1.0 - eig.values[i];
        squared[i] = t * t;
    }
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index lhs, Index rhs) {
        return squared[static_cast<std::size_t>(lhs)] < squared[static_cast<std::size_t>(rhs)];
    });

    OptimalInterp result;
    result.variant = Objective::NonSymBound;
    result.spectrum_used.resize(squared.size());
    for (std::size_t i = 0; i < squared.size(); ++i)
        result.spectrum_used[i] = squared[static_cast<std::size_t>(order[i])];

    EigenMatrix p_hat(n, r);
    for (Index j = 0; j < r; ++j)
        p_hat.col(j) = eig.vectors.eigen().col(order[static_cast<std::size_t>(n - r + j)]);
    result.p_opt = normalize_columns(Matrix(std::move(p_hat)));
    result.predicted_value = std::sqrt(result.spectrum_used[static_cast<std::size_t>(n - r - 1)]);
    result.boundary_degenerate =
        std::abs(result.spectrum_used[static_cast<std::size_t>(n - r)] -
                 result.spectrum_used[static_cast<std::size_t>(n - r - 1)]) <= kTieTol;

    // The bound must hold for the assembled post-smoothing-only operator.
    const double rho = measured_rho(a, m.m_inv, result.p_opt);
    if (rho > result.predicted_value + kPostVerifyTol)
        throw Error("optimize_nonsym: assembled rho exceeds the predicted bound");
    return result;
}

bool eigenvector_equivalence_check(const Matrix& a, const smoothers::SmootherOperator& m) {
    if (!m.hermitian)
        throw NotHermitian("eigenvector_equivalence_check: M must be Hermitian");
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("eigenvector_equivalence_check: a must be HPD");
    const Matrix dominance = (m.m - a).hermitian_part();
    if (linalg::smallest_eigenvalue(dominance) < -1e-10 * std::max(1.0, dominance.max_abs()))
        throw SmootherNotDominating(
            "eigenvector_equivalence_check: M - A is not positive semidefinite");

    const auto eig_m = linalg::eig_generalized(a, m.m);
    const auto x_stg = smoothers::symmetrized_x(m, a);
    const auto eig_s = linalg::eig_generalized(a, x_stg.x);
    const Index n = a.rows();

    // sigma(X_STG^{-1}A) must be the image of sigma(M^{-1}A) under 2t - t^2;
    // the polynomial is increasing on t <= 1, so ascending order is preserved.
    for (Index i = 0; i < n; ++i) {
        const double t = eig_m.values[static_cast<std::size_t>(i)];
        const double mapped = 2.0 * t - t * t;
        if (std::abs(mapped - eig_s.values[static_cast<std::size_t>(i)]) > 1e-9)
            return false;
    }

    for (Index r = 1; r < n; ++r) {
        if (tie_at_cut(eig_m.values, r) || tie_at_cut(eig_s.values, r))
            continue;  // any eigenvector choice attains the optimum at a tie
        const double angle = linalg::subspace_sin_angle(eig_m.vectors.columns(0, r),
                                                        eig_s.vectors.columns(0, r));
        if (angle >= 1e-8)
            return false;
    }
    return true;
}

} // namespace tgopt::optimal
