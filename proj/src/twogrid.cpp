#include "tgopt/twogrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tgopt/linalg.hpp"

namespace tgopt::twogrid {

namespace {

void validate_shapes(const TwoGridConfig& config) {
    require_square(config.a, "two-grid config");
    const Index n = config.a.rows();
    const Index r = config.p.cols();
    if (config.p.rows() != n)
        throw DimensionMismatch("two-grid config: P row count disagrees with A");
    if (r < 1 || r >= n)
        throw InvalidRank("two-grid config: need 1 <= r < n, got r = " + std::to_string(r) +
                          ", n = " + std::to_string(n));
    if (!config.r_op.empty() &&
        (config.r_op.rows() != r || config.r_op.cols() != n))
        throw DimensionMismatch("two-grid config: R must be r x n");
    const Eigen::VectorXd sv = Eigen::BDCSVD<EigenMatrix>(config.p.eigen()).singularValues();
    if (sv(sv.size() - 1) <= linalg::kRankRelTol * sv(0))
        throw RankDeficient("two-grid config: P is rank deficient");
}

const smoothers::SmootherOperator& single_smoother(const TwoGridConfig& config,
                                                   const char* variant_name) {
    if (!config.post || config.pre)
        throw std::invalid_argument(std::string(variant_name) +
                                    " variant takes exactly one smoother, in the post slot");
    return *config.post;
}

void require_galerkin_restriction(const TwoGridConfig& config, const char* variant_name) {
    if (config.r_op.empty())
        return;
    if (max_abs_diff(config.r_op, config.p.adjoint()) >
        1e-12 * std::max(1.0, config.p.max_abs()))
        throw std::invalid_argument(std::string(variant_name) +
                                    " variant requires the Galerkin restriction R = P^H");
}

} // namespace

Matrix coarse_matrix(const Matrix& a, const Matrix& p, const Matrix& r_op) {
    if (r_op.rows() != p.cols() || r_op.cols() != a.rows() || p.rows() != a.cols())
        throw DimensionMismatch("coarse_matrix: shapes do not conform");
    Matrix ac = r_op * a * p;
    if (!linalg::is_invertible(ac))
        throw SingularCoarseMatrix("coarse_matrix: R A P is numerically singular");
    return ac;
}

Matrix coarse_correction(const Matrix& a, const Matrix& p, const Matrix& r_op) {
    const Matrix ac = coarse_matrix(a, p, r_op);
    const Matrix correction = p * linalg::solve(ac, r_op * a);
    return Matrix::identity(a.rows()) - correction;
}

ErrorPropagation assemble_error_propagation(const TwoGridConfig& config, Variant variant) {
    validate_shapes(config);
    const Index n = config.a.rows();
    const Matrix identity = Matrix::identity(n);

    Matrix e;
    switch (variant) {
    case Variant::General: {
        Matrix op = coarse_correction(config.a, config.p, config.restriction());
        if (config.nu1 > 0) {
            if (!config.pre)
                throw std::invalid_argument("general variant: nu1 > 0 but no pre-smoother");
            const Matrix factor = identity - config.pre->m_inv * config.a;
            for (int k = 0; k < config.nu1; ++k)
                op = op * factor;
        }
        if (config.nu2 > 0) {
            if (!config.post)
                throw std::invalid_argument("general variant: nu2 > 0 but no post-smoother");
            const Matrix factor = identity - config.post->m_inv * config.a;
            for (int k = 0; k < config.nu2; ++k)
                op = factor * op;
        }
        e = std::move(op);
        break;
    }
    case Variant::Tg: {
        require_galerkin_restriction(config, "Tg");
        const auto& m = single_smoother(config, "Tg");
        e = (identity - m.m_inv.adjoint() * config.a) *
            coarse_correction(config.a, config.p, config.p.adjoint());
        break;
    }
    case Variant::Stg: {
        require_galerkin_restriction(config, "Stg");
        const auto& m = single_smoother(config, "Stg");
        const Matrix correction = coarse_correction(config.a, config.p, config.p.adjoint());
        e = (identity - m.m_inv.adjoint() * config.a) * correction *
            (identity - m.m_inv * config.a);
        break;
    }
    }
    return {std::move(e), variant, config};
}

PreconditionedSystem preconditioner(const ErrorPropagation& e) {
    const Index n = e.e.rows();
    Matrix ba = Matrix::identity(n) - e.e;
    // B = (I - E) A^{-1}, materialized through one solve against A^H.
    Matrix b;
    try {
        b = linalg::solve(e.config.a.adjoint(), ba.adjoint()).adjoint();
    } catch (const SingularA&) {
        throw SingularA("preconditioner: A is numerically singular");
    }
    return {std::move(b), std::move(ba)};
}

double kvc(const Matrix& a, const smoothers::SmootherOperator& m, const Matrix& p) {
    if (!linalg::is_hpd(a))
        throw NotPositiveDefinite("kvc: a must be HPD");
    const Index n = a.rows();
    const Index r = p.cols();
    if (p.rows() != n || r < 1 || r >= n)
        throw InvalidRank("kvc: need an n x r interpolation with 1 <= r < n");

    const auto x_stg = smoothers::symmetrized_x(m, a);  // throws NotAConvergent
    const Matrix& m_tilde = x_stg.x;

    const Matrix gram = p.adjoint() * m_tilde * p;
    if (!linalg::is_invertible(gram))
        throw RankDeficient("kvc: P^H M-tilde P is singular");
    const Matrix q = p * linalg::solve(gram, p.adjoint() * m_tilde);
    const Matrix residual_proj = Matrix::identity(n) - q;
    const Matrix lhs = (residual_proj.adjoint() * m_tilde * residual_proj).hermitian_part();
    const auto eig = linalg::eig_generalized(lhs, a);
    return eig.values.back();
}

double condition_number_ba(const Matrix& ba) {
    const auto spectrum = linalg::spectrum_general(ba);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double scale = 0.0;
    for (const Complex z : spectrum)
        scale = std::max(scale, std::abs(z));
    for (const Complex z : spectrum) {
        if (std::abs(z.imag()) > 1e-8 * std::max(1.0, scale))
            throw HypothesisViolated("condition_number_ba: spectrum is not real");
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
    }
    if (!(lo > 0.0))
        throw HypothesisViolated("condition_number_ba: spectrum is not positive");
    return hi / lo;
}

SolveResult run_cycle_solver(const Matrix& a, const Matrix& rhs, const TwoGridConfig& config,
                             Variant variant, double tol, int max_iter) {
    if (rhs.cols() != 1 || rhs.rows() != a.rows())
        throw DimensionMismatch("run_cycle_solver: rhs must be an n x 1 vector");
    if (!(tol > 0.0) || max_iter < 1)
        throw std::invalid_argument("run_cycle_solver: need tol > 0 and max_iter >= 1");

    const auto error_op = assemble_error_propagation(config, variant);
    const auto precond = preconditioner(error_op);

    SolveResult result;
    result.solution = Matrix::zero(a.rows(), 1);
    Matrix residual = rhs;
    const double rhs_norm = rhs.frobenius_norm();
    const double target = tol * rhs_norm;
    double best_residual = residual.frobenius_norm();
    Matrix best_solution = result.solution;
    result.residual_history.push_back(best_residual);

    if (best_residual <= target) {
        result.status = SolveResult::Status::Converged;
        return result;
    }

    for (int it = 1; it <= max_iter; ++it) {
        result.solution += precond.b * residual;
        residual = rhs - a * result.solution;
        const double res_norm = residual.frobenius_norm();
        result.iterations = it;
        result.residual_history.push_back(res_norm);
        if (res_norm < best_residual) {
            best_residual = res_norm;
            best_solution = result.solution;
        }
        if (res_norm <= target) {
            result.status = SolveResult::Status::Converged;
            break;
        }
        if (res_norm > 1e6 * result.residual_history.front()) {
            result.status = SolveResult::Status::Diverged;
            break;
        }
        if (it == max_iter)
            result.status = SolveResult::Status::MaxIterExceeded;
    }

    if (result.status != SolveResult::Status::Converged) {
        result.solution = best_solution;
    }

    // Geometric mean of the trailing residual reduction ratios.
    const int window = std::min(10, result.iterations - 1);
    if (window >= 1) {
        const std::size_t last = result.residual_history.size() - 1;
        const double head = result.residual_history[last - static_cast<std::size_t>(window)];
        const double tail = result.residual_history[last];
        if (head > 0.0)
            result.observed_factor = std::pow(tail / head, 1.0 / window);
    }
    return result;
}

} // namespace tgopt::twogrid
