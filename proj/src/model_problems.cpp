#include "tgopt/model_problems.hpp"

#include <cmath>
#include <vector>

#include "tgopt/matrix_market.hpp"
#include "tgopt/rng.hpp"

namespace tgopt::problems {

Matrix laplacian_1d(Index n) {
    if (n < 2)
        throw InvalidDimension("laplacian_1d: n must be at least 2");
    EigenMatrix m = EigenMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        m(i, i) = 2.0;
        if (i > 0)
            m(i, i - 1) = -1.0;
        if (i + 1 < n)
            m(i, i + 1) = -1.0;
    }
    return Matrix(std::move(m));
}

Matrix laplacian_2d(Index nx, Index ny) {
    if (nx < 2 || ny < 2)
        throw InvalidDimension("laplacian_2d: nx and ny must be at least 2");
    const Index n = nx * ny;
    EigenMatrix m = EigenMatrix::Zero(n, n);
    const auto idx = [ny](Index ix, Index iy) { return ix * ny + iy; };
    for (Index ix = 0; ix < nx; ++ix) {
        for (Index iy = 0; iy < ny; ++iy) {
            const Index row = idx(ix, iy);
            m(row, row) = 4.0;
            if (ix > 0)
                m(row, idx(ix - 1, iy)) = -1.0;
            if (ix + 1 < nx)
                m(row, idx(ix + 1, iy)) = -1.0;
            if (iy > 0)
                m(row, idx(ix, iy - 1)) = -1.0;
            if (iy + 1 < ny)
                m(row, idx(ix, iy + 1)) = -1.0;
        }
    }
    return Matrix(std::move(m));
}

Matrix random_hpd(Index n, double target_condition, std::uint64_t seed) {
    if (n < 2)
        throw InvalidDimension("random_hpd: n must be at least 2");
    if (!(target_condition >= 1.0))
        throw InvalidCondition("random_hpd: target_condition must be at least 1");

    // Logarithmically spaced spectrum in [1, cond] so the extreme ratio is
    // exactly the target.
    std::vector<double> values(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] =
            std::pow(target_condition, static_cast<double>(i) / static_cast<double>(n - 1));

    rng::Stream stream(seed);
    const Matrix q = rng::random_unitary(n, stream);
    return (q * Matrix::diag(values) * q.adjoint()).hermitian_part();
}

Matrix geometric_interp_1d(Index n_fine) {
    if (n_fine < 3 || n_fine % 2 == 0)
        throw InvalidDimension("geometric_interp_1d: n_fine must be odd and at least 3");
    const Index r = (n_fine - 1) / 2;
    EigenMatrix p = EigenMatrix::Zero(n_fine, r);
    for (Index j = 0; j < r; ++j) {
        p(2 * j, j) = 0.5;
        p(2 * j + 1, j) = 1.0;
        p(2 * j + 2, j) = 0.5;
    }
    return Matrix(std::move(p));
}

Matrix resolve(const ProblemSpec& spec) {
    switch (spec.kind) {
    case ProblemKind::Laplacian1D:
        return laplacian_1d(spec.n);
    case ProblemKind::Laplacian2D:
        return laplacian_2d(spec.nx, spec.ny);
    case ProblemKind::RandomHpd:
        return random_hpd(spec.n, spec.target_condition, spec.seed);
    case ProblemKind::FromFile:
        return mm::load_matrix_market(spec.path);
    }
    throw ConfigError("resolve: unknown problem kind");
}

} // namespace tgopt::problems
