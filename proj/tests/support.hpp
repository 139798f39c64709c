#pragma once

#include <cmath>
#include <vector>

#include "tgopt/linalg.hpp"
#include "tgopt/matching.hpp"
#include "tgopt/matrix.hpp"
#include "tgopt/rng.hpp"
#include "tgopt/smoothers.hpp"

namespace tgtest {

using tgopt::Complex;
using tgopt::Index;
using tgopt::Matrix;

/// Worst one-to-one matched distance between two spectra.
inline double spectra_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    return tgopt::matching::max_matched_distance(a, b);
}

inline std::vector<Complex> to_complex(const std::vector<double>& values) {
    return {values.begin(), values.end()};
}

/// Analytic eigenvalues of the 1D Laplacian stencil: 4 sin^2(k pi / (2(n+1))).
inline std::vector<double> laplacian_1d_eigenvalues(Index n) {
    std::vector<double> values(static_cast<std::size_t>(n));
    for (Index k = 1; k <= n; ++k) {
        const double s = std::sin(static_cast<double>(k) * M_PI /
                                  (2.0 * static_cast<double>(n + 1)));
        values[static_cast<std::size_t>(k - 1)] = 4.0 * s * s;
    }
    return values;
}

/// Seeded HPD matrix together with a Hermitian smoother satisfying
/// M + M^H - A positive definite (M = A + shift I dominates).
struct HpdInstance {
    Matrix a;
    tgopt::smoothers::SmootherOperator m;
};

inline HpdInstance random_convergent_instance(Index n, std::uint64_t seed,
                                              bool dominating = false) {
    tgopt::rng::Stream stream(seed);
    Matrix a = tgopt::rng::random_hpd_spectrum(n, 0.3, 4.0, stream);

    Matrix m_matrix;
    if (dominating) {
        // M - A HPD by an explicit positive shift.
        m_matrix = (a + tgopt::rng::random_hpd_spectrum(n, 0.2, 1.0, stream)).hermitian_part();
    } else {
        // Hermitian M with M + M^H - A = 2M - A positive definite.
        m_matrix =
            (0.5 * a + tgopt::rng::random_hpd_spectrum(n, 0.5, 2.0, stream)).hermitian_part();
    }
    tgopt::smoothers::SmootherSpec spec;
    spec.kind = tgopt::smoothers::SmootherKind::ExplicitMatrix;
    spec.explicit_m = m_matrix;
    return {a, tgopt::smoothers::build_smoother(spec, a)};
}

inline tgopt::smoothers::SmootherOperator explicit_smoother(const Matrix& m, const Matrix& a) {
    tgopt::smoothers::SmootherSpec spec;
    spec.kind = tgopt::smoothers::SmootherKind::ExplicitMatrix;
    spec.explicit_m = m;
    return tgopt::smoothers::build_smoother(spec, a);
}

} // namespace tgtest
