#include "tgopt/rng.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace tgopt::rng {

namespace {

// SplitMix64 finalizer, used only for deriving fork seeds.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

double Stream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Stream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 is kept away from zero so the log is finite.
    double u1 = 0.0;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Complex Stream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Stream Stream::fork(std::uint64_t index) const {
    return Stream(mix(seed_ ^ mix(index + 1)));
}

Matrix gaussian(Index rows, Index cols, Stream& stream) {
    EigenMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = stream.complex_normal();
    return Matrix(std::move(m));
}

Matrix random_unitary(Index n, Stream& stream) {
    const Matrix g = gaussian(n, n, stream);
    Eigen::HouseholderQR<EigenMatrix> qr(g.eigen());
    EigenMatrix q = qr.householderQ();
    const EigenMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so R's diagonal is positive real.
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0)
            q.col(j) *= d / a;
    }
    return Matrix(std::move(q));
}

Matrix random_full_rank(Index rows, Index cols, Stream& stream) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Matrix g = gaussian(rows, cols, stream);
        Eigen::JacobiSVD<EigenMatrix> svd(g.eigen());
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) > 1e-8 * sv(0))
            return g;
    }
    throw Error("random_full_rank: could not draw a well-conditioned matrix");
}

Matrix random_nonsingular(Index n, Stream& stream) {
    return random_full_rank(n, n, stream);
}

Matrix random_hpd_spectrum(Index n, double lo, double hi, Stream& stream) {
    std::vector<double> values(n);
    for (auto& v : values)
        v = lo + (hi - lo) * stream.uniform01();
    const Matrix q = random_unitary(n, stream);
    const Matrix d = Matrix::diag(values);
    return (q * d * q.adjoint()).hermitian_part();
}

} // namespace tgopt::rng
