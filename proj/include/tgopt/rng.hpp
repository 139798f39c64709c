#pragma once

#include <cstdint>
#include <random>

#include "tgopt/matrix.hpp"

namespace tgopt::rng {

/// Deterministic random stream with a fixed, platform-independent algorithm:
/// the engine is std::mt19937_64 (bit-exact by the C++ standard), uniforms
/// take the top 53 bits of one draw, and normals come from the Box-Muller
/// transform. Identical seeds give identical sequences everywhere.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    /// Uniform double in [0, 1).
    double uniform01();

    /// Standard normal N(0, 1) via Box-Muller.
    double normal();

    /// Complex with independent N(0, 1) real and imaginary parts.
    Complex complex_normal();

    /// Derives an independent stream for sub-experiment `index`.
    Stream fork(std::uint64_t index) const;

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
    std::uint64_t seed_ = 0;
};

/// Matrix with independent complex-normal entries.
Matrix gaussian(Index rows, Index cols, Stream& stream);

/// Random unitary matrix: the Q factor of a QR decomposition of a complex
/// Gaussian matrix, with the phase convention that R has positive real
/// diagonal (makes Q a deterministic function of the Gaussian draw).
Matrix random_unitary(Index n, Stream& stream);

/// Random full-column-rank matrix (Gaussian, redrawn in the measure-zero
/// event of near rank deficiency).
Matrix random_full_rank(Index rows, Index cols, Stream& stream);

/// Random nonsingular square matrix.
Matrix random_nonsingular(Index n, Stream& stream);

/// Random HPD matrix with spectrum drawn uniformly from [lo, hi].
Matrix random_hpd_spectrum(Index n, double lo, double hi, Stream& stream);

} // namespace tgopt::rng
