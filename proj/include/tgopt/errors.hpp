#pragma once

#include <stdexcept>
#include <string>

namespace tgopt {

/// Base class for every contract or numerical error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonFiniteEntry : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct NoComplement : Error { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };
struct InvalidCondition : Error { using Error::Error; };
struct InvalidRank : Error { using Error::Error; };
struct ZeroDiagonal : Error { using Error::Error; };
struct SingularSmoother : Error { using Error::Error; };

/// M + M^H - A failed the positive definiteness test, so the smoother is not
/// convergent in the energy norm and the symmetrized operator does not exist.
struct NotAConvergent : Error { using Error::Error; };

/// The composed smoother product has 1 as an eigenvalue, so no non-singular X
/// with I - X^{-1}A equal to that product exists.
struct SingularX : Error { using Error::Error; };

struct SingularCoarseMatrix : Error { using Error::Error; };
struct SingularA : Error { using Error::Error; };
struct SingularRXP : Error { using Error::Error; };
struct SingularComplementGram : Error { using Error::Error; };

/// A spectral hypothesis (e.g. lambda_max(BA) <= 1) failed after assembly.
struct HypothesisViolated : Error { using Error::Error; };

/// M - A is not positive semidefinite, so the spectral-radius optimum for the
/// post-smoothing-only method is not characterized.
struct SmootherNotDominating : Error { using Error::Error; };

struct NotConvergent : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct IncompatibleShape : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

struct ParseError : Error {
    ParseError(const std::string& what, long line_number)
        : Error(what + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
    long line = 0;
};

} // namespace tgopt
