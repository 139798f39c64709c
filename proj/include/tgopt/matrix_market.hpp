#pragma once

#include <string>

#include "tgopt/matrix.hpp"

namespace tgopt::mm {

/// Reads a Matrix Market file (array or coordinate; real, integer or complex;
/// general, symmetric or hermitian). Symmetric and hermitian storage is
/// expanded to the full matrix.
Matrix load_matrix_market(const std::string& path);

/// Writes the matrix in array/complex/general format with enough digits for
/// an exact round trip.
void save_matrix_market(const Matrix& m, const std::string& path);

} // namespace tgopt::mm
