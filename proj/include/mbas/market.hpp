// Matrix-Market coordinate I/O (1-based indices) and plain-text vectors.

#pragma once

#include <string>

#include "mbas/types.hpp"

namespace mbas {

// Writes `%%MatrixMarket matrix coordinate real symmetric` (lower triangle)
// when symmetric is true, `... general` otherwise. Values keep full double
// precision so a round trip is bitwise exact.
void write_matrix_market(const std::string& path, const SpMat& A, bool symmetric);

SpMat read_matrix_market(const std::string& path);

// One entry per line.
void write_vector(const std::string& path, const Vec& v);
Vec read_vector(const std::string& path);

}  // namespace mbas
