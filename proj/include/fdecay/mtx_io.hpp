#pragma once

#include "fdecay/types.hpp"

#include <string>

namespace fdecay {

/// Reads a Matrix Market file (coordinate or array; real, integer or
/// complex; general, symmetric or hermitian) into a dense matrix.
/// Symmetric/hermitian storage is mirrored into the full matrix.
Matrix mtx_read(const std::string& path);

/// Writes a dense matrix in Matrix Market array/complex/general format
/// with full double precision (round-trips bit-exactly through mtx_read).
void mtx_write(const std::string& path, const Matrix& a);

}  // namespace fdecay
