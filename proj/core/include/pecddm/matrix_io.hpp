// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "pecddm/types.hpp"

namespace pecddm {

// Little-endian: u64 n, then n*n (f64 re, f64 im) pairs in row-major order.
void write_matrix(const std::filesystem::path& path, const CMatrix& m);
CMatrix read_matrix(const std::filesystem::path& path);

}  // namespace pecddm
