// SPDX-License-Identifier: Apache-2.0

#include "pecddm/matrix_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace pecddm {

static_assert(std::endian::native == std::endian::little, "matrix dumps assume a little-endian host");

void write_matrix(const std::filesystem::path& path, const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("write_matrix: matrix must be square");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  const std::uint64_t n = static_cast<std::uint64_t>(m.rows());
  f.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real(), im = m(i, j).imag();
      f.write(reinterpret_cast<const char*>(&re), sizeof re);
      f.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
}

CMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::uint64_t n = 0;
  if (!f.read(reinterpret_cast<char*>(&n), sizeof n)) throw std::runtime_error("truncated matrix file");
  CMatrix m(static_cast<Index>(n), static_cast<Index>(n));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      double v[2];
      if (!f.read(reinterpret_cast<char*>(v), sizeof v)) throw std::runtime_error("truncated matrix file");
      m(i, j) = cplx(v[0], v[1]);
    }
  return m;
}

}  // namespace pecddm
