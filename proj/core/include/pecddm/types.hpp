// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace pecddm {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr cplx kI{0.0, 1.0};

// Eigen's cross() conjugates complex results; this one does not.
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

// Which subdomain a quantity belongs to: the unbounded exterior (plus) or the
// bounded cavity (minus).
enum class Side : std::uint8_t { Plus, Minus };

inline const char* to_string(Side s) { return s == Side::Plus ? "plus" : "minus"; }

// Coefficient vectors on an interface space come in two flavours. Primal
// vectors hold amplitudes in the RWG basis, dual vectors hold L2 pairings
// with the basis functions. Operators document which one they take and
// return; mixing them is a compile error.
struct PrimalTag {};
struct DualTag {};

template <class Tag>
struct InterfaceVector {
  CVector values;

  InterfaceVector() = default;
  explicit InterfaceVector(CVector v) : values(std::move(v)) {}

  Index size() const { return values.size(); }
  double norm() const { return values.norm(); }

  InterfaceVector& operator+=(const InterfaceVector& o) {
    values += o.values;
    return *this;
  }
  friend InterfaceVector operator+(InterfaceVector a, const InterfaceVector& b) {
    a += b;
    return a;
  }
  friend InterfaceVector operator-(InterfaceVector a, const InterfaceVector& b) {
    a.values -= b.values;
    return a;
  }
  friend InterfaceVector operator*(cplx s, InterfaceVector a) {
    a.values *= s;
    return a;
  }
};

using Primal = InterfaceVector<PrimalTag>;
using Dual = InterfaceVector<DualTag>;

}  // namespace pecddm
