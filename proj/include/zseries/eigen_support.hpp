#pragma once

// Eigen scalar traits for ExtReal. Precision-dependent constants (epsilon,
// dummy_precision) are expressed at the widest precision the library
// creates, so comparisons against them never lose bits.

#include <Eigen/Core>

#include "zseries/ext_real.hpp"

namespace zseries {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using ExtVector = Vector<ExtReal>;
using ExtMatrix = Matrix<ExtReal>;

}  // namespace zseries

namespace Eigen {

template <>
struct NumTraits<zseries::ExtReal> : GenericNumTraits<zseries::ExtReal> {
  using Real = zseries::ExtReal;
  using NonInteger = zseries::ExtReal;
  using Literal = zseries::ExtReal;
  using Nested = zseries::ExtReal;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };

  static constexpr zseries::ExtReal::Bits kBits = 4096;

  static Real epsilon() { return Real::power_of_two(-kBits, 64); }
  static Real dummy_precision() { return Real::power_of_two(-(kBits / 2), 64); }
  static Real highest() { return Real::infinity(64); }
  static Real lowest() { return -Real::infinity(64); }
  static Real infinity() { return Real::infinity(64); }
  static Real quiet_NaN() { return Real::nan(64); }
  static int digits10() { return static_cast<int>(kBits * 0.30103); }
  static int digits() { return static_cast<int>(kBits); }
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<zseries::ExtReal, zseries::ExtReal, BinaryOp> {
  using ReturnType = zseries::ExtReal;
};

}  // namespace Eigen
