#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ldrop {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. The CLI maps ArgumentError to exit code 1, NumericError to 2
// and IoError to 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

// Evaluation at a singular point of a kernel (lattice point, coincident charges, s = 3).
struct PoleError : NumericError {
  using NumericError::NumericError;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace ldrop
