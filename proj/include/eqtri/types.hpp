// Core scalar and vector types shared by every eqtri module.
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace eqtri {

using Int = std::int64_t;
using Wide = __int128;
using Count = std::uint64_t;

/// Fixed-size integer vector; lattice points and coefficient columns.
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

using Point3 = Vector3<Int>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Narrow a wide intermediate back to Int, throwing when it does not fit.
inline Int narrow(Wide v) {
  if (v > static_cast<Wide>(std::numeric_limits<Int>::max()) ||
      v < static_cast<Wide>(std::numeric_limits<Int>::min())) {
    throw OverflowError("integer value exceeds 64-bit range");
  }
  return static_cast<Int>(v);
}

inline Count narrow_count(Wide v) {
  if (v < 0 || v > static_cast<Wide>(std::numeric_limits<Count>::max())) {
    throw OverflowError("count exceeds 64-bit unsigned range");
  }
  return static_cast<Count>(v);
}

inline Count checked_add(Count x, Count y) {
  Count out{};
  if (__builtin_add_overflow(x, y, &out)) throw OverflowError("count addition overflow");
  return out;
}

inline Count checked_mul(Count x, Count y) {
  Count out{};
  if (__builtin_mul_overflow(x, y, &out)) throw OverflowError("count multiplication overflow");
  return out;
}

/// Floor of the square root; exact for every non-negative 128-bit input
/// below 2^126.
Wide isqrt(Wide v);

/// Returns true and stores the root when v is a perfect square.
bool is_square(Wide v, Wide* root = nullptr);

Int gcd(Int x, Int y);

std::string to_string(Wide v);

/// Lexicographic strict ordering on lattice points.
inline bool lex_less(const Point3& x, const Point3& y) {
  return std::lexicographical_compare(x.data(), x.data() + 3, y.data(), y.data() + 3);
}

inline bool lex_positive(const Point3& x) { return lex_less(Point3::Zero(), x); }

}  // namespace eqtri
