// Solutions of a^2 + b^2 + c^2 = 3 d^2 and of 2q = s^2 + 3 r^2.
#pragma once

#include "eqtri/types.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace eqtri {

/// Primitive odd solution of a^2 + b^2 + c^2 = 3 d^2, normalized so a <= b <= c.
/// A triple fixes the normal direction (a, b, c) of a family of lattice planes
/// and the scale d of its smallest triangle.
struct Triple {
  Int a = 1;
  Int b = 1;
  Int c = 1;
  Int d = 1;

  /// q = a^2 + b^2 = 3 d^2 - c^2.
  Wide q() const { return Wide{a} * a + Wide{b} * b; }
  Point3 normal() const { return {a, b, c}; }

  auto operator<=>(const Triple&) const = default;
};

/// Validates and normalizes (sorts a, b, c). Throws InvalidArgument when the
/// values are not a primitive odd positive solution.
Triple make_triple(Int a, Int b, Int c, Int d);

struct DegeneracyInfo {
  Int zeta_a = 1;
  Int zeta_b = 1;
  Int zeta_c = 1;
  bool is_degenerate = false;
};

/// Solution of s^2 + 3 r^2 = 2q with r = s (mod 2).
struct RsPair {
  Int r = 0;
  Int s = 0;
  Wide q = 0;

  auto operator<=>(const RsPair&) const = default;
};

/// Every normalized primitive triple with the given d, sorted lexicographically.
/// Throws InvalidArgument for even or non-positive d.
std::vector<Triple> enumerate_triples(Int d);

DegeneracyInfo degeneracy(const Triple& t);

/// All (r, s) with s^2 + 3 r^2 = 2q, r > 0, r = s (mod 2) and zeta | r, zeta | s,
/// ordered by r then s. Found by scanning r up to sqrt(2q/3).
std::vector<RsPair> solve_rs(Wide q, Int zeta);

/// Smallest odd d <= limit with a degenerate triple, if any.
std::optional<Int> smallest_degenerate_d(Int limit);

}  // namespace eqtri
