// Two-parameter integer parametrization of the equilateral triangles lying in
// the lattice plane a x + b y + c z = 0 with one vertex at the origin.
#pragma once

#include "eqtri/diophantine.hpp"
#include "eqtri/types.hpp"

#include <array>
#include <compare>
#include <optional>
#include <vector>

namespace eqtri {

class NonIntegralParametrization : public Error {
 public:
  using Error::Error;
};

class DegenerateIndex : public Error {
 public:
  using Error::Error;
};

class OffPlane : public Error {
 public:
  using Error::Error;
};

/// Lattice coordinates (m, n) of a triangle within its plane family.
struct MnIndex {
  Int m = 0;
  Int n = 0;

  bool is_zero() const { return m == 0 && n == 0; }
  /// m^2 - m n + n^2, the quadratic form scaling the squared side.
  Int norm() const { return m * m - m * n + n * n; }

  auto operator<=>(const MnIndex&) const = default;
};

/// Coefficient table of the parametrization. The first vertex is
/// P = m * p_m - n * p_n and the second Q = m * q_m - n * q_n, where
/// p_m = (m_u, m_v, m_w), p_n = (n_u, n_v, n_w), q_m = (m_x, m_y, m_z) and
/// q_n = (n_x, n_y, n_z).
struct ParamPair {
  Triple triple;
  RsPair rs;
  Point3 p_m = Point3::Zero();
  Point3 p_n = Point3::Zero();
  Point3 q_m = Point3::Zero();
  Point3 q_n = Point3::Zero();

  Int m_u() const { return p_m(0); }
  Int m_v() const { return p_m(1); }
  Int m_w() const { return p_m(2); }
  Int n_u() const { return p_n(0); }
  Int n_v() const { return p_n(1); }
  Int n_w() const { return p_n(2); }
  Int m_x() const { return q_m(0); }
  Int m_y() const { return q_m(1); }
  Int m_z() const { return q_m(2); }
  Int n_x() const { return q_n(0); }
  Int n_y() const { return q_n(1); }
  Int n_z() const { return q_n(2); }

  Point3 first_vertex(const MnIndex& idx) const { return p_m * idx.m - p_n * idx.n; }
  Point3 second_vertex(const MnIndex& idx) const { return q_m * idx.m - q_n * idx.n; }

  bool operator==(const ParamPair& o) const {
    return triple == o.triple && rs == o.rs && p_m == o.p_m && p_n == o.p_n && q_m == o.q_m &&
           q_n == o.q_n;
  }
};

/// Three lattice points. Generated triangles keep the order (O, P, Q).
struct LatticeTriangle {
  std::array<Point3, 3> vertices{Point3::Zero(), Point3::Zero(), Point3::Zero()};

  const Point3& o() const { return vertices[0]; }
  const Point3& p() const { return vertices[1]; }
  const Point3& q() const { return vertices[2]; }

  /// Squared lengths |OP|^2, |OQ|^2, |PQ|^2.
  std::array<Int, 3> squared_sides() const;
  bool is_equilateral() const;
  Int side_squared() const { return squared_sides()[0]; }

  /// Vertices sorted lexicographically; used for unordered comparison.
  LatticeTriangle sorted() const;
  LatticeTriangle translated(const Point3& offset) const;

  bool operator==(const LatticeTriangle& o) const { return vertices == o.vertices; }
};

/// Evaluates the twelve coefficients exactly. Throws InvalidArgument when rs does
/// not solve s^2 + 3 r^2 = 2 q with q = a^2 + b^2, and NonIntegralParametrization
/// when some coefficient is not an integer.
ParamPair build_params(const Triple& t, const RsPair& rs);

/// Every (r, s) from solve_rs(q, gcd(d, c)) that yields an integral table.
std::vector<ParamPair> suitable_params(const Triple& t);

/// The table for the first suitable (r, s) (smallest r, then smallest s).
/// Throws Error when none exists.
ParamPair canonical_params(const Triple& t);

/// Triangle O, P(m, n), Q(m, n). Throws DegenerateIndex for (0, 0).
LatticeTriangle triangle_at(const ParamPair& p, const MnIndex& idx);

/// Inverts P = m p_m - n p_n. Throws OffPlane when the vertex is not in the
/// family plane; absent when the rational solution is not integral.
std::optional<MnIndex> solve_mn(const ParamPair& p, const Point3& vertex);

/// The index together with its images under the five hexagonal changes of
/// variables, duplicates removed, in ascending order.
std::vector<MnIndex> hexagonal_orbit(const MnIndex& idx);

/// 2x2 integer matrix acting on (m, n) column vectors.
using IndexMap = Eigen::Matrix<Int, 2, 2>;

/// The five hexagonal maps (without the identity), in the order
/// (-m,-n), (m-n,m), (n-m,n), (m-n,-n), (n-m,-m).
const std::array<IndexMap, 5>& hexagonal_maps();

/// Closure of hexagonal_maps() under composition, identity included.
const std::vector<IndexMap>& hexagonal_group();

inline MnIndex apply(const IndexMap& g, const MnIndex& idx) {
  return {g(0, 0) * idx.m + g(0, 1) * idx.n, g(1, 0) * idx.m + g(1, 1) * idx.n};
}

/// True when some composed hexagonal map, possibly with P and Q exchanged,
/// carries every triangle of p1 on |m|, |n| <= window onto the triangle of p2.
bool equivalent_parametrizations(const ParamPair& p1, const ParamPair& p2, Int window = 5);

/// Checks 2d Q = d P +- (c v - b w, a w - c u, b u - a v) with one sign for all
/// three coordinates. The triangle must have its first vertex at the origin.
bool third_vertex_check(const LatticeTriangle& tri, const Triple& t);

}  // namespace eqtri
