// ET(n): equilateral triangles with all vertices in {0, ..., n}^3.
#pragma once

#include "eqtri/diophantine.hpp"
#include "eqtri/parametrization.hpp"
#include "eqtri/types.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace eqtri {

struct CountRecord {
  Int n = 0;
  Count count = 0;

  bool operator==(const CountRecord&) const = default;
};

/// A triangle up to integer translation, moved so that its componentwise
/// minimum is the origin, vertices sorted lexicographically.
struct TriangleClass {
  LatticeTriangle canonical;
  std::array<Int, 3> extents{0, 0, 0};

  /// Number of translates inside {0, ..., n}^3: prod max(0, n + 1 - e_i).
  Count translates(Int n) const;

  bool operator==(const TriangleClass& o) const { return canonical == o.canonical; }
};

TriangleClass make_class(const LatticeTriangle& tri);

/// Hash over the nine canonical coordinates.
struct TriangleClassHash {
  std::size_t operator()(const TriangleClass& c) const;
};

/// One plane family: a primitive triple with its canonical parametrization and
/// the distinct plane normals reachable by permuting and negating coordinates
/// (n and -n identified).
struct Family {
  Triple triple;
  ParamPair params;
  std::vector<Point3> normals;
};

/// Distinct images of (a, b, c) under signed permutations, modulo sign, each
/// with the orthogonal map carrying (a, b, c) onto it.
struct NormalImage {
  Point3 normal;
  Eigen::Matrix<Int, 3, 3> map;
};
std::vector<NormalImage> normal_images(const Triple& t);

/// Every family that can hold a triangle inside {0, ..., n}^3. A segment in the
/// cube is at most n sqrt(3) long and the smallest side of a family is d sqrt(2),
/// so d ranges over odd values with 2 d^2 <= 3 n^2.
std::vector<Family> families_for(Int n);

struct CountOptions {
  unsigned threads = 1;
  /// Keeps a per-family hash set of canonical classes and throws Error when a
  /// class is produced twice.
  bool verify_dedup = false;
};

inline constexpr Int kDefaultOracleLimit = 10;

/// Exhaustive scan over unordered point triples. Throws InvalidArgument for
/// n above limit.
CountRecord oracle_count(Int n, Int limit = kDefaultOracleLimit);

/// The triangles found by oracle_count, vertices in ascending order.
std::vector<LatticeTriangle> oracle_triangles(Int n, Int limit = kDefaultOracleLimit);

/// ET(n) from the plane-family parametrizations, summing the number of
/// translates of every triangle class that fits.
CountRecord fast_count(Int n, const CountOptions& opts = {});

/// ET(n) for n_lo <= n <= n_hi from a single sweep at n_hi.
std::vector<CountRecord> count_range(Int n_lo, Int n_hi, const CountOptions& opts = {});

/// All classes fitting in {0, ..., n}^3, expanded over every normal image.
/// Deduplicated through a global hash set; intended for small n.
std::vector<TriangleClass> enumerate_classes(Int n);

std::string format_counts_csv(const std::vector<CountRecord>& records);
/// Parses "n,count" lines; '#' comments, blank lines and an "n,count" header
/// are skipped. Throws Error with the line number on malformed input.
std::vector<CountRecord> parse_counts_csv(const std::string& text);

}  // namespace eqtri
