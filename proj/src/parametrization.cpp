#include "eqtri/parametrization.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace eqtri {

namespace {

Int exact_div(Wide num, Wide den) {
  if (num % den != 0) {
    throw NonIntegralParametrization("coefficient " + to_string(num) + "/" + to_string(den) +
                                     " is not an integer");
  }
  return narrow(num / den);
}

Wide dot_wide(const Point3& x, const Point3& y) {
  return Wide{x(0)} * y(0) + Wide{x(1)} * y(1) + Wide{x(2)} * y(2);
}

Vector3<Wide> cross_wide(const Point3& x, const Point3& y) {
  return x.cast<Wide>().cross(y.cast<Wide>());
}

}  // namespace

std::array<Int, 3> LatticeTriangle::squared_sides() const {
  return {(p() - o()).squaredNorm(), (q() - o()).squaredNorm(), (q() - p()).squaredNorm()};
}

bool LatticeTriangle::is_equilateral() const {
  const auto s = squared_sides();
  return s[0] > 0 && s[0] == s[1] && s[1] == s[2];
}

LatticeTriangle LatticeTriangle::sorted() const {
  LatticeTriangle out = *this;
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  return out;
}

LatticeTriangle LatticeTriangle::translated(const Point3& offset) const {
  LatticeTriangle out = *this;
  for (auto& v : out.vertices) v += offset;
  return out;
}

ParamPair build_params(const Triple& t, const RsPair& rs) {
  const Wide a = t.a, b = t.b, c = t.c, d = t.d;
  const Wide r = rs.r, s = rs.s;
  const Wide q = t.q();
  if (s * s + 3 * r * r != 2 * q) {
    throw InvalidArgument("(r, s) = (" + std::to_string(rs.r) + ", " + std::to_string(rs.s) +
                          ") does not solve s^2 + 3 r^2 = 2q for q = " + to_string(q));
  }
  if ((r - s) % 2 != 0) throw InvalidArgument("r and s must have equal parity");

  ParamPair p;
  p.triple = t;
  p.rs = RsPair{rs.r, rs.s, q};

  p.q_m = {exact_div(-(d * b * (3 * r + s) + a * c * (r - s)), 2 * q),
           exact_div(d * a * (3 * r + s) - b * c * (r - s), 2 * q), exact_div(r - s, 2)};
  p.q_n = {exact_div(-(r * a * c + d * b * s), q), exact_div(d * a * s - b * c * r, q), rs.r};
  p.p_m = {exact_div(-(r * a * c + d * b * s), q), exact_div(d * a * s - r * b * c, q), rs.r};
  p.p_n = {exact_div(-(d * b * (s - 3 * r) + a * c * (r + s)), 2 * q),
           exact_div(d * a * (s - 3 * r) - b * c * (r + s), 2 * q), exact_div(r + s, 2)};

  // p_m x p_n = d (a, b, c); guaranteed by the algebra, checked here.
  if (cross_wide(p.p_m, p.p_n) != (t.normal().cast<Wide>() * d)) {
    throw Error("cross-product identity failed for the coefficient table");
  }
  return p;
}

std::vector<ParamPair> suitable_params(const Triple& t) {
  std::vector<ParamPair> out;
  for (const RsPair& rs : solve_rs(t.q(), degeneracy(t).zeta_c)) {
    try {
      out.push_back(build_params(t, rs));
    } catch (const NonIntegralParametrization&) {
    }
  }
  return out;
}

ParamPair canonical_params(const Triple& t) {
  for (const RsPair& rs : solve_rs(t.q(), degeneracy(t).zeta_c)) {
    try {
      return build_params(t, rs);
    } catch (const NonIntegralParametrization&) {
    }
  }
  throw Error("no suitable (r, s) for triple (" + std::to_string(t.a) + ", " +
              std::to_string(t.b) + ", " + std::to_string(t.c) + ", " + std::to_string(t.d) + ")");
}

LatticeTriangle triangle_at(const ParamPair& p, const MnIndex& idx) {
  if (idx.is_zero()) throw DegenerateIndex("(m, n) = (0, 0) gives a degenerate triangle");
  return LatticeTriangle{{Point3::Zero(), p.first_vertex(idx), p.second_vertex(idx)}};
}

std::optional<MnIndex> solve_mn(const ParamPair& p, const Point3& vertex) {
  const Triple& t = p.triple;
  if (dot_wide(t.normal(), vertex) != 0) throw OffPlane("vertex is not in the family plane");

  // vertex = m p_m - n p_n, and p_m x p_n = d (a, b, c). Crossing with p_m and
  // p_n isolates n and m; every component must give the same integer.
  const Vector3<Wide> n_num = cross_wide(vertex, p.p_m);
  const Vector3<Wide> m_num = cross_wide(vertex, p.p_n);
  const Vector3<Wide> den = t.normal().cast<Wide>() * Wide{t.d};

  std::optional<Wide> m, n;
  for (int i = 0; i < 3; ++i) {
    if (n_num(i) % den(i) != 0 || m_num(i) % den(i) != 0) return std::nullopt;
    const Wide ni = n_num(i) / den(i);
    const Wide mi = m_num(i) / den(i);
    if ((n && *n != ni) || (m && *m != mi)) return std::nullopt;
    n = ni;
    m = mi;
  }
  const MnIndex idx{narrow(*m), narrow(*n)};
  if (p.first_vertex(idx) != vertex) return std::nullopt;
  return idx;
}

const std::array<IndexMap, 5>& hexagonal_maps() {
  static const std::array<IndexMap, 5> maps = [] {
    std::array<IndexMap, 5> g;
    g[0] << -1, 0, 0, -1;  // (-m, -n)
    g[1] << 1, -1, 1, 0;   // (m - n, m)
    g[2] << -1, 1, 0, 1;   // (n - m, n)
    g[3] << 1, -1, 0, -1;  // (m - n, -n)
    g[4] << -1, 1, -1, 0;  // (n - m, -m)
    return g;
  }();
  return maps;
}

const std::vector<IndexMap>& hexagonal_group() {
  static const std::vector<IndexMap> group = [] {
    auto key = [](const IndexMap& g) {
      return std::array<Int, 4>{g(0, 0), g(0, 1), g(1, 0), g(1, 1)};
    };
    std::vector<IndexMap> out{IndexMap::Identity()};
    std::set<std::array<Int, 4>> seen{key(out.front())};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const IndexMap& h : hexagonal_maps()) {
        const IndexMap g = h * out[i];
        if (seen.insert(key(g)).second) out.push_back(g);
      }
    }
    return out;
  }();
  return group;
}

std::vector<MnIndex> hexagonal_orbit(const MnIndex& idx) {
  std::set<MnIndex> orbit{idx};
  for (const IndexMap& g : hexagonal_maps()) orbit.insert(apply(g, idx));
  return {orbit.begin(), orbit.end()};
}

bool equivalent_parametrizations(const ParamPair& p1, const ParamPair& p2, Int window) {
  if (p1.triple != p2.triple) return false;
  for (const IndexMap& g : hexagonal_group()) {
    for (const bool swap : {false, true}) {
      bool all = true;
      for (Int m = -window; m <= window && all; ++m) {
        for (Int n = -window; n <= window && all; ++n) {
          const MnIndex idx{m, n};
          const MnIndex img = apply(g, idx);
          Point3 p = p2.first_vertex(img);
          Point3 q = p2.second_vertex(img);
          if (swap) std::swap(p, q);
          all = p == p1.first_vertex(idx) && q == p1.second_vertex(idx);
        }
      }
      if (all) return true;
    }
  }
  return false;
}

bool third_vertex_check(const LatticeTriangle& tri, const Triple& t) {
  if (tri.o() != Point3::Zero()) return false;
  const Vector3<Wide> p = tri.p().cast<Wide>();
  const Vector3<Wide> q = tri.q().cast<Wide>();
  const Wide a = t.a, b = t.b, c = t.c, d = t.d;
  const Vector3<Wide> rot{c * p(1) - b * p(2), a * p(2) - c * p(0), b * p(0) - a * p(1)};
  for (const Wide sign : {Wide{1}, Wide{-1}}) {
    if (2 * d * q - d * p - sign * rot == Vector3<Wide>::Zero()) return true;
  }
  return false;
}

}  // namespace eqtri
