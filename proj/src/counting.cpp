#include "eqtri/counting.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace eqtri {

namespace {

Int floor_div2(Int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

std::array<Int, 3> extents_of(const Point3& p, const Point3& q) {
  std::array<Int, 3> e{};
  for (int i = 0; i < 3; ++i) {
    e[i] = std::max({Int{0}, p(i), q(i)}) - std::min({Int{0}, p(i), q(i)});
  }
  return e;
}

// Visits every origin-anchored triangle (O, P, Q) of the family whose side fits
// a cube of edge n and whose origin is its lexicographically smallest vertex.
// Each translation class of the plane is reached exactly once this way: the
// parametrization is a bijection from nonzero (m, n) onto origin-anchored
// triangles, and a class has one anchoring per vertex.
template <typename Visit>
void sweep_family(const ParamPair& p, Int n, Visit&& visit) {
  const Int d = p.triple.d;
  // 2 d^2 (m^2 - m j + j^2) = side^2 <= 3 n^2
  const Wide k_max = (3 * Wide{n} * n) / (2 * Wide{d} * d);
  if (k_max < 1) return;
  const Int j_bound = narrow(isqrt(4 * k_max / 3));
  for (Int j = -j_bound; j <= j_bound; ++j) {
    // (2m - j)^2 + 3 j^2 <= 4 K
    const Wide disc = 4 * k_max - 3 * Wide{j} * j;
    if (disc < 0) continue;
    const Int root = narrow(isqrt(disc));
    const Int m_lo = -floor_div2(root - j);
    const Int m_hi = floor_div2(j + root);
    const Point3 p_base = -p.p_n * j;
    const Point3 q_base = -p.q_n * j;
    for (Int m = m_lo; m <= m_hi; ++m) {
      if (m == 0 && j == 0) continue;
      const Point3 pv = p_base + p.p_m * m;
      const Point3 qv = q_base + p.q_m * m;
      if (!lex_positive(pv) || !lex_positive(qv)) continue;
      const auto e = extents_of(pv, qv);
      if (e[0] > n || e[1] > n || e[2] > n) continue;
      visit(pv, qv, e);
    }
  }
}

template <typename Work>
void for_each_family_parallel(const std::vector<Family>& families, unsigned threads, Work&& work) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(families.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < families.size(); ++i) work(0u, families[i]);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < families.size(); i += threads) work(t, families[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_dedup(std::unordered_set<TriangleClass, TriangleClassHash>& seen, const Point3& p,
                 const Point3& q) {
  const LatticeTriangle tri{{Point3::Zero(), p, q}};
  if (!seen.insert(make_class(tri)).second) {
    throw Error("triangle class produced twice within one family");
  }
}

}  // namespace

Count TriangleClass::translates(Int n) const {
  Count out = 1;
  for (const Int e : extents) {
    if (e > n) return 0;
    out = checked_mul(out, static_cast<Count>(n + 1 - e));
  }
  return out;
}

TriangleClass make_class(const LatticeTriangle& tri) {
  const Point3 lo = tri.vertices[0].cwiseMin(tri.vertices[1]).cwiseMin(tri.vertices[2]);
  const Point3 hi = tri.vertices[0].cwiseMax(tri.vertices[1]).cwiseMax(tri.vertices[2]);
  TriangleClass c;
  c.canonical = tri.translated(-lo).sorted();
  const Point3 ext = hi - lo;
  c.extents = {ext(0), ext(1), ext(2)};
  return c;
}

std::size_t TriangleClassHash::operator()(const TriangleClass& c) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& v : c.canonical.vertices) {
    for (int i = 0; i < 3; ++i) {
      h ^= static_cast<std::size_t>(v(i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  }
  return h;
}

std::vector<NormalImage> normal_images(const Triple& t) {
  std::vector<NormalImage> out;
  std::set<std::array<Int, 3>> seen;
  std::array<int, 3> perm{0, 1, 2};
  const Point3 base = t.normal();
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Eigen::Matrix<Int, 3, 3> map = Eigen::Matrix<Int, 3, 3>::Zero();
      for (int i = 0; i < 3; ++i) map(i, perm[i]) = (signs >> i) & 1 ? -1 : 1;
      Point3 img = map * base;
      if (img(0) < 0) img = -img;  // all components odd, so img(0) != 0
      if (seen.insert({img(0), img(1), img(2)}).second) out.push_back({img, map});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Family> families_for(Int n) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  std::vector<Family> out;
  for (Int d = 1; 2 * Wide{d} * d <= 3 * Wide{n} * n; d += 2) {
    for (const Triple& t : enumerate_triples(d)) {
      Family f{t, canonical_params(t), {}};
      for (const NormalImage& img : normal_images(t)) f.normals.push_back(img.normal);
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<LatticeTriangle> oracle_triangles(Int n, Int limit) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  if (n > limit) {
    throw InvalidArgument("oracle refuses n = " + std::to_string(n) + " above limit " +
                          std::to_string(limit));
  }
  std::vector<Point3> pts;
  for (Int x = 0; x <= n; ++x)
    for (Int y = 0; y <= n; ++y)
      for (Int z = 0; z <= n; ++z) pts.emplace_back(x, y, z);

  std::vector<LatticeTriangle> out;
  const std::size_t count = pts.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const Int side = (pts[j] - pts[i]).squaredNorm();
      for (std::size_t k = j + 1; k < count; ++k) {
        if ((pts[k] - pts[i]).squaredNorm() != side) continue;
        if ((pts[k] - pts[j]).squaredNorm() != side) continue;
        out.push_back(LatticeTriangle{{pts[i], pts[j], pts[k]}});
      }
    }
  }
  return out;
}

CountRecord oracle_count(Int n, Int limit) {
  return {n, static_cast<Count>(oracle_triangles(n, limit).size())};
}

CountRecord fast_count(Int n, const CountOptions& opts) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  const std::vector<Family> families = families_for(n);
  const unsigned threads = std::max(1u, opts.threads);
  std::vector<Wide> partial(threads, 0);
  for_each_family_parallel(families, threads, [&](unsigned t, const Family& f) {
    std::unordered_set<TriangleClass, TriangleClassHash> seen;
    Wide sum = 0;
    sweep_family(f.params, n, [&](const Point3& p, const Point3& q, const std::array<Int, 3>& e) {
      if (opts.verify_dedup) check_dedup(seen, p, q);
      // signed permutations only permute the extents, so every normal image
      // contributes the same product.
      sum += Wide{n + 1 - e[0]} * (n + 1 - e[1]) * (n + 1 - e[2]);
    });
    partial[t] += sum * static_cast<Wide>(f.normals.size());
  });
  const Wide total = std::accumulate(partial.begin(), partial.end(), Wide{0});
  return {n, narrow_count(total)};
}

std::vector<CountRecord> count_range(Int n_lo, Int n_hi, const CountOptions& opts) {
  if (n_lo < 0 || n_lo > n_hi) throw InvalidArgument("count range requires 0 <= lo <= hi");
  const std::vector<Family> families = families_for(n_hi);
  const unsigned threads = std::max(1u, opts.threads);
  const auto size = static_cast<std::size_t>(n_hi + 1);

  // With t = N + 1, a class of extents e contributes
  // (t - e1)(t - e2)(t - e3) = t^3 - s1 t^2 + s2 t - s3 to every N >= max e.
  // Power sums are bucketed by max e and prefix-summed.
  struct Buckets {
    std::vector<std::array<Wide, 4>> by_max;
  };
  std::vector<Buckets> per_thread(threads, Buckets{std::vector<std::array<Wide, 4>>(size)});
  for_each_family_parallel(families, threads, [&](unsigned t, const Family& f) {
    std::unordered_set<TriangleClass, TriangleClassHash> seen;
    const Wide w = static_cast<Wide>(f.normals.size());
    auto& buckets = per_thread[t].by_max;
    sweep_family(f.params, n_hi, [&](const Point3& p, const Point3& q, const std::array<Int, 3>& e) {
      if (opts.verify_dedup) check_dedup(seen, p, q);
      auto& b = buckets[static_cast<std::size_t>(std::max({e[0], e[1], e[2]}))];
      b[0] += w;
      b[1] += w * (e[0] + e[1] + e[2]);
      b[2] += w * (Wide{e[0]} * e[1] + Wide{e[0]} * e[2] + Wide{e[1]} * e[2]);
      b[3] += w * Wide{e[0]} * e[1] * e[2];
    });
  });

  std::vector<CountRecord> out;
  std::array<Wide, 4> run{0, 0, 0, 0};
  for (std::size_t m = 0; m < size; ++m) {
    for (const auto& pt : per_thread) {
      for (int k = 0; k < 4; ++k) run[k] += pt.by_max[m][k];
    }
    const auto n = static_cast<Int>(m);
    if (n < n_lo) continue;
    const Wide t = n + 1;
    const Wide total = t * t * t * run[0] - t * t * run[1] + t * run[2] - run[3];
    out.push_back({n, narrow_count(total)});
  }
  return out;
}

std::vector<TriangleClass> enumerate_classes(Int n) {
  std::vector<TriangleClass> out;
  std::unordered_set<TriangleClass, TriangleClassHash> seen;
  for (const Family& f : families_for(n)) {
    const auto images = normal_images(f.triple);
    sweep_family(f.params, n, [&](const Point3& p, const Point3& q, const std::array<Int, 3>&) {
      for (const NormalImage& img : images) {
        const LatticeTriangle tri{{Point3::Zero(), img.map * p, img.map * q}};
        TriangleClass c = make_class(tri);
        if (!seen.insert(c).second) throw Error("triangle class produced twice");
        out.push_back(std::move(c));
      }
    });
  }
  return out;
}

std::string format_counts_csv(const std::vector<CountRecord>& records) {
  std::ostringstream os;
  os << "n,count\n";
  for (const auto& r : records) os << r.n << ',' << r.count << '\n';
  return os.str();
}

std::vector<CountRecord> parse_counts_csv(const std::string& text) {
  std::vector<CountRecord> out;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || line == "n,count") continue;
    const auto comma = line.find(',');
    CountRecord rec;
    const char* end = line.data() + line.size();
    bool ok = comma != std::string::npos;
    if (ok) {
      auto [p1, e1] = std::from_chars(line.data(), line.data() + comma, rec.n);
      auto [p2, e2] = std::from_chars(line.data() + comma + 1, end, rec.count);
      ok = e1 == std::errc{} && p1 == line.data() + comma && e2 == std::errc{} && p2 == end &&
           rec.n >= 0;
    }
    if (!ok) throw Error("malformed counts line " + std::to_string(line_no) + ": '" + line + "'");
    out.push_back(rec);
  }
  return out;
}

}  // namespace eqtri
