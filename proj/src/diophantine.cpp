#include "eqtri/diophantine.hpp"

#include <algorithm>
#include <string>

namespace eqtri {

Triple make_triple(Int a, Int b, Int c, Int d) {
  if (a <= 0 || b <= 0 || c <= 0 || d <= 0) {
    throw InvalidArgument("triple components must be positive");
  }
  if (a % 2 == 0 || b % 2 == 0 || c % 2 == 0 || d % 2 == 0) {
    throw InvalidArgument("triple components must all be odd");
  }
  std::array<Int, 3> abc{a, b, c};
  std::sort(abc.begin(), abc.end());
  const Wide lhs = Wide{abc[0]} * abc[0] + Wide{abc[1]} * abc[1] + Wide{abc[2]} * abc[2];
  if (lhs != 3 * Wide{d} * d) {
    throw InvalidArgument("a^2 + b^2 + c^2 != 3 d^2");
  }
  if (gcd(gcd(abc[0], abc[1]), abc[2]) != 1) {
    throw InvalidArgument("gcd(a, b, c) must be 1");
  }
  return Triple{abc[0], abc[1], abc[2], d};
}

std::vector<Triple> enumerate_triples(Int d) {
  if (d <= 0 || d % 2 == 0) {
    throw InvalidArgument("d must be odd and positive, got " + std::to_string(d));
  }
  const Wide target = 3 * Wide{d} * d;
  std::vector<Triple> out;
  // c is the largest component, so 3 c^2 >= 3 d^2.
  const Int c_max = narrow(isqrt(target - 2));
  for (Int c = d; c <= c_max; c += 2) {
    const Wide rest = target - Wide{c} * c;  // a^2 + b^2
    // a <= b forces b^2 >= rest / 2.
    Int b = narrow(isqrt(rest / 2));
    if (Wide{b} * b * 2 < rest) ++b;
    if (b % 2 == 0) ++b;
    const Int b_hi = std::min<Int>(c, narrow(isqrt(rest - 1)));
    for (; b <= b_hi; b += 2) {
      Wide a = 0;
      if (!is_square(rest - Wide{b} * b, &a)) continue;
      const Int ai = narrow(a);
      if (ai > b || ai <= 0) continue;
      if (gcd(gcd(ai, b), c) != 1) continue;
      out.push_back(Triple{ai, b, c, d});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DegeneracyInfo degeneracy(const Triple& t) {
  DegeneracyInfo info;
  info.zeta_a = gcd(t.d, t.a);
  info.zeta_b = gcd(t.d, t.b);
  info.zeta_c = gcd(t.d, t.c);
  info.is_degenerate = std::min({info.zeta_a, info.zeta_b, info.zeta_c}) > 1;
  return info;
}

std::vector<RsPair> solve_rs(Wide q, Int zeta) {
  if (q <= 0) throw InvalidArgument("q must be positive");
  if (zeta <= 0) throw InvalidArgument("zeta must be positive");
  std::vector<RsPair> out;
  const Wide two_q = 2 * q;
  for (Wide r = zeta; 3 * r * r <= two_q; r += zeta) {
    Wide s = 0;
    if (!is_square(two_q - 3 * r * r, &s)) continue;
    if (s % zeta != 0 || (r - s) % 2 != 0) continue;
    const Int ri = narrow(r);
    const Int si = narrow(s);
    if (si == 0) {
      out.push_back({ri, 0, q});
    } else {
      out.push_back({ri, -si, q});
      out.push_back({ri, si, q});
    }
  }
  return out;
}

std::optional<Int> smallest_degenerate_d(Int limit) {
  if (limit < 1) throw InvalidArgument("limit must be positive");
  for (Int d = 1; d <= limit; d += 2) {
    for (const Triple& t : enumerate_triples(d)) {
      if (degeneracy(t).is_degenerate) return d;
    }
  }
  return std::nullopt;
}

}  // namespace eqtri
