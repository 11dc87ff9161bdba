#include "eqtri/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eqtri {

Wide isqrt(Wide v) {
  if (v < 0) throw InvalidArgument("isqrt of negative value");
  if (v < 2) return v;
  auto r = static_cast<Wide>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool is_square(Wide v, Wide* root) {
  if (v < 0) return false;
  const Wide r = isqrt(v);
  if (root) *root = r;
  return r * r == v;
}

Int gcd(Int x, Int y) { return std::gcd(x, y); }

std::string to_string(Wide v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string digits;
  // unsigned magnitude avoids overflow on the minimum value
  auto mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace eqtri
