#include "flatpbd/field.hpp"

#include <map>
#include <mutex>
#include <string>

#include "flatpbd/errors.hpp"

namespace flatpbd {
namespace {

// Reduction polynomials, coefficient-encoded: x^2+x+1 -> 0b111,
// x^3+x+1 -> 0b1011.
int reduction_poly(int q) {
  if (q == 4) return 0b111;
  if (q == 8) return 0b1011;
  return 0;
}

int poly_mul_mod2(int a, int b, int mod, int deg) {
  int acc = 0;
  while (b != 0) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1 << deg)) a ^= mod;
  }
  return acc;
}

}  // namespace

std::size_t FieldTable::idx(int a, int b) const {
  return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) +
         static_cast<std::size_t>(b);
}

FieldTable::FieldTable(int q) : q_(q) {
  if (q != 2 && q != 3 && q != 4 && q != 5 && q != 7 && q != 8)
    throw PreconditionError("make_field: unsupported order " +
                            std::to_string(q) +
                            " (supported: 2, 3, 4, 5, 7, 8)");
  p_ = (q == 4 || q == 8) ? 2 : q;
  const std::size_t n = static_cast<std::size_t>(q) * q;
  add_.resize(n);
  sub_.resize(n);
  mul_.resize(n);
  inv_.assign(static_cast<std::size_t>(q), 0);

  const bool binary_ext = (q == 4 || q == 8);
  const int mod = reduction_poly(q);
  const int deg = (q == 4) ? 2 : 3;

  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      int s, d, m;
      if (binary_ext) {
        s = a ^ b;
        d = a ^ b;
        m = poly_mul_mod2(a, b, mod, deg);
      } else {
        s = (a + b) % q;
        d = ((a - b) % q + q) % q;
        m = (a * b) % q;
      }
      add_[idx(a, b)] = static_cast<std::uint8_t>(s);
      sub_[idx(a, b)] = static_cast<std::uint8_t>(d);
      mul_[idx(a, b)] = static_cast<std::uint8_t>(m);
      if (m == 1) inv_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
    }
  }
}

int FieldTable::inv(int a) const {
  if (a == 0) throw PreconditionError("FieldTable::inv: zero has no inverse");
  return inv_[static_cast<std::size_t>(a)];
}

const FieldTable& make_field(int q) {
  static std::mutex mu;
  static std::map<int, FieldTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, FieldTable(q)).first;
  return it->second;
}

}  // namespace flatpbd
