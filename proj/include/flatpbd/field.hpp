#pragma once

#include <cstdint>
#include <vector>

namespace flatpbd {

// Exact arithmetic tables for a small finite field. Supported orders are
// 2, 3, 4, 5, 7 and 8. Prime fields are integers mod p; GF(4) is built
// over x^2 + x + 1 and GF(8) over x^3 + x + 1, with elements encoded as
// polynomial coefficient bit patterns (so 2 = x, 3 = x + 1, ...).
class FieldTable {
 public:
  explicit FieldTable(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int sub(int a, int b) const { return sub_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int inv(int a) const;  // a != 0
  int neg(int a) const { return sub(0, a); }

 private:
  std::size_t idx(int a, int b) const;

  int q_ = 0;
  int p_ = 0;
  std::vector<std::uint8_t> add_, sub_, mul_;
  std::vector<std::uint8_t> inv_;
};

// Shared immutable instance for a supported order.
const FieldTable& make_field(int q);

}  // namespace flatpbd
