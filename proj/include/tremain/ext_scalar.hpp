// Copyright 2026 The tremain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREMAIN_EXT_SCALAR_HPP
#define TREMAIN_EXT_SCALAR_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "tremain/cyclotomic.hpp"

namespace tremain {

/// Index of a surd in the basis {1, sqrt2, sqrt3, sqrt6}. Bit 0 carries the
/// factor 2 and bit 1 the factor 3, so a product of two surds lands on the
/// XOR of their indices.
enum class Surd : int { One = 0, Sqrt2 = 1, Sqrt3 = 2, Sqrt6 = 3 };

/// Exact value (a + b*sqrt2 + c*sqrt3 + d*sqrt6) / 2^k with a..d in Z[zeta_m].
///
/// Canonical form:
///  - k is minimal (k == 0, or some coefficient of a..d is odd);
///  - when sqrt2 lies in Q(zeta_m) (8 | m) the sqrt2 and sqrt6 parts are folded
///    into the 1 and sqrt3 parts; likewise sqrt3 when 12 | m.
/// With both rules in force coefficient-wise equality is value equality.
class ExtScalar {
 public:
  /// Zero of order 1.
  ExtScalar();
  /// Zero of the given order.
  explicit ExtScalar(int order);
  ExtScalar(std::array<CycInt, 4> parts, int denom_exp);

  static ExtScalar integer(int order, const Integer& n);
  static ExtScalar zeta(int order, std::int64_t exponent);
  /// factor * sqrt(s) / 2^denom_exp
  static ExtScalar surd(int order, Surd s, const CycInt& factor, int denom_exp = 0);
  static ExtScalar sqrt2(int order) { return surd(order, Surd::Sqrt2, CycInt::integer(order, 1)); }
  static ExtScalar sqrt3(int order) { return surd(order, Surd::Sqrt3, CycInt::integer(order, 1)); }
  static ExtScalar sqrt6(int order) { return surd(order, Surd::Sqrt6, CycInt::integer(order, 1)); }

  int order() const { return parts_[0].order(); }
  int denom_exp() const { return k_; }
  const CycInt& part(Surd s) const { return parts_[static_cast<int>(s)]; }
  const std::array<CycInt, 4>& parts() const { return parts_; }

  bool is_zero() const;
  /// The value as p / 2^k when it is rational.
  std::optional<std::pair<Integer, int>> as_dyadic() const;

  ExtScalar conj() const;
  ExtScalar promote(int new_order) const;
  /// Divide by 2^e exactly (e >= 0).
  ExtScalar scaled_pow2(int e) const;
  std::complex<double> to_complex() const;

  ExtScalar& operator+=(const ExtScalar& rhs);
  ExtScalar& operator-=(const ExtScalar& rhs);
  ExtScalar operator-() const;
  friend ExtScalar operator+(ExtScalar lhs, const ExtScalar& rhs) { return lhs += rhs; }
  friend ExtScalar operator-(ExtScalar lhs, const ExtScalar& rhs) { return lhs -= rhs; }
  friend ExtScalar operator*(const ExtScalar& lhs, const ExtScalar& rhs);
  friend bool operator==(const ExtScalar& lhs, const ExtScalar& rhs);
  friend bool operator!=(const ExtScalar& lhs, const ExtScalar& rhs) { return !(lhs == rhs); }

  /// x * conj(y), the summand of an inner product.
  static ExtScalar mul_conj(const ExtScalar& x, const ExtScalar& y) { return x * y.conj(); }

  /// Idempotent; exposed so the canonical-form contract can be tested.
  void canonicalize();

 private:
  std::array<CycInt, 4> parts_;
  int k_ = 0;

  void fold_absorbed_surds();
  void align_to(int k);
};

// Named forms of the ring operations.
inline ExtScalar ext_add(const ExtScalar& x, const ExtScalar& y) { return x + y; }
inline ExtScalar ext_mul(const ExtScalar& x, const ExtScalar& y) { return x * y; }
inline ExtScalar ext_neg(const ExtScalar& x) { return -x; }
inline ExtScalar ext_conj(const ExtScalar& x) { return x.conj(); }
inline ExtScalar ext_promote(const ExtScalar& x, int new_order) { return x.promote(new_order); }
inline std::complex<double> ext_to_complex(const ExtScalar& x) { return x.to_complex(); }

std::ostream& operator<<(std::ostream& os, const ExtScalar& x);

}  // namespace tremain

#endif  // TREMAIN_EXT_SCALAR_HPP
