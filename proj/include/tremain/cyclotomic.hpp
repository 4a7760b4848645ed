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

#ifndef TREMAIN_CYCLOTOMIC_HPP
#define TREMAIN_CYCLOTOMIC_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace tremain {

using Integer = boost::multiprecision::cpp_int;

/// Dense integer polynomial, coefficient i multiplies x^i.
using IntPoly = std::vector<Integer>;

/// The m-th cyclotomic polynomial, by exact division of x^m - 1 by Phi_d for
/// every proper divisor d of m.
IntPoly cyclotomic_poly(int m);

/// Arithmetic context for Z[zeta_m] in the power basis 1, zeta, ..., zeta^(deg-1).
/// Instances are interned: get(m) always returns the same object.
class CyclotomicRing {
 public:
  static const CyclotomicRing& get(int m);

  int order() const { return m_; }
  int degree() const { return deg_; }
  const IntPoly& minimal_poly() const { return phi_; }

  /// Reduced coefficients of zeta^e (e taken mod m).
  const std::vector<Integer>& zeta_power(std::int64_t e) const;

  /// sqrt(2) lies in Q(zeta_m) exactly when 8 | m; sqrt(3) when 12 | m.
  bool contains_sqrt2() const { return m_ % 8 == 0; }
  bool contains_sqrt3() const { return m_ % 12 == 0; }

  CyclotomicRing(const CyclotomicRing&) = delete;
  CyclotomicRing& operator=(const CyclotomicRing&) = delete;

 private:
  explicit CyclotomicRing(int m);

  int m_;
  int deg_;
  IntPoly phi_;
  std::vector<std::vector<Integer>> powers_;
  std::vector<std::complex<double>> basis_values_;

  friend class CycInt;
};

/// Element of Z[zeta_m], always stored reduced modulo Phi_m.
class CycInt {
 public:
  using Coeffs = boost::container::small_vector<Integer, 4>;

  /// Zero of order 1.
  CycInt();
  /// Zero of the given order.
  explicit CycInt(int order);
  CycInt(int order, Coeffs coeffs);

  static CycInt integer(int order, const Integer& n);
  static CycInt zeta(int order, std::int64_t exponent);

  int order() const { return ring_->order(); }
  int degree() const { return ring_->degree(); }
  const CyclotomicRing& ring() const { return *ring_; }
  const Coeffs& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// True when every coefficient is even, i.e. the value is divisible by 2 in Z[zeta_m].
  bool is_even() const;
  /// Exact division by 2; requires is_even().
  void halve();
  void scale(const Integer& factor);

  CycInt conj() const;
  CycInt promote(int new_order) const;
  std::complex<double> to_complex() const;

  CycInt& operator+=(const CycInt& rhs);
  CycInt& operator-=(const CycInt& rhs);
  CycInt operator-() const;
  friend CycInt operator+(CycInt lhs, const CycInt& rhs) { return lhs += rhs; }
  friend CycInt operator-(CycInt lhs, const CycInt& rhs) { return lhs -= rhs; }
  friend CycInt operator*(const CycInt& lhs, const CycInt& rhs);
  friend bool operator==(const CycInt& lhs, const CycInt& rhs);

  /// lhs += a * b without materializing the product.
  static void fused_add_mul(CycInt& acc, const CycInt& a, const CycInt& b);

 private:
  const CyclotomicRing* ring_;
  Coeffs coeffs_;

  void require_same_order(const CycInt& other) const;
};

std::ostream& operator<<(std::ostream& os, const CycInt& x);

}  // namespace tremain

#endif  // TREMAIN_CYCLOTOMIC_HPP
