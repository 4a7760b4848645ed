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

#include "tremain/ext_scalar.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "tremain/errors.hpp"

namespace tremain {

namespace {

constexpr std::array<double, 4> kSurdValues = {1.0, 1.4142135623730951, 1.7320508075688772,
                                               2.4494897427831781};

// 2cos(2*pi/d) expressed in Z[zeta_m]; equals sqrt2 for d = 8 and sqrt3 for d = 12.
CycInt real_root_sum(int m, int d) {
  const std::int64_t e = m / d;
  return CycInt::zeta(m, e) + CycInt::zeta(m, -e);
}

}  // namespace

ExtScalar::ExtScalar() : ExtScalar(1) {}

ExtScalar::ExtScalar(int order) : parts_{CycInt(order), CycInt(order), CycInt(order), CycInt(order)} {}

ExtScalar::ExtScalar(std::array<CycInt, 4> parts, int denom_exp) : parts_(std::move(parts)), k_(denom_exp) {
  if (denom_exp < 0) throw ContractViolation("ExtScalar: negative denominator exponent");
  const int m = parts_[0].order();
  for (const auto& p : parts_) {
    if (p.order() != m) throw ContractViolation("ExtScalar: parts must share one order");
  }
  canonicalize();
}

ExtScalar ExtScalar::integer(int order, const Integer& n) {
  ExtScalar r(order);
  r.parts_[0] = CycInt::integer(order, n);
  return r;
}

ExtScalar ExtScalar::zeta(int order, std::int64_t exponent) {
  ExtScalar r(order);
  r.parts_[0] = CycInt::zeta(order, exponent);
  return r;
}

ExtScalar ExtScalar::surd(int order, Surd s, const CycInt& factor, int denom_exp) {
  ExtScalar r(order);
  r.parts_[static_cast<int>(s)] = factor.promote(order);
  r.k_ = denom_exp;
  r.canonicalize();
  return r;
}

bool ExtScalar::is_zero() const {
  for (const auto& p : parts_) {
    if (!p.is_zero()) return false;
  }
  return true;
}

std::optional<std::pair<Integer, int>> ExtScalar::as_dyadic() const {
  for (int i = 1; i < 4; ++i) {
    if (!parts_[i].is_zero()) return std::nullopt;
  }
  const auto& c = parts_[0].coeffs();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] != 0) return std::nullopt;
  }
  return std::make_pair(c[0], k_);
}

void ExtScalar::fold_absorbed_surds() {
  const CyclotomicRing& ring = parts_[0].ring();
  if (ring.contains_sqrt2()) {
    const CycInt s2 = real_root_sum(ring.order(), 8);
    if (!parts_[1].is_zero()) {
      CycInt::fused_add_mul(parts_[0], parts_[1], s2);
      parts_[1] = CycInt(ring.order());
    }
    if (!parts_[3].is_zero()) {
      CycInt::fused_add_mul(parts_[2], parts_[3], s2);
      parts_[3] = CycInt(ring.order());
    }
  }
  if (ring.contains_sqrt3()) {
    const CycInt s3 = real_root_sum(ring.order(), 12);
    if (!parts_[2].is_zero()) {
      CycInt::fused_add_mul(parts_[0], parts_[2], s3);
      parts_[2] = CycInt(ring.order());
    }
    if (!parts_[3].is_zero()) {
      CycInt::fused_add_mul(parts_[1], parts_[3], s3);
      parts_[3] = CycInt(ring.order());
    }
  }
}

void ExtScalar::canonicalize() {
  fold_absorbed_surds();
  if (k_ == 0) return;
  if (is_zero()) {
    k_ = 0;
    return;
  }
  while (k_ > 0) {
    for (const auto& p : parts_) {
      if (!p.is_even()) return;
    }
    for (auto& p : parts_) p.halve();
    --k_;
  }
}

void ExtScalar::align_to(int k) {
  if (k <= k_) return;
  const Integer factor = Integer(1) << (k - k_);
  for (auto& p : parts_) p.scale(factor);
  k_ = k;
}

ExtScalar& ExtScalar::operator+=(const ExtScalar& rhs) {
  if (rhs.k_ == k_) {
    for (int i = 0; i < 4; ++i) parts_[i] += rhs.parts_[i];
  } else if (rhs.k_ > k_) {
    align_to(rhs.k_);
    for (int i = 0; i < 4; ++i) parts_[i] += rhs.parts_[i];
  } else {
    ExtScalar tmp(rhs);
    tmp.align_to(k_);
    for (int i = 0; i < 4; ++i) parts_[i] += tmp.parts_[i];
  }
  canonicalize();
  return *this;
}

ExtScalar& ExtScalar::operator-=(const ExtScalar& rhs) { return *this += -rhs; }

ExtScalar ExtScalar::operator-() const {
  ExtScalar r(*this);
  for (auto& p : r.parts_) p = -p;
  return r;
}

ExtScalar operator*(const ExtScalar& lhs, const ExtScalar& rhs) {
  const int m = lhs.order();
  if (rhs.order() != m) {
    throw ContractViolation("ExtScalar: order mismatch " + std::to_string(m) + " vs " +
                            std::to_string(rhs.order()) + " (promote first)");
  }
  ExtScalar r(m);
  for (int i = 0; i < 4; ++i) {
    if (lhs.parts_[i].is_zero()) continue;
    for (int j = 0; j < 4; ++j) {
      if (rhs.parts_[j].is_zero()) continue;
      const int common = i & j;
      const int factor = ((common & 1) ? 2 : 1) * ((common & 2) ? 3 : 1);
      if (factor == 1) {
        CycInt::fused_add_mul(r.parts_[i ^ j], lhs.parts_[i], rhs.parts_[j]);
      } else {
        CycInt prod = lhs.parts_[i] * rhs.parts_[j];
        prod.scale(factor);
        r.parts_[i ^ j] += prod;
      }
    }
  }
  r.k_ = lhs.k_ + rhs.k_;
  r.canonicalize();
  return r;
}

bool operator==(const ExtScalar& lhs, const ExtScalar& rhs) {
  if (lhs.order() != rhs.order()) {
    throw ContractViolation("ExtScalar: comparing values of different orders");
  }
  if (lhs.k_ != rhs.k_) return false;
  for (int i = 0; i < 4; ++i) {
    if (!(lhs.parts_[i] == rhs.parts_[i])) return false;
  }
  return true;
}

ExtScalar ExtScalar::conj() const {
  if (parts_[0].degree() == 1) return *this;
  ExtScalar r(*this);
  for (auto& p : r.parts_) p = p.conj();
  return r;
}

ExtScalar ExtScalar::promote(int new_order) const {
  if (new_order == order()) return *this;
  ExtScalar r(new_order);
  for (int i = 0; i < 4; ++i) r.parts_[i] = parts_[i].promote(new_order);
  r.k_ = k_;
  r.canonicalize();
  return r;
}

ExtScalar ExtScalar::scaled_pow2(int e) const {
  if (e < 0) throw ContractViolation("scaled_pow2: negative exponent");
  ExtScalar r(*this);
  r.k_ += e;
  r.canonicalize();
  return r;
}

std::complex<double> ExtScalar::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  for (int i = 0; i < 4; ++i) {
    if (parts_[i].is_zero()) continue;
    acc += parts_[i].to_complex() * kSurdValues[static_cast<std::size_t>(i)];
  }
  return {std::ldexp(acc.real(), -k_), std::ldexp(acc.imag(), -k_)};
}

std::ostream& operator<<(std::ostream& os, const ExtScalar& x) {
  const auto& p = x.parts();
  return os << '(' << p[0] << '|' << p[1] << '|' << p[2] << '|' << p[3] << '|' << x.denom_exp() << ')';
}

}  // namespace tremain
