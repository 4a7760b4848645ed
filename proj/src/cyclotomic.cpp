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

#include "tremain/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>

#include "tremain/errors.hpp"

namespace tremain {

namespace {

// Quotient of num by a monic divisor; throws if the remainder is nonzero.
IntPoly exact_divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) {
    throw std::logic_error("exact_divide_monic: degree too small");
  }
  IntPoly quot(num.size() - dd, Integer(0));
  for (std::size_t i = num.size(); i-- > dd;) {
    const Integer c = num[i];
    quot[i - dd] = c;
    if (c != 0) {
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (num[i] != 0) throw std::logic_error("exact_divide_monic: nonzero remainder");
  }
  return quot;
}

IntPoly cyclotomic_poly_cached(int m, std::map<int, IntPoly>& cache) {
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  IntPoly p(static_cast<std::size_t>(m) + 1, Integer(0));
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) p = exact_divide_monic(std::move(p), cyclotomic_poly_cached(d, cache));
  }
  cache.emplace(m, p);
  return p;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

IntPoly cyclotomic_poly(int m) {
  if (m < 1) throw ContractViolation("cyclotomic_poly: order must be positive");
  std::map<int, IntPoly> cache;
  return cyclotomic_poly_cached(m, cache);
}

CyclotomicRing::CyclotomicRing(int m) : m_(m), phi_(cyclotomic_poly(m)) {
  deg_ = static_cast<int>(phi_.size()) - 1;
  // zeta^e for e in [0, m): multiply by x and fold x^deg = -sum phi_i x^i.
  powers_.reserve(static_cast<std::size_t>(m));
  std::vector<Integer> cur(static_cast<std::size_t>(deg_), Integer(0));
  cur[0] = 1;
  for (int e = 0; e < m; ++e) {
    powers_.push_back(cur);
    Integer top = cur.back();
    for (int i = deg_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int i = 0; i < deg_; ++i) cur[i] -= top * phi_[i];
    }
  }
  basis_values_.reserve(static_cast<std::size_t>(deg_));
  for (int j = 0; j < deg_; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / m;
    basis_values_.emplace_back(std::cos(angle), std::sin(angle));
  }
}

const CyclotomicRing& CyclotomicRing::get(int m) {
  if (m < 1) throw ContractViolation("CyclotomicRing: order must be positive, got " + std::to_string(m));
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicRing>> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = registry[m];
  if (!slot) slot.reset(new CyclotomicRing(m));
  return *slot;
}

const std::vector<Integer>& CyclotomicRing::zeta_power(std::int64_t e) const {
  return powers_[static_cast<std::size_t>(mod(e, m_))];
}

CycInt::CycInt() : CycInt(1) {}

CycInt::CycInt(int order)
    : ring_(&CyclotomicRing::get(order)), coeffs_(static_cast<std::size_t>(ring_->degree())) {}

CycInt::CycInt(int order, Coeffs coeffs) : ring_(&CyclotomicRing::get(order)) {
  const auto deg = static_cast<std::size_t>(ring_->degree());
  if (coeffs.size() == deg) {
    coeffs_ = std::move(coeffs);
    return;
  }
  // Longer input is a polynomial in zeta; reduce it.
  coeffs_.assign(deg, Integer(0));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    const auto& p = ring_->zeta_power(static_cast<std::int64_t>(j));
    for (std::size_t i = 0; i < deg; ++i) {
      if (p[i] != 0) coeffs_[i] += coeffs[j] * p[i];
    }
  }
}

CycInt CycInt::integer(int order, const Integer& n) {
  CycInt r(order);
  r.coeffs_[0] = n;
  return r;
}

CycInt CycInt::zeta(int order, std::int64_t exponent) {
  CycInt r(order);
  const auto& p = r.ring_->zeta_power(exponent);
  for (std::size_t i = 0; i < p.size(); ++i) r.coeffs_[i] = p[i];
  return r;
}

bool CycInt::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool CycInt::is_even() const {
  for (const auto& c : coeffs_) {
    if (boost::multiprecision::bit_test(c, 0)) return false;
  }
  return true;
}

void CycInt::halve() {
  for (auto& c : coeffs_) c /= 2;  // exact: caller checked is_even()
}

void CycInt::scale(const Integer& factor) {
  for (auto& c : coeffs_) c *= factor;
}

void CycInt::require_same_order(const CycInt& other) const {
  if (ring_ != other.ring_) {
    throw ContractViolation("cyclotomic order mismatch: " + std::to_string(order()) + " vs " +
                            std::to_string(other.order()) + " (promote first)");
  }
}

CycInt& CycInt::operator+=(const CycInt& rhs) {
  require_same_order(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs) {
  require_same_order(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

void CycInt::fused_add_mul(CycInt& acc, const CycInt& a, const CycInt& b) {
  a.require_same_order(b);
  acc.require_same_order(a);
  const int deg = a.degree();
  if (deg == 1) {
    acc.coeffs_[0] += a.coeffs_[0] * b.coeffs_[0];
    return;
  }
  const CyclotomicRing& ring = *a.ring_;
  for (int i = 0; i < deg; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < deg; ++j) {
      if (b.coeffs_[j] == 0) continue;
      const Integer prod = a.coeffs_[i] * b.coeffs_[j];
      if (i + j < deg) {
        acc.coeffs_[i + j] += prod;
      } else {
        const auto& red = ring.zeta_power(i + j);
        for (int t = 0; t < deg; ++t) {
          if (red[t] != 0) acc.coeffs_[t] += prod * red[t];
        }
      }
    }
  }
}

CycInt operator*(const CycInt& lhs, const CycInt& rhs) {
  CycInt r(lhs.order());
  CycInt::fused_add_mul(r, lhs, rhs);
  return r;
}

bool operator==(const CycInt& lhs, const CycInt& rhs) {
  lhs.require_same_order(rhs);
  return lhs.coeffs_ == rhs.coeffs_;
}

CycInt CycInt::conj() const {
  const int deg = degree();
  if (deg == 1) return *this;  // orders 1 and 2 are real
  CycInt r(order());
  const int m = order();
  for (int j = 0; j < deg; ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& p = ring_->powers_[static_cast<std::size_t>((m - j) % m)];
    for (int t = 0; t < deg; ++t) {
      if (p[t] != 0) r.coeffs_[t] += coeffs_[j] * p[t];
    }
  }
  return r;
}

CycInt CycInt::promote(int new_order) const {
  if (new_order < 1 || new_order % order() != 0) {
    throw ContractViolation("promote: order " + std::to_string(order()) + " does not divide " +
                            std::to_string(new_order));
  }
  if (new_order == order()) return *this;
  const std::int64_t step = new_order / order();
  CycInt r(new_order);
  const auto& target = *r.ring_;
  for (int j = 0; j < degree(); ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& p = target.zeta_power(step * j);
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (p[t] != 0) r.coeffs_[t] += coeffs_[j] * p[t];
    }
  }
  return r;
}

std::complex<double> CycInt::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  for (int j = 0; j < degree(); ++j) {
    if (coeffs_[j] == 0) continue;
    acc += coeffs_[j].convert_to<double>() * ring_->basis_values_[static_cast<std::size_t>(j)];
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const CycInt& x) {
  const auto& c = x.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  return os;
}

}  // namespace tremain
