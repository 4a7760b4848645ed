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


#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "tremain/errors.hpp"
#include "tremain/ext_scalar.hpp"

using namespace tremain;

namespace {

using Poly = std::vector<long long>;

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Exact long division by a monic polynomial; requires zero remainder.
Poly div_exact(Poly num, const Poly& den) {
  Poly q(num.size() - den.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = num[i + den.size() - 1];
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
  }
  for (auto c : num) REQUIRE(c == 0);
  return q;
}

int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

// Phi_m as the product over d | m of (x^d - 1)^mu(m/d).
Poly phi_oracle(int m) {
  Poly num{1}, den{1};
  for (int d = 1; d <= m; ++d) {
    if (m % d) continue;
    Poly f(static_cast<std::size_t>(d) + 1, 0);
    f[0] = -1;
    f[static_cast<std::size_t>(d)] = 1;
    const int mu = moebius(m / d);
    if (mu == 1) num = mul(num, f);
    if (mu == -1) den = mul(den, f);
  }
  return div_exact(num, den);
}

Poly to_poly(const IntPoly& p) {
  Poly r;
  for (const auto& c : p) r.push_back(static_cast<long long>(c));
  return r;
}

ExtScalar random_scalar(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<int> coeff(-3, 3), kd(0, 2), which(0, 9);
  const int deg = CyclotomicRing::get(m).degree();
  std::array<CycInt, 4> parts;
  for (int s = 0; s < 4; ++s) {
    CycInt::Coeffs c;
    for (int i = 0; i < deg; ++i) c.push_back(which(rng) < 3 ? 0 : coeff(rng));
    parts[static_cast<std::size_t>(s)] = CycInt(m, std::move(c));
  }
  ExtScalar x(std::move(parts), kd(rng));
  if (which(rng) == 0) return x - x;
  return x;
}

bool close(std::complex<double> a, std::complex<double> b, double scale) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(to_poly(cyclotomic_poly(1)) == Poly{-1, 1});
  CHECK(to_poly(cyclotomic_poly(4)) == Poly{1, 0, 1});
  CHECK(to_poly(cyclotomic_poly(12)) == Poly{1, 0, -1, 0, 1});
  for (int m = 1; m <= 60; ++m) {
    CAPTURE(m);
    CHECK(to_poly(cyclotomic_poly(m)) == phi_oracle(m));
  }
  CHECK(CyclotomicRing::get(12).degree() == 4);
  CHECK(&CyclotomicRing::get(12) == &CyclotomicRing::get(12));
}

TEST_CASE("ring operation examples") {
  CHECK(ExtScalar::sqrt2(1) * ExtScalar::sqrt2(1) == ExtScalar::integer(1, 2));
  CHECK(ExtScalar::zeta(5, 1) * ExtScalar::zeta(5, 4) == ExtScalar::integer(5, 1));
  CHECK((ExtScalar::integer(3, 1) + ExtScalar::zeta(3, 1) + ExtScalar::zeta(3, 2)).is_zero());
  CHECK(ExtScalar::sqrt2(1) * ExtScalar::sqrt3(1) == ExtScalar::sqrt6(1));
  CHECK(ExtScalar::sqrt2(1) * ExtScalar::sqrt6(1) == ExtScalar::integer(1, 2) * ExtScalar::sqrt3(1));
  CHECK(ExtScalar::sqrt3(1) * ExtScalar::sqrt6(1) == ExtScalar::integer(1, 3) * ExtScalar::sqrt2(1));
  CHECK(ExtScalar::sqrt6(1) * ExtScalar::sqrt6(1) == ExtScalar::integer(1, 6));
  CHECK(-ExtScalar::integer(7, 4) + ExtScalar::integer(7, 4) == ExtScalar(7));
  CHECK(ext_neg(ext_add(ExtScalar::zeta(4, 1), ExtScalar::zeta(4, 3))).is_zero());
  CHECK(ext_conj(ExtScalar::zeta(5, 2)) == ExtScalar::zeta(5, 3));
  CHECK(ext_mul(ExtScalar::sqrt2(4), ExtScalar::sqrt2(4)) == ExtScalar::integer(4, 2));
}

TEST_CASE("surds inside the cyclotomic field share one representation") {
  CHECK(ExtScalar::sqrt2(8) == ExtScalar::zeta(8, 1) + ExtScalar::zeta(8, 7));
  CHECK(ExtScalar::sqrt3(12) == ExtScalar::zeta(12, 1) + ExtScalar::zeta(12, 11));
  CHECK(ExtScalar::sqrt6(24) == ExtScalar::sqrt2(24) * ExtScalar::sqrt3(24));
  CHECK(ExtScalar::sqrt2(8).part(Surd::Sqrt2).is_zero());
}

TEST_CASE("promotion") {
  CHECK(ext_promote(ExtScalar::integer(1, 1), 12) == ExtScalar::integer(12, 1));
  CHECK(ext_promote(ExtScalar::zeta(2, 1), 4) == ExtScalar::zeta(4, 2));
  CHECK(ext_promote(ExtScalar::zeta(3, 1), 6) == ExtScalar::zeta(6, 2));
  CHECK(ext_promote(ExtScalar::sqrt2(1), 8) == ExtScalar::sqrt2(8));
  CHECK_THROWS_AS(ext_promote(ExtScalar::zeta(3, 1), 4), ContractViolation);
}

TEST_CASE("numeric evaluation") {
  CHECK(ext_to_complex(ExtScalar(1)) == std::complex<double>(0.0, 0.0));
  CHECK(ext_to_complex(ExtScalar::sqrt2(1).scaled_pow2(1)).real() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  const auto z8 = ext_to_complex(ExtScalar::zeta(8, 1));
  CHECK(z8.real() == doctest::Approx(0.70710678118654752));
  CHECK(z8.imag() == doctest::Approx(0.70710678118654752));
}

TEST_CASE("order mismatch is a contract violation") {
  CHECK_THROWS_AS(ExtScalar::zeta(3, 1) * ExtScalar::zeta(5, 1), ContractViolation);
  CHECK_THROWS_AS((void)(ExtScalar::zeta(3, 1) == ExtScalar::zeta(5, 1)), ContractViolation);
  CHECK_THROWS_AS(CycInt::zeta(3, 1) + CycInt::zeta(4, 1), ContractViolation);
}

TEST_CASE("canonical denominators") {
  const ExtScalar half = ExtScalar::integer(1, 1).scaled_pow2(1);
  CHECK(half.denom_exp() == 1);
  CHECK((half + half).denom_exp() == 0);
  CHECK(half + half == ExtScalar::integer(1, 1));
  CHECK(ExtScalar::integer(1, 4).scaled_pow2(2) == ExtScalar::integer(1, 1));
  const ExtScalar s = ExtScalar::surd(1, Surd::Sqrt6, CycInt::integer(1, 1), 1);
  CHECK(s * s == ExtScalar::integer(1, 3).scaled_pow2(1));
}

TEST_CASE("random suite: evaluation is a ring homomorphism") {
  std::mt19937_64 rng(20261015);
  for (int m : {1, 2, 3, 4, 5, 8, 12}) {
    CAPTURE(m);
    for (int t = 0; t < 1000; ++t) {
      const ExtScalar x = random_scalar(rng, m), y = random_scalar(rng, m);
      const auto cx = x.to_complex(), cy = y.to_complex();
      const ExtScalar p = x * y, s = x + y;
      CHECK(close(p.to_complex(), cx * cy, std::abs(cx) * std::abs(cy)));
      CHECK(close(s.to_complex(), cx + cy, std::abs(cx) + std::abs(cy)));
      CHECK(close(x.conj().to_complex(), std::conj(cx), std::abs(cx)));
      for (const ExtScalar* v : {&x, &y, &p, &s}) CHECK(v->is_zero() == (std::abs(v->to_complex()) < 1e-9));
      CHECK(x.conj().conj() == x);
      CHECK((x * y).conj() == x.conj() * y.conj());
      ExtScalar c = x;
      c.canonicalize();
      CHECK(c == x);
      ExtScalar cc = c;
      cc.canonicalize();
      CHECK(cc == c);
    }
  }
}

TEST_CASE("vanishing sums are detected exactly") {
  for (int m : {2, 3, 5, 6, 7, 9, 10, 12, 15}) {
    ExtScalar sum(m);
    for (int e = 0; e < m; ++e) sum += ExtScalar::zeta(m, e);
    CHECK(sum.is_zero());
    CHECK(!(sum + ExtScalar::zeta(m, 1)).is_zero());
  }
}

TEST_CASE("printing") {
  std::ostringstream os;
  os << ExtScalar::surd(1, Surd::Sqrt6, CycInt::integer(1, 1), 1);
  CHECK(os.str() == "(0|0|0|1|1)");
  std::ostringstream os3;
  os3 << ExtScalar::zeta(3, 2);
  CHECK(os3.str() == "(-1,-1|0,0|0,0|0,0|0)");
}
