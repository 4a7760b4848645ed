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

#include "tremain/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <string>

#include "tremain/errors.hpp"

namespace tremain::kernels {

namespace scalar {

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

ComplexSum complex_dot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                       std::size_t n) {
  ComplexSum s;
  for (std::size_t i = 0; i < n; ++i) {
    s.re += a_re[i] * b_re[i] + a_im[i] * b_im[i];
    s.im += a_im[i] * b_re[i] - a_re[i] * b_im[i];
  }
  return s;
}

}  // namespace scalar

namespace {

using AndPopcountFn = std::uint64_t (*)(const std::uint64_t*, const std::uint64_t*, std::size_t);
using ComplexDotFn = ComplexSum (*)(const double*, const double*, const double*, const double*, std::size_t);

struct KernelTable {
  Isa isa;
  AndPopcountFn and_popcount;
  ComplexDotFn complex_dot;
};

KernelTable table_for(Isa isa) {
  switch (isa) {
#ifdef TREMAIN_HAVE_AVX2_KERNELS
    case Isa::Avx2:
      return {Isa::Avx2, &avx2::and_popcount, &avx2::complex_dot};
#endif
#ifdef TREMAIN_HAVE_NEON_KERNELS
    case Isa::Neon:
      return {Isa::Neon, &neon::and_popcount, &neon::complex_dot};
#endif
    default:
      return {Isa::Scalar, &scalar::and_popcount, &scalar::complex_dot};
  }
}

Isa detect_best() {
  if (const char* forced = std::getenv("TREMAIN_ISA"); forced && std::strcmp(forced, "scalar") == 0) {
    return Isa::Scalar;
  }
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

const KernelTable& static_table(Isa isa) {
  static const KernelTable scalar_table = table_for(Isa::Scalar);
  static const KernelTable avx2_table = table_for(Isa::Avx2);
  static const KernelTable neon_table = table_for(Isa::Neon);
  switch (isa) {
    case Isa::Avx2:
      return avx2_table;
    case Isa::Neon:
      return neon_table;
    default:
      return scalar_table;
  }
}

std::atomic<const KernelTable*>& current_table() {
  static std::atomic<const KernelTable*> current{&static_table(detect_best())};
  return current;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
    default:
      return "scalar";
  }
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#ifdef TREMAIN_HAVE_AVX2_KERNELS
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
    case Isa::Neon:
#ifdef TREMAIN_HAVE_NEON_KERNELS
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current_table().load(std::memory_order_acquire)->isa; }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw ContractViolation(std::string("kernel ISA not supported here: ") + isa_name(isa));
  current_table().store(&static_table(isa), std::memory_order_release);
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw ContractViolation("and_popcount: length mismatch");
  return current_table().load(std::memory_order_acquire)->and_popcount(a.data(), b.data(), a.size());
}

ComplexSum complex_dot(std::span<const double> a_re, std::span<const double> a_im, std::span<const double> b_re,
                       std::span<const double> b_im) {
  const std::size_t n = a_re.size();
  if (a_im.size() != n || b_re.size() != n || b_im.size() != n) {
    throw ContractViolation("complex_dot: length mismatch");
  }
  return current_table().load(std::memory_order_acquire)->complex_dot(a_re.data(), a_im.data(), b_re.data(),
                                                                       b_im.data(), n);
}

}  // namespace tremain::kernels
