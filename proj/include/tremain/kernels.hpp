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

#ifndef TREMAIN_KERNELS_HPP
#define TREMAIN_KERNELS_HPP

// Data-parallel inner loops: bitset intersection counts for graph
// certification and complex dot products for float-mode frame checks.
//
// Every kernel has a scalar reference in kernels::scalar and vector variants
// (AVX2 on x86-64, NEON on aarch64). The dispatching entry points pick the best
// variant supported by the running CPU once, on first use; TREMAIN_ISA=scalar
// in the environment or set_isa() forces a choice.

#include <cstddef>
#include <cstdint>
#include <span>

namespace tremain::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();
/// Throws ContractViolation if the CPU (or build) lacks the requested ISA.
void set_isa(Isa isa);

/// Sum of a[i] * conj(b[i]) over split real/imaginary arrays.
struct ComplexSum {
  double re = 0.0;
  double im = 0.0;
};

/// popcount(a & b) over equal-length word spans.
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
ComplexSum complex_dot(std::span<const double> a_re, std::span<const double> a_im, std::span<const double> b_re,
                       std::span<const double> b_im);

namespace scalar {
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
ComplexSum complex_dot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                       std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define TREMAIN_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
ComplexSum complex_dot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                       std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define TREMAIN_HAVE_NEON_KERNELS 1
namespace neon {
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
ComplexSum complex_dot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                       std::size_t n);
}  // namespace neon
#endif

}  // namespace tremain::kernels

#endif  // TREMAIN_KERNELS_HPP
