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

#include <arm_neon.h>

#include <bit>

#include "tremain/kernels.hpp"

namespace tremain::kernels::neon {

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    const uint8x16_t cnt = vcntq_u8(vreinterpretq_u8_u64(v));
    acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(cnt))));
  }
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < words; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

ComplexSum complex_dot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                       std::size_t n) {
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ar = vld1q_f64(a_re + i);
    const float64x2_t ai = vld1q_f64(a_im + i);
    const float64x2_t br = vld1q_f64(b_re + i);
    const float64x2_t bi = vld1q_f64(b_im + i);
    re = vfmaq_f64(re, ar, br);
    re = vfmaq_f64(re, ai, bi);
    im = vfmaq_f64(im, ai, br);
    im = vfmsq_f64(im, ar, bi);
  }
  ComplexSum s{vaddvq_f64(re), vaddvq_f64(im)};
  for (; i < n; ++i) {
    s.re += a_re[i] * b_re[i] + a_im[i] * b_im[i];
    s.im += a_im[i] * b_re[i] - a_re[i] * b_im[i];
  }
  return s;
}

}  // namespace tremain::kernels::neon
