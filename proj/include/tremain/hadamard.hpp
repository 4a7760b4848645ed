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

#ifndef TREMAIN_HADAMARD_HPP
#define TREMAIN_HADAMARD_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tremain/ext_scalar.hpp"

namespace tremain {

/// n x n matrix with entries zeta_q^e, stored as exponents in [0, q).
/// q == 2 is a real Hadamard matrix.
class ButsonMatrix {
 public:
  ButsonMatrix(int n, int q, std::vector<int> exponents, std::string label = {});

  int order() const { return n_; }
  int root_order() const { return q_; }
  int exponent(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<int>& exponents() const { return e_; }
  /// Entry as an exact scalar at order q (or any multiple of q).
  ExtScalar entry(int i, int j) const { return ExtScalar::zeta(q_, exponent(i, j)); }
  ExtScalar entry(int i, int j, int order) const;
  const std::string& label() const { return label_; }

  friend bool operator==(const ButsonMatrix& a, const ButsonMatrix& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.e_ == b.e_;
  }

 private:
  int n_;
  int q_;
  std::vector<int> e_;
  std::string label_;
};

struct HadamardReport {
  bool valid = false;
  std::optional<std::pair<int, int>> first_failure;
  std::string message;
};

/// k-fold Kronecker power of [[1,1],[1,-1]].
ButsonMatrix sylvester(int k);
/// Paley I (q = 3 mod 4, order q+1) or Paley II (q = 1 mod 4, order 2(q+1)).
ButsonMatrix paley(int q);
/// e_ij = i*j mod n.
ButsonMatrix fourier(int n);
/// Root order of the result is lcm(q1, q2).
ButsonMatrix kronecker(const ButsonMatrix& a, const ButsonMatrix& b);
/// First row and first column all ones.
ButsonMatrix normalize(const ButsonMatrix& h);
/// Exact check of every entry of H H^* against n I; reports the first failing
/// (row, row) position in lexicographic order.
HadamardReport verify_hadamard(const ButsonMatrix& h);

bool is_prime(long long n);

/// A real Hadamard matrix of order n from Sylvester, Paley and Kronecker
/// closure, if one of those reaches n.
std::optional<ButsonMatrix> real_hadamard(int n);
/// A built-in H(p, n): real_hadamard for p == 2, Kronecker powers of fourier(p)
/// when n is a power of p. Other orders (e.g. H(5,10)) need a file or search.
std::optional<ButsonMatrix> builtin_butson(int n, int p);

// File format: "n q" then n rows of n exponents in [0, q).
std::string format_butson(const ButsonMatrix& h);
/// Parses and verifies; throws ParseError on malformed text and
/// CertificationError when the matrix is not Hadamard.
ButsonMatrix parse_butson(const std::string& text, const std::string& label = "file");
void store_butson(const std::filesystem::path& path, const ButsonMatrix& h);
ButsonMatrix load_butson(const std::filesystem::path& path);

struct ButsonSearchOptions {
  std::uint64_t seed = 1;
  /// Total number of single-entry moves across all workers.
  std::uint64_t budget = 2'000'000;
  /// Independent runs; each gets budget / workers moves and its own seed.
  unsigned workers = 1;
  /// Run workers on separate threads (results do not depend on this).
  bool parallel = false;
};

/// Stochastic local search for an H(q, n). Minimizes the exact number of
/// nonzero off-diagonal Gram entries under single-entry moves. Moves that do
/// not lower the count are scored by count change plus float Gram energy
/// change and accepted by a Metropolis rule; stalled runs restart. Deterministic for fixed options;
/// the lowest worker index that succeeds wins.
std::optional<ButsonMatrix> search_butson(int n, int q, const ButsonSearchOptions& opts = {});

/// Exhaustive row-by-row search over dephased matrices: row 0 and column 0 are
/// zero, row 1 is sorted, later rows increase lexicographically. Each
/// orthogonality test is exact. Gives up after node_budget tests. Requires
/// q^(n-1) <= 2^25 candidate rows.
std::optional<ButsonMatrix> backtrack_butson(int n, int q, std::uint64_t node_budget = 50'000'000);

}  // namespace tremain

#endif  // TREMAIN_HADAMARD_HPP
