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


#ifndef TREMAIN_FRAMES_HPP
#define TREMAIN_FRAMES_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tremain/designs.hpp"
#include "tremain/ext_scalar.hpp"
#include "tremain/hadamard.hpp"

namespace tremain {

using Rational = boost::multiprecision::cpp_rational;

/// The n columns of a Hadamard matrix with one row deleted, together with the
/// deleted row (the Naimark complement).
class UnimodularSimplex {
 public:
  UnimodularSimplex(ButsonMatrix source, int removed_row);

  /// Number of vectors n.
  int size() const { return source_.order(); }
  /// Ambient dimension n - 1.
  int dim() const { return source_.order() - 1; }
  int root_order() const { return source_.root_order(); }
  int removed_row() const { return removed_; }
  const ButsonMatrix& source() const { return source_; }

  /// Exponent of phi_s(r), r in [0, dim).
  int exponent(int r, int s) const { return source_.exponent(r < removed_ ? r : r + 1, s); }
  int naimark_exponent(int s) const { return source_.exponent(removed_, s); }
  ExtScalar entry(int r, int s, int order) const;
  ExtScalar naimark(int s, int order) const;

 private:
  ButsonMatrix source_;
  int removed_;
};

/// Throws ContractViolation on a bad row and CertificationError when H is not
/// Hadamard.
UnimodularSimplex simplex_from_hadamard(const ButsonMatrix& h, int row);

/// <phi_i, phi_j> + a_i conj(a_j) == n [i == j] for every pair, exactly.
/// Returns the first failing (i, j) if any.
std::optional<std::pair<int, int>> naimark_violation(const UnimodularSimplex& sim);

struct WelchBound {
  /// (N - M) / (M (N - 1))
  Rational squared;
  double value = 0.0;
};

WelchBound welch_bound(long long m, long long n);

struct FrameEntry {
  int row;
  ExtScalar value;
};

/// Where a frame came from, for labels and for the derived-graph builders.
struct FrameProvenance {
  std::string kind = "external";
  int points = 0;
  int block_rows = 0;
  int point_rows = 0;
  int extra_rows = 0;
  std::string simplex_r;
  int removed_row_r = -1;
  std::string simplex_v;
  int removed_row_v = -1;
  std::optional<ParallelClass> parallel_class;
};

/// M x N matrix over ExtScalar at one root order, stored as sparse columns
/// with strictly increasing row indices.
class FrameMatrix {
 public:
  using Column = std::vector<FrameEntry>;

  FrameMatrix(int rows, int order, std::vector<Column> columns, FrameProvenance provenance = {});

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }
  int order() const { return order_; }
  const Column& column(int j) const { return columns_[static_cast<std::size_t>(j)]; }
  const std::vector<Column>& columns() const { return columns_; }
  ExtScalar entry(int i, int j) const;
  /// True when every entry lies in the real subfield (order 1 or 2).
  bool is_real() const { return order_ <= 2; }
  const FrameProvenance& provenance() const { return provenance_; }
  std::string row_label(int i) const;

  friend bool operator==(const FrameMatrix& a, const FrameMatrix& b);

 private:
  int rows_;
  int order_;
  std::vector<Column> columns_;
  FrameProvenance provenance_;
};

/// Columns E_v phi_s, v-major: B x V(R+1).
FrameMatrix steiner_etf(const SteinerTripleSystem& s, const EmbeddingAssignment& e, const UnimodularSimplex& sim);

/// Rows: blocks, then points, then one extra coordinate. Columns tau_{v,s}
/// (v-major) followed by tau_t:
///   tau_{v,s} = E_v phi_s + sqrt2 a_s delta_v
///   tau_t     = sqrt(1/2) psi_t + sqrt(3/2) b_t
FrameMatrix tremain_etf(const SteinerTripleSystem& s, const EmbeddingAssignment& e, const UnimodularSimplex& sim_r,
                        const UnimodularSimplex& sim_v);

/// <f_i, f_j> = sum_r f(r,i) conj(f(r,j)).
ExtScalar gram_entry(const FrameMatrix& f, int i, int j);

enum class VerifyMode { Exact, Float };

struct ETFReport {
  VerifyMode mode = VerifyMode::Exact;
  int m = 0;
  int n = 0;
  bool equal_norms = false;
  bool is_tight = false;
  bool is_equiangular = false;
  bool is_etf = false;
  /// Exact mode: the common squared norm, |<f_i,f_j>|^2 and tightness constant
  /// as rationals when those values are rational.
  std::optional<Rational> squared_norm;
  std::optional<Rational> squared_inner;
  std::optional<Rational> tight_constant;
  /// Squared coherence of the unit-normalized frame.
  std::optional<Rational> coherence_squared;
  bool coherence_meets_welch = false;
  WelchBound welch;
  double coherence = 0.0;
  double max_residual = 0.0;
  /// First failing (column, column) or (row, row) pair, lexicographic.
  std::optional<std::pair<int, int>> witness;
  std::string message;
};

/// threads == 0 uses every hardware thread. tol is used in float mode only.
ETFReport verify_etf(const FrameMatrix& f, VerifyMode mode, double tol = 1e-10, unsigned threads = 0);

/// For a frame whose off-diagonal Gram entries are all p-th roots of unity,
/// the N x N exponent table (row-major, zero diagonal). Throws
/// CertificationError naming the first pair that is not a p-th root.
std::vector<std::uint8_t> gram_root_exponents(const FrameMatrix& f, int p, unsigned threads = 0);

struct TremainParams {
  int v = 0;
  int r = 0;
  long long b = 0;
  long long m = 0;
  long long n = 0;
};

/// Complex family from V = 1, 3 mod 6.
TremainParams tremain_params_complex(int v);
/// Real family from h = 1, 2 mod 3 (h >= 2), with V = 2h - 1.
TremainParams tremain_params_real(int h);

/// Ingredients for a Tremain frame. Unset Hadamard matrices are built in:
/// a real one when it exists at that order, otherwise the Fourier matrix.
/// Both matrices are normalized. Default removed rows: last row of H1, first
/// row of H2.
struct TremainRecipe {
  int v = 0;
  std::optional<ButsonMatrix> h1;
  std::optional<ButsonMatrix> h2;
  std::optional<int> row_r;
  std::optional<int> row_v;
  bool parallel_first = false;
  /// Real family: H2 defaults to [[1,1],[1,-1]] (x) H1 instead of a fresh matrix.
  bool real = false;
};

struct TremainBuild {
  SteinerTripleSystem sts;
  EmbeddingAssignment embedding;
  UnimodularSimplex simplex_r;
  UnimodularSimplex simplex_v;
  FrameMatrix frame;
};

TremainBuild build_tremain(const TremainRecipe& recipe);

/// Exact format: "M N m" then M lines of N "(a|b|c|d|k)" tuples. Float format:
/// M lines of N "re,im" pairs. write_frame picks float for a .csv extension.
std::string format_frame_exact(const FrameMatrix& f);
std::string format_frame_csv(const FrameMatrix& f);
FrameMatrix parse_frame_exact(const std::string& text);
void write_frame(const std::filesystem::path& path, const FrameMatrix& f);
FrameMatrix read_frame(const std::filesystem::path& path);

}  // namespace tremain

#endif  // TREMAIN_FRAMES_HPP
