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


#ifndef TREMAIN_GRAPHS_HPP
#define TREMAIN_GRAPHS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tremain/frames.hpp"

namespace tremain {

/// Simple undirected graph on vertices 0..n-1, adjacency as packed bit rows.
class Graph {
 public:
  explicit Graph(int n = 0);

  int order() const { return n_; }
  std::size_t words_per_row() const { return words_; }
  bool adjacent(int i, int j) const {
    return (bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1U;
  }
  /// Self-loops are rejected.
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  void toggle_edge(int i, int j);
  std::span<const std::uint64_t> row(int i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_, words_};
  }
  int degree(int i) const;
  std::size_t edge_count() const;
  Graph complement() const;
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;

  void check_pair(int i, int j) const;
};

struct SRGParams {
  int v = 0;
  int k = 0;
  int lambda = 0;
  /// Absent when the graph has no non-adjacent pairs.
  std::optional<int> mu;

  /// k(k - lambda - 1) == (v - k - 1) mu
  bool feasible() const;
  friend bool operator==(const SRGParams&, const SRGParams&) = default;
};

std::string to_string(const SRGParams& p);

struct SrgCertificate {
  bool valid = false;
  std::optional<SRGParams> params;
  /// First vertex pair (lexicographic) breaking regularity or a common-neighbor
  /// count; (i, i) for a degree mismatch.
  std::optional<std::pair<int, int>> violation;
  std::string message;
};

/// Exhaustive count over all vertex pairs.
SrgCertificate srg_check(const Graph& g, unsigned threads = 0);

/// Formula parameters; ContractViolation when any value is not an integer.
SRGParams srg_params_waldron(long long m, long long n);
SRGParams srg_params_gs(long long m, long long n);

enum class AdjacencyConvention { NegativeSign, PositiveSign };
const char* convention_name(AdjacencyConvention c);

struct SrgBuild {
  Graph graph;
  SRGParams expected;
  SrgCertificate certificate;
  AdjacencyConvention convention = AdjacencyConvention::NegativeSign;
};

/// Graph on the first N-1 columns after switching every sign against the last
/// column to +1. Throws CertificationError when neither the graph nor its
/// complement matches srg_params_waldron.
SrgBuild waldron_srg(const FrameMatrix& f, unsigned threads = 0);

/// The functional scaled by 3: 3*chi on the parallel-class blocks, 0 on points,
/// sqrt6 on the extra coordinate. Every column c satisfies <x, c> == 3.
struct FlatFunctional {
  std::vector<ExtScalar> scaled;
  int scale = 3;
};

/// Requires a real Tremain frame built with a parallel-class-first embedding.
/// Throws ContractViolation when that is not the case and CertificationError
/// naming the first column whose inner product is wrong.
FlatFunctional tremain_flat_functional(const FrameMatrix& f);
/// Column index with <x, c> != scale, if any.
std::optional<int> flat_functional_violation(const FrameMatrix& f, const FlatFunctional& x);

/// i ~ j iff <f_i, f_j> == -1, validated against srg_params_gs or flipped.
SrgBuild gs_srg(const FrameMatrix& f, const FlatFunctional& x, unsigned threads = 0);

/// n fibers of r vertices each.
class FiberPartition {
 public:
  FiberPartition(int vertices, std::vector<std::vector<int>> fibers);
  /// Vertex i * r + a lies in fiber i.
  static FiberPartition contiguous(int n, int r);

  int fiber_count() const { return static_cast<int>(fibers_.size()); }
  int fiber_size() const { return r_; }
  const std::vector<int>& fiber(int i) const { return fibers_[static_cast<std::size_t>(i)]; }
  int fiber_of(int v) const { return fiber_of_[static_cast<std::size_t>(v)]; }

 private:
  int r_;
  std::vector<std::vector<int>> fibers_;
  std::vector<int> fiber_of_;
};

struct DracknCertificate {
  bool valid = false;
  int n = 0;
  int r = 0;
  std::optional<int> c;
  /// Which condition failed: 1 (edge inside a fiber), 2 (not a perfect
  /// matching between two fibers), 3 (common-neighbor count), 0 (shape).
  int failed_condition = 0;
  std::optional<std::pair<int, int>> violation;
  std::string message;
};

/// (i) no edge inside a fiber; (ii) each vertex has exactly one neighbor in
/// every other fiber; (iii) every non-adjacent pair from distinct fibers has
/// the same number c of common neighbors. Requires r >= 2.
DracknCertificate drackn_check(const Graph& g, const FiberPartition& fibers, unsigned threads = 0);

struct DracknBuild {
  Graph graph;
  FiberPartition fibers;
  DracknCertificate certificate;
};

/// Vertex (i, a) = i p + a; (i, a) ~ (j, b) iff i != j and <f_i, f_j> == zeta_p^(b - a).
DracknBuild drackn_cover(const FrameMatrix& f, int p, unsigned threads = 0);

struct DracknParams {
  Rational from_beta;
  std::optional<Rational> closed_form;
  int c = 0;
};

/// c = (N - 2 + (2M - N) / (beta M)) / p, and 2h^2/p when (M, N) is a real
/// Tremain pair. ContractViolation on non-integral c or disagreement.
DracknParams drackn_params(long long m, long long n, int p);

/// graph6 for any order; edge list "n <v>", optional "p <fibers> <r>", then
/// "u v" lines.
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& text);
std::string to_edge_list(const Graph& g, const FiberPartition* fibers = nullptr);
Graph from_edge_list(const std::string& text, std::optional<FiberPartition>* fibers = nullptr);

enum class GraphFormat { EdgeList, Graph6 };
void export_graph(const Graph& g, GraphFormat format, const std::filesystem::path& path,
                  const FiberPartition* fibers = nullptr);
Graph import_graph(const std::filesystem::path& path, GraphFormat format);

}  // namespace tremain

#endif  // TREMAIN_GRAPHS_HPP
