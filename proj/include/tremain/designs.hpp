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

#ifndef TREMAIN_DESIGNS_HPP
#define TREMAIN_DESIGNS_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tremain {

using Block = std::array<int, 3>;
using ParallelClass = std::vector<std::size_t>;

enum class StsConstruction { Bose, Skolem, External };

/// Points 0..V-1 and a list of triples. Blocks are stored sorted internally and
/// the block list is kept in lexicographic order, so block indices are stable.
class SteinerTripleSystem {
 public:
  static constexpr int kBlockSize = 3;

  SteinerTripleSystem(int points, std::vector<Block> blocks,
                      StsConstruction construction = StsConstruction::External);

  int points() const { return points_; }
  std::size_t block_count() const { return blocks_.size(); }
  /// (V - 1) / 2, the number of blocks through each point of a valid system.
  int replication() const { return (points_ - 1) / 2; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t i) const { return blocks_[i]; }
  /// Indices of the blocks containing v, ascending.
  const std::vector<std::size_t>& blocks_through(int v) const { return incidence_[static_cast<std::size_t>(v)]; }
  std::optional<std::size_t> index_of(Block b) const;
  StsConstruction construction() const { return construction_; }

 private:
  int points_;
  std::vector<Block> blocks_;
  std::vector<std::vector<std::size_t>> incidence_;
  StsConstruction construction_;
};

struct StsReport {
  bool valid = false;
  int points = 0;
  std::size_t blocks = 0;
  int replication = 0;
  /// V*R == B*K and V - 1 == R*(K - 1)
  bool identities_hold = false;
  std::optional<std::pair<int, int>> offending_pair;
  std::string message;
};

/// Bose construction, V = 3n with n odd. Point (x, i) of Z_n x Z_3 is 3x + i.
SteinerTripleSystem bose(int v);
/// Skolem construction, V = 6n + 1. Point (x, i) of Z_2n x Z_3 is 3x + i and
/// the point at infinity is V - 1.
SteinerTripleSystem skolem(int v);
/// bose or skolem depending on V mod 6.
SteinerTripleSystem steiner_triple_system(int v);

StsReport verify_sts(const SteinerTripleSystem& s);

/// V/3 pairwise disjoint blocks covering every point, if any exist.
std::optional<ParallelClass> find_parallel_class(const SteinerTripleSystem& s);
bool is_parallel_class(const SteinerTripleSystem& s, const ParallelClass& cls);

/// Where two distinct points meet: the shared block and its position in each
/// point's embedding list.
struct SharedBlock {
  std::size_t block;
  int position_in_first;
  int position_in_second;
};

/// Per-point ordering b_v(0..R-1) of the blocks through v; realizes the
/// embedding operator E_v with E_v delta_r = delta_{b_v(r)}.
class EmbeddingAssignment {
 public:
  EmbeddingAssignment(const SteinerTripleSystem& s, std::vector<std::vector<std::size_t>> lists,
                      bool parallel_first);

  int points() const { return static_cast<int>(lists_.size()); }
  int replication() const { return lists_.empty() ? 0 : static_cast<int>(lists_[0].size()); }
  const std::vector<std::size_t>& list(int v) const { return lists_[static_cast<std::size_t>(v)]; }
  std::size_t block_at(int v, int r) const { return lists_[static_cast<std::size_t>(v)][static_cast<std::size_t>(r)]; }
  /// Position r with b_v(r) == block, or -1.
  int position_of(int v, std::size_t block) const;
  /// Requires v != w; throws if the two lists do not share exactly one block.
  SharedBlock shared(int v, int w) const;
  /// True when position 0 of every list is a block of one parallel class.
  bool parallel_first() const { return parallel_first_; }

 private:
  std::vector<std::vector<std::size_t>> lists_;
  std::vector<std::vector<int>> position_;  // position_[v][block] or -1
  bool parallel_first_;
};

EmbeddingAssignment standard_embedding(const SteinerTripleSystem& s,
                                       const std::optional<ParallelClass>& parallel = std::nullopt);

// Text formats. STS: "V B" then one block per line. Parallel class: one line
// of block indices.
void write_sts(const std::filesystem::path& path, const SteinerTripleSystem& s);
SteinerTripleSystem read_sts(const std::filesystem::path& path);
void write_parallel_class(const std::filesystem::path& path, const ParallelClass& cls);
ParallelClass read_parallel_class(const std::filesystem::path& path);

std::string format_sts(const SteinerTripleSystem& s);
SteinerTripleSystem parse_sts(const std::string& text);

}  // namespace tremain

#endif  // TREMAIN_DESIGNS_HPP
