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

#include "tremain/designs.hpp"

#include <algorithm>
#include <sstream>

#include "text_io.hpp"
#include "tremain/errors.hpp"

namespace tremain {

namespace {

Block sorted(Block b) {
  std::sort(b.begin(), b.end());
  return b;
}

int mod_inverse(int a, int n) {
  for (int x = 1; x < n; ++x) {
    if ((a * x) % n == 1) return x;
  }
  return n == 1 ? 0 : -1;
}

}  // namespace

SteinerTripleSystem::SteinerTripleSystem(int points, std::vector<Block> blocks, StsConstruction construction)
    : points_(points), construction_(construction) {
  if (points < 1) throw ContractViolation("SteinerTripleSystem: need at least one point");
  for (auto& b : blocks) {
    b = sorted(b);
    if (b[0] == b[1] || b[1] == b[2]) throw ContractViolation("SteinerTripleSystem: block repeats a point");
  }
  std::sort(blocks.begin(), blocks.end());
  blocks_ = std::move(blocks);
  incidence_.resize(static_cast<std::size_t>(points));
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (int p : blocks_[i]) {
      if (p < 0 || p >= points) {
        throw ContractViolation("SteinerTripleSystem: point " + std::to_string(p) + " out of range");
      }
      auto& inc = incidence_[static_cast<std::size_t>(p)];
      if (inc.empty() || inc.back() != i) inc.push_back(i);
    }
  }
}

std::optional<std::size_t> SteinerTripleSystem::index_of(Block b) const {
  b = sorted(b);
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), b);
  if (it == blocks_.end() || *it != b) return std::nullopt;
  return static_cast<std::size_t>(it - blocks_.begin());
}

SteinerTripleSystem bose(int v) {
  if (v < 3 || v % 6 != 3) {
    throw ContractViolation("bose: V must be >= 3 and congruent to 3 mod 6, got " + std::to_string(v));
  }
  const int n = v / 3;
  const int inv2 = mod_inverse(2 % n, n);
  auto pt = [](int x, int i) { return 3 * x + i; };
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(v * (v - 1) / 6));
  for (int x = 0; x < n; ++x) blocks.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
  for (int i = 0; i < 3; ++i) {
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        const int mid = ((x + y) * inv2) % n;
        blocks.push_back({pt(x, i), pt(y, i), pt(mid, (i + 1) % 3)});
      }
    }
  }
  return SteinerTripleSystem(v, std::move(blocks), StsConstruction::Bose);
}

SteinerTripleSystem skolem(int v) {
  if (v < 7 || v % 6 != 1) {
    throw ContractViolation("skolem: V must be >= 7 and congruent to 1 mod 6, got " + std::to_string(v));
  }
  const int n = (v - 1) / 6;
  const int q = 2 * n;
  // Half-idempotent commutative quasigroup on Z_2n: relabel the addition table
  // by 2i -> i, 2i + 1 -> n + i.
  auto op = [n, q](int x, int y) {
    const int z = (x + y) % q;
    return (z % 2 == 0) ? z / 2 : n + (z - 1) / 2;
  };
  auto pt = [](int x, int i) { return 3 * x + i; };
  const int inf = v - 1;
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(v * (v - 1) / 6));
  for (int x = 0; x < n; ++x) blocks.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < 3; ++i) blocks.push_back({inf, pt(n + x, i), pt(x, (i + 1) % 3)});
  }
  for (int i = 0; i < 3; ++i) {
    for (int x = 0; x < q; ++x) {
      for (int y = x + 1; y < q; ++y) blocks.push_back({pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)});
    }
  }
  return SteinerTripleSystem(v, std::move(blocks), StsConstruction::Skolem);
}

SteinerTripleSystem steiner_triple_system(int v) {
  if (v % 6 == 3) return bose(v);
  if (v % 6 == 1 && v >= 7) return skolem(v);
  throw ContractViolation("no Steiner triple system on " + std::to_string(v) + " points (need V = 1, 3 mod 6)");
}

StsReport verify_sts(const SteinerTripleSystem& s) {
  StsReport r;
  const int v = s.points();
  r.points = v;
  r.blocks = s.block_count();
  r.replication = s.blocks_through(0).size();
  for (const auto& b : s.blocks()) {
    if (b[0] == b[1] || b[1] == b[2]) {
      r.message = "block with repeated point";
      return r;
    }
  }
  std::vector<int> count(static_cast<std::size_t>(v) * static_cast<std::size_t>(v), 0);
  for (const auto& b : s.blocks()) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) ++count[static_cast<std::size_t>(b[i]) * v + b[j]];
    }
  }
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      const int c = count[static_cast<std::size_t>(a) * v + b];
      if (c != 1) {
        r.offending_pair = std::make_pair(a, b);
        r.message = "pair {" + std::to_string(a) + "," + std::to_string(b) + "} lies in " + std::to_string(c) +
                    " blocks";
        return r;
      }
    }
  }
  for (int p = 1; p < v; ++p) {
    if (static_cast<int>(s.blocks_through(p).size()) != r.replication) {
      r.message = "point " + std::to_string(p) + " has irregular replication";
      return r;
    }
  }
  const long long vv = v, bb = static_cast<long long>(r.blocks), rr = r.replication;
  r.identities_hold = (vv * rr == bb * 3) && (vv - 1 == rr * 2);
  r.valid = r.identities_hold;
  r.message = r.valid ? "ok" : "Steiner identities fail";
  return r;
}

bool is_parallel_class(const SteinerTripleSystem& s, const ParallelClass& cls) {
  std::vector<char> covered(static_cast<std::size_t>(s.points()), 0);
  std::size_t hits = 0;
  for (auto bi : cls) {
    if (bi >= s.block_count()) return false;
    for (int p : s.block(bi)) {
      if (covered[static_cast<std::size_t>(p)]) return false;
      covered[static_cast<std::size_t>(p)] = 1;
      ++hits;
    }
  }
  return hits == static_cast<std::size_t>(s.points());
}

namespace {

// Exact cover over points; branch on the uncovered point with the fewest
// usable blocks.
bool cover_search(const SteinerTripleSystem& s, std::vector<char>& covered, ParallelClass& chosen) {
  int best = -1;
  std::size_t best_options = SIZE_MAX;
  for (int p = 0; p < s.points(); ++p) {
    if (covered[static_cast<std::size_t>(p)]) continue;
    std::size_t options = 0;
    for (auto bi : s.blocks_through(p)) {
      const auto& b = s.block(bi);
      if (!covered[b[0]] && !covered[b[1]] && !covered[b[2]]) ++options;
    }
    if (options < best_options) {
      best_options = options;
      best = p;
      if (options == 0) return false;
    }
  }
  if (best < 0) return true;
  for (auto bi : s.blocks_through(best)) {
    const auto& b = s.block(bi);
    if (covered[b[0]] || covered[b[1]] || covered[b[2]]) continue;
    for (int p : b) covered[static_cast<std::size_t>(p)] = 1;
    chosen.push_back(bi);
    if (cover_search(s, covered, chosen)) return true;
    chosen.pop_back();
    for (int p : b) covered[static_cast<std::size_t>(p)] = 0;
  }
  return false;
}

}  // namespace

std::optional<ParallelClass> find_parallel_class(const SteinerTripleSystem& s) {
  if (s.points() % 3 != 0) return std::nullopt;
  if (s.construction() == StsConstruction::Bose) {
    ParallelClass cls;
    for (int x = 0; x < s.points() / 3; ++x) {
      auto idx = s.index_of({3 * x, 3 * x + 1, 3 * x + 2});
      if (!idx) break;
      cls.push_back(*idx);
    }
    if (is_parallel_class(s, cls)) {
      std::sort(cls.begin(), cls.end());
      return cls;
    }
  }
  std::vector<char> covered(static_cast<std::size_t>(s.points()), 0);
  ParallelClass chosen;
  if (!cover_search(s, covered, chosen)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

EmbeddingAssignment::EmbeddingAssignment(const SteinerTripleSystem& s, std::vector<std::vector<std::size_t>> lists,
                                         bool parallel_first)
    : lists_(std::move(lists)), parallel_first_(parallel_first) {
  if (static_cast<int>(lists_.size()) != s.points()) {
    throw ContractViolation("EmbeddingAssignment: one list per point required");
  }
  position_.assign(lists_.size(), std::vector<int>(s.block_count(), -1));
  for (std::size_t v = 0; v < lists_.size(); ++v) {
    if (lists_[v].size() != lists_[0].size()) throw ContractViolation("EmbeddingAssignment: ragged lists");
    for (std::size_t r = 0; r < lists_[v].size(); ++r) {
      const auto b = lists_[v][r];
      if (b >= s.block_count()) throw ContractViolation("EmbeddingAssignment: block index out of range");
      const auto& blk = s.block(b);
      if (std::find(blk.begin(), blk.end(), static_cast<int>(v)) == blk.end()) {
        throw ContractViolation("EmbeddingAssignment: block does not contain its point");
      }
      if (position_[v][b] != -1) throw ContractViolation("EmbeddingAssignment: repeated block");
      position_[v][b] = static_cast<int>(r);
    }
  }
}

int EmbeddingAssignment::position_of(int v, std::size_t block) const {
  return position_[static_cast<std::size_t>(v)][block];
}

SharedBlock EmbeddingAssignment::shared(int v, int w) const {
  if (v == w) throw ContractViolation("EmbeddingAssignment::shared: points must differ");
  std::optional<SharedBlock> found;
  for (std::size_t r = 0; r < list(v).size(); ++r) {
    const auto b = list(v)[r];
    const int pw = position_of(w, b);
    if (pw < 0) continue;
    if (found) throw ContractViolation("EmbeddingAssignment::shared: points share several blocks");
    found = SharedBlock{b, static_cast<int>(r), pw};
  }
  if (!found) throw ContractViolation("EmbeddingAssignment::shared: points share no block");
  return *found;
}

EmbeddingAssignment standard_embedding(const SteinerTripleSystem& s, const std::optional<ParallelClass>& parallel) {
  std::vector<std::vector<std::size_t>> lists(static_cast<std::size_t>(s.points()));
  for (int v = 0; v < s.points(); ++v) lists[static_cast<std::size_t>(v)] = s.blocks_through(v);
  if (parallel) {
    if (!is_parallel_class(s, *parallel)) throw ContractViolation("standard_embedding: invalid parallel class");
    for (auto bi : *parallel) {
      for (int p : s.block(bi)) {
        auto& l = lists[static_cast<std::size_t>(p)];
        auto it = std::find(l.begin(), l.end(), bi);
        std::rotate(l.begin(), it, it + 1);
      }
    }
  }
  return EmbeddingAssignment(s, std::move(lists), parallel.has_value());
}

std::string format_sts(const SteinerTripleSystem& s) {
  std::ostringstream os;
  os << s.points() << ' ' << s.block_count() << '\n';
  for (const auto& b : s.blocks()) os << b[0] << ' ' << b[1] << ' ' << b[2] << '\n';
  return os.str();
}

SteinerTripleSystem parse_sts(const std::string& text) {
  std::istringstream in(text);
  long long v = 0, nb = 0;
  if (!(in >> v >> nb) || v < 1 || nb < 0) throw ParseError("STS: expected header 'V B'");
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(nb));
  for (long long i = 0; i < nb; ++i) {
    Block b{};
    if (!(in >> b[0] >> b[1] >> b[2])) throw ParseError("STS: truncated block list at block " + std::to_string(i));
    for (int p : b) {
      if (p < 0 || p >= v) throw ParseError("STS: point " + std::to_string(p) + " out of range");
    }
    blocks.push_back(b);
  }
  std::string extra;
  if (in >> extra) throw ParseError("STS: trailing data after " + std::to_string(nb) + " blocks");
  return SteinerTripleSystem(static_cast<int>(v), std::move(blocks));
}

void write_sts(const std::filesystem::path& path, const SteinerTripleSystem& s) {
  detail::write_text_file(path, format_sts(s));
}

SteinerTripleSystem read_sts(const std::filesystem::path& path) { return parse_sts(detail::read_text_file(path)); }

void write_parallel_class(const std::filesystem::path& path, const ParallelClass& cls) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cls.size(); ++i) os << (i ? " " : "") << cls[i];
  os << '\n';
  detail::write_text_file(path, os.str());
}

ParallelClass read_parallel_class(const std::filesystem::path& path) {
  std::istringstream in(detail::read_text_file(path));
  ParallelClass cls;
  long long x = 0;
  while (in >> x) {
    if (x < 0) throw ParseError("parallel class: negative block index");
    cls.push_back(static_cast<std::size_t>(x));
  }
  if (!in.eof()) throw ParseError("parallel class: non-integer token");
  return cls;
}

}  // namespace tremain
