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


#include "tremain/graphs.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "text_io.hpp"
#include "tremain/errors.hpp"
#include "tremain/kernels.hpp"
#include "tremain/parallel.hpp"

namespace tremain {

namespace {

using Pair = std::pair<int, int>;

std::string pair_text(const Pair& p) { return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")"; }

std::optional<Pair> earliest(const std::vector<std::optional<Pair>>& found) {
  std::optional<Pair> best;
  for (const auto& p : found) {
    if (p && (!best || *p < *best)) best = p;
  }
  return best;
}

int common(const Graph& g, int i, int j) { return static_cast<int>(kernels::and_popcount(g.row(i), g.row(j))); }

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  const Integer num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  const Integer rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

// coeff / beta, where 1/beta = sqrt(M (N - 1) / (N - M)); exact or absent.
std::optional<Rational> over_beta(const Rational& coeff, long long m, long long n) {
  if (coeff == 0) return Rational(0);
  auto inv = rational_sqrt(Rational(Integer(m) * (n - 1), Integer(n - m)));
  if (!inv) return std::nullopt;
  return coeff * *inv;
}

int require_int(const std::optional<Rational>& x, const char* what, const char* who) {
  if (!x || boost::multiprecision::denominator(*x) != 1) {
    throw ContractViolation(std::string(who) + ": " + what + " is not an integer");
  }
  return static_cast<int>(boost::multiprecision::numerator(*x));
}

void check_ratio(long long m, long long n, const char* who) {
  if (m < 1 || n <= m) throw ContractViolation(std::string(who) + ": need N > M >= 1");
}

}  // namespace

Graph::Graph(int n) : n_(n), words_((static_cast<std::size_t>(std::max(n, 0)) + 63) / 64) {
  if (n < 0) throw ContractViolation("Graph: negative order");
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void Graph::check_pair(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw ContractViolation("Graph: vertex out of range");
  if (i == j) throw ContractViolation("Graph: self-loop at " + std::to_string(i));
}

void Graph::add_edge(int i, int j) {
  check_pair(i, j);
  bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] |= 1ULL << (j % 64);
  bits_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i) / 64] |= 1ULL << (i % 64);
}

void Graph::remove_edge(int i, int j) {
  check_pair(i, j);
  bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] &= ~(1ULL << (j % 64));
  bits_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i) / 64] &= ~(1ULL << (i % 64));
}

void Graph::toggle_edge(int i, int j) {
  check_pair(i, j);
  bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] ^= 1ULL << (j % 64);
  bits_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i) / 64] ^= 1ULL << (i % 64);
}

int Graph::degree(int i) const {
  int d = 0;
  for (auto w : row(i)) d += std::popcount(w);
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

Graph Graph::complement() const {
  Graph c(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (!adjacent(i, j)) c.add_edge(i, j);
    }
  }
  return c;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

bool SRGParams::feasible() const {
  const long long lhs = 1LL * k * (k - lambda - 1);
  const long long rhs = 1LL * (v - k - 1) * mu.value_or(0);
  return lhs == rhs;
}

std::string to_string(const SRGParams& p) {
  return "(" + std::to_string(p.v) + "," + std::to_string(p.k) + "," + std::to_string(p.lambda) + "," +
         (p.mu ? std::to_string(*p.mu) : std::string("-")) + ")";
}

SrgCertificate srg_check(const Graph& g, unsigned threads) {
  SrgCertificate cert;
  const int n = g.order();
  if (n < 2) {
    cert.message = "need at least two vertices";
    return cert;
  }
  const int k = g.degree(0);
  for (int i = 1; i < n; ++i) {
    if (g.degree(i) != k) {
      cert.violation = Pair{i, i};
      cert.message = "vertex " + std::to_string(i) + " has degree " + std::to_string(g.degree(i)) + ", vertex 0 has " +
                     std::to_string(k);
      return cert;
    }
  }
  std::optional<int> lambda, mu;
  for (int i = 0; i < n && !(lambda && mu); ++i) {
    for (int j = i + 1; j < n && !(lambda && mu); ++j) {
      auto& slot = g.adjacent(i, j) ? lambda : mu;
      if (!slot) slot = common(g, i, j);
    }
  }
  std::vector<std::optional<Pair>> found(resolve_threads(threads));
  parallel_for(static_cast<std::size_t>(n), threads, [&](unsigned w, std::size_t iu) {
    if (found[w]) return;
    const int i = static_cast<int>(iu);
    for (int j = i + 1; j < n; ++j) {
      const int c = common(g, i, j);
      if (c != (g.adjacent(i, j) ? *lambda : *mu)) {
        found[w] = Pair{i, j};
        return;
      }
    }
  });
  if (auto bad = earliest(found)) {
    cert.violation = bad;
    cert.message = std::string(g.adjacent(bad->first, bad->second) ? "adjacent" : "non-adjacent") + " pair " +
                   pair_text(*bad) + " has " + std::to_string(common(g, bad->first, bad->second)) +
                   " common neighbors";
    return cert;
  }
  cert.valid = true;
  cert.params = SRGParams{n, k, lambda.value_or(0), mu};
  cert.message = "strongly regular " + to_string(*cert.params);
  return cert;
}

SRGParams srg_params_waldron(long long m, long long n) {
  const char* who = "srg_params_waldron";
  check_ratio(m, n, who);
  const auto t = over_beta(Rational(n, m) - 2, m, n);
  std::optional<Rational> k;
  if (t) k = Rational(n, 2) - 1 + *t / 2;
  SRGParams p;
  p.v = static_cast<int>(n - 1);
  p.k = require_int(k, "k", who);
  p.lambda = require_int(Rational(3 * p.k - p.v - 1, 2), "lambda", who);
  p.mu = require_int(Rational(p.k, 2), "mu", who);
  return p;
}

SRGParams srg_params_gs(long long m, long long n) {
  const char* who = "srg_params_gs";
  check_ratio(m, n, who);
  const Rational alpha(n, m);
  const auto tk = over_beta(alpha - 1, m, n);
  const auto tl = over_beta(3 * alpha - 4, m, n);
  const auto tm = over_beta(alpha, m, n);
  std::optional<Rational> k, l, u;
  if (tk) k = Rational(n - 1, 2) + *tk / 2;
  if (tl) l = Rational(n, 4) - 1 + *tl / 4;
  if (tm) u = Rational(n, 4) + *tm / 4;
  SRGParams p;
  p.v = static_cast<int>(n);
  p.k = require_int(k, "k", who);
  p.lambda = require_int(l, "lambda", who);
  p.mu = require_int(u, "mu", who);
  return p;
}

const char* convention_name(AdjacencyConvention c) {
  return c == AdjacencyConvention::NegativeSign ? "negative-sign" : "positive-sign";
}

namespace {

SrgBuild validate_or_flip(Graph g, const SRGParams& expected, unsigned threads, const char* who) {
  SrgCertificate direct = srg_check(g, threads);
  if (direct.valid && *direct.params == expected) {
    return SrgBuild{std::move(g), expected, std::move(direct), AdjacencyConvention::NegativeSign};
  }
  Graph flipped = g.complement();
  SrgCertificate other = srg_check(flipped, threads);
  if (other.valid && *other.params == expected) {
    return SrgBuild{std::move(flipped), expected, std::move(other), AdjacencyConvention::PositiveSign};
  }
  throw CertificationError(std::string(who) + ": expected " + to_string(expected) + "; negative-sign graph: " +
                           direct.message + "; positive-sign graph: " + other.message);
}

}  // namespace

SrgBuild waldron_srg(const FrameMatrix& f, unsigned threads) {
  if (!f.is_real()) throw ContractViolation("waldron_srg: frame must be real");
  const int n = f.cols();
  const SRGParams expected = srg_params_waldron(f.rows(), n);
  const auto e = gram_root_exponents(f, 2, threads);
  auto sign = [&](int i, int j) { return e[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)]; };
  Graph g(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    for (int j = i + 1; j < n - 1; ++j) {
      if (sign(i, j) ^ sign(i, n - 1) ^ sign(j, n - 1)) g.add_edge(i, j);
    }
  }
  return validate_or_flip(std::move(g), expected, threads, "waldron_srg");
}

FlatFunctional tremain_flat_functional(const FrameMatrix& f) {
  const auto& prov = f.provenance();
  if (prov.kind != "tremain") throw ContractViolation("flat functional: not a Tremain frame");
  if (!f.is_real()) throw ContractViolation("flat functional: frame must be real");
  if (prov.points % 3 != 0) {
    throw ContractViolation("flat functional: V = " + std::to_string(prov.points) + " is not divisible by 3");
  }
  if (!prov.parallel_class) throw ContractViolation("flat functional: embedding does not start with a parallel class");
  const int m = f.order();
  FlatFunctional x;
  x.scaled.assign(static_cast<std::size_t>(f.rows()), ExtScalar(m));
  for (auto b : *prov.parallel_class) x.scaled[b] = ExtScalar::integer(m, 3);
  x.scaled[static_cast<std::size_t>(f.rows() - 1)] = ExtScalar::sqrt6(m);
  if (auto bad = flat_functional_violation(f, x)) {
    throw CertificationError("flat functional: <x, f_" + std::to_string(*bad) + "> != 1");
  }
  return x;
}

std::optional<int> flat_functional_violation(const FrameMatrix& f, const FlatFunctional& x) {
  if (static_cast<int>(x.scaled.size()) != f.rows()) throw ContractViolation("flat functional: length mismatch");
  const ExtScalar target = ExtScalar::integer(f.order(), x.scale);
  for (int j = 0; j < f.cols(); ++j) {
    ExtScalar acc(f.order());
    for (const auto& e : f.column(j)) {
      const auto& xr = x.scaled[static_cast<std::size_t>(e.row)];
      if (!xr.is_zero()) acc += xr.conj() * e.value;
    }
    if (acc != target) return j;
  }
  return std::nullopt;
}

SrgBuild gs_srg(const FrameMatrix& f, const FlatFunctional& x, unsigned threads) {
  if (!f.is_real()) throw ContractViolation("gs_srg: frame must be real");
  if (auto bad = flat_functional_violation(f, x)) {
    throw CertificationError("gs_srg: functional is not flat at column " + std::to_string(*bad));
  }
  const int n = f.cols();
  const SRGParams expected = srg_params_gs(f.rows(), n);
  const auto e = gram_root_exponents(f, 2, threads);
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (e[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)]) g.add_edge(i, j);
    }
  }
  return validate_or_flip(std::move(g), expected, threads, "gs_srg");
}

FiberPartition::FiberPartition(int vertices, std::vector<std::vector<int>> fibers)
    : r_(fibers.empty() ? 0 : static_cast<int>(fibers[0].size())), fibers_(std::move(fibers)) {
  fiber_of_.assign(static_cast<std::size_t>(std::max(vertices, 0)), -1);
  for (std::size_t i = 0; i < fibers_.size(); ++i) {
    if (static_cast<int>(fibers_[i].size()) != r_) throw ContractViolation("FiberPartition: fibers differ in size");
    for (int v : fibers_[i]) {
      if (v < 0 || v >= vertices) throw ContractViolation("FiberPartition: vertex out of range");
      if (fiber_of_[static_cast<std::size_t>(v)] != -1) {
        throw ContractViolation("FiberPartition: vertex " + std::to_string(v) + " in two fibers");
      }
      fiber_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  for (int f : fiber_of_) {
    if (f < 0) throw ContractViolation("FiberPartition: fibers do not cover every vertex");
  }
}

FiberPartition FiberPartition::contiguous(int n, int r) {
  std::vector<std::vector<int>> fibers(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < r; ++a) fibers[static_cast<std::size_t>(i)].push_back(i * r + a);
  }
  return FiberPartition(n * r, std::move(fibers));
}

DracknCertificate drackn_check(const Graph& g, const FiberPartition& fibers, unsigned threads) {
  DracknCertificate cert;
  cert.n = fibers.fiber_count();
  cert.r = fibers.fiber_size();
  const int nv = g.order();
  if (cert.r < 2) {
    cert.message = "fibers must have at least two vertices";
    return cert;
  }
  if (cert.n * cert.r != nv) {
    cert.message = "fibers do not partition the vertex set";
    return cert;
  }
  for (int f = 0; f < cert.n; ++f) {
    const auto& fib = fibers.fiber(f);
    for (std::size_t a = 0; a < fib.size(); ++a) {
      for (std::size_t b = a + 1; b < fib.size(); ++b) {
        if (g.adjacent(fib[a], fib[b])) {
          cert.failed_condition = 1;
          cert.violation = std::minmax(fib[a], fib[b]);
          cert.message = "edge inside fiber " + std::to_string(f) + " at " + pair_text(*cert.violation);
          return cert;
        }
      }
    }
  }
  std::vector<int> count(static_cast<std::size_t>(cert.n));
  for (int v = 0; v < nv; ++v) {
    std::fill(count.begin(), count.end(), 0);
    const auto row = g.row(v);
    for (std::size_t w = 0; w < row.size(); ++w) {
      for (std::uint64_t bits = row[w]; bits; bits &= bits - 1) {
        ++count[static_cast<std::size_t>(fibers.fiber_of(static_cast<int>(w * 64) + std::countr_zero(bits)))];
      }
    }
    for (int f = 0; f < cert.n; ++f) {
      if (f != fibers.fiber_of(v) && count[static_cast<std::size_t>(f)] != 1) {
        cert.failed_condition = 2;
        cert.violation = Pair{v, f};
        cert.message = "vertex " + std::to_string(v) + " has " + std::to_string(count[static_cast<std::size_t>(f)]) +
                       " neighbors in fiber " + std::to_string(f);
        return cert;
      }
    }
  }
  std::optional<int> ref;
  for (int i = 0; i < nv && !ref; ++i) {
    for (int j = i + 1; j < nv && !ref; ++j) {
      if (fibers.fiber_of(i) != fibers.fiber_of(j) && !g.adjacent(i, j)) ref = common(g, i, j);
    }
  }
  std::vector<std::optional<Pair>> found(resolve_threads(threads));
  if (ref) {
    parallel_for(static_cast<std::size_t>(nv), threads, [&](unsigned w, std::size_t iu) {
      if (found[w]) return;
      const int i = static_cast<int>(iu);
      for (int j = i + 1; j < nv; ++j) {
        if (fibers.fiber_of(i) == fibers.fiber_of(j) || g.adjacent(i, j)) continue;
        if (common(g, i, j) != *ref) {
          found[w] = Pair{i, j};
          return;
        }
      }
    });
  }
  if (auto bad = earliest(found)) {
    cert.failed_condition = 3;
    cert.violation = bad;
    cert.message = "non-adjacent pair " + pair_text(*bad) + " has " +
                   std::to_string(common(g, bad->first, bad->second)) + " common neighbors, expected " +
                   std::to_string(*ref);
    return cert;
  }
  cert.valid = true;
  cert.c = ref;
  cert.message = "(" + std::to_string(cert.n) + "," + std::to_string(cert.r) + "," +
                 (ref ? std::to_string(*ref) : std::string("-")) + ")-cover";
  return cert;
}

DracknBuild drackn_cover(const FrameMatrix& f, int p, unsigned threads) {
  if (p < 2 || !is_prime(p)) throw ContractViolation("drackn_cover: p must be prime");
  const int n = f.cols();
  const auto e = gram_root_exponents(f, p, threads);
  Graph g(n * p);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int d = e[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
      for (int a = 0; a < p; ++a) g.add_edge(i * p + a, j * p + (a + d) % p);
    }
  }
  FiberPartition fibers = FiberPartition::contiguous(n, p);
  DracknCertificate cert = drackn_check(g, fibers, threads);
  if (!cert.valid) throw CertificationError("drackn_cover: " + cert.message);
  return DracknBuild{std::move(g), std::move(fibers), std::move(cert)};
}

DracknParams drackn_params(long long m, long long n, int p) {
  const char* who = "drackn_params";
  check_ratio(m, n, who);
  if (p < 2 || !is_prime(p)) throw ContractViolation("drackn_params: p must be prime");
  DracknParams out;
  const auto t = over_beta(Rational(2 * m - n, m), m, n);
  if (!t) throw ContractViolation("drackn_params: (2M - N) / (beta M) is irrational");
  out.from_beta = (Rational(n - 2) + *t) / p;
  const Integer disc = 1 + 8 * Integer(n);
  const Integer root = boost::multiprecision::sqrt(disc);
  if (root * root == disc && (root - 1) % 4 == 0) {
    const long long h = static_cast<long long>((root - 1) / 4);
    if (h >= 2 && h % 3 != 0 && 3 * m == (h + 1) * (2 * h + 1)) out.closed_form = Rational(2 * h * h, p);
  }
  out.c = require_int(out.from_beta, "c", who);
  if (out.closed_form && *out.closed_form != out.from_beta) {
    throw ContractViolation("drackn_params: closed form disagrees with the beta form");
  }
  return out;
}

std::string to_graph6(const Graph& g) {
  const long long n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out += "~~";
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  }
  if (nbits) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

Graph from_graph6(const std::string& raw) {
  std::string text = raw;
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  if (text.rfind(">>graph6<<", 0) == 0) text.erase(0, 10);
  std::size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= text.size()) throw ParseError("graph6: truncated");
    const int c = static_cast<unsigned char>(text[pos++]) - 63;
    if (c < 0 || c > 63) throw ParseError("graph6: character out of range");
    return c;
  };
  long long n = 0;
  if (!text.empty() && text[0] == '~') {
    ++pos;
    int digits = 3;
    if (text.size() > 1 && text[1] == '~') {
      ++pos;
      digits = 6;
    }
    for (int d = 0; d < digits; ++d) n = (n << 6) | next();
  } else {
    n = next();
  }
  if (n > 1'000'000) throw ParseError("graph6: order too large");
  Graph g(static_cast<int>(n));
  int chunk = 0, left = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (left == 0) {
        chunk = next();
        left = 6;
      }
      --left;
      if ((chunk >> left) & 1) g.add_edge(i, j);
    }
  }
  if (pos != text.size()) throw ParseError("graph6: trailing data");
  return g;
}

std::string to_edge_list(const Graph& g, const FiberPartition* fibers) {
  std::ostringstream os;
  os << "n " << g.order() << '\n';
  if (fibers) os << "p " << fibers->fiber_count() << ' ' << fibers->fiber_size() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

Graph from_edge_list(const std::string& text, std::optional<FiberPartition>* fibers) {
  std::istringstream in(text);
  std::string tag;
  long long n = 0;
  if (!(in >> tag >> n) || tag != "n" || n < 0 || n > 1'000'000) throw ParseError("edge list: expected 'n <v>'");
  Graph g(static_cast<int>(n));
  std::string tok;
  std::streampos mark = in.tellg();
  if (in >> tok && tok == "p") {
    long long nf = 0, r = 0;
    if (!(in >> nf >> r) || nf < 0 || r < 1 || nf * r != n) throw ParseError("edge list: bad 'p' header");
    if (fibers) *fibers = FiberPartition::contiguous(static_cast<int>(nf), static_cast<int>(r));
  } else {
    in.clear();
    in.seekg(mark);
  }
  long long u = 0, v = 0;
  while (in >> u) {
    if (!(in >> v)) throw ParseError("edge list: odd number of endpoints");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw ParseError("edge list: bad edge " + std::to_string(u) + " " + std::to_string(v));
    }
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (!in.eof()) throw ParseError("edge list: unreadable token");
  return g;
}

void export_graph(const Graph& g, GraphFormat format, const std::filesystem::path& path,
                  const FiberPartition* fibers) {
  detail::write_text_file(path, format == GraphFormat::Graph6 ? to_graph6(g) + "\n" : to_edge_list(g, fibers));
}

Graph import_graph(const std::filesystem::path& path, GraphFormat format) {
  const std::string text = detail::read_text_file(path);
  return format == GraphFormat::Graph6 ? from_graph6(text) : from_edge_list(text);
}

}  // namespace tremain
