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


#include "tremain/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "text_io.hpp"
#include "tremain/errors.hpp"
#include "tremain/kernels.hpp"
#include "tremain/parallel.hpp"

namespace tremain {

namespace {

using Column = FrameMatrix::Column;
using Pair = std::pair<int, int>;

ExtScalar sparse_dot(const Column& a, const Column& b_conj, int order) {
  ExtScalar acc(order);
  auto ia = a.begin();
  auto ib = b_conj.begin();
  while (ia != a.end() && ib != b_conj.end()) {
    if (ia->row < ib->row) {
      ++ia;
    } else if (ib->row < ia->row) {
      ++ib;
    } else {
      acc += ia->value * ib->value;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

std::vector<Column> conjugated(const std::vector<Column>& cols) {
  std::vector<Column> out(cols);
  for (auto& c : out) {
    for (auto& e : c) e.value = e.value.conj();
  }
  return out;
}

// Columns of the transpose; entry rows are column indices of the original.
std::vector<Column> transposed(const FrameMatrix& f) {
  std::vector<Column> rows(static_cast<std::size_t>(f.rows()));
  for (int j = 0; j < f.cols(); ++j) {
    for (const auto& e : f.column(j)) rows[static_cast<std::size_t>(e.row)].push_back({j, e.value});
  }
  return rows;
}

// Shares storage with the input when conjugation is the identity.
class ConjView {
 public:
  ConjView(const std::vector<Column>& cols, int order) {
    if (CyclotomicRing::get(order).degree() == 1) {
      view_ = &cols;
    } else {
      owned_ = conjugated(cols);
      view_ = &owned_;
    }
  }
  const Column& operator[](std::size_t i) const { return (*view_)[i]; }

 private:
  std::vector<Column> owned_;
  const std::vector<Column>* view_ = nullptr;
};

std::optional<Pair> earliest(const std::vector<std::optional<Pair>>& found) {
  std::optional<Pair> best;
  for (const auto& p : found) {
    if (p && (!best || *p < *best)) best = p;
  }
  return best;
}

std::optional<Rational> to_rational(const ExtScalar& x) {
  auto d = x.as_dyadic();
  if (!d) return std::nullopt;
  return Rational(d->first) / Rational(Integer(1) << d->second);
}

int lcm_int(int a, int b) { return std::lcm(a, b); }

std::string pair_text(const Pair& p) { return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")"; }

}  // namespace

UnimodularSimplex::UnimodularSimplex(ButsonMatrix source, int removed_row)
    : source_(std::move(source)), removed_(removed_row) {
  if (removed_row < 0 || removed_row >= source_.order()) {
    throw ContractViolation("simplex: row " + std::to_string(removed_row) + " out of range for order " +
                            std::to_string(source_.order()));
  }
}

ExtScalar UnimodularSimplex::entry(int r, int s, int order) const {
  if (order % root_order() != 0) throw ContractViolation("simplex entry: order must be a multiple of q");
  return ExtScalar::zeta(order, static_cast<std::int64_t>(exponent(r, s)) * (order / root_order()));
}

ExtScalar UnimodularSimplex::naimark(int s, int order) const {
  if (order % root_order() != 0) throw ContractViolation("simplex naimark: order must be a multiple of q");
  return ExtScalar::zeta(order, static_cast<std::int64_t>(naimark_exponent(s)) * (order / root_order()));
}

UnimodularSimplex simplex_from_hadamard(const ButsonMatrix& h, int row) {
  if (row < 0 || row >= h.order()) {
    throw ContractViolation("simplex_from_hadamard: row " + std::to_string(row) + " out of range");
  }
  const auto report = verify_hadamard(h);
  if (!report.valid) throw CertificationError("simplex_from_hadamard: " + report.message);
  UnimodularSimplex sim(h, row);
  if (auto bad = naimark_violation(sim)) {
    throw CertificationError("simplex_from_hadamard: Naimark identity fails at " + pair_text(*bad));
  }
  return sim;
}

std::optional<std::pair<int, int>> naimark_violation(const UnimodularSimplex& sim) {
  const int n = sim.size(), q = sim.root_order();
  const CycInt target = CycInt::integer(q, n);
  const CycInt zero(q);
  CycInt::Coeffs hist(static_cast<std::size_t>(q));
  auto tally = [&](int a, int b) { hist[static_cast<std::size_t>(((a - b) % q + q) % q)] += 1; };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::fill(hist.begin(), hist.end(), Integer(0));
      tally(sim.naimark_exponent(i), sim.naimark_exponent(j));
      for (int r = 0; r < sim.dim(); ++r) tally(sim.exponent(r, i), sim.exponent(r, j));
      if (CycInt(q, hist) != (i == j ? target : zero)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

WelchBound welch_bound(long long m, long long n) {
  if (m < 1 || n <= m) throw ContractViolation("welch_bound: need N > M >= 1");
  WelchBound w;
  w.squared = Rational(n - m) / Rational(Integer(m) * (n - 1));
  w.value = std::sqrt(static_cast<double>(n - m) / (static_cast<double>(m) * static_cast<double>(n - 1)));
  return w;
}

FrameMatrix::FrameMatrix(int rows, int order, std::vector<Column> columns, FrameProvenance provenance)
    : rows_(rows), order_(order), provenance_(std::move(provenance)) {
  if (rows < 1 || order < 1) throw ContractViolation("FrameMatrix: rows and order must be positive");
  columns_.reserve(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Column kept;
    kept.reserve(columns[j].size());
    int last = -1;
    for (auto& e : columns[j]) {
      if (e.row <= last || e.row >= rows) {
        throw ContractViolation("FrameMatrix: column " + std::to_string(j) + " rows must increase within range");
      }
      if (e.value.order() != order) throw ContractViolation("FrameMatrix: entry order differs from frame order");
      last = e.row;
      if (!e.value.is_zero()) kept.push_back(std::move(e));
    }
    columns_.push_back(std::move(kept));
  }
}

ExtScalar FrameMatrix::entry(int i, int j) const {
  const Column& c = column(j);
  auto it = std::lower_bound(c.begin(), c.end(), i, [](const FrameEntry& e, int r) { return e.row < r; });
  if (it != c.end() && it->row == i) return it->value;
  return ExtScalar(order_);
}

std::string FrameMatrix::row_label(int i) const {
  const auto& p = provenance_;
  if (p.block_rows + p.point_rows + p.extra_rows == rows_) {
    if (i < p.block_rows) return "b" + std::to_string(i);
    if (i < p.block_rows + p.point_rows) return "v" + std::to_string(i - p.block_rows);
    return "x" + std::to_string(i - p.block_rows - p.point_rows);
  }
  return "r" + std::to_string(i);
}

bool operator==(const FrameMatrix& a, const FrameMatrix& b) {
  if (a.rows_ != b.rows_ || a.order_ != b.order_ || a.columns_.size() != b.columns_.size()) return false;
  for (std::size_t j = 0; j < a.columns_.size(); ++j) {
    const auto& x = a.columns_[j];
    const auto& y = b.columns_[j];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].row != y[i].row || x[i].value != y[i].value) return false;
    }
  }
  return true;
}

FrameMatrix steiner_etf(const SteinerTripleSystem& s, const EmbeddingAssignment& e, const UnimodularSimplex& sim) {
  const int v_count = s.points(), r_count = s.replication();
  if (e.points() != v_count || e.replication() != r_count) {
    throw ContractViolation("steiner_etf: embedding does not match the triple system");
  }
  if (sim.dim() != r_count) {
    throw ContractViolation("steiner_etf: simplex has " + std::to_string(sim.size()) + " vectors, need R+1 = " +
                            std::to_string(r_count + 1));
  }
  const int m = sim.root_order();
  std::vector<Column> cols;
  cols.reserve(static_cast<std::size_t>(v_count) * sim.size());
  for (int v = 0; v < v_count; ++v) {
    for (int t = 0; t < sim.size(); ++t) {
      Column c;
      for (int r = 0; r < r_count; ++r) c.push_back({static_cast<int>(e.block_at(v, r)), sim.entry(r, t, m)});
      std::sort(c.begin(), c.end(), [](const FrameEntry& a, const FrameEntry& b) { return a.row < b.row; });
      cols.push_back(std::move(c));
    }
  }
  FrameProvenance prov;
  prov.kind = "steiner";
  prov.points = v_count;
  prov.block_rows = static_cast<int>(s.block_count());
  prov.simplex_r = sim.source().label();
  prov.removed_row_r = sim.removed_row();
  return FrameMatrix(static_cast<int>(s.block_count()), m, std::move(cols), std::move(prov));
}

FrameMatrix tremain_etf(const SteinerTripleSystem& s, const EmbeddingAssignment& e, const UnimodularSimplex& sim_r,
                        const UnimodularSimplex& sim_v) {
  const int v_count = s.points(), r_count = s.replication();
  const int b_count = static_cast<int>(s.block_count());
  if (e.points() != v_count || e.replication() != r_count) {
    throw ContractViolation("tremain_etf: embedding does not match the triple system");
  }
  if (sim_r.dim() != r_count) {
    throw ContractViolation("tremain_etf: first simplex needs R+1 = " + std::to_string(r_count + 1) + " vectors");
  }
  if (sim_v.dim() != v_count) {
    throw ContractViolation("tremain_etf: second simplex needs V+1 = " + std::to_string(v_count + 1) + " vectors");
  }
  const int m = lcm_int(sim_r.root_order(), sim_v.root_order());
  const int qr = m / sim_r.root_order(), qv = m / sim_v.root_order();
  std::vector<Column> cols;
  cols.reserve(static_cast<std::size_t>(v_count) * sim_r.size() + sim_v.size());
  for (int v = 0; v < v_count; ++v) {
    for (int t = 0; t < sim_r.size(); ++t) {
      Column c;
      for (int r = 0; r < r_count; ++r) c.push_back({static_cast<int>(e.block_at(v, r)), sim_r.entry(r, t, m)});
      std::sort(c.begin(), c.end(), [](const FrameEntry& a, const FrameEntry& b) { return a.row < b.row; });
      c.push_back({b_count + v, ExtScalar::surd(m, Surd::Sqrt2, CycInt::zeta(m, 1LL * sim_r.naimark_exponent(t) * qr))});
      cols.push_back(std::move(c));
    }
  }
  for (int t = 0; t < sim_v.size(); ++t) {
    Column c;
    for (int v = 0; v < v_count; ++v) {
      c.push_back({b_count + v, ExtScalar::surd(m, Surd::Sqrt2, CycInt::zeta(m, 1LL * sim_v.exponent(v, t) * qv), 1)});
    }
    c.push_back(
        {b_count + v_count, ExtScalar::surd(m, Surd::Sqrt6, CycInt::zeta(m, 1LL * sim_v.naimark_exponent(t) * qv), 1)});
    cols.push_back(std::move(c));
  }
  FrameProvenance prov;
  prov.kind = "tremain";
  prov.points = v_count;
  prov.block_rows = b_count;
  prov.point_rows = v_count;
  prov.extra_rows = 1;
  prov.simplex_r = sim_r.source().label();
  prov.removed_row_r = sim_r.removed_row();
  prov.simplex_v = sim_v.source().label();
  prov.removed_row_v = sim_v.removed_row();
  if (e.parallel_first()) {
    ParallelClass cls;
    for (int v = 0; v < v_count; ++v) cls.push_back(e.block_at(v, 0));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    prov.parallel_class = std::move(cls);
  }
  return FrameMatrix(b_count + v_count + 1, m, std::move(cols), std::move(prov));
}

ExtScalar gram_entry(const FrameMatrix& f, int i, int j) {
  if (i < 0 || j < 0 || i >= f.cols() || j >= f.cols()) throw ContractViolation("gram_entry: index out of range");
  Column cj = f.column(j);
  for (auto& e : cj) e.value = e.value.conj();
  return sparse_dot(f.column(i), cj, f.order());
}

namespace {

void fill_welch(ETFReport& r) {
  if (r.n > r.m && r.m >= 1) r.welch = welch_bound(r.m, r.n);
}

ETFReport verify_exact(const FrameMatrix& f, unsigned threads) {
  ETFReport rep;
  rep.mode = VerifyMode::Exact;
  rep.m = f.rows();
  rep.n = f.cols();
  fill_welch(rep);
  const int n = f.cols(), m = f.order();
  const std::size_t workers = resolve_threads(threads);
  if (n == 0) {
    rep.message = "empty frame";
    return rep;
  }
  const ConjView conj_cols(f.columns(), m);

  std::vector<ExtScalar> norms(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), threads, [&](unsigned, std::size_t j) {
    norms[j] = sparse_dot(f.column(static_cast<int>(j)), conj_cols[j], m);
  });
  rep.equal_norms = true;
  for (int j = 1; j < n; ++j) {
    if (norms[static_cast<std::size_t>(j)] != norms[0]) {
      rep.equal_norms = false;
      rep.witness = Pair{j, j};
      rep.message = "column " + std::to_string(j) + " norm differs from column 0";
      break;
    }
  }
  rep.squared_norm = to_rational(norms[0]);

  rep.is_equiangular = true;
  if (n >= 2) {
    const ExtScalar g01 = sparse_dot(f.column(0), conj_cols[1], m);
    const ExtScalar ref = g01 * g01.conj();
    rep.squared_inner = to_rational(ref);
    std::vector<std::optional<Pair>> found(workers);
    parallel_for(static_cast<std::size_t>(n), threads, [&](unsigned w, std::size_t i) {
      if (found[w]) return;
      for (int j = static_cast<int>(i) + 1; j < n; ++j) {
        const ExtScalar g = sparse_dot(f.column(static_cast<int>(i)), conj_cols[static_cast<std::size_t>(j)], m);
        if (g * g.conj() != ref) {
          found[w] = Pair{static_cast<int>(i), j};
          return;
        }
      }
    });
    if (auto bad = earliest(found)) {
      rep.is_equiangular = false;
      if (!rep.witness) {
        rep.witness = bad;
        rep.message = "|<f_i, f_j>|^2 differs from |<f_0, f_1>|^2 at " + pair_text(*bad);
      }
    }
  }

  const auto rows = transposed(f);
  const ConjView conj_rows(rows, m);
  const ExtScalar target = ExtScalar::integer(m, n) * norms[0];
  const ExtScalar scale = ExtScalar::integer(m, f.rows());
  const ExtScalar zero(m);
  std::vector<std::optional<Pair>> found(workers);
  parallel_for(rows.size(), threads, [&](unsigned w, std::size_t r) {
    if (found[w]) return;
    for (std::size_t s = r; s < rows.size(); ++s) {
      const ExtScalar x = sparse_dot(rows[r], conj_rows[s], m);
      const bool ok = (r == s) ? (scale * x == target) : x.is_zero();
      if (!ok) {
        found[w] = Pair{static_cast<int>(r), static_cast<int>(s)};
        return;
      }
    }
  });
  rep.is_tight = true;
  if (auto bad = earliest(found)) {
    rep.is_tight = false;
    if (!rep.witness) {
      rep.witness = bad;
      rep.message = "frame operator is not a multiple of the identity at rows " + pair_text(*bad);
    }
  }
  if (rep.squared_norm) rep.tight_constant = Rational(n) * *rep.squared_norm / Rational(f.rows());

  if (rep.squared_norm && rep.squared_inner && *rep.squared_norm != 0) {
    rep.coherence_squared = *rep.squared_inner / (*rep.squared_norm * *rep.squared_norm);
    rep.coherence = std::sqrt(static_cast<double>(*rep.coherence_squared));
    rep.coherence_meets_welch = rep.n > rep.m && *rep.coherence_squared == rep.welch.squared;
  }
  rep.is_etf = rep.equal_norms && rep.is_equiangular && rep.is_tight &&
               (!rep.coherence_squared || rep.coherence_meets_welch);
  if (rep.message.empty()) {
    rep.message = rep.is_etf ? "equiangular tight frame" : "coherence differs from the Welch bound";
  }
  return rep;
}

ETFReport verify_float(const FrameMatrix& f, double tol, unsigned threads) {
  ETFReport rep;
  rep.mode = VerifyMode::Float;
  rep.m = f.rows();
  rep.n = f.cols();
  fill_welch(rep);
  const std::size_t mm = static_cast<std::size_t>(f.rows()), n = static_cast<std::size_t>(f.cols());
  const std::size_t workers = resolve_threads(threads);
  if (n == 0) {
    rep.message = "empty frame";
    return rep;
  }
  std::vector<double> cre(mm * n, 0.0), cim(mm * n, 0.0), rre(mm * n, 0.0), rim(mm * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& e : f.column(static_cast<int>(j))) {
      const auto z = e.value.to_complex();
      const std::size_t r = static_cast<std::size_t>(e.row);
      cre[j * mm + r] = z.real();
      cim[j * mm + r] = z.imag();
      rre[r * n + j] = z.real();
      rim[r * n + j] = z.imag();
    }
  }
  auto col = [&](const std::vector<double>& a, std::size_t j) { return std::span<const double>(a.data() + j * mm, mm); };
  auto row = [&](const std::vector<double>& a, std::size_t r) { return std::span<const double>(a.data() + r * n, n); };

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = kernels::complex_dot(col(cre, j), col(cim, j), col(cre, j), col(cim, j)).re;
  double residual = 0.0;
  rep.equal_norms = true;
  for (std::size_t j = 1; j < n; ++j) {
    const double d = std::abs(norms[j] - norms[0]);
    residual = std::max(residual, d);
    if (d > tol && rep.equal_norms) {
      rep.equal_norms = false;
      rep.witness = Pair{static_cast<int>(j), static_cast<int>(j)};
      rep.message = "column " + std::to_string(j) + " norm differs from column 0";
    }
  }

  struct Local {
    double residual = 0.0;
    double coherence = 0.0;
    std::optional<Pair> bad;
  };
  rep.is_equiangular = true;
  if (n >= 2) {
    const auto g01 = kernels::complex_dot(col(cre, 0), col(cim, 0), col(cre, 1), col(cim, 1));
    const double ref = g01.re * g01.re + g01.im * g01.im;
    std::vector<Local> local(workers);
    parallel_for(n, threads, [&](unsigned w, std::size_t i) {
      auto& L = local[w];
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto g = kernels::complex_dot(col(cre, i), col(cim, i), col(cre, j), col(cim, j));
        const double a2 = g.re * g.re + g.im * g.im;
        const double d = std::abs(a2 - ref);
        L.residual = std::max(L.residual, d);
        L.coherence = std::max(L.coherence, std::sqrt(a2 / (norms[i] * norms[j])));
        if (d > tol && !L.bad) L.bad = Pair{static_cast<int>(i), static_cast<int>(j)};
      }
    });
    std::vector<std::optional<Pair>> found;
    for (const auto& L : local) {
      residual = std::max(residual, L.residual);
      rep.coherence = std::max(rep.coherence, L.coherence);
      found.push_back(L.bad);
    }
    if (auto bad = earliest(found)) {
      rep.is_equiangular = false;
      if (!rep.witness) {
        rep.witness = bad;
        rep.message = "|<f_i, f_j>|^2 differs from |<f_0, f_1>|^2 at " + pair_text(*bad);
      }
    }
  }

  const double c = static_cast<double>(n) * norms[0] / static_cast<double>(mm);
  std::vector<Local> local(workers);
  parallel_for(mm, threads, [&](unsigned w, std::size_t r) {
    auto& L = local[w];
    for (std::size_t s = r; s < mm; ++s) {
      const auto x = kernels::complex_dot(row(rre, r), row(rim, r), row(rre, s), row(rim, s));
      const double d = (r == s) ? std::abs(x.re - c) + std::abs(x.im) : std::hypot(x.re, x.im);
      L.residual = std::max(L.residual, d);
      if (d > tol && !L.bad) L.bad = Pair{static_cast<int>(r), static_cast<int>(s)};
    }
  });
  std::vector<std::optional<Pair>> found;
  for (const auto& L : local) {
    residual = std::max(residual, L.residual);
    found.push_back(L.bad);
  }
  rep.is_tight = true;
  if (auto bad = earliest(found)) {
    rep.is_tight = false;
    if (!rep.witness) {
      rep.witness = bad;
      rep.message = "frame operator is not a multiple of the identity at rows " + pair_text(*bad);
    }
  }
  rep.max_residual = residual;
  rep.coherence_meets_welch = rep.n > rep.m && std::abs(rep.coherence - rep.welch.value) <= std::sqrt(tol);
  rep.is_etf = rep.equal_norms && rep.is_equiangular && rep.is_tight;
  if (rep.message.empty()) rep.message = rep.is_etf ? "equiangular tight frame" : "not an equiangular tight frame";
  return rep;
}

}  // namespace

ETFReport verify_etf(const FrameMatrix& f, VerifyMode mode, double tol, unsigned threads) {
  return mode == VerifyMode::Exact ? verify_exact(f, threads) : verify_float(f, tol, threads);
}

std::vector<std::uint8_t> gram_root_exponents(const FrameMatrix& f, int p, unsigned threads) {
  if (p < 2 || p > 255) throw ContractViolation("gram_root_exponents: p must lie in [2, 255]");
  const int n = f.cols(), m = f.order();
  const int big = lcm_int(m, p);
  std::vector<ExtScalar> roots;
  for (int e = 0; e < p; ++e) roots.push_back(ExtScalar::zeta(big, 1LL * e * (big / p)));
  const ConjView conj_cols(f.columns(), m);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::optional<Pair>> found(resolve_threads(threads));
  parallel_for(static_cast<std::size_t>(n), threads, [&](unsigned w, std::size_t i) {
    if (found[w]) return;
    for (int j = static_cast<int>(i) + 1; j < n; ++j) {
      const ExtScalar g = sparse_dot(f.column(static_cast<int>(i)), conj_cols[static_cast<std::size_t>(j)], m).promote(big);
      int hit = -1;
      if (g.denom_exp() == 0 && g.part(Surd::Sqrt2).is_zero() && g.part(Surd::Sqrt3).is_zero() &&
          g.part(Surd::Sqrt6).is_zero()) {
        for (int e = 0; e < p && hit < 0; ++e) {
          if (g == roots[static_cast<std::size_t>(e)]) hit = e;
        }
      }
      if (hit < 0) {
        found[w] = Pair{static_cast<int>(i), j};
        return;
      }
      out[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(hit);
      out[static_cast<std::size_t>(j) * n + i] = static_cast<std::uint8_t>((p - hit) % p);
    }
  });
  if (auto bad = earliest(found)) {
    throw CertificationError("Gram entry " + pair_text(*bad) + " is not a " + std::to_string(p) + "-th root of unity");
  }
  return out;
}

TremainParams tremain_params_complex(int v) {
  if (v < 3 || (v % 6 != 1 && v % 6 != 3)) {
    throw ContractViolation("tremain_params: V must be 1 or 3 mod 6 and at least 3, got " + std::to_string(v));
  }
  TremainParams p;
  p.v = v;
  p.r = (v - 1) / 2;
  p.b = 1LL * v * (v - 1) / 6;
  p.m = 1LL * (v + 2) * (v + 3) / 6;
  p.n = 1LL * (v + 1) * (v + 2) / 2;
  return p;
}

TremainParams tremain_params_real(int h) {
  if (h < 2 || h % 3 == 0) {
    throw ContractViolation("tremain_params: h must be 1 or 2 mod 3 and at least 2, got " + std::to_string(h));
  }
  TremainParams p = tremain_params_complex(2 * h - 1);
  p.m = 1LL * (h + 1) * (2 * h + 1) / 3;
  p.n = 1LL * h * (2 * h + 1);
  return p;
}

TremainBuild build_tremain(const TremainRecipe& recipe) {
  const TremainParams params = tremain_params_complex(recipe.v);
  const int n1 = params.r + 1, n2 = params.v + 1;
  SteinerTripleSystem sts = steiner_triple_system(params.v);
  std::optional<ParallelClass> cls;
  if (recipe.parallel_first) {
    cls = find_parallel_class(sts);
    if (!cls) throw ContractViolation("no parallel class exists for V = " + std::to_string(params.v));
  }
  EmbeddingAssignment emb = standard_embedding(sts, cls);

  auto builtin = [&](int n) -> ButsonMatrix {
    if (auto h = real_hadamard(n)) return *h;
    if (recipe.real) throw ContractViolation("no built-in real Hadamard matrix of order " + std::to_string(n));
    return fourier(n);
  };
  ButsonMatrix h1 = recipe.h1 ? *recipe.h1 : builtin(n1);
  if (h1.order() != n1) {
    throw ContractViolation("H1 must have order R+1 = " + std::to_string(n1) + ", got " + std::to_string(h1.order()));
  }
  h1 = normalize(h1);
  ButsonMatrix h2 = recipe.h2 ? *recipe.h2 : (recipe.real ? kronecker(sylvester(1), h1) : builtin(n2));
  if (h2.order() != n2) {
    throw ContractViolation("H2 must have order V+1 = " + std::to_string(n2) + ", got " + std::to_string(h2.order()));
  }
  h2 = normalize(h2);
  if (recipe.real && (h1.root_order() > 2 || h2.root_order() > 2)) {
    throw ContractViolation("real family needs real Hadamard matrices");
  }
  UnimodularSimplex sim_r = simplex_from_hadamard(h1, recipe.row_r.value_or(n1 - 1));
  UnimodularSimplex sim_v = simplex_from_hadamard(h2, recipe.row_v.value_or(0));
  FrameMatrix frame = tremain_etf(sts, emb, sim_r, sim_v);
  return TremainBuild{std::move(sts), std::move(emb), std::move(sim_r), std::move(sim_v), std::move(frame)};
}

std::string format_frame_exact(const FrameMatrix& f) {
  std::ostringstream os;
  os << f.rows() << ' ' << f.cols() << ' ' << f.order() << '\n';
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) {
      if (j) os << ' ';
      os << f.entry(i, j);
    }
    os << '\n';
  }
  return os.str();
}

std::string format_frame_csv(const FrameMatrix& f) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) {
      const auto z = f.entry(i, j).to_complex();
      if (j) os << ',';
      os << z.real() << ',' << z.imag();
    }
    os << '\n';
  }
  return os.str();
}

namespace {

CycInt parse_cycint(const std::string& text, int order) {
  const int deg = CyclotomicRing::get(order).degree();
  CycInt::Coeffs coeffs;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      coeffs.push_back(Integer(tok));
    } catch (const std::exception&) {
      throw ParseError("frame: bad coefficient '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(coeffs.size()) != deg) {
    throw ParseError("frame: expected " + std::to_string(deg) + " coefficients per part");
  }
  return CycInt(order, std::move(coeffs));
}

ExtScalar parse_tuple(const std::string& tok, int order) {
  if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')') throw ParseError("frame: bad entry '" + tok + "'");
  std::vector<std::string> fields;
  std::string inner = tok.substr(1, tok.size() - 2);
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = inner.find('|', start);
    fields.push_back(inner.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (fields.size() != 5) throw ParseError("frame: entry needs five '|'-separated fields: '" + tok + "'");
  std::array<CycInt, 4> parts;
  for (int i = 0; i < 4; ++i) parts[static_cast<std::size_t>(i)] = parse_cycint(fields[static_cast<std::size_t>(i)], order);
  int k = 0;
  try {
    k = std::stoi(fields[4]);
  } catch (const std::exception&) {
    throw ParseError("frame: bad denominator exponent in '" + tok + "'");
  }
  if (k < 0) throw ParseError("frame: negative denominator exponent");
  return ExtScalar(std::move(parts), k);
}

}  // namespace

FrameMatrix parse_frame_exact(const std::string& text) {
  std::istringstream in(text);
  long long rows = 0, cols = 0, order = 0;
  if (!(in >> rows >> cols >> order) || rows < 1 || cols < 0 || order < 1) {
    throw ParseError("frame: expected header 'M N m'");
  }
  std::vector<FrameMatrix::Column> columns(static_cast<std::size_t>(cols));
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      std::string tok;
      if (!(in >> tok)) throw ParseError("frame: truncated at row " + std::to_string(i));
      ExtScalar x = parse_tuple(tok, static_cast<int>(order));
      if (!x.is_zero()) columns[static_cast<std::size_t>(j)].push_back({static_cast<int>(i), std::move(x)});
    }
  }
  std::string extra;
  if (in >> extra) throw ParseError("frame: trailing data");
  return FrameMatrix(static_cast<int>(rows), static_cast<int>(order), std::move(columns));
}

void write_frame(const std::filesystem::path& path, const FrameMatrix& f) {
  detail::write_text_file(path, path.extension() == ".csv" ? format_frame_csv(f) : format_frame_exact(f));
}

FrameMatrix read_frame(const std::filesystem::path& path) {
  if (path.extension() == ".csv") throw ParseError("frame: CSV files are output-only");
  return parse_frame_exact(detail::read_text_file(path));
}

}  // namespace tremain
