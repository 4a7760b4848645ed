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

#include "tremain/hadamard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "text_io.hpp"
#include "tremain/errors.hpp"

namespace tremain {

namespace {

int mod(long long a, int m) {
  const long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// Quadratic character of x mod prime q: 0, +1 or -1.
int legendre(long long x, int q) {
  x = mod(x, q);
  if (x == 0) return 0;
  long long r = 1, b = x, e = (q - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

int sign_exponent(int s) { return s > 0 ? 0 : 1; }

// Sum_c zeta_q^(e_ic - e_jc) as an element of Z[zeta_q].
CycInt row_inner_product(const ButsonMatrix& h, int i, int j) {
  const int q = h.root_order();
  CycInt::Coeffs hist(static_cast<std::size_t>(q));
  for (int c = 0; c < h.order(); ++c) hist[static_cast<std::size_t>(mod(h.exponent(i, c) - h.exponent(j, c), q))] += 1;
  return CycInt(q, std::move(hist));
}

}  // namespace

ButsonMatrix::ButsonMatrix(int n, int q, std::vector<int> exponents, std::string label)
    : n_(n), q_(q), e_(std::move(exponents)), label_(std::move(label)) {
  if (n < 1 || q < 1) throw ContractViolation("ButsonMatrix: order and root order must be positive");
  if (e_.size() != static_cast<std::size_t>(n) * n) throw ContractViolation("ButsonMatrix: need n*n exponents");
  for (auto& e : e_) e = mod(e, q);
}

ExtScalar ButsonMatrix::entry(int i, int j, int order) const {
  if (order % q_ != 0) throw ContractViolation("ButsonMatrix::entry: order must be a multiple of q");
  return ExtScalar::zeta(order, static_cast<std::int64_t>(exponent(i, j)) * (order / q_));
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

ButsonMatrix sylvester(int k) {
  if (k < 0) throw ContractViolation("sylvester: k must be non-negative");
  const int n = 1 << k;
  std::vector<int> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] = std::popcount(static_cast<unsigned>(i & j)) & 1;
  }
  return ButsonMatrix(n, 2, std::move(e), "sylvester(" + std::to_string(k) + ")");
}

ButsonMatrix paley(int q) {
  if (q < 3 || !is_prime(q)) throw ContractViolation("paley: q must be an odd prime, got " + std::to_string(q));
  if (q % 4 == 3) {
    // H = I + [[0, 1^T], [-1, Q]], Q_ij = chi(j - i)
    const int n = q + 1;
    std::vector<int> e(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        int s;
        if (i == j) {
          s = 1;
        } else if (i == 0) {
          s = 1;
        } else if (j == 0) {
          s = -1;
        } else {
          s = legendre((j - 1) - (i - 1), q);
        }
        e[static_cast<std::size_t>(i) * n + j] = sign_exponent(s);
      }
    }
    return ButsonMatrix(n, 2, std::move(e), "paley(" + std::to_string(q) + ")");
  }
  // H = C (x) [[1,1],[1,-1]] + I (x) [[1,-1],[-1,-1]], C = [[0, 1^T], [1, Q]]
  const int c = q + 1;
  const int n = 2 * c;
  auto conference = [q](int i, int j) {
    if (i == j) return 0;
    if (i == 0 || j == 0) return 1;
    return legendre((j - 1) - (i - 1), q);
  };
  std::vector<int> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      const int cij = conference(i, j);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          int s;
          if (cij == 0) {
            s = (a == 0 && b == 0) ? 1 : -1;
          } else {
            s = cij * ((a == 1 && b == 1) ? -1 : 1);
          }
          e[static_cast<std::size_t>(2 * i + a) * n + (2 * j + b)] = sign_exponent(s);
        }
      }
    }
  }
  return ButsonMatrix(n, 2, std::move(e), "paley(" + std::to_string(q) + ")");
}

ButsonMatrix fourier(int n) {
  if (n < 1) throw ContractViolation("fourier: n must be positive");
  std::vector<int> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] = static_cast<int>((1LL * i * j) % n);
  }
  return ButsonMatrix(n, n, std::move(e), "fourier(" + std::to_string(n) + ")");
}

ButsonMatrix kronecker(const ButsonMatrix& a, const ButsonMatrix& b) {
  const int q = std::lcm(a.root_order(), b.root_order());
  const int sa = q / a.root_order(), sb = q / b.root_order();
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<int> e(static_cast<std::size_t>(n) * n);
  for (int i1 = 0; i1 < na; ++i1) {
    for (int j1 = 0; j1 < na; ++j1) {
      const int ea = a.exponent(i1, j1) * sa;
      for (int i2 = 0; i2 < nb; ++i2) {
        for (int j2 = 0; j2 < nb; ++j2) {
          e[static_cast<std::size_t>(i1 * nb + i2) * n + (j1 * nb + j2)] = (ea + b.exponent(i2, j2) * sb) % q;
        }
      }
    }
  }
  return ButsonMatrix(n, q, std::move(e), a.label() + "x" + b.label());
}

ButsonMatrix normalize(const ButsonMatrix& h) {
  const int n = h.order(), q = h.root_order();
  std::vector<int> e = h.exponents();
  for (int j = 0; j < n; ++j) {
    const int c = e[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + j] = mod(e[static_cast<std::size_t>(i) * n + j] - c, q);
  }
  for (int i = 0; i < n; ++i) {
    const int r = e[static_cast<std::size_t>(i) * n];
    for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] = mod(e[static_cast<std::size_t>(i) * n + j] - r, q);
  }
  return ButsonMatrix(n, q, std::move(e), h.label());
}

HadamardReport verify_hadamard(const ButsonMatrix& h) {
  HadamardReport r;
  const int n = h.order(), q = h.root_order();
  const CycInt zero(q);
  const CycInt diag = CycInt::integer(q, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const CycInt g = row_inner_product(h, i, j);
      const bool ok = (i == j) ? (g == diag) : (g == zero);
      if (!ok) {
        r.first_failure = std::make_pair(i, j);
        r.message = "(H H^*)[" + std::to_string(i) + "][" + std::to_string(j) + "] != " + (i == j ? std::to_string(n) : "0");
        return r;
      }
    }
  }
  r.valid = true;
  r.message = "ok";
  return r;
}

std::optional<ButsonMatrix> real_hadamard(int n) {
  if (n < 1) return std::nullopt;
  if (std::has_single_bit(static_cast<unsigned>(n))) return sylvester(std::countr_zero(static_cast<unsigned>(n)));
  if (n % 4 != 0) return std::nullopt;
  if (is_prime(n - 1) && (n - 1) % 4 == 3) return paley(n - 1);
  if (const int q = n / 2 - 1; is_prime(q) && q % 4 == 1) return paley(q);
  if (auto half = real_hadamard(n / 2)) return kronecker(sylvester(1), *half);
  return std::nullopt;
}

std::optional<ButsonMatrix> builtin_butson(int n, int p) {
  if (p == 2) return real_hadamard(n);
  if (n == 1) return ButsonMatrix(1, p, {0}, "trivial");
  if (p < 2) return std::nullopt;
  int m = n;
  int k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) return std::nullopt;
  ButsonMatrix h = fourier(p);
  for (int i = 1; i < k; ++i) h = kronecker(h, fourier(p));
  return h;
}

std::string format_butson(const ButsonMatrix& h) {
  std::ostringstream os;
  os << h.order() << ' ' << h.root_order() << '\n';
  for (int i = 0; i < h.order(); ++i) {
    for (int j = 0; j < h.order(); ++j) os << (j ? " " : "") << h.exponent(i, j);
    os << '\n';
  }
  return os.str();
}

ButsonMatrix parse_butson(const std::string& text, const std::string& label) {
  std::istringstream in(text);
  long long n = 0, q = 0;
  if (!(in >> n >> q) || n < 1 || q < 1) throw ParseError("Butson: expected header 'n q' with positive values");
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(n * n));
  for (long long i = 0; i < n * n; ++i) {
    long long x = 0;
    if (!(in >> x)) throw ParseError("Butson: expected " + std::to_string(n * n) + " exponents, got " + std::to_string(i));
    if (x < 0 || x >= q) {
      throw ParseError("Butson: exponent " + std::to_string(x) + " outside [0, " + std::to_string(q) + ")");
    }
    e.push_back(static_cast<int>(x));
  }
  std::string extra;
  if (in >> extra) throw ParseError("Butson: trailing data");
  ButsonMatrix h(static_cast<int>(n), static_cast<int>(q), std::move(e), label);
  const auto rep = verify_hadamard(h);
  if (!rep.valid) throw CertificationError("Butson: not a Hadamard matrix: " + rep.message);
  return h;
}

void store_butson(const std::filesystem::path& path, const ButsonMatrix& h) {
  detail::write_text_file(path, format_butson(h));
}

ButsonMatrix load_butson(const std::filesystem::path& path) {
  return parse_butson(detail::read_text_file(path), path.filename().string());
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Single-entry local search over normalized matrices (first row and column
// fixed to exponent 0).
class ButsonSearch {
 public:
  ButsonSearch(int n, int q, std::uint64_t seed) : n_(n), q_(q), rng_(seed), e_(static_cast<std::size_t>(n) * n, 0) {
    for (int d = 0; d < q; ++d) {
      const double a = 2.0 * std::numbers::pi * d / q;
      roots_.emplace_back(std::cos(a), std::sin(a));
    }
    hist_.assign(static_cast<std::size_t>(n) * n * q, 0);
    gram_.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
    nonzero_.assign(static_cast<std::size_t>(n) * n, 1);
  }

  std::optional<ButsonMatrix> run(std::uint64_t moves) {
    if (n_ == 1) return ButsonMatrix(1, q_, {0}, "search");
    const std::uint64_t restart_after = 100ULL * (n_ - 1) * (n_ - 1) * (q_ - 1);
    randomize();
    std::uint64_t since_best = 0;
    long best_count = count_;
    std::uniform_int_distribution<int> pick(1, n_ - 1);
    std::uniform_int_distribution<int> pick_exp(1, q_ - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::uint64_t it = 0; it < moves && count_ != 0; ++it) {
      const int i = pick(rng_), c = pick(rng_);
      const int old = at(i, c);
      auto [dcount, denergy] = apply(i, c, (old + pick_exp(rng_)) % q_);
      const double cost = static_cast<double>(dcount) + kEnergyWeight * denergy;
      const bool accept = dcount < 0 || cost <= 1e-9 || unif(rng_) < std::exp(-cost / kTemperature);
      if (!accept) apply(i, c, old);
      if (count_ < best_count) {
        best_count = count_;
        since_best = 0;
      } else if (++since_best > restart_after) {
        randomize();
        best_count = count_;
        since_best = 0;
      }
    }
    if (count_ != 0) return std::nullopt;
    ButsonMatrix h(n_, q_, e_, "search");
    if (!verify_hadamard(h).valid) return std::nullopt;
    return h;
  }

 private:
  int n_, q_;
  std::mt19937_64 rng_;
  std::vector<int> e_;
  std::vector<std::complex<double>> roots_;
  std::vector<int> hist_;                    // [i][j][d], i < j
  std::vector<std::complex<double>> gram_;  // [i][j], i < j
  std::vector<char> nonzero_;               // exact zero test of gram_[i][j]
  long count_ = 0;
  static constexpr double kTemperature = 1.0;
  static constexpr double kEnergyWeight = 1.0;

  int& at(int i, int c) { return e_[static_cast<std::size_t>(i) * n_ + c]; }
  int* hist(int i, int j) { return &hist_[(static_cast<std::size_t>(i) * n_ + j) * q_]; }

  bool exact_nonzero(int i, int j) {
    const int* h = hist(i, j);
    CycInt::Coeffs coeffs(h, h + q_);
    return !CycInt(q_, std::move(coeffs)).is_zero();
  }

  void randomize() {
    std::uniform_int_distribution<int> pick_exp(0, q_ - 1);
    for (int i = 1; i < n_; ++i) {
      for (int c = 1; c < n_; ++c) at(i, c) = pick_exp(rng_);
    }
    count_ = 0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        int* h = hist(i, j);
        std::fill(h, h + q_, 0);
        std::complex<double> g(0.0, 0.0);
        for (int c = 0; c < n_; ++c) {
          const int d = mod(at(i, c) - at(j, c), q_);
          ++h[d];
          g += roots_[static_cast<std::size_t>(d)];
        }
        gram_[static_cast<std::size_t>(i) * n_ + j] = g;
        const bool nz = exact_nonzero(i, j);
        nonzero_[static_cast<std::size_t>(i) * n_ + j] = nz;
        count_ += nz;
      }
    }
  }

  // Sets entry (i, c) and updates every affected pair; returns the change in
  // (count, energy).
  std::pair<long, double> apply(int i, int c, int value) {
    const int old = at(i, c);
    if (old == value) return {0, 0.0};
    at(i, c) = value;
    long dcount = 0;
    double denergy = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (j == i) continue;
      const int a = std::min(i, j), b = std::max(i, j);
      const int other = at(j, c);
      const int d_old = (a == i) ? mod(old - other, q_) : mod(other - old, q_);
      const int d_new = (a == i) ? mod(value - other, q_) : mod(other - value, q_);
      int* h = hist(a, b);
      --h[d_old];
      ++h[d_new];
      auto& g = gram_[static_cast<std::size_t>(a) * n_ + b];
      const double before = std::norm(g);
      g += roots_[static_cast<std::size_t>(d_new)] - roots_[static_cast<std::size_t>(d_old)];
      denergy += std::norm(g) - before;
      auto& nz = nonzero_[static_cast<std::size_t>(a) * n_ + b];
      const char now = std::norm(g) > 0.25 ? 1 : exact_nonzero(a, b);
      dcount += static_cast<long>(now) - static_cast<long>(nz);
      nz = now;
    }
    count_ += dcount;
    return {dcount, denergy};
  }
};

}  // namespace

std::optional<ButsonMatrix> search_butson(int n, int q, const ButsonSearchOptions& opts) {
  if (n < 1 || q < 2) throw ContractViolation("search_butson: need n >= 1 and q >= 2");
  const unsigned workers = std::max(1u, opts.workers);
  const std::uint64_t per_worker = opts.budget / workers;
  std::vector<std::optional<ButsonMatrix>> results(workers);
  auto run_worker = [&](unsigned w) {
    ButsonSearch search(n, q, splitmix64(opts.seed ^ (0x5bd1e995ULL * (w + 1))));
    results[w] = search.run(per_worker);
  };
  if (opts.parallel && workers > 1) {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
    for (auto& t : pool) t.join();
  } else {
    for (unsigned w = 0; w < workers; ++w) {
      run_worker(w);
      if (results[w]) break;
    }
  }
  for (auto& r : results) {
    if (r) return r;
  }
  return std::nullopt;
}

namespace {

class RowBacktrack {
 public:
  RowBacktrack(int n, int q, std::uint64_t budget) : n_(n), q_(q), budget_(budget) {
    for (int d = 0; d < q; ++d) {
      const double a = 2.0 * std::numbers::pi * d / q;
      roots_.emplace_back(std::cos(a), std::sin(a));
    }
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::vector<int> zero(static_cast<std::size_t>(n), 0);
    while (true) {
      if (orthogonal(x.data(), zero.data())) rows_.insert(rows_.end(), x.begin(), x.end());
      int c = n - 1;
      while (c >= 1 && x[static_cast<std::size_t>(c)] == q - 1) x[static_cast<std::size_t>(c--)] = 0;
      if (c < 1) break;
      ++x[static_cast<std::size_t>(c)];
    }
  }

  std::optional<ButsonMatrix> run() {
    if (n_ == 1) return ButsonMatrix(1, q_, {0}, "backtrack");
    const std::size_t count = rows_.size() / static_cast<std::size_t>(n_);
    std::vector<std::size_t> all(count);
    for (std::size_t i = 0; i < count; ++i) all[i] = i;
    for (std::size_t first = 0; first < count; ++first) {
      const int* r = row(first);
      if (!std::is_sorted(r, r + n_)) continue;
      std::vector<std::size_t> rest;
      for (std::size_t c : all) {
        if (c != first && test(first, c)) rest.push_back(c);
      }
      chosen_ = {first};
      if (extend(rest)) return build();
      if (exhausted_) return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  int n_, q_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
  std::vector<std::complex<double>> roots_;
  std::vector<int> rows_;
  std::vector<std::size_t> chosen_;

  const int* row(std::size_t i) const { return rows_.data() + i * static_cast<std::size_t>(n_); }

  bool orthogonal(const int* a, const int* b) const {
    std::complex<double> g(0.0, 0.0);
    for (int c = 0; c < n_; ++c) g += roots_[static_cast<std::size_t>(mod(a[c] - b[c], q_))];
    if (std::norm(g) > 0.25) return false;
    CycInt::Coeffs hist(static_cast<std::size_t>(q_), Integer(0));
    for (int c = 0; c < n_; ++c) ++hist[static_cast<std::size_t>(mod(a[c] - b[c], q_))];
    return CycInt(q_, std::move(hist)).is_zero();
  }

  bool test(std::size_t a, std::size_t b) {
    if (++used_ > budget_) exhausted_ = true;
    return orthogonal(row(a), row(b));
  }

  // Candidates are orthogonal to every chosen row and sorted ascending.
  bool extend(const std::vector<std::size_t>& candidates) {
    if (static_cast<int>(chosen_.size()) == n_ - 1) return true;
    const std::size_t need = static_cast<std::size_t>(n_ - 1) - chosen_.size();
    for (std::size_t k = 0; k < candidates.size() && candidates.size() - k >= need; ++k) {
      if (exhausted_) return false;
      const std::size_t c = candidates[k];
      std::vector<std::size_t> next;
      for (std::size_t t = k + 1; t < candidates.size(); ++t) {
        if (test(c, candidates[t])) next.push_back(candidates[t]);
      }
      if (next.size() + 1 < need) continue;
      chosen_.push_back(c);
      if (extend(next)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  ButsonMatrix build() const {
    std::vector<int> e(static_cast<std::size_t>(n_), 0);
    for (std::size_t i : chosen_) e.insert(e.end(), row(i), row(i) + n_);
    return ButsonMatrix(n_, q_, std::move(e), "backtrack");
  }
};

}  // namespace

std::optional<ButsonMatrix> backtrack_butson(int n, int q, std::uint64_t node_budget) {
  if (n < 1 || q < 2) throw ContractViolation("backtrack_butson: need n >= 1 and q >= 2");
  double space = 1.0;
  for (int i = 1; i < n; ++i) space *= q;
  if (space > static_cast<double>(1 << 25)) {
    throw ContractViolation("backtrack_butson: q^(n-1) is too large for exhaustive search");
  }
  RowBacktrack search(n, q, node_budget);
  auto h = search.run();
  if (h && !verify_hadamard(*h).valid) return std::nullopt;
  return h;
}

}  // namespace tremain
