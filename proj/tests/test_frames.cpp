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


#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numeric>

#include "tremain/errors.hpp"
#include "tremain/frames.hpp"

using namespace tremain;

namespace {

// Dense Gram entry straight from entry(r, c), without the sparse columns.
ExtScalar dense_gram(const FrameMatrix& f, int i, int j) {
  ExtScalar s(f.order());
  for (int r = 0; r < f.rows(); ++r) s += f.entry(r, i) * f.entry(r, j).conj();
  return s;
}

ExtScalar unit(int order) { return ExtScalar::integer(order, 1); }

std::vector<ButsonMatrix> hadamards_up_to_40() {
  std::vector<ButsonMatrix> out;
  for (int n = 1; n <= 40; ++n) {
    if (auto h = real_hadamard(n)) out.push_back(*h);
    out.push_back(fourier(n));
  }
  for (int p : {3, 5, 7}) out.push_back(paley(p));
  out.push_back(kronecker(fourier(3), sylvester(2)));
  out.push_back(kronecker(fourier(5), fourier(2)));
  out.push_back(load_butson(TREMAIN_TEST_DATA "/h5_10.txt"));
  return out;
}

}  // namespace

TEST_CASE("smallest simplex") {
  const auto sim = simplex_from_hadamard(sylvester(1), 0);
  CHECK(sim.size() == 2);
  CHECK(sim.dim() == 1);
  CHECK(sim.entry(0, 0, 2) == unit(2));
  CHECK(sim.entry(0, 1, 2) == -unit(2));
  CHECK(sim.naimark(0, 2) == unit(2));
  CHECK(sim.naimark(1, 2) == unit(2));
}

TEST_CASE("fourier(5) simplex satisfies the Naimark identity by direct summation") {
  const auto sim = simplex_from_hadamard(fourier(5), 0);
  CHECK(sim.dim() == 4);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      ExtScalar g(5);
      for (int r = 0; r < 4; ++r) g += sim.entry(r, i, 5) * sim.entry(r, j, 5).conj();
      CHECK(g + sim.naimark(i, 5) * sim.naimark(j, 5).conj() == ExtScalar::integer(5, i == j ? 5 : 0));
      if (i != j) CHECK(g == -ExtScalar::integer(5, 1));
    }
  }
}

TEST_CASE("simplex preconditions") {
  CHECK_THROWS_AS(simplex_from_hadamard(sylvester(2), 4), ContractViolation);
  CHECK_THROWS_AS(simplex_from_hadamard(sylvester(2), -1), ContractViolation);
  CHECK_THROWS_AS(simplex_from_hadamard(ButsonMatrix(2, 2, {0, 0, 0, 0}), 0), CertificationError);
}

TEST_CASE("Naimark identity for every row of every built matrix up to order 40") {
  for (const auto& h : hadamards_up_to_40()) {
    CAPTURE(h.order());
    CAPTURE(h.root_order());
    for (int row = 0; row < h.order(); ++row) {
      if (h.order() == 1) break;
      CHECK(!naimark_violation(simplex_from_hadamard(h, row)).has_value());
    }
  }
}

TEST_CASE("welch bound") {
  CHECK(welch_bound(15, 36).squared == Rational(1, 25));
  CHECK(welch_bound(15, 36).value == doctest::Approx(0.2));
  CHECK(welch_bound(7, 28).squared == Rational(1, 9));
  CHECK(welch_bound(5, 10).squared == Rational(1, 9));
  CHECK(welch_bound(5, 10).value == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(welch_bound(5, 5), ContractViolation);
  CHECK_THROWS_AS(welch_bound(0, 5), ContractViolation);
}

TEST_CASE("welch bound of every complex Tremain instance is 1/(R+2)") {
  for (int v = 3; v <= 63; ++v) {
    if (v % 6 != 1 && v % 6 != 3) continue;
    const auto p = tremain_params_complex(v);
    CHECK(welch_bound(p.m, p.n).squared == Rational(1, (p.r + 2) * (p.r + 2)));
  }
}

TEST_CASE("tremain parameters") {
  const auto c7 = tremain_params_complex(7);
  CHECK(c7.m == 15);
  CHECK(c7.n == 36);
  CHECK(c7.r == 3);
  CHECK(c7.b == 7);
  const auto r8 = tremain_params_real(8);
  CHECK(r8.m == 51);
  CHECK(r8.n == 136);
  const auto r28 = tremain_params_real(28);
  CHECK(r28.m == 551);
  CHECK(r28.n == 1596);
  CHECK(tremain_params_real(2).m == 5);
  CHECK(tremain_params_real(2).n == 10);
  CHECK_THROWS_AS(tremain_params_complex(5), ContractViolation);
  CHECK_THROWS_AS(tremain_params_real(3), ContractViolation);
  CHECK_THROWS_AS(tremain_params_real(1), ContractViolation);
}

TEST_CASE("steiner frame from the fano plane") {
  const auto s = skolem(7);
  const auto f = steiner_etf(s, standard_embedding(s), simplex_from_hadamard(sylvester(2), 3));
  CHECK(f.rows() == 7);
  CHECK(f.cols() == 28);
  const auto rep = verify_etf(f, VerifyMode::Exact);
  CHECK(rep.is_etf);
  CHECK(*rep.squared_norm == 3);
  CHECK(*rep.tight_constant == 12);
  CHECK(*rep.squared_inner == 1);
  CHECK(rep.coherence_meets_welch);
  for (int i = 0; i < f.cols(); ++i) {
    for (int j = i + 1; j < f.cols(); ++j) {
      const auto g = gram_entry(f, i, j);
      CHECK((g == unit(f.order()) || g == -unit(f.order())));
    }
  }
  CHECK_THROWS_AS(steiner_etf(s, standard_embedding(s), simplex_from_hadamard(sylvester(3), 0)),
                  ContractViolation);
}

TEST_CASE("degenerate steiner frame at V=3") {
  const auto s = bose(3);
  const auto f = steiner_etf(s, standard_embedding(s), simplex_from_hadamard(sylvester(1), 0));
  CHECK(f.rows() == 1);
  CHECK(f.cols() == 6);
  const auto rep = verify_etf(f, VerifyMode::Exact);
  CHECK(rep.is_tight);
  CHECK(rep.is_equiangular);
}

TEST_CASE("steiner frame from bose(9)") {
  const auto s = bose(9);
  const auto f = steiner_etf(s, standard_embedding(s), simplex_from_hadamard(fourier(5), 0));
  CHECK(f.rows() == 12);
  CHECK(f.cols() == 45);
  CHECK(verify_etf(f, VerifyMode::Exact).is_etf);
}

TEST_CASE("tremain frame at V=7") {
  const auto s = skolem(7);
  const auto f = tremain_etf(s, standard_embedding(s), simplex_from_hadamard(sylvester(2), 3),
                             simplex_from_hadamard(sylvester(3), 0));
  CHECK(f.rows() == 15);
  CHECK(f.cols() == 36);
  CHECK(f.is_real());
  const auto rep = verify_etf(f, VerifyMode::Exact);
  CHECK(rep.is_etf);
  CHECK(*rep.squared_norm == 5);
  CHECK(*rep.tight_constant == 12);
  CHECK(*rep.squared_inner == 1);
  CHECK(*rep.coherence_squared == Rational(1, 25));
  CHECK(rep.coherence == doctest::Approx(0.2));
  CHECK(f.row_label(0) == "b0");
  CHECK(f.row_label(7) == "v0");
  CHECK(f.row_label(14) == "x0");
}

TEST_CASE("real tremain frames") {
  const auto b2 = build_tremain({.v = 3, .real = true});
  CHECK(b2.frame.rows() == 5);
  CHECK(b2.frame.cols() == 10);
  CHECK(verify_etf(b2.frame, VerifyMode::Exact).is_etf);
  const auto b20 = build_tremain({.v = 39, .real = true});
  CHECK(b20.frame.rows() == 287);
  CHECK(b20.frame.cols() == 820);
  CHECK(b20.frame.is_real());
  CHECK_THROWS_AS(build_tremain({.v = 9, .real = true}), ContractViolation);
}

TEST_CASE("case formulas agree with an independent dense Gram") {
  for (int v : {3, 7, 9}) {
    CAPTURE(v);
    const auto b = build_tremain({.v = v});
    const auto& f = b.frame;
    const int m = f.order();
    const int r = b.sts.replication();
    const auto& e = b.embedding;
    auto col = [&](int p, int s) { return p * (r + 1) + s; };
    const int tcol0 = v * (r + 1);
    const auto& sr = b.simplex_r;
    const auto& sv = b.simplex_v;
    for (int p = 0; p < v; ++p) {
      for (int s = 0; s <= r; ++s) {
        CHECK(dense_gram(f, col(p, s), col(p, s)) == ExtScalar::integer(m, r + 2));
        for (int s2 = 0; s2 <= r; ++s2) {
          if (s2 != s) {
            CHECK(dense_gram(f, col(p, s), col(p, s2)) == sr.naimark(s, m) * sr.naimark(s2, m).conj());
          }
        }
        for (int q = 0; q < v; ++q) {
          if (q == p) continue;
          const auto sh = e.shared(p, q);
          for (int s2 = 0; s2 <= r; ++s2) {
            CHECK(dense_gram(f, col(p, s), col(q, s2)) ==
                  sr.entry(sh.position_in_first, s, m) * sr.entry(sh.position_in_second, s2, m).conj());
          }
        }
        for (int t = 0; t <= v; ++t) {
          CHECK(dense_gram(f, col(p, s), tcol0 + t) == sr.naimark(s, m) * sv.entry(p, t, m).conj());
        }
      }
    }
    for (int t = 0; t <= v; ++t) {
      CHECK(dense_gram(f, tcol0 + t, tcol0 + t) == ExtScalar::integer(m, r + 2));
      for (int t2 = 0; t2 <= v; ++t2) {
        if (t2 != t) CHECK(dense_gram(f, tcol0 + t, tcol0 + t2) == sv.naimark(t, m) * sv.naimark(t2, m).conj());
      }
    }
  }
}

TEST_CASE("exact and float verification agree") {
  for (int v : {3, 7, 9, 13, 15, 19}) {
    CAPTURE(v);
    const auto f = build_tremain({.v = v}).frame;
    const auto ex = verify_etf(f, VerifyMode::Exact, 1e-10, 1);
    const auto fl = verify_etf(f, VerifyMode::Float, 1e-10, 1);
    const auto fl3 = verify_etf(f, VerifyMode::Float, 1e-10, 3);
    CHECK(ex.is_etf);
    CHECK(fl.is_etf);
    CHECK(fl.max_residual < 1e-10);
    CHECK(fl3.max_residual == fl.max_residual);
    CHECK(ex.coherence_meets_welch);
    CHECK(*ex.coherence_squared == welch_bound(f.rows(), f.cols()).squared);
    CHECK(std::abs(fl.coherence - ex.welch.value) < 1e-10);
  }
  for (int v : {7, 15, 31}) {
    const auto f = build_tremain({.v = v, .real = true}).frame;
    CHECK(verify_etf(f, VerifyMode::Exact, 1e-10, 2).is_etf);
    CHECK(verify_etf(f, VerifyMode::Float).max_residual < 1e-10);
  }
}

TEST_CASE("a zeroed entry is caught with a witness") {
  const auto f = build_tremain({.v = 7}).frame;
  auto cols = f.columns();
  cols[5].erase(cols[5].begin());
  const FrameMatrix broken(f.rows(), f.order(), cols);
  for (auto mode : {VerifyMode::Exact, VerifyMode::Float}) {
    const auto rep = verify_etf(broken, mode);
    CHECK(!rep.is_etf);
    CHECK(!rep.is_equiangular);
    REQUIRE(rep.witness.has_value());
    CHECK((rep.witness->first == 5 || rep.witness->second == 5));
  }
}

TEST_CASE("root exponents of a real frame") {
  const auto f = build_tremain({.v = 3, .real = true}).frame;
  const auto e = gram_root_exponents(f, 2);
  REQUIRE(e.size() == 100);
  for (int i = 0; i < 10; ++i) {
    CHECK(e[static_cast<std::size_t>(i * 10 + i)] == 0);
    for (int j = 0; j < 10; ++j) {
      CHECK(e[static_cast<std::size_t>(i * 10 + j)] == e[static_cast<std::size_t>(j * 10 + i)]);
      if (i != j) CHECK((gram_entry(f, i, j) == unit(f.order())) == (e[static_cast<std::size_t>(i * 10 + j)] == 0));
    }
  }
  CHECK_THROWS_AS(gram_root_exponents(build_tremain({.v = 7}).frame, 3), CertificationError);
}

TEST_CASE("frame files") {
  const auto f = build_tremain({.v = 9}).frame;
  CHECK(parse_frame_exact(format_frame_exact(f)) == f);
  const auto dir = std::filesystem::temp_directory_path() / "tremain_test_frames";
  std::filesystem::create_directories(dir);
  write_frame(dir / "f.frame", f);
  CHECK(read_frame(dir / "f.frame") == f);
  write_frame(dir / "f.csv", f);
  CHECK(std::filesystem::file_size(dir / "f.csv") > 0);
  CHECK_THROWS_AS(read_frame(dir / "f.csv"), ParseError);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(parse_frame_exact("2 2 1\n(1|0|0|0|0)\n"), ParseError);
  CHECK_THROWS_AS(read_frame("/nonexistent/f.frame"), IoError);
}
