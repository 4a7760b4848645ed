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


// tremain: build and certify Tremain ETFs and the graphs
// derived from them.
//
// Exit codes: 0 success, 1 bad configuration, 2 certification failure, 3 I/O
// or file-format error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tremain/designs.hpp"
#include "tremain/errors.hpp"
#include "tremain/frames.hpp"
#include "tremain/graphs.hpp"
#include "tremain/hadamard.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace tremain;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 1;
constexpr int kCertification = 2;
constexpr int kIo = 3;

struct Globals {
  bool json = false;
  unsigned threads = 0;
  std::uint64_t seed = 1;
};

struct Ingredients {
  std::optional<int> v;
  std::optional<int> h;
  bool real = false;
  std::vector<std::string> hadamard_files;
  std::optional<int> row_r;
  std::optional<int> row_v;
  bool parallel_class = false;
  std::string mode = "exact";
  double tol = 1e-10;
  std::string out;
  int p = 2;
};

struct Output {
  json report = json::object();
  std::ostringstream text;
};

fs::path output_path(const std::string& requested, const std::string& fallback) {
  if (!requested.empty()) return requested;
  const char* dir = std::getenv("TREMAIN_OUT_DIR");
  fs::path base = (dir && *dir) ? fs::path(dir) : fs::current_path();
  std::error_code ec;
  fs::create_directories(base, ec);
  if (ec) throw IoError("cannot create output directory " + base.string());
  return base / fallback;
}

std::string rational_text(const std::optional<Rational>& r) { return r ? r->str() : std::string("n/a"); }

json rational_json(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return r->str();
}

json pair_json(const std::optional<std::pair<int, int>>& p) {
  if (!p) return nullptr;
  return json::array({p->first, p->second});
}

json etf_json(const ETFReport& r) {
  json j;
  j["mode"] = r.mode == VerifyMode::Exact ? "exact" : "float";
  j["M"] = r.m;
  j["N"] = r.n;
  j["equal_norms"] = r.equal_norms;
  j["tight"] = r.is_tight;
  j["equiangular"] = r.is_equiangular;
  j["etf"] = r.is_etf;
  j["squared_norm"] = rational_json(r.squared_norm);
  j["squared_inner_product"] = rational_json(r.squared_inner);
  j["tight_constant"] = rational_json(r.tight_constant);
  j["coherence_squared"] = rational_json(r.coherence_squared);
  j["welch_squared"] = r.welch.squared.str();
  j["coherence_meets_welch"] = r.coherence_meets_welch;
  j["coherence"] = r.coherence;
  j["welch"] = r.welch.value;
  if (r.mode == VerifyMode::Float) j["max_residual"] = r.max_residual;
  j["witness"] = pair_json(r.witness);
  j["message"] = r.message;
  return j;
}

void etf_text(std::ostream& os, const ETFReport& r) {
  os << "frame " << r.m << " x " << r.n << " (" << (r.mode == VerifyMode::Exact ? "exact" : "float") << ")\n";
  if (r.mode == VerifyMode::Exact) {
    os << "  squared norm        " << rational_text(r.squared_norm) << "\n";
    os << "  |<f_i,f_j>|^2       " << rational_text(r.squared_inner) << "\n";
    os << "  tight constant      " << rational_text(r.tight_constant) << "\n";
    os << "  coherence^2         " << rational_text(r.coherence_squared) << "\n";
  } else {
    os << "  coherence           " << std::setprecision(12) << r.coherence << "\n";
    os << "  max residual        " << std::setprecision(3) << r.max_residual << "\n";
  }
  os << "  Welch bound^2       " << r.welch.squared.str() << "\n";
  os << "  tight " << (r.is_tight ? "yes" : "no") << ", equiangular " << (r.is_equiangular ? "yes" : "no")
     << ", ETF " << (r.is_etf ? "yes" : "no") << "\n";
  if (!r.is_etf) os << "  " << r.message << "\n";
}

json srg_json(const SRGParams& p) {
  json j;
  j["v"] = p.v;
  j["k"] = p.k;
  j["lambda"] = p.lambda;
  j["mu"] = p.mu ? json(*p.mu) : json(nullptr);
  return j;
}

VerifyMode parse_mode(const std::string& mode) {
  if (mode == "exact") return VerifyMode::Exact;
  if (mode == "float") return VerifyMode::Float;
  throw ContractViolation("--mode must be exact or float");
}

std::vector<ButsonMatrix> load_files(const std::vector<std::string>& files) {
  std::vector<ButsonMatrix> out;
  for (const auto& f : files) out.push_back(load_butson(f));
  return out;
}

// Each file goes to whichever slot has the matching order.
void assign_files(const std::vector<std::string>& files, int n1, int n2, std::optional<ButsonMatrix>& h1,
                  std::optional<ButsonMatrix>& h2) {
  for (auto& h : load_files(files)) {
    auto& slot = h.order() == n1 ? h1 : (h.order() == n2 ? h2 : h1);
    if (h.order() != n1 && h.order() != n2) {
      throw ContractViolation("Hadamard file of order " + std::to_string(h.order()) + " fits neither R+1 = " +
                              std::to_string(n1) + " nor V+1 = " + std::to_string(n2));
    }
    if (slot) throw ContractViolation("two Hadamard files of order " + std::to_string(h.order()));
    slot = std::move(h);
  }
}

int resolve_v(const Ingredients& in) {
  if (in.v && in.h) throw ContractViolation("give either --V or --h, not both");
  if (in.v) return *in.v;
  if (in.h) {
    tremain_params_real(*in.h);
    return 2 * *in.h - 1;
  }
  throw ContractViolation("one of --V or --h is required");
}

ETFReport certify(const FrameMatrix& f, VerifyMode mode, double tol, const Globals& g, Output& out) {
  ETFReport rep = verify_etf(f, mode, tol, g.threads);
  out.report["etf"] = etf_json(rep);
  etf_text(out.text, rep);
  return rep;
}

TremainRecipe real_recipe(int h, const Ingredients& in) {
  tremain_params_real(h);
  TremainRecipe rc;
  rc.v = 2 * h - 1;
  rc.real = true;
  assign_files(in.hadamard_files, h, 2 * h, rc.h1, rc.h2);
  rc.row_r = in.row_r;
  rc.row_v = in.row_v;
  return rc;
}

// ---- make ------------------------------------------------------------------

int cmd_make_sts(const Ingredients& in, const Globals&, Output& out) {
  if (!in.v) throw ContractViolation("--V is required");
  const auto s = steiner_triple_system(*in.v);
  const auto rep = verify_sts(s);
  const fs::path path = output_path(in.out, "sts_V" + std::to_string(*in.v) + ".txt");
  write_sts(path, s);
  out.report["V"] = rep.points;
  out.report["B"] = rep.blocks;
  out.report["R"] = rep.replication;
  out.report["valid"] = rep.valid;
  out.report["file"] = path.string();
  out.text << "STS V=" << rep.points << " B=" << rep.blocks << " R=" << rep.replication << " "
           << (rep.valid ? "valid" : "INVALID: " + rep.message) << "\n  wrote " << path.string() << "\n";
  if (in.parallel_class) {
    const auto cls = find_parallel_class(s);
    if (!cls) throw ContractViolation("no parallel class for V = " + std::to_string(*in.v));
    fs::path pc = path;
    pc.replace_extension(".parallel.txt");
    write_parallel_class(pc, *cls);
    out.report["parallel_class"] = *cls;
    out.report["parallel_class_file"] = pc.string();
    out.text << "  parallel class of " << cls->size() << " blocks, wrote " << pc.string() << "\n";
  }
  return rep.valid ? kOk : kCertification;
}

int cmd_make_hadamard(int n, int q, const std::string& search, std::uint64_t budget, unsigned workers,
                      const Ingredients& in, const Globals& g, Output& out) {
  std::optional<ButsonMatrix> h;
  if (search.empty()) {
    h = builtin_butson(n, q);
    if (!h) {
      throw ContractViolation("no built-in H(" + std::to_string(q) + "," + std::to_string(n) +
                              "); use --search or supply a file");
    }
  } else if (search == "local") {
    ButsonSearchOptions opts;
    opts.seed = g.seed;
    opts.budget = budget;
    opts.workers = workers;
    opts.parallel = g.threads != 1;
    h = search_butson(n, q, opts);
  } else if (search == "backtrack") {
    h = backtrack_butson(n, q, budget);
  } else {
    throw ContractViolation("--search must be local or backtrack");
  }
  out.report["n"] = n;
  out.report["q"] = q;
  if (!h) {
    out.report["found"] = false;
    out.text << "no H(" << q << "," << n << ") found within budget\n";
    return kCertification;
  }
  const auto rep = verify_hadamard(*h);
  const fs::path path = output_path(in.out, "hadamard_" + std::to_string(n) + "_" + std::to_string(q) + ".txt");
  store_butson(path, *h);
  out.report["found"] = true;
  out.report["construction"] = h->label();
  out.report["valid"] = rep.valid;
  out.report["file"] = path.string();
  out.text << "H(" << q << "," << n << ") from " << h->label() << ": " << (rep.valid ? "verified" : rep.message)
           << "\n  wrote " << path.string() << "\n";
  return rep.valid ? kOk : kCertification;
}

int cmd_make_steiner(const Ingredients& in, const Globals& g, Output& out) {
  if (!in.v) throw ContractViolation("--V is required");
  const auto s = steiner_triple_system(*in.v);
  const auto e = standard_embedding(s);
  const int n = s.replication() + 1;
  std::optional<ButsonMatrix> h, unused;
  assign_files(in.hadamard_files, n, n, h, unused);
  if (!h) h = real_hadamard(n) ? *real_hadamard(n) : fourier(n);
  const auto sim = simplex_from_hadamard(normalize(*h), in.row_r.value_or(n - 1));
  const auto f = steiner_etf(s, e, sim);
  out.report["kind"] = "steiner";
  out.report["V"] = *in.v;
  const auto rep = certify(f, parse_mode(in.mode), in.tol, g, out);
  const fs::path path = output_path(in.out, "steiner_V" + std::to_string(*in.v) + ".frame");
  write_frame(path, f);
  out.report["file"] = path.string();
  out.text << "  wrote " << path.string() << "\n";
  return rep.is_etf ? kOk : kCertification;
}

int cmd_make_tremain(const Ingredients& in, const Globals& g, Output& out) {
  TremainRecipe rc;
  rc.v = resolve_v(in);
  const auto params = tremain_params_complex(rc.v);
  rc.real = in.real;
  rc.parallel_first = in.parallel_class;
  rc.row_r = in.row_r;
  rc.row_v = in.row_v;
  assign_files(in.hadamard_files, params.r + 1, params.v + 1, rc.h1, rc.h2);
  const auto b = build_tremain(rc);
  out.report["kind"] = "tremain";
  out.report["V"] = rc.v;
  out.report["H1"] = b.simplex_r.source().label();
  out.report["H2"] = b.simplex_v.source().label();
  out.report["removed_rows"] = json::array({b.simplex_r.removed_row(), b.simplex_v.removed_row()});
  out.text << "Tremain frame V=" << rc.v << " from " << b.simplex_r.source().label() << " and "
           << b.simplex_v.source().label() << "\n";
  const auto rep = certify(b.frame, parse_mode(in.mode), in.tol, g, out);
  const fs::path path = output_path(in.out, "tremain_V" + std::to_string(rc.v) + ".frame");
  write_frame(path, b.frame);
  out.report["file"] = path.string();
  out.text << "  wrote " << path.string() << "\n";
  return rep.is_etf ? kOk : kCertification;
}

// ---- derive ----------------------------------------------------------------

GraphFormat format_for(const fs::path& p) { return p.extension() == ".g6" ? GraphFormat::Graph6 : GraphFormat::EdgeList; }

const FrameMatrix& certified_frame(const TremainBuild& b, const Globals& g, Output& out) {
  const ETFReport rep = verify_etf(b.frame, VerifyMode::Exact, 0.0, g.threads);
  out.report["etf"] = etf_json(rep);
  etf_text(out.text, rep);
  if (!rep.is_etf) throw CertificationError("input frame is not an equiangular tight frame: " + rep.message);
  return b.frame;
}

void srg_output(const SrgBuild& s, const std::string& name, const Ingredients& in, Output& out) {
  const auto& counted = *s.certificate.params;
  out.report["formula"] = srg_json(s.expected);
  out.report["counted"] = srg_json(counted);
  out.report["convention"] = convention_name(s.convention);
  out.report["feasibility_identity"] = counted.feasible();
  const fs::path path = output_path(in.out, name);
  export_graph(s.graph, format_for(path), path);
  out.report["file"] = path.string();
  out.text << "SRG counted " << to_string(counted) << ", formula " << to_string(s.expected) << ", convention "
           << convention_name(s.convention) << "\n  wrote " << path.string() << "\n";
}

int cmd_derive_waldron(const Ingredients& in, const Globals& g, Output& out) {
  if (!in.h) throw ContractViolation("--h is required");
  const auto b = build_tremain(real_recipe(*in.h, in));
  out.report["h"] = *in.h;
  const auto s = waldron_srg(certified_frame(b, g, out), g.threads);
  srg_output(s, "waldron_h" + std::to_string(*in.h) + ".edges", in, out);
  return s.certificate.params->feasible() ? kOk : kCertification;
}

int cmd_derive_gs(const Ingredients& in, const Globals& g, Output& out) {
  if (!in.h) throw ContractViolation("--h is required");
  auto rc = real_recipe(*in.h, in);
  rc.parallel_first = true;
  const auto b = build_tremain(rc);
  out.report["h"] = *in.h;
  const auto& f = certified_frame(b, g, out);
  const auto x = tremain_flat_functional(f);
  out.report["flat_functional"] = "all " + std::to_string(f.cols()) + " inner products equal 1";
  out.text << "flat functional: all " << f.cols() << " inner products equal 1\n";
  const auto s = gs_srg(f, x, g.threads);
  srg_output(s, "gs_h" + std::to_string(*in.h) + ".edges", in, out);
  return s.certificate.params->feasible() ? kOk : kCertification;
}

int cmd_derive_drackn(const Ingredients& in, const Globals& g, Output& out) {
  if (!in.h) throw ContractViolation("--h is required");
  const int h = *in.h, p = in.p;
  if (p < 2 || !is_prime(p)) throw ContractViolation("--p must be prime");
  tremain_params_real(h);
  TremainRecipe rc;
  rc.v = 2 * h - 1;
  rc.real = p == 2;
  assign_files(in.hadamard_files, h, 2 * h, rc.h1, rc.h2);
  for (auto [slot, n] : {std::pair{&rc.h1, h}, std::pair{&rc.h2, 2 * h}}) {
    if (!*slot) *slot = builtin_butson(n, p);
    if (!*slot) {
      throw ContractViolation("no built-in H(" + std::to_string(p) + "," + std::to_string(n) +
                              "); supply it with --hadamard-file");
    }
    if ((*slot)->root_order() != p && !(p == 2 && (*slot)->root_order() == 1)) {
      throw ContractViolation("Hadamard matrix of order " + std::to_string(n) + " is not an H(" + std::to_string(p) +
                              "," + std::to_string(n) + ")");
    }
  }
  rc.row_r = in.row_r.value_or(0);
  rc.row_v = in.row_v.value_or(0);
  const auto b = build_tremain(rc);
  out.report["h"] = h;
  out.report["p"] = p;
  const auto& f = certified_frame(b, g, out);
  const auto params = drackn_params(f.rows(), f.cols(), p);
  const auto cover = drackn_cover(f, p, g.threads);
  const auto& cert = cover.certificate;
  const long long gap = cert.n - 1LL * cert.r * cert.c.value_or(0);
  out.report["counted"] = {{"n", cert.n}, {"r", cert.r}, {"c", cert.c ? json(*cert.c) : json(nullptr)}};
  out.report["formula_c"] = params.c;
  out.report["closed_form_c"] = rational_json(params.closed_form);
  out.report["n_minus_rc"] = gap;
  const fs::path path = output_path(in.out, "drackn_h" + std::to_string(h) + "_p" + std::to_string(p) + ".edges");
  export_graph(cover.graph, format_for(path), path, &cover.fibers);
  out.report["file"] = path.string();
  out.text << "DRACKN counted (" << cert.n << "," << cert.r << "," << cert.c.value_or(-1) << "), formula c = "
           << params.c << ", n - r c = " << gap << "\n  wrote " << path.string() << "\n";
  if (cert.c != params.c) throw CertificationError("counted c differs from the formula value");
  if (gap != h) throw CertificationError("n - r c differs from h");
  return kOk;
}

// ---- tables ----------------------------------------------------------------

std::string cell(const std::optional<int>& x) { return x ? std::to_string(*x) : "-"; }

int cmd_tables(const std::string& which, int max_vertices, const Ingredients& in, const Globals& g, Output& out) {
  json rows = json::array();
  std::ostringstream& os = out.text;
  if (which == "srg1" || which == "srg2") {
    const bool gs = which == "srg2";
    const std::vector<int> hs = gs ? std::vector<int>{2, 8, 20, 32, 44, 56} : std::vector<int>{2, 4, 8, 16, 20, 28};
    os << std::setw(4) << "h" << std::setw(7) << "M" << std::setw(7) << "N" << std::setw(7) << "v" << std::setw(7)
       << "k" << std::setw(7) << "lambda" << std::setw(7) << "mu"
       << "  status\n";
    for (int h : hs) {
      const auto tp = tremain_params_real(h);
      SRGParams params = gs ? srg_params_gs(tp.m, tp.n) : srg_params_waldron(tp.m, tp.n);
      std::string status = "formula-only";
      std::string convention;
      if (params.v <= max_vertices) {
        TremainRecipe rc = real_recipe(h, Ingredients{});
        rc.parallel_first = gs;
        const auto b = build_tremain(rc);
        const auto rep = verify_etf(b.frame, VerifyMode::Exact, 0.0, g.threads);
        if (!rep.is_etf) throw CertificationError("h = " + std::to_string(h) + ": frame is not an ETF");
        const SrgBuild s = gs ? gs_srg(b.frame, tremain_flat_functional(b.frame), g.threads)
                              : waldron_srg(b.frame, g.threads);
        params = *s.certificate.params;
        status = "certified";
        convention = convention_name(s.convention);
      }
      os << std::setw(4) << h << std::setw(7) << tp.m << std::setw(7) << tp.n << std::setw(7) << params.v
         << std::setw(7) << params.k << std::setw(7) << params.lambda << std::setw(7) << cell(params.mu) << "  "
         << status << "\n";
      json row = {{"h", h}, {"M", tp.m}, {"N", tp.n}};
      row.update(srg_json(params));
      row["feasible"] = params.feasible();
      row["status"] = status;
      if (!convention.empty()) row["convention"] = convention;
      rows.push_back(row);
    }
  } else if (which == "drackn") {
    std::optional<ButsonMatrix> h5_10;
    for (auto& m : load_files(in.hadamard_files)) {
      if (m.order() == 10 && m.root_order() == 5) h5_10 = std::move(m);
    }
    struct Row {
      int h, p;
    };
    os << std::setw(4) << "h" << std::setw(4) << "p" << std::setw(7) << "n" << std::setw(4) << "r" << std::setw(7)
       << "c" << std::setw(8) << "n-rc"
       << "  status\n";
    for (const Row row : {Row{2, 2}, Row{4, 2}, Row{8, 2}, Row{16, 2}, Row{5, 5}}) {
      const auto tp = tremain_params_real(row.h);
      const auto params = drackn_params(tp.m, tp.n, row.p);
      int n = static_cast<int>(tp.n), r = row.p, c = params.c;
      std::string status = "formula-only";
      const bool have = row.p == 2 || h5_10.has_value();
      if (have && n * r <= max_vertices) {
        TremainRecipe rc;
        rc.v = 2 * row.h - 1;
        rc.real = row.p == 2;
        if (row.p != 2) {
          rc.h1 = builtin_butson(row.h, row.p);
          rc.h2 = h5_10;
        }
        rc.row_r = 0;
        rc.row_v = 0;
        const auto b = build_tremain(rc);
        const auto rep = verify_etf(b.frame, VerifyMode::Exact, 0.0, g.threads);
        if (!rep.is_etf) throw CertificationError("h = " + std::to_string(row.h) + ": frame is not an ETF");
        const auto cover = drackn_cover(b.frame, row.p, g.threads);
        n = cover.certificate.n;
        r = cover.certificate.r;
        c = cover.certificate.c.value_or(-1);
        if (c != params.c) throw CertificationError("counted c differs from the formula at h = " + std::to_string(row.h));
        status = "certified";
      }
      os << std::setw(4) << row.h << std::setw(4) << row.p << std::setw(7) << n << std::setw(4) << r << std::setw(7)
         << c << std::setw(8) << n - r * c << "  " << status << "\n";
      rows.push_back({{"h", row.h}, {"p", row.p}, {"n", n}, {"r", r}, {"c", c}, {"n_minus_rc", n - r * c},
                      {"status", status}});
    }
  } else {
    throw ContractViolation("unknown table '" + which + "' (srg1, srg2, drackn)");
  }
  out.report["table"] = which;
  out.report["rows"] = rows;
  return kOk;
}

void add_frame_options(CLI::App* cmd, Ingredients& in) {
  cmd->add_option("--hadamard-file", in.hadamard_files, "Butson matrix file; assigned by order");
  cmd->add_option("--row-r", in.row_r, "Row removed from the order R+1 matrix");
  cmd->add_option("--row-v", in.row_v, "Row removed from the order V+1 matrix");
  cmd->add_option("--mode", in.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--tol", in.tol, "Float-mode tolerance");
  cmd->add_option("--out", in.out, "Output file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and certify Tremain ETFs with their SRGs and DRACKNs"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Globals g;
  Ingredients in;
  app.add_flag("--json", g.json, "Emit the report as JSON");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--seed", g.seed, "Seed for randomized searches");

  std::function<int(Output&)> action;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* c = parent->add_subcommand(name, desc);
    c->fallthrough();
    return c;
  };

  auto* make = sub(&app, "make", "Construct an artifact");
  make->require_subcommand(1);
  auto* make_sts = sub(make, "sts", "Steiner triple system");
  make_sts->add_option("--V", in.v, "Number of points")->required();
  make_sts->add_flag("--parallel-class", in.parallel_class, "Also find and write a parallel class");
  make_sts->add_option("--out", in.out, "Output file");
  make_sts->callback([&] { action = [&](Output& o) { return cmd_make_sts(in, g, o); }; });

  int had_n = 0, had_q = 2;
  std::string search;
  std::uint64_t budget = 2'000'000;
  unsigned workers = 1;
  auto* make_had = sub(make, "hadamard", "Butson Hadamard matrix");
  make_had->add_option("--n", had_n, "Order")->required();
  make_had->add_option("--q", had_q, "Root order");
  make_had->add_option("--search", search, "local or backtrack")->check(CLI::IsMember({"local", "backtrack"}));
  make_had->add_option("--budget", budget, "Search budget (moves or orthogonality tests)");
  make_had->add_option("--workers", workers, "Independent local-search runs");
  make_had->add_option("--out", in.out, "Output file");
  make_had->callback([&] {
    action = [&](Output& o) { return cmd_make_hadamard(had_n, had_q, search, budget, workers, in, g, o); };
  });

  auto* make_etf = sub(make, "etf", "Equiangular tight frame");
  make_etf->require_subcommand(1);
  auto* steiner = sub(make_etf, "steiner", "Steiner ETF");
  steiner->add_option("--V", in.v, "Number of points")->required();
  add_frame_options(steiner, in);
  steiner->callback([&] { action = [&](Output& o) { return cmd_make_steiner(in, g, o); }; });
  auto* tremain_cmd = sub(make_etf, "tremain", "Tremain ETF");
  tremain_cmd->add_option("--V", in.v, "Number of points (1 or 3 mod 6)");
  tremain_cmd->add_option("--h", in.h, "Order of the smaller Hadamard matrix; V = 2h - 1");
  tremain_cmd->add_flag("--real", in.real, "Require real Hadamard ingredients");
  tremain_cmd->add_flag("--parallel-class", in.parallel_class, "Embed a parallel class first");
  add_frame_options(tremain_cmd, in);
  tremain_cmd->callback([&] { action = [&](Output& o) { return cmd_make_tremain(in, g, o); }; });

  auto* derive = sub(&app, "derive", "Derive a certified graph");
  derive->require_subcommand(1);
  auto* srg = sub(derive, "srg", "Strongly regular graph");
  srg->require_subcommand(1);
  auto* waldron = sub(srg, "waldron", "SRG on N-1 vertices from the switched sign pattern");
  auto* gs = sub(srg, "gs", "SRG on N vertices from a flat functional");
  auto* drackn = sub(derive, "drackn", "Distance-regular antipodal cover of K_N");
  for (auto* c : {waldron, gs, drackn}) {
    c->add_option("--h", in.h, "h = 1 or 2 mod 3")->required();
    c->add_option("--hadamard-file", in.hadamard_files, "Butson matrix file; assigned by order")
        ;
    c->add_option("--row-r", in.row_r, "Row removed from the order h matrix");
    c->add_option("--row-v", in.row_v, "Row removed from the order 2h matrix");
    c->add_option("--out", in.out, "Graph file (.g6 for graph6, otherwise edge list)");
  }
  drackn->add_option("--p", in.p, "Prime root order");
  waldron->callback([&] { action = [&](Output& o) { return cmd_derive_waldron(in, g, o); }; });
  gs->callback([&] { action = [&](Output& o) { return cmd_derive_gs(in, g, o); }; });
  drackn->callback([&] { action = [&](Output& o) { return cmd_derive_drackn(in, g, o); }; });

  std::string which;
  int max_vertices = 2100;
  auto* tables = sub(&app, "tables", "Recompute the parameter tables");
  tables->add_option("which", which, "srg1, srg2 or drackn")->required()->check(CLI::IsMember({"srg1", "srg2", "drackn"}));
  tables->add_option("--max-vertices", max_vertices, "Certify rows whose graph has at most this many vertices");
  tables->add_option("--hadamard-file", in.hadamard_files, "Extra Butson matrices (an H(5,10) enables the p = 5 row)")
      ;
  tables->callback([&] { action = [&](Output& o) { return cmd_tables(which, max_vertices, in, g, o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }

  Output out;
  int code = kOk;
  std::string error;
  try {
    code = action(out);
  } catch (const ContractViolation& e) {
    code = kConfig;
    error = e.what();
  } catch (const CertificationError& e) {
    code = kCertification;
    error = e.what();
  } catch (const ParseError& e) {
    code = kIo;
    error = e.what();
  } catch (const IoError& e) {
    code = kIo;
    error = e.what();
  }
  if (!error.empty()) out.report["error"] = error;
  out.report["exit_code"] = code;
  if (g.json) {
    std::cout << out.report.dump(2) << "\n";
  } else {
    std::cout << out.text.str();
    if (!error.empty()) std::cerr << "error: " << error << "\n";
  }
  return code;
}
