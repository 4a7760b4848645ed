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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

class Sandbox {
 public:
  Sandbox() : dir_(fs::temp_directory_path() / ("tremain_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  const fs::path& dir() const { return dir_; }

  Run run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && TREMAIN_OUT_DIR='" + dir_.string() + "' '" TREMAIN_CLI "' " +
                            args + " > '" + out.string() + "' 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("exit codes") {
  Sandbox sb;
  CHECK(sb.run("make etf tremain --V 7").code == 0);
  CHECK(fs::exists(sb.dir() / "tremain_V7.frame"));
  CHECK(sb.run("make etf tremain --V 5").code == 1);
  CHECK(sb.run("make etf tremain --V 7 --no-such-flag").code == 1);
  CHECK(sb.run("derive drackn --h 5 --p 5").code == 1);
  sb.write("bad.txt", "2 2\n0 0\n0 0\n");
  CHECK(sb.run("make etf tremain --h 2 --real --hadamard-file bad.txt").code == 2);
  CHECK(sb.run("make etf tremain --h 2 --real --hadamard-file missing.txt").code == 3);
  sb.write("garbled.txt", "2 2\n0 x\n");
  CHECK(sb.run("make etf tremain --h 2 --real --hadamard-file garbled.txt").code == 3);
}

TEST_CASE("json reports") {
  Sandbox sb;
  const auto r = sb.run("--json make etf tremain --V 7");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["etf"]["M"] == 15);
  CHECK(j["etf"]["N"] == 36);
  CHECK(j["etf"]["coherence_squared"] == "1/25");
  CHECK(j["etf"]["tight_constant"] == "12");
  CHECK(j["exit_code"] == 0);

  const auto s = sb.run("--json make etf steiner --V 7");
  REQUIRE(s.code == 0);
  const auto js = nlohmann::json::parse(s.out);
  CHECK(js["etf"]["M"] == 7);
  CHECK(js["etf"]["N"] == 28);
  CHECK(js["etf"]["tight_constant"] == "12");

  const auto w = sb.run("--json derive srg waldron --h 2");
  REQUIRE(w.code == 0);
  const auto jw = nlohmann::json::parse(w.out);
  CHECK(jw["counted"]["v"] == 9);
  CHECK(jw["counted"]["mu"] == 2);

  const auto d = sb.run("--json derive drackn --h 2 --p 2");
  REQUIRE(d.code == 0);
  const auto jd = nlohmann::json::parse(d.out);
  CHECK(jd["counted"]["c"] == 4);
  CHECK(jd["n_minus_rc"] == 2);

  const auto t = sb.run("--json tables srg2 --max-vertices 200");
  REQUIRE(t.code == 0);
  const auto jt = nlohmann::json::parse(t.out);
  CHECK(!jt.empty());
}

TEST_CASE("outputs are byte-identical across runs") {
  Sandbox sb;
  for (const std::string args : {"make etf tremain --V 9 --out a.frame", "make etf tremain --h 4 --real --out a.csv",
                                 "derive srg gs --h 8 --out a.edges", "derive srg waldron --h 4 --out a.g6",
                                 "make hadamard --n 4 --q 2 --seed 5 --out a.txt", "make sts --V 15 --out a.sts"}) {
    CAPTURE(args);
    const auto first = sb.run(args);
    REQUIRE(first.code == 0);
    const std::string name = args.substr(args.rfind(' ') + 1);
    const auto a = Sandbox::slurp(sb.dir() / name);
    CHECK(!a.empty());
    const auto second = sb.run("--threads 3 " + args);
    REQUIRE(second.code == 0);
    CHECK(Sandbox::slurp(sb.dir() / name) == a);
    CHECK(second.out == first.out);
  }
}

TEST_CASE("tables") {
  Sandbox sb;
  const auto t = sb.run("tables srg1 --max-vertices 140");
  REQUIRE(t.code == 0);
  CHECK(t.out.find("135     70     37     35  certified") != std::string::npos);
  CHECK(t.out.find("formula-only") != std::string::npos);
  const auto d = sb.run("tables drackn --max-vertices 100");
  REQUIRE(d.code == 0);
  CHECK(d.out.find("certified") != std::string::npos);
}
