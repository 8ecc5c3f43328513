// Copyright 2026 The tetnear Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exercises the tetnear executable end to end via a shell. The binary path
// comes from the build system as TETNEAR_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "tetnear/io.hpp"
#include "tetnear/oracle.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  CmdResult result;
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string cli() { return std::string(TETNEAR_CLI_PATH); }

// Scratch directory shared by the whole binary run.
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("tetnear_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

const char* kTwoTetText =
    "5 2\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n0 1 2 3\n1 2 3 4\n";

fs::path two_tet_file() {
  static const fs::path path = write_file("two_tet.txt", kTwoTetText);
  return path;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("neighbors prints one report line") {
  const auto r = run_cmd(cli() + " neighbors -i " + two_tet_file().string() + " 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0: 1(F)\n");
}

TEST_CASE("neighbors of a chain-mesh element") {
  const auto path = write_file(
      "chain.txt",
      "10 3\n0 0 0\n1 0 0\n2 0 0\n3 0 0\n4 0 0\n5 0 0\n6 0 0\n7 0 0\n8 0 0\n9 0 0\n"
      "0 1 2 3\n3 4 5 6\n6 7 8 9\n");
  const auto r = run_cmd(cli() + " neighbors -i " + path.string() + " 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1: 0(V) 2(V)\n");
}

TEST_CASE("neighbors with an out-of-range id exits 3 and names the range") {
  const auto err_file = scratch_dir() / "stderr_range.txt";
  const auto r = run_cmd(cli() + " neighbors -i " + two_tet_file().string() +
                         " 99 2>" + err_file.string());
  CHECK(r.exit_code == 3);
  CHECK(r.out.empty());
  CHECK(slurp(err_file).find("[0, 2)") != std::string::npos);
}

TEST_CASE("neighbors-all streams the full report") {
  const auto r = run_cmd(cli() + " neighbors-all -i " + two_tet_file().string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0: 1(F)\n1: 0(F)\n");
}

TEST_CASE("neighbors-all of an element-free mesh prints nothing") {
  const auto path = write_file("pointcloud.txt", "2 0\n0 0 0\n1 1 1\n");
  const auto r = run_cmd(cli() + " neighbors-all -i " + path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("neighbors-all bytes do not depend on threads or strategy") {
  const auto gen = run_cmd(cli() + " gen --nodes 40 --elems 150 --seed 9 -o " +
                           (scratch_dir() / "random.txt").string());
  REQUIRE(gen.exit_code == 0);
  const std::string base = cli() + " neighbors-all -i " +
                           (scratch_dir() / "random.txt").string();
  const auto reference = run_cmd(base + " -t 1 -s serial");
  CHECK(reference.exit_code == 0);
  CHECK(!reference.out.empty());
  for (const char* variant : {" -t 2 -s countsort", " -t 8 -s countsort",
                              " -t 2 -s locked", " -t 8 -s locked"}) {
    const auto r = run_cmd(base + variant);
    CHECK(r.exit_code == 0);
    CHECK(r.out == reference.out);
  }
}

TEST_CASE("neighbors-all bytes equal an oracle-driven rendering") {
  const auto gen = run_cmd(cli() + " gen --nodes 30 --elems 100 --seed 17 -o " +
                           (scratch_dir() / "oracle_mesh.txt").string());
  REQUIRE(gen.exit_code == 0);
  const auto r = run_cmd(cli() + " neighbors-all -i " +
                         (scratch_dir() / "oracle_mesh.txt").string());
  CHECK(r.exit_code == 0);

  const auto mesh =
      tetnear::parse_native(slurp(scratch_dir() / "oracle_mesh.txt"));
  std::string expected;
  for (tetnear::ElemId e = 0; e < mesh.n_elem(); ++e) {
    tetnear::append_report_line(expected,
                                tetnear::oracle::brute_force_near_classified(mesh, e));
  }
  CHECK(r.out == expected);
}

TEST_CASE("--output writes the same bytes to a file") {
  const auto out_file = scratch_dir() / "report.txt";
  const auto r = run_cmd(cli() + " neighbors-all -i " + two_tet_file().string() +
                         " -o " + out_file.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out_file) == "0: 1(F)\n1: 0(F)\n");
}

TEST_CASE("malformed or missing input exits 2") {
  const auto bad = write_file("bad.txt", "4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 9\n");
  const auto err_file = scratch_dir() / "stderr_bad.txt";
  const auto r = run_cmd(cli() + " neighbors-all -i " + bad.string() + " 2>" +
                         err_file.string());
  CHECK(r.exit_code == 2);
  CHECK(slurp(err_file).find("error:") != std::string::npos);

  const auto missing = run_cmd(cli() + " stats -i /nonexistent/mesh.txt 2>/dev/null");
  CHECK(missing.exit_code == 2);

  const auto usage = run_cmd(cli() + " neighbors 2>/dev/null");
  CHECK(usage.exit_code == 2);

  const auto unknown = run_cmd(cli() + " frobnicate 2>/dev/null");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("--help exits 0") {
  CHECK(run_cmd(cli() + " --help >/dev/null 2>&1").exit_code == 0);
  CHECK(run_cmd(cli() + " neighbors --help >/dev/null 2>&1").exit_code == 0);
}

TEST_CASE("stats reports the hand-computed two-tet numbers") {
  const auto r = run_cmd(cli() + " stats -i " + two_tet_file().string() +
                         " 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("nodes: 5\n") != std::string::npos);
  CHECK(r.out.find("elements: 2\n") != std::string::npos);
  CHECK(r.out.find("incidence_entries: 8\n") != std::string::npos);
  CHECK(r.out.find("valence_min: 1\n") != std::string::npos);
  CHECK(r.out.find("valence_mean: 1.6\n") != std::string::npos);
  CHECK(r.out.find("valence_max: 2\n") != std::string::npos);
  CHECK(r.out.find("face_pairs: 1\n") != std::string::npos);
  CHECK(r.out.find("vertex_pairs: 0\n") != std::string::npos);
}

TEST_CASE("stats on a single-tet mesh") {
  const auto path = write_file("single.txt", "4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 3\n");
  const auto r = run_cmd(cli() + " stats -i " + path.string() + " 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("incidence_entries: 4\n") != std::string::npos);
  CHECK(r.out.find("valence_min: 1\n") != std::string::npos);
  CHECK(r.out.find("valence_max: 1\n") != std::string::npos);
  CHECK(r.out.find("vertex_pairs: 0\n") != std::string::npos);
  CHECK(r.out.find("edge_pairs: 0\n") != std::string::npos);
  CHECK(r.out.find("face_pairs: 0\n") != std::string::npos);
  CHECK(r.out.find("coincident_pairs: 0\n") != std::string::npos);
}

TEST_CASE("stats counts duplicated elements as coincident pairs") {
  const auto path = write_file("dup.txt", "4 2\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 3\n0 1 2 3\n");
  const auto r = run_cmd(cli() + " stats -i " + path.string() + " 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("coincident_pairs: 1\n") != std::string::npos);
}

TEST_CASE("degenerate elements need --permissive") {
  const auto path = write_file("degen.txt", "4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 1 2\n");
  CHECK(run_cmd(cli() + " stats -i " + path.string() + " 2>/dev/null").exit_code == 2);
  const auto r = run_cmd(cli() + " stats -i " + path.string() + " -p 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("incidence_entries: 3\n") != std::string::npos);
}

TEST_CASE("msh input by extension and by explicit format") {
  const std::string msh =
      "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
      "$Nodes\n5\n1 0 0 0\n2 1 0 0\n3 0 1 0\n4 0 0 1\n5 1 1 1\n$EndNodes\n"
      "$Elements\n3\n1 2 2 0 1 1 2 3\n2 4 2 0 1 1 2 3 4\n3 4 2 0 1 2 3 4 5\n$EndElements\n";
  const auto by_ext = write_file("mixed.msh", msh);
  const auto err_file = scratch_dir() / "stderr_msh.txt";
  auto r = run_cmd(cli() + " neighbors-all -i " + by_ext.string() + " 2>" +
                   err_file.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0: 1(F)\n1: 0(F)\n");
  CHECK(slurp(err_file).find("skipped 1 non-tetrahedral") != std::string::npos);

  const auto by_flag = write_file("mixed_msh.txt", msh);
  r = run_cmd(cli() + " neighbors-all -i " + by_flag.string() + " -f msh22 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0: 1(F)\n1: 0(F)\n");

  const auto bad_version = write_file("bad_version.msh",
                                      "$MeshFormat\n4.1 0 8\n$EndMeshFormat\n");
  CHECK(run_cmd(cli() + " stats -i " + bad_version.string() + " 2>/dev/null").exit_code == 2);
}

TEST_CASE("gen is deterministic and feeds back into stats") {
  const auto a = run_cmd(cli() + " gen --nodes 50 --elems 200 --max-valence 64 --seed 42");
  const auto b = run_cmd(cli() + " gen --nodes 50 --elems 200 --max-valence 64 --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const auto mesh_file = write_file("gen200.txt", a.out);
  const auto stats = run_cmd(cli() + " stats -i " + mesh_file.string() + " 2>/dev/null");
  CHECK(stats.exit_code == 0);
  CHECK(stats.out.find("nodes: 50\n") != std::string::npos);
  CHECK(stats.out.find("elements: 200\n") != std::string::npos);

  // Output must parse back to the identical mesh.
  const auto mesh = tetnear::parse_native(a.out);
  CHECK(tetnear::render_native(mesh) == a.out);
}

TEST_CASE("gen of the 4-node mesh produces the only possible element") {
  const auto r = run_cmd(cli() + " gen --nodes 4 --elems 1 --max-valence 8 --seed 7");
  CHECK(r.exit_code == 0);
  const auto mesh = tetnear::parse_native(r.out);
  REQUIRE(mesh.n_elem() == 1);
  auto el = mesh.element(0);
  std::sort(el.begin(), el.end());
  CHECK(el == tetnear::Element{0, 1, 2, 3});
}

TEST_CASE("gen exits 4 when the valence budget is infeasible") {
  const auto r = run_cmd(cli() + " gen --nodes 4 --elems 100 --max-valence 4 --seed 1 2>/dev/null");
  CHECK(r.exit_code == 4);
}

TEST_CASE("bench emits one CSV row per size and strategy") {
  auto r = run_cmd(cli() + " bench --sizes 500,1000 --repeats 2 --seed 5 -s countsort -t 1");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n_elem,strategy,threads,build_ms,query_all_ms");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",countsort,1,") != std::string::npos);
    // Timings are positive.
    const auto c3 = line.rfind(',');
    const auto c2 = line.rfind(',', c3 - 1);
    CHECK(std::stod(line.substr(c2 + 1, c3 - c2 - 1)) > 0.0);
    CHECK(std::stod(line.substr(c3 + 1)) > 0.0);
  }
  CHECK(rows == 2);

  // Default strategy set is all three.
  r = run_cmd(cli() + " bench --sizes 400 --repeats 1 --seed 5 -t 2");
  CHECK(r.exit_code == 0);
  rows = 0;
  std::istringstream lines2(r.out);
  std::getline(lines2, line);  // header
  while (std::getline(lines2, line)) ++rows;
  CHECK(rows == 3);

  CHECK(run_cmd(cli() + " bench --sizes 1000,500 2>/dev/null").exit_code == 2);
}

TEST_SUITE_END();
