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

// tetnear command-line tool.
//
// Subcommands: neighbors, neighbors-all, stats, bench, gen.
// Exit codes: 0 success, 2 input error (unreadable/malformed/invalid mesh or
// bad usage), 3 bad query argument, 4 mesh generation failure.
// Result data goes to stdout (or --output); diagnostics and timings go to
// stderr, so stdout bytes are a pure function of input and flags.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tetnear/incidence.hpp"
#include "tetnear/io.hpp"
#include "tetnear/mesh.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct MeshOptions {
  std::string input;
  std::string format = "auto";
  std::string strategy = "countsort";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool permissive = false;
  std::string output;
};

void add_mesh_options(CLI::App& cmd, MeshOptions& opts) {
  cmd.add_option("-i,--input", opts.input, "Input mesh file")->required();
  cmd.add_option("-f,--format", opts.format,
                 "Input format; auto picks msh22 for .msh, native otherwise")
      ->check(CLI::IsMember({"auto", "native", "msh22"}))
      ->capture_default_str();
  cmd.add_option("-s,--strategy", opts.strategy, "Incidence build strategy")
      ->check(CLI::IsMember({"serial", "locked", "countsort"}))
      ->capture_default_str();
  cmd.add_option("-t,--threads", opts.threads, "Worker threads for the build")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_flag("-p,--permissive", opts.permissive,
               "Keep degenerate elements instead of rejecting the mesh");
  cmd.add_option("-o,--output", opts.output, "Write output here instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tetnear::Error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw tetnear::Error("cannot read input file: " + path);
  return std::move(buf).str();
}

// Output sink: a file when --output is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::fopen(path.c_str(), "wb");
      if (file_ == nullptr) throw tetnear::Error("cannot open output file: " + path);
    }
  }
  ~Output() {
    if (file_ != nullptr) std::fclose(file_);
  }
  Output(const Output&) = delete;
  Output& operator=(const Output&) = delete;

  void write(std::string_view text) {
    std::FILE* f = file_ != nullptr ? file_ : stdout;
    if (std::fwrite(text.data(), 1, text.size(), f) != text.size()) {
      throw tetnear::Error("write failed");
    }
  }

 private:
  std::FILE* file_ = nullptr;
};

tetnear::Mesh load_mesh(const MeshOptions& opts) {
  const std::string text = read_file(opts.input);
  std::string format = opts.format;
  if (format == "auto") {
    format = std::filesystem::path(opts.input).extension() == ".msh" ? "msh22"
                                                                     : "native";
  }
  const auto mode = opts.permissive ? tetnear::ValidationMode::Permissive
                                    : tetnear::ValidationMode::Strict;
  std::size_t degenerate = 0;
  tetnear::Mesh mesh;
  if (format == "msh22") {
    auto result = tetnear::parse_msh22(text, mode, &degenerate);
    if (result.skipped_non_tet > 0) {
      std::cerr << "warning: skipped " << result.skipped_non_tet
                << " non-tetrahedral element(s)\n";
    }
    mesh = std::move(result.mesh);
  } else {
    mesh = tetnear::parse_native(text, mode, &degenerate);
  }
  if (degenerate > 0) {
    std::cerr << "warning: kept " << degenerate
              << " degenerate element(s); they participate with their distinct nodes\n";
  }
  return mesh;
}

tetnear::BuildStrategy strategy_of(const MeshOptions& opts) {
  return *tetnear::strategy_from_name(opts.strategy);
}

int cmd_neighbors(const MeshOptions& opts, std::uint64_t elem) {
  const auto mesh = load_mesh(opts);
  const auto inc = tetnear::build_incidence(mesh, strategy_of(opts), opts.threads);
  if (elem >= mesh.n_elem()) {
    throw tetnear::ElemOutOfRangeError(elem, mesh.n_elem());
  }
  const auto report =
      tetnear::near_elements_classified(inc, mesh, static_cast<tetnear::ElemId>(elem));
  Output out(opts.output);
  out.write(tetnear::render_report_line(report));
  return 0;
}

int cmd_neighbors_all(const MeshOptions& opts) {
  const auto mesh = load_mesh(opts);
  const auto inc = tetnear::build_incidence(mesh, strategy_of(opts), opts.threads);
  Output out(opts.output);
  std::string line;
  tetnear::for_each_near(inc, mesh, [&](const tetnear::NeighborReport& report) {
    line.clear();
    tetnear::append_report_line(line, report);
    out.write(line);
  });
  return 0;
}

int cmd_stats(const MeshOptions& opts) {
  const auto mesh = load_mesh(opts);
  const auto start = Clock::now();
  const auto inc = tetnear::build_incidence(mesh, strategy_of(opts), opts.threads);
  const double build_ms = elapsed_ms(start);

  std::uint64_t valence_min = 0;
  std::uint64_t valence_max = 0;
  double valence_mean = 0.0;
  if (mesh.n_node() > 0) {
    valence_min = std::numeric_limits<std::uint64_t>::max();
    const auto offsets = inc.offsets();
    for (tetnear::NodeId j = 0; j < mesh.n_node(); ++j) {
      const std::uint64_t v = offsets[j + 1] - offsets[j];
      valence_min = std::min(valence_min, v);
      valence_max = std::max(valence_max, v);
    }
    valence_mean = double(inc.entry_count()) / double(mesh.n_node());
  }

  // Count each unordered near pair once, on the side with the smaller id.
  std::uint64_t pairs[5] = {0, 0, 0, 0, 0};
  tetnear::for_each_near(inc, mesh, [&](const tetnear::NeighborReport& report) {
    for (const auto& [f, nearness] : report.neighbors) {
      if (f > report.elem) ++pairs[static_cast<int>(nearness)];
    }
  });

  char mean_buf[32];
  std::snprintf(mean_buf, sizeof(mean_buf), "%.6g", valence_mean);
  std::ostringstream text;
  text << "nodes: " << mesh.n_node() << '\n'
       << "elements: " << mesh.n_elem() << '\n'
       << "incidence_entries: " << inc.entry_count() << '\n'
       << "valence_min: " << valence_min << '\n'
       << "valence_mean: " << mean_buf << '\n'
       << "valence_max: " << valence_max << '\n'
       << "vertex_pairs: " << pairs[int(tetnear::Nearness::VertexNear)] << '\n'
       << "edge_pairs: " << pairs[int(tetnear::Nearness::EdgeNear)] << '\n'
       << "face_pairs: " << pairs[int(tetnear::Nearness::FaceNear)] << '\n'
       << "coincident_pairs: " << pairs[int(tetnear::Nearness::Coincident)] << '\n';
  Output out(opts.output);
  out.write(text.str());
  // Timing is diagnostic: keep stdout deterministic for fixed input+flags.
  std::fprintf(stderr, "build_ms: %.3f\n", build_ms);
  return 0;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int cmd_bench(const std::vector<std::uint64_t>& sizes, unsigned repeats,
              std::uint64_t seed, const std::vector<std::string>& strategies,
              unsigned threads, const std::string& output) {
  std::vector<tetnear::Mesh> meshes;
  meshes.reserve(sizes.size());
  for (std::uint64_t n_elem : sizes) {
    const auto n_node = static_cast<std::uint32_t>(std::max<std::uint64_t>(4, n_elem / 5));
    meshes.push_back(tetnear::generate_random_mesh(
        n_node, static_cast<std::uint32_t>(n_elem), 64, seed));
  }

  // Round-robin over the (size, strategy) grid so slow phases of the host
  // hit every row about equally and drop out of cross-size ratios.
  const std::size_t rows = sizes.size() * strategies.size();
  std::vector<std::vector<double>> build_times(rows);
  std::vector<std::vector<double>> query_times(rows);
  volatile std::uint64_t sink = 0;
  for (unsigned r = 0; r < repeats; ++r) {
    std::size_t row = 0;
    for (std::size_t m = 0; m < meshes.size(); ++m) {
      for (const std::string& name : strategies) {
        const auto strategy = *tetnear::strategy_from_name(name);
        auto start = Clock::now();
        const auto inc = tetnear::build_incidence(meshes[m], strategy, threads);
        build_times[row].push_back(elapsed_ms(start));

        std::uint64_t checksum = 0;
        start = Clock::now();
        tetnear::for_each_near(inc, meshes[m],
                               [&](const tetnear::NeighborReport& report) {
                                 checksum += report.neighbors.size();
                               });
        query_times[row].push_back(elapsed_ms(start));
        sink = sink + checksum;  // keep the sweep observable
        ++row;
      }
    }
  }

  Output out(output);
  out.write("n_elem,strategy,threads,build_ms,query_all_ms\n");
  std::size_t row = 0;
  for (std::size_t m = 0; m < sizes.size(); ++m) {
    for (const std::string& name : strategies) {
      char line[160];
      std::snprintf(line, sizeof(line), "%llu,%s,%u,%.3f,%.3f\n",
                    static_cast<unsigned long long>(sizes[m]), name.c_str(),
                    threads, median(build_times[row]), median(query_times[row]));
      out.write(line);
      ++row;
    }
  }
  return 0;
}

int cmd_gen(std::uint32_t n_node, std::uint32_t n_elem, std::uint32_t max_valence,
            std::uint64_t seed, const std::string& output) {
  const auto mesh = tetnear::generate_random_mesh(n_node, n_elem, max_valence, seed);
  Output out(output);
  out.write(tetnear::render_native(mesh));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-element queries on tetrahedral meshes via node-to-element incidence"};
  app.require_subcommand(1);

  MeshOptions neighbors_opts;
  std::uint64_t neighbors_elem = 0;
  auto* neighbors = app.add_subcommand(
      "neighbors", "Print the near elements of one element");
  add_mesh_options(*neighbors, neighbors_opts);
  neighbors->add_option("elem", neighbors_elem, "Query element id")->required();

  MeshOptions all_opts;
  auto* neighbors_all = app.add_subcommand(
      "neighbors-all", "Print the near elements of every element");
  add_mesh_options(*neighbors_all, all_opts);

  MeshOptions stats_opts;
  auto* stats = app.add_subcommand("stats", "Print mesh and incidence statistics");
  add_mesh_options(*stats, stats_opts);

  std::vector<std::uint64_t> bench_sizes{250000, 500000, 1000000};
  unsigned bench_repeats = 3;
  std::uint64_t bench_seed = 42;
  std::string bench_strategy;
  unsigned bench_threads = std::max(1u, std::thread::hardware_concurrency());
  std::string bench_output;
  auto* bench = app.add_subcommand(
      "bench", "Time incidence builds and full query sweeps on seeded meshes");
  bench->add_option("--sizes", bench_sizes, "Element counts, ascending")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--repeats", bench_repeats, "Repetitions per row (median reported)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_seed, "Mesh seed")->capture_default_str();
  auto* bench_strategy_opt =
      bench->add_option("-s,--strategy", bench_strategy, "Bench only this strategy (default: all)")
          ->check(CLI::IsMember({"serial", "locked", "countsort"}));
  bench->add_option("-t,--threads", bench_threads, "Worker threads for the build")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("-o,--output", bench_output, "Write the CSV here instead of stdout");

  std::uint32_t gen_nodes = 0;
  std::uint32_t gen_elems = 0;
  std::uint32_t gen_max_valence = 64;
  std::uint64_t gen_seed = 42;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random mesh in native format");
  gen->add_option("--nodes", gen_nodes, "Node count (>= 4)")
      ->required()
      ->check(CLI::Range(std::uint32_t{4}, std::numeric_limits<std::uint32_t>::max()));
  gen->add_option("--elems", gen_elems, "Element count")->required();
  gen->add_option("--max-valence", gen_max_valence, "Valence budget per node (>= 4)")
      ->check(CLI::Range(std::uint32_t{4}, std::numeric_limits<std::uint32_t>::max()))
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Mesh seed")->capture_default_str();
  gen->add_option("-o,--output", gen_output, "Write the mesh here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is an input error
  }

  try {
    if (neighbors->parsed()) return cmd_neighbors(neighbors_opts, neighbors_elem);
    if (neighbors_all->parsed()) return cmd_neighbors_all(all_opts);
    if (stats->parsed()) return cmd_stats(stats_opts);
    if (bench->parsed()) {
      if (!std::is_sorted(bench_sizes.begin(), bench_sizes.end()) ||
          bench_sizes.empty()) {
        std::cerr << "error: --sizes must be ascending and non-empty\n";
        return 2;
      }
      std::vector<std::string> strategies{"serial", "locked", "countsort"};
      if (bench_strategy_opt->count() > 0) strategies = {bench_strategy};
      return cmd_bench(bench_sizes, bench_repeats, bench_seed, strategies,
                       bench_threads, bench_output);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_nodes, gen_elems, gen_max_valence, gen_seed, gen_output);
    }
  } catch (const tetnear::ElemOutOfRangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tetnear::NodeOutOfRangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tetnear::GenerationStalledError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
