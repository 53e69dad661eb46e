// Copyright 2026 The soapcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "soapcert/cli.h"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "soapcert/certify.h"
#include "soapcert/cone.h"
#include "soapcert/curvature.h"
#include "soapcert/errors.h"
#include "soapcert/graph.h"
#include "soapcert/report.h"

namespace soapcert {
namespace {

// Apices closer than this to the graph are skipped by the map and the
// residual suite.
constexpr double kApexClearance = 1e-4;

struct Options {
  std::string graph_path;
  std::optional<double> h;
  std::uint64_t seed = 0;
  std::string apex;
  std::string out_path;
  std::string svg_path;
  int grid = 512;
  std::string mode = "strict";
  bool simple_curve = false;
  int trials = 20;
};

struct OutputFile {
  std::string path;
  std::string contents;
};

Point ParseApex(const SpaceForm& space, const std::string& text) {
  Vec v(space.embedding_dim());
  std::stringstream ss(text);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= space.embedding_dim()) {
      throw ValidationError(fmt::format(
          "apex has more than {} coordinates", space.embedding_dim()));
    }
    try {
      std::size_t used = 0;
      v[i] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("apex: bad coordinate '{}'", item));
    }
    ++i;
  }
  if (i != space.embedding_dim()) {
    throw ValidationError(fmt::format("apex needs {} coordinates, got {}",
                                      space.embedding_dim(), i));
  }
  if (space.Residual(v) > kDefaultManifoldTolerance) {
    throw ValidationError("apex does not lie on the model manifold");
  }
  return space.Project(v);
}

std::uint64_t ResolveSeed(std::uint64_t flag_seed) {
  const char* env = std::getenv("SOAPCERT_SEED");
  if (env == nullptr) return flag_seed;
  try {
    std::size_t used = 0;
    const std::string text(env);
    const unsigned long long seed = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return seed;
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("SOAPCERT_SEED: bad value '{}'", env));
  }
}

double MinDistance(const SpaceForm& space, const std::vector<Point>& samples,
                   const Point& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& x : samples) best = std::min(best, space.Dist(p, x));
  return best;
}

// Opens every target before writing any; on failure, removes the files this
// call created.
void WriteOutputs(const std::vector<OutputFile>& files) {
  std::vector<std::ofstream> streams;
  std::vector<bool> created;
  for (const OutputFile& f : files) {
    created.push_back(!std::filesystem::exists(f.path));
    streams.emplace_back(f.path, std::ios::binary | std::ios::trunc);
    if (!streams.back()) {
      for (std::size_t i = 0; i + 1 < streams.size(); ++i) {
        streams[i].close();
        std::error_code ignored;
        if (created[i]) std::filesystem::remove(files[i].path, ignored);
      }
      throw NumericalError(fmt::format("cannot write '{}'", f.path));
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    streams[i] << files[i].contents;
    streams[i].flush();
    if (!streams[i]) {
      throw NumericalError(fmt::format("cannot write '{}'", files[i].path));
    }
  }
}

void EchoInputs(TextReport& report, const std::string& command,
                const Options& opts, const EmbeddedGraph& graph) {
  report.Section("inputs");
  report.Value("command", command);
  report.Value("file", opts.graph_path);
  report.Value("space", graph.space().Describe());
  report.Value("sampling_h",
               opts.h ? FormatNumber(*opts.h) : std::string("input"));
  report.Value("seed", fmt::format("{}", opts.seed));
  report.Number("vertices", static_cast<double>(graph.vertices().size()));
  report.Number("edges", static_cast<double>(graph.edges().size()));
  report.Number("length", graph.TotalLength());
  report.EndSection();
}

std::vector<OutputFile> RunTc(const EmbeddedGraph& graph, const Options& opts,
                              TextReport& report) {
  AppendTc(report, ConeTotalCurvature(graph, {.seed = opts.seed}));
  return {};
}

std::vector<OutputFile> RunCone(const EmbeddedGraph& graph,
                                const Options& opts, TextReport& report) {
  const Point apex = ParseApex(graph.space(), opts.apex);
  const ConeDevelopment dev = DevelopCone(graph, apex);
  report.Section("cone");
  report.Value("apex", FormatCoords(apex.coords));
  report.Number("theta_ambient", AmbientConeDensity(graph, apex));
  report.Number("theta_developed", dev.hat_density);
  report.Number("area_ambient", AmbientConeArea(graph, apex));
  report.Number("area_developed", dev.hat_area);
  report.EndSection();
  AppendGaussBonnet(report, GaussBonnet(graph, dev));
  return {};
}

std::vector<OutputFile> RunDevelop(const EmbeddedGraph& graph,
                                   const Options& opts, TextReport& report) {
  const Point apex = ParseApex(graph.space(), opts.apex);
  const ConeDevelopment dev = DevelopCone(graph, apex);
  report.Section("develop");
  report.Value("apex", FormatCoords(apex.coords));
  report.Number("theta_developed", dev.hat_density);
  report.Number("area_developed", dev.hat_area);
  report.Value("csv", opts.out_path);
  if (!opts.svg_path.empty()) report.Value("svg", opts.svg_path);
  report.EndSection();
  std::vector<OutputFile> files{{opts.out_path, DevelopmentCsv(dev)}};
  if (!opts.svg_path.empty()) {
    files.push_back({opts.svg_path, DevelopmentSvg(graph.space(), dev)});
  }
  return files;
}

std::vector<OutputFile> RunDensityMap(const EmbeddedGraph& graph,
                                      const Options& opts,
                                      TextReport& report) {
  const SpaceForm& space = graph.space();
  const TCReport tc = ConeTotalCurvature(graph, {.seed = opts.seed});
  const HullApprox hull = BuildHullApprox(graph, opts.grid);
  const std::vector<Point> samples = graph.DistinctSamples();

  std::string csv = "index";
  for (int a = 0; a < space.embedding_dim(); ++a) {
    csv += fmt::format(",x{}", a);
  }
  csv += ",bound\n";
  double max_bound = -std::numeric_limits<double>::infinity();
  int skipped = 0;
  for (std::size_t i = 0; i < hull.grid.size(); ++i) {
    const Point& p = hull.grid[i];
    csv += fmt::format("{}", i);
    for (int a = 0; a < space.embedding_dim(); ++a) {
      csv += ',' + FormatExact(p.coords[a]);
    }
    std::optional<double> bound;
    if (MinDistance(space, samples, p) >= kApexClearance) {
      try {
        bound = DensityBound(graph, p, tc);
      } catch (const NumericalError&) {
      }
    }
    if (bound) {
      csv += ',' + FormatExact(*bound) + '\n';
      max_bound = std::max(max_bound, *bound);
    } else {
      csv += ",nan\n";
      ++skipped;
    }
  }
  report.Section("density_map");
  report.Value("center", FormatCoords(hull.center.coords));
  report.Number("radius", hull.radius);
  report.Number("points", static_cast<double>(hull.grid.size()));
  report.Number("skipped", skipped);
  report.Number("max_bound", max_bound);
  report.Value("csv", opts.out_path);
  report.EndSection();
  return {{opts.out_path, csv}};
}

std::vector<OutputFile> RunCertifyCommand(const EmbeddedGraph& graph,
                                          const Options& opts,
                                          TextReport& report) {
  CertifyOptions copts;
  copts.mode =
      opts.mode == "heuristic" ? CertMode::kHeuristic : CertMode::kStrict;
  copts.simple_curve = opts.simple_curve;
  copts.grid_n = opts.grid;
  copts.tc.seed = opts.seed;
  report.Section("certify");
  report.Value("mode", CertModeName(copts.mode));
  report.Value("simple_curve", opts.simple_curve ? "yes" : "no");
  AppendCertify(report, RunCertify(graph, copts));
  report.EndSection();
  return {};
}

std::vector<OutputFile> RunGbCheck(const EmbeddedGraph& graph,
                                   const Options& opts, TextReport& report) {
  const SpaceForm& space = graph.space();
  const HullApprox hull = BuildHullApprox(graph, 1);
  const std::vector<Point> samples = graph.DistinctSamples();
  const std::vector<Vec> basis = space.TangentBasis(hull.center);
  const int n = static_cast<int>(basis.size());
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;

  report.Section("gb_check");
  report.Value("center", FormatCoords(hull.center.coords));
  report.Number("radius", hull.radius);
  report.Section("trials");
  double max_residual = 0.0;
  int failures = 0;
  for (int trial = 0; trial < opts.trials; ++trial) {
    // Uniform in the hull ball, away from the graph.
    std::optional<Point> apex;
    for (int attempt = 0; attempt < 1000 && !apex; ++attempt) {
      Vec v = space.Zero();
      double norm2 = 0.0;
      std::vector<double> y(n);
      for (int a = 0; a < n; ++a) {
        y[a] = normal(rng);
        norm2 += y[a] * y[a];
      }
      const double scale =
          hull.radius * std::pow(uniform(rng), 1.0 / n) / std::sqrt(norm2);
      for (int a = 0; a < n; ++a) v += (scale * y[a]) * basis[a];
      const Point p = space.Exp(TangentVector{hull.center, v});
      if (MinDistance(space, samples, p) >= 1e-2 * hull.radius) apex = p;
    }
    if (!apex) throw NumericalError("no admissible apex found in the hull");
    const std::string key = fmt::format("{}", trial);
    try {
      const GaussBonnetTerms gb = GaussBonnet(graph, *apex);
      max_residual = std::max(max_residual, gb.residual);
      report.Value(key, fmt::format("apex {} residual {}",
                                    FormatCoords(apex->coords),
                                    FormatNumber(gb.residual)));
    } catch (const NumericalError& e) {
      ++failures;
      report.Value(key, fmt::format("apex {} failed: {}",
                                    FormatCoords(apex->coords), e.what()));
    }
  }
  report.EndSection();
  report.Number("max_residual", max_residual);
  report.Number("failed_trials", failures);
  report.EndSection();
  return {};
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Cone total curvature and regularity certificates for graphs "
               "in space forms",
               "soapcert"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("graph", opts.graph_path, "Graph document (JSON)")
        ->required();
    sub->add_option("--h", opts.h, "Resample edges at this arclength spacing");
    sub->add_option("--seed", opts.seed,
                    "Seed for randomized starts (SOAPCERT_SEED overrides)");
  };

  CLI::App* tc = app.add_subcommand("tc", "Cone total curvature TC");
  add_common(tc);

  CLI::App* cone = app.add_subcommand("cone", "Cone quantities at an apex");
  add_common(cone);
  cone->add_option("--apex", opts.apex, "Apex coordinates x,y,z[,w]")
      ->required();

  CLI::App* develop =
      app.add_subcommand("develop", "Export the developed cone");
  add_common(develop);
  develop->add_option("--apex", opts.apex, "Apex coordinates x,y,z[,w]")
      ->required();
  develop->add_option("--out", opts.out_path, "CSV output path")->required();
  develop->add_option("--svg", opts.svg_path, "SVG output path");

  CLI::App* density =
      app.add_subcommand("density-map", "Density bound over a hull grid");
  add_common(density);
  density->add_option("--grid", opts.grid, "Number of grid points")
      ->check(CLI::PositiveNumber);
  density->add_option("--out", opts.out_path, "CSV output path")->required();

  CLI::App* certify = app.add_subcommand("certify", "Regularity certificates");
  add_common(certify);
  certify->add_option("--mode", opts.mode, "strict or heuristic")
      ->check(CLI::IsMember({"strict", "heuristic"}));
  certify->add_flag("--simple-curve", opts.simple_curve,
                    "Also check the simple closed curve threshold");
  certify->add_option("--grid", opts.grid, "Hull grid size")
      ->check(CLI::PositiveNumber);

  CLI::App* gb =
      app.add_subcommand("gb-check", "Gauss-Bonnet residuals at random apices");
  add_common(gb);
  gb->add_option("--trials", opts.trials, "Number of apices")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* command = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  try {
    opts.seed = ResolveSeed(opts.seed);
    EmbeddedGraph graph = LoadGraphFile(opts.graph_path);
    if (opts.h) graph = graph.Resampled(*opts.h);

    TextReport report;
    EchoInputs(report, command->get_name(), opts, graph);
    report.Section("results");
    std::vector<OutputFile> files;
    if (command == tc) {
      files = RunTc(graph, opts, report);
    } else if (command == cone) {
      files = RunCone(graph, opts, report);
    } else if (command == develop) {
      files = RunDevelop(graph, opts, report);
    } else if (command == density) {
      files = RunDensityMap(graph, opts, report);
    } else if (command == certify) {
      files = RunCertifyCommand(graph, opts, report);
    } else {
      files = RunGbCheck(graph, opts, report);
    }
    report.EndSection();
    WriteOutputs(files);
    out << report.str();
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  err << fmt::format("elapsed: {:.3f} s\n", elapsed.count());
  return kExitOk;
}

}  // namespace soapcert
