#include "trin/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "trin/evaluate.hpp"
#include "trin/image_io.hpp"
#include "trin/phantom.hpp"

namespace trin {
namespace {

using nlohmann::json;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

json class_json(const ClassScore& s) {
  return json{{"tp", s.tp}, {"fp", s.fp},       {"fn", s.fn},
              {"tn", s.tn}, {"f1", s.f1},       {"accuracy", s.accuracy}};
}

json report_json(const EvalReport& r) {
  return json{{"class1", class_json(r.class1)},
              {"class2", class_json(r.class2)},
              {"average_f1", r.average_f1},
              {"average_accuracy", r.average_accuracy}};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(path + ": cannot open for writing");
  os << text;
  if (!os) throw IoError(path + ": write failed");
}

// Applies a key=value config file onto a subcommand's long options. Options
// already given on the command line keep their values; unknown keys are
// errors so typos do not silently fall back to defaults.
void apply_config_file(CLI::App* sc, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError(path + ": cannot open config file");
  const auto trim = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    CLI::Option* opt = sc->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw std::invalid_argument(path + ": unknown config key '" + key + "'");
    }
    if (opt->count() > 0) continue;  // command line and earlier lines win
    opt->add_result(trim(line.substr(eq + 1)));
    opt->run_callback();
  }
}

// Registers --config on a subcommand and hooks the handler behind it.
template <typename Fn>
void wire(CLI::App* sc, std::string& config_path, int& rc, Fn handler) {
  sc->add_option("--config", config_path, "key=value config file; flags take precedence");
  sc->callback([sc, &config_path, &rc, handler] {
    if (!config_path.empty()) apply_config_file(sc, config_path);
    rc = handler();
  });
}

struct TrinarizeArgs {
  std::string input;
  std::string out = "trimap.png";
  std::string truth;
  std::string method = "pde";
  std::string config;
  RunConfig cfg;
};

int cmd_trinarize(const TrinarizeArgs& args) {
  RunConfig cfg = args.cfg;
  cfg.method = parse_method(args.method);

  const ScalarField image = load_grayscale(args.input);

  PipelineOptions opts;
  opts.method = cfg.method;
  opts.disk_radius = cfg.disk_radius;
  opts.largest_component = cfg.largest_component;
  opts.seed = cfg.seed;
  if (cfg.method == Method::pde) opts.params = resolve_params(cfg, grid_spec(image));

  const PipelineResult result = run_pipeline(image, opts);
  save_trimap(result.trimap, args.out);

  const WhoRatio who = who_ratio(result.trimap);
  std::cout << "method=" << method_name(cfg.method);
  if (result.solve) {
    std::cout << " steps=" << result.solve->steps_taken
              << " converged=" << (result.solve->converged ? "yes" : "no");
  }
  std::cout << " who_ratio=" << fmt("%.6f", who.ratio)
            << " within_guideline=" << (who.within_guideline ? "yes" : "no") << "\n";
  std::cout << "wrote " << args.out << "\n";

  if (!args.truth.empty()) {
    const Trimap truth = load_trimap(args.truth);
    const EvalReport report = score(result.trimap, truth);
    json j = report_json(report);
    j["method"] = method_name(cfg.method);
    j["who_ratio"] = who.ratio;
    j["within_who_guideline"] = who.within_guideline;
    if (result.solve) {
      j["steps_taken"] = result.solve->steps_taken;
      j["converged"] = result.solve->converged;
      j["clamp_activations"] = result.solve->clamp_activations;
      j["stability"] = json{{"lhs", result.solve->stability.lhs},
                            {"rhs", result.solve->stability.rhs},
                            {"satisfied", result.solve->stability.satisfied}};
    }
    std::filesystem::path report_path(args.out);
    report_path.replace_extension(".json");
    write_text_file(report_path.string(), j.dump(2) + "\n");
    std::cout << "average_f1=" << fmt("%.6f", report.average_f1)
              << " average_accuracy=" << fmt("%.6f", report.average_accuracy) << "\n";
    std::cout << "wrote " << report_path.string() << "\n";
  }
  return 0;
}

struct AnalyzeArgs {
  RunConfig cfg;
  int rows = 101;
  int cols = 101;
  std::string csv;
  std::string config;
};

int cmd_analyze(const AnalyzeArgs& args) {
  ScalarField probe(args.rows, args.cols);
  const GridSpec g = grid_spec(probe);
  const ModelParams p = resolve_params(args.cfg, g);

  std::cout << "equilibria:\n";
  std::string stable_set;
  for (const Equilibrium& e : classify_equilibria(p)) {
    const bool stable = e.stability == Stability::stable;
    std::cout << "  u=" << e.root << (stable ? " stable" : " unstable") << "\n";
    if (stable) {
      if (!stable_set.empty()) stable_set += ", ";
      std::ostringstream os;
      os << e.root;
      stable_set += os.str();
    }
  }
  std::cout << "stable set: {" << stable_set << "}\n";
  std::cout << "max |f| bound: " << max_abs_source() << " (256/3125)\n";

  const StabilityReport r = check_stability(p, g);
  std::cout << "grid " << args.cols << "x" << args.rows << ": dx=" << g.dx
            << " dy=" << g.dy << " dt=" << p.dt << " c_S=" << p.c_s
            << " c_D=" << p.c_d << "\n";
  std::cout << "stability: lhs=" << r.lhs << " rhs=" << r.rhs << " ratio=" << r.ratio
            << " satisfied=" << (r.satisfied ? "true" : "false") << "\n";

  if (!args.csv.empty()) {
    std::ostringstream os;
    char buf[64];
    for (int k = 0; k <= 1000; ++k) {
      const double u = k / 1000.0;
      std::snprintf(buf, sizeof(buf), "%.3f,%.10g\n", u, source(u, p) + 0.0);
      os << buf;
    }
    write_text_file(args.csv, os.str());
    std::cout << "wrote " << args.csv << "\n";
  }
  return 0;
}

struct SweepArgs {
  std::string input;
  std::string truth;
  std::vector<double> a_values = {0.40, 0.45, 0.50, 0.55, 0.60};
  std::vector<double> c_values = {0.66, 0.68, 0.70, 0.72, 0.74};
  double b = 0.65;
  std::string csv = "sweep.csv";
  std::string config;
};

int cmd_sweep(const SweepArgs& args) {
  const ScalarField image = load_grayscale(args.input);
  const Trimap truth = load_trimap(args.truth);
  const SweepGrid grid = sweep(image, truth, args.a_values, args.c_values, args.b);

  std::ostringstream os;
  write_sweep_csv(grid, os);
  write_text_file(args.csv, os.str());

  std::size_t cells = 0;
  double best = -1.0;
  double best_a = 0.0, best_c = 0.0;
  for (std::size_t ai = 0; ai < grid.a_values.size(); ++ai) {
    for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
      const double f1 = grid.at(ai, ci);
      if (std::isnan(f1)) continue;
      ++cells;
      if (f1 > best) {
        best = f1;
        best_a = grid.a_values[ai];
        best_c = grid.c_values[ci];
      }
    }
  }
  std::cout << "wrote " << args.csv << " (" << cells << " cells)\n";
  if (cells > 0) {
    std::cout << "best avg_f1=" << fmt("%.6f", best) << " at a=" << best_a
              << " c=" << best_c << "\n";
  }
  return 0;
}

struct BenchArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> truths;
  std::string csv = "bench.csv";
  std::string config;
  RunConfig cfg;
};

int cmd_bench(const BenchArgs& args) {
  if (args.inputs.empty() || args.inputs.size() != args.truths.size()) {
    throw std::invalid_argument("bench needs equally many --inputs and --truths");
  }
  std::vector<std::string> inputs = args.inputs;
  std::vector<std::string> truths = args.truths;
  std::sort(inputs.begin(), inputs.end());  // pair lexicographically
  std::sort(truths.begin(), truths.end());

  std::vector<ScalarField> images;
  std::vector<Trimap> gts;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    images.push_back(load_grayscale(inputs[k]));
    gts.push_back(load_trimap(truths[k]));
    if (images[k].height != gts[k].height || images[k].width != gts[k].width) {
      throw std::invalid_argument(inputs[k] + " and " + truths[k] +
                                  " have different dimensions");
    }
  }

  const Method methods[5] = {Method::pde, Method::kmeans, Method::kmedoids,
                             Method::agglomerative, Method::mst};
  std::ostringstream os;
  os << "method,f1_class1,f1_class2,avg_f1,acc_class1,acc_class2,avg_accuracy\n";
  for (Method m : methods) {
    double f1c1 = 0, f1c2 = 0, acc1 = 0, acc2 = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < images.size(); ++k) {
      PipelineOptions opts;
      opts.method = m;
      opts.disk_radius = args.cfg.disk_radius;
      opts.largest_component = args.cfg.largest_component;
      opts.seed = args.cfg.seed;
      if (m == Method::pde) opts.params = resolve_params(args.cfg, grid_spec(images[k]));
      EvalReport r;
      try {
        r = score(run_pipeline(images[k], opts).trimap, gts[k]);
      } catch (const DegenerateSegmentation&) {
        // no output to score: count it as an all-background prediction
        r = score(Trimap(gts[k].height, gts[k].width, Label::L1), gts[k]);
      }
      f1c1 += r.class1.f1;
      f1c2 += r.class2.f1;
      acc1 += r.class1.accuracy;
      acc2 += r.class2.accuracy;
    }
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();
    const double n = static_cast<double>(images.size());
    f1c1 /= n;
    f1c2 /= n;
    acc1 /= n;
    acc2 /= n;
    // Wall-clock goes to stdout only; the CSV must be byte-stable across runs.
    std::cout << method_name(m) << ": " << fmt("%.3f", seconds) << " s\n";
    os << method_name(m) << "," << fmt("%.6f", f1c1) << "," << fmt("%.6f", f1c2) << ","
       << fmt("%.6f", (f1c1 + f1c2) / 2.0) << "," << fmt("%.6f", acc1) << ","
       << fmt("%.6f", acc2) << "," << fmt("%.6f", (acc1 + acc2) / 2.0) << "\n";
  }
  write_text_file(args.csv, os.str());
  std::cout << "wrote " << args.csv << "\n";
  return 0;
}

struct PhantomArgs {
  std::string out = "phantom_";
  std::uint64_t seed = 1;
  int count = 1;
  double sigma = 0.05;
  int height = 196;
  int width = 196;
  std::string config;
};

int cmd_phantom(const PhantomArgs& args) {
  if (args.count < 1) throw std::invalid_argument("--count must be >= 1");
  for (int k = 0; k < args.count; ++k) {
    const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(k);
    PhantomSpec spec = default_phantom_spec(seed, args.height, args.width);
    spec.noise_sigma = args.sigma;
    const Phantom ph = generate(spec);
    const std::string image_path = args.out + std::to_string(seed) + "_image.png";
    const std::string truth_path = args.out + std::to_string(seed) + "_truth.png";
    save_grayscale(ph.image, image_path);
    save_trimap(ph.truth, truth_path);
    std::cout << "wrote " << image_path << " " << truth_path << "\n";
  }
  return 0;
}

void add_model_flags(CLI::App* sc, RunConfig& cfg) {
  sc->add_option("--a", cfg.a, "source root a (default 0.5)");
  sc->add_option("--b", cfg.b, "source root b (default 0.65)");
  sc->add_option("--c", cfg.c, "source root c (default 0.7)");
  sc->add_option("--cd", cfg.cd, "diffusion coefficient c_D (default 0.01)");
  sc->add_option("--cs", cfg.cs, "source coefficient c_S (default 1/dt)");
  sc->add_option("--dt", cfg.dt, "time step (default dx*dy/4)");
  sc->add_option("--max-steps", cfg.max_steps, "step cap (default 100)");
  sc->add_option("--tol", cfg.tol, "steady-state tolerance (default 1e-6)");
}

}  // namespace

ModelParams resolve_params(const RunConfig& cfg, const GridSpec& g) {
  ModelParams p = default_params(g);
  if (cfg.a) p.a = *cfg.a;
  if (cfg.b) p.b = *cfg.b;
  if (cfg.c) p.c = *cfg.c;
  if (cfg.cd) p.c_d = *cfg.cd;
  if (cfg.dt) {
    p.dt = *cfg.dt;
    p.c_s = 1.0 / p.dt;
  }
  if (cfg.cs) p.c_s = *cfg.cs;
  if (cfg.max_steps) p.max_steps = *cfg.max_steps;
  if (cfg.tol) p.steady_tol = *cfg.tol;
  validate(p);
  return p;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"reaction-diffusion trinarization toolkit"};
  app.require_subcommand(1);

  TrinarizeArgs tri;
  CLI::App* tri_sc = app.add_subcommand(
      "trinarize", "segment an image into three classes and write the trimap PNG");
  tri_sc->add_option("input", tri.input, "8-bit grayscale PNG or PGM")->required();
  tri_sc->add_option("--method", tri.method, "pde|kmeans|kmedoids|agglomerative|mst");
  tri_sc->add_option("--out", tri.out, "output trimap path (default trimap.png)");
  tri_sc->add_option("--truth", tri.truth, "truth trimap; writes an eval JSON next to --out");
  tri_sc->add_option("--disk-radius", tri.cfg.disk_radius, "closing disk radius (default 20)");
  tri_sc->add_flag("--largest-component,!--no-largest-component", tri.cfg.largest_component,
                   "keep only the largest foreground component (default on)");
  tri_sc->add_option("--seed", tri.cfg.seed, "clusterer seed");
  add_model_flags(tri_sc, tri.cfg);

  AnalyzeArgs ana;
  CLI::App* ana_sc = app.add_subcommand(
      "analyze", "print equilibria, the source bound, and the stability report");
  ana_sc->add_option("--rows", ana.rows, "grid rows (default 101)");
  ana_sc->add_option("--cols", ana.cols, "grid cols (default 101)");
  ana_sc->add_option("--csv", ana.csv, "write f(u) samples for u in [0,1] step 1e-3");
  add_model_flags(ana_sc, ana.cfg);

  SweepArgs swp;
  CLI::App* swp_sc =
      app.add_subcommand("sweep", "average-F1 surface over an (a, c) grid with b fixed");
  swp_sc->add_option("input", swp.input, "input image")->required();
  swp_sc->add_option("truth", swp.truth, "truth trimap")->required();
  swp_sc->add_option("--a-values", swp.a_values, "comma list of a values")->delimiter(',');
  swp_sc->add_option("--c-values", swp.c_values, "comma list of c values")->delimiter(',');
  swp_sc->add_option("--b", swp.b, "fixed b (default 0.65)");
  swp_sc->add_option("--csv", swp.csv, "output CSV path (default sweep.csv)");

  BenchArgs ben;
  CLI::App* ben_sc = app.add_subcommand(
      "bench", "run all five methods over matched image/truth pairs; aggregate per-method score CSV");
  ben_sc->add_option("--inputs", ben.inputs, "input images")->delimiter(',')->required();
  ben_sc->add_option("--truths", ben.truths, "truth trimaps")->delimiter(',')->required();
  ben_sc->add_option("--csv", ben.csv, "output CSV path (default bench.csv)");
  ben_sc->add_option("--disk-radius", ben.cfg.disk_radius, "closing disk radius");
  ben_sc->add_flag("--largest-component,!--no-largest-component", ben.cfg.largest_component,
                   "keep only the largest foreground component (default on)");
  ben_sc->add_option("--seed", ben.cfg.seed, "clusterer seed");
  add_model_flags(ben_sc, ben.cfg);

  PhantomArgs pha;
  CLI::App* pha_sc =
      app.add_subcommand("phantom", "generate synthetic image + truth PNG pairs");
  pha_sc->add_option("--out", pha.out, "output prefix (default phantom_)");
  pha_sc->add_option("--seed", pha.seed, "first seed (default 1)");
  pha_sc->add_option("--count", pha.count, "number of phantoms (default 1)");
  pha_sc->add_option("--sigma", pha.sigma, "noise sigma (default 0.05)");
  pha_sc->add_option("--height", pha.height, "frame height (default 196)");
  pha_sc->add_option("--width", pha.width, "frame width (default 196)");

  int rc = 0;
  wire(tri_sc, tri.config, rc, [&] { return cmd_trinarize(tri); });
  wire(ana_sc, ana.config, rc, [&] { return cmd_analyze(ana); });
  wire(swp_sc, swp.config, rc, [&] { return cmd_sweep(swp); });
  wire(ben_sc, ben.config, rc, [&] { return cmd_bench(ben); });
  wire(pha_sc, pha.config, rc, [&] { return cmd_phantom(pha); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 1;
  } catch (const DegenerateSegmentation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace trin
