#include "fpl/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpl/edgeworth.hpp"
#include "fpl/errors.hpp"
#include "fpl/kernels.hpp"
#include "fpl/montecarlo.hpp"
#include "fpl/numeric.hpp"
#include "fpl/population.hpp"
#include "fpl/rng.hpp"
#include "fpl/weights.hpp"

namespace fpl::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string population_file;
  int logistic_n = 0;
  std::string weights_kind = "center";
  std::string weights_file;
  std::vector<int> sample_sizes{5, 15, 30};
  std::vector<double> quantiles{0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95, 0.99};
  long long replicates = 1'000'000;
  std::uint64_t seed = 12345;
  std::string sigma_mode = "auto";
  int workers = 1;
  std::string out_dir = ".";
  std::string format = "text";
  bool dump_raw = false;
  std::string grid = "-4:4:0.01";
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
}

Population load_population(const Options& o) {
  if (!o.population_file.empty()) {
    return Population::load_file(o.population_file);
  }
  if (o.logistic_n > 0) {
    return Population::simulate_logistic(o.logistic_n,
                                         derive_seed(o.seed, kSeedTagPopulation));
  }
  throw CLI::ValidationError("population", "need --population FILE or --logistic N");
}

std::vector<double> parse_number_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<double> values;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::size_t last = line.find_last_not_of(" \t\r");
    std::string token = line.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + token + "'", lineno);
    }
  }
  return values;
}

std::vector<std::pair<double, double>> parse_score_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open score table: " + path);
  std::vector<std::pair<double, double>> table;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream row(line);
    std::string ucell, jcell;
    if (!std::getline(row, ucell, ',') || !std::getline(row, jcell)) {
      throw ParseError("expected 'u,J(u)'", lineno);
    }
    try {
      table.emplace_back(std::stod(ucell), std::stod(jcell));
    } catch (const std::exception&) {
      throw ParseError("expected 'u,J(u)'", lineno);
    }
  }
  if (table.empty()) throw ParseError("empty score table", lineno);
  return table;
}

WeightScheme weights_for(const Options& o, int n) {
  if (!o.weights_file.empty()) {
    std::vector<double> c = parse_number_lines(o.weights_file);
    if (static_cast<int>(c.size()) != n) {
      throw std::domain_error("weights file holds " + std::to_string(c.size()) +
                              " entries but n = " + std::to_string(n));
    }
    return WeightScheme::from_values(std::move(c), "file:" + o.weights_file);
  }
  const std::string& spec = o.weights_kind;
  std::string kind = spec;
  std::string params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    kind = spec.substr(0, colon);
    params = spec.substr(colon + 1);
  }
  if (kind == "constant") return WeightScheme::constant(n);
  if (kind == "gini") return WeightScheme::gini(n);
  if (kind == "center") return WeightScheme::center(n);
  if (kind == "trimmed") {
    double t1 = 0.0, t2 = 0.0;
    if (std::sscanf(params.c_str(), "%lf,%lf", &t1, &t2) != 2) {
      throw CLI::ValidationError("weights", "trimmed needs parameters t1,t2");
    }
    return WeightScheme::trimmed(n, t1, t2);
  }
  if (kind == "custom") {
    if (params.empty()) {
      throw CLI::ValidationError("weights", "custom needs a CSV path: custom:FILE");
    }
    return WeightScheme::from_score_table(parse_score_table(params), n);
  }
  throw CLI::ValidationError("weights", "unknown kind '" + kind + "'");
}

SigmaSpec sigma_spec_for(const Options& o, int n) {
  SigmaSpec s;
  if (o.sigma_mode == "auto") {
    s.mode = SigmaMode::kAuto;
  } else if (o.sigma_mode == "exact") {
    s.mode = SigmaMode::kExact;
  } else if (o.sigma_mode == "mc") {
    s.mode = SigmaMode::kMonteCarlo;
  } else if (o.sigma_mode == "linear") {
    s.mode = SigmaMode::kLinear;
  } else {
    throw CLI::ValidationError("sigma-mode", "must be auto|exact|mc|linear");
  }
  s.replicates = o.replicates;
  s.seed = derive_seed(derive_seed(o.seed, kSeedTagSigma), static_cast<std::uint64_t>(n));
  s.workers = o.workers;
  return s;
}

std::uint64_t simulation_seed(const Options& o, int n) {
  return derive_seed(derive_seed(o.seed, kSeedTagSimulation), static_cast<std::uint64_t>(n));
}

// ---- table rendering -------------------------------------------------------

struct Table {
  std::vector<std::string> labels;           // one per row
  std::vector<std::vector<double>> rows;     // label-aligned values
  std::vector<double> columns;               // q values
};

std::string table_csv(const Table& t) {
  std::string out = "row";
  for (double q : t.columns) out += "," + fmt3(q);
  out += "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += t.labels[r];
    for (double v : t.rows[r]) out += "," + fmt17(v);
    out += "\n";
  }
  return out;
}

std::string table_text(const Table& t) {
  std::size_t label_w = 2;
  for (const auto& l : t.labels) label_w = std::max(label_w, l.size());
  std::ostringstream out;
  out << std::string(label_w, ' ') << "  q=";
  for (double q : t.columns) {
    std::string cell = fmt3(q);
    out << std::string(9 - cell.size(), ' ') << cell;
  }
  out << "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << t.labels[r] << std::string(label_w - t.labels[r].size() + 4, ' ');
    for (double v : t.rows[r]) {
      std::string cell = fmt3(v);
      out << std::string(9 - cell.size(), ' ') << cell;
    }
    out << "\n";
  }
  return out.str();
}

// ---- commands --------------------------------------------------------------

int cmd_kernels(const Options& o) {
  if (o.sample_sizes.size() != 1) {
    throw CLI::ValidationError("n", "kernels needs exactly one sample size");
  }
  const int n = o.sample_sizes[0];
  Population pop = load_population(o);
  WeightScheme w = weights_for(o, n);
  KernelSet kernels(pop, w);

  fs::create_directories(o.out_dir);
  const int N = pop.size();

  std::vector<double> g1 = kernels.g1_table(o.workers);
  std::string g1_csv = "k,g1\n";
  for (int k = 1; k <= N; ++k) {
    g1_csv += std::to_string(k) + "," + fmt17(g1[static_cast<std::size_t>(k - 1)]) + "\n";
  }
  write_text_file(fs::path(o.out_dir) / "g1.csv", g1_csv);
  std::cout << "g1.csv written (N = " << N << ", n = " << n << ")\n";

  if (KernelSet::g2_defined(N, n)) {
    std::vector<double> g2 = kernels.g2_table(o.workers);
    std::string g2_csv = "k,l,g2\n";
    for (int k = 1; k < N; ++k) {
      for (int l = k + 1; l <= N; ++l) {
        g2_csv += std::to_string(k) + "," + std::to_string(l) + "," +
                  fmt17(g2[kernels.pair_index(k, l)]) + "\n";
      }
    }
    write_text_file(fs::path(o.out_dir) / "g2.csv", g2_csv);
    std::cout << "g2.csv written (" << (static_cast<long long>(N) * (N - 1) / 2)
              << " pairs)\n";
  } else {
    std::cout << "g2 undefined at this (N, n); only g1.csv written\n";
  }
  return 0;
}

int cmd_edgeworth(const Options& o) {
  Population pop = load_population(o);
  fs::create_directories(o.out_dir);

  double lo = -4.0, hi = 4.0, step = 0.01;
  if (std::sscanf(o.grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      !(step > 0.0) || !(lo < hi)) {
    throw CLI::ValidationError("grid", "expected LO:HI:STEP with LO < HI, STEP > 0");
  }

  for (int n : o.sample_sizes) {
    WeightScheme w = weights_for(o, n);
    EdgeworthModel model = build_model(pop, w, sigma_spec_for(o, n), o.workers);
    std::string tag = "_n" + std::to_string(n);
    write_text_file(fs::path(o.out_dir) / ("edgeworth" + tag + ".txt"), model.report());

    std::string grid_csv = "x,phi,gn\n";
    for (double x = lo; x <= hi + 1e-12; x += step) {
      grid_csv += fmt17(x) + "," + fmt17(normal_cdf(x)) + "," + fmt17(model.cdf(x)) + "\n";
    }
    write_text_file(fs::path(o.out_dir) / ("cdf_grid" + tag + ".csv"), grid_csv);

    std::cout << model.report() << "\n";
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  Population pop = load_population(o);
  fs::create_directories(o.out_dir);

  std::string csv = "n,q,quantile\n";
  std::ostringstream text;
  for (int n : o.sample_sizes) {
    WeightScheme w = weights_for(o, n);
    SimulationPlan plan;
    plan.replicates = o.replicates;
    plan.seed = simulation_seed(o, n);
    plan.weights = w;
    plan.mean_l = expected_L(pop, w);
    plan.sigma_tilde = sigma_tilde(pop, w, sigma_spec_for(o, n));
    plan.workers = o.workers;
    EmpiricalCdf cdf = simulate_cdf(pop, plan);

    text << "n = " << n << " (R = " << o.replicates << ")\n";
    for (double q : o.quantiles) {
      double v = cdf.quantile(q);
      csv += std::to_string(n) + "," + fmt3(q) + "," + fmt17(v) + "\n";
      text << "  F~^-1(" << fmt3(q) << ") = " << fmt3(v) << "\n";
    }
    if (o.dump_raw) {
      std::string stem = "realizations_n" + std::to_string(n);
      dump_realizations(cdf, (fs::path(o.out_dir) / (stem + ".f64")).string(),
                        (fs::path(o.out_dir) / (stem + ".meta")).string(), plan.seed);
    }
  }
  write_text_file(fs::path(o.out_dir) / "quantiles.csv", csv);
  std::cout << (o.format == "csv" ? csv : text.str());
  return 0;
}

int cmd_table1(const Options& o) {
  Population pop = load_population(o);
  fs::create_directories(o.out_dir);

  Table table;
  table.columns = o.quantiles;
  for (int n : o.sample_sizes) {
    WeightScheme w = weights_for(o, n);
    EdgeworthModel model = build_model(pop, w, sigma_spec_for(o, n), o.workers);

    SimulationPlan plan;
    plan.replicates = o.replicates;
    plan.seed = simulation_seed(o, n);
    plan.weights = w;
    plan.mean_l = model.mean_l;
    plan.sigma_tilde = model.sigma_tilde;
    plan.workers = o.workers;
    EmpiricalCdf cdf = simulate_cdf(pop, plan);

    std::vector<double> frow, grow;
    for (double q : o.quantiles) {
      frow.push_back(cdf.quantile(q));
      grow.push_back(model.quantile(q));
    }
    table.labels.push_back("Ftilde_" + std::to_string(n));
    table.rows.push_back(std::move(frow));
    table.labels.push_back("G_" + std::to_string(n));
    table.rows.push_back(std::move(grow));
  }
  std::vector<double> phi_row;
  for (double q : o.quantiles) phi_row.push_back(normal_quantile(q));
  table.labels.push_back("Phi");
  table.rows.push_back(std::move(phi_row));

  std::string csv = table_csv(table);
  std::string text = table_text(table);
  write_text_file(fs::path(o.out_dir) / "table1.csv", csv);
  write_text_file(fs::path(o.out_dir) / "table1.txt", text);
  std::cout << (o.format == "csv" ? csv : text);
  return 0;
}

int cmd_diagnose(const Options& o) {
  Population pop = load_population(o);
  fs::create_directories(o.out_dir);

  constexpr double kEps = 0.1, kBandHi = 10.0, kGridStep = 1e-3;
  std::ostringstream out;
  for (int n : o.sample_sizes) {
    WeightScheme w = weights_for(o, n);
    SmoothnessReport sr = w.smoothness();
    out << "n = " << n << " (weights: " << w.origin() << ")\n";
    out << "  smoothness a = " << fmt17(sr.a) << "\n";
    out << "  smoothness b = " << fmt17(sr.b) << "\n";
    out << "  smoothness c = " << fmt17(sr.c) << "\n";
    out << "  smoothness d = " << fmt17(sr.d) << "\n";
    if (w.origin().rfind("trimmed", 0) == 0) {
      out << "  warning: trimmed weights have a score jump; the smoothness"
             " constants grow with n\n";
    }
    KernelSet kernels(pop, w);
    std::vector<double> g1 = kernels.g1_table(o.workers);
    LinearMoments lm = linear_moments(g1);
    // tau^2 = N p q = n (1 - n/N)
    double tau = std::sqrt(static_cast<double>(n) *
                           (1.0 - static_cast<double>(n) / pop.size()));
    double sup_b = charfn_sup(g1, lm.sigma1, kEps, kBandHi, kGridStep);
    double sup_t = charfn_sup(g1, lm.sigma1, kEps, std::max(kEps * 2, tau), kGridStep);
    out << "  charfn sup on [" << kEps << ", " << kBandHi << "] = " << fmt17(sup_b) << "\n";
    out << "  charfn sup on [" << kEps << ", tau=" << fmt3(tau) << "] = " << fmt17(sup_t)
        << "\n";
  }
  write_text_file(fs::path(o.out_dir) / "diagnose.txt", out.str());
  std::cout << out.str();
  return 0;
}

void add_options(CLI::App& app, Options& o) {
  app.add_option("--population", o.population_file, "Population file (one value per line)")
      ->check(CLI::ExistingFile);
  app.add_option("--logistic", o.logistic_n, "Simulate a logistic population of this size")
      ->check(CLI::PositiveNumber);
  app.add_option("--weights", o.weights_kind,
                 "Weight kind: constant|gini|center|trimmed:T1,T2|custom:FILE")
      ->capture_default_str();
  app.add_option("--weights-file", o.weights_file,
                 "Explicit weight list, one value per line")
      ->check(CLI::ExistingFile);
  app.add_option("--n", o.sample_sizes, "Sample sizes")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--q", o.quantiles, "Quantile levels in (0,1)")
      ->delimiter(',')
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  app.add_option("--replicates", o.replicates, "Monte-Carlo replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed; all randomness derives from it")
      ->capture_default_str();
  app.add_option("--sigma-mode", o.sigma_mode, "auto|exact|mc|linear")
      ->check(CLI::IsMember({"auto", "exact", "mc", "linear"}))
      ->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads (never changes outputs)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", o.format, "Stdout format")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Hoeffding-decomposition kernels, Edgeworth expansion and"
               " Monte-Carlo verification for finite population L-statistics"};
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value option file (flags override it)");
  app.require_subcommand(1);

  Options o;
  add_options(app, o);

  CLI::App* kernels_cmd = app.add_subcommand("kernels", "Export g1/g2 kernel tables as CSV");
  CLI::App* edgeworth_cmd =
      app.add_subcommand("edgeworth", "Edgeworth model report and CDF grid");
  edgeworth_cmd->add_option("--grid", o.grid, "CDF grid LO:HI:STEP")->capture_default_str();
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Empirical quantiles of the normalized statistic");
  simulate_cmd->add_flag("--dump-raw", o.dump_raw,
                         "Dump raw realizations (float64-le + sidecar)");
  CLI::App* table1_cmd = app.add_subcommand(
      "table1", "Empirical vs Edgeworth vs normal quantile comparison table");
  CLI::App* diagnose_cmd = app.add_subcommand(
      "diagnose", "Weight smoothness constants and characteristic-function bands");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (kernels_cmd->parsed()) return cmd_kernels(o);
    if (edgeworth_cmd->parsed()) return cmd_edgeworth(o);
    if (simulate_cmd->parsed()) return cmd_simulate(o);
    if (table1_cmd->parsed()) return cmd_table1(o);
    if (diagnose_cmd->parsed()) return cmd_diagnose(o);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fpl::cli
