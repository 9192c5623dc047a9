// Acceptance suite: each criterion prints one PASS/FAIL line; the process
// exit code is the number of failed criteria. `--criterion K` runs one.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fpl/cli.hpp"
#include "fpl/edgeworth.hpp"
#include "fpl/kernels.hpp"
#include "fpl/montecarlo.hpp"
#include "fpl/numeric.hpp"
#include "fpl/population.hpp"
#include "fpl/rng.hpp"
#include "fpl/weights.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace fpl;

namespace {

// Fixed master seed; the derived logistic population (mean 0.025, variance
// 3.228) is close in moments to the published example's (0.004, 3.270).
constexpr std::uint64_t kAcceptanceSeed = 777;

struct Check {
  bool ok = true;
  std::ostringstream log;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    FAILED: " << what << "\n";
    }
  }
};

bool rel_close(double a, double b, double tol, double scale = 1.0) {
  return std::abs(a - b) <= tol * std::max({1.0, scale, std::abs(a), std::abs(b)});
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("fplstat");
  for (const auto& a : args) argv.push_back(a.c_str());
  return fpl::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path work_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("fplstat_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// --- criterion 1: the table1 command reproduces the Phi^-1 row ------------

bool criterion1(Check& c) {
  fs::path dir = work_dir("c1");
  int rc = run_cli({"table1", "--logistic", "25", "--n", "4", "--replicates", "2000",
                    "--seed", "7", "--out", dir.string()});
  c.expect(rc == 0, "table1 exit code " + std::to_string(rc));
  if (rc != 0) return c.ok;

  std::istringstream csv(slurp(dir / "table1.csv"));
  std::string line, phi_line;
  while (std::getline(csv, line)) {
    if (line.rfind("Phi,", 0) == 0) phi_line = line;
  }
  c.expect(!phi_line.empty(), "Phi row present");
  if (phi_line.empty()) return c.ok;

  const double expect[9] = {-2.326, -1.645, -1.282, -0.674, 0.000,
                            0.674,  1.282,  1.645,  2.326};
  std::istringstream cells(phi_line);
  std::string cell;
  std::getline(cells, cell, ',');  // label
  for (int i = 0; i < 9; ++i) {
    c.expect(static_cast<bool>(std::getline(cells, cell, ',')), "Phi row has 9 cells");
    double v = std::stod(cell);
    c.expect(std::abs(v - expect[i]) <= 0.001,
             "Phi^-1 cell " + std::to_string(i) + " = " + cell);
  }
  return c.ok;
}

// --- criterion 2: closed forms == h-kernel oracle on the random suite -----

bool criterion2(Check& c) {
  for (int N = 6; N <= 10; ++N) {
    for (int variant = 0; variant < 2; ++variant) {
      Population p = Population::from_values(oracle::random_values(
          200 + static_cast<std::uint64_t>(10 * N + variant), N, -5.0, 5.0,
          variant == 1));
      for (int n = 1; n <= N - 1; ++n) {
        std::vector<WeightScheme> kinds;
        kinds.push_back(WeightScheme::center(n));
        std::vector<double> irregular(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
          irregular[static_cast<std::size_t>(j)] = ((j * 7) % 5) - 1.5;
        }
        kinds.push_back(WeightScheme::from_values(irregular));
        for (const auto& w : kinds) {
          KernelSet kern(p, w);
          for (int k = 1; k <= N; ++k) {
            c.expect(rel_close(kern.g1_at(k), kernels_from_h(p, w, {k}), 1e-10),
                     "g1 oracle mismatch N=" + std::to_string(N) +
                         " n=" + std::to_string(n) + " k=" + std::to_string(k));
          }
          if (KernelSet::g2_defined(N, n)) {
            for (int k = 1; k < N; ++k) {
              for (int l = k + 1; l <= N; ++l) {
                c.expect(
                    rel_close(kern.g2_at(k, l), kernels_from_h(p, w, {k, l}), 1e-10),
                    "g2 oracle mismatch N=" + std::to_string(N) +
                        " n=" + std::to_string(n));
              }
            }
          }
          if (KernelSet::g3_defined(N, n)) {
            for (int k = 1; k <= N - 2; ++k) {
              for (int l = k + 1; l <= N - 1; ++l) {
                for (int m = l + 1; m <= N; ++m) {
                  c.expect(rel_close(kern.g3_at(k, l, m),
                                     kernels_from_h(p, w, {k, l, m}), 1e-10),
                           "g3 oracle mismatch N=" + std::to_string(N) +
                               " n=" + std::to_string(n));
                }
              }
            }
          }
        }
      }
    }
  }
  return c.ok;
}

// --- criterion 3: exact Hoeffding reconstruction for n = 2, 3 -------------

bool criterion3(Check& c) {
  auto weight_kinds = [](int n) {
    std::vector<WeightScheme> kinds;
    kinds.push_back(WeightScheme::constant(n));
    kinds.push_back(WeightScheme::gini(n));
    kinds.push_back(WeightScheme::center(n));
    return kinds;
  };

  for (int N = 4; N <= 12; ++N) {
    Population p = Population::from_values(
        oracle::random_values(300 + static_cast<std::uint64_t>(N), N, -8.0, 8.0,
                              N % 3 == 0));
    for (const auto& w : weight_kinds(2)) {
      KernelSet kern(p, w);
      double el = oracle::expected_l(p, w.c());
      oracle::for_each_combination(N, 2, [&](const std::vector<int>& s) {
        double lhs = oracle::lstat({p.value(s[0]), p.value(s[1])}, w.c()) - el;
        double rhs = kern.g1_at(s[0]) + kern.g1_at(s[1]) + kern.g2_at(s[0], s[1]);
        c.expect(rel_close(lhs, rhs, 1e-10),
                 "n=2 reconstruction N=" + std::to_string(N));
      });
    }
  }

  for (int N = 6; N <= 12; ++N) {
    Population p = Population::from_values(
        oracle::random_values(330 + static_cast<std::uint64_t>(N), N, -8.0, 8.0,
                              N % 2 == 0));
    for (const auto& w : weight_kinds(3)) {
      KernelSet kern(p, w);
      double el = oracle::expected_l(p, w.c());
      oracle::for_each_combination(N, 3, [&](const std::vector<int>& s) {
        double lhs =
            oracle::lstat({p.value(s[0]), p.value(s[1]), p.value(s[2])}, w.c()) - el;
        double rhs = kern.g1_at(s[0]) + kern.g1_at(s[1]) + kern.g1_at(s[2]) +
                     kern.g2_at(s[0], s[1]) + kern.g2_at(s[0], s[2]) +
                     kern.g2_at(s[1], s[2]) + kern.g3_at(s[0], s[1], s[2]);
        c.expect(rel_close(lhs, rhs, 1e-10),
                 "n=3 reconstruction N=" + std::to_string(N));
      });
    }
  }
  return c.ok;
}

// --- criterion 4: invariant suite ------------------------------------------

bool criterion4(Check& c) {
  // centering of g1 for all four built-in weight kinds
  for (int N : {10, 37, 60}) {
    Population p = Population::from_values(
        oracle::random_values(400 + static_cast<std::uint64_t>(N), N, -20.0, 20.0,
                              N == 37));
    for (int n : {2, 5, 12}) {
      if (n > N - 2) continue;
      std::vector<WeightScheme> kinds{
          WeightScheme::constant(n), WeightScheme::gini(n),
          WeightScheme::trimmed(n, 0.25, 0.75), WeightScheme::center(n)};
      for (const auto& w : kinds) {
        auto g1 = g1_table(p, w);
        double sum = 0.0, scale = 0.0;
        for (double v : g1) {
          sum += v;
          scale = std::max(scale, std::abs(v));
        }
        c.expect(std::abs(sum) <= 1e-10 * std::max(1e-30, scale) * N,
                 "g1 centering N=" + std::to_string(N) + " n=" + std::to_string(n) +
                     " kind=" + w.origin());
      }
    }
  }

  // degeneracy of g2 and g3
  {
    const int N = 20;
    Population p = Population::from_values(oracle::random_values(444, N, -3.0, 9.0));
    for (int n : {4, 6}) {
      for (const auto& w : {WeightScheme::center(n), WeightScheme::gini(n)}) {
        KernelSet kern(p, w);
        for (int k = 1; k <= N; ++k) {
          double sum = 0.0, scale = 0.0;
          for (int l = 1; l <= N; ++l) {
            if (l == k) continue;
            double v = k < l ? kern.g2_at(k, l) : kern.g2_at(l, k);
            sum += v;
            scale = std::max(scale, std::abs(v));
          }
          c.expect(std::abs(sum) <= 1e-10 * std::max(1e-30, scale) * N,
                   "g2 degeneracy k=" + std::to_string(k));
        }
        for (int k = 1; k < N; ++k) {
          for (int l = k + 1; l <= N; ++l) {
            double sum = 0.0, scale = 0.0;
            for (int m = 1; m <= N; ++m) {
              if (m == k || m == l) continue;
              int a = std::min({k, l, m}), b3 = std::max({k, l, m});
              int b2 = k + l + m - a - b3;
              double v = kern.g3_at(a, b2, b3);
              sum += v;
              scale = std::max(scale, std::abs(v));
            }
            c.expect(std::abs(sum) <= 1e-10 * std::max(1e-30, scale) * N,
                     "g3 degeneracy (k,l)=(" + std::to_string(k) + "," +
                         std::to_string(l) + ")");
          }
        }
      }
    }
  }

  // hypergeometric normalization on random parameters
  {
    std::mt19937_64 rng(4444);
    for (int rep = 0; rep < 300; ++rep) {
      int N = 1 + static_cast<int>(rng() % 500);
      int n = static_cast<int>(rng() % static_cast<std::uint64_t>(N + 1));
      int i = static_cast<int>(rng() % static_cast<std::uint64_t>(N + 1));
      double sum = 0.0;
      for (int j = std::max(0, n - (N - i)); j <= std::min(n, i); ++j) {
        sum += hypergeom_pmf(N, n, i, j);
      }
      c.expect(std::abs(sum - 1.0) <= 1e-12,
               "pmf normalization N=" + std::to_string(N) + " n=" + std::to_string(n) +
                   " i=" + std::to_string(i));
    }
  }

  // conditional spacings vs enumeration for every N <= 8, m <= n, r
  for (int N = 2; N <= 8; ++N) {
    Population p = Population::from_values(
        oracle::random_values(470 + static_cast<std::uint64_t>(N), N, -4.0, 4.0,
                              N % 2 == 0));
    for (int n = 1; n < N; ++n) {
      for (int m = 0; m <= n; ++m) {
        oracle::for_each_combination(N, m, [&](const std::vector<int>& fixed) {
          for (int r = 0; r <= n; ++r) {
            double closed = expected_spacing_given(p, n, fixed, r);
            double brute = oracle::expected_spacing(p, n, fixed, r);
            c.expect(rel_close(closed, brute, 1e-12),
                     "spacing N=" + std::to_string(N) + " n=" + std::to_string(n) +
                         " m=" + std::to_string(m) + " r=" + std::to_string(r));
          }
        });
      }
    }
  }

  // coefficient bounds |phi| <= 4 |phi'|, |theta| <= 27 |theta'|
  for (int N : {6, 17, 33, 50}) {
    auto part = [N](int idx, int i) {
      return (i >= idx ? 1.0 : 0.0) - static_cast<double>(i) / N;
    };
    for (int k = 1; k < N; ++k) {
      for (int l = k + 1; l <= N; ++l) {
        for (int i = 1; i <= N - 1; ++i) {
          c.expect(std::abs(g2_coefficient(N, k, l, i)) <=
                       4.0 * std::abs(part(k, i) * part(l, i)) + 1e-12,
                   "phi bound N=" + std::to_string(N));
        }
      }
    }
    for (int k = 1; k <= N - 2; ++k) {
      for (int l = k + 1; l <= N - 1; ++l) {
        for (int m = l + 1; m <= N; ++m) {
          for (int i = 1; i <= N - 1; ++i) {
            c.expect(std::abs(g3_coefficient(N, k, l, m, i)) <=
                         27.0 * std::abs(part(k, i) * part(l, i) * part(m, i)) + 1e-12,
                     "theta bound N=" + std::to_string(N));
          }
        }
      }
    }
  }
  return c.ok;
}

// --- criterion 5: qualitative Table-1 reproduction --------------------------

bool criterion5(Check& c) {
  const int N = 100;
  const long long R = 1'000'000;
  const std::vector<int> sizes{5, 15, 30};
  const std::vector<double> all_q{0.01, 0.05, 0.10, 0.25, 0.50,
                                  0.75, 0.90, 0.95, 0.99};
  const std::vector<double> tail_q{0.01, 0.05, 0.95, 0.99};

  // published quantile rows for samples of size 5, 15, 30 (empirical row
  // first, expansion row second)
  const double published[6][9] = {
      {-2.120, -1.534, -1.224, -0.692, -0.063, 0.633, 1.319, 1.750, 2.581},
      {-2.078, -1.557, -1.249, -0.704, -0.058, 0.639, 1.323, 1.754, 2.563},
      {-2.159, -1.577, -1.253, -0.694, -0.040, 0.653, 1.308, 1.712, 2.489},
      {-2.160, -1.585, -1.259, -0.695, -0.039, 0.652, 1.308, 1.714, 2.487},
      {-2.199, -1.604, -1.268, -0.689, -0.026, 0.663, 1.299, 1.688, 2.428},
      {-2.220, -1.606, -1.267, -0.688, -0.025, 0.660, 1.297, 1.687, 2.430}};

  Population pop = Population::simulate_logistic(
      N, derive_seed(kAcceptanceSeed, kSeedTagPopulation));
  c.log << "    population mean = " << pop.mean()
        << ", variance = " << pop.central_variance() << "\n";

  int better = 0, total = 0;
  int in_band = 0, band_total = 0;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    int n = sizes[si];
    WeightScheme w = WeightScheme::center(n);

    SigmaSpec sigma;
    sigma.mode = SigmaMode::kMonteCarlo;  // exact enumeration disabled here
    sigma.replicates = R;
    sigma.seed = derive_seed(derive_seed(kAcceptanceSeed, kSeedTagSigma),
                             static_cast<std::uint64_t>(n));
    sigma.workers = 4;
    EdgeworthModel model = build_model(pop, w, sigma, 4);

    SimulationPlan plan;
    plan.replicates = R;
    plan.seed = derive_seed(derive_seed(kAcceptanceSeed, kSeedTagSimulation),
                            static_cast<std::uint64_t>(n));
    plan.weights = w;
    plan.mean_l = model.mean_l;
    plan.sigma_tilde = model.sigma_tilde;
    plan.workers = 4;
    EmpiricalCdf cdf = simulate_cdf(pop, plan);

    for (double q : tail_q) {
      double f = cdf.quantile(q);
      double g = model.quantile(q);
      double z = normal_quantile(q);
      bool win = std::abs(g - f) < std::abs(z - f);
      better += win ? 1 : 0;
      ++total;
      c.log << "    n=" << n << " q=" << q << ": Ftilde=" << f << " G=" << g
            << " Phi=" << z << (win ? "  [expansion closer]" : "  [normal closer]")
            << "\n";
    }
    for (std::size_t qi = 0; qi < all_q.size(); ++qi) {
      double f = cdf.quantile(all_q[qi]);
      double g = model.quantile(all_q[qi]);
      in_band += std::abs(f - published[2 * si][qi]) <= 0.15 ? 1 : 0;
      in_band += std::abs(g - published[2 * si + 1][qi]) <= 0.15 ? 1 : 0;
      band_total += 2;
    }
  }
  c.log << "    expansion beats normal in " << better << "/" << total
        << " tail cells; " << in_band << "/" << band_total
        << " cells within 0.15 of the published table\n";
  c.expect(better >= 10, "expansion closer than normal in at least 10 of 12 cells");
  c.expect(5 * in_band >= 4 * band_total,
           "at least 80% of cells within 0.15 of the published quantiles");
  return c.ok;
}

// --- criterion 6: hand-verifiable fixture ----------------------------------

bool criterion6(Check& c) {
  // population {0,1,2,3,4}, n = 2, weights (0,2): exhaustive enumeration
  // gives g1 = (-2/3,-2/3,-1/3,1/3,4/3), sigma1^2 = 26/45, E g1^3 = 16/45,
  // E g2 g1 g1 = -2/15, tau^2 = 6/5, hence
  //   alpha = (16/45)/(26/45)^{3/2} = 0.80959201782187312...
  //   kappa = (6/5)(-2/15)/(26/45)^{3/2} = -0.36431640801984290...
  // and sigma_tilde^2 = 2 exactly.
  const double kAlpha = 0.80959201782187312;
  const double kKappa = -0.36431640801984290;

  Population p = Population::from_values({0, 1, 2, 3, 4});
  WeightScheme w = WeightScheme::from_values({0, 2});

  SigmaSpec exact;
  exact.mode = SigmaMode::kExact;
  EdgeworthModel m = build_model(p, w, exact);

  const double expect_g1[5] = {-2.0 / 3, -2.0 / 3, -1.0 / 3, 1.0 / 3, 4.0 / 3};
  auto g1 = g1_table(p, w);
  for (int k = 0; k < 5; ++k) {
    c.expect(std::abs(g1[static_cast<std::size_t>(k)] - expect_g1[k]) <= 1e-12,
             "g1[" + std::to_string(k) + "]");
  }
  c.expect(std::abs(m.alpha - kAlpha) <= 1e-5, "alpha within 1e-5 of enumeration");
  c.expect(std::abs(m.kappa - kKappa) <= 1e-5, "kappa within 1e-5 of enumeration");

  // sigma_tilde (exact mode) against a test-side full enumeration
  double el = oracle::expected_l(p, w.c());
  double ss = 0.0;
  long long count = 0;
  oracle::for_each_combination(5, 2, [&](const std::vector<int>& s) {
    double dev = oracle::lstat({p.value(s[0]), p.value(s[1])}, w.c()) - el;
    ss += dev * dev;
    ++count;
  });
  double var_enum = 2.0 * ss / static_cast<double>(count);
  c.expect(rel_close(m.sigma_tilde * m.sigma_tilde, var_enum, 1e-12),
           "sigma_tilde^2 == enumeration");
  c.log << "    alpha = " << m.alpha << ", kappa = " << m.kappa
        << ", sigma_tilde^2 = " << m.sigma_tilde * m.sigma_tilde << "\n";
  return c.ok;
}

// --- criterion 7: worker count never changes bytes --------------------------

bool criterion7(Check& c) {
  fs::path d1 = work_dir("c7_w1");
  fs::path d2 = work_dir("c7_w4");
  std::vector<std::string> base{"table1", "--logistic", "100", "--n", "5,15",
                                "--replicates", "100000", "--seed",
                                std::to_string(kAcceptanceSeed), "--sigma-mode", "mc"};
  auto a1 = base;
  a1.insert(a1.end(), {"--workers", "1", "--out", d1.string()});
  auto a2 = base;
  a2.insert(a2.end(), {"--workers", "4", "--out", d2.string()});
  c.expect(run_cli(a1) == 0, "workers=1 run");
  c.expect(run_cli(a2) == 0, "workers=4 run");
  c.expect(slurp(d1 / "table1.csv") == slurp(d2 / "table1.csv"),
           "table1.csv byte-identical across worker counts");

  std::vector<std::string> kb{"kernels", "--logistic", "40", "--n", "6", "--seed",
                              "55"};
  auto k1 = kb;
  k1.insert(k1.end(), {"--workers", "1", "--out", (d1 / "k").string()});
  auto k2 = kb;
  k2.insert(k2.end(), {"--workers", "3", "--out", (d2 / "k").string()});
  c.expect(run_cli(k1) == 0, "kernels workers=1 run");
  c.expect(run_cli(k2) == 0, "kernels workers=3 run");
  c.expect(slurp(d1 / "k" / "g1.csv") == slurp(d2 / "k" / "g1.csv"),
           "g1.csv byte-identical");
  c.expect(slurp(d1 / "k" / "g2.csv") == slurp(d2 / "k" / "g2.csv"),
           "g2.csv byte-identical");
  return c.ok;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 = no stated budget
  std::function<bool(Check&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc) {
      selected = std::atoi(argv[a + 1]);
      ++a;
    }
  }

  std::vector<Criterion> criteria{
      {1, "normal-quantile row of table1", 1.0, criterion1},
      {2, "closed-form kernels match the h-kernel oracle", 120.0, criterion2},
      {3, "exact Hoeffding reconstruction (n = 2, 3)", 60.0, criterion3},
      {4, "invariant suite", 120.0, criterion4},
      {5, "qualitative Table-1 reproduction (N=100, R=1e6)", 1800.0, criterion5},
      {6, "hand-verifiable fixture {0,1,2,3,4}, n=2, c=(0,2)", 1.0, criterion6},
      {7, "worker count never changes output bytes", 0.0, criterion7},
  };

  int failures = 0;
  for (auto& crit : criteria) {
    if (selected != 0 && crit.id != selected) continue;
    Check check;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = crit.fn(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.log << "    exception: " << e.what() << "\n";
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (crit.budget_seconds > 0.0 && elapsed > crit.budget_seconds) {
      check.ok = false;
      check.log << "    runtime budget exceeded: " << elapsed << " s > "
                << crit.budget_seconds << " s\n";
    }
    ok = ok && check.ok;
    std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", crit.id,
                crit.title, elapsed);
    std::string details = check.log.str();
    if (!details.empty()) std::fputs(details.c_str(), stdout);
    failures += ok ? 0 : 1;
  }
  return failures;
}
