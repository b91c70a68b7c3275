// Acceptance suite: one pass/fail line per criterion.  argv[1] must be the
// path to the command-line binary (used by the byte-determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hamcube/hamcube.hpp"

using namespace hamcube;

namespace {

int failures = 0;

void line(int idx, bool ok, const std::string& detail) {
  std::cout << "criterion " << idx << ": " << (ok ? "PASS" : "FAIL") << " - " << detail << "\n";
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- criterion 1: LSI + Talagrand-gradient entropy bounds, 1000 draws -----
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  int fails = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const int n = 1 + static_cast<int>(k % 8);
    const CubeFunction g = random_nonnegative(n, k);
    if (check_lsi(g).status == CheckStatus::Fail) ++fails;
    if (check_entGT(g).status == CheckStatus::Fail) ++fails;
  }
  const double secs = seconds_since(t0);
  line(1, fails == 0 && secs < 30.0,
       "lsi/ent-talagrand-gradient on 1000 nonnegative draws, " + std::to_string(fails) +
           " failures, " + fmt_secs(secs));
}

// --- criterion 2: Orlicz entropy bound + half-zero ratio reports ----------
void criterion2() {
  int fails = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const int n = 1 + static_cast<int>(k % 8);
    if (check_ent_orlicz(random_nonnegative(n, k)).status == CheckStatus::Fail) ++fails;
  }
  int reports = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const int n = 2 + static_cast<int>(k % 7);
    const auto r = check_talagrand(random_half_zero(n, k));
    if (r.status == CheckStatus::Report) ++reports;
  }
  line(2, fails == 0 && reports == 200,
       "ent-orlicz " + std::to_string(fails) + " failures; " + std::to_string(reports) +
           "/200 half-zero ratio reports");
}

// --- criterion 3: separate convexity + derivative chord bound -------------
void criterion3() {
  const SpaceDescriptor kinds[] = {SpaceDescriptor::scalar(), SpaceDescriptor::euclidean(3),
                                   SpaceDescriptor::schatten(3.0, 3),
                                   SpaceDescriptor::operator_norm(3)};
  const double ps[] = {2.0, 4.0, 8.0};
  int convex_fails = 0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const SpaceDescriptor& sp = kinds[(k / 10) % 4];
    const CubeFunction f = random_function(sp, 3, 7000 + k / 10);
    CounterRng rng(k, 0xacceULL);
    const std::size_t x = rng.next_u64() % f.vertex_count();
    const int i = 1 + static_cast<int>(rng.next_u64() % 3);
    const auto r = check_separate_convexity(f, sp, ps[k % 3], x, i, rng.next_uniform(-3, 3),
                                            rng.next_uniform(-3, 3));
    if (r.status == CheckStatus::Fail) ++convex_fails;
  }
  int deriv_fails = 0;
  for (const auto& sp : kinds) {
    for (std::uint64_t k = 0; k < 200; ++k) {
      const CubeFunction f = random_function(sp, 3, 8000 + k);
      for (double eps : {1e-3, 1.0})
        if (check_deriv_bound(f, sp, 2.0, eps).status == CheckStatus::Fail) ++deriv_fails;
    }
  }
  line(3, convex_fails == 0 && deriv_fails == 0,
       "separate-convexity " + std::to_string(convex_fails) + "/10000 failures; deriv-chord-bound " +
           std::to_string(deriv_fails) + " failures over 200 draws per space kind");
}

// --- criterion 4: orlicz2 / diff1 / beta-ode moment chain ------------------
void criterion4() {
  const SpaceDescriptor spaces[] = {SpaceDescriptor::scalar(), SpaceDescriptor::euclidean(3),
                                    SpaceDescriptor::schatten(3.0, 3)};
  const GradientMode modes[] = {GradientMode::gamma(), GradientMode::p_exact()};
  int fails = 0, total = 0;
  for (const auto& mode : modes) {
    for (const auto& sp : spaces) {
      for (std::uint64_t k = 0; k < 100; ++k) {
        const CubeFunction f = random_function(sp, 3, 9000 + k, mode);
        for (double p = 2.0; p <= 16.0 + 1e-12; p += 1.0) {
          if (check_orlicz2(f, sp, p, mode).status == CheckStatus::Fail) ++fails;
          if (check_diff1(f, sp, p, mode).status == CheckStatus::Fail) ++fails;
          if (check_beta_ode(f, sp, p, mode).status == CheckStatus::Fail) ++fails;
          total += 3;
        }
      }
    }
  }
  line(4, fails == 0,
       "moment chain " + std::to_string(fails) + "/" + std::to_string(total) +
           " failures (300 normalized functions per gradient mode)");
}

// --- criterion 5: gamma comparison on the baseline family ------------------
void criterion5() {
  const SpaceDescriptor sc = SpaceDescriptor::scalar();
  std::vector<double> grid;
  for (double p = 2.0; p <= 16.0 + 1e-12; p += 1.0) grid.push_back(p);
  bool ok = true;
  std::string detail;
  for (int n : {2, 4, 8, 16}) {
    const Witness w = baseline_witness(n, 2.0);
    const auto r = check_gamma_comparison(w.function, sc, grid);
    const double resid = std::stod(r.params.at("gamma_ode_resid"));
    if (r.status != CheckStatus::Pass || resid >= 1e-6) {
      ok = false;
      detail += " n=" + std::to_string(n) + ":" + status_name(r.status);
    }
  }
  line(5, ok, "gamma-comparison passes on baselines n in {2,4,8,16}, ode residual < 1e-6" + detail);
}

// --- criterion 6: sqrt(p) growth bound at (Q, C) = (2, 1) -------------------
void criterion6() {
  const SpaceDescriptor sc = SpaceDescriptor::scalar();
  const GradientMode mode = GradientMode::p_exact();
  const Witness w = baseline_witness(4, 4.0);

  const auto r4 = check_sqrtp(w.function, sc, 4.0, mode);
  const auto r2 = check_sqrtp(w.function, sc, 2.0, mode);
  const bool baseline_ok = std::abs(r4.lhs - std::pow(2.5, 0.25)) < 1e-9 &&
                           std::abs(r4.rhs - std::sqrt(8.0)) < 1e-9 &&
                           std::abs(r2.lhs - 1.0) < 1e-9 && std::abs(r2.rhs - 2.0) < 1e-9 &&
                           r4.status == CheckStatus::Pass && r2.status == CheckStatus::Pass;

  int fails = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const CubeFunction f = random_function(sc, 4, 600 + k, mode, true);
    for (double p = 2.0; p <= 16.0 + 1e-12; p += 1.0)
      if (check_sqrtp(f, sc, p, mode).status == CheckStatus::Fail) ++fails;
  }
  line(6, baseline_ok && fails == 0,
       "baseline lhs " + format_double(r4.lhs) + " <= sqrt(8) at p=4, lhs 1 <= 2 at p=2; " +
           std::to_string(fails) + " failures on the random normalized suite");
}

// --- criterion 7: exponential moment vs series partial sums ----------------
void criterion7() {
  SuiteConfig config;
  config.seed = 7;
  const auto results = run_suite(config);
  const double rhs_expected = std::exp(4.0);  // c0 = 1, C = 1, Q = 2
  int rows = 0;
  bool ok = true;
  for (const auto& r : results) {
    if (r.name != "exp-moment") continue;
    ++rows;
    if (r.status == CheckStatus::Fail) ok = false;
    if (std::stod(r.params.at("series_gap")) >= 1e-8) ok = false;
    if (std::abs(r.rhs - rhs_expected) > 1e-9) ok = false;
  }
  line(7, ok && rows > 0,
       std::to_string(rows) + " exp-moment rows: series gap < 1e-8 at tau = 1/(4e), bound e^4");
}

// --- criterion 8: matrix-space suite ---------------------------------------
void criterion8() {
  int svo_fails = 0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    CounterRng rng(k, 0x5ec4ULL);
    const int d = 2 + static_cast<int>(k % 7);  // d <= 8
    std::vector<double> a(static_cast<std::size_t>(d) * d);
    for (double& v : a) v = rng.next_normal();
    const double p = 2.0 + static_cast<double>(k % 4) * 2.0;
    if (check_schatten_vs_operator(a, d, p).status == CheckStatus::Fail) ++svo_fails;
  }

  int m2_fails = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(k % 4);
    for (double p : {2.0, 2.5}) {
      const SpaceDescriptor sp = SpaceDescriptor::schatten(p, 8);
      const CubeFunction f = random_function(sp, n, 400 + k, std::nullopt, true);
      const MatrixFunction mf = normalize_p_sq(MatrixFunction(f, 8), p);
      if (check_matrix_moments(mf, p, MomentVariant::M2).status == CheckStatus::Fail) ++m2_fails;
      min_ratio = std::min(min_ratio, std::stod(khintchine_report(mf, p, 0).params.at("ratio")));
    }
  }
  line(8, svo_fails == 0 && m2_fails == 0 && min_ratio > 0.0,
       "schatten-vs-operator " + std::to_string(svo_fails) + "/10000 failures; m2 " +
           std::to_string(m2_fails) + "/200 failures; min khintchine ratio " +
           format_double(min_ratio));
}

// --- criterion 9: extremal search and sharpness regime ---------------------
void criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  SearchConfig config;
  config.n = 4;
  config.p = 8.0;
  config.restarts = 8;
  config.iterations = 5000;
  config.seed = 1;
  const Witness w = maximize_beta(config);
  const double base = baseline_witness(4, 8.0).achieved;
  const SharpnessReport sr = sharpness_report(4.0, 0.25, w);
  const double secs = seconds_since(t0);
  const bool ok = w.constraint_residual <= 1e-8 && w.achieved >= base - 1e-9 &&
                  std::abs(sr.p - 4.0) < 1e-12 && sr.target == 4.0 && secs < 300.0;
  line(9, ok,
       "witness achieved " + format_double(w.achieved) + " >= baseline " + format_double(base) +
           ", residual " + format_double(w.constraint_residual) + "; sharpness achieved " +
           format_double(sr.achieved) + " vs Q=4 (met: " + (sr.target_met ? "yes" : "no") + "), " +
           fmt_secs(secs));
}

// --- criterion 10: byte-identical reports from two seeded CLI runs ---------
void criterion10(const std::string& cli) {
  const std::string a = "acceptance_report_a.json", b = "acceptance_report_b.json";
  const std::string base = "\"" + cli + "\" verify --seed 7 --trials 10 --out ";
  const int rc1 = std::system((base + a).c_str());
  const int rc2 = std::system((base + b).c_str());
  const std::string ca = read_file(a), cb = read_file(b);
  const bool ok = rc1 == 0 && rc2 == 0 && !ca.empty() && ca == cb;
  std::remove(a.c_str());
  std::remove(b.c_str());
  line(10, ok,
       "two 'verify --seed 7' runs produced " + std::to_string(ca.size()) + " identical bytes");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli-binary>\n";
    return 2;
  }
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10(argv[1]);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
