// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
// Reference values come from the independent oracles in oracles.hpp; the
// library is only used for the quantity under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "credal/entropy.hpp"
#include "credal/intervals.hpp"
#include "credal/io.hpp"
#include "credal/metrics.hpp"
#include "credal/pia.hpp"
#include "credal/pipeline.hpp"
#include "credal/set_functions.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace credal;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ProbabilityVector pv(std::vector<double> v) { return ProbabilityVector::validated(std::move(v)); }

std::filesystem::path tmp_dir() {
  std::filesystem::path dir(CREDAL_TEST_TMP);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CREDAL_CLI_PATH + "\" " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Weather example end to end.
Outcome weather() {
  const auto start = Clock::now();
  const auto preds = PredictionSet::from_rows({{0.2, 0.6, 0.2}, {0.1, 0.2, 0.7}, {0.7, 0.1, 0.2}});
  const auto s = extract_intervals(preds);
  const bool bounds_ok = s == IntervalSystem({0.1, 0.1, 0.2}, {0.7, 0.6, 0.7});

  const auto pstar = intersection_probability(s);
  const double expect[] = {0.325, 0.2875, 0.3875};
  double pstar_err = 0.0;
  for (std::size_t k = 0; k < 3; ++k) pstar_err = std::max(pstar_err, std::abs(pstar[k] - expect[k]));

  const double up = upper_entropy(s).value;
  const double up_err = std::abs(up - std::log2(3.0));
  const double gh = generalized_hartley(s);
  const double gh_err = std::abs(gh - oracle::gh_naive(s));
  const double elapsed = seconds_since(start);

  Outcome o;
  o.pass = bounds_ok && pstar_err <= 1e-12 && up_err <= 1e-9 && gh_err <= 1e-9 && elapsed < 1.0 &&
           std::abs(gh - 0.8340) < 5e-5;
  o.detail = std::string("intervals ") + (bounds_ok ? "exact" : "WRONG") + ", p* err " +
             fmt("%.2e", pstar_err) + ", upper err " + fmt("%.2e", up_err) + ", GH " +
             fmt("%.6f", gh) + " (oracle err " + fmt("%.2e", gh_err) + "), " + fmt("%.3f s", elapsed);
  return o;
}

// 2. Properness of extracted intervals.
Outcome properness() {
  oracle::Rng rng(2002);
  std::size_t failures = 0;
  double worst = 0.0;  // largest violation of sum L <= 1 <= sum U
  for (int trial = 0; trial < 10000; ++trial) {
    const auto preds = oracle::random_prediction_set(rng, oracle::uniform_int(rng, 1, 50),
                                                     oracle::uniform_int(rng, 2, 100));
    const auto s = extract_intervals(preds);
    if (!is_proper(s)) ++failures;
    worst = std::max({worst, s.lower_sum() - 1.0, 1.0 - s.upper_sum()});
  }
  return {failures == 0, std::to_string(failures) + " improper of 10000, worst excess " +
                             fmt("%.2e", std::max(worst, 0.0))};
}

// 3. Upper entropy vs grid and projected ascent.
Outcome upper_exactness() {
  const auto start = Clock::now();
  oracle::Rng rng(3003);
  double worst_grid = 0.0, worst_ascent = 0.0;
  std::size_t fails = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t c = 2 + static_cast<std::size_t>(trial % 3);
    const auto s = oracle::random_proper_system(rng, c);
    const double wf = upper_entropy(s).value;
    const double grid = oracle::upper_entropy_grid(s, 1e-3);
    double ascent = -1.0;
    for (int i = 0; i < 10; ++i) {
      ascent = std::max(ascent, oracle::projected_ascent(s, oracle::random_feasible_point(rng, s)));
    }
    const double dg = std::abs(wf - grid);
    const double da = std::abs(wf - ascent);
    worst_grid = std::max(worst_grid, dg);
    worst_ascent = std::max(worst_ascent, da);
    if (dg > 5e-3 || da > 1e-6) ++fails;
  }
  const double elapsed = seconds_since(start);
  return {fails == 0 && elapsed < 120.0,
          std::to_string(fails) + " failures of 1000, max |wf-grid| " + fmt("%.2e", worst_grid) +
              ", max |wf-ascent| " + fmt("%.2e", worst_ascent) + ", " + fmt("%.1f s", elapsed)};
}

// 4. Lower entropy exact vs vertex oracle; heuristic gap.
Outcome lower_exactness() {
  const auto start = Clock::now();
  oracle::Rng rng(4004);
  LowerEntropyOptions exact;
  exact.mode = LowerEntropyMode::Exact;
  LowerEntropyOptions heur;
  heur.mode = LowerEntropyMode::Heuristic;
  std::size_t exact_fails = 0, below_exact = 0;
  double worst_exact = 0.0;
  std::vector<double> gaps;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t c = oracle::uniform_int(rng, 2, 6);
    const auto s = oracle::random_proper_system(rng, c);
    const double ex = lower_entropy(s, exact).value;
    const double ref = oracle::lower_entropy_vertices(s).value;
    const double d = std::abs(ex - ref);
    worst_exact = std::max(worst_exact, d);
    if (d > 1e-12) ++exact_fails;
    const double gap = lower_entropy(s, heur).value - ex;
    if (gap < -1e-12) ++below_exact;
    gaps.push_back(gap);
  }
  std::sort(gaps.begin(), gaps.end());
  const auto within = static_cast<std::size_t>(
      std::count_if(gaps.begin(), gaps.end(), [](double g) { return g <= 0.05; }));
  const auto q = [&](double f) { return gaps[static_cast<std::size_t>(f * (gaps.size() - 1))]; };
  const std::size_t zero = static_cast<std::size_t>(
      std::count_if(gaps.begin(), gaps.end(), [](double g) { return g <= 1e-12; }));
  const double elapsed = seconds_since(start);
  Outcome o;
  o.pass = exact_fails == 0 && below_exact == 0 && within >= 990 && elapsed < 120.0;
  o.detail = "exact: " + std::to_string(exact_fails) + " mismatches (max " + fmt("%.2e", worst_exact) +
             "); heuristic within 0.05 bits: " + std::to_string(within) + "/1000, gap==0: " +
             std::to_string(zero) + ", p50 " + fmt("%.2e", q(0.5)) + ", p90 " + fmt("%.2e", q(0.9)) +
             ", p99 " + fmt("%.2e", q(0.99)) + ", max " + fmt("%.2e", gaps.back()) + ", " +
             fmt("%.1f s", elapsed);
  return o;
}

// 5. EU nonnegativity and the entropy envelope.
Outcome envelope() {
  oracle::Rng rng(5005);
  std::size_t eu_fails = 0, env_fails = 0;
  double min_eu = 1e300;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto preds = oracle::random_prediction_set(rng, oracle::uniform_int(rng, 1, 20),
                                                     oracle::uniform_int(rng, 2, 16));
    const auto s = extract_intervals(preds);
    const auto up = upper_entropy(s).value;
    const auto low = lower_entropy(s).value;
    const double eu = up - low;
    min_eu = std::min(min_eu, eu);
    if (eu < -1e-9) ++eu_fails;
    for (std::size_t n = 0; n < preds.samples(); ++n) {
      const double h = oracle::entropy({preds.row(n).begin(), preds.row(n).end()});
      if (h < low - 1e-9 || h > up + 1e-9) ++env_fails;
    }
  }
  return {eu_fails == 0 && env_fails == 0,
          std::to_string(eu_fails) + " negative EU, " + std::to_string(env_fails) +
              " envelope violations over 10000 systems, min eu " + fmt("%.3e", min_eu)};
}

// 6. PIA soundness.
Outcome pia_soundness() {
  oracle::Rng rng(6006);
  std::size_t violations = 0, improper = 0, accepted = 0, proposed = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t c = oracle::uniform_int(rng, 5, 30);
    const auto s = oracle::random_proper_system(rng, c);
    const std::size_t j = oracle::uniform_int(rng, 2, c);
    const auto r = approximate_intervals(s, intersection_probability(s), j);
    if (!is_proper(r.intervals)) ++improper;
    int got = 0;
    while (got < 100) {
      ++proposed;
      const auto p = oracle::propose_member(rng, s);
      if (!p) continue;
      ++got;
      const auto q = coarsen(r, *p);
      for (std::size_t k = 0; k < j; ++k) {
        if (q[k] < r.intervals.lower(k) - 1e-9 || q[k] > r.intervals.upper(k) + 1e-9) {
          ++violations;
          break;
        }
      }
    }
    accepted += static_cast<std::size_t>(got);
  }
  return {violations == 0 && improper == 0,
          std::to_string(violations) + " bound violations in " + std::to_string(accepted) +
              " members (" + std::to_string(proposed) + " proposals), " + std::to_string(improper) +
              " improper reduced systems"};
}

// 7. Möbius masses and GH.
Outcome mobius() {
  oracle::Rng rng(7007);
  std::size_t total_fails = 0, roundtrip_fails = 0;
  double worst_total = 0.0, worst_rt = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t c = oracle::uniform_int(rng, 2, 8);
    const auto s = oracle::random_proper_system(rng, c);
    const auto m = mobius_masses(s);
    const double dt = std::abs(m.total() - 1.0);
    worst_total = std::max(worst_total, dt);
    if (dt > 1e-9) ++total_fails;
    const Subset full = (Subset{1} << c) - 1;
    for (Subset b = 0; b <= full; ++b) {
      double acc = 0.0;
      for (const auto& [a, mass] : m.masses) {
        if ((a & ~b) == 0) acc += mass;
      }
      const double d = std::abs(acc - oracle::nu(s, b));
      worst_rt = std::max(worst_rt, d);
      if (d > 1e-9) {
        ++roundtrip_fails;
        break;
      }
    }
  }
  std::size_t exact_fails = 0;
  for (std::size_t c = 2; c <= 10; ++c) {
    const auto p = oracle::dirichlet(rng, c, 1.0);
    if (generalized_hartley(IntervalSystem::point(pv(p))) != 0.0) ++exact_fails;
    if (generalized_hartley(IntervalSystem::vacuous(c)) != std::log2(static_cast<double>(c))) ++exact_fails;
  }
  return {total_fails == 0 && roundtrip_fails == 0 && exact_fails == 0,
          "mass-sum failures " + std::to_string(total_fails) + " (max " + fmt("%.2e", worst_total) +
              "), round-trip failures " + std::to_string(roundtrip_fails) + " (max " +
              fmt("%.2e", worst_rt) + "), point/vacuous GH mismatches " + std::to_string(exact_fails)};
}

// 8. Metric oracles.
Outcome metrics() {
  oracle::Rng rng(8008);
  std::size_t auroc_fails = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t levels = oracle::uniform_int(rng, 1, 10);
    std::vector<double> id(oracle::uniform_int(rng, 1, 60)), ood(oracle::uniform_int(rng, 1, 60));
    for (auto& v : id) v = static_cast<double>(oracle::uniform_int(rng, 0, levels)) * 0.1;
    for (auto& v : ood) v = static_cast<double>(oracle::uniform_int(rng, 0, levels)) * 0.1;
    if (auroc(id, ood) != oracle::auroc_pairs(id, ood)) ++auroc_fails;
  }
  const double ap = auprc(std::vector<double>{0.1, 0.4}, std::vector<double>{0.3, 0.9});
  const double ap_ref = 0.5 * 1.0 + 0.5 * (2.0 / 3.0);
  const std::vector<ProbabilityVector> two{pv({0.8, 0.2}), pv({0.8, 0.2})};
  const double e = ece(two, std::vector<std::size_t>{0, 1});
  const double n = nll(std::vector<ProbabilityVector>{pv({0.5, 0.5})}, std::vector<std::size_t>{0});
  const bool ok = auroc_fails == 0 && std::abs(ap - ap_ref) <= 1e-12 && e == std::abs(0.5 - 0.8) &&
                  std::abs(n - std::log(2.0)) <= 1e-12;
  return {ok, "AUROC mismatches " + std::to_string(auroc_fails) + "/1000, AP " + fmt("%.15f", ap) +
                  ", ECE " + fmt("%.17g", e) + ", NLL " + fmt("%.15f", n)};
}

// 9. Synthetic OOD smoke test through the CLI.
Outcome synthetic_ood() {
  const auto dir = tmp_dir();
  const auto id = (dir / "synth_id.jsonl").string();
  const auto ood = (dir / "synth_ood.jsonl").string();
  if (run_cli("synth --seed 42 --id-out " + id + " --ood-out " + ood) != 0) {
    return {false, "synth command failed"};
  }
  auto auroc_for = [&](const std::string& measure, double& out) {
    const auto report = (dir / ("ood_" + measure + ".json")).string();
    if (run_cli("ood " + id + " " + ood + " --measure " + measure + " --uncertainty eu -o " + report) != 0) {
      return false;
    }
    const auto doc = nlohmann::json::parse(slurp(report));
    out = doc["detection"]["auroc"].get<double>();
    return true;
  };
  double credal = 0.0, baseline = 0.0;
  if (!auroc_for("credal-entropy", credal) || !auroc_for("baseline", baseline)) {
    return {false, "ood command failed"};
  }
  return {credal >= 0.95 && credal >= baseline,
          "credal EU AUROC " + fmt("%.4f", credal) + ", baseline EU AUROC " + fmt("%.4f", baseline)};
}

// 10. Timing budget at C = 100.
Outcome timing() {
  oracle::Rng rng(1010);
  std::vector<PredictionSet> sets;
  for (int i = 0; i < 50; ++i) sets.push_back(oracle::random_prediction_set(rng, 10, 100));
  RunConfig reduced;
  reduced.pia_j = 10;
  RunConfig full;
  full.pia_j = 100;

  double worst_reduced = 0.0, total_reduced = 0.0, worst_full = 0.0;
  for (const auto& p : sets) {
    auto start = Clock::now();
    const auto r = analyze_instance(p, reduced);
    const double t = seconds_since(start);
    worst_reduced = std::max(worst_reduced, t);
    total_reduced += t;
    if (r.reduced_classes != 10) return {false, "J=10 path did not reduce"};
  }
  for (std::size_t i = 0; i < 10; ++i) {
    auto start = Clock::now();
    analyze_instance(sets[i], full);
    worst_full = std::max(worst_full, seconds_since(start));
  }
  return {worst_reduced < 0.1 && worst_full < 2.0,
          "J=10: mean " + fmt("%.3f ms", 1e3 * total_reduced / sets.size()) + ", worst " +
              fmt("%.3f ms", 1e3 * worst_reduced) + "; J=100 worst " + fmt("%.3f ms", 1e3 * worst_full)};
}

// 11. Byte-identical CLI reruns.
Outcome determinism() {
  const auto dir = tmp_dir();
  std::size_t compared = 0, differing = 0;
  auto twice = [&](const std::string& name, const std::function<std::string(const std::string&)>& args,
                   const std::string& alt_suffix = "") {
    const auto a = (dir / ("det_a_" + name)).string();
    const auto b = (dir / ("det_b_" + name)).string();
    if (run_cli(args(a)) != 0 || run_cli(args(b) + alt_suffix) != 0) {
      ++differing;
      return;
    }
    ++compared;
    if (slurp(a) != slurp(b)) ++differing;
  };
  const auto id = (dir / "det_id.jsonl").string();
  const auto ood = (dir / "det_ood.jsonl").string();
  if (run_cli("synth --seed 5 --n-id 60 --n-ood 60 --classes 40 --id-out " + id + " --ood-out " + ood) != 0) {
    return {false, "synth command failed"};
  }
  twice("synth_id.jsonl", [](const std::string& out) {
    return "synth --seed 9 --n-id 30 --n-ood 30 --id-out " + out + " --ood-out " + out + ".ood.jsonl";
  });
  twice("synth.npy", [](const std::string& out) {
    return "synth --seed 9 --n-id 30 --n-ood 30 --id-out " + out + " --ood-out " + out + ".ood.npy";
  });
  twice("uq.json", [&](const std::string& out) { return "uq " + id + " --gh --pia-j 12 -o " + out; });
  twice("uq_threads.json", [&](const std::string& out) { return "uq " + id + " --pia-j 12 -o " + out; },
        " --threads 4");
  twice("uq.csv", [&](const std::string& out) {
    return "uq " + ood + " --format csv --exact-threshold 8 --seed 3 -o " + out;
  });
  twice("ood.json", [&](const std::string& out) { return "ood " + id + " " + ood + " -o " + out; });
  twice("ood_threads.csv", [&](const std::string& out) {
    return "ood " + id + " " + ood + " --format csv --measure credal-gh --pia-j 8 -o " + out;
  }, " --threads 3");
  twice("cal.json", [&](const std::string& out) { return "calibrate " + id + " -o " + out; });
  return {differing == 0 && compared == 8,
          std::to_string(compared) + " command pairs compared, " + std::to_string(differing) +
              " differing or failed"};
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "weather example end to end", weather},
      {2, "extracted intervals are proper", properness},
      {3, "upper entropy exactness", upper_exactness},
      {4, "lower entropy exactness", lower_exactness},
      {5, "EU nonnegativity and entropy envelope", envelope},
      {6, "PIA soundness", pia_soundness},
      {7, "Mobius masses and GH", mobius},
      {8, "metric oracles", metrics},
      {9, "synthetic OOD smoke test", synthetic_ood},
      {10, "timing budget", timing},
      {11, "CLI determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %2d: %s -- %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
