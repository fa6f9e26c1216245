/*
 * Copyright 2026 The uqcal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "uqcal/analysis.hpp"
#include "uqcal/cli.hpp"
#include "uqcal/metrics.hpp"
#include "uqcal/normal.hpp"
#include "uqcal/prediction_set.hpp"
#include "uqcal/rng.hpp"
#include "uqcal/synth.hpp"

namespace {

using namespace uqcal;

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr std::uint64_t kTargetSeed = 20240611;
constexpr std::uint64_t kStudySeed = 1;

std::size_t metric_index(const DetectionSummary& s, Metric m) {
  for (std::size_t k = 0; k < s.metrics.size(); ++k) {
    if (s.metrics[k] == m) return k;
  }
  std::abort();
}

std::string fmt(double v, const char* pattern = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

DetectionSummary study(std::size_t n, Scenario s) {
  const std::vector<std::vector<double>> targets{synth_target("friedman1", n, kTargetSeed)};
  DetectionStudyOptions opts;
  opts.threads = 0;
  return detection_study(targets, s, 100, kStudySeed, opts);
}

// Detection frequencies for `metrics` against a minimum, formatted as
// "NAME=freq".
Outcome require_frequencies(const DetectionSummary& s, std::initializer_list<Metric> metrics,
                            double minimum) {
  Outcome out{true, {}};
  for (Metric m : metrics) {
    const double f = s.frequency(metric_index(s, m), 0);
    out.pass = out.pass && f >= minimum;
    out.detail += std::string(metric_name(m)) + "=" + fmt(f, "%.2f") + " ";
  }
  out.detail += "(need >= " + fmt(minimum, "%.2f") + ")";
  return out;
}

Outcome crps_oracle() {
  double worst = 0.0;
  for (double sigma : {0.1, 1.0, 10.0}) {
    for (int k = -8; k <= 8; ++k) {
      const double z = 0.5 * k;
      const double y = z * sigma;
      const std::vector<double> ys{y}, mu{0.0}, sd{sigma};
      const double closed = crps_gaussian(GaussianPredictionSet(ys, mu, sd));
      worst = std::max(worst, std::abs(closed - oracle::crps_integral(0.0, sigma, y)));
    }
  }
  return {worst < 1e-6, "max |closed - integral| = " + fmt(worst, "%.3e") + " (need < 1e-6)"};
}

Outcome calibrated_baseline() {
  constexpr int kSeeds = 20;
  const auto y = synth_target("friedman1", 10000, kTargetSeed);
  std::vector<double> ecpe_v, qce_v, cals_v;
  int picp_ok = 0;
  const MetricConfig cfg;
  for (int s = 0; s < kSeeds; ++s) {
    const auto preds = generate_calibrated(y, {derive_seed({kStudySeed, 0xba5e, std::uint64_t(s)}), {}});
    const auto r = evaluate_all(preds, cfg);
    ecpe_v.push_back(*r.value(Metric::kEcpe));
    qce_v.push_back(*r.value(Metric::kQce));
    cals_v.push_back(*r.value(Metric::kCalSRmse));
    const double p = *r.value(Metric::kPicp);
    if (p >= 0.94 && p <= 0.96) ++picp_ok;
  }
  const double ecpe_med = oracle::median(ecpe_v);
  const double qce_med = oracle::median(qce_v);
  const double cals_med = oracle::median(cals_v);
  const double picp_frac = static_cast<double>(picp_ok) / kSeeds;
  const bool pass = ecpe_med < 0.02 && qce_med < 0.05 && cals_med < 0.05 && picp_frac >= 0.95;
  return {pass, "median ECPE=" + fmt(ecpe_med) + " QCE=" + fmt(qce_med) +
                    " CalS_RMSE=" + fmt(cals_med) + "; PICP in [0.94,0.96] for " +
                    fmt(picp_frac, "%.2f") + " of seeds"};
}

Outcome s1_detection() {
  return require_frequencies(study(2000, Scenario::kS1ConstSigma),
                             {Metric::kCalS, Metric::kEcpe, Metric::kQce}, 0.90);
}

Outcome s3_detection() {
  return require_frequencies(study(2000, Scenario::kS3ConstMean), {Metric::kNll}, 0.90);
}

Outcome s4_detection() {
  const auto s = study(2000, Scenario::kS4HeteroBoth);
  const auto strict = require_frequencies(s, {Metric::kEnce, Metric::kCwc}, 0.95);
  const auto loose = require_frequencies(s, {Metric::kUce}, 0.90);
  return {strict.pass && loose.pass, strict.detail + "; " + loose.detail};
}

Outcome sample_size() {
  const auto small = study(150, Scenario::kS4HeteroBoth);
  const auto large = study(2000, Scenario::kS4HeteroBoth);
  Outcome out{true, {}};
  for (Metric m : {Metric::kEnce, Metric::kCwc, Metric::kQce}) {
    const double fs = small.frequency(metric_index(small, m), 0);
    const double fl = large.frequency(metric_index(large, m), 0);
    out.pass = out.pass && fs < fl;
    out.detail += std::string(metric_name(m)) + " " + fmt(fs, "%.2f") + "@150 vs " +
                  fmt(fl, "%.2f") + "@2000 ";
  }
  out.detail += "(need strictly lower at 150)";
  return out;
}

Outcome exact_identities() {
  RandomStream rng(77);
  int cwc_checked = 0;
  bool cwc_ok = true;
  while (cwc_checked < 1000) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 60);
    const double level = rng.uniform(0.5, 0.99);
    std::vector<double> y(n), lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.normal(0.0, 5.0);
      const double c = y[i] + rng.normal(0.0, 1.0);
      const double half = rng.uniform(0.0, 4.0);
      lo[i] = c - half;
      hi[i] = c + half;
    }
    const IntervalPredictionSet ints(y, lo, hi, level);
    const double range = target_range(y);
    if (range <= 0.0 || picp(ints) < level) continue;
    const double a = cwc(ints, 50.0, range);
    const double b = nmpiw(ints, range);
    cwc_ok = cwc_ok && std::memcmp(&a, &b, sizeof a) == 0;
    ++cwc_checked;
  }

  bool ence_ok = true;
  double ence_worst = 0.0;
  {
    const auto y = synth_target("friedman1", 2000, kTargetSeed);
    const auto base = generate_calibrated(y, {3, {}});
    const double e0 = ence(base, 10);
    for (double c : {0.1, 3.0, 1000.0}) {
      std::vector<double> ys, ms, ss;
      for (std::size_t i = 0; i < base.size(); ++i) {
        ys.push_back(base.y()[i] * c);
        ms.push_back(base.y_hat()[i] * c);
        ss.push_back(base.sigma()[i] * c);
      }
      const double rel = std::abs(ence(GaussianPredictionSet(ys, ms, ss), 10) - e0) / e0;
      ence_worst = std::max(ence_worst, rel);
      ence_ok = ence_ok && rel <= 1e-12;
    }
  }

  bool qce_ok = true;
  for (const auto [n, bins] : {std::pair<std::size_t, std::size_t>{5, 5}, {37, 10}, {10000, 10}}) {
    std::vector<double> y(n), sd(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.normal(0.0, 3.0);
      sd[i] = rng.uniform(0.1, 2.0);
    }
    const GaussianPredictionSet perfect(y, y, sd);
    for (double tau : MetricConfig::default_tau_grid()) {
      qce_ok = qce_ok && qce(perfect, tau, bins) == 1.0 - tau;
    }
  }
  return {cwc_ok && ence_ok && qce_ok,
          "CWC==NMPIW bitwise on " + std::to_string(cwc_checked) + " sets: " +
              (cwc_ok ? "yes" : "no") + "; ENCE max rel change " + fmt(ence_worst, "%.2e") +
              "; zero-residual QCE == 1 - tau: " + (qce_ok ? "yes" : "no")};
}

Outcome proper_scoring() {
  constexpr int kSeeds = 20;
  constexpr std::size_t kN = 20000;
  int wins = 0;
  for (int s = 0; s < kSeeds; ++s) {
    RandomStream rng(derive_seed({kStudySeed, 0x5c0e, std::uint64_t(s)}));
    std::vector<double> y(kN);
    for (auto& v : y) v = rng.normal();
    const std::vector<double> mu(kN, 0.0);
    auto scores = [&](double sd) {
      const GaussianPredictionSet p(y, mu, std::vector<double>(kN, sd));
      const auto ints = gaussian_to_intervals(p, 0.95);
      return std::array<double, 3>{crps_gaussian(p), interval_score(ints, 0.05),
                                   nll_gaussian(p)};
    };
    const auto truth = scores(1.0);
    const auto wide = scores(1.5);
    const auto narrow = scores(0.5);
    bool ok = true;
    for (int k = 0; k < 3; ++k) ok = ok && truth[k] < wide[k] && truth[k] < narrow[k];
    if (ok) ++wins;
  }
  const double frac = static_cast<double>(wins) / kSeeds;
  return {frac >= 0.95, "true predictor strictly best on CRPS, IS and NLL in " +
                            fmt(frac, "%.2f") + " of seeds (need >= 0.95)"};
}

std::string run_benchmark(const char* threads) {
  ::setenv("UQCAL_THREADS", threads, 1);
  std::ostringstream out, err;
  const int code = uqcal::cli::run({"benchmark", "--targets", "synthetic:friedman1:400",
                                    "--targets", "synthetic:arctan:300", "--scenario", "s4",
                                    "--repeats", "20", "--seed", "7"},
                                   out, err);
  if (code != 0) return "exit " + std::to_string(code) + ": " + err.str();
  return out.str();
}

Outcome determinism() {
  const std::string a = run_benchmark("1");
  const std::string b = run_benchmark("1");
  const std::string c = run_benchmark("4");
  ::unsetenv("UQCAL_THREADS");
  const bool ok = a.size() > 100 && a == b && a == c;
  return {ok, "benchmark JSON " + std::to_string(a.size()) + " bytes; rerun identical: " +
                  (a == b ? "yes" : "no") + "; UQCAL_THREADS 1 vs 4 identical: " +
                  (a == c ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"crps closed form vs integral", crps_oracle},
      {"calibrated baseline", calibrated_baseline},
      {"S1 detection", s1_detection},
      {"S3 detection", s3_detection},
      {"S4 detection", s4_detection},
      {"sample-size sensitivity", sample_size},
      {"exact identities", exact_identities},
      {"proper scoring", proper_scoring},
      {"benchmark determinism", determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s  %zu  %-30s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
