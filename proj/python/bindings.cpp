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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "uqcal/analysis.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/metrics.hpp"
#include "uqcal/normal.hpp"
#include "uqcal/prediction_set.hpp"
#include "uqcal/synth.hpp"

namespace py = pybind11;

namespace {

using Vec = std::vector<double>;
using Triple = std::tuple<Vec, Vec, Vec>;

uqcal::MetricConfig make_config(std::size_t n_bins, double confidence, double eta, double alpha) {
  uqcal::MetricConfig cfg;
  cfg.n_bins = n_bins;
  cfg.nominal_level = confidence;
  cfg.eta = eta;
  cfg.alpha = alpha;
  cfg.levels = uqcal::ConfidenceLevels::midpoints(n_bins);
  cfg.tau_grid.assign(cfg.levels.levels().begin(), cfg.levels.levels().end());
  cfg.validate();
  return cfg;
}

py::dict report_to_dict(const uqcal::MetricReport& report) {
  py::dict out;
  for (const auto& v : report.values) {
    const std::string key(uqcal::metric_name(v.metric));
    if (v.value) {
      out[py::str(key)] = *v.value;
    } else {
      out[py::str(key)] = py::none();
    }
  }
  return out;
}

uqcal::Scenario scenario_from(const std::string& text) {
  const auto s = uqcal::parse_scenario(text);
  if (!s) throw uqcal::ConfigError("unknown scenario '" + text + "'");
  return *s;
}

Triple unpack(const uqcal::GaussianPredictionSet& p) {
  return {Vec(p.y().begin(), p.y().end()), Vec(p.y_hat().begin(), p.y_hat().end()),
          Vec(p.sigma().begin(), p.sigma().end())};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regression calibration metrics and miscalibration benchmark.";

  py::register_exception<uqcal::DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<uqcal::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<uqcal::DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("norm_cdf", &uqcal::standard_normal_cdf, py::arg("z"));
  m.def("norm_pdf", &uqcal::standard_normal_pdf, py::arg("z"));
  m.def("norm_ppf", &uqcal::standard_normal_quantile, py::arg("p"));
  m.def("chi2_1_quantile", &uqcal::chi2_1_quantile, py::arg("tau"));

  m.def(
      "evaluate",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma, std::size_t n_bins, double confidence,
         double eta, double alpha) {
        const uqcal::GaussianPredictionSet preds(y, y_hat, sigma);
        return report_to_dict(
            uqcal::evaluate_all(preds, make_config(n_bins, confidence, eta, alpha)));
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"), py::arg("n_bins") = 10,
      py::arg("confidence") = 0.95, py::arg("eta") = 50.0, py::arg("alpha") = 0.05,
      "All metrics for Gaussian predictions. Undefined values are None.");

  m.def(
      "evaluate_intervals",
      [](const Vec& y, const Vec& lower, const Vec& upper, double confidence, double eta,
         double alpha) {
        const uqcal::IntervalPredictionSet ints(y, lower, upper, confidence);
        return report_to_dict(
            uqcal::evaluate_intervals(ints, make_config(10, confidence, eta, alpha)));
      },
      py::arg("y"), py::arg("lower"), py::arg("upper"), py::arg("confidence") = 0.95,
      py::arg("eta") = 50.0, py::arg("alpha") = 0.05);

  m.def(
      "gaussian_to_intervals",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma, double level) {
        const auto ints =
            uqcal::gaussian_to_intervals(uqcal::GaussianPredictionSet(y, y_hat, sigma), level);
        return std::make_pair(Vec(ints.lower().begin(), ints.lower().end()),
                              Vec(ints.upper().begin(), ints.upper().end()));
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"), py::arg("level"));

  m.def(
      "pit",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma) {
        return uqcal::pit(uqcal::GaussianPredictionSet(y, y_hat, sigma));
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"));

  m.def(
      "crps_gaussian",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma) {
        return uqcal::crps_gaussian(uqcal::GaussianPredictionSet(y, y_hat, sigma));
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"));

  m.def(
      "nll_gaussian",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma) {
        return uqcal::nll_gaussian(uqcal::GaussianPredictionSet(y, y_hat, sigma));
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"));

  m.def(
      "ence",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma, std::size_t n_bins) {
        return uqcal::ence(uqcal::GaussianPredictionSet(y, y_hat, sigma), n_bins);
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"), py::arg("n_bins") = 10);

  m.def(
      "qce",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma, double tau, std::size_t n_bins) {
        return uqcal::qce(uqcal::GaussianPredictionSet(y, y_hat, sigma), tau, n_bins);
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"), py::arg("tau"), py::arg("n_bins") = 10);

  m.def(
      "interval_score",
      [](const Vec& y, const Vec& lower, const Vec& upper, double alpha) {
        return uqcal::interval_score(uqcal::IntervalPredictionSet(y, lower, upper, 1.0 - alpha),
                                     alpha);
      },
      py::arg("y"), py::arg("lower"), py::arg("upper"), py::arg("alpha") = 0.05);

  m.def(
      "generate_calibrated",
      [](const Vec& y, std::uint64_t seed, std::optional<double> epsilon_floor) {
        return unpack(uqcal::generate_calibrated(y, {seed, epsilon_floor}));
      },
      py::arg("y"), py::arg("seed") = 0, py::arg("epsilon_floor") = py::none(),
      "Returns (y, y_hat, sigma) drawn from the calibrated generator.");

  m.def(
      "apply_scenario",
      [](const Vec& y, const Vec& y_hat, const Vec& sigma, const std::string& scenario) {
        return unpack(uqcal::apply_scenario(uqcal::GaussianPredictionSet(y, y_hat, sigma),
                                            scenario_from(scenario)));
      },
      py::arg("y"), py::arg("y_hat"), py::arg("sigma"), py::arg("scenario"));

  m.def(
      "synth_target",
      [](const std::string& name, std::size_t n, std::uint64_t seed) {
        return uqcal::synth_target(name, n, seed);
      },
      py::arg("name"), py::arg("n"), py::arg("seed") = 0);

  m.def(
      "detection_study",
      [](const std::vector<Vec>& targets, const std::string& scenario, std::size_t repeats,
         std::uint64_t seed, std::size_t threads, double threshold) {
        uqcal::DetectionStudyOptions opts;
        opts.threads = threads;
        opts.threshold = threshold;
        uqcal::DetectionSummary summary;
        {
          py::gil_scoped_release release;
          summary = uqcal::detection_study(targets, scenario_from(scenario), repeats, seed, opts);
        }
        py::dict out;
        const auto freq = summary.frequencies();
        for (std::size_t k = 0; k < summary.metrics.size(); ++k) {
          out[py::str(std::string(uqcal::metric_name(summary.metrics[k])))] = freq[k];
        }
        return out;
      },
      py::arg("targets"), py::arg("scenario") = "s4", py::arg("repeats") = 100,
      py::arg("seed") = 0, py::arg("threads") = 1, py::arg("threshold") = 0.03,
      "Detection frequency per metric, one entry per target vector.");
}
