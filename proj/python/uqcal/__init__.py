# Copyright 2026 The uqcal Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regression calibration metrics and a controlled-miscalibration benchmark."""

from ._core import (
    ConfigError,
    DataError,
    DomainError,
    apply_scenario,
    chi2_1_quantile,
    crps_gaussian,
    detection_study,
    ence,
    evaluate,
    evaluate_intervals,
    gaussian_to_intervals,
    generate_calibrated,
    interval_score,
    nll_gaussian,
    norm_cdf,
    norm_pdf,
    norm_ppf,
    pit,
    qce,
    synth_target,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataError",
    "DomainError",
    "apply_scenario",
    "chi2_1_quantile",
    "crps_gaussian",
    "detection_study",
    "ence",
    "evaluate",
    "evaluate_intervals",
    "gaussian_to_intervals",
    "generate_calibrated",
    "interval_score",
    "nll_gaussian",
    "norm_cdf",
    "norm_pdf",
    "norm_ppf",
    "pit",
    "qce",
    "synth_target",
]
