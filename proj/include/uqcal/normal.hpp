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

#pragma once

namespace uqcal {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kInvSqrtPi = 0.56418958354775628695;

/// Density of the standard normal distribution.
double standard_normal_pdf(double z);

/// Standard normal CDF, computed through the complementary error function
/// so that both tails keep full relative precision.
double standard_normal_cdf(double z);

/// Inverse of the standard normal CDF.
///
/// A rational approximation (Acklam) gives a starting point accurate to
/// ~1e-9 which is then polished with one Halley step against
/// standard_normal_cdf, so the pair are inverses to near machine precision.
/// Throws DomainError unless 0 < p < 1.
double standard_normal_quantile(double p);

/// Quantile of the chi-squared distribution with one degree of freedom,
/// using F(a) = 2 Phi(sqrt(a)) - 1. Throws DomainError unless 0 < tau < 1.
double chi2_1_quantile(double tau);

}  // namespace uqcal
