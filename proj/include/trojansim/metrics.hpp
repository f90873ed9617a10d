/* Copyright 2026 trojansim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef TROJANSIM_METRICS_HPP
#define TROJANSIM_METRICS_HPP

#include <span>

namespace trojansim {

struct CorrelationResult
{
    double r       = 0.0;
    double p_value = 1.0; // NaN when n < 3 (no degrees of freedom)
    int n          = 0;
};

// Pearson product-moment correlation with a two-tailed p-value from the
// t statistic r * sqrt((n-2) / (1 - r^2)) on n-2 degrees of freedom.
// Throws std::invalid_argument on length mismatch, n < 2, or a constant
// series (undefined correlation).
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Pointwise |x - y| as a percentage of max|y|, which keeps near-zero counts
// from blowing up the relative error.
struct Discrepancy
{
    double max_abs_pct  = 0.0;
    double mean_abs_pct = 0.0;
    int argmax_t        = 0;
};

// Throws std::invalid_argument on length mismatch, empty input, or all-zero y.
Discrepancy series_discrepancy(std::span<const double> x, std::span<const double> y);

// Continued-fraction regularized incomplete beta I_x(a, b) for a, b > 0 and
// x in [0, 1]. Building block for the t distribution; exposed for testing.
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed tail probability P(|T| >= |t|) for Student's t with dof degrees
// of freedom.
double student_t_two_tailed(double t, int dof);

} // namespace trojansim

#endif
