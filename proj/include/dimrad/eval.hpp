// SPDX-License-Identifier: Apache-2.0
//
// dimrad - radar staircase dimensioning toolkit
// Copyright (C) 2026 The dimrad authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimrad/enhancer.hpp"

namespace dimrad
{
    // Fixed-width error histogram [cm]. density[i] * width_cm summed over all bins is 1
    // when at least one error falls inside [lo_cm, hi_cm).
    struct Histogram
    {
        double lo_cm = -15.0;
        double hi_cm = 15.0;
        double width_cm = 0.5;
        std::vector<double> density;
        std::size_t inside = 0;
        std::size_t outside = 0;

        std::size_t bins() const { return density.size(); }
        double center(std::size_t i) const { return lo_cm + (static_cast<double>(i) + 0.5) * width_cm; }
    };

    Histogram make_histogram(std::span<const double> errors_cm, double lo_cm = -15.0, double hi_cm = 15.0,
                             double width_cm = 0.5);

    // Signed-error statistics of one estimator on one dimension. All values in cm;
    // sigma is the population standard deviation.
    struct ErrorStats
    {
        std::size_t count = 0;
        double mae_cm = 0.0;
        double rmse_cm = 0.0;
        double sigma_cm = 0.0;
        double bias_cm = 0.0;
        std::vector<double> errors_cm;
        Histogram histogram;
    };

    // errors e_k = estimate_k - truth_k, inputs in metres. Throws ConfigError on empty or
    // mismatched inputs and on non-finite values.
    ErrorStats compute_metrics(std::span<const double> estimates_m, std::span<const double> truths_m);

    // |rmse^2 - (sigma^2 + bias^2)| relative to rmse^2 (absolute when rmse is 0).
    double rmse_consistency(const ErrorStats &s);

    struct DimensionStats
    {
        ErrorStats depth;
        ErrorStats height;
    };

    struct ErrorReport
    {
        DimensionStats initial;
        DimensionStats enhanced;
    };

    // Initial estimate recomputed from each sample's inputs, enhanced from the model.
    ErrorReport evaluate_model(const EnhancerModel &model, std::span<const EnhancerSample> test);

    // One error per acquisition: per-frame initial and enhanced outputs are reduced to
    // their median over the frames sharing a scenario id.
    ErrorReport evaluate_acquisitions(const EnhancerModel &model, std::span<const EnhancerSample> test);

    ErrorReport make_report(std::span<const EnhancerOutput> initial, std::span<const EnhancerOutput> enhanced,
                            std::span<const EnhancerOutput> truth);

    // (initial - enhanced) / initial; empty when the initial value is 0.
    std::optional<double> relative_improvement(double initial, double enhanced);

    struct MetricImprovement
    {
        std::optional<double> mae;
        std::optional<double> rmse;
        std::optional<double> sigma;
    };

    struct ImprovementSummary
    {
        MetricImprovement depth;
        MetricImprovement height;
        // MAE averaged over both dimensions before taking the ratio.
        std::optional<double> combined_mae;
        // Enhanced strictly below initial on every metric of both dimensions.
        bool enhanced_better_everywhere = false;
    };

    ImprovementSummary compare_estimators(const ErrorReport &report);

    // Largest rmse_consistency over the four estimator/dimension cells.
    double report_consistency(const ErrorReport &report);
}
