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

#include "dimrad/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dimrad/dataset.hpp"
#include "dimrad/errors.hpp"

namespace dimrad
{
    Histogram make_histogram(std::span<const double> errors_cm, double lo_cm, double hi_cm, double width_cm)
    {
        if (!(width_cm > 0.0) || !(hi_cm > lo_cm))
            throw ConfigError("histogram: invalid bin layout");
        Histogram h;
        h.lo_cm = lo_cm;
        h.hi_cm = hi_cm;
        h.width_cm = width_cm;
        const auto n = static_cast<std::size_t>(std::llround((hi_cm - lo_cm) / width_cm));
        std::vector<std::size_t> counts(n, 0);
        for (double e : errors_cm)
        {
            if (e >= lo_cm && e < hi_cm)
            {
                const auto i = std::min(n - 1, static_cast<std::size_t>((e - lo_cm) / width_cm));
                ++counts[i];
                ++h.inside;
            }
            else
                ++h.outside;
        }
        h.density.assign(n, 0.0);
        if (h.inside > 0)
            for (std::size_t i = 0; i < n; ++i)
                h.density[i] = static_cast<double>(counts[i]) / (static_cast<double>(h.inside) * width_cm);
        return h;
    }

    ErrorStats compute_metrics(std::span<const double> estimates_m, std::span<const double> truths_m)
    {
        if (estimates_m.size() != truths_m.size())
            throw ConfigError("metrics: estimate and truth lists differ in length");
        if (estimates_m.empty())
            throw ConfigError("metrics: empty input");

        ErrorStats s;
        s.count = estimates_m.size();
        s.errors_cm.resize(s.count);
        double sum = 0.0, sum_abs = 0.0, sum_sq = 0.0;
        for (std::size_t k = 0; k < s.count; ++k)
        {
            const double e = 100.0 * (estimates_m[k] - truths_m[k]);
            if (!std::isfinite(e))
                throw ConfigError("metrics: non-finite value");
            s.errors_cm[k] = e;
            sum += e;
            sum_abs += std::abs(e);
            sum_sq += e * e;
        }
        const auto n = static_cast<double>(s.count);
        s.bias_cm = sum / n;
        s.mae_cm = sum_abs / n;
        s.rmse_cm = std::sqrt(sum_sq / n);
        double var = 0.0;
        for (double e : s.errors_cm)
            var += (e - s.bias_cm) * (e - s.bias_cm);
        s.sigma_cm = std::sqrt(var / n);
        s.histogram = make_histogram(s.errors_cm);
        return s;
    }

    double rmse_consistency(const ErrorStats &s)
    {
        const double lhs = s.rmse_cm * s.rmse_cm;
        const double rhs = s.sigma_cm * s.sigma_cm + s.bias_cm * s.bias_cm;
        const double diff = std::abs(lhs - rhs);
        return lhs > 0.0 ? diff / lhs : diff;
    }

    ErrorReport make_report(std::span<const EnhancerOutput> initial, std::span<const EnhancerOutput> enhanced,
                            std::span<const EnhancerOutput> truth)
    {
        if (initial.size() != truth.size() || enhanced.size() != truth.size())
            throw ConfigError("report: estimate and truth lists differ in length");
        auto column = [](std::span<const EnhancerOutput> v, std::size_t k) {
            std::vector<double> out(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                out[i] = v[i][k];
            return out;
        };
        const auto td = column(truth, 0), th = column(truth, 1);
        ErrorReport r;
        r.initial.depth = compute_metrics(column(initial, 0), td);
        r.initial.height = compute_metrics(column(initial, 1), th);
        r.enhanced.depth = compute_metrics(column(enhanced, 0), td);
        r.enhanced.height = compute_metrics(column(enhanced, 1), th);
        return r;
    }

    ErrorReport evaluate_model(const EnhancerModel &model, std::span<const EnhancerSample> test)
    {
        std::vector<EnhancerOutput> initial, enhanced, truth;
        initial.reserve(test.size());
        enhanced.reserve(test.size());
        truth.reserve(test.size());
        for (const auto &s : test)
        {
            initial.push_back(initial_from_inputs(s.inputs));
            enhanced.push_back(forward(model, s.inputs));
            truth.push_back(s.labels);
        }
        return make_report(initial, enhanced, truth);
    }

    namespace
    {
        double median(std::vector<double> v)
        {
            std::sort(v.begin(), v.end());
            const std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        }
    }

    ErrorReport evaluate_acquisitions(const EnhancerModel &model, std::span<const EnhancerSample> test)
    {
        std::map<std::string, std::vector<const EnhancerSample *>> groups;
        for (const auto &s : test)
            groups[s.scenario_id].push_back(&s);

        std::vector<EnhancerOutput> initial, enhanced, truth;
        for (const auto &[id, members] : groups)
        {
            std::array<std::vector<double>, 2> ini, enh;
            for (const auto *s : members)
            {
                const auto i = initial_from_inputs(s->inputs);
                const auto e = forward(model, s->inputs);
                for (std::size_t k = 0; k < 2; ++k)
                {
                    ini[k].push_back(i[k]);
                    enh[k].push_back(e[k]);
                }
            }
            initial.push_back({median(ini[0]), median(ini[1])});
            enhanced.push_back({median(enh[0]), median(enh[1])});
            truth.push_back(members.front()->labels);
        }
        return make_report(initial, enhanced, truth);
    }

    std::optional<double> relative_improvement(double initial, double enhanced)
    {
        if (initial == 0.0)
            return std::nullopt;
        return (initial - enhanced) / initial;
    }

    ImprovementSummary compare_estimators(const ErrorReport &report)
    {
        auto metric = [](const ErrorStats &i, const ErrorStats &e) {
            return MetricImprovement{relative_improvement(i.mae_cm, e.mae_cm), relative_improvement(i.rmse_cm, e.rmse_cm),
                                     relative_improvement(i.sigma_cm, e.sigma_cm)};
        };
        ImprovementSummary s;
        s.depth = metric(report.initial.depth, report.enhanced.depth);
        s.height = metric(report.initial.height, report.enhanced.height);
        s.combined_mae = relative_improvement(0.5 * (report.initial.depth.mae_cm + report.initial.height.mae_cm),
                                              0.5 * (report.enhanced.depth.mae_cm + report.enhanced.height.mae_cm));

        auto better = [](const ErrorStats &i, const ErrorStats &e) {
            return e.mae_cm < i.mae_cm && e.rmse_cm < i.rmse_cm && e.sigma_cm < i.sigma_cm;
        };
        s.enhanced_better_everywhere = better(report.initial.depth, report.enhanced.depth) &&
                                       better(report.initial.height, report.enhanced.height);
        return s;
    }

    double report_consistency(const ErrorReport &report)
    {
        return std::max({rmse_consistency(report.initial.depth), rmse_consistency(report.initial.height),
                         rmse_consistency(report.enhanced.depth), rmse_consistency(report.enhanced.height)});
    }
}
