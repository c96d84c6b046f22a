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

#include "dimrad/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dimrad/errors.hpp"

namespace dimrad
{
    void StairStandards::validate() const
    {
        if (!(depth_min_m > 0.0 && depth_min_m < depth_max_m))
            throw ConfigError("standards: require 0 < depth_min < depth_max");
        if (!(height_min_m > 0.0 && height_min_m < height_max_m))
            throw ConfigError("standards: require 0 < height_min < height_max");
    }

    std::vector<CorrectedTarget> correct_coordinates(const TargetList &list, double gamma_rad)
    {
        std::vector<CorrectedTarget> out;
        for (const auto &e : list.entries)
            for (double theta : e.angles_rad)
            {
                CorrectedTarget t;
                t.true_angle_rad = gamma_rad + theta;
                t.position = {e.range_m * std::cos(t.true_angle_rad), e.range_m * std::sin(t.true_angle_rad)};
                t.range_m = e.range_m;
                t.angle_rad = theta;
                t.magnitude = e.magnitude;
                out.push_back(t);
            }
        return out;
    }

    std::optional<DimensionEstimate> find_consecutive_corners(std::span<const CorrectedTarget> targets,
                                                              const StairStandards &standards)
    {
        standards.validate();

        std::vector<std::size_t> order(targets.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (targets[a].position.x != targets[b].position.x)
                return targets[a].position.x < targets[b].position.x;
            return targets[a].magnitude > targets[b].magnitude;
        });

        struct Candidate
        {
            std::size_t index;
            double distance;
        };
        std::vector<Candidate> partners;

        for (std::size_t i = 0; i < order.size(); ++i)
        {
            const auto &a = targets[order[i]];
            partners.clear();
            for (std::size_t j = i + 1; j < order.size(); ++j)
            {
                const auto &b = targets[order[j]];
                if (b.position.x > a.position.x)
                    partners.push_back({order[j], std::hypot(b.position.x - a.position.x, b.position.y - a.position.y)});
            }
            std::stable_sort(partners.begin(), partners.end(), [&](const Candidate &p, const Candidate &q) {
                if (p.distance != q.distance)
                    return p.distance < q.distance;
                return targets[p.index].magnitude > targets[q.index].magnitude;
            });

            for (const auto &p : partners)
            {
                const auto &b = targets[p.index];
                const double d = b.position.x - a.position.x;
                const double h = b.position.y - a.position.y;
                if (standards.admits(d, h))
                {
                    DimensionEstimate est;
                    est.depth_m = d;
                    est.height_m = h;
                    est.corner_pair = {a, b};
                    return est;
                }
            }
        }
        return std::nullopt;
    }

    std::optional<DimensionEstimate> estimate_initial(const TargetList &list, double gamma_rad,
                                                      const StairStandards &standards)
    {
        const auto corrected = correct_coordinates(list, gamma_rad);
        auto est = find_consecutive_corners(corrected, standards);
        if (est)
        {
            est->timestamp_s = list.timestamp_s;
            est->inclination_rad = gamma_rad;
            if (!standards.admits(est->depth_m, est->height_m))
                throw ProcessingError("dimension estimate violates the stair standards");
        }
        return est;
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

    std::optional<AcquisitionEstimate> aggregate_acquisition(std::span<const std::optional<DimensionEstimate>> frames)
    {
        std::vector<double> d, h;
        for (const auto &f : frames)
            if (f)
            {
                d.push_back(f->depth_m);
                h.push_back(f->height_m);
            }
        if (d.empty())
            return std::nullopt;
        return AcquisitionEstimate{median(d), median(h), d.size()};
    }
}
