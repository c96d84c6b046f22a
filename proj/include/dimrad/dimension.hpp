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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dimrad/dsp_chain.hpp"
#include "dimrad/scene.hpp"

namespace dimrad
{
    // Detection rotated into the gait-aligned sagittal frame: origin at the radar,
    // x horizontal toward the stairs, y up.
    struct CorrectedTarget
    {
        double true_angle_rad = 0.0; // gamma + theta
        Point2 position;
        double range_m = 0.0;
        double angle_rad = 0.0; // AoA from boresight
        double magnitude = 0.0;
    };

    // Acceptance window for a candidate pair of consecutive corners.
    // The default upper depth is widened to 40 cm so the 26-38 cm construction grid
    // remains admissible; `building_code()` gives the 22-35 / 10-22 cm standard.
    struct StairStandards
    {
        double depth_min_m = 0.22;
        double depth_max_m = 0.40;
        double height_min_m = 0.10;
        double height_max_m = 0.22;

        static StairStandards building_code() { return {0.22, 0.35, 0.10, 0.22}; }

        void validate() const;
        bool admits(double depth_m, double height_m) const
        {
            return depth_m >= depth_min_m && depth_m <= depth_max_m && height_m >= height_min_m &&
                   height_m <= height_max_m;
        }
    };

    struct DimensionEstimate
    {
        double depth_m = 0.0;
        double height_m = 0.0;
        std::array<CorrectedTarget, 2> corner_pair{}; // lower x first
        double timestamp_s = 0.0;
        double inclination_rad = 0.0;
    };

    // theta_t = gamma + theta; x = r cos(theta_t), y = r sin(theta_t). One output per
    // (range, angle) pair.
    std::vector<CorrectedTarget> correct_coordinates(const TargetList &list, double gamma_rad);

    // First admissible pair in the order: ascending x of the near corner (magnitude
    // descending on ties), then ascending pair distance (magnitude of the far corner
    // descending on ties). depth = x_B - x_A, height = y_B - y_A.
    std::optional<DimensionEstimate> find_consecutive_corners(std::span<const CorrectedTarget> targets,
                                                              const StairStandards &standards);

    std::optional<DimensionEstimate> estimate_initial(const TargetList &list, double gamma_rad,
                                                      const StairStandards &standards);

    struct AcquisitionEstimate
    {
        double depth_m = 0.0;
        double height_m = 0.0;
        std::size_t frames_used = 0;
    };

    // Median of the per-frame depth and height over the frames that produced an estimate.
    std::optional<AcquisitionEstimate> aggregate_acquisition(std::span<const std::optional<DimensionEstimate>> frames);
}
