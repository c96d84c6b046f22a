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

#include <cstdint>
#include <vector>

#include "dimrad/numerics.hpp"
#include "dimrad/radar_config.hpp"

namespace dimrad
{
    // Sagittal-plane world frame: x horizontal toward the staircase, y up, floor at y = 0.
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;

        bool operator==(const Point2 &) const = default;
    };

    // Uniform staircase. Corner k is the convex edge of step k.
    struct StaircaseSpec
    {
        double depth_m = 0.30;
        double height_m = 0.15;
        int step_count = 4;
        double foot_x_m = 4.5; // base of the first riser

        void validate() const;
    };

    // Stair corners ordered by ascending x.
    struct CornerSet
    {
        std::vector<Point2> corners;
    };

    CornerSet corners_of(const StaircaseSpec &spec);

    // Mount tilt between tibia and radar boresight.
    inline constexpr double kMountTiltRad = -20.0 * kPi / 180.0;

    struct WalkConfig
    {
        double start_standoff_m = 4.0; // horizontal distance radar -> first riser
        double end_standoff_m = 0.5;
        double duration_s = 5.0;
        double sample_rate_hz = 10.0;
        double mount_height_m = 0.45; // h_i
        double mount_tilt_rad = kMountTiltRad;
        double sway_amplitude_rad = deg2rad(10.0);
        double sway_frequency_hz = 1.0;
        double sway_phase_rad = 0.0;
        double gait_jitter_rad = 0.0; // seeded perturbation of the true inclination
        double imu_noise_rad = deg2rad(0.5);
        std::uint64_t seed = 1;

        void validate() const;
    };

    struct GaitFrame
    {
        double timestamp_s = 0.0;
        Point2 radar_origin;
        double inclination_rad = 0.0;      // IMU-reported gamma (boresight vs horizontal, negative below)
        double true_inclination_rad = 0.0; // physical gamma, drives signal synthesis
        double host_velocity_mps = 0.0;    // along +x
    };

    struct Trajectory
    {
        std::vector<GaitFrame> frames;
        double mount_height_m = 0.45;
        double mount_tilt_rad = kMountTiltRad;
    };

    // Constant-speed approach with sinusoidal inclination sway. Radar height follows
    // h_i * cos(gamma - mount_tilt). Throws RangeOverflowError if a standoff exceeds r_max.
    Trajectory generate_walk(const StaircaseSpec &spec, const WalkConfig &walk, const RadarConfig &radar);
}
