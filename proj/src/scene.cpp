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

#include "dimrad/scene.hpp"

#include <cmath>
#include <string>

#include "dimrad/errors.hpp"

namespace dimrad
{
    void StaircaseSpec::validate() const
    {
        if (!std::isfinite(depth_m) || depth_m <= 0.0)
            throw ConfigError("staircase: depth must be positive");
        if (!std::isfinite(height_m) || height_m <= 0.0)
            throw ConfigError("staircase: height must be positive");
        if (step_count < 2)
            throw ConfigError("staircase: at least two steps are required");
        if (!std::isfinite(foot_x_m))
            throw ConfigError("staircase: foot_x must be finite");
    }

    CornerSet corners_of(const StaircaseSpec &spec)
    {
        spec.validate();
        CornerSet set;
        set.corners.reserve(static_cast<std::size_t>(spec.step_count));
        for (int k = 0; k < spec.step_count; ++k)
            set.corners.push_back({spec.foot_x_m + k * spec.depth_m, (k + 1) * spec.height_m});
        return set;
    }

    void WalkConfig::validate() const
    {
        if (!std::isfinite(sample_rate_hz) || sample_rate_hz <= 0.0)
            throw ConfigError("walk: sample rate must be positive");
        if (!std::isfinite(duration_s) || duration_s <= 0.0)
            throw ConfigError("walk: duration must be positive");
        if (!std::isfinite(start_standoff_m) || !std::isfinite(end_standoff_m) || end_standoff_m <= 0.0 ||
            start_standoff_m < end_standoff_m)
            throw ConfigError("walk: standoffs must satisfy start >= end > 0");
        if (!std::isfinite(mount_height_m) || mount_height_m <= 0.0)
            throw ConfigError("walk: mount height must be positive");
        if (!std::isfinite(sway_amplitude_rad) || !std::isfinite(sway_frequency_hz) || !std::isfinite(mount_tilt_rad))
            throw ConfigError("walk: sway parameters must be finite");
        if (!(gait_jitter_rad >= 0.0) || !(imu_noise_rad >= 0.0))
            throw ConfigError("walk: noise levels must be non-negative");
    }

    Trajectory generate_walk(const StaircaseSpec &spec, const WalkConfig &walk, const RadarConfig &radar)
    {
        spec.validate();
        walk.validate();
        const auto attrs = derive_attributes(radar);
        if (walk.start_standoff_m > attrs.max_range_m)
            throw RangeOverflowError("walk: start standoff " + std::to_string(walk.start_standoff_m) +
                                     " m exceeds max range " + std::to_string(attrs.max_range_m) + " m");

        const double dt = 1.0 / walk.sample_rate_hz;
        const auto n = static_cast<std::size_t>(std::llround(walk.duration_s * walk.sample_rate_hz));
        if (n == 0)
            throw ConfigError("walk: duration shorter than one sampling period");

        const double x_start = spec.foot_x_m - walk.start_standoff_m;
        const double x_end = spec.foot_x_m - walk.end_standoff_m;

        Rng rng(walk.seed);
        Trajectory traj;
        traj.mount_height_m = walk.mount_height_m;
        traj.mount_tilt_rad = walk.mount_tilt_rad;
        traj.frames.resize(n);

        for (std::size_t i = 0; i < n; ++i)
        {
            auto &f = traj.frames[i];
            f.timestamp_s = static_cast<double>(i) * dt;
            const double frac = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;

            double gamma = walk.mount_tilt_rad +
                           walk.sway_amplitude_rad *
                               std::sin(2.0 * kPi * walk.sway_frequency_hz * f.timestamp_s + walk.sway_phase_rad);
            if (walk.gait_jitter_rad > 0.0)
                gamma += rng.normal(0.0, walk.gait_jitter_rad);
            f.true_inclination_rad = gamma;
            f.inclination_rad = walk.imu_noise_rad > 0.0 ? gamma + rng.normal(0.0, walk.imu_noise_rad) : gamma;

            f.radar_origin.x = x_start + (x_end - x_start) * frac;
            f.radar_origin.y = walk.mount_height_m * std::cos(gamma - walk.mount_tilt_rad);
        }

        for (std::size_t i = 0; i < n; ++i)
        {
            if (n == 1)
                traj.frames[i].host_velocity_mps = 0.0;
            else if (i + 1 < n)
                traj.frames[i].host_velocity_mps = (traj.frames[i + 1].radar_origin.x - traj.frames[i].radar_origin.x) / dt;
            else
                traj.frames[i].host_velocity_mps = (traj.frames[i].radar_origin.x - traj.frames[i - 1].radar_origin.x) / dt;
        }
        return traj;
    }
}
