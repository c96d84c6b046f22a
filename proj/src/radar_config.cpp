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

#include "dimrad/radar_config.hpp"

#include <cmath>
#include <string>

#include "dimrad/errors.hpp"

namespace dimrad
{
    namespace
    {
        void require_positive(double v, const char *name)
        {
            if (!std::isfinite(v) || v <= 0.0)
                throw ConfigError(std::string("radar config: ") + name + " must be positive and finite");
        }

        void require_positive(std::uint32_t v, const char *name)
        {
            if (v == 0)
                throw ConfigError(std::string("radar config: ") + name + " must be a positive integer");
        }
    }

    void RadarConfig::validate() const
    {
        require_positive(carrier_frequency_hz, "carrier_frequency_hz");
        require_positive(bandwidth_hz, "bandwidth_hz");
        require_positive(chirp_duration_s, "chirp_duration_s");
        require_positive(samples_per_chirp, "samples_per_chirp");
        require_positive(chirps_per_frame, "chirps_per_frame");
        require_positive(tx_count, "tx_count");
        require_positive(rx_count, "rx_count");
    }

    DerivedAttributes derive_attributes(const RadarConfig &cfg)
    {
        cfg.validate();

        const double c = kSpeedOfLight;
        const double n_s = static_cast<double>(cfg.samples_per_chirp);
        const double n_p = static_cast<double>(cfg.chirps_per_frame);
        const std::size_t n_a = cfg.virtual_antennas();

        DerivedAttributes d{};
        d.range_resolution_m = c / (2.0 * cfg.bandwidth_hz);
        d.max_range_m = c * n_s / (2.0 * cfg.bandwidth_hz);
        d.velocity_resolution_mps = c / (2.0 * cfg.carrier_frequency_hz * cfg.chirp_duration_s * n_p);
        d.angular_resolution_rad = 1.78 / static_cast<double>(n_a);
        d.wavelength_m = c / cfg.carrier_frequency_hz;
        d.virtual_antennas = n_a;
        return d;
    }
}
