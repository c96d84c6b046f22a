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
#include <cstdint>

namespace dimrad
{
    // Vacuum speed of light [m/s].
    inline constexpr double kSpeedOfLight = 299'792'458.0;

    // FMCW/MIMO transmit parametrization. Defaults are the 77 GHz, 2TX x 4RX module
    // used throughout the toolkit.
    struct RadarConfig
    {
        double carrier_frequency_hz = 77e9;
        double bandwidth_hz = 3.6e9;
        double chirp_duration_s = 64e-6;
        std::uint32_t samples_per_chirp = 144;
        std::uint32_t chirps_per_frame = 8;
        std::uint32_t tx_count = 2;
        std::uint32_t rx_count = 4;

        // Number of MIMO virtual channels, tx_count * rx_count.
        std::size_t virtual_antennas() const { return std::size_t{tx_count} * rx_count; }

        // Throws ConfigError on non-positive or non-finite fields.
        void validate() const;

        bool operator==(const RadarConfig &) const = default;
    };

    struct DerivedAttributes
    {
        double range_resolution_m;      // c / 2B
        double max_range_m;             // c N_S / 2B
        double velocity_resolution_mps; // c / (2 f_o T_ch N_P)
        double angular_resolution_rad;  // 1.78 / N_A
        double wavelength_m;            // c / f_o
        std::size_t virtual_antennas;   // N_A
    };

    DerivedAttributes derive_attributes(const RadarConfig &cfg);
}
