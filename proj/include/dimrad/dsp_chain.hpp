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
#include <vector>

#include "dimrad/chirp_sim.hpp"
#include "dimrad/numerics.hpp"

namespace dimrad
{
    // Cell-averaging CFAR parameters. When `scale_factor` is empty the threshold
    // multiplier is derived from `false_alarm_rate` for the number of training
    // cells actually used: alpha = N (P_fa^(-1/N) - 1).
    struct CfarConfig
    {
        int training_cells = 8; // per side
        int guard_cells = 2;    // per side
        std::optional<double> scale_factor;
        double false_alarm_rate = 1e-3;

        void validate() const;
        double alpha(std::size_t n_training) const;
    };

    double cfar_scale_from_pfa(double pfa, std::size_t n_training);

    // Indices whose value strictly exceeds alpha * mean(training cells). Cells whose
    // window runs off one end of the profile use the other side only.
    // Throws ConfigError when the profile is shorter than 2 (training + guard) + 2.
    std::vector<std::size_t> cfar_detect(std::span<const double> profile, const CfarConfig &cfg);

    // Keeps the detections that are local maxima of `profile`. Ties resolve to the lower
    // index. A circular profile wraps its neighbours, as the AoA spectrum does.
    std::vector<std::size_t> local_maxima(std::span<const double> profile, std::span<const std::size_t> indices,
                                          bool circular = false);

    struct DspConfig
    {
        CfarConfig range_cfar{};
        // 8 virtual channels padded to 64 bins leave a mainlobe of +-8 bins, so the
        // angle detector guards the whole lobe and uses a fixed multiplier.
        CfarConfig aoa_cfar{4, 8, 2.0, 1e-3};
        std::size_t range_fft_len = 0; // 0: next power of two >= N_S
        std::size_t aoa_fft_len = 64;
        bool fast_time_window = true;  // Hann over fast time
        bool doppler_gate = true;      // zero-Doppler must dominate the range cell
        bool peaks_only = true;        // local maxima among CFAR detections
        bool peak_interpolation = false;
        bool exhaustive_aoa = false;

        void validate() const;
    };

    // Range x Doppler x channel spectrum, range fastest. Doppler index d holds
    // velocity d * velocity_bin_mps for d < N/2 and (d - N) * velocity_bin_mps above;
    // zero velocity is index 0 (no fft-shift).
    struct RangeDopplerCube
    {
        std::size_t range_bins = 0, doppler_bins = 0, channels = 0;
        double range_bin_m = 0.0;
        double velocity_bin_mps = 0.0;
        std::vector<cplx> data;

        cplx &at(std::size_t r, std::size_t d, std::size_t a) { return data[r + range_bins * (d + doppler_bins * a)]; }
        const cplx &at(std::size_t r, std::size_t d, std::size_t a) const
        {
            return data[r + range_bins * (d + doppler_bins * a)];
        }
    };

    // Zero-Doppler plane of the spectrum. `doppler_dominant[r]` is set when the
    // channel-accumulated zero-Doppler magnitude is at least that of every other
    // Doppler bin in range cell r.
    struct StationarySlice
    {
        std::size_t range_bins = 0, channels = 0;
        double range_bin_m = 0.0;
        std::vector<cplx> data;
        std::vector<char> doppler_dominant;

        cplx &at(std::size_t r, std::size_t a) { return data[r + range_bins * a]; }
        const cplx &at(std::size_t r, std::size_t a) const { return data[r + range_bins * a]; }
    };

    struct TargetEntry
    {
        double range_m = 0.0;
        std::size_t range_bin = 0;
        std::vector<double> angles_rad;  // AoA from boresight, positive counterclockwise
        std::vector<double> angle_magnitude; // AoA spectrum magnitude per angle
        double magnitude = 0.0;          // squared channel-accumulated magnitude at the range bin

        bool operator==(const TargetEntry &) const = default;
    };

    struct TargetList
    {
        double timestamp_s = 0.0;
        double inclination_rad = 0.0;
        std::vector<TargetEntry> entries; // ascending range

        bool operator==(const TargetList &) const = default;
    };

    // Throws ProcessingError when ranges fall outside [0, max_range], angles outside
    // [-pi/2, pi/2], or entries are not sorted.
    void check_target_list(const TargetList &list, double max_range_m);

    // Range bin spacing after zero-padding the fast-time FFT: r_res * N_S / fft_len.
    double range_bin_spacing(const RadarConfig &cfg, std::size_t range_fft_len);
    std::size_t effective_range_fft_len(const RadarConfig &cfg, const DspConfig &dsp);

    RangeDopplerCube range_doppler_transform(const ChirpCube &cube, const DspConfig &dsp = {});
    StationarySlice extract_stationary_slice(const RangeDopplerCube &rd);
    // Per range bin, sum over channels of |slice(r, a)|.
    std::vector<double> accumulate_range_profile(const StationarySlice &slice);

    struct AoaOptions
    {
        std::size_t fft_len = 64;
        bool peaks_only = true;
        bool peak_interpolation = false;
    };

    // Magnitude of the zero-padded channel FFT at one range bin, fft-shifted so index i
    // corresponds to centered bin i - fft_len / 2.
    std::vector<double> aoa_profile(const StationarySlice &slice, std::size_t range_bin, const FftPlan &plan);

    // theta = asin(2 b / fft_len) for centered bin b (fractional bins allowed).
    double aoa_bin_to_angle(double centered_bin, std::size_t fft_len);

    // Angle FFT only on the listed range bins, followed by CFAR on each profile.
    TargetList aoa_on_targets(const StationarySlice &slice, std::span<const std::size_t> range_indices,
                              const CfarConfig &cfg, const AoaOptions &opts = {});
    // Same result computed from an angle FFT over every range bin.
    TargetList aoa_exhaustive(const StationarySlice &slice, std::span<const std::size_t> range_indices,
                              const CfarConfig &cfg, const AoaOptions &opts = {});

    // Range bins that pass the range CFAR, the Doppler gate and the peak filter.
    std::vector<std::size_t> detect_ranges(const StationarySlice &slice, const DspConfig &dsp);

    // Full chain: spectrum, stationary slice, range detection, angle detection.
    TargetList process_frame(const ChirpCube &cube, const DspConfig &dsp = {});
}
