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
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "dimrad/numerics.hpp"
#include "dimrad/radar_config.hpp"
#include "dimrad/scene.hpp"

namespace dimrad
{
    struct Scatterer
    {
        Point2 position;
        double reflectivity = 1.0;       // linear amplitude, >= 0
        double radial_velocity_mps = 0.0; // own closing speed; 0 for stairs
    };

    struct NoiseConfig
    {
        bool enabled = true;
        // Per-sample SNR of the strongest scatterer.
        double snr_db = 20.0;
        // Absolute complex noise power per sample; overrides snr_db when set.
        std::optional<double> noise_power;
    };

    struct SynthesisConfig
    {
        NoiseConfig noise;
        // amplitude = reflectivity / max(r, r_res) when set, reflectivity otherwise
        bool range_falloff = true;
    };

    // Complex baseband samples, N_S x N_P x N_A, fast-time index varying fastest.
    class ChirpCube
    {
    public:
        ChirpCube() = default;
        ChirpCube(const RadarConfig &config, const GaitFrame &frame);

        std::size_t samples() const { return n_s_; }
        std::size_t chirps() const { return n_p_; }
        std::size_t channels() const { return n_a_; }

        cplx &at(std::size_t s, std::size_t p, std::size_t a) { return data_[s + n_s_ * (p + n_p_ * a)]; }
        const cplx &at(std::size_t s, std::size_t p, std::size_t a) const { return data_[s + n_s_ * (p + n_p_ * a)]; }

        std::span<cplx> data() { return data_; }
        std::span<const cplx> data() const { return data_; }

        const RadarConfig &config() const { return config_; }
        const GaitFrame &frame() const { return frame_; }

        // Rounds every sample to single precision, the storage precision of cube files.
        void quantize_to_storage();

    private:
        RadarConfig config_;
        GaitFrame frame_;
        std::size_t n_s_ = 0, n_p_ = 0, n_a_ = 0;
        std::vector<cplx> data_;
    };

    // Range [m] and angle from boresight [rad] of a world point, as seen from `frame`
    // using the physical inclination.
    struct PolarObservation
    {
        double range_m;
        double angle_rad;
        double los_world_rad;
    };
    PolarObservation observe(const GaitFrame &frame, const Point2 &p);

    ChirpCube synthesize_frame(const RadarConfig &cfg, const GaitFrame &frame, std::span<const Scatterer> scatterers,
                               const SynthesisConfig &synth, std::uint64_t seed);

    // One unit-reflectivity stationary scatterer per stair corner, plus optional clutter.
    std::vector<Scatterer> stair_scatterers(const CornerSet &corners, double reflectivity = 1.0);

    // Seeded clutter on treads and risers, `count` points with the given reflectivity.
    std::vector<Scatterer> stair_clutter(const StaircaseSpec &spec, std::size_t count, double reflectivity,
                                         std::uint64_t seed);

    // DIMRADC1 cube file: 64-byte little-endian header followed by interleaved f32 (re, im)
    // samples, s fastest then p then a.
    void write_cube(const std::filesystem::path &path, const ChirpCube &cube);
    std::vector<std::uint8_t> encode_cube(const ChirpCube &cube);
    // `config` supplies the radar parameters; its shape must match the header.
    ChirpCube read_cube(const std::filesystem::path &path, const RadarConfig &config);
    ChirpCube decode_cube(std::span<const std::uint8_t> bytes, const RadarConfig &config);
}
