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

#include "dimrad/chirp_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dimrad/errors.hpp"

namespace dimrad
{
    ChirpCube::ChirpCube(const RadarConfig &config, const GaitFrame &frame)
        : config_(config), frame_(frame), n_s_(config.samples_per_chirp), n_p_(config.chirps_per_frame),
          n_a_(config.virtual_antennas()), data_(n_s_ * n_p_ * n_a_, cplx{})
    {
    }

    void ChirpCube::quantize_to_storage()
    {
        for (auto &v : data_)
            v = {static_cast<double>(static_cast<float>(v.real())), static_cast<double>(static_cast<float>(v.imag()))};
    }

    PolarObservation observe(const GaitFrame &frame, const Point2 &p)
    {
        const double dx = p.x - frame.radar_origin.x;
        const double dy = p.y - frame.radar_origin.y;
        PolarObservation o{};
        o.range_m = std::hypot(dx, dy);
        o.los_world_rad = std::atan2(dy, dx);
        o.angle_rad = std::remainder(o.los_world_rad - frame.true_inclination_rad, 2.0 * kPi);
        return o;
    }

    ChirpCube synthesize_frame(const RadarConfig &cfg, const GaitFrame &frame, std::span<const Scatterer> scatterers,
                               const SynthesisConfig &synth, std::uint64_t seed)
    {
        const auto attrs = derive_attributes(cfg);
        ChirpCube cube(cfg, frame);

        const std::size_t n_s = cube.samples();
        const std::size_t n_p = cube.chirps();
        const std::size_t n_a = cube.channels();
        const double t_s = cfg.chirp_duration_s / static_cast<double>(n_s);

        if (!std::isfinite(frame.host_velocity_mps) || !std::isfinite(frame.true_inclination_rad) ||
            !std::isfinite(frame.radar_origin.x) || !std::isfinite(frame.radar_origin.y))
            throw ProcessingError("synthesis: non-finite radar pose");

        double strongest_power = 0.0;
        std::vector<cplx> fast(n_s), slow(n_p * n_a);

        for (const auto &sc : scatterers)
        {
            if (!std::isfinite(sc.position.x) || !std::isfinite(sc.position.y) || !std::isfinite(sc.reflectivity) ||
                !std::isfinite(sc.radial_velocity_mps))
                throw ProcessingError("synthesis: non-finite scatterer");
            if (sc.reflectivity < 0.0)
                throw ConfigError("synthesis: negative reflectivity");

            const auto obs = observe(frame, sc.position);
            if (obs.range_m > attrs.max_range_m)
                throw RangeOverflowError("synthesis: scatterer at " + std::to_string(obs.range_m) +
                                         " m beyond max range " + std::to_string(attrs.max_range_m) + " m");

            const double amplitude = synth.range_falloff
                                         ? sc.reflectivity / std::max(obs.range_m, attrs.range_resolution_m)
                                         : sc.reflectivity;
            strongest_power = std::max(strongest_power, amplitude * amplitude);

            const double f_beat = 2.0 * cfg.bandwidth_hz * obs.range_m / (kSpeedOfLight * cfg.chirp_duration_s);
            const double v_net = frame.host_velocity_mps * std::cos(obs.los_world_rad) + sc.radial_velocity_mps;
            const double f_dopp = 2.0 * v_net * cfg.carrier_frequency_hz / kSpeedOfLight;
            const double spatial = kPi * std::sin(obs.angle_rad);

            for (std::size_t s = 0; s < n_s; ++s)
                fast[s] = std::polar(amplitude, 2.0 * kPi * f_beat * static_cast<double>(s) * t_s);
            for (std::size_t a = 0; a < n_a; ++a)
                for (std::size_t p = 0; p < n_p; ++p)
                    slow[p + n_p * a] = std::polar(1.0, 2.0 * kPi * f_dopp * static_cast<double>(p) * cfg.chirp_duration_s +
                                                            spatial * static_cast<double>(a));

            for (std::size_t a = 0; a < n_a; ++a)
                for (std::size_t p = 0; p < n_p; ++p)
                {
                    const cplx ph = slow[p + n_p * a];
                    for (std::size_t s = 0; s < n_s; ++s)
                        cube.at(s, p, a) += fast[s] * ph;
                }
        }

        const auto &noise = synth.noise;
        double noise_power = 0.0;
        if (noise.enabled)
        {
            if (noise.noise_power)
                noise_power = *noise.noise_power;
            else if (strongest_power > 0.0)
                noise_power = strongest_power / std::pow(10.0, noise.snr_db / 10.0);
            if (!std::isfinite(noise_power) || noise_power < 0.0)
                throw ConfigError("synthesis: invalid noise power");
        }
        if (noise_power > 0.0)
        {
            Rng rng(seed);
            for (auto &v : cube.data())
                v += rng.complex_normal(noise_power);
        }

        for (const auto &v : cube.data())
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ProcessingError("synthesis produced a non-finite sample");
        return cube;
    }

    std::vector<Scatterer> stair_scatterers(const CornerSet &corners, double reflectivity)
    {
        std::vector<Scatterer> out;
        out.reserve(corners.corners.size());
        for (const auto &c : corners.corners)
            out.push_back({c, reflectivity, 0.0});
        return out;
    }

    std::vector<Scatterer> stair_clutter(const StaircaseSpec &spec, std::size_t count, double reflectivity,
                                         std::uint64_t seed)
    {
        spec.validate();
        Rng rng(seed);
        std::vector<Scatterer> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            const int step = static_cast<int>(rng.uniform(0.0, static_cast<double>(spec.step_count)));
            const double u = rng.uniform(0.05, 0.95);
            Point2 p;
            if (rng.uniform(0.0, 1.0) < 0.5)
            {
                // tread of step `step`, between its corner and the next riser
                p = {spec.foot_x_m + step * spec.depth_m + u * spec.depth_m, (step + 1) * spec.height_m};
            }
            else
            {
                // riser below corner `step`
                p = {spec.foot_x_m + step * spec.depth_m, (step + u) * spec.height_m};
            }
            out.push_back({p, reflectivity, 0.0});
        }
        return out;
    }
}
