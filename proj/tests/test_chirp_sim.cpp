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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "dimrad/chirp_sim.hpp"
#include "dimrad/errors.hpp"
#include "oracles.hpp"

// Covered tests:
// - Range bin of a boresight scatterer via the naive DFT
// - Empty noiseless scene
// - Stationary slice keeps the host-cancelled scatterer and drops the mover
// - Linearity of synthesis
// - Constant phase step across the virtual array
// - Amplitude model and noise power
// - Determinism under a fixed seed
// - Cube file round trip and decode errors
// - Rejection of out-of-range and non-finite scatterers

using namespace dimrad;

namespace
{
    GaitFrame level_frame(double host_velocity = 0.0)
    {
        GaitFrame f;
        f.host_velocity_mps = host_velocity;
        return f;
    }

    SynthesisConfig noiseless(bool falloff = false)
    {
        SynthesisConfig s;
        s.noise.enabled = false;
        s.range_falloff = falloff;
        return s;
    }

    Point2 at_polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

    std::vector<cplx> fast_time(const ChirpCube &c, std::size_t p, std::size_t a)
    {
        std::vector<cplx> v(c.samples());
        for (std::size_t s = 0; s < v.size(); ++s)
            v[s] = c.at(s, p, a);
        return v;
    }
}

TEST_CASE("Boresight scatterer lands in its range bin")
{
    const RadarConfig cfg;
    const double r_res = derive_attributes(cfg).range_resolution_m;
    for (int bin : {10, 50, 97})
    {
        const std::vector<Scatterer> sc{{{bin * r_res, 0.0}, 1.0, 0.0}};
        const auto cube = synthesize_frame(cfg, level_frame(), sc, noiseless(), 1);
        for (std::size_t a = 0; a < cube.channels(); ++a)
        {
            const auto spec = oracle::dft(fast_time(cube, 0, a), cube.samples());
            std::vector<double> mag(spec.size());
            for (std::size_t i = 0; i < spec.size(); ++i)
                mag[i] = std::abs(spec[i]);
            CHECK(oracle::argmax(mag) == static_cast<std::size_t>(bin));
            CHECK(mag[bin] == Catch::Approx(static_cast<double>(cube.samples())).epsilon(1e-9));
        }
    }
}

TEST_CASE("Empty noiseless scene gives a zero cube")
{
    const RadarConfig cfg;
    const auto cube = synthesize_frame(cfg, level_frame(), {}, noiseless(), 1);
    CHECK(cube.data().size() == 144u * 8u * 8u);
    for (const auto &v : cube.data())
        CHECK(v == cplx{});

    // Noise relative to the strongest scatterer is zero when there is none.
    SynthesisConfig snr;
    const auto cube2 = synthesize_frame(cfg, level_frame(), {}, snr, 1);
    for (const auto &v : cube2.data())
        CHECK(v == cplx{});
}

TEST_CASE("Stationary slice keeps host-cancelled scatterers only")
{
    const RadarConfig cfg;
    const auto attrs = derive_attributes(cfg);
    const double v_host = 0.7;
    const double r_res = attrs.range_resolution_m;
    // first: own motion cancels the host motion; second: net closing speed of 2 v_res
    const std::vector<Scatterer> sc{{{30 * r_res, 0.0}, 1.0, -v_host},
                                    {{70 * r_res, 0.0}, 1.0, 2.0 * attrs.velocity_resolution_mps - v_host}};
    const auto cube = synthesize_frame(cfg, level_frame(v_host), sc, noiseless(), 1);

    // Brute-force range DFT per chirp, then the zero-Doppler sum over chirps.
    for (std::size_t a = 0; a < cube.channels(); a += 3)
    {
        std::vector<std::vector<cplx>> range(cube.chirps());
        for (std::size_t p = 0; p < cube.chirps(); ++p)
            range[p] = oracle::dft(fast_time(cube, p, a), cube.samples());
        auto doppler_at = [&](std::size_t r) {
            std::vector<cplx> slow(cube.chirps());
            for (std::size_t p = 0; p < cube.chirps(); ++p)
                slow[p] = range[p][r];
            return oracle::dft(slow, cube.chirps());
        };
        const auto d30 = doppler_at(30);
        const auto d70 = doppler_at(70);
        CHECK(std::abs(d30[0]) == Catch::Approx(144.0 * 8.0).epsilon(1e-9));
        CHECK(std::abs(d70[0]) < 1e-6);
        CHECK(std::abs(d70[2]) == Catch::Approx(144.0 * 8.0).epsilon(1e-9));
    }
}

TEST_CASE("Synthesis is linear in the scatterer set")
{
    const RadarConfig cfg;
    GaitFrame f = level_frame(0.8);
    f.true_inclination_rad = deg2rad(-17.0);
    f.radar_origin = {0.3, 0.42};
    const std::vector<Scatterer> a{{{2.1, 0.15}, 1.0, 0.0}, {{2.4, 0.30}, 0.6, 0.0}};
    const std::vector<Scatterer> b{{{3.3, 0.9}, 0.3, 1.2}};
    std::vector<Scatterer> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());

    const auto ca = synthesize_frame(cfg, f, a, noiseless(true), 1);
    const auto cb = synthesize_frame(cfg, f, b, noiseless(true), 1);
    const auto cab = synthesize_frame(cfg, f, ab, noiseless(true), 1);
    for (std::size_t i = 0; i < cab.data().size(); ++i)
    {
        const cplx sum = ca.data()[i] + cb.data()[i];
        CHECK(std::abs(cab.data()[i] - sum) <= 1e-10 * std::max(1.0, std::abs(sum)));
    }
}

TEST_CASE("Phase front across the virtual array")
{
    const RadarConfig cfg;
    for (double deg : {-60.0, -20.0, 0.0, 7.5, 35.0})
    {
        const double th = deg2rad(deg);
        const std::vector<Scatterer> sc{{at_polar(2.5, th), 1.0, 0.0}};
        const auto cube = synthesize_frame(cfg, level_frame(), sc, noiseless(), 1);
        for (std::size_t s : {0u, 71u, 143u})
            for (std::size_t a = 0; a + 1 < cube.channels(); ++a)
            {
                const double step = std::arg(cube.at(s, 3, a + 1) / cube.at(s, 3, a));
                CHECK(std::abs(std::remainder(step - kPi * std::sin(th), 2.0 * kPi)) < 1e-9);
            }
    }
}

TEST_CASE("Amplitude model and noise power")
{
    const RadarConfig cfg;
    const double r_res = derive_attributes(cfg).range_resolution_m;
    const std::vector<Scatterer> sc{{{2.0, 0.0}, 0.8, 0.0}};
    const auto plain = synthesize_frame(cfg, level_frame(), sc, noiseless(false), 1);
    const auto fall = synthesize_frame(cfg, level_frame(), sc, noiseless(true), 1);
    CHECK(std::abs(plain.at(5, 0, 0)) == Catch::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(fall.at(5, 0, 0)) == Catch::Approx(0.4).epsilon(1e-12));

    const std::vector<Scatterer> close{{{0.01, 0.0}, 1.0, 0.0}};
    CHECK(std::abs(synthesize_frame(cfg, level_frame(), close, noiseless(true), 1).at(0, 0, 0)) ==
          Catch::Approx(1.0 / r_res).epsilon(1e-12));

    SynthesisConfig absolute;
    absolute.noise.noise_power = 0.5;
    const auto noise = synthesize_frame(cfg, level_frame(), {}, absolute, 9);
    double p = 0.0;
    for (const auto &v : noise.data())
        p += std::norm(v);
    CHECK(p / static_cast<double>(noise.data().size()) == Catch::Approx(0.5).epsilon(0.05));

    // 20 dB below a unit-amplitude scatterer
    SynthesisConfig snr;
    snr.range_falloff = false;
    const auto noisy = synthesize_frame(cfg, level_frame(), sc, snr, 9);
    double q = 0.0;
    for (std::size_t i = 0; i < noisy.data().size(); ++i)
        q += std::norm(noisy.data()[i] - plain.data()[i]);
    CHECK(q / static_cast<double>(noisy.data().size()) == Catch::Approx(0.64 * 0.01).epsilon(0.05));
}

TEST_CASE("Synthesis is deterministic for a fixed seed")
{
    const RadarConfig cfg;
    const std::vector<Scatterer> sc{{{2.0, 0.3}, 1.0, 0.0}};
    const auto a = synthesize_frame(cfg, level_frame(0.7), sc, SynthesisConfig{}, 1234);
    const auto b = synthesize_frame(cfg, level_frame(0.7), sc, SynthesisConfig{}, 1234);
    const auto c = synthesize_frame(cfg, level_frame(0.7), sc, SynthesisConfig{}, 1235);
    bool differs = false;
    for (std::size_t i = 0; i < a.data().size(); ++i)
    {
        CHECK(a.data()[i] == b.data()[i]);
        differs = differs || a.data()[i] != c.data()[i];
    }
    CHECK(differs);
}

TEST_CASE("Cube file round trip")
{
    const RadarConfig cfg;
    GaitFrame f = level_frame(0.71);
    f.timestamp_s = 1.3;
    f.inclination_rad = -0.31;
    const std::vector<Scatterer> sc{{{2.0, 0.3}, 1.0, 0.0}};
    auto cube = synthesize_frame(cfg, f, sc, SynthesisConfig{}, 5);
    cube.quantize_to_storage();

    const auto bytes = encode_cube(cube);
    CHECK(bytes.size() == 64 + 144u * 8u * 8u * 8u);
    CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "DIMRADC1");

    const auto back = decode_cube(bytes, cfg);
    CHECK(back.frame().timestamp_s == 1.3);
    CHECK(back.frame().inclination_rad == -0.31);
    CHECK(back.frame().host_velocity_mps == 0.71);
    for (std::size_t i = 0; i < cube.data().size(); ++i)
        CHECK(back.data()[i] == cube.data()[i]);
    CHECK(encode_cube(back) == bytes);

    const auto path = std::filesystem::temp_directory_path() / "dimrad_test_roundtrip.cube";
    write_cube(path, cube);
    const auto from_file = read_cube(path, cfg);
    CHECK(encode_cube(from_file) == bytes);
    std::filesystem::remove(path);
}

TEST_CASE("Cube decode errors")
{
    const RadarConfig cfg;
    const auto bytes = encode_cube(ChirpCube(cfg, GaitFrame{}));

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(decode_cube(bad_magic, cfg), IoError);

    auto truncated = bytes;
    truncated.resize(bytes.size() - 8);
    CHECK_THROWS_AS(decode_cube(truncated, cfg), IoError);

    RadarConfig other = cfg;
    other.chirps_per_frame = 16;
    CHECK_THROWS_AS(decode_cube(bytes, other), ConfigError);

    auto nan_sample = bytes;
    const float nan = std::numeric_limits<float>::quiet_NaN();
    std::memcpy(nan_sample.data() + 64, &nan, sizeof nan);
    CHECK_THROWS_AS(decode_cube(nan_sample, cfg), ProcessingError);

    CHECK_THROWS_AS(read_cube("/nonexistent/dir/frame.cube", cfg), IoError);
}

TEST_CASE("Invalid scatterers are rejected")
{
    const RadarConfig cfg;
    const std::vector<Scatterer> far{{{6.5, 0.0}, 1.0, 0.0}};
    CHECK_THROWS_AS(synthesize_frame(cfg, level_frame(), far, noiseless(), 1), RangeOverflowError);

    const std::vector<Scatterer> negative{{{2.0, 0.0}, -1.0, 0.0}};
    CHECK_THROWS_AS(synthesize_frame(cfg, level_frame(), negative, noiseless(), 1), ConfigError);

    const std::vector<Scatterer> nan{{{std::numeric_limits<double>::quiet_NaN(), 0.0}, 1.0, 0.0}};
    CHECK_THROWS_AS(synthesize_frame(cfg, level_frame(), nan, noiseless(), 1), ProcessingError);
}
