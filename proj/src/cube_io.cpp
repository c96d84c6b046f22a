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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "dimrad/chirp_sim.hpp"
#include "dimrad/errors.hpp"

namespace dimrad
{
    namespace
    {
        constexpr std::array<char, 8> kMagic{'D', 'I', 'M', 'R', 'A', 'D', 'C', '1'};
        constexpr std::size_t kHeaderBytes = 64;

        template <typename T>
        void put_le(std::vector<std::uint8_t> &out, std::size_t offset, T value)
        {
            static_assert(std::is_trivially_copyable_v<T>);
            std::array<std::uint8_t, sizeof(T)> raw{};
            std::memcpy(raw.data(), &value, sizeof(T));
            if constexpr (std::endian::native == std::endian::big)
                std::reverse(raw.begin(), raw.end());
            std::memcpy(out.data() + offset, raw.data(), sizeof(T));
        }

        template <typename T>
        T get_le(std::span<const std::uint8_t> in, std::size_t offset)
        {
            std::array<std::uint8_t, sizeof(T)> raw{};
            std::memcpy(raw.data(), in.data() + offset, sizeof(T));
            if constexpr (std::endian::native == std::endian::big)
                std::reverse(raw.begin(), raw.end());
            T value;
            std::memcpy(&value, raw.data(), sizeof(T));
            return value;
        }
    }

    std::vector<std::uint8_t> encode_cube(const ChirpCube &cube)
    {
        const std::size_t n = cube.data().size();
        std::vector<std::uint8_t> out(kHeaderBytes + n * 2 * sizeof(float), 0);
        std::memcpy(out.data(), kMagic.data(), kMagic.size());
        put_le<std::uint32_t>(out, 8, static_cast<std::uint32_t>(cube.samples()));
        put_le<std::uint32_t>(out, 12, static_cast<std::uint32_t>(cube.chirps()));
        put_le<std::uint32_t>(out, 16, static_cast<std::uint32_t>(cube.channels()));
        put_le<double>(out, 20, cube.frame().timestamp_s);
        put_le<double>(out, 28, cube.frame().inclination_rad);
        put_le<double>(out, 36, cube.frame().host_velocity_mps);
        // bytes 44..63 reserved, zero

        std::size_t off = kHeaderBytes;
        for (const auto &v : cube.data())
        {
            put_le<float>(out, off, static_cast<float>(v.real()));
            put_le<float>(out, off + 4, static_cast<float>(v.imag()));
            off += 8;
        }
        return out;
    }

    ChirpCube decode_cube(std::span<const std::uint8_t> bytes, const RadarConfig &config)
    {
        if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
            throw IoError("cube: bad magic or truncated header");

        const auto n_s = get_le<std::uint32_t>(bytes, 8);
        const auto n_p = get_le<std::uint32_t>(bytes, 12);
        const auto n_a = get_le<std::uint32_t>(bytes, 16);
        if (n_s != config.samples_per_chirp || n_p != config.chirps_per_frame || n_a != config.virtual_antennas())
            throw ConfigError("cube: shape does not match radar config");

        const std::size_t n = std::size_t{n_s} * n_p * n_a;
        if (bytes.size() != kHeaderBytes + n * 8)
            throw IoError("cube: payload size does not match header");

        GaitFrame frame;
        frame.timestamp_s = get_le<double>(bytes, 20);
        frame.inclination_rad = get_le<double>(bytes, 28);
        frame.true_inclination_rad = frame.inclination_rad;
        frame.host_velocity_mps = get_le<double>(bytes, 36);

        ChirpCube cube(config, frame);
        std::size_t off = kHeaderBytes;
        for (auto &v : cube.data())
        {
            const float re = get_le<float>(bytes, off);
            const float im = get_le<float>(bytes, off + 4);
            if (!std::isfinite(re) || !std::isfinite(im))
                throw ProcessingError("cube: non-finite sample");
            v = {re, im};
            off += 8;
        }
        return cube;
    }

    void write_cube(const std::filesystem::path &path, const ChirpCube &cube)
    {
        const auto bytes = encode_cube(cube);
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoError("cannot open " + path.string() + " for writing");
        os.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!os)
            throw IoError("failed writing " + path.string());
    }

    ChirpCube read_cube(const std::filesystem::path &path, const RadarConfig &config)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw IoError("cannot open " + path.string());
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
        return decode_cube(bytes, config);
    }
}
