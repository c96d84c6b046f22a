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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace dimrad
{
    using cplx = std::complex<double>;

    inline constexpr double kPi = 3.14159265358979323846;

    constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
    constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

    bool is_power_of_two(std::size_t n);
    std::size_t next_power_of_two(std::size_t n);

    // Radix-2 decimation-in-time FFT with precomputed twiddles and bit-reversal table.
    // Forward transform is unnormalized; inverse applies 1/n.
    class FftPlan
    {
    public:
        explicit FftPlan(std::size_t n);

        std::size_t size() const { return n_; }
        void forward(std::span<cplx> data) const;
        void inverse(std::span<cplx> data) const;

    private:
        void transform(std::span<cplx> data, bool inverse) const;

        std::size_t n_;
        std::vector<std::size_t> bitrev_;
        std::vector<cplx> twiddle_; // exp(-2*pi*j*k/n), k < n/2
    };

    // Zero-pads `input` to `len` and returns its DFT. `len` must be a power of two
    // not shorter than the input; anything else is a ConfigError.
    std::vector<cplx> fft(std::span<const cplx> input, std::size_t len);
    std::vector<cplx> ifft(std::span<const cplx> input, std::size_t len);

    // Symmetric Hann window, w[n] = 0.5 (1 - cos(2 pi n / (N - 1))).
    std::vector<double> hann_window(std::size_t n);

    // Swaps the two halves so index 0 holds the most negative frequency.
    template <typename T>
    std::vector<T> fft_shift(std::span<const T> in)
    {
        std::vector<T> out(in.size());
        const std::size_t half = in.size() / 2;
        for (std::size_t i = 0; i < in.size(); ++i)
            out[(i + half) % in.size()] = in[i];
        return out;
    }

    // SplitMix64 step; used to derive independent stream seeds from one base seed.
    std::uint64_t splitmix64(std::uint64_t x);
    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
        double normal(double mean, double stddev) { return std::normal_distribution<double>(mean, stddev)(engine_); }
        // Circular complex Gaussian with E|z|^2 = power.
        cplx complex_normal(double power);
        std::mt19937_64 &engine() { return engine_; }

    private:
        std::mt19937_64 engine_;
    };

    // FNV-1a, for config hashes and dataset fingerprints.
    std::uint64_t fnv1a64(std::string_view bytes);

    // Worker count for fan-out loops: DIMRAD_THREADS when set to a positive integer,
    // otherwise the hardware concurrency (at least 1).
    std::size_t worker_count();

    // Runs fn(i) for i in [0, n) on up to worker_count() threads. Each index is
    // visited exactly once; the first exception thrown is rethrown after all workers join.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);
}
