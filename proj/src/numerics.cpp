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

#include "dimrad/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "dimrad/errors.hpp"

namespace dimrad
{
    bool is_power_of_two(std::size_t n)
    {
        return n != 0 && (n & (n - 1)) == 0;
    }

    std::size_t next_power_of_two(std::size_t n)
    {
        std::size_t p = 1;
        while (p < n)
            p <<= 1;
        return p;
    }

    FftPlan::FftPlan(std::size_t n) : n_(n)
    {
        if (!is_power_of_two(n))
            throw ConfigError("FFT length " + std::to_string(n) + " is not a power of two");

        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < n)
            ++bits;

        bitrev_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            std::size_t r = 0;
            for (std::size_t b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b))
                    r |= std::size_t{1} << (bits - 1 - b);
            bitrev_[i] = r;
        }

        twiddle_.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k)
            twiddle_[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
    }

    void FftPlan::forward(std::span<cplx> data) const { transform(data, false); }

    void FftPlan::inverse(std::span<cplx> data) const
    {
        transform(data, true);
        const double scale = 1.0 / static_cast<double>(n_);
        for (auto &v : data)
            v *= scale;
    }

    void FftPlan::transform(std::span<cplx> data, bool inverse) const
    {
        if (data.size() != n_)
            throw ConfigError("FFT buffer length does not match plan");

        for (std::size_t i = 0; i < n_; ++i)
            if (i < bitrev_[i])
                std::swap(data[i], data[bitrev_[i]]);

        for (std::size_t len = 2; len <= n_; len <<= 1)
        {
            const std::size_t half = len / 2;
            const std::size_t stride = n_ / len;
            for (std::size_t start = 0; start < n_; start += len)
            {
                for (std::size_t k = 0; k < half; ++k)
                {
                    cplx w = twiddle_[k * stride];
                    if (inverse)
                        w = std::conj(w);
                    const cplx u = data[start + k];
                    const cplx v = data[start + k + half] * w;
                    data[start + k] = u + v;
                    data[start + k + half] = u - v;
                }
            }
        }
    }

    static std::vector<cplx> padded(std::span<const cplx> input, std::size_t len)
    {
        if (!is_power_of_two(len))
            throw ConfigError("unsupported FFT length " + std::to_string(len) + " (power of two required)");
        if (input.size() > len)
            throw ConfigError("FFT length shorter than input");
        std::vector<cplx> buf(len, cplx{});
        std::copy(input.begin(), input.end(), buf.begin());
        return buf;
    }

    std::vector<cplx> fft(std::span<const cplx> input, std::size_t len)
    {
        auto buf = padded(input, len);
        FftPlan(len).forward(buf);
        return buf;
    }

    std::vector<cplx> ifft(std::span<const cplx> input, std::size_t len)
    {
        auto buf = padded(input, len);
        FftPlan(len).inverse(buf);
        return buf;
    }

    std::vector<double> hann_window(std::size_t n)
    {
        std::vector<double> w(n, 1.0);
        if (n < 2)
            return w;
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1)));
        return w;
    }

    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
    {
        return splitmix64(splitmix64(base) ^ (stream * 0xD6E8FEB86659FD93ull + 0x632BE59BD9B4E019ull));
    }

    cplx Rng::complex_normal(double power)
    {
        const double sigma = std::sqrt(power / 2.0);
        std::normal_distribution<double> n(0.0, 1.0);
        const double re = n(engine_);
        const double im = n(engine_);
        return {sigma * re, sigma * im};
    }

    std::uint64_t fnv1a64(std::string_view bytes)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : bytes)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::size_t worker_count()
    {
        if (const char *env = std::getenv("DIMRAD_THREADS"))
        {
            char *end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
                return static_cast<std::size_t>(v);
        }
        return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }

    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn)
    {
        const std::size_t workers = std::min(worker_count(), n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto work = [&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }
}
