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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dimrad/numerics.hpp"

// Reference implementations for the tests. Deliberately naive and independent of the
// library code paths they check.
namespace oracle
{
    using dimrad::cplx;

    // O(n^2) DFT of `x` zero-padded to `len`, X[k] = sum x[n] exp(-2 pi j k n / len).
    inline std::vector<cplx> dft(std::span<const cplx> x, std::size_t len)
    {
        std::vector<cplx> out(len);
        for (std::size_t k = 0; k < len; ++k)
        {
            cplx acc{};
            for (std::size_t n = 0; n < x.size(); ++n)
            {
                const double ph = -2.0 * dimrad::kPi * static_cast<double>((k * n) % len) / static_cast<double>(len);
                acc += x[n] * cplx(std::cos(ph), std::sin(ph));
            }
            out[k] = acc;
        }
        return out;
    }

    // Largest |a - b| relative to the largest |b|.
    inline double max_rel_error(std::span<const cplx> a, std::span<const cplx> b)
    {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            num = std::max(num, std::abs(a[i] - b[i]));
            den = std::max(den, std::abs(b[i]));
        }
        return den > 0.0 ? num / den : num;
    }

    inline std::vector<cplx> random_signal(dimrad::Rng &rng, std::size_t n)
    {
        std::vector<cplx> v(n);
        for (auto &z : v)
            z = {rng.normal(0.0, 1.0), rng.normal(0.0, 1.0)};
        return v;
    }

    inline std::vector<double> hann(std::size_t n)
    {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 - 0.5 * std::cos(2.0 * dimrad::kPi * static_cast<double>(i) / static_cast<double>(n - 1));
        return w;
    }

    template <typename T>
    std::size_t argmax(const std::vector<T> &v)
    {
        return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    }
}
