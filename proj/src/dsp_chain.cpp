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

#include "dimrad/dsp_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dimrad/errors.hpp"

namespace dimrad
{
    void CfarConfig::validate() const
    {
        if (training_cells < 1)
            throw ConfigError("cfar: training_cells must be >= 1");
        if (guard_cells < 0)
            throw ConfigError("cfar: guard_cells must be >= 0");
        if (scale_factor && !(*scale_factor > 0.0 && std::isfinite(*scale_factor)))
            throw ConfigError("cfar: scale factor must be positive");
        if (!scale_factor && !(false_alarm_rate > 0.0 && false_alarm_rate < 1.0))
            throw ConfigError("cfar: false alarm rate must lie in (0, 1)");
    }

    double cfar_scale_from_pfa(double pfa, std::size_t n_training)
    {
        const double n = static_cast<double>(n_training);
        return n * (std::pow(pfa, -1.0 / n) - 1.0);
    }

    double CfarConfig::alpha(std::size_t n_training) const
    {
        return scale_factor ? *scale_factor : cfar_scale_from_pfa(false_alarm_rate, n_training);
    }

    std::vector<std::size_t> cfar_detect(std::span<const double> profile, const CfarConfig &cfg)
    {
        cfg.validate();
        const auto t = static_cast<std::size_t>(cfg.training_cells);
        const auto g = static_cast<std::size_t>(cfg.guard_cells);
        const std::size_t n = profile.size();
        if (n <= 2 * (t + g) + 1)
            throw ConfigError("cfar: profile of length " + std::to_string(n) + " too short for window");

        const double alpha_both = cfg.alpha(2 * t);
        const double alpha_one = cfg.alpha(t);

        std::vector<double> prefix(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            prefix[i + 1] = prefix[i] + profile[i];
        auto window_sum = [&](std::size_t lo, std::size_t hi) { return prefix[hi] - prefix[lo]; }; // [lo, hi)

        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < n; ++i)
        {
            const bool left_ok = i >= g + t;
            const bool right_ok = i + g + t < n;
            double sum = 0.0, alpha = 0.0;
            std::size_t count = 0;
            if (left_ok)
            {
                sum += window_sum(i - g - t, i - g);
                count += t;
            }
            if (right_ok)
            {
                sum += window_sum(i + g + 1, i + g + t + 1);
                count += t;
            }
            alpha = count == 2 * t ? alpha_both : alpha_one;
            const double threshold = alpha * sum / static_cast<double>(count);
            if (profile[i] > threshold)
                hits.push_back(i);
        }
        return hits;
    }

    std::vector<std::size_t> local_maxima(std::span<const double> profile, std::span<const std::size_t> indices,
                                          bool circular)
    {
        const std::size_t n = profile.size();
        std::vector<std::size_t> out;
        for (std::size_t i : indices)
        {
            const bool has_left = i > 0 || (circular && n > 1);
            const bool has_right = i + 1 < n || (circular && n > 1);
            const bool above_left = !has_left || profile[i] > profile[(i + n - 1) % n];
            const bool above_right = !has_right || profile[i] >= profile[(i + 1) % n];
            if (above_left && above_right)
                out.push_back(i);
        }
        return out;
    }

    void DspConfig::validate() const
    {
        range_cfar.validate();
        aoa_cfar.validate();
        if (range_fft_len != 0 && !is_power_of_two(range_fft_len))
            throw ConfigError("dsp: range FFT length must be a power of two");
        if (!is_power_of_two(aoa_fft_len))
            throw ConfigError("dsp: AoA FFT length must be a power of two");
    }

    void check_target_list(const TargetList &list, double max_range_m)
    {
        double prev = -1.0;
        for (const auto &e : list.entries)
        {
            if (!(e.range_m >= 0.0 && e.range_m <= max_range_m))
                throw ProcessingError("target list: range out of bounds");
            if (e.range_m < prev)
                throw ProcessingError("target list: entries not sorted by range");
            prev = e.range_m;
            for (double th : e.angles_rad)
                if (!(std::abs(th) <= kPi / 2))
                    throw ProcessingError("target list: angle out of bounds");
        }
    }

    double range_bin_spacing(const RadarConfig &cfg, std::size_t range_fft_len)
    {
        const auto attrs = derive_attributes(cfg);
        return attrs.range_resolution_m * static_cast<double>(cfg.samples_per_chirp) / static_cast<double>(range_fft_len);
    }

    std::size_t effective_range_fft_len(const RadarConfig &cfg, const DspConfig &dsp)
    {
        const std::size_t len = dsp.range_fft_len ? dsp.range_fft_len : next_power_of_two(cfg.samples_per_chirp);
        if (len < cfg.samples_per_chirp)
            throw ConfigError("dsp: range FFT shorter than samples per chirp");
        return len;
    }

    RangeDopplerCube range_doppler_transform(const ChirpCube &cube, const DspConfig &dsp)
    {
        dsp.validate();
        for (const auto &v : cube.data())
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ProcessingError("range-Doppler: non-finite input sample");

        const auto &cfg = cube.config();
        const auto attrs = derive_attributes(cfg);
        const std::size_t n_s = cube.samples(), n_p = cube.chirps(), n_a = cube.channels();
        const std::size_t n_r = effective_range_fft_len(cfg, dsp);
        const std::size_t n_d = next_power_of_two(n_p);

        RangeDopplerCube rd;
        rd.range_bins = n_r;
        rd.doppler_bins = n_d;
        rd.channels = n_a;
        rd.range_bin_m = range_bin_spacing(cfg, n_r);
        rd.velocity_bin_mps = attrs.velocity_resolution_mps * static_cast<double>(n_p) / static_cast<double>(n_d);
        rd.data.assign(n_r * n_d * n_a, cplx{});

        const auto window = dsp.fast_time_window ? hann_window(n_s) : std::vector<double>(n_s, 1.0);
        const FftPlan range_plan(n_r), doppler_plan(n_d);

        std::vector<cplx> buf(n_r);
        for (std::size_t a = 0; a < n_a; ++a)
            for (std::size_t p = 0; p < n_p; ++p)
            {
                std::fill(buf.begin(), buf.end(), cplx{});
                for (std::size_t s = 0; s < n_s; ++s)
                    buf[s] = cube.at(s, p, a) * window[s];
                range_plan.forward(buf);
                for (std::size_t r = 0; r < n_r; ++r)
                    rd.at(r, p, a) = buf[r];
            }

        std::vector<cplx> dbuf(n_d);
        for (std::size_t a = 0; a < n_a; ++a)
            for (std::size_t r = 0; r < n_r; ++r)
            {
                std::fill(dbuf.begin(), dbuf.end(), cplx{});
                for (std::size_t p = 0; p < n_p; ++p)
                    dbuf[p] = rd.at(r, p, a);
                doppler_plan.forward(dbuf);
                for (std::size_t d = 0; d < n_d; ++d)
                    rd.at(r, d, a) = dbuf[d];
            }
        return rd;
    }

    StationarySlice extract_stationary_slice(const RangeDopplerCube &rd)
    {
        StationarySlice slice;
        slice.range_bins = rd.range_bins;
        slice.channels = rd.channels;
        slice.range_bin_m = rd.range_bin_m;
        slice.data.resize(rd.range_bins * rd.channels);
        slice.doppler_dominant.assign(rd.range_bins, 0);

        std::vector<double> acc(rd.doppler_bins);
        for (std::size_t r = 0; r < rd.range_bins; ++r)
        {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t a = 0; a < rd.channels; ++a)
            {
                slice.at(r, a) = rd.at(r, 0, a);
                for (std::size_t d = 0; d < rd.doppler_bins; ++d)
                    acc[d] += std::abs(rd.at(r, d, a));
            }
            slice.doppler_dominant[r] = std::all_of(acc.begin() + 1, acc.end(), [&](double v) { return acc[0] >= v; });
        }
        return slice;
    }

    std::vector<double> accumulate_range_profile(const StationarySlice &slice)
    {
        std::vector<double> profile(slice.range_bins, 0.0);
        for (std::size_t r = 0; r < slice.range_bins; ++r)
            for (std::size_t a = 0; a < slice.channels; ++a)
                profile[r] += std::abs(slice.at(r, a));
        return profile;
    }

    std::vector<double> aoa_profile(const StationarySlice &slice, std::size_t range_bin, const FftPlan &plan)
    {
        const std::size_t len = plan.size();
        if (slice.channels > len)
            throw ConfigError("AoA FFT shorter than channel count");
        std::vector<cplx> buf(len, cplx{});
        for (std::size_t a = 0; a < slice.channels; ++a)
            buf[a] = slice.at(range_bin, a);
        plan.forward(buf);

        std::vector<double> mag(len);
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < len; ++i)
            mag[(i + half) % len] = std::abs(buf[i]);
        return mag;
    }

    double aoa_bin_to_angle(double centered_bin, std::size_t fft_len)
    {
        const double s = std::clamp(2.0 * centered_bin / static_cast<double>(fft_len), -1.0, 1.0);
        return std::asin(s);
    }

    namespace
    {
        // Vertex offset of the parabola through (-1, a), (0, b), (1, c), in [-0.5, 0.5].
        double parabolic_offset(double a, double b, double c)
        {
            const double denom = a - 2.0 * b + c;
            if (denom >= 0.0)
                return 0.0;
            return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
        }

        double range_detection_power(const StationarySlice &slice, std::size_t r)
        {
            double acc = 0.0;
            for (std::size_t a = 0; a < slice.channels; ++a)
                acc += std::abs(slice.at(r, a));
            return acc * acc;
        }

        TargetEntry build_entry(const StationarySlice &slice, std::size_t r, std::span<const double> profile,
                                const CfarConfig &cfg, const AoaOptions &opts)
        {
            TargetEntry e;
            e.range_bin = r;
            e.range_m = static_cast<double>(r) * slice.range_bin_m;
            e.magnitude = range_detection_power(slice, r);

            auto hits = cfar_detect(profile, cfg);
            if (opts.peaks_only)
                hits = local_maxima(profile, hits, true);

            const double half = static_cast<double>(opts.fft_len / 2);
            for (std::size_t i : hits)
            {
                double bin = static_cast<double>(i);
                if (opts.peak_interpolation && i > 0 && i + 1 < profile.size())
                    bin += parabolic_offset(profile[i - 1], profile[i], profile[i + 1]);
                e.angles_rad.push_back(aoa_bin_to_angle(bin - half, opts.fft_len));
                e.angle_magnitude.push_back(profile[i]);
            }
            return e;
        }

        void validate_indices(const StationarySlice &slice, std::span<const std::size_t> idx)
        {
            for (std::size_t r : idx)
                if (r >= slice.range_bins)
                    throw ConfigError("AoA: range index out of bounds");
        }
    }

    TargetList aoa_on_targets(const StationarySlice &slice, std::span<const std::size_t> range_indices,
                              const CfarConfig &cfg, const AoaOptions &opts)
    {
        validate_indices(slice, range_indices);
        const FftPlan plan(opts.fft_len);
        TargetList list;
        for (std::size_t r : range_indices)
        {
            const auto profile = aoa_profile(slice, r, plan);
            auto e = build_entry(slice, r, profile, cfg, opts);
            if (!e.angles_rad.empty())
                list.entries.push_back(std::move(e));
        }
        return list;
    }

    TargetList aoa_exhaustive(const StationarySlice &slice, std::span<const std::size_t> range_indices,
                              const CfarConfig &cfg, const AoaOptions &opts)
    {
        validate_indices(slice, range_indices);
        const FftPlan plan(opts.fft_len);
        std::vector<std::vector<double>> all(slice.range_bins);
        for (std::size_t r = 0; r < slice.range_bins; ++r)
            all[r] = aoa_profile(slice, r, plan);

        TargetList list;
        for (std::size_t r : range_indices)
        {
            auto e = build_entry(slice, r, all[r], cfg, opts);
            if (!e.angles_rad.empty())
                list.entries.push_back(std::move(e));
        }
        return list;
    }

    std::vector<std::size_t> detect_ranges(const StationarySlice &slice, const DspConfig &dsp)
    {
        const auto acc = accumulate_range_profile(slice);
        std::vector<double> power(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i)
            power[i] = acc[i] * acc[i];

        auto hits = cfar_detect(power, dsp.range_cfar);
        if (dsp.doppler_gate)
            std::erase_if(hits, [&](std::size_t r) { return !slice.doppler_dominant[r]; });
        if (dsp.peaks_only)
            hits = local_maxima(power, hits);
        return hits;
    }

    TargetList process_frame(const ChirpCube &cube, const DspConfig &dsp)
    {
        const auto rd = range_doppler_transform(cube, dsp);
        const auto slice = extract_stationary_slice(rd);
        const auto ranges = detect_ranges(slice, dsp);

        const AoaOptions opts{dsp.aoa_fft_len, dsp.peaks_only, dsp.peak_interpolation};
        auto list = dsp.exhaustive_aoa ? aoa_exhaustive(slice, ranges, dsp.aoa_cfar, opts)
                                       : aoa_on_targets(slice, ranges, dsp.aoa_cfar, opts);

        const double max_range = derive_attributes(cube.config()).max_range_m;
        if (dsp.peak_interpolation)
        {
            const auto acc = accumulate_range_profile(slice);
            for (auto &e : list.entries)
            {
                const std::size_t r = e.range_bin;
                if (r > 0 && r + 1 < acc.size())
                {
                    const double off = parabolic_offset(acc[r - 1], acc[r], acc[r + 1]);
                    e.range_m = std::clamp((static_cast<double>(r) + off) * slice.range_bin_m, 0.0, max_range);
                }
            }
        }

        list.timestamp_s = cube.frame().timestamp_s;
        list.inclination_rad = cube.frame().inclination_rad;
        check_target_list(list, max_range);
        return list;
    }
}
