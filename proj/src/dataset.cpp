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

#include "dimrad/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "dimrad/errors.hpp"
#include "dimrad/numerics.hpp"

namespace dimrad
{
    void SweepConfig::validate() const
    {
        if (depths_m.empty() || heights_m.empty())
            throw ConfigError("sweep: empty grid");
        for (double v : depths_m)
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError("sweep: depths must be positive");
        for (double v : heights_m)
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError("sweep: heights must be positive");
        if (walks_per_combination < 1)
            throw ConfigError("sweep: walks per combination must be >= 1");
        if (subject_count < 2 || test_subject_count < 1 || test_subject_count >= subject_count)
            throw ConfigError("sweep: need at least one training and one test subject");
        if (!(mount_height_min_m > 0.0 && mount_height_min_m <= mount_height_max_m))
            throw ConfigError("sweep: invalid mount height range");
        if (test_combination_count < 0)
            throw ConfigError("sweep: negative test combination count");
        const std::size_t nd = depths_m.size(), nh = heights_m.size();
        const std::size_t interior = nd <= 2 || nh <= 2 ? nd * nh : (nd - 2) * (nh - 2);
        if (static_cast<std::size_t>(test_combination_count) > interior || static_cast<std::size_t>(test_combination_count) == nd * nh)
            throw ConfigError("sweep: too many held-out combinations for the grid");
    }

    void ScenarioConfig::validate() const
    {
        radar.validate();
        staircase.validate();
        walk.validate();
        dsp.validate();
        standards.validate();
        sweep.validate();
        train.validate();
        const double r_max = derive_attributes(radar).max_range_m;
        if (walk.start_standoff_m > r_max)
            throw RangeOverflowError("walk: start standoff " + std::to_string(walk.start_standoff_m) +
                                     " m exceeds max range " + std::to_string(r_max) + " m");
        if (synthesis.noise.enabled && !synthesis.noise.noise_power && !std::isfinite(synthesis.noise.snr_db))
            throw ConfigError("noise: SNR must be finite");
        if (synthesis.noise.noise_power && !(*synthesis.noise.noise_power >= 0.0))
            throw ConfigError("noise: power must be non-negative");
        if (!(corner_reflectivity >= 0.0) || !(clutter_reflectivity >= 0.0))
            throw ConfigError("scene: reflectivities must be non-negative");
    }

    std::vector<Scatterer> scene_scatterers(const ScenarioConfig &cfg, const StaircaseSpec &spec, std::uint64_t seed)
    {
        auto out = stair_scatterers(corners_of(spec), cfg.corner_reflectivity);
        if (cfg.clutter_count > 0)
        {
            const auto clutter = stair_clutter(spec, cfg.clutter_count, cfg.clutter_reflectivity, derive_seed(seed, 0xC1u));
            out.insert(out.end(), clutter.begin(), clutter.end());
        }
        return out;
    }

    std::uint64_t frame_seed(std::uint64_t acquisition_seed, std::size_t index)
    {
        return derive_seed(acquisition_seed, 1 + index);
    }

    SimulatedWalk simulate_walk(const ScenarioConfig &cfg, const StaircaseSpec &spec, const WalkConfig &walk,
                                bool parallel)
    {
        SimulatedWalk sim;
        sim.trajectory = generate_walk(spec, walk, cfg.radar);
        const auto scatterers = scene_scatterers(cfg, spec, walk.seed);
        sim.cubes.resize(sim.trajectory.frames.size());
        auto one = [&](std::size_t i) {
            auto cube = synthesize_frame(cfg.radar, sim.trajectory.frames[i], scatterers, cfg.synthesis,
                                         frame_seed(walk.seed, i));
            cube.quantize_to_storage();
            sim.cubes[i] = std::move(cube);
        };
        if (parallel)
            parallel_for(sim.cubes.size(), one);
        else
            for (std::size_t i = 0; i < sim.cubes.size(); ++i)
                one(i);
        return sim;
    }

    Acquisition process_walk(const ScenarioConfig &cfg, const StaircaseSpec &spec, const SimulatedWalk &sim,
                             bool parallel)
    {
        Acquisition acq;
        acq.staircase = spec;
        acq.trajectory = sim.trajectory;
        acq.frames.resize(sim.cubes.size());
        auto one = [&](std::size_t i) {
            auto &fr = acq.frames[i];
            fr.frame = sim.cubes[i].frame();
            fr.targets = process_frame(sim.cubes[i], cfg.dsp);
            fr.estimate = estimate_initial(fr.targets, fr.frame.inclination_rad, cfg.standards);
        };
        if (parallel)
            parallel_for(acq.frames.size(), one);
        else
            for (std::size_t i = 0; i < acq.frames.size(); ++i)
                one(i);

        std::vector<std::optional<DimensionEstimate>> per_frame;
        for (const auto &f : acq.frames)
            per_frame.push_back(f.estimate);
        acq.aggregate = aggregate_acquisition(per_frame);
        return acq;
    }

    Acquisition run_acquisition(const ScenarioConfig &cfg, const StaircaseSpec &spec, const WalkConfig &walk,
                                bool parallel)
    {
        return process_walk(cfg, spec, simulate_walk(cfg, spec, walk, parallel), parallel);
    }

    EnhancerSample make_sample(const DimensionEstimate &est, double mount_height_m, double d_true_m, double h_true_m)
    {
        auto a = est.corner_pair[0];
        auto b = est.corner_pair[1];
        if (b.range_m < a.range_m)
            std::swap(a, b);
        EnhancerSample s;
        s.inputs = {a.range_m,
                    a.true_angle_rad,
                    b.range_m,
                    b.true_angle_rad,
                    radar_height(mount_height_m, est.inclination_rad),
                    est.inclination_rad};
        s.labels = {d_true_m, h_true_m};
        return s;
    }

    EnhancerOutput initial_from_inputs(const EnhancerInput &x)
    {
        Point2 p{x[0] * std::cos(x[1]), x[0] * std::sin(x[1])};
        Point2 q{x[2] * std::cos(x[3]), x[2] * std::sin(x[3])};
        if (q.x < p.x)
            std::swap(p, q);
        return {q.x - p.x, q.y - p.y};
    }

    bool Split::is_test(double depth_m, double height_m) const
    {
        constexpr double tol = 1e-9;
        return std::any_of(test_combinations.begin(), test_combinations.end(), [&](const Combination &c) {
            return std::abs(c.depth_m - depth_m) < tol && std::abs(c.height_m - height_m) < tol;
        });
    }

    bool Split::is_test_subject(int subject) const
    {
        return std::find(test_subjects.begin(), test_subjects.end(), subject) != test_subjects.end();
    }

    std::vector<Combination> grid_combinations(const SweepConfig &sweep)
    {
        std::vector<Combination> out;
        for (double d : sweep.depths_m)
            for (double h : sweep.heights_m)
                out.push_back({d, h});
        return out;
    }

    Split make_split(const SweepConfig &sweep, std::uint64_t seed)
    {
        sweep.validate();
        Split split;

        Rng heights(derive_seed(seed, 0x5B));
        for (int s = 0; s < sweep.subject_count; ++s)
            split.subject_mount_heights_m.push_back(heights.uniform(sweep.mount_height_min_m, sweep.mount_height_max_m));

        Rng chooser(derive_seed(sweep.split_seed, 0x7E));
        std::vector<int> subjects(static_cast<std::size_t>(sweep.subject_count));
        std::iota(subjects.begin(), subjects.end(), 0);
        std::shuffle(subjects.begin(), subjects.end(), chooser.engine());
        split.test_subjects.assign(subjects.begin(), subjects.begin() + sweep.test_subject_count);
        std::sort(split.test_subjects.begin(), split.test_subjects.end());

        const std::size_t nd = sweep.depths_m.size(), nh = sweep.heights_m.size();
        std::vector<Combination> pool;
        for (std::size_t i = 0; i < nd; ++i)
            for (std::size_t j = 0; j < nh; ++j)
            {
                const bool interior = nd <= 2 || nh <= 2 || (i > 0 && i + 1 < nd && j > 0 && j + 1 < nh);
                if (interior)
                    pool.push_back({sweep.depths_m[i], sweep.heights_m[j]});
            }
        std::shuffle(pool.begin(), pool.end(), chooser.engine());
        split.test_combinations.assign(pool.begin(), pool.begin() + sweep.test_combination_count);
        return split;
    }

    std::vector<WalkPlan> plan_sweep(const ScenarioConfig &cfg, const Split &split)
    {
        std::vector<int> train_subjects;
        for (int s = 0; s < cfg.sweep.subject_count; ++s)
            if (!split.is_test_subject(s))
                train_subjects.push_back(s);

        std::vector<WalkPlan> plans;
        std::size_t train_turn = 0, test_turn = 0;
        const auto combos = grid_combinations(cfg.sweep);
        for (std::size_t c = 0; c < combos.size(); ++c)
        {
            const bool test = split.is_test(combos[c].depth_m, combos[c].height_m);
            for (int w = 0; w < cfg.sweep.walks_per_combination; ++w)
            {
                WalkPlan p;
                p.combination = combos[c];
                p.walk_index = w;
                p.subject = test ? split.test_subjects[test_turn++ % split.test_subjects.size()]
                                 : train_subjects[train_turn++ % train_subjects.size()];

                const std::uint64_t walk_seed = derive_seed(derive_seed(cfg.seed, 0x1000 + c), static_cast<std::uint64_t>(w));
                Rng rng(derive_seed(walk_seed, 0xA7));
                p.walk = cfg.walk;
                p.walk.seed = walk_seed;
                p.walk.mount_height_m = split.subject_mount_heights_m[static_cast<std::size_t>(p.subject)];
                p.walk.sway_phase_rad = rng.uniform(0.0, 2.0 * kPi);
                p.walk.sway_amplitude_rad = cfg.walk.sway_amplitude_rad * rng.uniform(0.8, 1.2);
                p.walk.sway_frequency_hz = cfg.walk.sway_frequency_hz * rng.uniform(0.8, 1.2);

                char id[64];
                std::snprintf(id, sizeof id, "d%.0f_h%.0f_w%d_s%d", combos[c].depth_m * 100.0,
                              combos[c].height_m * 100.0, w, p.subject);
                p.scenario_id = id;
                plans.push_back(std::move(p));
            }
        }
        return plans;
    }

    SweepDataset assemble_dataset(const ScenarioConfig &cfg, const Split &split)
    {
        cfg.validate();
        const auto plans = plan_sweep(cfg, split);

        std::vector<std::vector<EnhancerSample>> per_walk(plans.size());
        std::vector<std::size_t> frame_counts(plans.size(), 0);
        parallel_for(plans.size(), [&](std::size_t k) {
            const auto &p = plans[k];
            StaircaseSpec spec = cfg.staircase;
            spec.depth_m = p.combination.depth_m;
            spec.height_m = p.combination.height_m;
            const auto acq = run_acquisition(cfg, spec, p.walk, false);
            frame_counts[k] = acq.frames.size();
            for (std::size_t i = 0; i < acq.frames.size(); ++i)
            {
                const auto &est = acq.frames[i].estimate;
                if (!est)
                    continue;
                auto s = make_sample(*est, p.walk.mount_height_m, spec.depth_m, spec.height_m);
                s.scenario_id = p.scenario_id;
                s.frame_id = static_cast<int>(i);
                per_walk[k].push_back(std::move(s));
            }
        });

        SweepDataset ds;
        ds.walks = plans.size();
        for (std::size_t k = 0; k < plans.size(); ++k)
        {
            ds.frames += frame_counts[k];
            if (per_walk[k].empty())
                ds.empty_scenarios.push_back(plans[k].scenario_id);
            ds.samples.insert(ds.samples.end(), per_walk[k].begin(), per_walk[k].end());
        }
        return ds;
    }

    void split_samples(std::span<const EnhancerSample> all, const Split &split, std::vector<EnhancerSample> &train,
                       std::vector<EnhancerSample> &test)
    {
        train.clear();
        test.clear();
        for (const auto &s : all)
            (split.is_test(s.labels[0], s.labels[1]) ? test : train).push_back(s);
    }
}
