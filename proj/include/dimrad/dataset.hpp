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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimrad/chirp_sim.hpp"
#include "dimrad/dimension.hpp"
#include "dimrad/dsp_chain.hpp"
#include "dimrad/enhancer.hpp"
#include "dimrad/scene.hpp"

namespace dimrad
{
    // Construction grid and subject split of a dataset sweep.
    struct SweepConfig
    {
        std::vector<double> depths_m{0.26, 0.28, 0.30, 0.32, 0.34, 0.36, 0.38};
        std::vector<double> heights_m{0.10, 0.12, 0.14, 0.16, 0.18};
        int walks_per_combination = 5;
        int subject_count = 10;
        int test_subject_count = 2;
        double mount_height_min_m = 0.40;
        double mount_height_max_m = 0.50;
        // Held-out combinations, drawn from the grid interior (neither extreme depth
        // nor extreme height).
        int test_combination_count = 7;
        std::uint64_t split_seed = 11;

        void validate() const;
    };

    // Everything needed to simulate, process, sweep and train. Sub-configs are validated
    // by their owning modules.
    struct ScenarioConfig
    {
        RadarConfig radar;
        StaircaseSpec staircase;
        WalkConfig walk;
        SynthesisConfig synthesis;
        DspConfig dsp;
        StairStandards standards;
        SweepConfig sweep;
        TrainConfig train;
        double corner_reflectivity = 1.0;
        std::size_t clutter_count = 0;
        double clutter_reflectivity = 0.3;
        std::uint64_t seed = 1;

        void validate() const;
    };

    // Scatterers of a staircase scene: unit corners plus seeded clutter.
    std::vector<Scatterer> scene_scatterers(const ScenarioConfig &cfg, const StaircaseSpec &spec, std::uint64_t seed);

    // Seed of the synthesis noise of frame `index` within an acquisition.
    std::uint64_t frame_seed(std::uint64_t acquisition_seed, std::size_t index);

    struct FrameResult
    {
        GaitFrame frame;
        TargetList targets;
        std::optional<DimensionEstimate> estimate;
    };

    struct Acquisition
    {
        StaircaseSpec staircase;
        Trajectory trajectory;
        std::vector<FrameResult> frames;
        std::optional<AcquisitionEstimate> aggregate;
    };

    // Trajectory and cubes of one walk toward `spec`, rounded to storage precision so that
    // in-memory processing matches processing of the written cube files.
    struct SimulatedWalk
    {
        Trajectory trajectory;
        std::vector<ChirpCube> cubes;
    };
    SimulatedWalk simulate_walk(const ScenarioConfig &cfg, const StaircaseSpec &spec, const WalkConfig &walk,
                                bool parallel = true);

    // Target list and initial estimate per cube, plus the acquisition median.
    Acquisition process_walk(const ScenarioConfig &cfg, const StaircaseSpec &spec, const SimulatedWalk &sim,
                             bool parallel = true);

    // simulate_walk followed by process_walk. With `parallel`, frames fan out across
    // worker threads; results do not depend on the worker count.
    Acquisition run_acquisition(const ScenarioConfig &cfg, const StaircaseSpec &spec, const WalkConfig &walk,
                                bool parallel = true);

    // Sample for one frame estimate: the pair ordered by range, corrected world angles,
    // current radar height and IMU inclination.
    EnhancerSample make_sample(const DimensionEstimate &est, double mount_height_m, double d_true_m,
                               double h_true_m);

    // Depth and height recomputed from a sample's inputs exactly as the initial estimator
    // computes them from the corner pair.
    EnhancerOutput initial_from_inputs(const EnhancerInput &x);

    struct Combination
    {
        double depth_m;
        double height_m;
    };

    struct Split
    {
        std::vector<Combination> test_combinations;
        std::vector<int> test_subjects;
        std::vector<double> subject_mount_heights_m;

        bool is_test(double depth_m, double height_m) const;
        bool is_test_subject(int subject) const;
    };

    std::vector<Combination> grid_combinations(const SweepConfig &sweep);

    // Deterministic in (sweep, seed).
    Split make_split(const SweepConfig &sweep, std::uint64_t seed);

    struct WalkPlan
    {
        Combination combination;
        int walk_index;
        int subject;
        WalkConfig walk;
        std::string scenario_id;
    };

    // Every walk of the sweep, in grid order. Held-out combinations are walked by test
    // subjects, the others by training subjects.
    std::vector<WalkPlan> plan_sweep(const ScenarioConfig &cfg, const Split &split);

    struct SweepDataset
    {
        std::vector<EnhancerSample> samples;
        std::size_t walks = 0;
        std::size_t frames = 0;
        std::vector<std::string> empty_scenarios; // walks that produced no corner pair
    };

    SweepDataset assemble_dataset(const ScenarioConfig &cfg, const Split &split);

    // Partitions by the split's held-out combinations.
    void split_samples(std::span<const EnhancerSample> all, const Split &split, std::vector<EnhancerSample> &train,
                       std::vector<EnhancerSample> &test);
}
