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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dimrad/dataset.hpp"
#include "dimrad/eval.hpp"

namespace dimrad
{
    // Text file helpers. Throw IoError when the file cannot be opened or written.
    std::string read_text_file(const std::filesystem::path &path);
    void write_text_file(const std::filesystem::path &path, std::string_view text);

    // Scenario file: JSON, angles as "*_deg" fields. Missing fields keep their defaults;
    // unknown fields and ill-typed values raise ConfigError. The result is validated.
    std::string scenario_to_json(const ScenarioConfig &cfg);
    ScenarioConfig parse_scenario(std::string_view json_text);
    ScenarioConfig load_scenario(const std::filesystem::path &path);

    // Stable hash of the canonical scenario text.
    std::string config_hash(const ScenarioConfig &cfg);

    // One JSON object per frame, without trailing newline.
    std::string target_list_to_json(const TargetList &list);
    TargetList parse_target_list(std::string_view line);

    // Ground truth of a simulated walk: corners, (d, h), per-frame pose and inclination.
    std::string truth_sidecar_json(const StaircaseSpec &spec, const Trajectory &traj,
                                   std::span<const std::string> cube_files);

    // Per-frame estimates and acquisition median of one processed walk. `truth` may be null.
    std::string acquisition_report_json(const Acquisition &acq, const StaircaseSpec *truth);

    // Model file. Doubles are written in shortest round-trip form, so parse(to_json(m))
    // reproduces every parameter exactly.
    std::string model_to_json(const EnhancerModel &model);
    EnhancerModel parse_model(std::string_view json_text);

    std::string train_config_to_json(const TrainConfig &cfg);

    // Dataset CSV with header
    // r1_m,theta1_rad,r2_m,theta2_rad,hr_m,gamma_rad,d_true_m,h_true_m,scenario_id,frame_id.
    std::string dataset_to_csv(std::span<const EnhancerSample> samples);
    std::vector<EnhancerSample> parse_dataset_csv(std::string_view text);

    // Evaluation report: per estimator and dimension the metrics, error samples and
    // histogram, plus improvement summary and consistency.
    std::string error_report_json(const ErrorReport &frames, const ErrorReport &acquisitions);

    // bin_center_cm,density
    std::string histogram_csv(const Histogram &h);

    struct Manifest
    {
        std::string command;
        std::string config_hash;
        std::uint64_t seed = 0;
        std::vector<std::string> outputs;
    };
    std::string manifest_json(const Manifest &m);
}
