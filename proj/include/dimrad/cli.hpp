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
#include <iosfwd>
#include <string>
#include <vector>

#include "dimrad/dataset.hpp"
#include "dimrad/eval.hpp"

namespace dimrad
{
    // Process exit codes.
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitValidation = 1;
    inline constexpr int kExitIo = 2;

    // Entry point of the `dimrad` tool. `args` excludes the program name. Returns the
    // exit code; diagnostics go to `err`.
    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    // Command bodies, shared by the tool and the tests. All write into `run_dir` and
    // record a manifest_<command>.json next to their outputs.
    void cmd_simulate(const ScenarioConfig &cfg, const std::filesystem::path &run_dir);
    // Processes `cube_dir` when non-empty, otherwise simulates the scenario in memory.
    Acquisition cmd_process(const ScenarioConfig &cfg, const std::filesystem::path &cube_dir,
                            const std::filesystem::path &run_dir);
    SweepDataset cmd_sweep(const ScenarioConfig &cfg, const std::filesystem::path &run_dir);
    TrainResult cmd_train(const ScenarioConfig &cfg, const std::filesystem::path &run_dir);
    ErrorReport cmd_evaluate(const ScenarioConfig &cfg, const std::filesystem::path &run_dir);

    // Sorted cube files of a directory.
    std::vector<std::filesystem::path> list_cube_files(const std::filesystem::path &dir);

    // Walk of the single-scenario commands: the configured walk with its seed derived
    // from the scenario seed.
    WalkConfig scenario_walk(const ScenarioConfig &cfg);
}
