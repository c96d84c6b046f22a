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

#include <stdexcept>
#include <string>

namespace dimrad
{
    // Invalid configuration or violated precondition. The CLI maps this to exit code 1.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A scatterer or standoff lies beyond the unambiguous range of the radar.
    class RangeOverflowError : public ConfigError
    {
    public:
        using ConfigError::ConfigError;
    };

    // Non-finite data met inside synthesis or the processing chain.
    class ProcessingError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Training failed, e.g. the loss diverged.
    class TrainingError : public std::runtime_error
    {
    public:
        TrainingError(const std::string &what, int epoch) : std::runtime_error(what), epoch_(epoch) {}
        int epoch() const noexcept { return epoch_; }

    private:
        int epoch_;
    };

    // File could not be read or written. The CLI maps this to exit code 2.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}
