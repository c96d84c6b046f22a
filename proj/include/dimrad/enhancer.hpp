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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dimrad
{
    inline constexpr std::size_t kEnhancerInputs = 6;
    inline constexpr std::size_t kEnhancerOutputs = 2;

    // (r1 [m], theta1 [rad], r2 [m], theta2 [rad], h_r [m], gamma [rad]); angles are the
    // corrected (world-frame) angles of the two corners, r1 <= r2.
    using EnhancerInput = std::array<double, kEnhancerInputs>;
    // (depth [m], height [m])
    using EnhancerOutput = std::array<double, kEnhancerOutputs>;

    // Current radar height for a tibia inclined by gamma + 20 deg: h_i * cos(gamma + 20 deg).
    double radar_height(double mount_height_m, double gamma_rad);

    enum class Activation
    {
        relu,
        linear
    };
    std::string to_string(Activation a);
    Activation activation_from_string(std::string_view name);

    struct DenseLayer
    {
        std::size_t inputs = 0;
        std::size_t outputs = 0;
        std::vector<double> weights; // row-major, outputs x inputs
        std::vector<double> bias;
    };

    struct TrainConfig
    {
        int epochs = 50;
        std::size_t batch_size = 32;
        double learning_rate = 1e-3;
        double beta1 = 0.9;
        double beta2 = 0.999;
        double epsilon = 1e-8;
        std::uint64_t seed = 7;
        double validation_fraction = 0.1;
        bool early_stop = false;
        int patience = 10;
        std::vector<std::size_t> hidden_layers{16, 8};
        Activation activation = Activation::relu;

        void validate() const;
    };

    struct EnhancerModel
    {
        std::vector<DenseLayer> layers;
        Activation hidden_activation = Activation::relu;
        EnhancerInput input_mean{};
        EnhancerInput input_scale{1, 1, 1, 1, 1, 1};
        EnhancerOutput output_mean{};
        EnhancerOutput output_scale{1, 1};
        TrainConfig train_config{};
        std::string dataset_fingerprint;

        std::vector<std::size_t> layer_sizes() const;
        std::size_t parameter_count() const;
        // Throws ConfigError on shape mismatch, non-finite parameters or non-positive scales.
        void validate() const;
    };

    // Uniform fan-in initialisation, weights in +-1/sqrt(fan_in), zero biases,
    // identity normalisation.
    EnhancerModel make_model(std::span<const std::size_t> layer_sizes, Activation hidden, std::uint64_t seed);

    // Normalise, dense + activation on hidden layers, linear output, de-normalise.
    // Throws ConfigError for non-finite inputs.
    EnhancerOutput forward(const EnhancerModel &model, const EnhancerInput &x);

    // Per-sample loss: mean over the two outputs of the squared error [m^2].
    double sample_loss(const EnhancerModel &model, const EnhancerInput &x, const EnhancerOutput &label);

    struct Gradient
    {
        std::vector<std::vector<double>> weights;
        std::vector<std::vector<double>> bias;

        static Gradient zeros_like(const EnhancerModel &model);
        void scale(double s);
    };

    // Adds d(sample_loss)/d(parameters) into `grad` and returns the sample loss.
    double backprop(const EnhancerModel &model, const EnhancerInput &x, const EnhancerOutput &label, Gradient &grad);

    // Maximum relative discrepancy between backprop and central finite differences over
    // every weight and bias.
    double gradient_check(const EnhancerModel &model, const EnhancerInput &x, const EnhancerOutput &label,
                          double step = 1e-5);

    struct EnhancerSample
    {
        EnhancerInput inputs{};
        EnhancerOutput labels{};
        std::string scenario_id;
        int frame_id = 0;
    };

    struct TrainResult
    {
        EnhancerModel model;
        std::vector<double> train_loss;      // per epoch, [m^2]
        std::vector<double> validation_loss; // per epoch, empty when no validation split
    };

    // Mini-batch Adam on the joint depth/height MSE. Single-threaded and
    // bit-reproducible for a fixed seed and sample order.
    TrainResult train(std::span<const EnhancerSample> dataset, const TrainConfig &cfg);

    double mean_loss(const EnhancerModel &model, std::span<const EnhancerSample> samples);

    // Stable fingerprint of the sample values, recorded in model files.
    std::string dataset_fingerprint(std::span<const EnhancerSample> samples);
}
