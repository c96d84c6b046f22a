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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dimrad/enhancer.hpp"
#include "dimrad/errors.hpp"
#include "dimrad/numerics.hpp"

// Covered tests:
// - Radar height examples
// - Forward pass of zero and bias-only models
// - Backpropagation against finite differences
// - Output-bias gradient of the zero model
// - Linear network against the closed-form gradient
// - Invariance to the unit of the inputs
// - Fitting a linear map and memorising one sample
// - Training determinism and error handling

using namespace dimrad;

namespace
{
    const std::vector<std::size_t> kSizes{6, 16, 8, 2};

    EnhancerInput random_input(Rng &rng)
    {
        return {rng.uniform(0.5, 4.5), rng.uniform(-0.6, 0.2), rng.uniform(0.5, 4.5),
                rng.uniform(-0.6, 0.2), rng.uniform(0.35, 0.5), rng.uniform(-0.6, 0.0)};
    }

    EnhancerModel zero_model()
    {
        auto m = make_model(kSizes, Activation::relu, 1);
        for (auto &l : m.layers)
        {
            std::fill(l.weights.begin(), l.weights.end(), 0.0);
            std::fill(l.bias.begin(), l.bias.end(), 0.0);
        }
        return m;
    }

    std::vector<EnhancerSample> linear_dataset(std::size_t n, std::uint64_t seed)
    {
        Rng rng(seed);
        std::vector<EnhancerSample> out(n);
        for (auto &s : out)
        {
            s.inputs = random_input(rng);
            const auto &x = s.inputs;
            s.labels = {0.05 * x[0] - 0.03 * x[2] + 0.2 * x[1] + 0.5 * x[4] + 0.1,
                        0.1 * x[3] - 0.04 * x[0] + 0.3 * x[5] + 0.2};
        }
        return out;
    }
}

TEST_CASE("Radar height")
{
    CHECK(radar_height(0.45, deg2rad(-20.0)) == Catch::Approx(0.45).epsilon(1e-15));
    CHECK(radar_height(0.45, 0.0) == Catch::Approx(0.45 * std::cos(deg2rad(20.0))).epsilon(1e-15));
    CHECK(radar_height(0.45, 0.0) == Catch::Approx(0.4229).margin(1e-4));
    CHECK(radar_height(0.40, deg2rad(70.0)) == Catch::Approx(0.0).margin(1e-15));
    CHECK_THROWS_AS(radar_height(0.0, 0.0), ConfigError);
}

TEST_CASE("Forward pass of trivial models")
{
    Rng rng(1);
    auto m = zero_model();
    for (int i = 0; i < 20; ++i)
    {
        const auto y = forward(m, random_input(rng));
        CHECK(y[0] == 0.0);
        CHECK(y[1] == 0.0);
    }
    m.layers.back().bias = {0.3, 0.15};
    for (int i = 0; i < 20; ++i)
    {
        const auto y = forward(m, random_input(rng));
        CHECK(y[0] == 0.3);
        CHECK(y[1] == 0.15);
    }
    CHECK(m.parameter_count() == 6 * 16 + 16 + 16 * 8 + 8 + 8 * 2 + 2);
    CHECK(m.layer_sizes() == kSizes);
    CHECK_THROWS_AS(forward(m, {1, 2, 3, std::nan(""), 5, 6}), ConfigError);
}

TEST_CASE("Backpropagation matches finite differences")
{
    Rng rng(77);
    for (int draw = 0; draw < 100; ++draw)
    {
        auto m = make_model(kSizes, Activation::relu, 1000 + static_cast<std::uint64_t>(draw));
        for (auto &l : m.layers)
            for (auto &b : l.bias)
                b = rng.uniform(-0.2, 0.2);
        for (std::size_t i = 0; i < kEnhancerInputs; ++i)
        {
            m.input_mean[i] = rng.uniform(-1.0, 1.0);
            m.input_scale[i] = rng.uniform(0.1, 2.0);
        }
        m.output_mean = {rng.uniform(0.2, 0.4), rng.uniform(0.1, 0.2)};
        m.output_scale = {rng.uniform(0.01, 0.1), rng.uniform(0.01, 0.1)};
        const EnhancerOutput label{rng.uniform(0.2, 0.4), rng.uniform(0.1, 0.2)};
        CHECK(gradient_check(m, random_input(rng), label) < 1e-5);
    }
}

TEST_CASE("Output-bias gradient of the zero model")
{
    const auto m = zero_model();
    const EnhancerOutput label{0.3, 0.15};
    auto g = Gradient::zeros_like(m);
    const double loss = backprop(m, EnhancerInput{}, label, g);
    CHECK(loss == Catch::Approx((0.09 + 0.0225) / 2.0));
    CHECK(g.bias.back()[0] == Catch::Approx(2.0 * (0.0 - 0.3) / 2.0));
    CHECK(g.bias.back()[1] == Catch::Approx(2.0 * (0.0 - 0.15) / 2.0));
    for (double v : g.weights.back())
        CHECK(v == 0.0);
}

TEST_CASE("Linear network gradient equals the closed form")
{
    // y = W3 W2 W1 x + (W3 W2 b1 + W3 b2 + b3); loss = |y - t|^2 / 2, so dL/dy = e.
    const std::vector<std::size_t> sizes{6, 4, 3, 2};
    Rng rng(8);
    for (int draw = 0; draw < 10; ++draw)
    {
        auto m = make_model(sizes, Activation::linear, 50 + static_cast<std::uint64_t>(draw));
        for (auto &l : m.layers)
            for (auto &b : l.bias)
                b = rng.uniform(-0.5, 0.5);
        const auto x = random_input(rng);
        const EnhancerOutput t{0.3, 0.12};

        const auto &W1 = m.layers[0], &W2 = m.layers[1], &W3 = m.layers[2];
        auto matvec = [](const DenseLayer &l, const std::vector<double> &v) {
            std::vector<double> out(l.outputs);
            for (std::size_t o = 0; o < l.outputs; ++o)
            {
                out[o] = l.bias[o];
                for (std::size_t k = 0; k < l.inputs; ++k)
                    out[o] += l.weights[o * l.inputs + k] * v[k];
            }
            return out;
        };
        auto transpose_vec = [](const DenseLayer &l, const std::vector<double> &v) {
            std::vector<double> out(l.inputs, 0.0);
            for (std::size_t o = 0; o < l.outputs; ++o)
                for (std::size_t k = 0; k < l.inputs; ++k)
                    out[k] += l.weights[o * l.inputs + k] * v[o];
            return out;
        };
        const std::vector<double> xv(x.begin(), x.end());
        const auto h1 = matvec(W1, xv), h2 = matvec(W2, h1), y = matvec(W3, h2);
        const std::vector<double> e{y[0] - t[0], y[1] - t[1]};
        // (W3 W2)^T e, then W3^T e
        const auto u2 = transpose_vec(W3, e);
        const auto u1 = transpose_vec(W2, u2);

        auto g = Gradient::zeros_like(m);
        backprop(m, x, t, g);
        for (std::size_t o = 0; o < 4; ++o)
        {
            CHECK(g.bias[0][o] == Catch::Approx(u1[o]).margin(1e-12));
            for (std::size_t k = 0; k < 6; ++k)
                CHECK(g.weights[0][o * 6 + k] == Catch::Approx(u1[o] * xv[k]).margin(1e-12));
        }
        for (std::size_t o = 0; o < 3; ++o)
            for (std::size_t k = 0; k < 4; ++k)
                CHECK(g.weights[1][o * 4 + k] == Catch::Approx(u2[o] * h1[k]).margin(1e-12));
        for (std::size_t o = 0; o < 2; ++o)
        {
            CHECK(g.bias[2][o] == Catch::Approx(e[o]).margin(1e-12));
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(g.weights[2][o * 3 + k] == Catch::Approx(e[o] * h2[k]).margin(1e-12));
        }
    }
}

TEST_CASE("Forward pass is invariant to the input unit")
{
    Rng rng(12);
    auto m = make_model(kSizes, Activation::relu, 3);
    m.input_mean = {2.0, -0.2, 2.3, -0.1, 0.43, -0.35};
    m.input_scale = {1.1, 0.2, 1.0, 0.2, 0.03, 0.1};
    // Same model reading ranges and heights in centimetres.
    auto cm = m;
    for (std::size_t i : {0u, 2u, 4u})
    {
        cm.input_mean[i] *= 100.0;
        cm.input_scale[i] *= 100.0;
    }
    for (int i = 0; i < 50; ++i)
    {
        const auto x = random_input(rng);
        auto xc = x;
        for (std::size_t k : {0u, 2u, 4u})
            xc[k] *= 100.0;
        const auto a = forward(m, x), b = forward(cm, xc);
        CHECK(a[0] == Catch::Approx(b[0]).epsilon(1e-12));
        CHECK(a[1] == Catch::Approx(b[1]).epsilon(1e-12));
    }
}

TEST_CASE("Training fits a linear map")
{
    const auto data = linear_dataset(1000, 4);
    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.validation_fraction = 0.0;
    const auto r = train(data, cfg);
    REQUIRE(r.train_loss.size() == 200);
    CHECK(r.validation_loss.empty());
    CHECK(r.train_loss.back() < 1e-5);
    CHECK(mean_loss(r.model, data) < 1e-5);
    CHECK(r.train_loss.back() < r.train_loss.front());
}

TEST_CASE("Training memorises a single sample")
{
    const std::vector<EnhancerSample> one{{{1.5, -0.3, 1.8, -0.2, 0.44, -0.35}, {0.30, 0.15}, "x", 0}};
    TrainConfig cfg;
    cfg.epochs = 3000;
    cfg.validation_fraction = 0.0;
    const auto r = train(one, cfg);
    CHECK(r.train_loss.back() < 1e-8);
}

TEST_CASE("Training is deterministic")
{
    const auto data = linear_dataset(300, 9);
    TrainConfig cfg;
    cfg.epochs = 5;
    const auto a = train(data, cfg);
    const auto b = train(data, cfg);
    cfg.seed = 8;
    const auto c = train(data, cfg);
    bool differs = false;
    for (std::size_t li = 0; li < a.model.layers.size(); ++li)
    {
        CHECK(a.model.layers[li].weights == b.model.layers[li].weights);
        CHECK(a.model.layers[li].bias == b.model.layers[li].bias);
        differs = differs || a.model.layers[li].weights != c.model.layers[li].weights;
    }
    CHECK(a.train_loss == b.train_loss);
    CHECK(a.validation_loss == b.validation_loss);
    CHECK(a.validation_loss.size() == 5);
    CHECK(differs);
    CHECK(a.model.dataset_fingerprint == dataset_fingerprint(data));
    CHECK(a.model.dataset_fingerprint.rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("Early stopping and training errors")
{
    const auto data = linear_dataset(200, 2);
    TrainConfig cfg;
    cfg.epochs = 400;
    cfg.early_stop = true;
    cfg.patience = 3;
    cfg.learning_rate = 0.05;
    const auto r = train(data, cfg);
    CHECK(r.train_loss.size() <= 400);
    CHECK(r.train_loss.size() == r.validation_loss.size());

    CHECK_THROWS_AS(train(std::vector<EnhancerSample>{}, TrainConfig{}), ConfigError);
    TrainConfig bad;
    bad.epochs = 0;
    CHECK_THROWS_AS(train(data, bad), ConfigError);
    bad = TrainConfig{};
    bad.learning_rate = -1.0;
    CHECK_THROWS_AS(train(data, bad), ConfigError);
    bad = TrainConfig{};
    bad.hidden_layers = {16, 0};
    CHECK_THROWS_AS(train(data, bad), ConfigError);

    auto huge = data;
    huge[0].labels = {1e300, 0.1};
    TrainConfig quick;
    quick.epochs = 2;
    quick.validation_fraction = 0.0;
    CHECK_THROWS_AS(train(huge, quick), TrainingError);

    CHECK(activation_from_string(to_string(Activation::relu)) == Activation::relu);
    CHECK(activation_from_string("linear") == Activation::linear);
    CHECK_THROWS_AS(activation_from_string("tanh"), ConfigError);
}
