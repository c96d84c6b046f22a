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

#include "dimrad/enhancer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "dimrad/errors.hpp"
#include "dimrad/numerics.hpp"

namespace dimrad
{
    double radar_height(double mount_height_m, double gamma_rad)
    {
        if (!(mount_height_m > 0.0))
            throw ConfigError("radar_height: mount height must be positive");
        return mount_height_m * std::cos(gamma_rad + deg2rad(20.0));
    }

    std::string to_string(Activation a)
    {
        return a == Activation::relu ? "relu" : "linear";
    }

    Activation activation_from_string(std::string_view name)
    {
        if (name == "relu")
            return Activation::relu;
        if (name == "linear")
            return Activation::linear;
        throw ConfigError("unknown activation '" + std::string(name) + "'");
    }

    void TrainConfig::validate() const
    {
        if (epochs < 1)
            throw ConfigError("train: epochs must be >= 1");
        if (batch_size < 1)
            throw ConfigError("train: batch size must be >= 1");
        if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
            throw ConfigError("train: learning rate must be positive");
        if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0))
            throw ConfigError("train: invalid Adam coefficients");
        if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
            throw ConfigError("train: validation fraction must lie in [0, 1)");
        if (patience < 1)
            throw ConfigError("train: patience must be >= 1");
        for (auto h : hidden_layers)
            if (h == 0)
                throw ConfigError("train: hidden layer of width 0");
    }

    std::vector<std::size_t> EnhancerModel::layer_sizes() const
    {
        std::vector<std::size_t> sizes;
        if (layers.empty())
            return sizes;
        sizes.push_back(layers.front().inputs);
        for (const auto &l : layers)
            sizes.push_back(l.outputs);
        return sizes;
    }

    std::size_t EnhancerModel::parameter_count() const
    {
        std::size_t n = 0;
        for (const auto &l : layers)
            n += l.weights.size() + l.bias.size();
        return n;
    }

    void EnhancerModel::validate() const
    {
        if (layers.empty())
            throw ConfigError("model: no layers");
        if (layers.front().inputs != kEnhancerInputs || layers.back().outputs != kEnhancerOutputs)
            throw ConfigError("model: must map 6 inputs to 2 outputs");
        for (std::size_t i = 0; i < layers.size(); ++i)
        {
            const auto &l = layers[i];
            if (l.weights.size() != l.inputs * l.outputs || l.bias.size() != l.outputs)
                throw ConfigError("model: layer parameter shape mismatch");
            if (i > 0 && layers[i - 1].outputs != l.inputs)
                throw ConfigError("model: consecutive layer sizes disagree");
            for (double v : l.weights)
                if (!std::isfinite(v))
                    throw ConfigError("model: non-finite weight");
            for (double v : l.bias)
                if (!std::isfinite(v))
                    throw ConfigError("model: non-finite bias");
        }
        for (std::size_t i = 0; i < kEnhancerInputs; ++i)
            if (!(input_scale[i] > 0.0) || !std::isfinite(input_scale[i]) || !std::isfinite(input_mean[i]))
                throw ConfigError("model: invalid input normalisation");
        for (std::size_t i = 0; i < kEnhancerOutputs; ++i)
            if (!(output_scale[i] > 0.0) || !std::isfinite(output_scale[i]) || !std::isfinite(output_mean[i]))
                throw ConfigError("model: invalid output normalisation");
    }

    EnhancerModel make_model(std::span<const std::size_t> layer_sizes, Activation hidden, std::uint64_t seed)
    {
        if (layer_sizes.size() < 2)
            throw ConfigError("model: need at least input and output sizes");
        EnhancerModel m;
        m.hidden_activation = hidden;
        Rng rng(seed);
        for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i)
        {
            DenseLayer l;
            l.inputs = layer_sizes[i];
            l.outputs = layer_sizes[i + 1];
            const double limit = 1.0 / std::sqrt(static_cast<double>(l.inputs));
            l.weights.resize(l.inputs * l.outputs);
            for (auto &w : l.weights)
                w = rng.uniform(-limit, limit);
            l.bias.assign(l.outputs, 0.0);
            m.layers.push_back(std::move(l));
        }
        return m;
    }

    namespace
    {
        struct Activations
        {
            // pre[i], post[i] for every layer; post of the last layer is the raw output
            std::vector<std::vector<double>> pre, post;
            std::vector<double> input;
        };

        void check_input(const EnhancerInput &x)
        {
            for (double v : x)
                if (!std::isfinite(v))
                    throw ConfigError("enhancer: non-finite input");
        }

        Activations run(const EnhancerModel &model, const EnhancerInput &x)
        {
            Activations act;
            act.input.resize(kEnhancerInputs);
            for (std::size_t i = 0; i < kEnhancerInputs; ++i)
                act.input[i] = (x[i] - model.input_mean[i]) / model.input_scale[i];

            const std::vector<double> *in = &act.input;
            act.pre.resize(model.layers.size());
            act.post.resize(model.layers.size());
            for (std::size_t li = 0; li < model.layers.size(); ++li)
            {
                const auto &l = model.layers[li];
                auto &z = act.pre[li];
                z.assign(l.outputs, 0.0);
                for (std::size_t o = 0; o < l.outputs; ++o)
                {
                    double s = l.bias[o];
                    const double *w = &l.weights[o * l.inputs];
                    for (std::size_t k = 0; k < l.inputs; ++k)
                        s += w[k] * (*in)[k];
                    z[o] = s;
                }
                auto &a = act.post[li];
                a = z;
                const bool hidden = li + 1 < model.layers.size();
                if (hidden && model.hidden_activation == Activation::relu)
                    for (auto &v : a)
                        v = v > 0.0 ? v : 0.0;
                in = &a;
            }
            return act;
        }

        EnhancerOutput denormalise(const EnhancerModel &model, const std::vector<double> &raw)
        {
            EnhancerOutput y{};
            for (std::size_t o = 0; o < kEnhancerOutputs; ++o)
                y[o] = model.output_mean[o] + model.output_scale[o] * raw[o];
            return y;
        }
    }

    EnhancerOutput forward(const EnhancerModel &model, const EnhancerInput &x)
    {
        check_input(x);
        const auto act = run(model, x);
        return denormalise(model, act.post.back());
    }

    double sample_loss(const EnhancerModel &model, const EnhancerInput &x, const EnhancerOutput &label)
    {
        const auto y = forward(model, x);
        double loss = 0.0;
        for (std::size_t o = 0; o < kEnhancerOutputs; ++o)
            loss += (y[o] - label[o]) * (y[o] - label[o]);
        return loss / static_cast<double>(kEnhancerOutputs);
    }

    Gradient Gradient::zeros_like(const EnhancerModel &model)
    {
        Gradient g;
        for (const auto &l : model.layers)
        {
            g.weights.emplace_back(l.weights.size(), 0.0);
            g.bias.emplace_back(l.bias.size(), 0.0);
        }
        return g;
    }

    void Gradient::scale(double s)
    {
        for (auto &w : weights)
            for (auto &v : w)
                v *= s;
        for (auto &b : bias)
            for (auto &v : b)
                v *= s;
    }

    double backprop(const EnhancerModel &model, const EnhancerInput &x, const EnhancerOutput &label, Gradient &grad)
    {
        check_input(x);
        const auto act = run(model, x);
        const auto y = denormalise(model, act.post.back());

        double loss = 0.0;
        std::vector<double> delta(kEnhancerOutputs);
        for (std::size_t o = 0; o < kEnhancerOutputs; ++o)
        {
            const double e = y[o] - label[o];
            loss += e * e;
            // d/dz of mean squared error through the output de-normalisation
            delta[o] = 2.0 * e / static_cast<double>(kEnhancerOutputs) * model.output_scale[o];
        }
        loss /= static_cast<double>(kEnhancerOutputs);

        for (std::size_t li = model.layers.size(); li-- > 0;)
        {
            const auto &l = model.layers[li];
            const std::vector<double> &in = li == 0 ? act.input : act.post[li - 1];
            auto &gw = grad.weights[li];
            auto &gb = grad.bias[li];
            for (std::size_t o = 0; o < l.outputs; ++o)
            {
                gb[o] += delta[o];
                double *row = &gw[o * l.inputs];
                for (std::size_t k = 0; k < l.inputs; ++k)
                    row[k] += delta[o] * in[k];
            }
            if (li == 0)
                break;

            std::vector<double> prev(l.inputs, 0.0);
            for (std::size_t o = 0; o < l.outputs; ++o)
            {
                const double *w = &l.weights[o * l.inputs];
                for (std::size_t k = 0; k < l.inputs; ++k)
                    prev[k] += w[k] * delta[o];
            }
            if (model.hidden_activation == Activation::relu)
            {
                const auto &z = act.pre[li - 1];
                for (std::size_t k = 0; k < l.inputs; ++k)
                    if (!(z[k] > 0.0))
                        prev[k] = 0.0;
            }
            delta = std::move(prev);
        }
        return loss;
    }

    double gradient_check(const EnhancerModel &model, const EnhancerInput &x, const EnhancerOutput &label, double step)
    {
        auto grad = Gradient::zeros_like(model);
        backprop(model, x, label, grad);

        EnhancerModel probe = model;
        double worst = 0.0;
        auto compare = [&](double &param, double analytic) {
            const double saved = param;
            param = saved + step;
            const double up = sample_loss(probe, x, label);
            param = saved - step;
            const double down = sample_loss(probe, x, label);
            param = saved;
            const double numeric = (up - down) / (2.0 * step);
            const double scale = std::max(std::abs(analytic), std::abs(numeric));
            const double err = scale > 1e-7 ? std::abs(analytic - numeric) / scale : std::abs(analytic - numeric);
            worst = std::max(worst, err);
        };
        for (std::size_t li = 0; li < probe.layers.size(); ++li)
        {
            for (std::size_t i = 0; i < probe.layers[li].weights.size(); ++i)
                compare(probe.layers[li].weights[i], grad.weights[li][i]);
            for (std::size_t i = 0; i < probe.layers[li].bias.size(); ++i)
                compare(probe.layers[li].bias[i], grad.bias[li][i]);
        }
        return worst;
    }

    double mean_loss(const EnhancerModel &model, std::span<const EnhancerSample> samples)
    {
        if (samples.empty())
            return 0.0;
        double total = 0.0;
        for (const auto &s : samples)
            total += sample_loss(model, s.inputs, s.labels);
        return total / static_cast<double>(samples.size());
    }

    std::string dataset_fingerprint(std::span<const EnhancerSample> samples)
    {
        std::string bytes;
        bytes.reserve(samples.size() * 8 * sizeof(double));
        auto put = [&](double v) { bytes.append(reinterpret_cast<const char *>(&v), sizeof v); };
        for (const auto &s : samples)
        {
            for (double v : s.inputs)
                put(v);
            for (double v : s.labels)
                put(v);
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
        return buf;
    }

    namespace
    {
        template <std::size_t N, typename Get>
        void standardise(std::span<const EnhancerSample> s, Get get, std::array<double, N> &mean, std::array<double, N> &scale)
        {
            for (std::size_t k = 0; k < N; ++k)
            {
                double m = 0.0;
                for (const auto &x : s)
                    m += get(x)[k];
                m /= static_cast<double>(s.size());
                double var = 0.0;
                for (const auto &x : s)
                    var += (get(x)[k] - m) * (get(x)[k] - m);
                var /= static_cast<double>(s.size());
                mean[k] = m;
                const double sd = std::sqrt(var);
                scale[k] = sd > 1e-12 ? sd : 1.0;
            }
        }

        struct AdamState
        {
            Gradient m, v;
            long step = 0;
        };

        void adam_update(EnhancerModel &model, const Gradient &g, AdamState &st, const TrainConfig &cfg)
        {
            ++st.step;
            const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(st.step));
            const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(st.step));
            auto update = [&](std::vector<double> &p, const std::vector<double> &gp, std::vector<double> &m,
                              std::vector<double> &v) {
                for (std::size_t i = 0; i < p.size(); ++i)
                {
                    m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gp[i];
                    v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gp[i] * gp[i];
                    const double mhat = m[i] / c1;
                    const double vhat = v[i] / c2;
                    p[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.epsilon);
                }
            };
            for (std::size_t li = 0; li < model.layers.size(); ++li)
            {
                update(model.layers[li].weights, g.weights[li], st.m.weights[li], st.v.weights[li]);
                update(model.layers[li].bias, g.bias[li], st.m.bias[li], st.v.bias[li]);
            }
        }
    }

    TrainResult train(std::span<const EnhancerSample> dataset, const TrainConfig &cfg)
    {
        cfg.validate();
        if (dataset.empty())
            throw ConfigError("train: empty dataset");

        std::mt19937_64 shuffler(derive_seed(cfg.seed, 1));

        std::vector<std::size_t> order(dataset.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), shuffler);
        const auto n_val = static_cast<std::size_t>(std::floor(cfg.validation_fraction * static_cast<double>(dataset.size())));
        std::vector<EnhancerSample> val, tr;
        for (std::size_t i = 0; i < order.size(); ++i)
            (i < n_val ? val : tr).push_back(dataset[order[i]]);
        if (tr.empty())
            throw ConfigError("train: validation split leaves no training samples");

        std::vector<std::size_t> sizes{kEnhancerInputs};
        sizes.insert(sizes.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
        sizes.push_back(kEnhancerOutputs);

        TrainResult result;
        auto &model = result.model;
        model = make_model(sizes, cfg.activation, derive_seed(cfg.seed, 0));
        model.train_config = cfg;
        model.dataset_fingerprint = dataset_fingerprint(dataset);
        standardise<kEnhancerInputs>(tr, [](const EnhancerSample &s) { return s.inputs; }, model.input_mean, model.input_scale);
        standardise<kEnhancerOutputs>(tr, [](const EnhancerSample &s) { return s.labels; }, model.output_mean, model.output_scale);

        AdamState adam{Gradient::zeros_like(model), Gradient::zeros_like(model), 0};
        std::vector<std::size_t> idx(tr.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});

        double best_val = std::numeric_limits<double>::infinity();
        int since_best = 0;
        for (int epoch = 0; epoch < cfg.epochs; ++epoch)
        {
            std::shuffle(idx.begin(), idx.end(), shuffler);
            for (std::size_t start = 0; start < idx.size(); start += cfg.batch_size)
            {
                const std::size_t end = std::min(idx.size(), start + cfg.batch_size);
                auto grad = Gradient::zeros_like(model);
                for (std::size_t i = start; i < end; ++i)
                    backprop(model, tr[idx[i]].inputs, tr[idx[i]].labels, grad);
                grad.scale(1.0 / static_cast<double>(end - start));
                adam_update(model, grad, adam, cfg);
            }

            const double tl = mean_loss(model, tr);
            if (!std::isfinite(tl))
                throw TrainingError("training diverged at epoch " + std::to_string(epoch + 1), epoch + 1);
            result.train_loss.push_back(tl);
            if (!val.empty())
            {
                const double vl = mean_loss(model, val);
                result.validation_loss.push_back(vl);
                if (vl < best_val)
                {
                    best_val = vl;
                    since_best = 0;
                }
                else if (cfg.early_stop && ++since_best >= cfg.patience)
                    break;
            }
        }
        return result;
    }
}
