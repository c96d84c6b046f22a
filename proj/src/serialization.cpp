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

#include "dimrad/serialization.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "dimrad/errors.hpp"

#ifndef DIMRAD_VERSION
#define DIMRAD_VERSION "0.0.0"
#endif

namespace dimrad
{
    using json = nlohmann::ordered_json;

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open '" + path.string() + "' for reading");
        std::ostringstream ss;
        ss << in.rdbuf();
        if (in.bad())
            throw IoError("read failed for '" + path.string() + "'");
        return ss.str();
    }

    void write_text_file(const std::filesystem::path &path, std::string_view text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + path.string() + "' for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out)
            throw IoError("write failed for '" + path.string() + "'");
    }

    namespace
    {
        // Reads fields from a JSON object, rejecting keys that no reader asked for.
        class ObjectReader
        {
        public:
            ObjectReader(const json &j, std::string where) : j_(j), where_(std::move(where))
            {
                if (!j_.is_object())
                    throw ConfigError(where_ + ": expected an object");
            }

            template <typename T>
            void get(const char *key, T &out)
            {
                seen_.push_back(key);
                const auto it = j_.find(key);
                if (it == j_.end())
                    return;
                try
                {
                    out = it->template get<T>();
                }
                catch (const nlohmann::json::exception &)
                {
                    throw ConfigError(where_ + "." + key + ": wrong type");
                }
            }

            void get_deg(const char *key, double &out_rad)
            {
                if (!j_.contains(key))
                {
                    seen_.push_back(key);
                    return;
                }
                double deg = 0.0;
                get(key, deg);
                out_rad = deg2rad(deg);
            }

            void get_optional(const char *key, std::optional<double> &out)
            {
                seen_.push_back(key);
                const auto it = j_.find(key);
                if (it == j_.end())
                    return;
                if (it->is_null())
                    out.reset();
                else if (it->is_number())
                    out = it->get<double>();
                else
                    throw ConfigError(where_ + "." + key + ": expected a number or null");
            }

            const json *child(const char *key)
            {
                seen_.push_back(key);
                const auto it = j_.find(key);
                return it == j_.end() ? nullptr : &*it;
            }

            void finish() const
            {
                for (const auto &item : j_.items())
                    if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end())
                        throw ConfigError(where_ + ": unknown field '" + item.key() + "'");
            }

        private:
            const json &j_;
            std::string where_;
            std::vector<std::string> seen_;
        };

        json optional_json(const std::optional<double> &v)
        {
            return v ? json(*v) : json(nullptr);
        }

        json cfar_json(const CfarConfig &c)
        {
            return {{"training_cells", c.training_cells},
                    {"guard_cells", c.guard_cells},
                    {"scale_factor", optional_json(c.scale_factor)},
                    {"false_alarm_rate", c.false_alarm_rate}};
        }

        void read_cfar(const json &j, const std::string &where, CfarConfig &c)
        {
            ObjectReader r(j, where);
            r.get("training_cells", c.training_cells);
            r.get("guard_cells", c.guard_cells);
            r.get_optional("scale_factor", c.scale_factor);
            r.get("false_alarm_rate", c.false_alarm_rate);
            r.finish();
        }

        json train_json(const TrainConfig &t)
        {
            return {{"epochs", t.epochs},
                    {"batch_size", t.batch_size},
                    {"learning_rate", t.learning_rate},
                    {"beta1", t.beta1},
                    {"beta2", t.beta2},
                    {"epsilon", t.epsilon},
                    {"seed", t.seed},
                    {"validation_fraction", t.validation_fraction},
                    {"early_stop", t.early_stop},
                    {"patience", t.patience},
                    {"hidden_layers", t.hidden_layers},
                    {"activation", to_string(t.activation)}};
        }

        void read_train(const json &j, TrainConfig &t)
        {
            ObjectReader r(j, "train");
            r.get("epochs", t.epochs);
            r.get("batch_size", t.batch_size);
            r.get("learning_rate", t.learning_rate);
            r.get("beta1", t.beta1);
            r.get("beta2", t.beta2);
            r.get("epsilon", t.epsilon);
            r.get("seed", t.seed);
            r.get("validation_fraction", t.validation_fraction);
            r.get("early_stop", t.early_stop);
            r.get("patience", t.patience);
            r.get("hidden_layers", t.hidden_layers);
            std::string act = to_string(t.activation);
            r.get("activation", act);
            t.activation = activation_from_string(act);
            r.finish();
        }

        json scenario_json(const ScenarioConfig &c)
        {
            json j;
            j["seed"] = c.seed;
            j["radar"] = {{"carrier_frequency_hz", c.radar.carrier_frequency_hz},
                          {"bandwidth_hz", c.radar.bandwidth_hz},
                          {"chirp_duration_s", c.radar.chirp_duration_s},
                          {"samples_per_chirp", c.radar.samples_per_chirp},
                          {"chirps_per_frame", c.radar.chirps_per_frame},
                          {"tx_count", c.radar.tx_count},
                          {"rx_count", c.radar.rx_count}};
            j["staircase"] = {{"depth_m", c.staircase.depth_m},
                              {"height_m", c.staircase.height_m},
                              {"step_count", c.staircase.step_count},
                              {"foot_x_m", c.staircase.foot_x_m}};
            j["walk"] = {{"start_standoff_m", c.walk.start_standoff_m},
                         {"end_standoff_m", c.walk.end_standoff_m},
                         {"duration_s", c.walk.duration_s},
                         {"sample_rate_hz", c.walk.sample_rate_hz},
                         {"mount_height_m", c.walk.mount_height_m},
                         {"mount_tilt_deg", rad2deg(c.walk.mount_tilt_rad)},
                         {"sway_amplitude_deg", rad2deg(c.walk.sway_amplitude_rad)},
                         {"sway_frequency_hz", c.walk.sway_frequency_hz},
                         {"sway_phase_deg", rad2deg(c.walk.sway_phase_rad)},
                         {"gait_jitter_deg", rad2deg(c.walk.gait_jitter_rad)},
                         {"imu_noise_deg", rad2deg(c.walk.imu_noise_rad)},
                         {"seed", c.walk.seed}};
            j["scene"] = {{"corner_reflectivity", c.corner_reflectivity},
                          {"clutter_count", c.clutter_count},
                          {"clutter_reflectivity", c.clutter_reflectivity}};
            j["synthesis"] = {{"noise_enabled", c.synthesis.noise.enabled},
                              {"snr_db", c.synthesis.noise.snr_db},
                              {"noise_power", optional_json(c.synthesis.noise.noise_power)},
                              {"range_falloff", c.synthesis.range_falloff}};
            j["dsp"] = {{"range_cfar", cfar_json(c.dsp.range_cfar)},
                        {"aoa_cfar", cfar_json(c.dsp.aoa_cfar)},
                        {"range_fft_len", c.dsp.range_fft_len},
                        {"aoa_fft_len", c.dsp.aoa_fft_len},
                        {"fast_time_window", c.dsp.fast_time_window},
                        {"doppler_gate", c.dsp.doppler_gate},
                        {"peaks_only", c.dsp.peaks_only},
                        {"peak_interpolation", c.dsp.peak_interpolation},
                        {"exhaustive_aoa", c.dsp.exhaustive_aoa}};
            j["standards"] = {{"depth_min_m", c.standards.depth_min_m},
                              {"depth_max_m", c.standards.depth_max_m},
                              {"height_min_m", c.standards.height_min_m},
                              {"height_max_m", c.standards.height_max_m}};
            j["sweep"] = {{"depths_m", c.sweep.depths_m},
                          {"heights_m", c.sweep.heights_m},
                          {"walks_per_combination", c.sweep.walks_per_combination},
                          {"subject_count", c.sweep.subject_count},
                          {"test_subject_count", c.sweep.test_subject_count},
                          {"mount_height_min_m", c.sweep.mount_height_min_m},
                          {"mount_height_max_m", c.sweep.mount_height_max_m},
                          {"test_combination_count", c.sweep.test_combination_count},
                          {"split_seed", c.sweep.split_seed}};
            j["train"] = train_json(c.train);
            return j;
        }

        template <typename F>
        void with_child(ObjectReader &r, const char *key, F &&f)
        {
            if (const json *c = r.child(key))
                f(*c);
        }

        ScenarioConfig scenario_from(const json &j)
        {
            ScenarioConfig c;
            ObjectReader r(j, "scenario");
            r.get("seed", c.seed);
            with_child(r, "radar", [&](const json &s) {
                ObjectReader o(s, "radar");
                o.get("carrier_frequency_hz", c.radar.carrier_frequency_hz);
                o.get("bandwidth_hz", c.radar.bandwidth_hz);
                o.get("chirp_duration_s", c.radar.chirp_duration_s);
                o.get("samples_per_chirp", c.radar.samples_per_chirp);
                o.get("chirps_per_frame", c.radar.chirps_per_frame);
                o.get("tx_count", c.radar.tx_count);
                o.get("rx_count", c.radar.rx_count);
                o.finish();
            });
            with_child(r, "staircase", [&](const json &s) {
                ObjectReader o(s, "staircase");
                o.get("depth_m", c.staircase.depth_m);
                o.get("height_m", c.staircase.height_m);
                o.get("step_count", c.staircase.step_count);
                o.get("foot_x_m", c.staircase.foot_x_m);
                o.finish();
            });
            with_child(r, "walk", [&](const json &s) {
                ObjectReader o(s, "walk");
                o.get("start_standoff_m", c.walk.start_standoff_m);
                o.get("end_standoff_m", c.walk.end_standoff_m);
                o.get("duration_s", c.walk.duration_s);
                o.get("sample_rate_hz", c.walk.sample_rate_hz);
                o.get("mount_height_m", c.walk.mount_height_m);
                o.get_deg("mount_tilt_deg", c.walk.mount_tilt_rad);
                o.get_deg("sway_amplitude_deg", c.walk.sway_amplitude_rad);
                o.get("sway_frequency_hz", c.walk.sway_frequency_hz);
                o.get_deg("sway_phase_deg", c.walk.sway_phase_rad);
                o.get_deg("gait_jitter_deg", c.walk.gait_jitter_rad);
                o.get_deg("imu_noise_deg", c.walk.imu_noise_rad);
                o.get("seed", c.walk.seed);
                o.finish();
            });
            with_child(r, "scene", [&](const json &s) {
                ObjectReader o(s, "scene");
                o.get("corner_reflectivity", c.corner_reflectivity);
                o.get("clutter_count", c.clutter_count);
                o.get("clutter_reflectivity", c.clutter_reflectivity);
                o.finish();
            });
            with_child(r, "synthesis", [&](const json &s) {
                ObjectReader o(s, "synthesis");
                o.get("noise_enabled", c.synthesis.noise.enabled);
                o.get("snr_db", c.synthesis.noise.snr_db);
                o.get_optional("noise_power", c.synthesis.noise.noise_power);
                o.get("range_falloff", c.synthesis.range_falloff);
                o.finish();
            });
            with_child(r, "dsp", [&](const json &s) {
                ObjectReader o(s, "dsp");
                with_child(o, "range_cfar", [&](const json &x) { read_cfar(x, "dsp.range_cfar", c.dsp.range_cfar); });
                with_child(o, "aoa_cfar", [&](const json &x) { read_cfar(x, "dsp.aoa_cfar", c.dsp.aoa_cfar); });
                o.get("range_fft_len", c.dsp.range_fft_len);
                o.get("aoa_fft_len", c.dsp.aoa_fft_len);
                o.get("fast_time_window", c.dsp.fast_time_window);
                o.get("doppler_gate", c.dsp.doppler_gate);
                o.get("peaks_only", c.dsp.peaks_only);
                o.get("peak_interpolation", c.dsp.peak_interpolation);
                o.get("exhaustive_aoa", c.dsp.exhaustive_aoa);
                o.finish();
            });
            with_child(r, "standards", [&](const json &s) {
                ObjectReader o(s, "standards");
                o.get("depth_min_m", c.standards.depth_min_m);
                o.get("depth_max_m", c.standards.depth_max_m);
                o.get("height_min_m", c.standards.height_min_m);
                o.get("height_max_m", c.standards.height_max_m);
                o.finish();
            });
            with_child(r, "sweep", [&](const json &s) {
                ObjectReader o(s, "sweep");
                o.get("depths_m", c.sweep.depths_m);
                o.get("heights_m", c.sweep.heights_m);
                o.get("walks_per_combination", c.sweep.walks_per_combination);
                o.get("subject_count", c.sweep.subject_count);
                o.get("test_subject_count", c.sweep.test_subject_count);
                o.get("mount_height_min_m", c.sweep.mount_height_min_m);
                o.get("mount_height_max_m", c.sweep.mount_height_max_m);
                o.get("test_combination_count", c.sweep.test_combination_count);
                o.get("split_seed", c.sweep.split_seed);
                o.finish();
            });
            with_child(r, "train", [&](const json &s) { read_train(s, c.train); });
            r.finish();
            return c;
        }

        json parse_json(std::string_view text, const char *what)
        {
            try
            {
                return json::parse(text.begin(), text.end());
            }
            catch (const nlohmann::json::parse_error &e)
            {
                throw ConfigError(std::string(what) + ": malformed JSON (" + e.what() + ")");
            }
        }
    }

    std::string scenario_to_json(const ScenarioConfig &cfg)
    {
        return scenario_json(cfg).dump(2) + "\n";
    }

    ScenarioConfig parse_scenario(std::string_view json_text)
    {
        auto cfg = scenario_from(parse_json(json_text, "scenario"));
        cfg.validate();
        return cfg;
    }

    ScenarioConfig load_scenario(const std::filesystem::path &path)
    {
        return parse_scenario(read_text_file(path));
    }

    std::string config_hash(const ScenarioConfig &cfg)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                      static_cast<unsigned long long>(fnv1a64(scenario_json(cfg).dump())));
        return buf;
    }

    std::string target_list_to_json(const TargetList &list)
    {
        json targets = json::array();
        for (const auto &e : list.entries)
            targets.push_back({{"r_m", e.range_m},
                               {"bin", e.range_bin},
                               {"theta_rad", e.angles_rad},
                               {"theta_mag", e.angle_magnitude},
                               {"mag", e.magnitude}});
        json j = {{"t", list.timestamp_s}, {"gamma_rad", list.inclination_rad}, {"targets", targets}};
        return j.dump();
    }

    TargetList parse_target_list(std::string_view line)
    {
        const json j = parse_json(line, "target list");
        TargetList list;
        try
        {
            list.timestamp_s = j.at("t").get<double>();
            list.inclination_rad = j.at("gamma_rad").get<double>();
            for (const auto &t : j.at("targets"))
            {
                TargetEntry e;
                e.range_m = t.at("r_m").get<double>();
                e.range_bin = t.at("bin").get<std::size_t>();
                e.angles_rad = t.at("theta_rad").get<std::vector<double>>();
                e.angle_magnitude = t.at("theta_mag").get<std::vector<double>>();
                e.magnitude = t.at("mag").get<double>();
                if (e.angles_rad.size() != e.angle_magnitude.size())
                    throw ConfigError("target list: angle and magnitude counts differ");
                list.entries.push_back(std::move(e));
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError(std::string("target list: ") + e.what());
        }
        return list;
    }

    std::string truth_sidecar_json(const StaircaseSpec &spec, const Trajectory &traj,
                                   std::span<const std::string> cube_files)
    {
        json corners = json::array();
        for (const auto &c : corners_of(spec).corners)
            corners.push_back({{"x_m", c.x}, {"y_m", c.y}});
        json frames = json::array();
        for (std::size_t i = 0; i < traj.frames.size(); ++i)
        {
            const auto &f = traj.frames[i];
            json fr = {{"index", i},
                       {"t", f.timestamp_s},
                       {"x_m", f.radar_origin.x},
                       {"y_m", f.radar_origin.y},
                       {"gamma_deg", rad2deg(f.inclination_rad)},
                       {"gamma_true_deg", rad2deg(f.true_inclination_rad)},
                       {"v_host_mps", f.host_velocity_mps}};
            if (i < cube_files.size())
                fr["cube"] = cube_files[i];
            frames.push_back(std::move(fr));
        }
        json j = {{"d_true_m", spec.depth_m},
                  {"h_true_m", spec.height_m},
                  {"step_count", spec.step_count},
                  {"foot_x_m", spec.foot_x_m},
                  {"mount_height_m", traj.mount_height_m},
                  {"mount_tilt_deg", rad2deg(traj.mount_tilt_rad)},
                  {"corners", corners},
                  {"frames", frames}};
        return j.dump(2) + "\n";
    }

    std::string acquisition_report_json(const Acquisition &acq, const StaircaseSpec *truth)
    {
        json frames = json::array();
        for (const auto &f : acq.frames)
        {
            json fr = {{"t", f.frame.timestamp_s}, {"targets", f.targets.entries.size()}};
            if (f.estimate)
            {
                fr["depth_m"] = f.estimate->depth_m;
                fr["height_m"] = f.estimate->height_m;
            }
            else
                fr["estimate"] = "none";
            frames.push_back(std::move(fr));
        }
        json j;
        if (truth)
        {
            j["d_true_m"] = truth->depth_m;
            j["h_true_m"] = truth->height_m;
        }
        if (acq.aggregate)
            j["acquisition"] = {{"depth_m", acq.aggregate->depth_m},
                                {"height_m", acq.aggregate->height_m},
                                {"frames_used", acq.aggregate->frames_used}};
        else
            j["acquisition"] = nullptr;
        j["frames_total"] = acq.frames.size();
        j["frames"] = frames;
        return j.dump(2) + "\n";
    }

    std::string train_config_to_json(const TrainConfig &cfg)
    {
        return train_json(cfg).dump(2) + "\n";
    }

    std::string model_to_json(const EnhancerModel &model)
    {
        json layers = json::array();
        for (const auto &l : model.layers)
        {
            json rows = json::array();
            for (std::size_t o = 0; o < l.outputs; ++o)
                rows.push_back(std::vector<double>(l.weights.begin() + static_cast<std::ptrdiff_t>(o * l.inputs),
                                                   l.weights.begin() + static_cast<std::ptrdiff_t>((o + 1) * l.inputs)));
            layers.push_back({{"inputs", l.inputs}, {"outputs", l.outputs}, {"weights", rows}, {"bias", l.bias}});
        }
        json j = {{"format", "dimrad-enhancer-1"},
                  {"layer_sizes", model.layer_sizes()},
                  {"hidden_activation", to_string(model.hidden_activation)},
                  {"output_activation", "linear"},
                  {"input_mean", model.input_mean},
                  {"input_scale", model.input_scale},
                  {"output_mean", model.output_mean},
                  {"output_scale", model.output_scale},
                  {"layers", layers},
                  {"train_config", train_json(model.train_config)},
                  {"dataset_fingerprint", model.dataset_fingerprint}};
        return j.dump(2) + "\n";
    }

    EnhancerModel parse_model(std::string_view json_text)
    {
        const json j = parse_json(json_text, "model");
        EnhancerModel m;
        try
        {
            if (j.at("format").get<std::string>() != "dimrad-enhancer-1")
                throw ConfigError("model: unsupported format");
            m.hidden_activation = activation_from_string(j.at("hidden_activation").get<std::string>());
            m.input_mean = j.at("input_mean").get<EnhancerInput>();
            m.input_scale = j.at("input_scale").get<EnhancerInput>();
            m.output_mean = j.at("output_mean").get<EnhancerOutput>();
            m.output_scale = j.at("output_scale").get<EnhancerOutput>();
            for (const auto &lj : j.at("layers"))
            {
                DenseLayer l;
                l.inputs = lj.at("inputs").get<std::size_t>();
                l.outputs = lj.at("outputs").get<std::size_t>();
                const auto rows = lj.at("weights").get<std::vector<std::vector<double>>>();
                if (rows.size() != l.outputs)
                    throw ConfigError("model: weight rows do not match layer outputs");
                for (const auto &row : rows)
                {
                    if (row.size() != l.inputs)
                        throw ConfigError("model: weight row length does not match layer inputs");
                    l.weights.insert(l.weights.end(), row.begin(), row.end());
                }
                l.bias = lj.at("bias").get<std::vector<double>>();
                m.layers.push_back(std::move(l));
            }
            if (j.at("layer_sizes").get<std::vector<std::size_t>>() != m.layer_sizes())
                throw ConfigError("model: layer_sizes disagree with layers");
            read_train(j.at("train_config"), m.train_config);
            m.dataset_fingerprint = j.at("dataset_fingerprint").get<std::string>();
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError(std::string("model: ") + e.what());
        }
        m.validate();
        return m;
    }

    namespace
    {
        void append_double(std::string &out, double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
        }

        std::vector<std::string_view> split_fields(std::string_view line)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
                if (comma == std::string_view::npos)
                    return out;
                start = comma + 1;
            }
        }

        double parse_double(std::string_view s, std::size_t line_no)
        {
            const std::string str(s);
            char *end = nullptr;
            const double v = std::strtod(str.c_str(), &end);
            if (str.empty() || end != str.c_str() + str.size() || !std::isfinite(v))
                throw ConfigError("dataset line " + std::to_string(line_no) + ": bad number '" + str + "'");
            return v;
        }
    }

    constexpr std::string_view kDatasetHeader = "r1_m,theta1_rad,r2_m,theta2_rad,hr_m,gamma_rad,d_true_m,h_true_m,scenario_id,frame_id";

    std::string dataset_to_csv(std::span<const EnhancerSample> samples)
    {
        std::string out(kDatasetHeader);
        out += '\n';
        for (const auto &s : samples)
        {
            if (s.scenario_id.find_first_of(",\n") != std::string::npos)
                throw ConfigError("dataset: scenario id must not contain commas or newlines");
            for (double v : s.inputs)
            {
                append_double(out, v);
                out += ',';
            }
            for (double v : s.labels)
            {
                append_double(out, v);
                out += ',';
            }
            out += s.scenario_id;
            out += ',';
            out += std::to_string(s.frame_id);
            out += '\n';
        }
        return out;
    }

    std::vector<EnhancerSample> parse_dataset_csv(std::string_view text)
    {
        std::vector<EnhancerSample> out;
        std::size_t pos = 0, line_no = 0;
        bool header = true;
        while (pos < text.size())
        {
            auto nl = text.find('\n', pos);
            if (nl == std::string_view::npos)
                nl = text.size();
            auto line = text.substr(pos, nl - pos);
            pos = nl + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (header)
            {
                if (line != kDatasetHeader)
                    throw ConfigError("dataset: unexpected header");
                header = false;
                continue;
            }
            if (line.empty())
                continue;
            const auto f = split_fields(line);
            if (f.size() != 10)
                throw ConfigError("dataset line " + std::to_string(line_no) + ": expected 10 fields");
            EnhancerSample s;
            for (std::size_t k = 0; k < kEnhancerInputs; ++k)
                s.inputs[k] = parse_double(f[k], line_no);
            s.labels = {parse_double(f[6], line_no), parse_double(f[7], line_no)};
            s.scenario_id = std::string(f[8]);
            int frame = 0;
            const auto res = std::from_chars(f[9].data(), f[9].data() + f[9].size(), frame);
            if (res.ec != std::errc{} || res.ptr != f[9].data() + f[9].size())
                throw ConfigError("dataset line " + std::to_string(line_no) + ": bad frame id");
            s.frame_id = frame;
            out.push_back(std::move(s));
        }
        if (header)
            throw ConfigError("dataset: missing header");
        return out;
    }

    namespace
    {
        json stats_json(const ErrorStats &s)
        {
            return {{"count", s.count},
                    {"mae_cm", s.mae_cm},
                    {"rmse_cm", s.rmse_cm},
                    {"sigma_cm", s.sigma_cm},
                    {"bias_cm", s.bias_cm},
                    {"histogram",
                     {{"lo_cm", s.histogram.lo_cm},
                      {"hi_cm", s.histogram.hi_cm},
                      {"width_cm", s.histogram.width_cm},
                      {"inside", s.histogram.inside},
                      {"outside", s.histogram.outside},
                      {"density", s.histogram.density}}},
                    {"error_samples_cm", s.errors_cm}};
        }

        json improvement_json(const MetricImprovement &m)
        {
            return {{"mae", optional_json(m.mae)}, {"rmse", optional_json(m.rmse)}, {"sigma", optional_json(m.sigma)}};
        }

        json report_json(const ErrorReport &r)
        {
            const auto cmp = compare_estimators(r);
            return {{"initial", {{"depth", stats_json(r.initial.depth)}, {"height", stats_json(r.initial.height)}}},
                    {"enhanced", {{"depth", stats_json(r.enhanced.depth)}, {"height", stats_json(r.enhanced.height)}}},
                    {"improvement",
                     {{"depth", improvement_json(cmp.depth)},
                      {"height", improvement_json(cmp.height)},
                      {"combined_mae", optional_json(cmp.combined_mae)},
                      {"enhanced_better_everywhere", cmp.enhanced_better_everywhere}}},
                    {"rmse_consistency", report_consistency(r)}};
        }
    }

    std::string error_report_json(const ErrorReport &frames, const ErrorReport &acquisitions)
    {
        json j = {{"unit", "cm"},
                  {"sigma", "population"},
                  {"per_frame", report_json(frames)},
                  {"per_acquisition", report_json(acquisitions)}};
        return j.dump(2) + "\n";
    }

    std::string histogram_csv(const Histogram &h)
    {
        std::string out = "bin_center_cm,density\n";
        for (std::size_t i = 0; i < h.bins(); ++i)
        {
            append_double(out, h.center(i));
            out += ',';
            append_double(out, h.density[i]);
            out += '\n';
        }
        return out;
    }

    std::string manifest_json(const Manifest &m)
    {
        json j = {{"command", m.command},
                  {"dimrad_version", DIMRAD_VERSION},
                  {"json_library",
                   std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                  {"config_hash", m.config_hash},
                  {"seed", m.seed},
                  {"outputs", m.outputs}};
        return j.dump(2) + "\n";
    }
}
