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

#include "dimrad/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dimrad/errors.hpp"
#include "dimrad/eval.hpp"
#include "dimrad/serialization.hpp"

namespace fs = std::filesystem;

namespace dimrad
{
    namespace
    {
        constexpr const char *kCubeExtension = ".cube";

        void ensure_dir(const fs::path &dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec || !fs::is_directory(dir))
                throw IoError("cannot create directory '" + dir.string() + "'");
        }

        void write_manifest(const fs::path &run_dir, const std::string &command, const ScenarioConfig &cfg,
                            std::vector<std::string> outputs)
        {
            Manifest m{command, config_hash(cfg), cfg.seed, std::move(outputs)};
            write_text_file(run_dir / ("manifest_" + command + ".json"), manifest_json(m));
        }

        std::string cube_name(std::size_t i)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "frame_%04zu%s", i, kCubeExtension);
            return buf;
        }

        std::vector<EnhancerSample> load_dataset(const fs::path &run_dir)
        {
            return parse_dataset_csv(read_text_file(run_dir / "dataset.csv"));
        }
    }

    WalkConfig scenario_walk(const ScenarioConfig &cfg)
    {
        WalkConfig w = cfg.walk;
        w.seed = derive_seed(cfg.seed, cfg.walk.seed);
        return w;
    }

    std::vector<fs::path> list_cube_files(const fs::path &dir)
    {
        if (!fs::is_directory(dir))
            throw IoError("cube directory '" + dir.string() + "' does not exist");
        std::vector<fs::path> files;
        for (const auto &e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == kCubeExtension)
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        return files;
    }

    void cmd_simulate(const ScenarioConfig &cfg, const fs::path &run_dir)
    {
        cfg.validate();
        const auto sim = simulate_walk(cfg, cfg.staircase, scenario_walk(cfg));
        const fs::path cube_dir = run_dir / "cubes";
        ensure_dir(cube_dir);

        std::vector<std::string> names;
        for (std::size_t i = 0; i < sim.cubes.size(); ++i)
        {
            names.push_back(cube_name(i));
            write_cube(cube_dir / names.back(), sim.cubes[i]);
        }
        write_text_file(cube_dir / "truth.json", truth_sidecar_json(cfg.staircase, sim.trajectory, names));
        write_manifest(run_dir, "simulate", cfg, {"cubes/", "cubes/truth.json"});
    }

    Acquisition cmd_process(const ScenarioConfig &cfg, const fs::path &cube_dir, const fs::path &run_dir)
    {
        cfg.validate();
        Acquisition acq;
        if (cube_dir.empty())
            acq = run_acquisition(cfg, cfg.staircase, scenario_walk(cfg));
        else
        {
            SimulatedWalk sim;
            for (const auto &f : list_cube_files(cube_dir))
                sim.cubes.push_back(read_cube(f, cfg.radar));
            for (const auto &c : sim.cubes)
                sim.trajectory.frames.push_back(c.frame());
            acq = process_walk(cfg, cfg.staircase, sim);
        }

        ensure_dir(run_dir);
        std::string jsonl;
        for (const auto &f : acq.frames)
        {
            jsonl += target_list_to_json(f.targets);
            jsonl += '\n';
        }
        write_text_file(run_dir / "targets.jsonl", jsonl);
        write_text_file(run_dir / "report.json", acquisition_report_json(acq, &cfg.staircase));
        write_manifest(run_dir, "process", cfg, {"targets.jsonl", "report.json"});
        return acq;
    }

    SweepDataset cmd_sweep(const ScenarioConfig &cfg, const fs::path &run_dir)
    {
        cfg.validate();
        const auto split = make_split(cfg.sweep, cfg.seed);
        auto ds = assemble_dataset(cfg, split);
        ensure_dir(run_dir);
        write_text_file(run_dir / "dataset.csv", dataset_to_csv(ds.samples));
        write_manifest(run_dir, "sweep", cfg, {"dataset.csv"});
        return ds;
    }

    TrainResult cmd_train(const ScenarioConfig &cfg, const fs::path &run_dir)
    {
        cfg.validate();
        const auto all = load_dataset(run_dir);
        std::vector<EnhancerSample> train_set, test_set;
        split_samples(all, make_split(cfg.sweep, cfg.seed), train_set, test_set);

        TrainConfig tc = cfg.train;
        tc.seed = derive_seed(cfg.seed, cfg.train.seed);
        auto result = train(train_set, tc);

        std::string curve = "epoch,train_loss,validation_loss\n";
        for (std::size_t e = 0; e < result.train_loss.size(); ++e)
        {
            char buf[96];
            const double v = e < result.validation_loss.size() ? result.validation_loss[e] : 0.0;
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", e + 1, result.train_loss[e], v);
            curve += buf;
        }
        write_text_file(run_dir / "model.json", model_to_json(result.model));
        write_text_file(run_dir / "loss.csv", curve);
        write_manifest(run_dir, "train", cfg, {"model.json", "loss.csv"});
        return result;
    }

    ErrorReport cmd_evaluate(const ScenarioConfig &cfg, const fs::path &run_dir)
    {
        cfg.validate();
        const auto model = parse_model(read_text_file(run_dir / "model.json"));
        const auto all = load_dataset(run_dir);
        std::vector<EnhancerSample> train_set, test_set;
        split_samples(all, make_split(cfg.sweep, cfg.seed), train_set, test_set);
        if (test_set.empty())
            throw ConfigError("evaluate: no held-out samples in the dataset");

        const auto frames = evaluate_model(model, test_set);
        const auto acquisitions = evaluate_acquisitions(model, test_set);

        const fs::path eval_dir = run_dir / "eval";
        ensure_dir(eval_dir);
        write_text_file(eval_dir / "report.json", error_report_json(frames, acquisitions));
        std::vector<std::string> outputs{"eval/report.json"};
        const std::pair<const char *, const ErrorStats *> cells[] = {{"initial_depth", &frames.initial.depth},
                                                                     {"initial_height", &frames.initial.height},
                                                                     {"enhanced_depth", &frames.enhanced.depth},
                                                                     {"enhanced_height", &frames.enhanced.height}};
        for (const auto &[name, stats] : cells)
        {
            const std::string file = std::string("hist_") + name + ".csv";
            write_text_file(eval_dir / file, histogram_csv(stats->histogram));
            outputs.push_back("eval/" + file);
        }
        write_manifest(run_dir, "evaluate", cfg, outputs);
        return frames;
    }

    namespace
    {
        struct Options
        {
            std::string config;
            std::optional<std::uint64_t> seed;
            std::string out = "runs/default";
            std::string cubes;
            bool exhaustive_aoa = false;
            bool peak_interp = false;
            std::optional<double> cfar_pfa;
            std::optional<int> epochs;
            std::optional<std::uint64_t> split_seed;
        };

        ScenarioConfig resolve(const Options &o)
        {
            ScenarioConfig cfg = o.config.empty() ? ScenarioConfig{} : load_scenario(o.config);
            if (o.seed)
                cfg.seed = *o.seed;
            if (o.exhaustive_aoa)
                cfg.dsp.exhaustive_aoa = true;
            if (o.peak_interp)
                cfg.dsp.peak_interpolation = true;
            if (o.cfar_pfa)
            {
                cfg.dsp.range_cfar.false_alarm_rate = *o.cfar_pfa;
                cfg.dsp.range_cfar.scale_factor.reset();
            }
            if (o.epochs)
                cfg.train.epochs = *o.epochs;
            if (o.split_seed)
                cfg.sweep.split_seed = *o.split_seed;
            cfg.validate();
            return cfg;
        }

        void print_report(std::ostream &out, const ErrorReport &r)
        {
            const auto cmp = compare_estimators(r);
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "depth  MAE initial %.3f cm, enhanced %.3f cm\n"
                          "height MAE initial %.3f cm, enhanced %.3f cm\n",
                          r.initial.depth.mae_cm, r.enhanced.depth.mae_cm, r.initial.height.mae_cm,
                          r.enhanced.height.mae_cm);
            out << buf;
            if (cmp.combined_mae)
            {
                std::snprintf(buf, sizeof buf, "combined MAE improvement %.1f %%\n", 100.0 * *cmp.combined_mae);
                out << buf;
            }
        }
    }

    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"dimrad: radar staircase dimensioning toolkit", "dimrad"};
        app.require_subcommand(1);
        Options o;

        auto common = [&](CLI::App *sub, bool dsp, bool training) {
            sub->add_option("--config", o.config, "Scenario JSON file");
            sub->add_option("--seed", o.seed, "Scenario seed");
            sub->add_option("--out", o.out, "Run directory")->capture_default_str();
            sub->add_option("--split-seed", o.split_seed, "Seed of the held-out split");
            if (dsp)
            {
                sub->add_flag("--exhaustive-aoa", o.exhaustive_aoa, "AoA FFT on every range bin");
                sub->add_flag("--peak-interp", o.peak_interp, "Parabolic sub-bin peak interpolation");
                sub->add_option("--cfar-pfa", o.cfar_pfa, "Range CFAR false-alarm probability");
            }
            if (training)
                sub->add_option("--epochs", o.epochs, "Training epochs");
        };

        auto *config = app.add_subcommand("config", "Print the default scenario file");
        auto *simulate = app.add_subcommand("simulate", "Synthesize the scenario walk to cube files");
        auto *process = app.add_subcommand("process", "Target lists and dimension report of one walk");
        auto *sweep = app.add_subcommand("sweep", "Simulate the construction grid and write the dataset");
        auto *train_cmd = app.add_subcommand("train", "Train the enhancer on the dataset");
        auto *evaluate = app.add_subcommand("evaluate", "Compare initial and enhanced estimates on held-out data");
        auto *experiment = app.add_subcommand("experiment", "sweep, train and evaluate in one run");
        common(simulate, false, false);
        common(process, true, false);
        process->add_option("--cubes", o.cubes, "Cube directory (default: <out>/cubes when present)");
        common(sweep, true, false);
        common(train_cmd, false, true);
        common(evaluate, false, false);
        common(experiment, true, true);
        config->add_option("--config", o.config, "Scenario JSON file to normalise");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try
        {
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return kExitOk;
        }
        catch (const CLI::ParseError &e)
        {
            err << "dimrad: " << e.what() << "\n";
            return kExitValidation;
        }

        try
        {
            const ScenarioConfig cfg = resolve(o);
            const fs::path run_dir = o.out;
            if (config->parsed())
                out << scenario_to_json(cfg);
            else if (simulate->parsed())
            {
                cmd_simulate(cfg, run_dir);
                out << "simulate: wrote " << (run_dir / "cubes").string() << "\n";
            }
            else if (process->parsed())
            {
                fs::path cubes = o.cubes;
                if (cubes.empty() && fs::is_directory(run_dir / "cubes"))
                    cubes = run_dir / "cubes";
                const auto acq = cmd_process(cfg, cubes, run_dir);
                if (acq.aggregate)
                    out << "process: depth " << acq.aggregate->depth_m << " m, height " << acq.aggregate->height_m
                        << " m from " << acq.aggregate->frames_used << " frames\n";
                else
                    out << "process: no estimate\n";
            }
            else if (sweep->parsed())
            {
                const auto ds = cmd_sweep(cfg, run_dir);
                out << "sweep: " << ds.samples.size() << " samples from " << ds.walks << " walks\n";
                for (const auto &id : ds.empty_scenarios)
                    err << "warning: walk " << id << " produced no corner pair\n";
            }
            else if (train_cmd->parsed())
            {
                const auto r = cmd_train(cfg, run_dir);
                out << "train: final loss " << r.train_loss.back() << " m^2\n";
            }
            else if (evaluate->parsed())
                print_report(out, cmd_evaluate(cfg, run_dir));
            else if (experiment->parsed())
            {
                const auto ds = cmd_sweep(cfg, run_dir);
                for (const auto &id : ds.empty_scenarios)
                    err << "warning: walk " << id << " produced no corner pair\n";
                cmd_train(cfg, run_dir);
                print_report(out, cmd_evaluate(cfg, run_dir));
            }
            return kExitOk;
        }
        catch (const IoError &e)
        {
            err << "dimrad: I/O error: " << e.what() << "\n";
            return kExitIo;
        }
        catch (const std::exception &e)
        {
            err << "dimrad: " << e.what() << "\n";
            return kExitValidation;
        }
    }
}
