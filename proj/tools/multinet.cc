// Copyright 2026 The Multinet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// multinet: run repeater-architecture sweeps and write CSV curves.
//
//   multinet run <config|preset> --out <csv>
//   multinet validate <config|preset>
//   multinet list-presets

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "multinet/experiment.h"

namespace fs = std::filesystem;
using namespace multinet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

fs::path preset_dir() {
    const char *env = std::getenv("MULTINET_PRESET_DIR");
    if (env != nullptr && *env != '\0') {
        return env;
    }
#ifdef MULTINET_PRESET_DIR
    return MULTINET_PRESET_DIR;
#else
    return "presets";
#endif
}

// A bare name that is not an existing file resolves to presets/<name>.ini.
std::string resolve_config(const std::string &arg) {
    if (fs::exists(arg) || arg.find('/') != std::string::npos) {
        return arg;
    }
    fs::path candidate = preset_dir() / (arg + ".ini");
    return fs::exists(candidate) ? candidate.string() : arg;
}

int cmd_run(const std::string &config, const std::string &out_path) {
    ExperimentConfig cfg;
    std::vector<CsvRow> rows;
    try {
        cfg = load_config(resolve_config(config));
        rows = run_experiment(cfg, threads_from_env());
    } catch (const ConfigError &e) {
        std::cerr << "multinet: config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (out_path == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "multinet: cannot write '" << out_path << "'\n";
            return kExitIo;
        }
        write_csv(out, rows);
        out.close();
        if (!out) {
            std::cerr << "multinet: error while writing '" << out_path << "'\n";
            return kExitIo;
        }
    }
    bool all_infeasible =
        !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CsvRow &r) { return r.result.infeasible; });
    if (all_infeasible) {
        std::cerr << "multinet: every sweep point is infeasible\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_validate(const std::string &config) {
    try {
        ExperimentConfig cfg = load_config(resolve_config(config));
        std::cout << "ok: " << scenario_name(cfg.scenario) << ", " << cfg.schemes.size() << " scheme(s), "
                  << cfg.sweep_steps << " sweep point(s) over " << cfg.sweep_param << "\n";
    } catch (const ConfigError &e) {
        std::cerr << "multinet: config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

int cmd_list_presets() {
    fs::path dir = preset_dir();
    std::error_code ec;
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".ini") {
            files.push_back(entry.path());
        }
    }
    if (ec) {
        std::cerr << "multinet: cannot list presets in '" << dir.string() << "'\n";
        return kExitIo;
    }
    std::sort(files.begin(), files.end());
    for (const fs::path &f : files) {
        std::string description;
        try {
            description = load_config(f.string()).description;
        } catch (const ConfigError &e) {
            description = std::string("(invalid: ") + e.what() + ")";
        }
        std::printf("%-22s %s\n", f.stem().string().c_str(), description.c_str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hashing-based multipartite repeater schemes: sweeps to CSV"};
    app.require_subcommand(1);

    std::string run_config, out_path;
    CLI::App *run = app.add_subcommand("run", "Evaluate an experiment and write CSV");
    run->add_option("config", run_config, "Config file or preset name")->required();
    run->add_option("--out,-o", out_path, "Output CSV path ('-' for stdout)")->required();

    std::string validate_config_path;
    CLI::App *validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("config", validate_config_path, "Config file or preset name")->required();

    CLI::App *list = app.add_subcommand("list-presets", "List the bundled presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    try {
        if (*run) return cmd_run(run_config, out_path);
        if (*validate) return cmd_validate(validate_config_path);
        if (*list) return cmd_list_presets();
    } catch (const std::exception &e) {
        std::cerr << "multinet: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
