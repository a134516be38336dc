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

#ifndef MULTINET_EXPERIMENT_H
#define MULTINET_EXPERIMENT_H

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinet/schemes.h"

namespace multinet {

/// Malformed or inconsistent experiment configuration. `line` is 0 when the
/// problem is not tied to one line.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(int line, std::string key, const std::string &message);
    int line() const {
        return line_;
    }
    const std::string &key() const {
        return key_;
    }

   private:
    int line_;
    std::string key_;
};

enum class Scenario { Ghz, Triangular, Cluster, FromBell };

std::string scenario_name(Scenario s);

/// A parsed experiment. See README for the file format.
struct ExperimentConfig {
    std::string description;
    Scenario scenario = Scenario::Ghz;
    std::vector<std::string> schemes;

    // [noise]
    std::string channel = "ldn";
    double q = 1.0;
    double p = 1.0;
    double px = 0, py = 0, pz = 0;
    bool pz_given = false;
    GhzNoise::Qubits noisy_qubits = GhzNoise::Qubits::All;

    StorageModel storage;

    // [lattice]
    std::vector<uint32_t> dims;
    bool periodic = true;
    uint32_t block_size = 1;

    Target target;
    HashingOptions hashing;

    // [sweep]
    std::string sweep_param;
    double sweep_min = 0, sweep_max = 0;
    uint32_t sweep_steps = 1;

    // [triangular]
    uint32_t levels = 0;
    uint32_t tri_multipartite_cost = 3;
    uint32_t tri_bipartite_cost = 4;

    /// Line of each `section.key` seen while parsing, for error messages.
    std::map<std::string, int> key_lines;

    /// Inclusive, evenly spaced; integer parameters are rounded.
    std::vector<double> sweep_values() const;
};

/// Parses `key = value` lines grouped under `[section]` headers; `#` and `;`
/// start comments. Throws ConfigError naming the line and `section.key`.
ExperimentConfig parse_config(std::istream &in);
ExperimentConfig parse_config_string(const std::string &text);
/// Throws ConfigError when the file cannot be read.
ExperimentConfig load_config(const std::string &path);

/// Checks cross-field consistency (labels valid for the scenario, ranges in
/// their domains, lattice compatible with each architecture).
void validate_config(const ExperimentConfig &cfg);

struct CsvRow {
    std::string sweep_param;
    double sweep_value = 0;
    std::string scheme;
    SchemeResult result;
    size_t sweep_index = 0;
};

/// Evaluates every (sweep point, scheme) pair using up to `threads` workers
/// (0: hardware concurrency). Rows come back sorted by sweep index and then
/// scheme label, independent of scheduling.
std::vector<CsvRow> run_experiment(const ExperimentConfig &cfg, unsigned threads);

/// `sweep_param,sweep_value,scheme,F,m,n_used,infeasible` with 12 significant
/// digits.
void write_csv(std::ostream &out, const std::vector<CsvRow> &rows);
std::string csv_string(const std::vector<CsvRow> &rows);

/// Worker count from MULTINET_THREADS (unset or 0: automatic).
unsigned threads_from_env();

}  // namespace multinet

#endif
