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

#include "multinet/experiment.h"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace multinet {

ConfigError::ConfigError(int line, std::string key, const std::string &message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : key + ": ") + message),
      line_(line),
      key_(std::move(key)) {
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Ghz:
            return "ghz";
        case Scenario::Triangular:
            return "triangular";
        case Scenario::Cluster:
            return "cluster";
        case Scenario::FromBell:
            return "from-bell";
    }
    return "?";
}

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double parse_real(int line, const std::string &key, const std::string &v) {
    errno = 0;
    char *end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x)) {
        throw ConfigError(line, key, "expected a number, got '" + v + "'");
    }
    return x;
}

uint64_t parse_count(int line, const std::string &key, const std::string &v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError(line, key, "expected a nonnegative integer, got '" + v + "'");
    }
    errno = 0;
    unsigned long long x = std::strtoull(v.c_str(), nullptr, 10);
    if (errno == ERANGE) {
        throw ConfigError(line, key, "integer out of range");
    }
    return x;
}

bool parse_bool(int line, const std::string &key, const std::string &v) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError(line, key, "expected true or false, got '" + v + "'");
}

void require_probability(int line, const std::string &key, double x) {
    if (!(x >= 0 && x <= 1)) {
        throw ConfigError(line, key, "must lie in [0,1]");
    }
}

bool is_integer_param(const std::string &p) {
    return p == "capacity" || p == "levels" || p == "m";
}

// Label for a cluster architecture: family[:block_size].
struct ClusterLabel {
    ArchFamily family;
    uint32_t block_size;
};

ClusterLabel parse_cluster_label(const std::string &label, uint32_t default_block) {
    std::string name = label;
    uint32_t b = default_block;
    size_t colon = label.find(':');
    if (colon != std::string::npos) {
        name = label.substr(0, colon);
        std::string rest = label.substr(colon + 1);
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos || rest.size() > 6) {
            throw std::invalid_argument("bad block size in '" + label + "'");
        }
        b = (uint32_t)std::stoul(rest);
    }
    ArchFamily f = parse_arch_family(name);
    if (f != ArchFamily::BipartiteGrid && f != ArchFamily::Windmill && f != ArchFamily::ShiftedGrid) {
        throw std::invalid_argument("'" + name + "' is not a cluster architecture");
    }
    return ClusterLabel{f, b};
}

}  // namespace

std::vector<double> ExperimentConfig::sweep_values() const {
    std::vector<double> out;
    for (uint32_t i = 0; i < sweep_steps; i++) {
        double v = sweep_steps == 1 ? sweep_min
                                    : sweep_min + (sweep_max - sweep_min) * (double)i / (double)(sweep_steps - 1);
        if (i + 1 == sweep_steps && sweep_steps > 1) {
            v = sweep_max;
        }
        if (is_integer_param(sweep_param)) {
            v = std::round(v);
        }
        out.push_back(v);
    }
    return out;
}

ExperimentConfig parse_config(std::istream &in) {
    ExperimentConfig cfg;
    static const std::map<std::string, std::set<std::string>> known = {
        {"experiment", {"scenario", "schemes", "description", "levels"}},
        {"noise", {"channel", "q", "p", "px", "py", "pz", "noisy_qubits"}},
        {"storage", {"mode", "capacity"}},
        {"lattice", {"dims", "periodic", "block_size"}},
        {"target", {"kind", "m", "threshold"}},
        {"hashing", {"split", "bennett"}},
        {"sweep", {"param", "min", "max", "steps"}},
        {"triangular", {"qubits_per_copy_multipartite", "qubits_per_copy_bipartite"}},
    };
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        line++;
        size_t hash = raw.find_first_of("#;");
        std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw ConfigError(line, "", "unterminated section header");
            }
            section = trim(text.substr(1, text.size() - 2));
            if (!known.count(section)) {
                throw ConfigError(line, section, "unknown section");
            }
            continue;
        }
        size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line, "", "expected 'key = value'");
        }
        std::string name = trim(text.substr(0, eq));
        std::string v = trim(text.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError(line, name, "key outside of any section");
        }
        std::string key = section + "." + name;
        if (!known.at(section).count(name)) {
            throw ConfigError(line, key, "unknown key");
        }
        if (cfg.key_lines.count(key)) {
            throw ConfigError(line, key, "duplicate key (first set on line " + std::to_string(cfg.key_lines[key]) +
                                             ")");
        }
        cfg.key_lines[key] = line;

        if (key == "experiment.scenario") {
            if (v == "ghz") cfg.scenario = Scenario::Ghz;
            else if (v == "triangular") cfg.scenario = Scenario::Triangular;
            else if (v == "cluster") cfg.scenario = Scenario::Cluster;
            else if (v == "from-bell") cfg.scenario = Scenario::FromBell;
            else throw ConfigError(line, key, "unknown scenario '" + v + "' (ghz|triangular|cluster|from-bell)");
        } else if (key == "experiment.schemes") {
            cfg.schemes = split_list(v, ',');
            if (cfg.schemes.empty()) {
                throw ConfigError(line, key, "no schemes listed");
            }
        } else if (key == "experiment.description") {
            cfg.description = v;
        } else if (key == "experiment.levels") {
            cfg.levels = (uint32_t)parse_count(line, key, v);
        } else if (key == "noise.channel") {
            if (v != "ldn" && v != "z" && v != "biased" && v != "edge") {
                throw ConfigError(line, key, "unknown channel '" + v + "' (ldn|z|biased|edge)");
            }
            cfg.channel = v;
        } else if (key == "noise.q") {
            cfg.q = parse_real(line, key, v);
            require_probability(line, key, cfg.q);
        } else if (key == "noise.p") {
            cfg.p = parse_real(line, key, v);
            require_probability(line, key, cfg.p);
        } else if (key == "noise.px") {
            cfg.px = parse_real(line, key, v);
            require_probability(line, key, cfg.px);
        } else if (key == "noise.py") {
            cfg.py = parse_real(line, key, v);
            require_probability(line, key, cfg.py);
        } else if (key == "noise.pz") {
            cfg.pz = parse_real(line, key, v);
            cfg.pz_given = true;
            require_probability(line, key, cfg.pz);
        } else if (key == "noise.noisy_qubits") {
            if (v == "all") cfg.noisy_qubits = GhzNoise::Qubits::All;
            else if (v == "leaves") cfg.noisy_qubits = GhzNoise::Qubits::Leaves;
            else throw ConfigError(line, key, "expected all or leaves");
        } else if (key == "storage.mode") {
            if (v == "per-node") cfg.storage.mode = StorageModel::Mode::PerNode;
            else if (v == "global") cfg.storage.mode = StorageModel::Mode::Global;
            else throw ConfigError(line, key, "expected per-node or global");
        } else if (key == "storage.capacity") {
            cfg.storage.capacity = parse_count(line, key, v);
            if (cfg.storage.capacity < 1) {
                throw ConfigError(line, key, "must be at least 1");
            }
        } else if (key == "lattice.dims") {
            cfg.dims.clear();
            for (const std::string &d : split_list(v, 'x')) {
                uint64_t n = parse_count(line, key, d);
                if (n == 0 || n > 4096) {
                    throw ConfigError(line, key, "dimensions must lie in [1, 4096]");
                }
                cfg.dims.push_back((uint32_t)n);
            }
            if (cfg.dims.empty()) {
                throw ConfigError(line, key, "no dimensions given");
            }
        } else if (key == "lattice.periodic") {
            cfg.periodic = parse_bool(line, key, v);
        } else if (key == "lattice.block_size") {
            cfg.block_size = (uint32_t)parse_count(line, key, v);
            if (cfg.block_size == 0) {
                throw ConfigError(line, key, "must be at least 1");
            }
        } else if (key == "target.kind") {
            if (v == "n-to-m") cfg.target.kind = Target::Kind::Copies;
            else if (v == "threshold") cfg.target.kind = Target::Kind::Threshold;
            else throw ConfigError(line, key, "expected n-to-m or threshold");
        } else if (key == "target.m") {
            cfg.target.m = parse_count(line, key, v);
            if (cfg.target.m == 0) {
                throw ConfigError(line, key, "must be at least 1");
            }
        } else if (key == "target.threshold") {
            cfg.target.threshold = parse_real(line, key, v);
            if (!(cfg.target.threshold > 0 && cfg.target.threshold < 1)) {
                throw ConfigError(line, key, "must lie in (0,1)");
            }
        } else if (key == "hashing.split") {
            if (v == "equal") cfg.hashing.optimize_split = false;
            else if (v == "optimized") cfg.hashing.optimize_split = true;
            else throw ConfigError(line, key, "expected equal or optimized");
        } else if (key == "hashing.bennett") {
            try {
                cfg.hashing.bennett = parse_bennett_mode(v);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(line, key, e.what());
            }
        } else if (key == "sweep.param") {
            cfg.sweep_param = v;
        } else if (key == "sweep.min") {
            cfg.sweep_min = parse_real(line, key, v);
        } else if (key == "sweep.max") {
            cfg.sweep_max = parse_real(line, key, v);
        } else if (key == "sweep.steps") {
            uint64_t s = parse_count(line, key, v);
            if (s < 1 || s > 100000) {
                throw ConfigError(line, key, "must lie in [1, 100000]");
            }
            cfg.sweep_steps = (uint32_t)s;
        } else if (key == "triangular.qubits_per_copy_multipartite") {
            cfg.tri_multipartite_cost = (uint32_t)parse_count(line, key, v);
        } else if (key == "triangular.qubits_per_copy_bipartite") {
            cfg.tri_bipartite_cost = (uint32_t)parse_count(line, key, v);
        }
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig parse_config_string(const std::string &text) {
    std::istringstream in(text);
    return parse_config(in);
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(0, "", "cannot read config file '" + path + "'");
    }
    return parse_config(in);
}

void validate_config(const ExperimentConfig &cfg) {
    auto line_of = [&](const std::string &key) {
        auto it = cfg.key_lines.find(key);
        return it == cfg.key_lines.end() ? 0 : it->second;
    };
    auto fail = [&](const std::string &key, const std::string &msg) { throw ConfigError(line_of(key), key, msg); };

    if (!cfg.key_lines.count("experiment.scenario")) {
        fail("experiment.scenario", "missing");
    }
    if (cfg.schemes.empty()) {
        fail("experiment.schemes", "missing");
    }
    if (cfg.sweep_param.empty()) {
        fail("sweep.param", "missing (exactly one sweep axis is required)");
    }
    if (cfg.sweep_min > cfg.sweep_max) {
        fail("sweep.min", "min (" + std::to_string(cfg.sweep_min) + ") exceeds max (" +
                              std::to_string(cfg.sweep_max) + ")");
    }

    std::set<std::string> params;
    std::set<std::string> labels;
    switch (cfg.scenario) {
        case Scenario::Ghz:
            params = {"capacity", "q", "p", "m", "threshold", "pz", "px"};
            labels = {"A", "A-opt", "B", "C"};
            if (cfg.channel == "edge") {
                fail("noise.channel", "the edge channel only applies to the from-bell scenario");
            }
            break;
        case Scenario::Triangular:
            params = {"levels", "capacity", "q", "p"};
            labels = {"A", "B", "C"};
            if (cfg.channel != "ldn") {
                fail("noise.channel", "the triangular scenario uses ldn noise");
            }
            if (cfg.target.kind != Target::Kind::Copies || cfg.target.m != 1) {
                fail("target.kind", "the triangular scenario evaluates n-to-1 protocols");
            }
            if (cfg.tri_multipartite_cost == 0 || cfg.tri_bipartite_cost == 0) {
                fail("triangular.qubits_per_copy_multipartite", "qubits per copy must be positive");
            }
            break;
        case Scenario::Cluster:
            params = {"q", "capacity", "m", "threshold"};
            if (cfg.channel != "ldn") {
                fail("noise.channel", "the cluster scenario uses ldn noise");
            }
            break;
        case Scenario::FromBell:
            params = {"q", "capacity", "m", "threshold"};
            labels = {"multipartite", "bipartite"};
            if (cfg.channel != "ldn" && cfg.channel != "edge") {
                fail("noise.channel", "the from-bell scenario uses ldn (equivalently edge) noise");
            }
            if (cfg.storage.mode != StorageModel::Mode::PerNode) {
                fail("storage.mode", "the from-bell scenario uses per-node storage");
            }
            break;
    }
    if (!params.count(cfg.sweep_param)) {
        fail("sweep.param", "cannot sweep '" + cfg.sweep_param + "' in the " + scenario_name(cfg.scenario) +
                                " scenario");
    }
    if (cfg.sweep_param == "m" && cfg.target.kind != Target::Kind::Copies) {
        fail("sweep.param", "sweeping m needs target.kind = n-to-m");
    }
    if (cfg.sweep_param == "threshold" && cfg.target.kind != Target::Kind::Threshold) {
        fail("sweep.param", "sweeping threshold needs target.kind = threshold");
    }
    if ((cfg.sweep_param == "pz" || cfg.sweep_param == "px") && cfg.channel != "biased" && cfg.channel != "z") {
        fail("sweep.param", "sweeping " + cfg.sweep_param + " needs a z or biased channel");
    }
    if (cfg.sweep_param == "q" || cfg.sweep_param == "p" || cfg.sweep_param == "pz" || cfg.sweep_param == "px") {
        if (cfg.sweep_min < 0 || cfg.sweep_max > 1) {
            fail("sweep.min", cfg.sweep_param + " must stay within [0,1]");
        }
    }
    if (cfg.sweep_param == "threshold" && (cfg.sweep_min <= 0 || cfg.sweep_max >= 1)) {
        fail("sweep.min", "threshold must stay within (0,1)");
    }
    if (is_integer_param(cfg.sweep_param) && cfg.sweep_min < (cfg.sweep_param == "levels" ? 0 : 1)) {
        fail("sweep.min", cfg.sweep_param + " must be positive");
    }
    if (cfg.channel == "biased" && cfg.px + cfg.py + cfg.pz > 1) {
        fail("noise.pz", "biased channel probabilities exceed 1");
    }

    std::set<std::string> seen;
    for (const std::string &label : cfg.schemes) {
        if (!seen.insert(label).second) {
            fail("experiment.schemes", "duplicate scheme '" + label + "'");
        }
        if (cfg.scenario != Scenario::Cluster) {
            if (!labels.count(label)) {
                fail("experiment.schemes", "unknown scheme '" + label + "' for the " + scenario_name(cfg.scenario) +
                                               " scenario");
            }
            continue;
        }
        ClusterLabel cl{};
        try {
            cl = parse_cluster_label(label, cfg.block_size);
        } catch (const std::invalid_argument &e) {
            fail("experiment.schemes", e.what());
        }
        if (cfg.dims.empty()) {
            fail("lattice.dims", "missing");
        }
        size_t rank = cfg.dims.size();
        if (cl.family != ArchFamily::BipartiteGrid) {
            if (rank != 2 && rank != 3) {
                fail("lattice.dims", arch_family_name(cl.family) + " blocks need a 2D or 3D lattice");
            }
            if (cfg.periodic) {
                for (uint32_t d : cfg.dims) {
                    if (d % 2 != 0 || d < 4) {
                        fail("lattice.dims", arch_family_name(cl.family) +
                                                 " blocks need even periodic dimensions of at least 4");
                    }
                }
            }
        }
        if (cl.block_size == 0) {
            fail("experiment.schemes", "block size must be at least 1");
        }
    }
    if (cfg.scenario == Scenario::FromBell) {
        if (cfg.dims.empty()) {
            fail("lattice.dims", "missing");
        }
        if (!cfg.periodic) {
            fail("lattice.periodic", "the from-bell scenario uses a periodic lattice");
        }
    }
}

namespace {

// Per-label state shared across sweep points.
struct Prepared {
    std::string label;
    std::shared_ptr<const ClusterModel> cluster;
};

SchemeResult evaluate(const ExperimentConfig &base, const Prepared &prep, double value) {
    ExperimentConfig cfg = base;
    const std::string &param = cfg.sweep_param;
    if (param == "q") cfg.q = value;
    else if (param == "p") cfg.p = value;
    else if (param == "capacity") cfg.storage.capacity = (uint64_t)value;
    else if (param == "levels") cfg.levels = (uint32_t)value;
    else if (param == "m") cfg.target.m = (uint64_t)value;
    else if (param == "threshold") cfg.target.threshold = value;
    else if (param == "pz") {
        cfg.pz = value;
        cfg.pz_given = true;
    } else if (param == "px") cfg.px = value;

    switch (cfg.scenario) {
        case Scenario::Ghz: {
            PauliChannel ch;
            if (cfg.channel == "ldn") {
                ch = PauliChannel::depolarizing(cfg.q);
            } else if (cfg.channel == "z") {
                ch = PauliChannel::z_only(cfg.pz_given ? cfg.pz : 1.0 - cfg.q);
            } else {
                ch = PauliChannel::biased(cfg.px, cfg.py, cfg.pz);
            }
            GhzNoise noise{ch, cfg.noisy_qubits};
            HashingOptions opts = cfg.hashing;
            SchemeKind s = SchemeKind::A;
            if (prep.label == "A-opt") {
                opts.optimize_split = true;
            } else {
                s = parse_scheme(prep.label);
            }
            return ghz_scheme_fidelity(s, cfg.storage.capacity, noise, cfg.p, cfg.target, opts);
        }
        case Scenario::Triangular:
            return triangular_repeater(cfg.levels, cfg.storage.capacity, cfg.q, cfg.p, parse_scheme(prep.label),
                                       cfg.hashing, cfg.tri_multipartite_cost, cfg.tri_bipartite_cost);
        case Scenario::Cluster:
            return cluster_architecture_run(*prep.cluster, cfg.storage, cfg.q, cfg.target, cfg.hashing);
        case Scenario::FromBell: {
            FromBellResult r = from_bell_run(cfg.dims, cfg.q, cfg.storage.capacity, cfg.target, cfg.hashing);
            return prep.label == "multipartite" ? r.multipartite : r.bipartite;
        }
    }
    throw std::logic_error("unhandled scenario");
}

}  // namespace

std::vector<CsvRow> run_experiment(const ExperimentConfig &cfg, unsigned threads) {
    validate_config(cfg);
    std::vector<std::string> labels = cfg.schemes;
    std::sort(labels.begin(), labels.end());

    // Expensive censuses are built once, before the workers start.
    std::vector<Prepared> prepared;
    for (const std::string &label : labels) {
        Prepared p{label, nullptr};
        if (cfg.scenario == Scenario::Cluster) {
            ClusterLabel cl = parse_cluster_label(label, cfg.block_size);
            Architecture arch;
            arch.family = cl.family;
            arch.block_size = cl.block_size;
            arch.dims = cfg.dims;
            arch.periodic = cfg.periodic;
            try {
                p.cluster = std::make_shared<const ClusterModel>(arch);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(0, "experiment.schemes", label + ": " + e.what());
            }
        }
        prepared.push_back(std::move(p));
    }

    std::vector<double> values = cfg.sweep_values();
    const size_t jobs = values.size() * prepared.size();
    std::vector<CsvRow> rows(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
            size_t si = j / prepared.size();
            const Prepared &p = prepared[j % prepared.size()];
            try {
                rows[j] = CsvRow{cfg.sweep_param, values[si], p.label, evaluate(cfg, p, values[si]), si};
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n_threads = (unsigned)std::min<size_t>(n_threads, std::max<size_t>(jobs, 1));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; t++) {
            pool.emplace_back(worker);
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

void write_csv(std::ostream &out, const std::vector<CsvRow> &rows) {
    out << "sweep_param,sweep_value,scheme,F,m,n_used,infeasible\n";
    char buf[64];
    for (const CsvRow &r : rows) {
        out << r.sweep_param << ',';
        std::snprintf(buf, sizeof(buf), "%.12g", r.sweep_value);
        out << buf << ',' << r.scheme << ',';
        std::snprintf(buf, sizeof(buf), "%.12g", r.result.F);
        out << buf << ',' << r.result.m << ',' << r.result.n_used << ',' << (r.result.infeasible ? 1 : 0) << '\n';
    }
}

std::string csv_string(const std::vector<CsvRow> &rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

unsigned threads_from_env() {
    const char *env = std::getenv("MULTINET_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char *end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v > 1024) {
        return 0;
    }
    return (unsigned)v;
}

}  // namespace multinet
