// Command-line front end: one experiment per invocation.
//
//   bplab_cli gradient-stats --seed 7 --family=RPA --n_max=8
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical error, 1 anything else.

#include "bplab/errors.hpp"
#include "bplab/experiments.hpp"
#include "bplab/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

int fail(int code, std::string_view kind, std::string_view message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
}

// "--key=value" with value read as JSON when it parses, else as a string.
json parse_overrides(const std::vector<std::string>& extras) {
    json out = json::object();
    for (const auto& arg : extras) {
        if (arg.rfind("--", 0) != 0 || arg.find('=') == std::string::npos) {
            throw bplab::ConfigError("unexpected argument '" + arg + "' (overrides take the form --key=value)");
        }
        const auto eq = arg.find('=');
        std::string key = arg.substr(2, eq - 2);
        for (char& c : key) {
            if (c == '-') c = '_';
        }
        const std::string text = arg.substr(eq + 1);
        json value = json::parse(text, nullptr, false);
        out[key] = value.is_discarded() ? json(text) : value;
    }
    return out;
}

json read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw bplab::ConfigError("cannot read config file " + path);
    json j = json::parse(f, nullptr, false);
    if (j.is_discarded()) throw bplab::ConfigError("config file " + path + " is not valid JSON");
    if (!j.is_object()) throw bplab::ConfigError("config file must hold a JSON object");
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Barren-plateau experiments: gradient statistics, landscape taxonomy, structure search"};
    app.require_subcommand(1, 1);

    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::size_t workers = bplab::default_workers();
    std::string output_dir = ".";

    std::vector<CLI::App*> subs;
    for (const auto& name : bplab::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->allow_extras();
        sub->add_option("--config", config_path, "JSON file of parameters");
        sub->add_option("--seed", seed, "master seed (overrides the config file)");
        sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--output-dir", output_dir, "directory for CSV/JSON artifacts");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "config", e.what());
    }

    CLI::App* chosen = nullptr;
    for (CLI::App* s : subs) {
        if (s->parsed()) chosen = s;
    }
    const std::string experiment = chosen->get_name();

    try {
        json file = config_path ? read_config(*config_path) : json::object();
        if (file.contains("experiment")) {
            if (file["experiment"] != experiment) {
                throw bplab::ConfigError("config file is for '" + file["experiment"].dump() + "', not " + experiment);
            }
            file.erase("experiment");
        }
        json overrides = parse_overrides(chosen->remaining());
        if (seed) overrides["seed"] = *seed;

        const json resolved = bplab::resolve_parameters(experiment, file, overrides);
        bplab::RunOptions opts;
        opts.output_dir = output_dir;
        opts.workers = workers;
        const bplab::RunResult r = bplab::run_experiment(experiment, resolved, opts);

        for (const auto& f : r.files) std::cout << f.string() << '\n';
        return 0;
    } catch (const bplab::ConfigError& e) {
        return fail(2, "config", e.what());
    } catch (const bplab::NumericalError& e) {
        return fail(3, "numerical", e.what());
    } catch (const std::exception& e) {
        return fail(1, "runtime", e.what());
    }
}
