// Command-line front end: run, sweep, validate and selftest.

#include "bosonet/app/run.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace bosonet;
using namespace bosonet::app;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Decoherence of dissipative bosonic networks"};
    cli.set_version_flag("--version", std::string(kVersion));
    cli.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    bool serial = false;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> axes;

    auto* run_cmd = cli.add_subcommand("run", "Evaluate a configuration and write the requested outputs");
    run_cmd->add_option("config", config_path, "JSON configuration")->required();

    auto* sweep_cmd = cli.add_subcommand("sweep", "Evaluate a configuration over a parameter grid");
    sweep_cmd->add_option("config", config_path, "JSON configuration")->required();
    sweep_cmd->add_option("--axis", axes, "path=start:stop:steps (at most two)");

    auto* validate_cmd = cli.add_subcommand("validate", "Check a configuration and print its normalized form");
    validate_cmd->add_option("config", config_path, "JSON configuration")->required();

    auto* selftest_cmd = cli.add_subcommand("selftest", "Randomized internal consistency checks");

    for (auto* sub : {run_cmd, sweep_cmd, validate_cmd, selftest_cmd}) {
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_flag("--serial", serial, "Disable worker threads");
        sub->add_option("--seed", seed, "Seed for randomized checks (run, sweep and validate are deterministic)");
    }

    CLI11_PARSE(cli, argc, argv);

    if (*run_cmd) {
        return guarded([&] {
            const json raw = load_json(config_path);
            const RunConfig cfg = parse_config(raw);
            const RunResult result = run(cfg, out_dir);
            for (const auto& f : result.files) std::cout << f << "\n";
            return kExitOk;
        });
    }
    if (*sweep_cmd) {
        return guarded([&] {
            const json raw = load_json(config_path);
            std::vector<SweepAxis> parsed;
            for (const auto& a : axes) parsed.push_back(parse_axis(a));
            if (parsed.empty()) {
                const RunResult result = run(parse_config(raw), out_dir);
                for (const auto& f : result.files) std::cout << f << "\n";
                return kExitOk;
            }
            parse_config(raw);
            fs::create_directories(out_dir);
            const SweepResult result = sweep(raw, parsed, serial, out_dir);
            const fs::path path = fs::path(out_dir) / "sweep.csv";
            write_atomic(path, result.csv);
            std::cout << path.string() << "\n";
            int failed = 0;
            for (std::size_t k = 0; k < result.points.size(); ++k) {
                if (!result.points[k].error.empty()) {
                    std::cerr << "point " << k << ": " << result.points[k].error << "\n";
                    ++failed;
                }
            }
            return failed == 0 ? kExitOk : kExitFailure;
        });
    }
    if (*validate_cmd) {
        return guarded([&] {
            const json raw = load_json(config_path);
            const RunConfig cfg = parse_config(raw);
            std::cout << emit_config(cfg).dump(2) << "\n";
            std::cerr << "ok " << hash_hex(config_hash(cfg)) << "\n";
            return kExitOk;
        });
    }
    return guarded([&] {
        const SelftestResult result = selftest(seed.value_or(20240601ULL));
        for (const auto& [name, ok] : result.checks) std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        return result.ok() ? kExitOk : kExitFailure;
    });
}
