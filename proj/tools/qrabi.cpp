#include "runner/config.hpp"
#include "runner/experiments.hpp"
#include "runner/output.hpp"

#include <qrabi/errors.hpp>
#include <qrabi/version.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace qrabi::cli;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kNumerical = 3 };

struct RunArgs {
    std::string config;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    bool strict = false;
};

int run(const RunArgs& a) {
    const Config cfg = Config::load(a.config, a.overrides);
    spdlog::info("running {} (d={})", to_string(cfg.experiment()), cfg.get_int("model.d"));

    const auto t0 = std::chrono::steady_clock::now();
    RunResult res = run_experiment(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (a.strict && !res.truncation.adequate()) {
        std::cerr << "error: truncation inadequate at " << res.truncation.inadequate_points << " of "
                  << res.truncation.points << " points (n_max " << res.truncation.n_max_used << " < required "
                  << res.truncation.n_max_required << ")\n";
        return kNumerical;
    }

    fs::create_directories(a.out_dir);
    const std::string stem = cfg.get_string("output");
    nlohmann::json files = nlohmann::json::array();
    for (const auto& t : res.tables) {
        const fs::path path = fs::path(a.out_dir) / (t.name.empty() ? stem + ".csv" : stem + "_" + t.name + ".csv");
        write_atomic(path, format_csv(t));
        files.push_back(path.filename().string());
    }

    nlohmann::json meta;
    meta["experiment"] = to_string(cfg.experiment());
    meta["config"] = cfg.sections();
    meta["canonical_config"] = cfg.serialize();
    meta["version"] = qrabi::kVersion;
    meta["wall_time_s"] = wall;
    meta["truncation"] = res.truncation.to_json();
    meta["summary"] = res.summary;
    meta["files"] = files;
    write_atomic(fs::path(a.out_dir) / (stem + ".json"), meta.dump(2) + "\n");
    std::cout << "wrote " << files.size() << " csv file(s) and " << stem << ".json to " << a.out_dir << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("qrabi"));
    spdlog::set_pattern("[%l] %v");

    CLI::App app{"qudit-qubit Rabi model experiments"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "log progress");

    RunArgs args;
    auto* run_cmd = app.add_subcommand("run", "run the experiment described by a config file");
    run_cmd->add_option("config", args.config, "INI config file")->required();
    run_cmd->add_option("--set", args.overrides, "override, section.key=value")->take_all();
    run_cmd->add_option("--out", args.out_dir, "output directory");
    run_cmd->add_flag("--strict-truncation", args.strict, "fail (exit 3) on inadequate Fock truncation");

    auto* list_cmd = app.add_subcommand("list", "list available experiments");
    auto* dump_cmd = app.add_subcommand("config", "print the resolved canonical config");
    std::string dump_path;
    std::vector<std::string> dump_overrides;
    dump_cmd->add_option("config", dump_path, "INI config file")->required();
    dump_cmd->add_option("--set", dump_overrides, "override, section.key=value")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }
    spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::warn);

    try {
        if (list_cmd->parsed()) {
            std::cout << list_experiments();
            return kOk;
        }
        if (dump_cmd->parsed()) {
            std::cout << Config::load(dump_path, dump_overrides).serialize();
            return kOk;
        }
        return run(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const qrabi::InvalidParams& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const qrabi::UnsupportedRegime& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const qrabi::ContractViolation& e) {
        std::cerr << "numerical contract violation: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
}
