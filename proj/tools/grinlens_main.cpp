// grinlens: design, sizing, measurement analysis and ray-trace checks for
// printed gyroid-lattice Luneburg lenses.
//
//   grinlens design  --config lens.cfg --stl lens.stl
//   grinlens size    --l-uc-mm 5,7.5,10,12.5
//   grinlens analyze --diameter-mm 100 lens_10mm.csv lens_5mm.csv --plot gain.svg
//   grinlens trace   --trace-profile both

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grinlens/commands.hpp"
#include "grinlens/config.hpp"
#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"

namespace {

struct SubcommandArgs {
    std::string config_path;
    std::map<std::string, std::string> flags;  // config key -> value
    std::vector<std::string> sets;             // key=value
    std::vector<std::string> inputs;           // analyze positionals
};

std::string flag_name(std::string key) {
    for (char& ch : key)
        if (ch == '_') ch = '-';
    return "--" + key;
}

CLI::App* add_subcommand(CLI::App& app, const char* name, const char* help, SubcommandArgs& args) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", args.config_path, "key = value configuration file");
    sub->add_option("--set", args.sets, "override any setting, key=value (repeatable)");
    for (const auto& key : grin::config_keys())
        sub->add_option(flag_name(key), args.flags[key], "override '" + key + "'");
    return sub;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gyroid-lattice Luneburg lens design and verification"};
    app.set_version_flag("--version", std::string(grin::kToolName) + " " + grin::kToolVersion);
    app.require_subcommand(1);

    std::map<grin::Command, SubcommandArgs> args;
    const std::map<grin::Command, CLI::App*> subs = {
        {grin::Command::Design, add_subcommand(app, "design", "rasterize the lens lattice and optionally mesh it to STL", args[grin::Command::Design])},
        {grin::Command::Size, add_subcommand(app, "size", "unit-cell frequency limits as a lens performance table", args[grin::Command::Size])},
        {grin::Command::Analyze, add_subcommand(app, "analyze", "knee frequency and aperture efficiency of gain traces", args[grin::Command::Analyze])},
        {grin::Command::Trace, add_subcommand(app, "trace", "GRIN ray-trace focusing check", args[grin::Command::Trace])},
    };
    subs.at(grin::Command::Analyze)->add_option("inputs", args[grin::Command::Analyze].inputs, "gain CSV files (frequency_ghz,gain_dbi)");

    CLI11_PARSE(app, argc, argv);

    for (const auto& [command, sub] : subs) {
        if (!sub->parsed()) continue;
        const SubcommandArgs& a = args[command];
        grin::RunConfig config;
        std::vector<std::string> problems;
        try {
            if (!a.config_path.empty()) grin::apply_settings(config, grin::read_config_file(a.config_path), problems);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return grin::kExitInvalidConfig;
        }
        std::vector<grin::Setting> overrides;
        for (const auto& [key, value] : a.flags)
            if (sub->count(flag_name(key)) > 0) overrides.emplace_back(key, value);
        for (const auto& kv : a.sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                problems.push_back("--set: expected key=value, got '" + kv + "'");
                continue;
            }
            overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
        grin::apply_settings(config, overrides, problems);
        config.gain.insert(config.gain.end(), a.inputs.begin(), a.inputs.end());
        if (!problems.empty()) {
            for (auto& p : grin::validate(config, command)) problems.push_back(std::move(p));
            std::cerr << "invalid configuration (" << problems.size() << " problem" << (problems.size() == 1 ? "" : "s")
                      << "):\n";
            for (const auto& p : problems) std::cerr << "  " << p << '\n';
            return grin::kExitInvalidConfig;
        }
        return grin::run_command(command, config, std::cout, std::cerr);
    }
    return grin::kExitFailure;
}
