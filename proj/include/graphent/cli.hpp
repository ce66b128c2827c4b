#pragma once

#include "graphent/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace graphent::cli {

enum class Command { conductivity, dispersion, fieldmap, entangle };
Command parse_command(const std::string& text);
std::string to_string(Command cmd);

/// Command-line flags that take precedence over the config document.
struct Overrides {
    std::optional<double> vd_over_vf;
    std::optional<double> frequency_thz;
    std::optional<std::string> doppler_arg;
};

void apply(config::RunConfig& cfg, const Overrides& o);

struct RunReport {
    std::vector<std::string> outputs;  // file names relative to the output directory
    nlohmann::json run_meta;
};

/// Runs one subcommand and writes its files (including run_meta.json) to `out`.
RunReport execute(Command cmd, const config::RunConfig& cfg, const std::filesystem::path& out, int threads);

/// Full command-line entry point. Returns the process exit code; failures are
/// reported on `err` as a one-line JSON object.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit codes: 0 success, 1 numerical failure, 2 invalid input or usage.
int exit_code_for(const std::string& kind);

} // namespace graphent::cli
