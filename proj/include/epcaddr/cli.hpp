#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epcaddr/addressing.hpp"

namespace epcaddr::cli {

enum class OutputFormat { text, structured };

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kParseError = 3,
    kResolveError = 4,
    kDeriveError = 5,
};

/// Defaults read from the file named by $EPCADDR_CONFIG; flags override them.
struct CliConfig {
    std::optional<std::filesystem::path> registry_path;
    AddressingMethodId default_method = AddressingMethodId::hybrid_ons;
    OutputFormat output_format = OutputFormat::text;
};

inline constexpr const char* kConfigEnvVar = "EPCADDR_CONFIG";

/// Reads a JSON object with optional keys registry_path, default_method, output_format.
CliConfig load_config(const std::filesystem::path& file);

/// Runs one command line (without argv[0]). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::filesystem::path>& config_file = std::nullopt);

} // namespace epcaddr::cli
