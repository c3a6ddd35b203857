#pragma once

#include "labt/engine.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace labt::cli {

enum class Command { binarize, compare, sweep };
enum class MethodChoice { otsu, adcdf, meank, niblack };

struct CliConfig {
    Command command = Command::binarize;
    std::filesystem::path input;
    std::filesystem::path output;  // image for binarize, directory otherwise
    MethodChoice method = MethodChoice::otsu;
    double k = -0.2;
    double rho = 0.5;
    int window = 15;
    std::optional<BlockSize> block; // nullopt: auto
    ContinuityMode mode = ContinuityMode::strict;
    bool multiscan = false;
    bool seed_global = true;
    std::optional<std::filesystem::path> csv;
    std::vector<int> sizes{8, 16, 32, 64, 128};
    bool timing = true;             // false writes 0 elapsed time for reproducible reports
};

/// "auto" -> nullopt, "WxH" or "N" -> block size. Throws std::invalid_argument.
std::optional<BlockSize> parse_block(std::string_view text);

/// LABT configuration for the block-based methods. Throws for niblack.
LabtConfig labt_config(const CliConfig& cfg);

int cmd_binarize(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace labt::cli
