#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cddo/report.hpp"
#include "cddo/test_functions.hpp"
#include "cddo/types.hpp"

namespace cddo::cli {

enum class Mode { Run, Experiment, Rank };

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kIoError = 3,
    kInputError = 4,
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    Mode mode = Mode::Run;
    std::vector<suite::FunctionId> functions;
    std::size_t dim = suite::kDefaultScalableDim;
    OptimizerConfig optimizer;
    std::size_t trials = 30;
    std::size_t threads = 0;
    std::optional<std::string> output;
    report::Format format = report::Format::Csv;
    bool convergence_log = false;
    // rank mode
    std::optional<std::string> fixture;
    std::optional<std::string> results;
    std::string label = "CDDO";
    bool help = false;
    std::string help_text;
};

/// Parses argv (argv[0] is the program name). Precedence: flags, then the
/// --config file, then built-in defaults. Throws UsageError.
CliConfig parse_args(int argc, const char* const* argv);
CliConfig parse_args(const std::vector<std::string>& args);

/// Path of the convergence log belonging to `output`: "<stem>_convergence.<ext>"
/// for a single run, "<stem>_<Fn>_convergence.<ext>" per experiment function.
std::string convergence_path(const std::string& output, report::Format format,
                             std::optional<suite::FunctionId> function = std::nullopt);

/// Executes a parsed configuration. Returns the process exit code; diagnostics
/// go to `err`, results without an --output path go to `out`.
int execute(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cddo::cli
