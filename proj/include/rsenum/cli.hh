#ifndef RSENUM_CLI_HH
#define RSENUM_CLI_HH 1

// The `rsenum` command line: enumerate, filter-cg, verify, export-dot.
// Each command is a plain function writing to the given streams so tests
// can drive it without a process.

#include <rsenum/io.hh>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rsenum {

enum ExitCode : int
{
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_theory_violation = 3,
};

struct RunConfig
{
    std::string command;
    int n = 1;
    int m = 1;
    std::string input;
    std::optional<std::string> output;
    std::string format = "jsonl";   ///< jsonl or table, for filter-cg
    int jobs = 1;
};

struct VerifyCheck
{
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport
{
    int order = 0;
    bool matrix = false;
    std::vector<VerifyCheck> checks;

    [[nodiscard]] auto passed() const -> bool;
};

/// Checks the central groupoid axiom, A^2 = J, unique 2-paths whose
/// midpoints give the table back, and the idempotent count.
[[nodiscard]] auto verify_grid(const ParsedGrid & grid) -> VerifyReport;

auto cmd_enumerate(const RunConfig & config, std::ostream & out, std::ostream & err) -> int;
auto cmd_filter_cg(const RunConfig & config, std::ostream & out, std::ostream & err) -> int;
auto cmd_verify(const RunConfig & config, std::ostream & out, std::ostream & err) -> int;
auto cmd_export_dot(const RunConfig & config, std::ostream & out, std::ostream & err) -> int;

/// Parses arguments, configures logging from RSENUM_LOG and dispatches.
auto run_cli(int argc, char ** argv) -> int;

}

#endif
