#pragma once

#include "kcubic/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kcubic::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kIoError = 3 };

enum class OutputFormat { Default, Csv, Json, Svg, Text };

/// Parsed command line. Numbers stay as text until a command parses them
/// exactly, so decimal input never passes through binary floats.
struct RunConfig {
    std::string subcommand;

    std::string q0 = "-1,0";
    std::string q1 = "0,1";
    std::string q2 = "1,0";
    std::string a = "1";
    std::string apex; ///< "b,h": shorthand for q0=(-1,0), q1=(b,h), q2=(1,0)
    int samples = 101;

    std::string output;      ///< empty: standard output
    std::string json_output; ///< audit: optional JSON report path
    OutputFormat format = OutputFormat::Default;

    // sweep
    long count = 10000;
    std::optional<std::uint64_t> seed; ///< sweep default 7, audit default 42
    std::string a_min = "2/3"; ///< exclusive
    std::string a_max = "1";   ///< inclusive
    int oracle_samples = 100000;
    int threads = 1;

    // plot
    int width = 960;
    int height = 400;

    // audit grid
    std::string grid_a_min = "0.67";
    std::string grid_a_max = "1";
    int grid_a_count = 33;
    std::string grid_b_max = "10";
    std::string grid_b_step = "0.25";
    std::vector<std::string> grid_h2 = {"0.01", "0.1", "1", "4", "25", "100"};
    int identity_samples = 128;
};

/// "x,y" with each coordinate a decimal or p/q. Throws ParseError.
Point2 parse_point(const std::string& text);

/// Parses the blend parameter and enforces 0 < a <= 1 (ParseError otherwise).
Scalar parse_blend(const std::string& text);

/// Shortest round-trip decimal form; -0 is printed as 0.
std::string format_number(double v);

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_curvature(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_extrema(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_plot(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.subcommand, opening cfg.output when set. Maps parse
/// and domain errors to kUsage and unwritable outputs to kIoError.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace kcubic::cli
