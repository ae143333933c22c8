// Command implementations behind the executable: pure functions from a run
// configuration to report bytes and an exit code, so tests can drive them
// without spawning processes.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ap2::cli {

enum class Mode { Exact, Float };

inline const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

/// One deterministic run: equal configurations produce byte-identical
/// reports.
struct RunConfig {
    std::uint64_t seed = 42;
    Mode mode = Mode::Exact;
    std::size_t samples = 100;
    std::size_t grid_rows = 5;
    std::size_t grid_cols = 5;
    double tol_rank = 1e-8;
    double tol_membership = 1e-10;
    std::string out_path;  // empty: report goes to the stream
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDivisor = 2;        // inversion of a zero divisor
inline constexpr int kExitVerification = 3;   // membership/classification failure
inline constexpr int kExitDegenerate = 4;     // too many degenerate samples
inline constexpr int kExitUsage = 64;         // unparseable input

int cmd_algebra(const std::string& kind, const std::string& op,
                const std::vector<std::string>& operands, Mode mode, std::ostream& out,
                std::ostream& err);

int cmd_congruence(const std::string& kind, const RunConfig& config, std::ostream& out,
                   std::ostream& err);

int cmd_curve(const std::string& curve_path, const RunConfig& config, std::ostream& out,
              std::ostream& err);

int cmd_join(const std::string& report_path, const RunConfig& config, std::ostream& out,
             std::ostream& err);

}  // namespace ap2::cli
