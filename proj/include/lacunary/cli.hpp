#pragma once

// Batch front end: every diagnostic as a deterministic CSV / JSON / text table.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lacunary/numerics.hpp"
#include "lacunary/polyeval.hpp"

namespace lacunary::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command { kEval, kSolve, kApprox, kCompare, kQuadcheck, kMonotone };
enum class Format { kCsv, kJson, kTable };

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitTolerance = 4,
};

// Bad flags or flag combinations; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::kCompare;
  ExactRational y;
  std::vector<unsigned long> n_values;  // ascending, no duplicates
  Bits bits = kDefaultBits;
  Format format = Format::kCsv;
  std::optional<std::string> out_path;
  EvalMode mode = EvalMode::kLog;  // eval only
  unsigned long max_n = 0;         // monotone only
  unsigned long max_r = 0;
  std::string tol_text = "1e-20";  // quadcheck only
};

// argv without the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

// Geometric grid a, a f, a f^2, ... <= b and linear grid a, a + s, ... <= b.
std::vector<unsigned long> geometric_grid(unsigned long from, unsigned long to, unsigned long factor);
std::vector<unsigned long> linear_grid(unsigned long from, unsigned long to, unsigned long step);

// Positive integer, also in forms like "1e6". Throws UsageError.
unsigned long parse_count(std::string_view text);

// floor(bits log10 2) - 2 significant digits; fixed notation when the rounded
// magnitude lies in [1e-4, 1e6), scientific otherwise.
std::string format_real(const Real& x, Bits bits);

struct ComparisonRow {
  unsigned long n = 0;
  ExactRational y;
  Real log_f;
  Real w;
  Real r;
  Real w_minus_r;
  Real log_bdm;
  Real log_thm_prefactor;
  Real theta_factor;
  Real rho;
  Real ratio_bdm;
  Real ratio_thm;
};

inline const std::vector<std::string>& comparison_header() {
  static const std::vector<std::string> header{"n",       "y",     "log_f",     "w",         "r",         "w_minus_r",
                                               "log_bdm", "log_thm_prefactor", "theta_factor", "rho", "ratio_bdm",
                                               "ratio_thm"};
  return header;
}

std::vector<ComparisonRow> cmd_compare(const RunConfig& config);

// Output table: header plus rows of already formatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::optional<bool> verified;  // emitted by monotone and quadcheck
};

struct CommandOutput {
  Table table;
  int exit_code = kExitOk;
};

CommandOutput run_command(const RunConfig& config);

void write_table(const Table& table, const RunConfig& config, std::ostream& out);

// Full program: parse, run, write. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lacunary::cli
