#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "steklov/numerics.hpp"

namespace steklov::cli {

enum class Command { curves, envelope, intersections, asymptotics, constants, halfplane, degennes, verify };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;

/// Parsed command line. Ranges left unset take per-command defaults.
struct RunConfig {
  Command command = Command::verify;
  std::optional<int> n_min, n_max;
  std::optional<double> b_min, b_max;
  std::optional<int> steps;
  std::string out_path;  // empty or "-" writes to stdout
  std::optional<Format> format;
  std::optional<double> rel_tol;
  std::string only;
};

/// Fills the per-command defaults and throws std::invalid_argument if the
/// result is inconsistent.
RunConfig resolve(RunConfig cfg);

/// Runs a resolved config. Data goes to cfg.out_path (or `out`), messages to
/// `err`. Returns one of the exit codes above.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and executes.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace steklov::cli
