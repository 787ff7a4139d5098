#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "steklov/disk.hpp"
#include "steklov/intersect.hpp"
#include "steklov/io.hpp"
#include "steklov/models.hpp"
#include "steklov/specfun.hpp"
#include "steklov/verify.hpp"

namespace steklov::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
};

constexpr std::array kCommands = {
    CommandInfo{Command::curves, "curves", "Branch eigenvalues lambda_n(b) and lambda_n(-b)"},
    CommandInfo{Command::envelope, "envelope", "Ground state lambda^DN(b) with its active mode"},
    CommandInfo{Command::intersections, "intersections", "Crossing points z_n and residuals"},
    CommandInfo{Command::asymptotics, "asymptotics", "Least-squares expansion of z_n - n"},
    CommandInfo{Command::constants, "constants", "alpha, xi0, Theta0 and derived constants"},
    CommandInfo{Command::halfplane, "halfplane", "Half-plane multiplier f1 and D_{1/2} on a grid"},
    CommandInfo{Command::degennes, "degennes", "De Gennes function f(xi) on a grid"},
    CommandInfo{Command::verify, "verify", "Run the invariant suite"},
};

const char* command_name(Command c) {
  for (const auto& info : kCommands) {
    if (info.command == c) return info.name;
  }
  return "?";
}

const char* format_name(Format f) { return f == Format::csv ? "csv" : "json"; }

Tolerances tolerances(const RunConfig& cfg) {
  Tolerances tol;
  if (cfg.rel_tol) tol.rel_tol = *cfg.rel_tol;
  return tol;
}

json table_json(const RunConfig& cfg, json rows) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command_name(cfg.command);
  doc["rows"] = std::move(rows);
  return doc;
}

// ---- commands -------------------------------------------------------------

void emit_curves(const RunConfig& cfg, std::ostream& out) {
  const auto grid = uniform_grid(*cfg.b_min, *cfg.b_max, *cfg.steps);
  const auto rows = curves(*cfg.n_min, *cfg.n_max, grid);
  auto branch = [](Branch b) { return b == Branch::pos ? "pos" : "neg"; };
  if (cfg.format == Format::csv) {
    io::CsvWriter csv(out, {"n", "b", "lambda", "branch"});
    for (const auto& r : rows) {
      csv.field(r.point.n).field(r.point.b).field(r.point.lambda).field(branch(r.branch)).end_row();
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"n", r.point.n}, {"b", r.point.b}, {"lambda", r.point.lambda},
                   {"branch", branch(r.branch)}});
  }
  out << table_json(cfg, std::move(arr)).dump(1) << '\n';
}

void emit_envelope(const RunConfig& cfg, std::ostream& out) {
  const auto grid = uniform_grid(*cfg.b_min, *cfg.b_max, *cfg.steps);
  const auto points = envelope(grid, tolerances(cfg));
  const double a = alpha();
  auto asymptote = [a](double b) { return a * std::sqrt(b) - (a * a + 2.0) / 6.0; };
  if (cfg.format == Format::csv) {
    io::CsvWriter csv(out, {"b", "active_mode", "lambda_dn", "asymptote"});
    for (const auto& p : points) {
      csv.field(p.b).field(p.active_mode).field(p.lambda_dn).field(asymptote(p.b)).end_row();
    }
    return;
  }
  json arr = json::array();
  for (const auto& p : points) {
    arr.push_back({{"b", p.b}, {"active_mode", p.active_mode}, {"lambda_dn", p.lambda_dn},
                   {"asymptote", asymptote(p.b)}});
  }
  out << table_json(cfg, std::move(arr)).dump(1) << '\n';
}

void emit_intersections(const RunConfig& cfg, std::ostream& out) {
  const auto recs = intersections(*cfg.n_min, *cfg.n_max, tolerances(cfg));
  if (cfg.format == Format::csv) {
    io::CsvWriter csv(out, {"n", "z_n", "lambda_at_zn", "beta_n", "residual_M", "residual_F"});
    for (const auto& r : recs) {
      csv.field(r.n).field(r.z_n).field(r.lambda_at_zn);
      if (r.beta_n) {
        csv.field(*r.beta_n);
      } else {
        csv.field(std::string_view{});
      }
      csv.field(r.residual_M).field(r.residual_F).end_row();
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : recs) {
    arr.push_back({{"n", r.n},
                   {"z_n", r.z_n},
                   {"lambda_at_zn", r.lambda_at_zn},
                   {"beta_n", r.beta_n ? json(*r.beta_n) : json(nullptr)},
                   {"residual_M", r.residual_M},
                   {"residual_char", r.residual_char},
                   {"residual_F", r.residual_F}});
  }
  out << table_json(cfg, std::move(arr)).dump(1) << '\n';
}

void emit_asymptotics(const RunConfig& cfg, std::ostream& out) {
  const auto recs = intersections(*cfg.n_min, *cfg.n_max, tolerances(cfg));
  const AsymptoticFit fit = fit_asymptotics(recs, 4);
  const double a = alpha();
  const std::array<const char*, 4> basis = {"sqrt_n", "one", "inv_sqrt_n", "inv_n"};
  const std::array<double, 2> expected = {a, (a * a + 2.0) / 3.0};
  if (cfg.format == Format::csv) {
    io::CsvWriter csv(out, {"term", "coefficient", "expected"});
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
      csv.field(basis[j]).field(fit.coefficients[j]);
      if (j < expected.size()) {
        csv.field(expected[j]);
      } else {
        csv.field(std::string_view{});
      }
      csv.end_row();
    }
    return;
  }
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "asymptotics";
  doc["n_range"] = {fit.n_range.first, fit.n_range.second};
  doc["basis"] = basis;
  doc["coefficients"] = fit.coefficients;
  doc["expected"] = {{"sqrt_n", expected[0]}, {"one", expected[1]}};
  doc["max_residual"] = fit.max_residual;
  const int n_gap = fit.n_range.second;
  doc["gap"] = {{"n", n_gap},
                {"value", gap_zn(n_gap, tolerances(cfg))},
                {"expected", 1.0 + 0.5 * a / std::sqrt(static_cast<double>(n_gap))}};
  out << doc.dump(1) << '\n';
}

json checks_json(const std::vector<verify::CheckResult>& results) {
  json checks = json::object();
  for (const auto& r : results) {
    json entry = {{"module", r.module},
                  {"value", std::isfinite(r.measured) ? json(r.measured) : json(nullptr)},
                  {"limit", r.limit},
                  {"passed", r.passed}};
    if (!r.error.empty()) entry["error"] = r.error;
    checks[r.name] = std::move(entry);
  }
  return checks;
}

void report_failures(const std::vector<verify::CheckResult>& results, std::ostream& err) {
  for (const auto& r : results) {
    if (r.passed) continue;
    err << "FAILED " << r.module << '.' << r.name;
    if (!r.error.empty()) {
      err << ": " << r.error;
    } else {
      err << ": " << io::format_number(r.measured) << " > " << io::format_number(r.limit);
    }
    err << '\n';
  }
}

int emit_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(cfg);
  const ModelConstants c = compute_model_constants(tol);
  const auto results = verify::constants_checks(c, tol);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["alpha"] = c.alpha;
  doc["xi0"] = c.xi0;
  doc["theta0"] = c.theta0;
  doc["delta_alpha"] = c.delta_alpha;
  doc["u0_sq_at_0"] = c.u0_sq_at_0;
  doc["bound_663"] = c.bound_663;
  doc["resolved_tol"] = c.resolved_tol;
  doc["checks"] = checks_json(results);
  out << doc.dump(1) << '\n';
  report_failures(results, err);
  return verify::all_passed(results) ? kExitOk : kExitFailed;
}

template <class F>
void emit_sweep(const RunConfig& cfg, std::ostream& out,
                std::initializer_list<std::string_view> columns, F&& row_values) {
  const auto grid = uniform_grid(*cfg.b_min, *cfg.b_max, *cfg.steps);
  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = row_values(grid[i]);
  if (cfg.format == Format::csv) {
    io::CsvWriter csv(out, columns);
    for (const auto& row : rows) {
      for (double v : row) csv.field(v);
      csv.end_row();
    }
    return;
  }
  json arr = json::array();
  for (const auto& row : rows) {
    json obj;
    auto name = columns.begin();
    for (double v : row) obj[std::string(*name++)] = v;
    arr.push_back(std::move(obj));
  }
  out << table_json(cfg, std::move(arr)).dump(1) << '\n';
}

int emit_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto results = verify::run_invariants(cfg.only, tolerances(cfg));
  if (cfg.format == Format::json) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["checks"] = checks_json(results);
    doc["passed"] = verify::all_passed(results);
    out << doc.dump(1) << '\n';
  } else if (cfg.format == Format::csv) {
    io::CsvWriter csv(out, {"module", "check", "measured", "limit", "status"});
    for (const auto& r : results) {
      csv.field(r.module).field(r.name).field(r.measured).field(r.limit);
      csv.field(r.passed ? "pass" : "fail").end_row();
    }
  } else {
    for (const auto& r : results) {
      out << (r.passed ? "pass  " : "FAIL  ") << r.module << '.' << r.name << "  "
          << io::format_number(r.measured) << " <= " << io::format_number(r.limit) << '\n';
    }
  }
  report_failures(results, err);
  return verify::all_passed(results) ? kExitOk : kExitFailed;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(cfg);
  switch (cfg.command) {
    case Command::curves:
      emit_curves(cfg, out);
      return kExitOk;
    case Command::envelope:
      emit_envelope(cfg, out);
      return kExitOk;
    case Command::intersections:
      emit_intersections(cfg, out);
      return kExitOk;
    case Command::asymptotics:
      emit_asymptotics(cfg, out);
      return kExitOk;
    case Command::constants:
      return emit_constants(cfg, out, err);
    case Command::halfplane:
      emit_sweep(cfg, out, {"x", "f1", "d_half"}, [&](double x) {
        return std::vector<double>{x, halfplane_multiplier(x, tol), cylinder_d(0.5, x, tol).value};
      });
      return kExitOk;
    case Command::degennes:
      emit_sweep(cfg, out, {"xi", "f"},
                 [&](double xi) { return std::vector<double>{xi, degennes_f(xi, tol)}; });
      return kExitOk;
    case Command::verify:
      return emit_verify(cfg, out, err);
  }
  return kExitConfig;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

json config_json(const RunConfig& cfg) {
  json c;
  c["command"] = command_name(cfg.command);
  if (cfg.n_min) c["n_min"] = *cfg.n_min;
  if (cfg.n_max) c["n_max"] = *cfg.n_max;
  if (cfg.b_min) c["b_min"] = *cfg.b_min;
  if (cfg.b_max) c["b_max"] = *cfg.b_max;
  if (cfg.steps) c["steps"] = *cfg.steps;
  if (cfg.format) c["format"] = format_name(*cfg.format);
  c["rel_tol"] = tolerances(cfg).rel_tol;
  if (!cfg.only.empty()) c["only"] = cfg.only;
  return c;
}

void write_sidecar(const RunConfig& cfg, int exit_code) {
  json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["generator"] = "steklov " STEKLOV_VERSION;
  meta["generated_utc"] = utc_now();
  meta["config"] = config_json(cfg);
  meta["exit_code"] = exit_code;
#ifdef _OPENMP
  meta["omp_max_threads"] = omp_get_max_threads();
#endif
  io::write_file(cfg.out_path + ".meta.json", meta.dump(1) + "\n");
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

RunConfig resolve(RunConfig cfg) {
  auto fill = [](auto& field, auto value) {
    if (!field) field = value;
  };
  switch (cfg.command) {
    case Command::curves:
      fill(cfg.n_min, 0), fill(cfg.n_max, 5), fill(cfg.b_min, 0.0), fill(cfg.b_max, 10.0);
      fill(cfg.steps, 101);
      break;
    case Command::envelope:
      fill(cfg.b_min, 0.0), fill(cfg.b_max, 100.0), fill(cfg.steps, 1001);
      break;
    case Command::intersections:
      fill(cfg.n_min, 0), fill(cfg.n_max, 200);
      break;
    case Command::asymptotics:
      fill(cfg.n_min, 1000), fill(cfg.n_max, 10000);
      break;
    case Command::constants:
      fill(cfg.format, Format::json);
      require(*cfg.format == Format::json, "constants: only --format json is supported");
      break;
    case Command::halfplane:
      fill(cfg.b_min, -3.0), fill(cfg.b_max, 3.0), fill(cfg.steps, 121);
      break;
    case Command::degennes:
      fill(cfg.b_min, 0.0), fill(cfg.b_max, 1.5), fill(cfg.steps, 151);
      require(*cfg.b_min >= 0.0 && *cfg.b_max <= 1.5, "degennes: range must lie in [0, 1.5]");
      break;
    case Command::verify:
      break;
  }
  if (cfg.command != Command::verify) fill(cfg.format, Format::csv);

  if (cfg.n_min) require(*cfg.n_min >= 0, "--n-min must be >= 0");
  if (cfg.n_min && cfg.n_max) require(*cfg.n_min <= *cfg.n_max, "--n-min must not exceed --n-max");
  if (cfg.b_min && cfg.b_max) require(*cfg.b_min <= *cfg.b_max, "--b-min must not exceed --b-max");
  if (cfg.steps) require(*cfg.steps >= 2, "--steps must be >= 2");
  if (cfg.command == Command::envelope) require(*cfg.b_min >= 0.0, "envelope: --b-min must be >= 0");
  if (cfg.command == Command::asymptotics) {
    require(*cfg.n_min >= 1 && *cfg.n_max >= 4 * *cfg.n_min,
            "asymptotics: need n_min >= 1 and n_max >= 4 n_min");
  }
  if (!cfg.only.empty()) {
    require(cfg.command == Command::verify, "--only applies to verify");
    const auto& names = verify::modules();
    require(std::find(names.begin(), names.end(), cfg.only) != names.end(),
            "--only: unknown module");
  }
  tolerances(cfg).validate();
  return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool to_file = !cfg.out_path.empty() && cfg.out_path != "-";
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = dispatch(cfg, to_file ? buffer : out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  if (to_file) {
    try {
      io::write_file(cfg.out_path, buffer.str());
      write_sidecar(cfg, code);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfig;
    }
  }
  return code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magnetic Steklov spectrum of the unit disk", "steklov"};
  app.require_subcommand(1);
  RunConfig cfg;

  for (const auto& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    sub->callback([&cfg, c = info.command] { cfg.command = c; });
    sub->add_option_function<int>("--n-min", [&](const int& v) { cfg.n_min = v; }, "First mode");
    sub->add_option_function<int>("--n-max", [&](const int& v) { cfg.n_max = v; }, "Last mode");
    sub->add_option_function<double>("--b-min", [&](const double& v) { cfg.b_min = v; },
                                     "Grid start (xi for halfplane and degennes)");
    sub->add_option_function<double>("--b-max", [&](const double& v) { cfg.b_max = v; },
                                     "Grid end (xi for halfplane and degennes)");
    sub->add_option_function<int>("--steps", [&](const int& v) { cfg.steps = v; },
                                  "Number of grid points");
    sub->add_option("--out", cfg.out_path, "Output file; a .meta.json sidecar is written next to it");
    sub->add_option_function<std::string>(
           "--format",
           [&](const std::string& v) { cfg.format = v == "json" ? Format::json : Format::csv; },
           "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option_function<double>("--rel-tol", [&](const double& v) { cfg.rel_tol = v; },
                                      "Relative tolerance for quadrature and root finding");
    sub->add_option("--only", cfg.only, "Run one module's checks (verify)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    cfg = resolve(std::move(cfg));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return execute(cfg, out, err);
}

}  // namespace steklov::cli
