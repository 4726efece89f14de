// Batch experiment runner for the entanglement-recovery certificates:
// builds or samples tripartite states, evaluates the recovery and security
// certificates on them, and writes machine-readable tables plus plot data.
//
// Exit codes: 0 success, 1 config error, 2 a certificate row reported
// holds=false, 3 I/O error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "complobs/scenarios.hpp"
#include "complobs/serialization.hpp"
#include "complobs/theorems.hpp"

namespace {

using namespace complobs;

enum class Command { VerifyThm1, VerifyThm2, Duality, Counterexample, Scenario, Sweep };

struct SweepRange {
  std::string name;
  double start = 0, stop = 0, step = 0;
};

struct RunConfig {
  Command command = Command::VerifyThm1;
  std::vector<std::size_t> dims{2, 2, 2};
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  std::string scenario;
  std::map<std::string, double> params;
  std::optional<SweepRange> range;
  std::string out;
  std::string format = "csv";
  bool plot = false;
  bool timing = false;
  OptimizeOptions solver;
};

struct Row {
  std::size_t trial = 0;
  std::optional<double> param;
  double eps_z = 0, eps_x = 0, bound = 0, distance = 0;
  bool holds = false;
  double gap_z = 0, gap_x = 0;
  double p_secure_z = 0, p_secure_x = 0;
  double decoupling = 0, hashing = 0;
  long wall_ms = 0;
  bool ok = true;
  double margin = 0;
};

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Shared per-state diagnostics: the two R-side security values, decoupling
// distance, and the hashing benchmark of the AB marginal.
void fill_diagnostics(Row& row, const PureState& psi) {
  row.p_secure_z = p_secure(psi, Observable::Z, {"R"}).value;
  row.p_secure_x = p_secure(psi, Observable::X, {"R"}).value;
  row.decoupling = decoupling_distance(psi);
  row.hashing = hashing_rate(psi.marginal({"A", "B"}));
}

void fill_certificate(Row& row, const TheoremCertificate& cert) {
  row.eps_z = cert.eps_z;
  row.eps_x = cert.eps_x;
  row.bound = cert.bound;
  row.distance = cert.achieved_distance;
  row.holds = cert.holds;
  row.gap_z = cert.solver.gap_z;
  row.gap_x = cert.solver.gap_x;
  row.margin = cert.bound - cert.achieved_distance;
}

Row evaluate_state(const RunConfig& cfg, std::size_t trial, const PureState& psi) {
  Row row;
  row.trial = trial;
  const auto started = std::chrono::steady_clock::now();
  fill_diagnostics(row, psi);
  switch (cfg.command) {
    case Command::VerifyThm1:
    case Command::Counterexample:
    case Command::Scenario:
    case Command::Sweep:
      fill_certificate(row, theorem1_certificate_optimized(psi, cfg.tol, cfg.solver));
      break;
    case Command::VerifyThm2:
      fill_certificate(row, theorem2_certificate(psi, cfg.tol, cfg.solver));
      break;
    case Command::Duality: {
      const DualityReport rep = duality_check(psi, cfg.tol, cfg.solver);
      row.eps_z = std::max(0.0, 1.0 - rep.x_from_z.premise_secure);
      row.eps_x = std::max(0.0, 1.0 - rep.z_from_x.premise_secure);
      row.bound = rep.z_from_x.implied_lower;
      row.distance = rep.z_from_x.achieved_guess + rep.z_from_x.solver_gap;
      row.gap_z = rep.z_from_x.solver_gap;
      row.gap_x = rep.x_from_z.solver_gap;
      row.holds = rep.holds;
      row.margin = std::min(rep.z_from_x.margin, rep.x_from_z.margin);
      break;
    }
  }
  if (cfg.timing) {
    row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  }
  return row;
}

std::vector<double> sweep_values(const SweepRange& range) {
  if (range.step <= 0) throw DomainError("sweep step must be positive");
  if (range.stop < range.start) throw DomainError("sweep range is empty");
  const auto count = static_cast<std::size_t>(
                         std::floor((range.stop - range.start) / range.step + 1e-9)) +
                     1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    values.push_back(
        std::min(range.start + static_cast<double>(i) * range.step, range.stop));
  return values;
}

std::vector<Row> run_trials(const RunConfig& cfg) {
  std::vector<Row> rows;
  const auto guarded = [&](std::size_t trial, const auto& build,
                           std::optional<double> param) {
    Row row;
    try {
      row = evaluate_state(cfg, trial, build());
    } catch (const std::exception& e) {
      row = Row{};
      row.trial = trial;
      const double nan = std::nan("");
      row.eps_z = row.eps_x = row.bound = row.distance = nan;
      row.gap_z = row.gap_x = row.p_secure_z = row.p_secure_x = nan;
      row.decoupling = row.hashing = row.margin = nan;
      row.ok = false;
      std::cerr << "trial " << trial << " failed: " << e.what() << "\n";
    }
    row.param = param;
    rows.push_back(row);
  };

  switch (cfg.command) {
    case Command::VerifyThm1:
    case Command::VerifyThm2:
    case Command::Duality: {
      const DimList dims{{"A", cfg.dims[0]}, {"B", cfg.dims[1]}, {"R", cfg.dims[2]}};
      for (std::size_t i = 0; i < cfg.trials; ++i)
        guarded(i, [&] { return haar_random_state(dims, cfg.seed, i); }, std::nullopt);
      break;
    }
    case Command::Counterexample:
      guarded(0, [] { return counterexample_state(); }, std::nullopt);
      break;
    case Command::Scenario:
      guarded(0, [&] { return make_scenario(cfg.scenario, cfg.params).state; },
              std::nullopt);
      break;
    case Command::Sweep: {
      const auto values = sweep_values(*cfg.range);
      for (std::size_t i = 0; i < values.size(); ++i) {
        guarded(i,
                [&] {
                  auto params = cfg.params;
                  params[cfg.range->name] = values[i];
                  return make_scenario(cfg.scenario, params).state;
                },
                values[i]);
      }
      break;
    }
  }
  return rows;
}

std::vector<std::string> column_names(const RunConfig& cfg) {
  std::vector<std::string> names{"trial"};
  if (cfg.command == Command::Sweep) names.push_back("param_" + cfg.range->name);
  for (const char* c : {"eps_z", "eps_x", "bound", "distance", "holds", "solver_gap_z",
                        "solver_gap_x", "p_secure_z", "p_secure_x",
                        "decoupling_distance", "hashing_rate", "wall_ms", "status"})
    names.push_back(c);
  return names;
}

std::vector<std::string> row_cells(const RunConfig& cfg, const Row& row) {
  std::vector<std::string> cells{std::to_string(row.trial)};
  if (cfg.command == Command::Sweep) cells.push_back(fmt12(row.param.value_or(0)));
  for (double v : {row.eps_z, row.eps_x, row.bound, row.distance})
    cells.push_back(fmt12(v));
  cells.push_back(row.holds ? "true" : "false");
  for (double v : {row.gap_z, row.gap_x, row.p_secure_z, row.p_secure_x,
                   row.decoupling, row.hashing})
    cells.push_back(fmt12(v));
  cells.push_back(std::to_string(row.wall_ms));
  cells.push_back(row.ok ? "ok" : "failed");
  return cells;
}

struct Summary {
  double min_margin = std::nan("");
  double max_margin = std::nan("");
};

Summary summarize(const std::vector<Row>& rows) {
  Summary s;
  bool first = true;
  for (const auto& row : rows) {
    if (!row.ok) continue;
    if (first) {
      s.min_margin = s.max_margin = row.margin;
      first = false;
    } else {
      s.min_margin = std::min(s.min_margin, row.margin);
      s.max_margin = std::max(s.max_margin, row.margin);
    }
  }
  return s;
}

std::string render_csv(const RunConfig& cfg, const std::vector<Row>& rows) {
  std::ostringstream out;
  const auto names = column_names(cfg);
  for (std::size_t i = 0; i < names.size(); ++i)
    out << names[i] << (i + 1 < names.size() ? "," : "\n");
  for (const auto& row : rows) {
    const auto cells = row_cells(cfg, row);
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  }
  const Summary s = summarize(rows);
  out << "# summary min_margin=" << fmt12(s.min_margin)
      << " max_margin=" << fmt12(s.max_margin) << "\n";
  return out.str();
}

std::string render_json(const RunConfig& cfg, const std::vector<Row>& rows) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  const auto names = column_names(cfg);
  for (const auto& row : rows) {
    nlohmann::json r;
    const auto cells = row_cells(cfg, row);
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string& name = names[i];
      const std::string& cell = cells[i];
      if (name == "holds") {
        r[name] = cell == "true";
      } else if (name == "status") {
        r[name] = cell;
      } else if (name == "trial" || name == "wall_ms") {
        r[name] = std::stoll(cell);
      } else if (cell == "nan" || cell == "-nan") {
        r[name] = nullptr;
      } else {
        // parse the 12-digit rendering back so csv and json carry the same
        // numbers exactly
        r[name] = std::stod(cell);
      }
    }
    j["rows"].push_back(std::move(r));
  }
  const Summary s = summarize(rows);
  j["summary"]["min_margin"] = std::isnan(s.min_margin) ? nlohmann::json(nullptr)
                                                        : nlohmann::json(std::stod(fmt12(s.min_margin)));
  j["summary"]["max_margin"] = std::isnan(s.max_margin) ? nlohmann::json(nullptr)
                                                        : nlohmann::json(std::stod(fmt12(s.max_margin)));
  return j.dump(2) + "\n";
}

// Two-column plot files (parameter vs. bound, parameter vs. distance).
// Returns the written paths; no-op with a warning when there are no rows or
// no --out stem to attach to.
std::vector<std::string> emit_plot_data(const RunConfig& cfg, const std::vector<Row>& rows) {
  if (rows.empty()) {
    std::cerr << "warning: no rows, skipping plot data\n";
    return {};
  }
  if (cfg.out.empty()) {
    std::cerr << "warning: --plot needs --out to derive file names\n";
    return {};
  }
  const std::filesystem::path base(cfg.out);
  const std::filesystem::path stem = base.parent_path() / base.stem();
  std::vector<std::string> written;
  for (const char* kind : {"bound", "distance"}) {
    const std::string path = stem.string() + "_" + kind + ".dat";
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot write " + path);
    for (const auto& row : rows) {
      if (!row.ok) continue;
      const double x = row.param.value_or(static_cast<double>(row.trial));
      f << fmt12(x) << " "
        << fmt12(std::string(kind) == "bound" ? row.bound : row.distance) << "\n";
    }
    if (!f.good()) throw std::ios_base::failure("failed writing " + path);
    written.push_back(path);
  }
  return written;
}

void validate(const RunConfig& cfg) {
  if (cfg.dims.size() != 3) throw DomainError("--dims needs exactly three entries dA,dB,dR");
  for (std::size_t d : cfg.dims)
    if (d < 2) throw DomainError("--dims entries must be at least 2");
  if (cfg.trials < 1) throw DomainError("--trials must be at least 1");
  // the recovery output lives on A,D,C,B,R with dim(D)=dim(C)=dim(A)
  const std::size_t pipeline =
      cfg.dims[0] * cfg.dims[0] * cfg.dims[0] * cfg.dims[1] * cfg.dims[2];
  if (pipeline > max_dimension())
    throw DomainError("recovery pipeline dimension " + std::to_string(pipeline) +
                      " exceeds the cap " + std::to_string(max_dimension()) +
                      " (see COMPLOBS_MAX_DIM)");
  if (cfg.format != "csv" && cfg.format != "json")
    throw DomainError("--format must be csv or json");
  if (cfg.command == Command::Scenario || cfg.command == Command::Sweep) {
    const auto names = scenario_names();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
      throw DomainError("unknown scenario '" + cfg.scenario + "'");
    make_scenario(cfg.scenario, cfg.params);  // reject unknown parameters early
  }
  if (cfg.command == Command::Sweep && !cfg.range)
    throw DomainError("sweep needs exactly one ranged --param key=start:stop:step");
  if (cfg.range && cfg.command != Command::Sweep)
    throw DomainError("ranged --param values are only valid for sweep");
  if (cfg.range) sweep_values(*cfg.range);
}

void parse_param(const std::string& text, RunConfig& cfg) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw DomainError("--param expects key=value");
  const std::string key = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  const auto colons = std::count(value.begin(), value.end(), ':');
  if (colons == 2) {
    if (cfg.range) throw DomainError("only one ranged --param is supported");
    SweepRange range;
    range.name = key;
    const auto c1 = value.find(':');
    const auto c2 = value.find(':', c1 + 1);
    range.start = std::stod(value.substr(0, c1));
    range.stop = std::stod(value.substr(c1 + 1, c2 - c1 - 1));
    range.step = std::stod(value.substr(c2 + 1));
    cfg.range = range;
  } else if (colons == 0) {
    cfg.params[key] = std::stod(value);
  } else {
    throw DomainError("--param value must be a number or start:stop:step");
  }
}

int run(const RunConfig& cfg) {
  validate(cfg);

  const std::vector<Row> rows = run_trials(cfg);
  const std::string rendered =
      cfg.format == "csv" ? render_csv(cfg, rows) : render_json(cfg, rows);

  if (cfg.out.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream f(cfg.out, std::ios::trunc);
    if (!f) {
      std::cerr << "error: cannot open '" << cfg.out << "' for writing\n";
      return 3;
    }
    f << rendered;
    f.close();
    if (!f.good()) {
      std::cerr << "error: failed writing '" << cfg.out << "'\n";
      return 3;
    }
  }

  if (cfg.plot || cfg.command == Command::Sweep) {
    try {
      for (const auto& path : emit_plot_data(cfg, rows))
        std::cerr << "# wrote " << path << "\n";
    } catch (const std::ios_base::failure& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    }
  }

  for (const auto& row : rows)
    if (row.ok && !row.holds) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for entanglement recovery via complementary observables"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> raw_params;

  const auto add_common = [&](CLI::App* sub, bool wants_dims, bool wants_scenario) {
    if (wants_dims) {
      sub->add_option("--dims", cfg.dims, "subsystem dimensions dA,dB,dR")
          ->delimiter(',')
          ->expected(1, 3);
      sub->add_option("--trials", cfg.trials, "number of sampled states");
      sub->add_option("--seed", cfg.seed, "master seed; trial i uses stream (seed, i)");
    }
    if (wants_scenario) {
      sub->add_option("--param", raw_params,
                      "scenario parameter key=value (sweep: key=start:stop:step)");
    }
    sub->add_option("--tol", cfg.tol,
                    "certificate tolerance (negative values force failures; "
                    "useful for exercising exit code 2)");
    sub->add_option("--solver-tol", cfg.solver.tol, "measurement optimizer gap target");
    sub->add_option("--max-iter", cfg.solver.max_iter, "measurement optimizer budget");
    sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_flag("--plot", cfg.plot, "also write two-column plot files");
    sub->add_flag("--timing", cfg.timing,
                  "record wall_ms (off by default so identical configs give "
                  "byte-identical outputs)");
  };

  auto* thm1 = app.add_subcommand("verify-thm1", "recovery certificates on random states");
  add_common(thm1, true, false);
  auto* thm2 = app.add_subcommand("verify-thm2", "security certificates on random states");
  add_common(thm2, true, false);
  auto* dual = app.add_subcommand("duality", "guess/security duality margins on random states");
  add_common(dual, true, false);
  auto* counter = app.add_subcommand("counterexample", "the y-basis GHZ counterexample suite");
  add_common(counter, false, false);
  auto* scenario = app.add_subcommand("scenario", "a named scenario state");
  scenario->add_option("--name", cfg.scenario, "scenario name")->required();
  add_common(scenario, false, true);
  auto* sweep = app.add_subcommand("sweep", "certificates across a scenario parameter range");
  sweep->add_option("--scenario", cfg.scenario, "scenario name")->required();
  add_common(sweep, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  if (const char* cap = std::getenv("COMPLOBS_MAX_DIM")) {
    try {
      const long parsed = std::stol(cap);
      if (parsed < 2) throw std::invalid_argument("too small");
      set_max_dimension(static_cast<std::size_t>(parsed));
    } catch (const std::exception&) {
      std::cerr << "error: invalid COMPLOBS_MAX_DIM '" << cap << "'\n";
      return 1;
    }
  }

  if (thm1->parsed()) cfg.command = Command::VerifyThm1;
  if (thm2->parsed()) cfg.command = Command::VerifyThm2;
  if (dual->parsed()) cfg.command = Command::Duality;
  if (counter->parsed()) cfg.command = Command::Counterexample;
  if (scenario->parsed()) cfg.command = Command::Scenario;
  if (sweep->parsed()) cfg.command = Command::Sweep;

  try {
    for (const auto& p : raw_params) parse_param(p, cfg);
    return run(cfg);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid numeric argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (...) {
    std::cerr << "error: unknown failure\n";
    return 1;
  }
}
