// qao: variational energies of quadratic, pure-quartic and quartic
// anharmonic oscillators.
//
// Exit codes: 0 success, 1 usage error, 2 solver non-convergence or failed
// self-check, 3 I/O error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qao/qao.hpp"
#include "qao/selfcheck.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_solver = 2;
constexpr int exit_io = 3;

bool quiet() {
  const char* q = std::getenv("QAO_QUIET");
  return q != nullptr && *q != '\0' && std::string(q) != "0";
}

void note(const std::string& msg) {
  if (!quiet()) std::cerr << msg << '\n';
}

/// Flags shared by every subcommand that reads RunConfig.
struct ConfigFlags {
  std::optional<std::string> config_file;
  std::optional<std::string> lambda_grid;
  std::optional<double> g_squared;
  std::optional<int> levels;
  std::optional<double> oracle_tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  bool even_odd_only = false;
  std::optional<std::string> output_dir;
  std::optional<std::string> format;
  std::optional<int> jobs;

  void attach(CLI::App* app, bool grid_flags) {
    app->add_option("--config", config_file, "configuration file of 'key = value' lines");
    app->add_option("--g2", g_squared, "coefficient g^2 of the x^2/2 term");
    app->add_option("--seed", seed, "random seed for optimizer restarts");
    app->add_option("--restarts", restarts, "random restarts per PPEWF solve");
    app->add_flag("--even-odd-only", even_odd_only, "pin the parity-breaking PPEWF coefficients a, c at zero");
    app->add_option("--oracle-tol", oracle_tol, "oracle convergence tolerance");
    if (grid_flags) {
      app->add_option("--lambda-grid", lambda_grid, "comma-separated lambda values, fractions allowed");
      app->add_option("--levels", levels, "oracle levels per lambda");
      app->add_option("--out,--output-dir", output_dir, "output directory");
      app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
      app->add_option("--jobs", jobs, "rows solved in parallel");
    }
  }

  qao::RunConfig resolve() const {
    qao::RunConfig c = config_file ? qao::load_config_file(*config_file) : qao::RunConfig{};
    if (lambda_grid) c.set("lambda_grid", *lambda_grid);
    if (g_squared) c.g_squared = *g_squared;
    if (levels) c.levels = *levels;
    if (oracle_tol) c.oracle_tol = *oracle_tol;
    if (seed) c.seed = *seed;
    if (restarts) c.restarts = *restarts;
    if (even_odd_only) c.even_odd_only = true;
    if (output_dir) c.output_dir = *output_dir;
    if (format) c.set("format", *format);
    if (jobs) c.jobs = *jobs;
    c.validate();
    return c;
  }
};

qao::Family parse_family(const std::string& s) {
  if (s == "howf") return qao::Family::Howf;
  if (s == "ppewf") return qao::Family::Ppewf;
  throw qao::UsageError("unknown family '" + s + "' (expected howf or ppewf)");
}

qao::PpewfOptions ppewf_options(const qao::RunConfig& c) {
  qao::PpewfOptions o;
  o.restarts = c.restarts;
  o.rng_seed = c.seed;
  o.even_odd_only = c.even_odd_only;
  return o;
}

void print_result(const qao::VariationalResult& r) {
  std::printf("family = %s\nn = %d\nlambda = %.10g\ng2 = %.10g\n", std::string(qao::to_string(r.family)).c_str(), r.n,
              r.potential.lambda, r.potential.g_squared);
  if (const auto* h = std::get_if<qao::HowfParams>(&r.params)) {
    std::printf("alpha = %.6f\n", h->alpha);
  } else {
    const auto& p = std::get<qao::PpewfParams>(r.params);
    std::printf("alpha_prime = %.6f\na = %.6g\nb = %.6f\nc = %.6g\nd = %.6f\n", p.alpha_prime, p.a, p.b, p.c, p.d);
  }
  std::printf("E = %.6f\nevaluations = %zu\nconverged = %s\nrestarts_used = %d\n", r.energy, r.evaluations,
              r.converged ? "true" : "false", r.restarts_used);
}

std::string table_file(int id, qao::OutputFormat f) {
  return "table" + std::to_string(id) + (f == qao::OutputFormat::Csv ? ".csv" : ".json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational energies of quadratic, pure-quartic and quartic anharmonic oscillators"};
  app.require_subcommand(1);

  // table
  ConfigFlags table_flags;
  std::string table_id;
  auto* table = app.add_subcommand("table", "reproduce one table (1..8) or all of them");
  table->add_option("id", table_id, "1..8 or all")->required();
  table_flags.attach(table, true);

  // solve
  ConfigFlags solve_flags;
  std::string solve_family, solve_lambda;
  int solve_n = 0;
  auto* solve = app.add_subcommand("solve", "optimize one trial family for one level and lambda");
  solve->add_option("--family", solve_family, "howf or ppewf")->required();
  solve->add_option("--n", solve_n, "level index")->required()->check(CLI::NonNegativeNumber);
  solve->add_option("--lambda", solve_lambda, "quartic coupling, decimal or fraction")->required();
  solve_flags.attach(solve, false);

  // oracle
  ConfigFlags oracle_flags;
  std::string oracle_lambda;
  int oracle_levels = 6;
  double oracle_tol = 1e-6;
  double oracle_omega = 0.0;
  auto* oracle = app.add_subcommand("oracle", "oscillator-basis diagonalization spectrum");
  oracle->add_option("--lambda", oracle_lambda, "quartic coupling, decimal or fraction")->required();
  oracle->add_option("--levels", oracle_levels, "number of levels")->check(CLI::Range(1, 12));
  oracle->add_option("--tol", oracle_tol, "convergence tolerance on level drift");
  oracle->add_option("--omega", oracle_omega, "basis frequency (default balances x^2 and x^4)");
  oracle->add_option("--g2", oracle_flags.g_squared, "coefficient g^2 of the x^2/2 term");
  oracle->add_option("--config", oracle_flags.config_file, "configuration file of 'key = value' lines");

  // wavefunction
  ConfigFlags wf_flags;
  std::string wf_family, wf_lambda;
  std::optional<std::string> wf_out;
  std::string wf_format = "csv";
  int wf_n = 0;
  std::size_t wf_samples = 2000;
  double wf_xmax = 5.0;
  auto* wavefunction = app.add_subcommand("wavefunction", "sample a normalized optimized trial wavefunction");
  wavefunction->add_option("--family", wf_family, "howf or ppewf")->required();
  wavefunction->add_option("--n", wf_n, "level index")->required()->check(CLI::NonNegativeNumber);
  wavefunction->add_option("--lambda", wf_lambda, "quartic coupling, decimal or fraction")->required();
  wavefunction->add_option("--samples", wf_samples, "grid points")->check(CLI::Range(std::size_t{16}, std::size_t{10000000}));
  wavefunction->add_option("--xmax", wf_xmax, "grid half-width")->check(CLI::PositiveNumber);
  wavefunction->add_option("--out", wf_out, "output file (default: standard output)");
  wavefunction->add_option("--format", wf_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  wf_flags.attach(wavefunction, false);

  auto* selfcheck = app.add_subcommand("selfcheck", "run closed-form and oracle consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*table) {
      const qao::RunConfig config = table_flags.resolve();
      std::vector<int> ids;
      if (table_id == "all") {
        for (int i = 1; i <= 8; ++i) ids.push_back(i);
      } else {
        const int id = qao::detail::parse_integer<int>(table_id, "table id");
        if (id < 1 || id > 8) throw qao::UsageError("table id must be 1..8 or 'all'");
        ids.push_back(id);
      }
      const std::filesystem::path dir(config.output_dir);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw qao::IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

      const auto start = std::chrono::steady_clock::now();
      nlohmann::ordered_json tables = nlohmann::ordered_json::object();
      bool all_converged = true;
      for (int id : ids) {
        const auto rows = qao::reproduce_table(id, config);
        for (const auto& row : rows) {
          for (const auto& s : row.solvers) all_converged = all_converged && s.converged;
          for (const auto& err : row.errors) {
            std::cerr << "table " << id << ": " << err << '\n';
            all_converged = false;
          }
        }
        qao::emit(rows, id, config.format, dir / table_file(id, config.format));
        tables[std::to_string(id)] = qao::to_json(rows);
        note("wrote " + (dir / table_file(id, config.format)).string());
      }
      if (table_id == "all") {
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        nlohmann::ordered_json record;
        record["config"] = qao::to_json(config);
        record["wall_clock_seconds"] = seconds;
        record["tables"] = tables;
        record["diagnostics"] = {{"printed_ppewf_expressions", qao::to_json(qao::printed_expression_checks())}};
        qao::write_file(dir / "run.json", [&](std::ostream& out) { out << record.dump(2) << '\n'; });
        note("wrote " + (dir / "run.json").string());
      }
      return all_converged ? exit_ok : exit_solver;
    }

    if (*solve) {
      const qao::RunConfig config = solve_flags.resolve();
      const qao::Potential pot(config.g_squared, qao::parse_lambda(solve_lambda).value);
      const qao::VariationalResult r = qao::solve(parse_family(solve_family), solve_n, pot, ppewf_options(config));
      print_result(r);
      return r.converged ? exit_ok : exit_solver;
    }

    if (*oracle) {
      const qao::RunConfig config = oracle_flags.resolve();
      const qao::Potential pot(config.g_squared, qao::parse_lambda(oracle_lambda).value);
      qao::SpectrumOptions opt;
      opt.omega = oracle_omega;
      const qao::SpectrumResult s =
          qao::exact_spectrum(pot, static_cast<std::size_t>(oracle_levels), oracle_tol, opt);
      std::printf("# lambda = %.10g  g2 = %.10g  basis_size = %zu  omega = %.6g  drift = %.3g\n", pot.lambda,
                  pot.g_squared, s.basis_size, s.basis_scale, s.drift);
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) std::printf("%zu %.10f\n", k, s.eigenvalues[k]);
      return exit_ok;
    }

    if (*wavefunction) {
      const qao::RunConfig config = wf_flags.resolve();
      const qao::Potential pot(config.g_squared, qao::parse_lambda(wf_lambda).value);
      const qao::VariationalResult r = qao::solve(parse_family(wf_family), wf_n, pot, ppewf_options(config));
      const qao::WavefunctionSamples s = qao::sample_wavefunction(r, wf_xmax, wf_samples);
      const auto fmt = wf_format == "json" ? qao::OutputFormat::Json : qao::OutputFormat::Csv;
      if (wf_out) {
        qao::emit(s, fmt, *wf_out);
      } else if (fmt == qao::OutputFormat::Csv) {
        qao::write_csv(std::cout, s);
      } else {
        std::cout << qao::to_json(s).dump(2) << '\n';
      }
      note("# E = " + qao::format6(r.energy) + "  nodes = " + std::to_string(s.nodes) +
           "  sign_changes = " + std::to_string(s.sign_changes) + "  rms_width = " + qao::format6(s.rms_width));
      return exit_ok;
    }

    if (*selfcheck) {
      bool ok = true;
      for (const auto& c : qao::run_selfcheck()) {
        std::printf("%s  %-50s worst=%.3g tol=%.3g\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.worst,
                    c.tolerance);
        ok = ok && c.passed;
      }
      std::printf("# printed PPEWF expressions vs Rayleigh quotient at tabulated parameters (not asserted)\n");
      std::printf("# n lambda E_printed E_rayleigh E_tabulated difference\n");
      for (const auto& c : qao::printed_expression_checks())
        std::printf("%d %g %.6g %.6g %s %.6g\n", c.n, c.lambda, c.printed, c.rayleigh,
                    c.tabulated ? qao::format6(*c.tabulated).c_str() : "-", c.difference);
      return ok ? exit_ok : exit_solver;
    }
  } catch (const qao::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const qao::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const qao::SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_solver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_solver;
  }
  return exit_usage;
}
