#pragma once

// Table reproduction, percent errors against the oracle and the published
// columns, wavefunction sampling, and CSV / JSON emission.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qao/closedform.hpp"
#include "qao/config.hpp"
#include "qao/optimize.hpp"
#include "qao/oracle.hpp"
#include "qao/reference_data.hpp"

namespace qao {

/// 100 |value - reference| / |reference|.
inline double percent_error(double value, double reference) {
  if (reference == 0.0) throw std::domain_error("percent_error: zero reference value");
  return 100.0 * std::abs(value - reference) / std::abs(reference);
}

enum class Source { Computed, Cited };

struct Field {
  std::string name;
  std::optional<double> value;
  Source source = Source::Computed;
  std::optional<bool> flag;  // boolean-valued columns
};

struct SolverDiagnostics {
  std::string label;
  std::size_t evaluations = 0;
  bool converged = false;
  int restarts_used = 0;
};

struct TableRow {
  int table_id = 0;
  std::vector<Field> fields;  // output columns, schema order
  std::vector<Field> reference;  // published values for the same cells
  std::vector<Field> percent_error;  // only where a reference exists
  std::vector<SolverDiagnostics> solvers;
  std::vector<std::string> errors;  // solver failures annotate the row

  const Field* find(std::string_view name) const {
    for (const Field& f : fields)
      if (f.name == name) return &f;
    return nullptr;
  }
  std::optional<double> value(std::string_view name) const {
    const Field* f = find(name);
    return f ? f->value : std::nullopt;
  }
  const Field* find_reference(std::string_view name) const {
    for (const Field& f : reference)
      if (f.name == name) return &f;
    return nullptr;
  }
};

inline const std::vector<std::string>& table_columns(int table_id) {
  static const std::vector<std::string> levels{"state", "alpha_quadratic", "E_quadratic", "alpha_qao",
                                               "E_qao", "alpha_quartic", "E_quartic"};
  static const std::vector<std::string> ground{"lambda",     "E_exact",    "E_wkb_cited",  "E_qlm_cited",
                                               "E_expansion_cited", "E_showf", "E_ppewf", "err_wkb",
                                               "err_qlm",    "err_expansion", "err_showf", "err_ppewf"};
  static const std::vector<std::string> params{"lambda", "alpha", "alpha_prime", "a",       "b",        "c",
                                               "d",      "E_v1",  "E_v2",        "E_exact", "collapsed"};
  if (table_id == 1) return levels;
  if (table_id == 3) return ground;
  if (table_id == 2 || (table_id >= 4 && table_id <= 8)) return params;
  throw std::invalid_argument("table id must be in 1..8, got " + std::to_string(table_id));
}

/// Level reported by a parameter table (2 -> 0, 4..8 -> 1..5).
inline int table_level(int table_id) { return table_id == 2 ? 0 : table_id - 3; }

namespace detail {

inline std::optional<std::size_t> tabulated_index(double lambda) {
  for (std::size_t i = 0; i < reference::lambda_grid.size(); ++i)
    if (reference::lambda_grid[i] == lambda) return i;
  return std::nullopt;
}

inline PpewfOptions ppewf_options(const RunConfig& config) {
  PpewfOptions o;
  o.restarts = config.restarts;
  o.rng_seed = config.seed;
  o.even_odd_only = config.even_odd_only;
  return o;
}

inline SolverDiagnostics diagnostics_of(std::string label, const VariationalResult& r) {
  return SolverDiagnostics{std::move(label), r.evaluations, r.converged, r.restarts_used};
}

inline void add_error(TableRow& row, std::string_view column, double value, std::optional<double> reference) {
  if (reference && *reference != 0.0) row.percent_error.push_back(Field{std::string(column), percent_error(value, *reference)});
}

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <class Fn>
auto parallel_map(std::size_t count, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  for (std::size_t start = 0; start < count; start += static_cast<std::size_t>(jobs)) {
    std::vector<std::future<Result>> batch;
    for (std::size_t i = start; i < std::min(count, start + static_cast<std::size_t>(jobs)); ++i)
      batch.push_back(std::async(std::launch::async, fn, i));
    for (std::size_t k = 0; k < batch.size(); ++k) out[start + k] = batch[k].get();
  }
  return out;
}

inline TableRow howf_levels_row(int state, const RunConfig& config) {
  TableRow row;
  row.table_id = 1;
  row.fields.push_back(Field{"state", static_cast<double>(state)});
  const double lam = 0.25;
  const struct {
    const char* suffix;
    Potential pot;
  } columns[] = {{"quadratic", Potential(config.g_squared, 0.0)},
                 {"qao", Potential(config.g_squared, lam)},
                 {"quartic", Potential(0.0, lam)}};
  for (const auto& col : columns) {
    const std::string alpha_name = std::string("alpha_") + col.suffix;
    const std::string energy_name = std::string("E_") + col.suffix;
    try {
      const VariationalResult r = solve_howf(state, col.pot);
      row.fields.push_back(Field{alpha_name, std::get<HowfParams>(r.params).alpha});
      row.fields.push_back(Field{energy_name, r.energy});
      row.solvers.push_back(diagnostics_of(energy_name, r));
    } catch (const std::exception& e) {
      row.fields.push_back(Field{alpha_name});
      row.fields.push_back(Field{energy_name});
      row.errors.push_back(energy_name + ": " + e.what());
    }
  }
  if (config.g_squared == 1.0 && state >= 0 && state <= 10) {
    const auto& ref = reference::howf_levels[static_cast<std::size_t>(state)];
    row.reference = {{"alpha_quadratic", ref.alpha_quadratic}, {"E_quadratic", ref.e_quadratic},
                     {"alpha_qao", ref.alpha_qao},             {"E_qao", ref.e_qao},
                     {"alpha_quartic", ref.alpha_quartic},     {"E_quartic", ref.e_quartic}};
    for (const char* name : {"E_quadratic", "E_qao", "E_quartic"})
      if (auto v = row.value(name)) add_error(row, name, *v, row.find_reference(name)->value);
  }
  return row;
}

inline TableRow ground_comparison_row(const Lambda& lam, const RunConfig& config) {
  TableRow row;
  row.table_id = 3;
  const Potential pot(config.g_squared, lam.value);
  const auto idx = config.g_squared == 1.0 ? tabulated_index(lam.value) : std::nullopt;
  const reference::GroundComparisonRow* ref = idx ? &reference::ground_comparison[*idx] : nullptr;

  std::optional<double> exact, showf, ppewf;
  try {
    exact = exact_spectrum(pot, 1, config.oracle_tol).eigenvalues[0];
  } catch (const std::exception& e) {
    row.errors.push_back(std::string("E_exact: ") + e.what());
  }
  try {
    const VariationalResult r = solve_howf(0, pot);
    showf = r.energy;
    row.solvers.push_back(diagnostics_of("E_showf", r));
  } catch (const std::exception& e) {
    row.errors.push_back(std::string("E_showf: ") + e.what());
  }
  try {
    const VariationalResult r = solve_ppewf(0, pot, ppewf_options(config));
    ppewf = r.energy;
    row.solvers.push_back(diagnostics_of("E_ppewf", r));
  } catch (const std::exception& e) {
    row.errors.push_back(std::string("E_ppewf: ") + e.what());
  }

  const std::optional<double> wkb = ref ? std::optional<double>(ref->e_wkb) : std::nullopt;
  const std::optional<double> qlm = ref ? std::optional<double>(ref->e_qlm) : std::nullopt;
  const std::optional<double> expansion = ref ? ref->e_expansion : std::nullopt;
  auto err = [&](std::optional<double> v) -> std::optional<double> {
    if (!v || !exact || *exact == 0.0) return std::nullopt;
    return percent_error(*v, *exact);
  };
  row.fields = {Field{"lambda", lam.value},
                Field{"E_exact", exact},
                Field{"E_wkb_cited", wkb, Source::Cited},
                Field{"E_qlm_cited", qlm, Source::Cited},
                Field{"E_expansion_cited", expansion, Source::Cited},
                Field{"E_showf", showf},
                Field{"E_ppewf", ppewf},
                Field{"err_wkb", err(wkb)},
                Field{"err_qlm", err(qlm)},
                Field{"err_expansion", err(expansion)},
                Field{"err_showf", err(showf)},
                Field{"err_ppewf", err(ppewf)}};
  if (ref) {
    row.reference = {{"E_exact", ref->exact},         {"E_showf", ref->e_showf},     {"E_ppewf", ref->e_ppewf},
                     {"err_wkb", ref->err_wkb},       {"err_qlm", ref->err_qlm},     {"err_expansion", ref->err_expansion},
                     {"err_showf", ref->err_showf},   {"err_ppewf", ref->err_ppewf}};
    if (exact) add_error(row, "E_exact", *exact, ref->exact);
    if (showf) add_error(row, "E_showf", *showf, ref->e_showf);
    if (ppewf) add_error(row, "E_ppewf", *ppewf, ref->e_ppewf);
  }
  return row;
}

inline TableRow parameter_row(int table_id, const Lambda& lam, const RunConfig& config) {
  TableRow row;
  row.table_id = table_id;
  const int n = table_level(table_id);
  const Potential pot(config.g_squared, lam.value);
  const auto idx = config.g_squared == 1.0 ? tabulated_index(lam.value) : std::nullopt;

  std::optional<double> alpha, e_v1, e_v2, exact;
  std::optional<PpewfParams> params;
  try {
    const VariationalResult r = solve_howf(n, pot);
    alpha = std::get<HowfParams>(r.params).alpha;
    e_v1 = r.energy;
    row.solvers.push_back(diagnostics_of("E_v1", r));
  } catch (const std::exception& e) {
    row.errors.push_back(std::string("E_v1: ") + e.what());
  }
  try {
    const VariationalResult r = solve_ppewf(n, pot, ppewf_options(config));
    params = std::get<PpewfParams>(r.params);
    e_v2 = r.energy;
    row.solvers.push_back(diagnostics_of("E_v2", r));
  } catch (const std::exception& e) {
    row.errors.push_back(std::string("E_v2: ") + e.what());
  }
  try {
    exact = exact_spectrum(pot, static_cast<std::size_t>(n) + 1, config.oracle_tol).eigenvalues[static_cast<std::size_t>(n)];
  } catch (const std::exception& e) {
    row.errors.push_back(std::string("E_exact: ") + e.what());
  }

  std::optional<bool> collapsed;
  if (e_v2 && exact) collapsed = is_collapsed(*e_v2, *exact);
  auto p = [&](double PpewfParams::*member) -> std::optional<double> {
    return params ? std::optional<double>((*params).*member) : std::nullopt;
  };
  row.fields = {Field{"lambda", lam.value},
                Field{"alpha", alpha},
                Field{"alpha_prime", p(&PpewfParams::alpha_prime)},
                Field{"a", p(&PpewfParams::a)},
                Field{"b", p(&PpewfParams::b)},
                Field{"c", p(&PpewfParams::c)},
                Field{"d", p(&PpewfParams::d)},
                Field{"E_v1", e_v1},
                Field{"E_v2", e_v2},
                Field{"E_exact", exact},
                Field{"collapsed", std::nullopt, Source::Computed, collapsed}};
  // not a CSV column; carried in the JSON record
  if (e_v1 && exact) row.fields.push_back(Field{"collapsed_v1", std::nullopt, Source::Computed, is_collapsed(*e_v1, *exact)});

  // percent errors use the oracle as reference; published values are passed through
  if (exact) {
    if (e_v1) add_error(row, "E_v1", *e_v1, *exact);
    if (e_v2) add_error(row, "E_v2", *e_v2, *exact);
  }
  if (idx) {
    const reference::ParameterRow& ref = reference::parameters_for_level(n)[*idx];
    row.reference = {{"alpha", ref.alpha}, {"alpha_prime", ref.alpha_prime}, {"a", ref.a}, {"b", ref.b},
                     {"c", ref.c},         {"d", ref.d},                     {"E_v1", ref.e_v1}, {"E_v2", ref.e_v2}};
    if (n > 0)
      row.reference.push_back(Field{"E_expansion_cited", ref.e_expansion, Source::Cited});
    else
      row.reference.push_back(Field{"E_exact", reference::ground_comparison[*idx].exact});
  }
  return row;
}

}  // namespace detail

/// Recomputes every computable cell of table 1..8.
inline std::vector<TableRow> reproduce_table(int table_id, const RunConfig& config) {
  (void)table_columns(table_id);
  config.validate();
  if (table_id == 1)
    return detail::parallel_map(11, config.jobs, [&](std::size_t i) { return detail::howf_levels_row(static_cast<int>(i), config); });
  const auto& grid = config.lambda_grid;
  if (table_id == 3)
    return detail::parallel_map(grid.size(), config.jobs,
                                [&](std::size_t i) { return detail::ground_comparison_row(grid[i], config); });
  return detail::parallel_map(grid.size(), config.jobs,
                              [&](std::size_t i) { return detail::parameter_row(table_id, grid[i], config); });
}

// ---------------------------------------------------------------------------
// wavefunction samples

struct WavefunctionSamples {
  Family family = Family::Howf;
  int n = 0;
  double lambda = 0.0;
  std::vector<double> x;
  std::vector<double> psi;  // normalized to unit L2 norm on the real line
  double norm = 0.0;  // analytic <psi|psi> after normalization
  double rms_width = 0.0;  // sqrt(<x^2>)
  int sign_changes = 0;  // every sign change on the grid
  int nodes = 0;  // sign changes between lobes above node_weight_floor
};

/// Lobes holding less than this fraction of the probability do not count
/// toward nodes. Optimized PPEWF trials with d < 0 turn over in the far tail,
/// leaving lobes of about 1e-6 probability; physical lobes hold 1e-2 or more.
inline constexpr double node_weight_floor = 1e-4;

/// Sign changes between consecutive samples, skipping samples with |v| <= floor.
inline int count_sign_changes(const std::vector<double>& values, double floor) {
  int changes = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v) <= floor || v == 0.0) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

/// Sign changes between lobes (maximal same-sign runs) whose share of
/// sum(v^2) is at least weight_floor; negligible lobes merge into neighbours.
inline int count_nodes(const std::vector<double>& values, double weight_floor) {
  struct Lobe {
    int sign;
    double weight;
  };
  std::vector<Lobe> lobes;
  double total = 0.0;
  for (double v : values) {
    if (v == 0.0) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (lobes.empty() || lobes.back().sign != s) lobes.push_back(Lobe{s, 0.0});
    lobes.back().weight += v * v;
    total += v * v;
  }
  std::vector<double> kept;
  for (const Lobe& l : lobes)
    if (l.weight >= weight_floor * total) kept.push_back(l.sign);
  return count_sign_changes(kept, 0.0);
}

inline WavefunctionSamples sample_wavefunction(const VariationalResult& result, double x_max = 5.0,
                                               std::size_t samples = 2000) {
  if (samples < 16) throw std::invalid_argument("sample_wavefunction: need at least 16 samples");
  if (!(x_max > 0.0)) throw std::invalid_argument("sample_wavefunction: x_max must be positive");
  GaussPoly psi = build_trial(result.params);
  const double s = inner_product(psi, psi);
  psi.poly *= 1.0 / std::sqrt(s);

  WavefunctionSamples out;
  out.family = result.family;
  out.n = result.n;
  out.lambda = result.potential.lambda;
  out.norm = inner_product(psi, psi);
  out.rms_width = std::sqrt(inner_product(psi, Polynomial{0.0, 0.0, 1.0}, psi) / out.norm);
  out.x.resize(samples);
  out.psi.resize(samples);
  const double h = 2.0 * x_max / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    out.x[i] = -x_max + h * static_cast<double>(i);
    out.psi[i] = psi(out.x[i]);
  }
  out.sign_changes = count_sign_changes(out.psi, 0.0);
  out.nodes = count_nodes(out.psi, node_weight_floor);
  return out;
}

// ---------------------------------------------------------------------------
// printed-expression diagnostics

struct PrintedExpressionCheck {
  int n = 0;
  double lambda = 0.0;
  PpewfParams params;
  double printed = 0.0;  // printed closed form at the tabulated parameters
  double rayleigh = 0.0;  // Rayleigh quotient at the same parameters
  std::optional<double> tabulated;  // tabulated E_V2
  double difference = 0.0;  // printed - rayleigh
};

/// Evaluates the printed PPEWF expressions at every tabulated parameter row
/// and reports them next to the Rayleigh quotient. Nothing is asserted.
inline std::vector<PrintedExpressionCheck> printed_expression_checks() {
  std::vector<PrintedExpressionCheck> out;
  for (int n = 0; n <= 5; ++n) {
    for (const reference::ParameterRow& row : reference::parameters_for_level(n)) {
      PrintedExpressionCheck c;
      c.n = n;
      c.lambda = row.lambda;
      c.params = PpewfParams{n, row.alpha_prime, row.a, row.b, row.c, row.d};
      try {
        c.printed = closedform::energy_ppewf_printed(n, row.alpha_prime, row.a, row.b, row.c, row.d);
      } catch (const std::exception&) {
        c.printed = std::nan("");
      }
      c.rayleigh = rayleigh_quotient(c.params, Potential(1.0, row.lambda));
      c.tabulated = row.e_v2;
      c.difference = c.printed - c.rayleigh;
      out.push_back(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// emission

/// Six significant digits, as used for every rendered number.
inline std::string format6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string render_cell(const Field& f) {
  if (f.flag) return *f.flag ? "true" : "false";
  if (f.value) return format6(*f.value);
  return {};
}

inline void write_csv(std::ostream& out, int table_id, const std::vector<TableRow>& rows) {
  const auto& columns = table_columns(table_id);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const TableRow& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const Field* f = row.find(columns[i]);
      out << (i ? "," : "") << (f ? render_cell(*f) : std::string{});
    }
    out << '\n';
  }
}

inline void write_csv(std::ostream& out, const WavefunctionSamples& samples) {
  out << "x,psi\n";
  for (std::size_t i = 0; i < samples.x.size(); ++i) out << format6(samples.x[i]) << ',' << format6(samples.psi[i]) << '\n';
}

namespace detail {

inline void put_number(nlohmann::ordered_json& obj, const std::string& name, double v) {
  obj[name] = std::isfinite(v) ? nlohmann::ordered_json(std::stod(format6(v))) : nlohmann::ordered_json(nullptr);
  obj[name + "_full"] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline void put_field(nlohmann::ordered_json& obj, const Field& f) {
  if (f.flag)
    obj[f.name] = *f.flag;
  else if (f.value)
    put_number(obj, f.name, *f.value);
  else
    obj[f.name] = nullptr;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const TableRow& row) {
  nlohmann::ordered_json j;
  j["table"] = row.table_id;
  nlohmann::ordered_json sources = nlohmann::ordered_json::object();
  for (const Field& f : row.fields) {
    detail::put_field(j, f);
    if (f.source == Source::Cited) sources[f.name] = "cited";
  }
  if (!sources.empty()) j["source"] = sources;
  if (!row.reference.empty()) {
    nlohmann::ordered_json ref = nlohmann::ordered_json::object();
    for (const Field& f : row.reference) detail::put_field(ref, f);
    j["reference"] = ref;
  }
  if (!row.percent_error.empty()) {
    nlohmann::ordered_json err = nlohmann::ordered_json::object();
    for (const Field& f : row.percent_error) detail::put_field(err, f);
    j["percent_error"] = err;
  }
  nlohmann::ordered_json solvers = nlohmann::ordered_json::array();
  for (const SolverDiagnostics& s : row.solvers)
    solvers.push_back({{"cell", s.label},
                       {"evaluations", s.evaluations},
                       {"converged", s.converged},
                       {"restarts_used", s.restarts_used}});
  j["solver"] = solvers;
  if (!row.errors.empty()) j["errors"] = row.errors;
  return j;
}

inline nlohmann::ordered_json to_json(const std::vector<TableRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const TableRow& r : rows) arr.push_back(to_json(r));
  return arr;
}

inline nlohmann::ordered_json to_json(const WavefunctionSamples& s) {
  nlohmann::ordered_json j;
  j["family"] = std::string(to_string(s.family));
  j["n"] = s.n;
  detail::put_number(j, "lambda", s.lambda);
  detail::put_number(j, "norm", s.norm);
  detail::put_number(j, "rms_width", s.rms_width);
  j["sign_changes"] = s.sign_changes;
  j["nodes"] = s.nodes;
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    nlohmann::ordered_json p;
    detail::put_number(p, "x", s.x[i]);
    detail::put_number(p, "psi", s.psi[i]);
    points.push_back(std::move(p));
  }
  j["samples"] = points;
  return j;
}

inline nlohmann::ordered_json to_json(const std::vector<PrintedExpressionCheck>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["n"] = c.n;
    detail::put_number(j, "lambda", c.lambda);
    detail::put_number(j, "E_printed", c.printed);
    detail::put_number(j, "E_rayleigh", c.rayleigh);
    if (c.tabulated) detail::put_number(j, "E_tabulated", *c.tabulated);
    detail::put_number(j, "difference", c.difference);
    arr.push_back(std::move(j));
  }
  return arr;
}

inline nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (const Lambda& l : c.lambda_grid) grid.push_back({{"label", l.label}, {"value", l.value}});
  return {{"lambda_grid", grid},     {"g_squared", c.g_squared},
          {"levels", c.levels},      {"oracle_tol", c.oracle_tol},
          {"seed", c.seed},          {"restarts", c.restarts},
          {"even_odd_only", c.even_odd_only}, {"output_dir", c.output_dir},
          {"format", c.format == OutputFormat::Csv ? "csv" : "json"}, {"jobs", c.jobs}};
}

/// Writes `content` to `path`, reporting failures with the path.
inline void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  content(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline void emit(const std::vector<TableRow>& rows, int table_id, OutputFormat format, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) {
    if (format == OutputFormat::Csv)
      write_csv(out, table_id, rows);
    else
      out << to_json(rows).dump(2) << '\n';
  });
}

inline void emit(const WavefunctionSamples& samples, OutputFormat format, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) {
    if (format == OutputFormat::Csv)
      write_csv(out, samples);
    else
      out << to_json(samples).dump(2) << '\n';
  });
}

}  // namespace qao
