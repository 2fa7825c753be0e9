#include "intricacy/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "intricacy/checks.hpp"
#include "intricacy/coeffs.hpp"
#include "intricacy/error.hpp"
#include "intricacy/io.hpp"
#include "intricacy/markov.hpp"
#include "intricacy/pressure.hpp"
#include "intricacy/reference.hpp"
#include "intricacy/sweep.hpp"
#include "intricacy/topo.hpp"

namespace intricacy::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string rounded(const std::vector<std::pair<std::string, double>>& values) {
  std::string s;
  for (const auto& [name, v] : values) {
    if (!s.empty()) s += ";";
    s += name + "=" + format_fixed3(v);
  }
  return s;
}

Cell number(double x) { return x; }
Cell text(std::string s) { return s; }
Cell optional_number(const std::optional<double>& x) { return x ? Cell(*x) : Cell(); }

void emit(const Table& table, const RunConfig& config, const std::string& path, std::ostream& out) {
  auto write = [&](std::ostream& os) {
    if (config.format == "json") {
      write_json(table, os);
    } else {
      write_csv(table, os);
    }
  };
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  write(file);
}

MarkovMeasure markov_from_config(const RunConfig& config, std::vector<std::string>& param_names,
                                 std::string& family_name) {
  if (!config.input.empty()) {
    if (!config.family.empty()) throw InputError("give either --input or --family, not both");
    return io::parse_markov(io::read_text(config.input));
  }
  if (config.family.empty()) throw InputError("markov needs --input or --family");
  const auto family = MarkovFamily::builtin(config.family);
  param_names = family.parameter_names();
  family_name = config.family;
  return family.build(config.params);
}

// ---------------------------------------------------------------------------

int run_topo(const RunConfig& config, std::ostream& out) {
  if (config.input.empty()) throw InputError("topo needs --input");
  const Sft sft = io::read_sft(config.input, io::cache_dir_from_env());
  const auto coeffs = CoefficientSystem::parse(config.coeffs);
  const std::vector<int> ns = config.n.empty() ? std::vector<int>{10} : config.n;
  const double h_top = topological_entropy(sft);
  const auto tag = sft.block_length() == 1 ? reference::topo_tag(sft.adjacency()) : std::nullopt;

  Table t;
  t.columns = {"n",       "block_k", "H_n",    "Asc_n",      "Int_n",         "Acc_n",     "Alt_n",
               "coeffs_spec", "h_top", "method", "tail_bound", "paper_rounded", "provenance"};
  ProfileOptions options;
  options.block_k = config.block_k;
  options.threads = config.threads;
  for (int n : ns) {
    const auto p = finite_profile(sft, coeffs, n, options);
    const bool tagged = tag && n == 10 && coeffs.is_uniform() && config.block_k <= 1;
    t.rows.push_back({number(n), number(p.block_k), number(p.entropy_n), number(p.asc), number(p.intricacy),
                      number(p.acc), optional_number(p.alt), text(p.coeffs_spec), number(h_top), text("finite"),
                      Cell(),
                      text(rounded({{"entropy", h_top}, {"H_n", p.entropy_n}, {"Asc_n", p.asc}, {"Int_n", p.intricacy}})),
                      text(tagged ? *tag : "")});
  }
  if (config.terms) {
    const auto a = asc_series(sft, *config.terms);
    const auto i = int_series(sft, *config.terms);
    t.rows.push_back({number(*config.terms), number(0), number(h_top), number(a.value), number(i.value), Cell(), Cell(),
                      text("uniform"), number(h_top), text("series"), number(a.tail_bound),
                      text(rounded({{"entropy", h_top}, {"Asc", a.value}, {"Int", i.value}})), text("")});
  }
  emit(t, config, config.output, out);
  return ExitCode::ok;
}

int run_pressure(const RunConfig& config, std::ostream& out) {
  if (config.input.empty()) throw InputError("pressure needs --input");
  if (config.potential.empty()) throw InputError("pressure needs --potential");
  const Sft sft = io::read_sft(config.input, io::cache_dir_from_env());
  const Potential f = io::parse_potential(io::read_text(config.potential), sft.alphabet_size());
  const auto coeffs = CoefficientSystem::parse(config.coeffs);
  const std::vector<int> ns = config.n.empty() ? std::vector<int>{10} : config.n;
  const double pressure = classical_pressure(sft, f);

  std::string tag;
  if (sft.block_length() == 1) {
    for (const auto& row : reference::pressure_rows()) {
      if (row.adjacency.rows() != sft.adjacency().rows() || row.adjacency != sft.adjacency()) continue;
      if (f.values == row.f1) tag = row.tag + "/f1";
      if (f.values == row.f2) tag = row.tag + "/f2";
    }
  }
  Table t;
  t.columns = {"n", "coeffs_spec", "Asp_n", "pressure", "paper_rounded", "provenance"};
  for (int n : ns) {
    const double asp = asp_profile(sft, f, coeffs, n, config.threads);
    const bool tagged = !tag.empty() && n == 10 && coeffs.is_uniform();
    t.rows.push_back({number(n), text(coeffs.spec()), number(asp), number(pressure),
                      text(rounded({{"Asp_n", asp}, {"pressure", pressure}})), text(tagged ? tag : "")});
  }
  emit(t, config, config.output, out);
  return ExitCode::ok;
}

int run_markov(const RunConfig& config, std::ostream& out) {
  std::vector<std::string> names;
  std::string family;
  const auto m = markov_from_config(config, names, family);
  const int terms = config.terms.value_or(20);
  if (config.samples > 0 && !config.seed) throw InputError("--samples needs --seed");
  if (config.samples < 0) throw InputError("--samples must be >= 0");

  Table t;
  t.columns = names;
  for (const char* c : {"h_mu", "asc_mu", "int_mu", "method", "n_or_K", "tail_bound", "stderr", "paper_rounded",
                        "provenance"})
    t.columns.push_back(c);
  auto row = [&](double h, double asc, double intr, const std::string& method, long nk, Cell tail, Cell err,
                 const std::string& tag) {
    std::vector<Cell> r;
    for (double p : config.params) r.push_back(number(p));
    if (names.empty()) r.clear();
    for (Cell c : {number(h), number(asc), number(intr), text(method), number(static_cast<double>(nk)), tail, err,
                   text(rounded({{"h_mu", h}, {"asc_mu", asc}, {"int_mu", intr}})), text(tag)})
      r.push_back(c);
    t.rows.push_back(std::move(r));
  };

  const auto series = asc_series_markov(m, terms);
  std::string tag;
  if (!family.empty() && terms == 20) tag = reference::markov_tag(family, config.params).value_or("");
  row(series.entropy, series.asc, series.intricacy, "series", terms, number(series.tail_bound), Cell(), tag);

  const auto coeffs = CoefficientSystem::parse(config.coeffs);
  for (int n : config.n) {
    const auto r = asc_finite(m, coeffs, n, config.threads);
    row(r.entropy_n, r.asc, r.intricacy, "finite", n, Cell(), Cell(), "");
  }
  if (config.samples > 0) {
    const int n = config.n.empty() ? 16 : config.n.front();
    const auto mc = monte_carlo_asc(m, n, config.samples, *config.seed, config.threads);
    row(series.entropy, mc.mean, 2.0 * mc.mean - series.entropy, "mc", n, Cell(), number(mc.stderr_), "");
  }
  emit(t, config, config.output, out);
  return ExitCode::ok;
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  MarkovFamily family = [&] {
    if (!config.input.empty()) return io::parse_family(io::read_text(config.input));
    if (config.family.empty()) throw InputError("sweep needs --family or --input");
    return MarkovFamily::builtin(config.family);
  }();
  const auto objective = parse_objective(config.objective);
  const int terms = config.terms.value_or(20);
  const auto result = sweep(family, objective, config.step, terms, config.threads);
  if (!result.skipped.empty())
    err << "note: " << result.skipped.size() << " grid point(s) skipped (no unique stationary vector or invalid row)\n";

  const auto& names = family.parameter_names();
  if (!config.output.empty()) {
    Table surface;
    surface.columns = names;
    for (const char* c : {"h_mu", "asc_mu", "int_mu", "grid_local_max"}) surface.columns.push_back(c);
    std::vector<bool> is_max(result.grid.size(), false);
    for (auto i : result.grid_maxima) is_max[i] = true;
    for (std::size_t i = 0; i < result.grid.size(); ++i) {
      const auto& g = result.grid[i];
      std::vector<Cell> r;
      for (double x : g.theta) r.push_back(number(x));
      for (Cell c : {number(g.h), number(g.asc), number(g.intricacy), number(is_max[i] ? 1.0 : 0.0)}) r.push_back(c);
      surface.rows.push_back(std::move(r));
    }
    emit(surface, config, config.output, out);
  }

  Table summary;
  summary.columns = {"kind", "objective"};
  for (const auto& n : names) summary.columns.push_back(n);
  for (const char* c : {"value", "h_mu", "asc_mu", "int_mu", "boundary", "converged", "paper_rounded", "provenance"})
    summary.columns.push_back(c);
  auto add = [&](const std::string& kind, const Maximum& m) {
    const auto s = asc_series_markov(family.build(m.theta), terms);
    std::string tag;
    for (const auto& ref : reference::maximizer_rows()) {
      if (ref.family != family.name() || ref.objective != objective || ref.theta.size() != m.theta.size()) continue;
      bool close = true;
      for (std::size_t i = 0; i < m.theta.size(); ++i) close = close && std::abs(ref.theta[i] - m.theta[i]) <= 0.01;
      if (close) tag = ref.tag;
    }
    std::vector<Cell> r{text(kind), text(to_string(objective))};
    for (double x : m.theta) r.push_back(number(x));
    for (Cell c : {number(m.value), number(s.entropy), number(s.asc), number(s.intricacy),
                   number(m.boundary ? 1.0 : 0.0), number(m.converged ? 1.0 : 0.0)})
      r.push_back(c);
    std::vector<std::pair<std::string, double>> rv;
    for (std::size_t i = 0; i < names.size(); ++i) rv.emplace_back(names[i], m.theta[i]);
    rv.emplace_back("value", m.value);
    r.push_back(text(rounded(rv)));
    r.push_back(text(tag));
    summary.rows.push_back(std::move(r));
  };
  add("best", result.best);
  for (const auto& m : result.local_maxima) add("local_max", m);
  emit(summary, config, "", out);
  return ExitCode::ok;
}

int run_check(const RunConfig& config, std::ostream& out) {
  const auto report = run_checks(config.suite, config.max_n, config.threads);
  Table t;
  t.columns = {"suite", "property", "passed", "total", "status", "first_failure"};
  for (const auto& r : report.results)
    t.rows.push_back({text(r.suite), text(r.property), number(static_cast<double>(r.passed)),
                      number(static_cast<double>(r.total)), text(r.ok() ? "pass" : "FAIL"), text(r.first_failure)});
  emit(t, config, config.output, out);
  return report.passed() ? ExitCode::ok : ExitCode::check_failed;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    for (const auto& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        cells.push_back(format_sig(*d));
      } else if (const std::string* s = std::get_if<std::string>(&c)) {
        cells.push_back(*s);
      } else {
        cells.emplace_back();
      }
    }
    line(cells);
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.columns.size() && i < row.size(); ++i) {
      const auto& c = row[i];
      if (const double* d = std::get_if<double>(&c)) {
        obj[table.columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(std::stod(format_sig(*d))) : nullptr;
      } else if (const std::string* s = std::get_if<std::string>(&c)) {
        obj[table.columns[i]] = *s;
      } else {
        obj[table.columns[i]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

std::variant<RunConfig, int> parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Average sample complexity, intricacy and pressure for shifts of finite type"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  int terms = 0;
  std::vector<CLI::Option*> seed_options;
  std::vector<CLI::Option*> terms_options;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", config.threads, "worker threads (0 = available parallelism)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--output", config.output, "write the table to this file instead of stdout");
    sub->add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto horizon = [&](CLI::App* sub) {
    sub->add_option("--n", config.n, "horizon(s), comma separated")->delimiter(',')->check(CLI::PositiveNumber);
    sub->add_option("--coeffs", config.coeffs, "uniform | neural | psym:<p> | measure:<x>=<m>,...[;lebesgue=<m>]");
  };

  auto* topo = app.add_subcommand("topo", "finite-n Asc, Int, Acc, Alt for a shift of finite type");
  topo->add_option("--input", config.input, "shift JSON file")->required();
  topo->add_option("--block-k", config.block_k, "join width of the cylinder cover")->check(CLI::NonNegativeNumber);
  terms_options.push_back(topo->add_option("--terms", terms, "also emit the series value with this many terms")
                              ->check(CLI::PositiveNumber));
  horizon(topo);
  common(topo);

  auto* pressure = app.add_subcommand("pressure", "average sample pressure for a single-coordinate potential");
  pressure->add_option("--input", config.input, "shift JSON file")->required();
  pressure->add_option("--potential", config.potential, "potential JSON file")->required();
  horizon(pressure);
  common(pressure);

  auto* markov = app.add_subcommand("markov", "entropy, Asc and Int of a Markov measure");
  markov->add_option("--input", config.input, "Markov JSON file");
  markov->add_option("--family", config.family, "full2-1step | gms-1step | gms-2step");
  markov->add_option("--param", config.params, "family parameter (repeat per parameter)")->take_all()->allow_extra_args(false);
  terms_options.push_back(markov->add_option("--terms", terms, "series terms (default 20)")->check(CLI::PositiveNumber));
  markov->add_option("--samples", config.samples, "Monte Carlo samples")->check(CLI::NonNegativeNumber);
  seed_options.push_back(markov->add_option("--seed", seed, "Monte Carlo seed"));
  horizon(markov);
  common(markov);

  auto* sweep_cmd = app.add_subcommand("sweep", "grid scan and refinement of a Markov family");
  sweep_cmd->add_option("--family", config.family, "full2-1step | gms-1step | gms-2step");
  sweep_cmd->add_option("--input", config.input, "custom family JSON file");
  sweep_cmd->add_option("--objective", config.objective, "h | asc | int")->check(CLI::IsMember({"h", "asc", "int"}));
  sweep_cmd->add_option("--step", config.step, "grid step (default 0.005)");
  terms_options.push_back(sweep_cmd->add_option("--terms", terms, "series terms (default 20)")->check(CLI::PositiveNumber));
  common(sweep_cmd);

  auto* check = app.add_subcommand("check", "run oracle and property suites");
  check->add_option("--suite", config.suite, "all or one suite name");
  check->add_option("--max-n", config.max_n, "largest subset horizon")->check(CLI::PositiveNumber);
  common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::bad_input;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  for (auto* o : seed_options)
    if (o->count() > 0) config.seed = seed;
  for (auto* o : terms_options)
    if (o->count() > 0) config.terms = terms;
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.subcommand == "topo") return run_topo(config, out);
  if (config.subcommand == "pressure") return run_pressure(config, out);
  if (config.subcommand == "markov") return run_markov(config, out);
  if (config.subcommand == "sweep") return run_sweep(config, out, err);
  if (config.subcommand == "check") return run_check(config, out);
  throw InputError("unknown subcommand " + config.subcommand);
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    auto parsed = parse(argc, argv, out, err);
    if (const int* code = std::get_if<int>(&parsed)) return *code;
    return run(std::get<RunConfig>(parsed), out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::bad_input;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::cap_exceeded;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::cap_exceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::bad_input;
  }
}

}  // namespace intricacy::cli
