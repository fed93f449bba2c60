#include "tscarma/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <locale>
#include <set>
#include <sstream>

#include "tscarma/carmasim.hpp"
#include "tscarma/csv.hpp"
#include "tscarma/errors.hpp"
#include "tscarma/mcharness.hpp"
#include "tscarma/moments.hpp"

namespace tscarma::cli {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError((path.empty() ? key : path + "." + key) + ": unknown key");
    }
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key) + ": missing required key");
  return *it;
}

double as_real(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
  return x;
}

std::int64_t as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw ConfigError(where + ": integer out of range");
  }
  return v.get<std::int64_t>();
}

std::uint64_t as_u64(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ConfigError(where + ": expected a non-negative integer");
}

double real_key(const json& obj, const std::string& key, const std::string& path) {
  return as_real(require(obj, key, path), join(path, key));
}

std::vector<double> real_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_real(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

FamilyParams parse_model(const json& m) {
  const std::string path = "model";
  if (!m.is_object()) throw ConfigError("model: expected an object");
  const json& fam = require(m, "family", path);
  if (!fam.is_string()) throw ConfigError("model.family: expected a string");
  const std::string family = fam.get<std::string>();

  const double alpha = real_key(m, "alpha", path);
  if (!(alpha > 0.0 && alpha < 2.0)) throw ConfigError("model.alpha: must lie in (0, 2)");
  const double p = real_key(m, "p", path);
  if (!(p > 0.0)) throw ConfigError("model.p: must be > 0");

  FamilyParams out;
  if (family == "ptss") {
    reject_unknown(m, {"family", "alpha", "p", "delta", "lambda"}, path);
    out = PTSSParams{alpha, p, real_key(m, "delta", path), real_key(m, "lambda", path)};
  } else if (family == "pcts") {
    reject_unknown(m, {"family", "alpha", "p", "delta_plus", "delta_minus", "lambda_plus", "lambda_minus"}, path);
    out = PCTSParams{alpha,
                     p,
                     real_key(m, "delta_plus", path),
                     real_key(m, "delta_minus", path),
                     real_key(m, "lambda_plus", path),
                     real_key(m, "lambda_minus", path)};
  } else if (family == "pgts") {
    reject_unknown(m, {"family", "alpha", "p", "beta", "lambda"}, path);
    out = PGTSParams{alpha, p, real_key(m, "beta", path), real_key(m, "lambda", path)};
  } else {
    throw ConfigError("model.family: must be one of ptss, pcts, pgts");
  }
  try {
    std::visit(
        [](const auto& params) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(params)>, std::monostate>) validate_params(params);
        },
        out);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return out;
}

CarmaSpec parse_carma(const json& c) {
  if (!c.is_object()) throw ConfigError("carma: expected an object");
  reject_unknown(c, {"a", "b"}, "carma");
  CarmaSpec spec{real_array(require(c, "a", "carma"), "carma.a"), real_array(require(c, "b", "carma"), "carma.b")};
  if (!spec.b.empty() && spec.b.back() != 1.0) {
    throw ConfigError("carma.b: last entry must be 1 (b_q = 1)");
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::validation) throw;
    throw ConfigError(e.what());
  }
  return spec;
}

json model_to_json(const FamilyParams& model) {
  ordered_json out;
  if (const auto* q = std::get_if<PTSSParams>(&model)) {
    out = {{"family", "ptss"}, {"alpha", q->alpha}, {"p", q->p}, {"delta", q->delta}, {"lambda", q->lambda}};
  } else if (const auto* q = std::get_if<PCTSParams>(&model)) {
    out = {{"family", "pcts"},           {"alpha", q->alpha},
           {"p", q->p},                  {"delta_plus", q->delta_plus},
           {"delta_minus", q->delta_minus}, {"lambda_plus", q->lambda_plus},
           {"lambda_minus", q->lambda_minus}};
  } else if (const auto* q = std::get_if<PGTSParams>(&model)) {
    out = {{"family", "pgts"}, {"alpha", q->alpha}, {"p", q->p}, {"beta", q->beta}, {"lambda", q->lambda}};
  } else {
    throw ConfigError("model: no family set");
  }
  return out;
}

Scheme pick_scheme(const RunConfig& c, const TemperingModel& model) {
  if (c.scheme.empty()) return default_scheme(model);
  return c.scheme == "subordinator" ? Scheme::subordinator : Scheme::general;
}

SeriesConfig series_config(const RunConfig& c) {
  SeriesConfig s;
  s.T = c.T;
  s.kappa = c.kappa;
  s.n = c.n;
  s.seed = c.seed;
  s.allow_case_ii = c.allow_case_ii;
  return s;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + csv::format(v[i], 12);
  return s;
}

struct Outputs {
  std::string main;
  std::string hist;
  std::string box;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw ValidationError("failed writing output file '" + path + "'");
}

std::ostringstream classic_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  return os;
}

Outputs run_validate(const RunConfig& c) {
  const TemperingModel model = build_model(c);
  const CarmaDecomposition d = validate(c.carma);
  const KernelIntegrals ki = kernel_integrals(d);
  auto os = classic_stream();
  os << "model: " << model.name() << " alpha=" << csv::format(model.alpha(), 12)
     << " p=" << csv::format(model.p(), 12) << " sigma_mass=" << csv::format(model.sigma_mass(), 12)
     << " subordinator=" << (model.is_subordinator() ? "true" : "false") << '\n';
  os << "lambda: " << list(d.lambdas) << '\n';
  os << "residues: " << list(d.residues) << '\n';
  os << "nonnegative_kernel: " << (d.nonnegative_kernel ? "true" : "false") << '\n';
  os << "int_g: " << csv::format(ki.int_g, 12) << '\n';
  os << "int_g2: " << csv::format(ki.int_g2, 12) << '\n';
  return {os.str(), {}, {}};
}

Outputs run_simulate(const RunConfig& c, std::ostream& err) {
  const TemperingModel model = build_model(c);
  const PathSimulator sim(model, c.carma, series_config(c), pick_scheme(c, model));
  if (sim.kernel_warning()) err << "warning: kernel is not non-negative; paths may go negative\n";
  auto os = classic_stream();
  write_path_csv(os, sim.simulate(uniform_grid(c.T, c.grid_step), 0));
  return {os.str(), {}, {}};
}

void add_summaries(Outputs& o, const std::vector<double>& samples, int bins) {
  auto h = classic_stream();
  write_histogram_csv(h, make_histogram(samples, bins));
  auto b = classic_stream();
  write_boxplot_csv(b, make_boxplot(samples));
  o.hist = h.str();
  o.box = b.str();
}

Outputs run_mc_table(const RunConfig& c, int jobs, bool full) {
  const TemperingModel model = build_model(c);
  const std::int64_t reps = full ? c.full_replications : c.replications;
  const AccuracyReport rep = run_accuracy_experiment(model, c.carma, series_config(c), effective_times(c), reps,
                                                     jobs, pick_scheme(c, model), {});
  auto os = classic_stream();
  write_report_csv(os, rep);
  Outputs o{os.str(), {}, {}};
  add_summaries(o, rep.samples.back(), c.bins);
  return o;
}

Outputs run_iid(const RunConfig& c, int jobs) {
  const TemperingModel model = build_model(c);
  const AccuracyReport rep = run_iid_experiment(model, c.n, c.sample_size, c.seed, jobs, c.allow_case_ii);
  auto os = classic_stream();
  write_report_csv(os, rep);
  Outputs o{os.str(), {}, {}};
  add_summaries(o, rep.samples.front(), c.bins);
  return o;
}

Outputs run_moments(const RunConfig& c) {
  const TemperingModel model = build_model(c);
  auto os = classic_stream();
  os << "n,m1_n,m2_n,m1,m2,sigma_n_sq\n";
  for (std::int64_t n : c.n_values) {
    const TruncatedMoments tm = truncated_moments(model, n);
    os << n << ',';
    csv::write_row(os, {tm.m1_n, tm.m2_n, tm.m1, tm.m2, tm.sigma_n_sq}, 12);
  }
  return {os.str(), {}, {}};
}

Outputs run_error_bound(const RunConfig& c) {
  const TemperingModel model = build_model(c);
  const CarmaDecomposition d = validate(c.carma);
  const Scheme scheme = pick_scheme(c, model);
  auto os = classic_stream();
  os << "t,bound,c1,c2,c3,c4\n";
  for (double t : uniform_grid(c.T, c.grid_step)) {
    const ErrorBound eb = error_bound(model, d, c.n, c.kappa, t, scheme);
    csv::write_row(os, {eb.t, eb.bound, eb.c1, eb.c2, eb.c3, eb.c4}, 17);
  }
  return {os.str(), {}, {}};
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::validation:
    case ErrorKind::unsupported:
      return 2;
    case ErrorKind::numeric:
      return 3;
  }
  return 3;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root,
                 {"model", "carma", "T", "kappa", "n", "seed", "grid_step", "output_path", "times", "replications",
                  "full_replications", "sample_size", "bins", "n_values", "scheme", "allow_case_ii"},
                 "");

  RunConfig c;
  c.model = parse_model(require(root, "model", ""));
  c.carma = parse_carma(require(root, "carma", ""));
  c.T = real_key(root, "T", "");
  if (!(c.T > 0.0)) throw ConfigError("T: must be > 0");
  c.kappa = real_key(root, "kappa", "");
  if (!(c.kappa >= 0.0)) throw ConfigError("kappa: must be >= 0");
  c.n = as_int(require(root, "n", ""), "n");
  if (c.n < 1) throw ConfigError("n: must be >= 1");
  c.grid_step = real_key(root, "grid_step", "");
  if (!(c.grid_step > 0.0)) throw ConfigError("grid_step: must be > 0");
  try {
    uniform_grid(c.T, c.grid_step);
  } catch (const ValidationError&) {
    throw ConfigError("grid_step: must divide T");
  }
  if (root.contains("seed")) c.seed = as_u64(root["seed"], "seed");
  if (root.contains("output_path")) {
    if (!root["output_path"].is_string()) throw ConfigError("output_path: expected a string");
    c.output_path = root["output_path"].get<std::string>();
  }
  if (root.contains("times")) {
    c.times = real_array(root["times"], "times");
    for (double t : c.times) {
      if (!(t >= 0.0 && t <= c.T)) throw ConfigError("times: entries must lie in [0, T]");
    }
  }
  auto positive_int = [&](const char* key, std::int64_t& dst, std::int64_t min) {
    if (!root.contains(key)) return;
    dst = as_int(root[key], key);
    if (dst < min) throw ConfigError(std::string(key) + ": must be >= " + std::to_string(min));
  };
  positive_int("replications", c.replications, 2);
  positive_int("full_replications", c.full_replications, 2);
  positive_int("sample_size", c.sample_size, 2);
  std::int64_t bins = c.bins;
  positive_int("bins", bins, 1);
  if (bins > 1000000) throw ConfigError("bins: must be <= 1000000");
  c.bins = static_cast<int>(bins);
  if (root.contains("n_values")) {
    const json& v = root["n_values"];
    if (!v.is_array() || v.empty()) throw ConfigError("n_values: expected a non-empty array");
    c.n_values.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string where = "n_values[" + std::to_string(i) + "]";
      const std::int64_t n = as_int(v[i], where);
      if (n < 1) throw ConfigError(where + ": must be >= 1");
      c.n_values.push_back(n);
    }
  }
  if (root.contains("scheme")) {
    if (!root["scheme"].is_string()) throw ConfigError("scheme: expected a string");
    c.scheme = root["scheme"].get<std::string>();
    if (c.scheme != "general" && c.scheme != "subordinator") {
      throw ConfigError("scheme: must be 'general' or 'subordinator'");
    }
    if (c.scheme == "subordinator" && !build_model(c).is_subordinator()) {
      throw ConfigError("scheme: subordinator scheme requires a subordinator model");
    }
  }
  if (root.contains("allow_case_ii")) {
    if (!root["allow_case_ii"].is_boolean()) throw ConfigError("allow_case_ii: expected a boolean");
    c.allow_case_ii = root["allow_case_ii"].get<bool>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  ordered_json out;
  out["model"] = model_to_json(c.model);
  out["carma"] = {{"a", c.carma.a}, {"b", c.carma.b}};
  out["T"] = c.T;
  out["kappa"] = c.kappa;
  out["n"] = c.n;
  out["seed"] = c.seed;
  out["grid_step"] = c.grid_step;
  out["output_path"] = c.output_path;
  out["times"] = c.times;
  out["replications"] = c.replications;
  out["full_replications"] = c.full_replications;
  out["sample_size"] = c.sample_size;
  out["bins"] = c.bins;
  out["n_values"] = c.n_values;
  if (!c.scheme.empty()) out["scheme"] = c.scheme;
  out["allow_case_ii"] = c.allow_case_ii;
  return out.dump(2) + "\n";
}

TemperingModel build_model(const RunConfig& c) {
  if (const auto* q = std::get_if<PTSSParams>(&c.model)) return make_ptss(*q);
  if (const auto* q = std::get_if<PCTSParams>(&c.model)) return make_pcts(*q);
  if (const auto* q = std::get_if<PGTSParams>(&c.model)) return make_pgts(*q);
  throw ConfigError("model: no family set");
}

std::vector<double> effective_times(const RunConfig& c) {
  if (!c.times.empty()) return c.times;
  std::vector<double> t{std::min(1.0, c.T), c.T};
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

bool deterministic_env() {
  for (const char* name : {"TOOL_DETERMINISTIC", "TSCARMA_DETERMINISTIC"}) {
    const char* v = std::getenv(name);
    if (v && std::string(v) == "1") return true;
  }
  return false;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tempered stable CARMA simulation", "tscarma"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool full = false;
  std::string out_path;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "Check model and CARMA spec, print the decomposition"},
      {"simulate", "Simulate one path on the configured grid"},
      {"mc-table", "Monte Carlo accuracy of path means and variances"},
      {"iid", "i.i.d. draws of the truncated series over a unit window"},
      {"moments", "Truncated moments over the configured n values"},
      {"error-bound", "Mean-square error bound over the configured grid"}};
  std::vector<CLI::App*> subs;
  std::vector<CLI::Option*> seed_opts;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    seed_opts.push_back(sub->add_option("--seed", seed, "Master seed (overrides the config)"));
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--full", full, "Full-scale replication counts");
    sub->add_option("--out", out_path, "Output path (default: config output_path, else stdout)");
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  }

  std::size_t which = 0;
  for (; which < subs.size(); ++which) {
    if (subs[which]->parsed()) break;
  }
  const std::string command = commands[which].first;

  try {
    RunConfig c = load_config(config_path);
    if (seed_opts[which]->count() > 0) c.seed = seed;
    if (deterministic_env()) jobs = 1;
    if (!out_path.empty()) c.output_path = out_path;

    Outputs o;
    if (command == "validate") {
      o = run_validate(c);
    } else if (command == "simulate") {
      o = run_simulate(c, err);
    } else if (command == "mc-table") {
      o = run_mc_table(c, jobs, full);
    } else if (command == "iid") {
      o = run_iid(c, jobs);
    } else if (command == "moments") {
      o = run_moments(c);
    } else {
      o = run_error_bound(c);
    }

    if (c.output_path.empty()) {
      out << o.main;
    } else {
      write_file(c.output_path, o.main);
      if (!o.hist.empty()) write_file(c.output_path + ".hist.csv", o.hist);
      if (!o.box.empty()) write_file(c.output_path + ".box.csv", o.box);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace tscarma::cli
