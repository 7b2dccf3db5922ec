#include "qdiv/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace qdiv::cli {
namespace {

using nlohmann::json;

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(std::string(what) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

engine::Family parse_family(const std::string& name) {
  if (name == "pauli") return engine::Family::pauli;
  if (name == "gpc") return engine::Family::gpc;
  if (name == "phasecov") return engine::Family::phasecov;
  throw ConfigError("unknown family '" + name + "' (expected pauli, gpc, phasecov)");
}

int expected_rate_count(const RunConfig& cfg) {
  return cfg.family == engine::Family::gpc ? cfg.d + 1 : 3;
}

double resolve_param(const std::string& name,
                     const std::map<std::string, double>& params) {
  const auto it = params.find(name);
  if (it == params.end())
    throw ConfigError("rate references unknown parameter '" + name + "'");
  return it->second;
}

std::string verdict_field(Verdict v) { return to_string(v); }

std::string join_fired(const std::vector<std::string>& fired) {
  std::string out;
  for (std::size_t i = 0; i < fired.size(); ++i) {
    if (i) out += ';';
    out += fired[i];
  }
  return out;
}

}  // namespace

RateFunction parse_rate_spec(const json& spec,
                             const std::map<std::string, double>& params) {
  if (spec.is_number()) return RateFunction::constant(spec.get<double>());
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (!s.empty() && s.front() == '$')
      return RateFunction::constant(resolve_param(s.substr(1), params));
    throw ConfigError("string rate spec must be a '$parameter' reference");
  }
  if (!spec.is_object() || !spec.contains("kind"))
    throw ConfigError("rate spec must be a number, '$param' string, or object with 'kind'");
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "constant") return RateFunction::constant(spec.at("value").get<double>());
  if (kind == "param")
    return RateFunction::constant(resolve_param(spec.at("name").get<std::string>(), params));
  if (kind == "piecewise")
    return RateFunction::piecewise_constant(
        number_array(spec.at("breakpoints"), "breakpoints"),
        number_array(spec.at("values"), "values"));
  if (kind == "polynomial")
    return RateFunction::polynomial(number_array(spec.at("coeffs"), "coeffs"));
  if (kind == "tanh")
    return RateFunction::tanh_profile(spec.at("a").get<double>(),
                                      spec.at("b").get<double>(),
                                      spec.value("c", 0.0));
  if (kind == "sampled")
    return RateFunction::sampled(number_array(spec.at("times"), "times"),
                                 number_array(spec.at("values"), "values"));
  throw ConfigError("unknown rate kind '" + kind + "'");
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  if (!doc.contains("family")) throw ConfigError("config needs a 'family' field");
  cfg.family = parse_family(doc.at("family").get<std::string>());
  if (cfg.family == engine::Family::gpc) {
    if (!doc.contains("d")) throw ConfigError("gpc config needs the dimension 'd'");
    cfg.d = doc.at("d").get<int>();
    if (!MubFamily::supported_dimension(cfg.d))
      throw ConfigError("no maximal MUB construction available for d = " +
                        std::to_string(cfg.d));
  }
  if (!doc.contains("rates")) throw ConfigError("config needs a 'rates' array");
  if (!doc.at("rates").is_array()) throw ConfigError("'rates' must be an array");
  for (const auto& spec : doc.at("rates")) cfg.rate_specs.push_back(spec);
  const int expected = expected_rate_count(cfg);
  if (static_cast<int>(cfg.rate_specs.size()) != expected)
    throw ConfigError("family needs " + std::to_string(expected) + " rates, got " +
                      std::to_string(cfg.rate_specs.size()));

  cfg.horizon = doc.value("horizon", 1.0);
  if (!(cfg.horizon > 0.0)) throw ConfigError("horizon must be positive");
  cfg.grid_n = doc.value("grid", 201);
  if (cfg.grid_n < 2) throw ConfigError("grid must have at least 2 points");
  if (doc.contains("tolerances")) {
    const json& tols = doc.at("tolerances");
    cfg.cert_tol = tols.value("certificate", cfg.cert_tol);
    cfg.psd_tol = tols.value("psd", cfg.psd_tol);
    cfg.quad_tol = tols.value("quadrature", cfg.quad_tol);
  }
  cfg.oracles = doc.value("oracles", true);
  cfg.seed = doc.value("seed", std::uint64_t{1});
  if (doc.contains("parameters")) {
    for (const auto& [key, value] : doc.at("parameters").items()) {
      if (!value.is_number()) throw ConfigError("parameter values must be numbers");
      cfg.parameters[key] = value.get<double>();
    }
  }
  if (doc.contains("sweep")) {
    const json& sweep = doc.at("sweep");
    if (!sweep.contains("parameters") || !sweep.at("parameters").is_array())
      throw ConfigError("sweep block needs a 'parameters' array");
    for (const auto& p : sweep.at("parameters")) {
      SweepParameter sp;
      sp.name = p.at("name").get<std::string>();
      sp.min = p.at("min").get<double>();
      sp.max = p.at("max").get<double>();
      sp.steps = p.at("steps").get<int>();
      if (sp.steps < 1) throw ConfigError("sweep parameter needs steps >= 1");
      if (sp.steps > 1 && !(sp.max > sp.min))
        throw ConfigError("sweep parameter needs max > min");
      cfg.sweep.push_back(std::move(sp));
    }
  }
  if (doc.contains("output")) {
    const json& out = doc.at("output");
    cfg.out_json = out.value("json", cfg.out_json);
    cfg.out_csv = out.value("csv", cfg.out_csv);
    cfg.out_sweep_csv = out.value("sweep_csv", cfg.out_sweep_csv);
  }

  // Validate rate specs resolve with the declared parameters (sweep
  // parameters get a placeholder value during validation).
  std::map<std::string, double> probe = cfg.parameters;
  for (const SweepParameter& sp : cfg.sweep) probe.emplace(sp.name, sp.min);
  for (const auto& spec : cfg.rate_specs) (void)parse_rate_spec(spec, probe);
  return cfg;
}

nlohmann::json config_echo(const RunConfig& cfg) {
  json doc;
  doc["family"] = engine::to_string(cfg.family);
  if (cfg.family == engine::Family::gpc) doc["d"] = cfg.d;
  doc["rates"] = cfg.rate_specs;
  doc["horizon"] = cfg.horizon;
  doc["grid"] = cfg.grid_n;
  doc["tolerances"] = {{"certificate", cfg.cert_tol},
                       {"psd", cfg.psd_tol},
                       {"quadrature", cfg.quad_tol}};
  doc["oracles"] = cfg.oracles;
  doc["seed"] = cfg.seed;
  if (!cfg.parameters.empty()) doc["parameters"] = cfg.parameters;
  if (!cfg.sweep.empty()) {
    json params = json::array();
    for (const SweepParameter& sp : cfg.sweep)
      params.push_back({{"name", sp.name}, {"min", sp.min}, {"max", sp.max},
                        {"steps", sp.steps}});
    doc["sweep"] = {{"parameters", params}};
  }
  doc["output"] = {{"json", cfg.out_json},
                   {"csv", cfg.out_csv},
                   {"sweep_csv", cfg.out_sweep_csv}};
  return doc;
}

engine::GeneratorSpec build_generator(const RunConfig& cfg,
                                      const std::map<std::string, double>& params) {
  std::vector<RateFunction> rates;
  rates.reserve(cfg.rate_specs.size());
  for (const auto& spec : cfg.rate_specs) rates.push_back(parse_rate_spec(spec, params));
  switch (cfg.family) {
    case engine::Family::pauli:
      return engine::GeneratorSpec::make_pauli(
          {std::move(rates[0]), std::move(rates[1]), std::move(rates[2])});
    case engine::Family::gpc:
      return engine::GeneratorSpec::make_gpc(cfg.d, std::move(rates));
    case engine::Family::phasecov:
      return engine::GeneratorSpec::make_phasecov(
          {std::move(rates[0]), std::move(rates[1]), std::move(rates[2])});
  }
  throw std::logic_error("unreachable");
}

RunOutputs run(const RunConfig& cfg) {
  std::vector<double> grid(static_cast<std::size_t>(cfg.grid_n));
  for (int i = 0; i < cfg.grid_n; ++i)
    grid[static_cast<std::size_t>(i)] = cfg.horizon * i / (cfg.grid_n - 1);

  engine::TimelineOptions options;
  options.cert_tol = cfg.cert_tol;
  options.psd_tol = cfg.psd_tol;
  options.quad_tol = cfg.quad_tol;
  options.oracles = cfg.oracles;
  options.seed = cfg.seed;

  std::map<std::string, double> base = cfg.parameters;
  for (const SweepParameter& sp : cfg.sweep) base.emplace(sp.name, sp.min);

  RunOutputs outputs{engine::classify_timeline(build_generator(cfg, base), grid, options),
                     std::nullopt};
  if (cfg.sweep.empty()) return outputs;

  SweepResult sweep;
  for (const SweepParameter& sp : cfg.sweep) sweep.parameter_names.push_back(sp.name);
  engine::TimelineOptions cell_options = options;
  cell_options.oracles = false;  // certificate-only cells keep sweeps cheap

  std::vector<int> idx(cfg.sweep.size(), 0);
  while (true) {
    std::map<std::string, double> params = cfg.parameters;
    std::vector<double> values;
    for (std::size_t k = 0; k < cfg.sweep.size(); ++k) {
      const SweepParameter& sp = cfg.sweep[k];
      const double v = sp.steps == 1
                           ? sp.min
                           : sp.min + (sp.max - sp.min) * idx[k] / (sp.steps - 1);
      params[sp.name] = v;
      values.push_back(v);
    }
    const auto report =
        engine::classify_timeline(build_generator(cfg, params), grid, cell_options);
    SweepCell cell;
    cell.values = std::move(values);
    cell.cp = report.summary_cp;
    cell.p = report.summary_p;
    cell.d = report.summary_d;
    cell.fired = report.points.front().fired;
    sweep.cells.push_back(std::move(cell));

    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < cfg.sweep[k].steps) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  outputs.sweep = std::move(sweep);
  return outputs;
}

nlohmann::json report_json(const engine::DivisibilityReport& report,
                           const RunConfig& cfg) {
  json points = json::array();
  for (const auto& p : report.points)
    points.push_back({{"t", p.t},
                      {"rates", p.rates},
                      {"cp", verdict_field(p.cp)},
                      {"p", verdict_field(p.p)},
                      {"d", verdict_field(p.d)},
                      {"fired", p.fired},
                      {"invertible", p.invertible}});
  json oracles = json::array();
  for (const auto& o : report.oracles) {
    json rec = {{"s", o.s},
                {"t", o.t},
                {"adjacent", o.adjacent},
                {"cp_oracle", o.cp_oracle},
                {"cp_rate", verdict_field(o.cp_rate)},
                {"cp_agreement", engine::to_string(o.cp_agreement)}};
    if (o.has_positivity) {
      rec["positivity_oracle"] = o.positivity_oracle;
      rec["p_rate"] = verdict_field(o.p_rate);
      rec["p_agreement"] = engine::to_string(o.p_agreement);
    }
    oracles.push_back(std::move(rec));
  }
  using engine::OracleAgreement;
  return {{"version", "0.1.0"},
          {"config", config_echo(cfg)},
          {"family", report.family},
          {"dim", report.dim},
          {"seed", report.seed},
          {"summary",
           {{"cp", verdict_field(report.summary_cp)},
            {"p", verdict_field(report.summary_p)},
            {"d", verdict_field(report.summary_d)}}},
          {"hierarchy_ok", report.hierarchy_ok},
          {"first_indeterminate", report.first_indeterminate},
          {"points", points},
          {"oracle_samples", oracles},
          {"oracle_counts",
           {{"agree", report.oracle_count(OracleAgreement::agree)},
            {"disagree", report.oracle_count(OracleAgreement::disagree)},
            {"boundary", report.oracle_count(OracleAgreement::boundary)},
            {"skipped", report.oracle_count(OracleAgreement::skipped)}}}};
}

std::string timeline_csv(const engine::DivisibilityReport& report) {
  std::string out = "t,cp,p,d,fired_certificates\n";
  for (const auto& p : report.points) {
    out += format_number(p.t);
    out += ',';
    out += verdict_field(p.cp);
    out += ',';
    out += verdict_field(p.p);
    out += ',';
    out += verdict_field(p.d);
    out += ',';
    out += join_fired(p.fired);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out;
  for (const auto& name : sweep.parameter_names) {
    out += name;
    out += ',';
  }
  out += "cp,p,d,fired_certificates\n";
  for (const auto& cell : sweep.cells) {
    for (double v : cell.values) {
      out += format_number(v);
      out += ',';
    }
    out += verdict_field(cell.cp);
    out += ',';
    out += verdict_field(cell.p);
    out += ',';
    out += verdict_field(cell.d);
    out += ',';
    out += join_fired(cell.fired);
    out += '\n';
  }
  return out;
}

void emit_report(const RunOutputs& outputs, const RunConfig& cfg,
                 const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream f(fs::path(out_dir) / cfg.out_json, std::ios::binary);
    f << report_json(outputs.report, cfg).dump(2) << '\n';
  }
  {
    std::ofstream f(fs::path(out_dir) / cfg.out_csv, std::ios::binary);
    f << timeline_csv(outputs.report);
  }
  if (outputs.sweep) {
    std::ofstream f(fs::path(out_dir) / cfg.out_sweep_csv, std::ios::binary);
    f << sweep_csv(*outputs.sweep);
  }
}

}  // namespace qdiv::cli
