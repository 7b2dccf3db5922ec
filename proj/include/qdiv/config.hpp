#ifndef QDIV_CONFIG_HPP
#define QDIV_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdiv/engine.hpp"
#include "qdiv/rates.hpp"
#include "qdiv/types.hpp"

#include "json.hpp"

namespace qdiv::cli {

struct SweepParameter {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  bool operator==(const SweepParameter&) const = default;
};

/// Validated run description. Rate specs stay in their JSON form so sweep
/// parameters can be substituted per cell.
struct RunConfig {
  engine::Family family = engine::Family::pauli;
  int d = 2;  // gpc dimension
  std::vector<nlohmann::json> rate_specs;
  double horizon = 1.0;
  int grid_n = 201;
  double cert_tol = defaults::cert_tol;
  double psd_tol = 1e-9;
  double quad_tol = defaults::quad_tol;
  bool oracles = true;
  std::uint64_t seed = 1;
  std::map<std::string, double> parameters;  // fixed values for $name refs
  std::vector<SweepParameter> sweep;
  std::string out_json = "report.json";
  std::string out_csv = "timeline.csv";
  std::string out_sweep_csv = "sweep.csv";

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON config document; fills defaults
/// (grid 201, psd tolerance 1e-9, oracles on). Throws ConfigError.
RunConfig parse_config(const std::string& text);

/// Canonical JSON echo of a config; parse_config(config_echo(c).dump())
/// round-trips.
nlohmann::json config_echo(const RunConfig& cfg);

/// Builds one rate function from its spec, substituting "$name" / param
/// references from `params`. Throws ConfigError on malformed specs.
RateFunction parse_rate_spec(const nlohmann::json& spec,
                             const std::map<std::string, double>& params);

/// Generator for the given parameter assignment.
engine::GeneratorSpec build_generator(const RunConfig& cfg,
                                      const std::map<std::string, double>& params);

struct SweepCell {
  std::vector<double> values;
  Verdict cp = Verdict::unknown;
  Verdict p = Verdict::unknown;
  Verdict d = Verdict::unknown;
  std::vector<std::string> fired;
};

struct SweepResult {
  std::vector<std::string> parameter_names;
  std::vector<SweepCell> cells;
};

struct RunOutputs {
  engine::DivisibilityReport report;
  std::optional<SweepResult> sweep;
};

/// Runs the timeline classification (and the sweep when configured).
/// Deterministic for a fixed config and seed.
RunOutputs run(const RunConfig& cfg);

/// Writes report.json, timeline.csv and (when present) sweep.csv into
/// out_dir. CSV uses '.' decimals, 12 significant digits, LF endings.
void emit_report(const RunOutputs& outputs, const RunConfig& cfg,
                 const std::string& out_dir);

nlohmann::json report_json(const engine::DivisibilityReport& report,
                           const RunConfig& cfg);
std::string timeline_csv(const engine::DivisibilityReport& report);
std::string sweep_csv(const SweepResult& sweep);

}  // namespace qdiv::cli

#endif  // QDIV_CONFIG_HPP
