#include "bifid/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bifid/presets.hpp"

namespace bifid {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected) {
  throw ConfigError("invalid value '" + value + "' for key '" + key + "': expected " + expected);
}

double parse_number(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(begin, &end);
  if (value.empty() || end != begin + value.size() || errno == ERANGE || !std::isfinite(x)) {
    bad_value(key, value, "a finite number");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_number(key, value);
  if (x != std::floor(x) || std::abs(x) > 1e9) bad_value(key, value, "an integer");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

template <typename E>
E parse_enum(const std::string& key, const std::string& value, std::initializer_list<std::pair<const char*, E>> options) {
  std::string names;
  for (const auto& [name, e] : options) {
    if (value == name) return e;
    names += names.empty() ? "" : ", ";
    names += name;
  }
  bad_value(key, value, "one of " + names);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(key, item));
  }
  return out;
}

}  // namespace

std::vector<std::string> known_config_keys() {
  return {"preset",         "model",         "epsilon",         "dt",           "t_final",         "gamma_max",
          "delta",          "mode",          "diagnostics",     "diagnostics.every", "stepper",      "velocity.points",
          "velocity.half_width", "space.cells", "space.left",    "space.right",  "space.bc",        "potential.form",
          "kernel.b0",      "kernel.form",   "transport.order", "output.snapshots", "test3.unit_domain"};
}

ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(key, value);
  }
  return out;
}

ConfigEntries read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "preset") {
    if (value != cfg.preset) throw ConfigError("preset must be applied before other keys");
  } else if (key == "model") {
    const auto m = parse_enum<ModelKind>(key, value, {{"semiconductor", ModelKind::kSemiconductor}, {"boltzmann", ModelKind::kBoltzmann}});
    if (m != cfg.model) throw ConfigError("model '" + value + "' does not match preset '" + cfg.preset + "'");
  } else if (key == "epsilon") {
    cfg.epsilon = parse_number(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_number(key, value);
  } else if (key == "t_final") {
    cfg.t_final = parse_number(key, value);
  } else if (key == "gamma_max") {
    cfg.gamma_max = parse_int(key, value);
  } else if (key == "delta") {
    cfg.delta = parse_number(key, value);
  } else if (key == "mode") {
    cfg.mode = parse_enum<RunMode>(key, value, {{"bifidelity", RunMode::kBifidelity},
                                                {"hf_reference", RunMode::kHfReference},
                                                {"lf_reference", RunMode::kLfReference}});
  } else if (key == "diagnostics") {
    cfg.diagnostics = parse_enum<DiagnosticsLevel>(
        key, value, {{"off", DiagnosticsLevel::kOff}, {"light", DiagnosticsLevel::kLight}, {"full", DiagnosticsLevel::kFull}});
  } else if (key == "diagnostics.every") {
    cfg.diagnostics_every = parse_int(key, value);
  } else if (key == "stepper") {
    cfg.stepper = parse_enum<Stepper>(key, value, {{"penalty_first_order", Stepper::kPenaltyFirstOrder}, {"imex_typeA", Stepper::kImexTypeA}});
  } else if (key == "velocity.points") {
    cfg.velocity_points = parse_int(key, value);
  } else if (key == "velocity.half_width") {
    cfg.velocity_half_width = parse_number(key, value);
  } else if (key == "space.cells") {
    cfg.space_cells = parse_int(key, value);
  } else if (key == "space.left") {
    cfg.space_left = parse_number(key, value);
  } else if (key == "space.right") {
    cfg.space_right = parse_number(key, value);
  } else if (key == "space.bc") {
    try {
      cfg.bc = boundary_condition_from_string(value);
    } catch (const std::invalid_argument&) {
      bad_value(key, value, "one of periodic, neumann, specular");
    }
  } else if (key == "potential.form") {
    cfg.potential_form = parse_enum<PotentialForm>(key, value, {{"literal", PotentialForm::kLiteral}, {"corrected", PotentialForm::kCorrected}});
  } else if (key == "kernel.b0") {
    cfg.kernel_b0 = parse_number(key, value);
  } else if (key == "kernel.form") {
    cfg.kernel_form = parse_enum<CarlemanKernel>(
        key, value, {{"two_dimensional", CarlemanKernel::kTwoDimensional}, {"inverse_square", CarlemanKernel::kInverseSquare}});
  } else if (key == "transport.order") {
    cfg.transport_order = parse_enum<TransportOrder>(key, value, {{"first", TransportOrder::kFirstOrder}, {"muscl", TransportOrder::kMusclMinmod}});
  } else if (key == "output.snapshots") {
    cfg.snapshots = parse_list(key, value);
  } else if (key == "test3.unit_domain") {
    const bool unit = parse_bool(key, value);
    if (cfg.preset != "test3_blast") throw ConfigError("test3.unit_domain only applies to preset test3_blast");
    if (unit != cfg.unit_domain) {
      const double shift = unit ? 0.5 : -0.5;
      cfg.space_left += shift;
      cfg.space_right += shift;
      cfg.unit_domain = unit;
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig resolve_config(const ConfigEntries& entries) {
  std::string preset;
  for (const auto& [k, v] : entries) {
    if (k == "preset") preset = v;
  }
  if (preset.empty()) throw ConfigError("missing required key 'preset'");
  RunConfig cfg = preset_config(preset);
  for (const auto& [k, v] : entries) {
    if (k == "preset") continue;
    apply_config_entry(cfg, k, v);
  }
  validate_config(cfg);
  return cfg;
}

double effective_dt(const RunConfig& cfg) {
  if (cfg.dt) return *cfg.dt;
  if (cfg.model == ModelKind::kBoltzmann) {
    const double dx = (cfg.space_right - cfg.space_left) / cfg.space_cells;
    return dx / (2.0 * cfg.velocity_half_width);
  }
  throw ConfigError("missing required key 'dt'");
}

void validate_config(const RunConfig& cfg) {
  if (!cfg.epsilon) throw ConfigError("missing required key 'epsilon'");
  if (!(*cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(cfg.t_final >= 0.0)) throw ConfigError("t_final must be non-negative");
  if (!(effective_dt(cfg) > 0.0)) throw ConfigError("dt must be positive");
  if (cfg.gamma_max < 1) throw ConfigError("gamma_max must be at least 1");
  if (!(cfg.delta > 0.0)) throw ConfigError("delta must be positive");
  if (cfg.diagnostics_every < 1) throw ConfigError("diagnostics.every must be at least 1");
  if (cfg.velocity_points < 2 || cfg.velocity_points % 2 != 0) throw ConfigError("velocity.points must be even and >= 2");
  if (!(cfg.velocity_half_width > 0.0)) throw ConfigError("velocity.half_width must be positive");
  if (cfg.space_cells < 2) throw ConfigError("space.cells must be at least 2");
  if (!(cfg.space_right > cfg.space_left)) throw ConfigError("space.right must exceed space.left");
  if (cfg.model == ModelKind::kBoltzmann && !(cfg.kernel_b0 > 0.0)) throw ConfigError("kernel.b0 must be positive");
  for (double t : cfg.snapshots) {
    if (!(t > 0.0) || t > cfg.t_final) throw ConfigError("snapshot times must lie in (0, t_final]");
  }
}

std::vector<std::string> config_warnings(const RunConfig& cfg) {
  std::vector<std::string> w;
  if (cfg.epsilon && cfg.delta >= *cfg.epsilon) {
    w.emplace_back("delta >= epsilon: the asymptotic-preserving guarantee assumes delta < epsilon");
  }
  return w;
}

std::string to_string(ModelKind m) { return m == ModelKind::kSemiconductor ? "semiconductor" : "boltzmann"; }

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::kBifidelity: return "bifidelity";
    case RunMode::kHfReference: return "hf_reference";
    case RunMode::kLfReference: return "lf_reference";
  }
  return "unknown";
}

std::string to_string(DiagnosticsLevel d) {
  switch (d) {
    case DiagnosticsLevel::kOff: return "off";
    case DiagnosticsLevel::kLight: return "light";
    case DiagnosticsLevel::kFull: return "full";
  }
  return "unknown";
}

}  // namespace bifid
