#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bifid/boltzmann.hpp"
#include "bifid/collision.hpp"
#include "bifid/grid.hpp"

namespace bifid {

enum class ModelKind { kSemiconductor, kBoltzmann };
enum class RunMode { kBifidelity, kHfReference, kLfReference };
enum class DiagnosticsLevel { kOff, kLight, kFull };
enum class Stepper { kPenaltyFirstOrder, kImexTypeA };
enum class PotentialForm { kLiteral, kCorrected };

struct RunConfig {
  std::string preset;
  ModelKind model = ModelKind::kBoltzmann;
  std::optional<double> epsilon;
  std::optional<double> dt;  // unset: preset default (transport CFL for the Boltzmann presets)
  double t_final = 0.0;
  int gamma_max = 50;
  double delta = 1e-12;
  RunMode mode = RunMode::kBifidelity;
  DiagnosticsLevel diagnostics = DiagnosticsLevel::kOff;
  int diagnostics_every = 10;
  Stepper stepper = Stepper::kImexTypeA;

  int velocity_points = 32;
  double velocity_half_width = 8.0;
  int space_cells = 50;
  double space_left = 0.0;
  double space_right = 1.0;
  BoundaryCondition bc = BoundaryCondition::kPeriodic;

  PotentialForm potential_form = PotentialForm::kLiteral;
  double kernel_b0 = 0.0;
  CarlemanKernel kernel_form = CarlemanKernel::kTwoDimensional;
  TransportOrder transport_order = TransportOrder::kFirstOrder;
  std::vector<double> snapshots;
  bool unit_domain = false;  // blast-wave preset on [0, 1] instead of [-1/2, 1/2]
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines; '#' starts a comment.
ConfigEntries parse_config_text(const std::string& text);
ConfigEntries read_config_file(const std::string& path);

/// Applies the preset named by the last `preset` entry, then every other
/// entry in order. Unknown keys, bad values and a missing epsilon are errors.
RunConfig resolve_config(const ConfigEntries& entries);

/// Applies one key to an existing config.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Effective time step: the explicit value or the preset rule.
double effective_dt(const RunConfig& cfg);

/// Throws ConfigError on inconsistent settings.
void validate_config(const RunConfig& cfg);

/// Human-readable warnings (for example delta >= epsilon).
std::vector<std::string> config_warnings(const RunConfig& cfg);

std::string to_string(ModelKind m);
std::string to_string(RunMode m);
std::string to_string(DiagnosticsLevel d);

std::vector<std::string> known_config_keys();

}  // namespace bifid
