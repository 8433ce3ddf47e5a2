#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bifid/config.hpp"
#include "bifid/error_metrics.hpp"
#include "bifid/presets.hpp"

namespace bifid {

class NumericAbort : public std::runtime_error {
 public:
  NumericAbort(int step, const std::string& what);
  int step() const noexcept { return step_; }

 private:
  int step_;
};

struct PhaseTimings {
  double lf = 0.0;
  double select = 0.0;
  double hf = 0.0;
  double reconstruct = 0.0;
};

struct StepRecord {
  int step = 0;
  double t = 0.0;
  int gamma_size = 0;
  double equilibrium_distance = 0.0;
  double min_f = 0.0;
  double lambda = 0.0;
  std::optional<ErrorReport> errors;
  PhaseTimings timings;  // wall-clock seconds, excluded from CSV output
};

struct Snapshot {
  double t = 0.0;
  Field f;
};

struct SimulationResult {
  SpatialMesh space;
  VelocityMesh velocity;
  ModelKind model = ModelKind::kBoltzmann;
  Field final_state;
  double final_time = 0.0;
  std::vector<StepRecord> history;
  std::vector<std::vector<int>> gammas;  // per step, original velocity indices
  std::vector<Snapshot> snapshots;
};

struct StepOutput {
  Field f_next;
  StepRecord record;
  std::vector<int> gamma;
};

/// One bi-fidelity step; `full_sweep` additionally computes the HF update on
/// every column for diagnostics.
StepOutput bifid_step_semiconductor(const SemiconductorSetup& s, const Field& f, const RunConfig& cfg, double dt,
                                    bool full_sweep);
StepOutput bifid_step_boltzmann(const BoltzmannSetup& s, const Field& f, const RunConfig& cfg, double dt, bool full_sweep);

/// Single-fidelity steps on the full grid.
Field hf_full_step_semiconductor(const SemiconductorSetup& s, const Field& f, double epsilon, double dt);
Field lf_full_step_semiconductor(const SemiconductorSetup& s, const Field& f, double epsilon, double dt);
Field hf_full_step_boltzmann(const BoltzmannSetup& s, const Field& f, const RunConfig& cfg, double dt);
Field lf_full_step_boltzmann(const BoltzmannSetup& s, const Field& f, double epsilon, double dt);

SimulationResult run_simulation(const RunConfig& cfg);
SimulationResult run_simulation(const RunConfig& cfg, const Problem& problem);

}  // namespace bifid
