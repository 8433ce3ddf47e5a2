#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bifid/boltzmann.hpp"
#include "bifid/config.hpp"
#include "bifid/semiconductor.hpp"

namespace bifid {

std::vector<std::string> preset_names();

/// Preset defaults; epsilon is left unset.
RunConfig preset_config(const std::string& name);

/// Everything a run needs besides the config: meshes, operators, initial data.
/// Tests may edit the fields (for example the cross section) before running.
struct Problem {
  SpatialMesh space;
  VelocityMesh velocity;
  Field initial;
  std::optional<SemiconductorSetup> semiconductor;
  std::optional<BoltzmannSetup> boltzmann;
};

Problem build_problem(const RunConfig& cfg);

Field preset_initial_condition(const RunConfig& cfg, const SpatialMesh& space, const VelocityMesh& velocity);

double test1a_cross_section(double v, double w);
PotentialField test1a_potential(const SpatialMesh& space, PotentialForm form);

}  // namespace bifid
