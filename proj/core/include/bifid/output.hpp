#pragma once

#include <string>
#include <vector>

#include "bifid/orchestrator.hpp"

namespace bifid {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g formatting used by every CSV writer.
std::string format_double(double x);

/// x, rho, u_1[, u_2], T for `f`, then the same columns suffixed _ref for
/// `reference` when given.
void write_profiles(const std::string& path, const SpatialMesh& space, const VelocityMesh& velocity, const Field& f,
                    const Field* reference = nullptr);

void write_history(const std::string& path, const std::vector<StepRecord>& history);

void write_selected_points(const std::string& path, const VelocityMesh& velocity, const std::vector<StepRecord>& history,
                           const std::vector<std::vector<int>>& gammas);

struct SweepRow {
  int gamma_max = 0;
  double t = 0.0;
  double rel_l1 = 0.0;
  double mean_gamma = 0.0;
};

void write_sweep(const std::string& path, const std::vector<SweepRow>& rows);

/// Ensures `dir` exists; throws OutputError otherwise.
void ensure_directory(const std::string& dir);

}  // namespace bifid
