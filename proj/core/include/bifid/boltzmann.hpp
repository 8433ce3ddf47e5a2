#pragma once

#include <span>
#include <stdexcept>

#include <Eigen/Dense>

#include "bifid/collision.hpp"
#include "bifid/grid.hpp"

namespace bifid {

enum class TransportOrder { kFirstOrder, kMusclMinmod };

struct BoltzmannSetup {
  SpatialMesh space;
  VelocityMesh velocity;  // 2-D cell-centered
  DvmTables dvm;
  TransportOrder order = TransportOrder::kFirstOrder;
  // Test hook: replace the collision operator by lambda (M(f) - f).
  bool relaxation_collision = false;
};

class CflError : public std::invalid_argument {
 public:
  CflError(double dt, double admissible);
  double admissible_dt() const noexcept { return admissible_; }

 private:
  double admissible_;
};

struct TransportedState {
  Field f_star;
  MacroMoments moments_star;
};

double admissible_transport_dt(const SpatialMesh& space, const VelocityMesh& velocity);

void check_cfl(const BoltzmannSetup& s, double dt);

// Discrete v^1 d_x f in conservative upwind form.
Field transport_divergence(const BoltzmannSetup& s, const Field& f);
// f - dt * divergence; throws CflError when dt exceeds the transport limit.
TransportedState transport_step(const BoltzmannSetup& s, const Field& f, double dt);

// Collision operator at `cols`, honouring the relaxation hook.
Eigen::MatrixXd collision_columns(const BoltzmannSetup& s, const Field& f, std::span<const int> cols, double lambda);

Field lf_step_bgk(const BoltzmannSetup& s, const Field& f, double dt, double epsilon, double lambda);

Eigen::MatrixXd hf_step_penalty(const BoltzmannSetup& s, const Field& f, double dt, double epsilon, double lambda,
                                std::span<const int> cols);

struct ImexStages {
  Field stage1;            // full grid
  MacroMoments moments2;   // implicit Maxwellian moments of the second stage
  Eigen::MatrixXd values;  // second stage at the requested columns
};

ImexStages hf_step_imex_typeA(const BoltzmannSetup& s, const Field& f, double dt, double epsilon, double lambda,
                              std::span<const int> cols);

}  // namespace bifid
