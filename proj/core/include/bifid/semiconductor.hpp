#pragma once

#include <span>

#include <Eigen/Dense>

#include "bifid/collision.hpp"
#include "bifid/grid.hpp"

namespace bifid {

// Even/odd parts on the positive half of a symmetric cell-centered grid.
// Half-grid column h corresponds to the full-grid point N_v/2 + h.
struct EvenOddState {
  Eigen::MatrixXd r;  // cells x N_v/2
  Eigen::MatrixXd j;
  double epsilon = 1.0;
  double phi = 1.0;
};

struct PotentialField {
  Eigen::VectorXd phi_x;
  Eigen::VectorXd dphi_dx;
};

struct SemiconductorSetup {
  SpatialMesh space;
  VelocityMesh velocity;  // 1-D, cell-centered, even point count
  CrossSectionTable table;
  PotentialField potential;
};

double control_parameter(double epsilon);

EvenOddState even_odd_decompose(const VelocityMesh& mesh, const Field& f, double epsilon);
Field even_odd_recompose(const VelocityMesh& mesh, const EvenOddState& state);

/// Half-grid density 2 dv sum_h r.
Eigen::VectorXd half_grid_density(const VelocityMesh& mesh, const Eigen::MatrixXd& r);

/// Explicit transport residuals A_r and A_j, so that r* = r - dt A_r.
Eigen::MatrixXd transport_r(const SemiconductorSetup& s, const EvenOddState& st);
Eigen::MatrixXd transport_j(const SemiconductorSetup& s, const EvenOddState& st);

/// v d_x r + Phi' d_v r with central differences.
Eigen::MatrixXd drift_flux(const SemiconductorSetup& s, const Eigen::MatrixXd& r);

Eigen::MatrixXd lf_update_r(const SemiconductorSetup& s, const EvenOddState& st, double dt);

/// High-fidelity r update on the half-grid columns `cols`; returns cells x cols.size().
Eigen::MatrixXd hf_update_r(const SemiconductorSetup& s, const EvenOddState& st, double dt, std::span<const int> cols);
Eigen::MatrixXd hf_update_r(const SemiconductorSetup& s, const EvenOddState& st, double dt);

Eigen::MatrixXd update_j(const SemiconductorSetup& s, const EvenOddState& st, const Eigen::MatrixXd& r_next, double dt);

}  // namespace bifid
