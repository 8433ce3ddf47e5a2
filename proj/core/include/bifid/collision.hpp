#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bifid/grid.hpp"

namespace bifid {

// Linear anisotropic operator on a 1-D velocity grid.
struct CrossSectionTable {
  Eigen::MatrixXd sigma;        // N x N
  Eigen::VectorXd equilibrium;  // background Maxwellian with unit discrete mass
  Eigen::VectorXd mu;           // dv * sigma * equilibrium
  double lambda_lin = 0.0;      // max mu
  double spacing = 0.0;

  int size() const noexcept { return static_cast<int>(mu.size()); }
};

using CrossSectionFn = std::function<double(double v, double w)>;

/// Throws std::invalid_argument on a negative kernel value or when max mu is 0.
CrossSectionTable build_cross_section(const VelocityMesh& mesh, const CrossSectionFn& sigma_fn);

/// dv * sum_l sigma(k,l) (M_k f_l - M_l f_k) for every k.
Eigen::VectorXd q_lb_apply(const CrossSectionTable& table, std::span<const double> f);

/// Same operator restricted to the output rows in `rows`, for every spatial
/// cell of `f` (cells x N). Returns cells x rows.size().
Eigen::MatrixXd q_lb_apply_rows(const CrossSectionTable& table, const Field& f, std::span<const int> rows);

/// lambda * (equilibrium - f).
Eigen::VectorXd relaxation_penalty(std::span<const double> f, std::span<const double> equilibrium, double lambda);

enum class CarlemanKernel {
  kTwoDimensional,  // B^c = 2 B0 / |u|, the planar Carleman weight
  kInverseSquare,    // B^c = 2 B0 / |u|^2
};

struct DvmDirection {
  std::array<int, 2> offset{};  // i
  int gcd = 1;                  // g(i)
  double det_li = 0.0;          // |i| / g(i)
  std::vector<std::array<int, 2>> members;  // j with i.j = 0, j != 0, |j_c| <= n - 1
  std::vector<double> kernel_values;        // B^c(u_i, w_j)
};

struct DvmTables {
  int points_per_dim = 0;
  double spacing = 0.0;
  double b0 = 0.0;
  CarlemanKernel kernel = CarlemanKernel::kTwoDimensional;
  std::vector<DvmDirection> directions;
  // Loss coefficients: Q^-(f)_k = f_k * sum_d loss(k, d) f_d, including the
  // degenerate j = 0 pairs that cancel in Q.
  Eigen::MatrixXd loss;

  /// Quadrature weight dv^3 det(L_i) B^c for one (i, j) term.
  double term_weight(int i1, int i2) const;
};

DvmTables build_dvm_tables(const VelocityMesh& mesh, double b0,
                           CarlemanKernel kernel = CarlemanKernel::kTwoDimensional);

/// Discrete collision operator at the velocity columns `cols` for every row of
/// `f` (cells x N). Shifted points outside the grid drop the whole collision
/// rectangle. Returns cells x cols.size().
Eigen::MatrixXd q_nb_dvm_apply(const DvmTables& tables, const Field& f, std::span<const int> cols);

/// Full-grid evaluation for a single velocity profile.
Eigen::VectorXd q_nb_dvm_apply(const DvmTables& tables, std::span<const double> f);

/// max_k sum_d loss(k, d) f_d. Throws std::domain_error when the result is 0.
double q_nb_loss_max(const DvmTables& tables, std::span<const double> f);
double q_nb_loss_max(const DvmTables& tables, const Field& f);

}  // namespace bifid
