#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bifid {

/// Phase-space samples f(x_i, v_l): one row per spatial cell, one column per
/// velocity point. Column l is the spatial profile used as an ensemble member.
using Field = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Thrown when a spatial cell has (numerically) zero density.
class VacuumCellError : public std::runtime_error {
 public:
  VacuumCellError(int cell, double density);
  int cell() const noexcept { return cell_; }
  double density() const noexcept { return density_; }

 private:
  int cell_;
  double density_;
};

/// Thrown for non-physical Maxwellian parameters (rho <= 0 or T <= 0).
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density below this value is treated as vacuum.
inline constexpr double kVacuumDensity = 1e-14;

enum class VelocityLayout {
  kNodal,         ///< v = -L + k dv, k = 0..n-1 (the +L endpoint is excluded)
  kCellCentered,  ///< v = -L + (k + 1/2) dv; symmetric under v -> -v
};

struct VelocityMesh {
  int dim = 1;
  double half_width = 0.0;
  int points_per_dim = 0;
  double spacing = 0.0;
  VelocityLayout layout = VelocityLayout::kNodal;
  /// Flat, row-major over dimensions: coords[l * dim + axis].
  std::vector<double> coords;

  int size() const noexcept { return static_cast<int>(coords.size()) / dim; }
  double coord(int flat, int axis) const { return coords[static_cast<std::size_t>(flat * dim + axis)]; }
  double speed_squared(int flat) const;
  /// Quadrature weight dv^dim of one velocity cell.
  double cell_volume() const;

  std::array<int, 2> multi_index(int flat) const;
  int flat_index(std::array<int, 2> multi) const;

  /// Index of the point with component `axis` negated, or -1 when the grid
  /// has no such partner.
  int mirror_index(int flat, int axis) const;
  /// Index of -v (all components negated), or -1.
  int negated_index(int flat) const;
};

VelocityMesh build_velocity_mesh(int dim, double half_width, int points_per_dim,
                                 VelocityLayout layout = VelocityLayout::kNodal);

enum class BoundaryCondition { kPeriodic, kNeumann, kSpecular };

std::string to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(const std::string& name);

struct SpatialMesh {
  double x_left = 0.0;
  double x_right = 1.0;
  int cells = 0;
  double spacing = 0.0;
  BoundaryCondition bc = BoundaryCondition::kPeriodic;

  /// x_i = x_left + i * dx, i = 0..cells-1.
  double position(int i) const noexcept { return x_left + i * spacing; }
};

SpatialMesh build_spatial_mesh(double x_left, double x_right, int cells, BoundaryCondition bc);

struct MacroMoments {
  Eigen::VectorXd rho;
  Eigen::MatrixXd u;  ///< cells x dim
  Eigen::VectorXd T;

  int cells() const noexcept { return static_cast<int>(rho.size()); }
};

/// Sampled Maxwellian rho / (2 pi T)^{d/2} exp(-|v - u|^2 / (2T)).
Eigen::VectorXd maxwellian(const VelocityMesh& mesh, double rho, std::span<const double> u, double T);

/// Per-cell Maxwellians built from `moments`.
Field maxwellian_field(const VelocityMesh& mesh, const MacroMoments& moments);

/// Standard Maxwellian (rho = 1, u = 0, T = 1) rescaled so that its discrete
/// mass is exactly one. Used as the background equilibrium of the linear model.
Eigen::VectorXd normalized_maxwellian(const VelocityMesh& mesh);

/// Rectangle-rule moments. Temperature uses T = (1/(d rho)) int |v-u|^2 f dv.
/// Throws VacuumCellError when rho < kVacuumDensity.
MacroMoments compute_moments(const VelocityMesh& mesh, const Field& f);

/// Conserved totals per cell: mass, momentum (dim components) and kinetic
/// energy (1/2 int |v|^2 f), as columns of a cells x (dim + 2) matrix.
Eigen::MatrixXd conserved_densities(const VelocityMesh& mesh, const Field& f);

enum class EquilibriumModel { kLinear, kNonlinear };

/// Local equilibrium of f: rho(f) M for the linear model, M(f) for the
/// nonlinear one.
Field local_equilibrium(const VelocityMesh& mesh, const Field& f, EquilibriumModel model);

/// dx dv^d weighted l1 distance between f and its local equilibrium.
double equilibrium_distance(const SpatialMesh& space, const VelocityMesh& mesh, const Field& f,
                            EquilibriumModel model);

enum class Norm { kL1, kL2, kLinf };

/// Unweighted discrete norm (the l2 convention is sum of squares, no dx).
double lp_norm(std::span<const double> values, Norm p);
/// Cell-weighted variant: (w sum |v|^p)^{1/p}; the max norm ignores w.
double lp_norm(std::span<const double> values, Norm p, double cell_weight);

inline std::span<const double> as_span(const Field& f) {
  return {f.data(), static_cast<std::size_t>(f.size())};
}

}  // namespace bifid
