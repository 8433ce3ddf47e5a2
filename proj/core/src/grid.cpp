#include "bifid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bifid {

VacuumCellError::VacuumCellError(int cell, double density)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "vacuum cell " << cell << " (density " << density << ")";
        return os.str();
      }()),
      cell_(cell),
      density_(density) {}

double VelocityMesh::speed_squared(int flat) const {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double c = coord(flat, a);
    s += c * c;
  }
  return s;
}

double VelocityMesh::cell_volume() const { return std::pow(spacing, dim); }

std::array<int, 2> VelocityMesh::multi_index(int flat) const {
  if (dim == 1) return {flat, 0};
  return {flat / points_per_dim, flat % points_per_dim};
}

int VelocityMesh::flat_index(std::array<int, 2> multi) const {
  if (dim == 1) return multi[0];
  return multi[0] * points_per_dim + multi[1];
}

namespace {

int mirror_1d(int k, int n, VelocityLayout layout) {
  if (layout == VelocityLayout::kCellCentered) return n - 1 - k;
  // Nodal: -L + k dv mirrors to -L + (n - k) dv, which exists for 1 <= k.
  return k == 0 ? -1 : n - k;
}

}  // namespace

int VelocityMesh::mirror_index(int flat, int axis) const {
  auto m = multi_index(flat);
  const int k = mirror_1d(m[static_cast<std::size_t>(axis)], points_per_dim, layout);
  if (k < 0) return -1;
  m[static_cast<std::size_t>(axis)] = k;
  return flat_index(m);
}

int VelocityMesh::negated_index(int flat) const {
  int out = flat;
  for (int a = 0; a < dim && out >= 0; ++a) out = mirror_index(out, a);
  return out;
}

VelocityMesh build_velocity_mesh(int dim, double half_width, int points_per_dim,
                                 VelocityLayout layout) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("velocity dimension must be 1 or 2");
  if (!(half_width > 0.0)) throw std::invalid_argument("velocity half-width must be positive");
  if (points_per_dim < 2) throw std::invalid_argument("need at least 2 velocity points per dimension");

  VelocityMesh mesh;
  mesh.dim = dim;
  mesh.half_width = half_width;
  mesh.points_per_dim = points_per_dim;
  mesh.spacing = 2.0 * half_width / points_per_dim;
  mesh.layout = layout;

  std::vector<double> axis(static_cast<std::size_t>(points_per_dim));
  for (int k = 0; k < points_per_dim; ++k) {
    if (layout == VelocityLayout::kCellCentered) {
      // (k - (n-1)/2) is exact in binary, so v and -v are bitwise negations.
      axis[static_cast<std::size_t>(k)] = (k - 0.5 * (points_per_dim - 1)) * mesh.spacing;
    } else {
      axis[static_cast<std::size_t>(k)] = -half_width + k * mesh.spacing;
    }
  }

  const int total = dim == 1 ? points_per_dim : points_per_dim * points_per_dim;
  mesh.coords.resize(static_cast<std::size_t>(total * dim));
  for (int l = 0; l < total; ++l) {
    const auto m = mesh.multi_index(l);
    for (int a = 0; a < dim; ++a) {
      mesh.coords[static_cast<std::size_t>(l * dim + a)] = axis[static_cast<std::size_t>(m[static_cast<std::size_t>(a)])];
    }
  }
  return mesh;
}

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::kPeriodic: return "periodic";
    case BoundaryCondition::kNeumann: return "neumann";
    case BoundaryCondition::kSpecular: return "specular";
  }
  return "unknown";
}

BoundaryCondition boundary_condition_from_string(const std::string& name) {
  if (name == "periodic") return BoundaryCondition::kPeriodic;
  if (name == "neumann") return BoundaryCondition::kNeumann;
  if (name == "specular") return BoundaryCondition::kSpecular;
  throw std::invalid_argument("unknown boundary condition '" + name + "'");
}

SpatialMesh build_spatial_mesh(double x_left, double x_right, int cells, BoundaryCondition bc) {
  if (cells < 2) throw std::invalid_argument("need at least 2 spatial cells");
  if (!(x_right > x_left)) throw std::invalid_argument("spatial domain must have positive length");
  SpatialMesh mesh;
  mesh.x_left = x_left;
  mesh.x_right = x_right;
  mesh.cells = cells;
  mesh.spacing = (x_right - x_left) / cells;
  mesh.bc = bc;
  return mesh;
}

Eigen::VectorXd maxwellian(const VelocityMesh& mesh, double rho, std::span<const double> u, double T) {
  if (!(rho > 0.0) || !(T > 0.0)) {
    std::ostringstream os;
    os << "Maxwellian needs rho > 0 and T > 0 (rho = " << rho << ", T = " << T << ")";
    throw InvalidStateError(os.str());
  }
  if (static_cast<int>(u.size()) != mesh.dim) throw std::invalid_argument("bulk velocity has wrong dimension");

  const double norm = rho / std::pow(2.0 * std::numbers::pi * T, 0.5 * mesh.dim);
  Eigen::VectorXd out(mesh.size());
  for (int l = 0; l < mesh.size(); ++l) {
    double s = 0.0;
    for (int a = 0; a < mesh.dim; ++a) {
      const double c = mesh.coord(l, a) - u[static_cast<std::size_t>(a)];
      s += c * c;
    }
    out[l] = norm * std::exp(-s / (2.0 * T));
  }
  return out;
}

Field maxwellian_field(const VelocityMesh& mesh, const MacroMoments& moments) {
  Field out(moments.cells(), mesh.size());
  std::array<double, 2> u{};
  for (int i = 0; i < moments.cells(); ++i) {
    for (int a = 0; a < mesh.dim; ++a) u[static_cast<std::size_t>(a)] = moments.u(i, a);
    out.row(i) = maxwellian(mesh, moments.rho[i], std::span<const double>(u.data(), static_cast<std::size_t>(mesh.dim)),
                            moments.T[i])
                     .transpose();
  }
  return out;
}

Eigen::VectorXd normalized_maxwellian(const VelocityMesh& mesh) {
  const std::array<double, 2> zero{};
  Eigen::VectorXd m = maxwellian(mesh, 1.0, std::span<const double>(zero.data(), static_cast<std::size_t>(mesh.dim)), 1.0);
  return m / (mesh.cell_volume() * m.sum());
}

MacroMoments compute_moments(const VelocityMesh& mesh, const Field& f) {
  const int cells = static_cast<int>(f.rows());
  const int d = mesh.dim;
  const double w = mesh.cell_volume();
  MacroMoments m;
  m.rho.resize(cells);
  m.u.resize(cells, d);
  m.T.resize(cells);
  for (int i = 0; i < cells; ++i) {
    double rho = 0.0;
    std::array<double, 2> mom{};
    for (int l = 0; l < mesh.size(); ++l) {
      const double v = f(i, l);
      rho += v;
      for (int a = 0; a < d; ++a) mom[static_cast<std::size_t>(a)] += mesh.coord(l, a) * v;
    }
    rho *= w;
    if (!(rho >= kVacuumDensity)) throw VacuumCellError(i, rho);
    for (int a = 0; a < d; ++a) m.u(i, a) = w * mom[static_cast<std::size_t>(a)] / rho;
    double e = 0.0;
    for (int l = 0; l < mesh.size(); ++l) {
      double s = 0.0;
      for (int a = 0; a < d; ++a) {
        const double c = mesh.coord(l, a) - m.u(i, a);
        s += c * c;
      }
      e += s * f(i, l);
    }
    m.rho[i] = rho;
    m.T[i] = w * e / (d * rho);
  }
  return m;
}

Eigen::MatrixXd conserved_densities(const VelocityMesh& mesh, const Field& f) {
  const int d = mesh.dim;
  const double w = mesh.cell_volume();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(f.rows(), d + 2);
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (int l = 0; l < mesh.size(); ++l) {
      const double v = f(i, l);
      out(i, 0) += v;
      for (int a = 0; a < d; ++a) out(i, 1 + a) += mesh.coord(l, a) * v;
      out(i, d + 1) += 0.5 * mesh.speed_squared(l) * v;
    }
  }
  return out * w;
}

Field local_equilibrium(const VelocityMesh& mesh, const Field& f, EquilibriumModel model) {
  if (model == EquilibriumModel::kNonlinear) return maxwellian_field(mesh, compute_moments(mesh, f));

  const Eigen::VectorXd m = normalized_maxwellian(mesh);
  const Eigen::VectorXd rho = f.rowwise().sum() * mesh.cell_volume();
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    if (!(rho[i] >= kVacuumDensity)) throw VacuumCellError(static_cast<int>(i), rho[i]);
  }
  return rho * m.transpose();
}

double equilibrium_distance(const SpatialMesh& space, const VelocityMesh& mesh, const Field& f,
                            EquilibriumModel model) {
  const Field diff = f - local_equilibrium(mesh, f, model);
  return lp_norm(as_span(diff), Norm::kL1, space.spacing * mesh.cell_volume());
}

double lp_norm(std::span<const double> values, Norm p) { return lp_norm(values, p, 1.0); }

double lp_norm(std::span<const double> values, Norm p, double cell_weight) {
  switch (p) {
    case Norm::kL1: {
      double s = 0.0;
      for (double v : values) s += std::abs(v);
      return cell_weight * s;
    }
    case Norm::kL2: {
      double s = 0.0;
      for (double v : values) s += v * v;
      return std::sqrt(cell_weight * s);
    }
    case Norm::kLinf: {
      double s = 0.0;
      for (double v : values) s = std::max(s, std::abs(v));
      return s;
    }
  }
  return 0.0;
}

}  // namespace bifid
