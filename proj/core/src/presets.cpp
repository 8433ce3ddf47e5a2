#include "bifid/presets.hpp"

#include <cmath>
#include <numbers>

namespace bifid {

namespace {

double std_maxwellian_1d(double v) { return std::exp(-0.5 * v * v) / std::sqrt(2.0 * std::numbers::pi); }

void set_row_maxwellian(Field& f, int i, const VelocityMesh& mesh, double rho, std::array<double, 2> u, double T,
                        double weight = 1.0) {
  f.row(i) += weight * maxwellian(mesh, rho, std::span<const double>(u.data(), static_cast<std::size_t>(mesh.dim)), T).transpose();
}

}  // namespace

std::vector<std::string> preset_names() { return {"test1a", "test1b", "test2_riemann", "test3_blast"}; }

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "test1a") {
    c.model = ModelKind::kSemiconductor;
    c.dt = 5e-5;
    c.t_final = 0.1;
    c.velocity_points = 100;
    c.velocity_half_width = 8.0;
    c.space_cells = 150;
    c.bc = BoundaryCondition::kPeriodic;
  } else if (name == "test1b" || name == "test2_riemann" || name == "test3_blast") {
    c.model = ModelKind::kBoltzmann;
    c.velocity_points = 32;
    c.velocity_half_width = 8.0;
    c.kernel_b0 = 1.0 / (2.0 * std::numbers::pi);
    if (name == "test1b") {
      c.space_cells = 50;
      c.t_final = 0.2;
      c.bc = BoundaryCondition::kPeriodic;
    } else if (name == "test2_riemann") {
      c.space_cells = 50;
      c.t_final = 0.2;
      c.bc = BoundaryCondition::kNeumann;
    } else {
      c.space_cells = 100;
      c.t_final = 0.1;
      c.space_left = -0.5;
      c.space_right = 0.5;
      c.bc = BoundaryCondition::kSpecular;
      c.snapshots = {0.05};
    }
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

double test1a_cross_section(double v, double w) {
  const double a = v * v - w * w;
  return 1.0 + std_maxwellian_1d(v) * std::exp(-(a + 1.0) * (a + 1.0)) + std_maxwellian_1d(w) * std::exp(-(a - 1.0) * (a - 1.0));
}

PotentialField test1a_potential(const SpatialMesh& space, PotentialForm form) {
  const double c = form == PotentialForm::kLiteral ? 50.0 * std::numbers::e : 50.0;
  PotentialField p;
  p.phi_x.resize(space.cells);
  p.dphi_dx.resize(space.cells);
  for (int i = 0; i < space.cells; ++i) {
    const double s = space.position(i) - 0.25;
    p.phi_x[i] = std::exp(-c * s * s);
    p.dphi_dx[i] = -2.0 * c * s * p.phi_x[i];
  }
  return p;
}

Field preset_initial_condition(const RunConfig& cfg, const SpatialMesh& space, const VelocityMesh& velocity) {
  Field f = Field::Zero(space.cells, velocity.size());
  const std::string& p = cfg.preset;
  for (int i = 0; i < space.cells; ++i) {
    const double x = space.position(i);
    if (p == "test1a") {
      set_row_maxwellian(f, i, velocity, 1.0, {0.0, 0.0}, 1.0);
    } else if (p == "test1b") {
      const double rho0 = (2.0 + std::sin(2.0 * std::numbers::pi * x)) / 3.0;
      const double u0 = std::cos(2.0 * std::numbers::pi * x);
      const double t0 = (3.0 + std::cos(2.0 * std::numbers::pi * x)) / 4.0;
      set_row_maxwellian(f, i, velocity, rho0, {u0, 0.0}, t0, 0.5);
      set_row_maxwellian(f, i, velocity, rho0, {-u0, 0.0}, t0, 0.5);
    } else if (p == "test2_riemann") {
      if (x <= 0.5) {
        set_row_maxwellian(f, i, velocity, 1.0, {0.0, 0.0}, 1.0);
      } else {
        set_row_maxwellian(f, i, velocity, 0.125, {0.0, 0.0}, 0.25);
      }
    } else if (p == "test3_blast") {
      const double y = cfg.unit_domain ? x - 0.5 : x;
      if (y <= -0.3) {
        set_row_maxwellian(f, i, velocity, 1.0, {1.0, 0.0}, 2.0);
      } else if (y <= 0.3) {
        set_row_maxwellian(f, i, velocity, 1.0, {0.0, 0.0}, 0.25);
      } else {
        set_row_maxwellian(f, i, velocity, 1.0, {-1.0, 0.0}, 2.0);
      }
    } else {
      throw ConfigError("unknown preset '" + p + "'");
    }
  }
  return f;
}

Problem build_problem(const RunConfig& cfg) {
  validate_config(cfg);
  Problem pb;
  pb.space = build_spatial_mesh(cfg.space_left, cfg.space_right, cfg.space_cells, cfg.bc);
  const int dim = cfg.model == ModelKind::kSemiconductor ? 1 : 2;
  pb.velocity = build_velocity_mesh(dim, cfg.velocity_half_width, cfg.velocity_points, VelocityLayout::kCellCentered);
  pb.initial = preset_initial_condition(cfg, pb.space, pb.velocity);
  if (cfg.model == ModelKind::kSemiconductor) {
    SemiconductorSetup s;
    s.space = pb.space;
    s.velocity = pb.velocity;
    s.table = build_cross_section(pb.velocity, test1a_cross_section);
    s.potential = test1a_potential(pb.space, cfg.potential_form);
    pb.semiconductor = std::move(s);
  } else {
    BoltzmannSetup s;
    s.space = pb.space;
    s.velocity = pb.velocity;
    s.dvm = build_dvm_tables(pb.velocity, cfg.kernel_b0, cfg.kernel_form);
    s.order = cfg.transport_order;
    pb.boltzmann = std::move(s);
  }
  return pb;
}

}  // namespace bifid
