#include "bifid/semiconductor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bifid {

namespace {

int half_size(const VelocityMesh& mesh) {
  if (mesh.dim != 1 || mesh.layout != VelocityLayout::kCellCentered || mesh.points_per_dim % 2 != 0) {
    throw std::invalid_argument("even/odd splitting needs a 1-D cell-centered grid with an even point count");
  }
  return mesh.points_per_dim / 2;
}

enum class Parity { kEven, kOdd };

// Neighbour in x with boundary ghosts; specular flips odd quantities.
double x_neighbor(const Eigen::MatrixXd& u, Eigen::Index i, Eigen::Index h, int shift, BoundaryCondition bc, Parity parity) {
  const Eigen::Index n = u.rows();
  Eigen::Index k = i + shift;
  if (k >= 0 && k < n) return u(k, h);
  switch (bc) {
    case BoundaryCondition::kPeriodic: return u((k + n) % n, h);
    case BoundaryCondition::kNeumann: return u(k < 0 ? 0 : n - 1, h);
    case BoundaryCondition::kSpecular: {
      const double v = u(k < 0 ? 0 : n - 1, h);
      return parity == Parity::kEven ? v : -v;
    }
  }
  return 0.0;
}

// Neighbour in v on the half grid: parity ghost below v = 0, zero beyond L.
double v_neighbor(const Eigen::MatrixXd& u, Eigen::Index i, Eigen::Index h, int shift, Parity parity) {
  const Eigen::Index k = h + shift;
  if (k < 0) return parity == Parity::kEven ? u(i, 0) : -u(i, 0);
  if (k >= u.cols()) return 0.0;
  return u(i, k);
}

// Central part `c * D0 coupled` plus upwind dissipation on `own`.
Eigen::MatrixXd characteristic_residual(const SemiconductorSetup& s, const Eigen::MatrixXd& coupled, Parity coupled_parity,
                                        double coupled_scale, const Eigen::MatrixXd& own, Parity own_parity,
                                        double speed_scale) {
  const int hn = static_cast<int>(own.cols());
  const int half = s.velocity.points_per_dim / 2;
  const double dx = s.space.spacing;
  const double dv = s.velocity.spacing;
  Eigen::MatrixXd out(own.rows(), own.cols());
  for (Eigen::Index i = 0; i < own.rows(); ++i) {
    const double force = s.potential.dphi_dx[i];
    for (Eigen::Index h = 0; h < hn; ++h) {
      const double v = s.velocity.coord(half + static_cast<int>(h), 0);
      const double cxp = x_neighbor(coupled, i, h, 1, s.space.bc, coupled_parity);
      const double cxm = x_neighbor(coupled, i, h, -1, s.space.bc, coupled_parity);
      const double cvp = v_neighbor(coupled, i, h, 1, coupled_parity);
      const double cvm = v_neighbor(coupled, i, h, -1, coupled_parity);
      const double oxp = x_neighbor(own, i, h, 1, s.space.bc, own_parity);
      const double oxm = x_neighbor(own, i, h, -1, s.space.bc, own_parity);
      const double ovp = v_neighbor(own, i, h, 1, own_parity);
      const double ovm = v_neighbor(own, i, h, -1, own_parity);
      const double o = own(i, h);
      const double central = v * (cxp - cxm) / (2.0 * dx) + force * (cvp - cvm) / (2.0 * dv);
      const double dissipation =
          speed_scale * (v * (oxp - 2.0 * o + oxm) / (2.0 * dx) + std::abs(force) * (ovp - 2.0 * o + ovm) / (2.0 * dv));
      out(i, h) = coupled_scale * central - dissipation;
    }
  }
  return out;
}

}  // namespace

double control_parameter(double epsilon) { return std::min(1.0, 1.0 / (epsilon * epsilon)); }

EvenOddState even_odd_decompose(const VelocityMesh& mesh, const Field& f, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int half = half_size(mesh);
  if (f.cols() != mesh.size()) throw std::invalid_argument("field width does not match velocity mesh");
  EvenOddState st;
  st.epsilon = epsilon;
  st.phi = control_parameter(epsilon);
  st.r.resize(f.rows(), half);
  st.j.resize(f.rows(), half);
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (int h = 0; h < half; ++h) {
      const double fp = f(i, half + h);
      const double fm = f(i, half - 1 - h);
      st.r(i, h) = 0.5 * (fp + fm);
      st.j(i, h) = (fp - fm) / (2.0 * epsilon);
    }
  }
  return st;
}

Field even_odd_recompose(const VelocityMesh& mesh, const EvenOddState& st) {
  const int half = half_size(mesh);
  if (st.r.cols() != half || st.j.cols() != half || st.r.rows() != st.j.rows()) {
    throw std::invalid_argument("even/odd state shape does not match velocity mesh");
  }
  Field f(st.r.rows(), mesh.size());
  for (Eigen::Index i = 0; i < st.r.rows(); ++i) {
    for (int h = 0; h < half; ++h) {
      f(i, half + h) = st.r(i, h) + st.epsilon * st.j(i, h);
      f(i, half - 1 - h) = st.r(i, h) - st.epsilon * st.j(i, h);
    }
  }
  return f;
}

Eigen::VectorXd half_grid_density(const VelocityMesh& mesh, const Eigen::MatrixXd& r) {
  return 2.0 * mesh.spacing * r.rowwise().sum();
}

Eigen::MatrixXd transport_r(const SemiconductorSetup& s, const EvenOddState& st) {
  return characteristic_residual(s, st.j, Parity::kOdd, 1.0, st.r, Parity::kEven, std::sqrt(st.phi));
}

Eigen::MatrixXd transport_j(const SemiconductorSetup& s, const EvenOddState& st) {
  return characteristic_residual(s, st.r, Parity::kEven, st.phi, st.j, Parity::kOdd, std::sqrt(st.phi));
}

Eigen::MatrixXd drift_flux(const SemiconductorSetup& s, const Eigen::MatrixXd& r) {
  return characteristic_residual(s, r, Parity::kEven, 1.0, r, Parity::kEven, 0.0);
}

namespace {

// (r* + kappa rho M) / (1 + kappa), plus an optional explicit source.
Eigen::MatrixXd implicit_relaxation(const SemiconductorSetup& s, const Eigen::MatrixXd& r_star, const Eigen::VectorXd& rho,
                                    std::span<const int> cols, const Eigen::MatrixXd* source, double kappa) {
  const int half = s.velocity.points_per_dim / 2;
  Eigen::MatrixXd out(r_star.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int h = cols[c];
    const double m = s.table.equilibrium[half + h];
    for (Eigen::Index i = 0; i < r_star.rows(); ++i) {
      double num = r_star(i, h) + kappa * rho[i] * m;
      if (source != nullptr) num += (*source)(i, static_cast<Eigen::Index>(c));
      out(i, static_cast<Eigen::Index>(c)) = num / (1.0 + kappa);
    }
  }
  return out;
}

std::vector<int> all_columns(int n) {
  std::vector<int> cols(static_cast<std::size_t>(n));
  std::iota(cols.begin(), cols.end(), 0);
  return cols;
}

}  // namespace

Eigen::MatrixXd lf_update_r(const SemiconductorSetup& s, const EvenOddState& st, double dt) {
  const Eigen::MatrixXd r_star = st.r - dt * transport_r(s, st);
  const Eigen::VectorXd rho = half_grid_density(s.velocity, r_star);
  const double kappa = dt * s.table.lambda_lin / (st.epsilon * st.epsilon);
  const auto cols = all_columns(static_cast<int>(st.r.cols()));
  return implicit_relaxation(s, r_star, rho, cols, nullptr, kappa);
}

Eigen::MatrixXd hf_update_r(const SemiconductorSetup& s, const EvenOddState& st, double dt, std::span<const int> cols) {
  const int half = half_size(s.velocity);
  for (int h : cols) {
    if (h < 0 || h >= half) throw std::out_of_range("half-grid index out of range");
  }
  const double eps2 = st.epsilon * st.epsilon;
  const double lambda = s.table.lambda_lin;
  const Eigen::MatrixXd r_star = st.r - dt * transport_r(s, st);
  // Both collision terms have zero mean, so the new density is that of r*.
  const Eigen::VectorXd rho_next = half_grid_density(s.velocity, r_star);
  const Eigen::VectorXd rho_now = half_grid_density(s.velocity, st.r);

  Field extended(st.r.rows(), s.velocity.size());
  for (Eigen::Index i = 0; i < st.r.rows(); ++i) {
    for (int h = 0; h < half; ++h) {
      extended(i, half + h) = st.r(i, h);
      extended(i, half - 1 - h) = st.r(i, h);
    }
  }
  std::vector<int> rows(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) rows[c] = half + cols[c];
  const Eigen::MatrixXd q = q_lb_apply_rows(s.table, extended, rows);

  Eigen::MatrixXd source(st.r.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int h = cols[c];
    const double m = s.table.equilibrium[half + h];
    for (Eigen::Index i = 0; i < st.r.rows(); ++i) {
      const double penalty = lambda * (rho_now[i] * m - st.r(i, h));
      source(i, static_cast<Eigen::Index>(c)) = dt / eps2 * (q(i, static_cast<Eigen::Index>(c)) - penalty);
    }
  }
  return implicit_relaxation(s, r_star, rho_next, cols, &source, dt * lambda / eps2);
}

Eigen::MatrixXd hf_update_r(const SemiconductorSetup& s, const EvenOddState& st, double dt) {
  const auto cols = all_columns(static_cast<int>(st.r.cols()));
  return hf_update_r(s, st, dt, cols);
}

Eigen::MatrixXd update_j(const SemiconductorSetup& s, const EvenOddState& st, const Eigen::MatrixXd& r_next, double dt) {
  const int half = half_size(s.velocity);
  const double eps2 = st.epsilon * st.epsilon;
  const Eigen::MatrixXd explicit_part = st.j - dt * transport_j(s, st);
  const Eigen::MatrixXd stiff = drift_flux(s, r_next);
  const double coupling = (1.0 - eps2 * st.phi) / eps2;
  Eigen::MatrixXd out(st.j.rows(), st.j.cols());
  for (Eigen::Index h = 0; h < st.j.cols(); ++h) {
    const double denom = 1.0 + dt * s.table.mu[half + h] / eps2;
    for (Eigen::Index i = 0; i < st.j.rows(); ++i) {
      out(i, h) = (explicit_part(i, h) - dt * coupling * stiff(i, h)) / denom;
    }
  }
  return out;
}

}  // namespace bifid
