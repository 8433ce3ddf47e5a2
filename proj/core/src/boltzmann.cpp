#include "bifid/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace bifid {

namespace {

std::string cfl_message(double dt, double admissible) {
  std::ostringstream os;
  os.precision(17);
  os << "time step " << dt << " violates the transport CFL limit; admissible dt <= " << admissible;
  return os.str();
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

}  // namespace

CflError::CflError(double dt, double admissible) : std::invalid_argument(cfl_message(dt, admissible)), admissible_(admissible) {}

double admissible_transport_dt(const SpatialMesh& space, const VelocityMesh& velocity) {
  double vmax = 0.0;
  for (int l = 0; l < velocity.size(); ++l) vmax = std::max(vmax, std::abs(velocity.coord(l, 0)));
  return space.spacing / vmax;
}

void check_cfl(const BoltzmannSetup& s, double dt) {
  const double limit = admissible_transport_dt(s.space, s.velocity);
  if (dt > limit * (1.0 + 1e-12)) throw CflError(dt, limit);
}

Field transport_divergence(const BoltzmannSetup& s, const Field& f) {
  const int n = static_cast<int>(f.rows());
  const int nv = s.velocity.size();
  if (f.cols() != nv) throw std::invalid_argument("field width does not match velocity mesh");
  const double dx = s.space.spacing;
  Field out(n, nv);
  std::vector<double> g(static_cast<std::size_t>(n + 4));
  std::vector<double> flux(static_cast<std::size_t>(n + 1));
  for (int l = 0; l < nv; ++l) {
    const double v = s.velocity.coord(l, 0);
    // g[k + 2] holds cell k, k = -2 .. n + 1.
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i + 2)] = f(i, l);
    switch (s.space.bc) {
      case BoundaryCondition::kPeriodic:
        g[0] = f(n - 2, l);
        g[1] = f(n - 1, l);
        g[static_cast<std::size_t>(n + 2)] = f(0, l);
        g[static_cast<std::size_t>(n + 3)] = f(1, l);
        break;
      case BoundaryCondition::kNeumann:
        g[0] = g[1] = f(0, l);
        g[static_cast<std::size_t>(n + 2)] = g[static_cast<std::size_t>(n + 3)] = f(n - 1, l);
        break;
      case BoundaryCondition::kSpecular: {
        const int m = s.velocity.mirror_index(l, 0);
        if (m < 0) throw std::invalid_argument("specular walls need a velocity grid symmetric in v^1");
        g[1] = f(0, m);
        g[0] = f(1, m);
        g[static_cast<std::size_t>(n + 2)] = f(n - 1, m);
        g[static_cast<std::size_t>(n + 3)] = f(n - 2, m);
        break;
      }
    }
    // flux[i] is the flux through the left face of cell i (i = 0..n).
    for (int i = 0; i <= n; ++i) {
      const std::size_t left = static_cast<std::size_t>(i + 1);
      const std::size_t right = left + 1;
      double value;
      if (v > 0.0) {
        value = g[left];
        if (s.order == TransportOrder::kMusclMinmod) value += 0.5 * minmod(g[left] - g[left - 1], g[right] - g[left]);
      } else {
        value = g[right];
        if (s.order == TransportOrder::kMusclMinmod) value -= 0.5 * minmod(g[right] - g[left], g[right + 1] - g[right]);
      }
      flux[static_cast<std::size_t>(i)] = v * value;
    }
    for (int i = 0; i < n; ++i) out(i, l) = (flux[static_cast<std::size_t>(i + 1)] - flux[static_cast<std::size_t>(i)]) / dx;
  }
  return out;
}

TransportedState transport_step(const BoltzmannSetup& s, const Field& f, double dt) {
  check_cfl(s, dt);
  TransportedState t;
  t.f_star = f - dt * transport_divergence(s, f);
  t.moments_star = compute_moments(s.velocity, t.f_star);
  return t;
}

Eigen::MatrixXd collision_columns(const BoltzmannSetup& s, const Field& f, std::span<const int> cols, double lambda) {
  if (!s.relaxation_collision) return q_nb_dvm_apply(s.dvm, f, cols);
  const Field m = maxwellian_field(s.velocity, compute_moments(s.velocity, f));
  Eigen::MatrixXd out(f.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = lambda * (m.col(cols[c]) - f.col(cols[c]));
  }
  return out;
}

Field lf_step_bgk(const BoltzmannSetup& s, const Field& f, double dt, double epsilon, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("penalty parameter must be positive");
  const TransportedState t = transport_step(s, f, dt);
  const Field m = maxwellian_field(s.velocity, t.moments_star);
  return (epsilon * t.f_star + lambda * dt * m) / (epsilon + lambda * dt);
}

namespace {

void check_columns(std::span<const int> cols, int total) {
  for (int c : cols) {
    if (c < 0 || c >= total) throw std::out_of_range("velocity index out of range");
  }
}

}  // namespace

Eigen::MatrixXd hf_step_penalty(const BoltzmannSetup& s, const Field& f, double dt, double epsilon, double lambda,
                                std::span<const int> cols) {
  if (!(lambda > 0.0)) throw std::invalid_argument("penalty parameter must be positive");
  check_columns(cols, s.velocity.size());
  const TransportedState t = transport_step(s, f, dt);
  const Field m_next = maxwellian_field(s.velocity, t.moments_star);
  const Field m_now = maxwellian_field(s.velocity, compute_moments(s.velocity, f));
  const Eigen::MatrixXd q = collision_columns(s, f, cols, lambda);
  const double denom = epsilon + lambda * dt;
  Eigen::MatrixXd out(f.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int k = cols[c];
    const auto cc = static_cast<Eigen::Index>(c);
    out.col(cc) = (epsilon * t.f_star.col(k) + dt * (q.col(cc) - lambda * (m_now.col(k) - f.col(k))) +
                   lambda * dt * m_next.col(k)) /
                  denom;
  }
  return out;
}

ImexStages hf_step_imex_typeA(const BoltzmannSetup& s, const Field& f, double dt, double epsilon, double lambda,
                              std::span<const int> cols) {
  if (!(lambda > 0.0)) throw std::invalid_argument("penalty parameter must be positive");
  check_columns(cols, s.velocity.size());
  check_cfl(s, dt);
  const double denom = epsilon + lambda * dt;

  // Stage 1 is a pure relaxation, so its Maxwellian is that of f.
  const Field m1 = maxwellian_field(s.velocity, compute_moments(s.velocity, f));
  ImexStages out;
  out.stage1 = (epsilon * f + lambda * dt * m1) / denom;

  // Both stage-2 collision terms conserve moments, so the implicit Maxwellian
  // follows from the transported full-grid state alone.
  const Field f_tilde = f - dt * transport_divergence(s, out.stage1);
  out.moments2 = compute_moments(s.velocity, f_tilde);
  const Field m2 = maxwellian_field(s.velocity, out.moments2);

  const Eigen::MatrixXd q = collision_columns(s, out.stage1, cols, lambda);
  out.values.resize(f.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int k = cols[c];
    const auto cc = static_cast<Eigen::Index>(c);
    out.values.col(cc) = (epsilon * f_tilde.col(k) + dt * (q.col(cc) - lambda * (m1.col(k) - out.stage1.col(k))) +
                          lambda * dt * m2.col(k)) /
                         denom;
  }
  return out;
}

}  // namespace bifid
