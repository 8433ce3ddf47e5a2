#include <doctest.h>

#include <cmath>

#include "bifid/presets.hpp"
#include "bifid/semiconductor.hpp"
#include "oracles.hpp"

using namespace bifid;

namespace {

SemiconductorSetup make_setup(int nv, int nx, const CrossSectionFn& sigma, bool potential) {
  SemiconductorSetup s;
  s.space = build_spatial_mesh(0.0, 1.0, nx, BoundaryCondition::kPeriodic);
  s.velocity = build_velocity_mesh(1, 8.0, nv, VelocityLayout::kCellCentered);
  s.table = build_cross_section(s.velocity, sigma);
  if (potential) {
    s.potential = test1a_potential(s.space, PotentialForm::kCorrected);
  } else {
    s.potential.phi_x = Eigen::VectorXd::Ones(nx);
    s.potential.dphi_dx = Eigen::VectorXd::Zero(nx);
  }
  return s;
}

double one(double, double) { return 1.0; }

// Positive, non-equilibrium data: rho(x) times a Maxwellian of varying temperature.
Field smooth_state(const SemiconductorSetup& s) {
  Field f(s.space.cells, s.velocity.size());
  const double u = 0.0;
  for (int i = 0; i < s.space.cells; ++i) {
    const double x = s.space.position(i);
    f.row(i) = maxwellian(s.velocity, 1.0 + 0.3 * std::cos(2 * M_PI * x), {&u, 1}, 0.6 + 0.3 * std::sin(2 * M_PI * x))
                   .transpose();
  }
  return f;
}

}  // namespace

TEST_CASE("control parameter") {
  CHECK(control_parameter(1.0) == 1.0);
  CHECK(control_parameter(0.1) == 1.0);
  CHECK(control_parameter(10.0) == doctest::Approx(0.01));
  for (double e : {0.5, 1.0, 2.0, 100.0}) CHECK(1.0 - e * e * control_parameter(e) >= 0.0);
}

TEST_CASE("even/odd decomposition") {
  const auto m = build_velocity_mesh(1, 8.0, 20, VelocityLayout::kCellCentered);
  const double eps = 0.1;
  const double u0 = 0.0;
  const Eigen::VectorXd mx = maxwellian(m, 1.0, {&u0, 1}, 1.0);

  Field even(1, m.size());
  even.row(0) = mx.transpose();
  CHECK(even_odd_decompose(m, even, eps).j.cwiseAbs().maxCoeff() == 0.0);

  Field f(1, m.size());
  for (int l = 0; l < m.size(); ++l) f(0, l) = mx[l] * (1.0 + eps * m.coord(l, 0));
  const auto st = even_odd_decompose(m, f, eps);
  for (int h = 0; h < m.size() / 2; ++h) {
    const int l = m.size() / 2 + h;
    CHECK(st.r(0, h) == doctest::Approx(mx[l]).epsilon(1e-14));
    CHECK(st.j(0, h) == doctest::Approx(m.coord(l, 0) * mx[l]).epsilon(1e-12));
  }

  const Field rnd = oracle::random_matrix(5, m.size(), 4);
  const Field back = even_odd_recompose(m, even_odd_decompose(m, rnd, 0.37));
  CHECK((back - rnd).cwiseAbs().maxCoeff() < 1e-14);

  EvenOddState z = even_odd_decompose(m, rnd, 0.5);
  z.j.setZero();
  const Field fe = even_odd_recompose(m, z);
  for (int l = 0; l < m.size(); ++l) CHECK(fe(2, l) == fe(2, m.negated_index(l)));
  z = even_odd_decompose(m, rnd, 0.5);
  z.r.setZero();
  const Field fo = even_odd_recompose(m, z);
  for (int h = 0; h < m.size() / 2; ++h) CHECK(fo(1, m.size() / 2 + h) == doctest::Approx(0.5 * z.j(1, h)));
  for (int l = 0; l < m.size(); ++l) CHECK(fo(1, l) == -fo(1, m.negated_index(l)));

  CHECK_THROWS_AS(even_odd_decompose(m, rnd, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(even_odd_decompose(build_velocity_mesh(1, 8.0, 20), rnd, 1.0), std::invalid_argument);
}

TEST_CASE("low-fidelity update limits") {
  const auto s = make_setup(40, 30, test1a_cross_section, true);
  const Field f = smooth_state(s);
  const double dt = 1e-4;

  const auto st = even_odd_decompose(s.velocity, f, 1e6);
  const Eigen::MatrixXd r_star = st.r - dt * transport_r(s, st);
  CHECK((lf_update_r(s, st, dt) - r_star).cwiseAbs().maxCoeff() < 1e-12);

  // Uniform equilibrium without forcing is a fixed point.
  const auto s0 = make_setup(40, 30, test1a_cross_section, false);
  Field eq(30, 40);
  for (int i = 0; i < 30; ++i) eq.row(i) = 1.7 * s0.table.equilibrium.transpose();
  for (double eps : {1.0, 1e-3}) {
    const auto se = even_odd_decompose(s0.velocity, eq, eps);
    CHECK((lf_update_r(s0, se, dt) - se.r).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((hf_update_r(s0, se, dt) - se.r).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("mass conservation of the r update") {
  const auto s = make_setup(40, 30, test1a_cross_section, true);
  const Field f = smooth_state(s);
  for (double eps : {1.0, 1e-2}) {
    const auto st = even_odd_decompose(s.velocity, f, eps);
    const double before = half_grid_density(s.velocity, st.r).sum();
    const double lf = half_grid_density(s.velocity, lf_update_r(s, st, 1e-4)).sum();
    const double hf = half_grid_density(s.velocity, hf_update_r(s, st, 1e-4)).sum();
    CHECK(std::abs(lf - before) < 1e-12 * before);
    CHECK(std::abs(hf - before) < 1e-12 * before);
  }
}

TEST_CASE("high fidelity equals low fidelity when Q_LB is the penalty") {
  const auto s = make_setup(30, 20, one, true);
  const Field f = smooth_state(s);
  for (double eps : {1.0, 1e-3}) {
    const auto st = even_odd_decompose(s.velocity, f, eps);
    CHECK((hf_update_r(s, st, 1e-4) - lf_update_r(s, st, 1e-4)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("subset HF update equals the full update on those columns") {
  const auto s = make_setup(30, 20, test1a_cross_section, true);
  const auto st = even_odd_decompose(s.velocity, smooth_state(s), 0.5);
  const Eigen::MatrixXd full = hf_update_r(s, st, 1e-4);
  const std::vector<int> cols{3, 0, 14};
  const Eigen::MatrixXd part = hf_update_r(s, st, 1e-4, cols);
  for (std::size_t c = 0; c < cols.size(); ++c) CHECK((part.col(c) - full.col(cols[c])).cwiseAbs().maxCoeff() == 0.0);
  const std::vector<int> bad{15};
  CHECK_THROWS_AS(hf_update_r(s, st, 1e-4, bad), std::out_of_range);
}

TEST_CASE("stiff relaxation at epsilon = 1e-8") {
  // With sigma = 1 the HF source cancels exactly, so one step contracts any r.
  const auto s = make_setup(30, 20, one, true);
  EvenOddState st;
  st.epsilon = 1e-8;
  st.phi = control_parameter(st.epsilon);
  st.r = oracle::random_matrix(20, 15, 8, 0.0, 1.0);
  st.j = oracle::random_matrix(20, 15, 9);
  const Eigen::MatrixXd r1 = hf_update_r(s, st, 1e-4);
  const Eigen::VectorXd rho = half_grid_density(s.velocity, r1);
  double dist = 0.0;
  for (int i = 0; i < 20; ++i) {
    for (int h = 0; h < 15; ++h) dist += std::abs(r1(i, h) - rho[i] * s.table.equilibrium[15 + h]);
  }
  CHECK(dist <= 1e-6);

  // With the anisotropic kernel the contraction needs near-equilibrium data.
  const auto sa = make_setup(30, 20, test1a_cross_section, true);
  Field near(20, 30);
  for (int i = 0; i < 20; ++i) near.row(i) = (1.0 + 0.2 * i / 20.0) * sa.table.equilibrium.transpose();
  const auto sn = even_odd_decompose(sa.velocity, near, 1e-8);
  const Eigen::MatrixXd r2 = hf_update_r(sa, sn, 1e-4);
  const Eigen::VectorXd rho2 = half_grid_density(sa.velocity, r2);
  double dist2 = 0.0;
  for (int i = 0; i < 20; ++i) {
    for (int h = 0; h < 15; ++h) dist2 += std::abs(r2(i, h) - rho2[i] * sa.table.equilibrium[15 + h]);
  }
  CHECK(dist2 <= 1e-6);
}

TEST_CASE("j update") {
  const auto s = make_setup(30, 20, test1a_cross_section, true);
  const Field f = smooth_state(s);
  const double dt = 1e-4;

  // epsilon = 1: no implicit coupling to r^{n+1}.
  auto st = even_odd_decompose(s.velocity, f, 1.0);
  const Eigen::MatrixXd r_other = oracle::random_matrix(20, 15, 2);
  const Eigen::MatrixXd j1 = update_j(s, st, r_other, dt);
  const Eigen::MatrixXd expl = st.j - dt * transport_j(s, st);
  for (int h = 0; h < 15; ++h) {
    for (int i = 0; i < 20; ++i) CHECK(j1(i, h) == doctest::Approx(expl(i, h) / (1.0 + dt * s.table.mu[15 + h])));
  }

  // Small epsilon: discrete Fick law.
  st = even_odd_decompose(s.velocity, f, 1e-8);
  const Eigen::MatrixXd r_next = hf_update_r(s, st, dt);
  const Eigen::MatrixXd jf = update_j(s, st, r_next, dt);
  const Eigen::MatrixXd flux = drift_flux(s, r_next);
  for (int h = 0; h < 15; ++h) {
    for (int i = 0; i < 20; ++i) CHECK(jf(i, h) == doctest::Approx(-flux(i, h) / s.table.mu[15 + h]).epsilon(1e-6));
  }

  // Uniform state, constant potential: geometric decay.
  const auto s0 = make_setup(30, 20, test1a_cross_section, false);
  EvenOddState u;
  u.epsilon = 0.1;
  u.phi = control_parameter(0.1);
  u.r = Eigen::MatrixXd::Ones(20, 15);
  u.j = Eigen::MatrixXd::Constant(20, 15, 0.5);
  const Eigen::MatrixXd ju = update_j(s0, u, u.r, dt);
  for (int h = 0; h < 15; ++h) {
    CHECK(ju(4, h) == doctest::Approx(0.5 / (1.0 + dt * s0.table.mu[15 + h] / 0.01)).epsilon(1e-12));
  }
}
