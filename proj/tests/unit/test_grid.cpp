#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bifid/grid.hpp"
#include "oracles.hpp"

using namespace bifid;

namespace {

std::array<double, 2> zero2{};

Field rows_of(const Eigen::VectorXd& profile, int cells) {
  Field f(cells, profile.size());
  for (int i = 0; i < cells; ++i) f.row(i) = profile.transpose();
  return f;
}

}  // namespace

TEST_CASE("nodal 1-D mesh matches the half-open box") {
  const auto m = build_velocity_mesh(1, 8.0, 100);
  CHECK(m.size() == 100);
  CHECK(m.coord(0, 0) == doctest::Approx(-8.0));
  CHECK(m.coord(99, 0) == doctest::Approx(8.0 - m.spacing));
  CHECK(m.spacing == doctest::Approx(0.16));
}

TEST_CASE("cell-centered mesh is exactly symmetric") {
  for (int dim : {1, 2}) {
    const auto m = build_velocity_mesh(dim, 8.0, 16, VelocityLayout::kCellCentered);
    for (int l = 0; l < m.size(); ++l) {
      const int neg = m.negated_index(l);
      REQUIRE(neg >= 0);
      for (int a = 0; a < dim; ++a) CHECK(m.coord(neg, a) == -m.coord(l, a));
    }
  }
}

TEST_CASE("flat and multi indices are inverse") {
  const auto m = build_velocity_mesh(2, 4.0, 7);
  for (int l = 0; l < m.size(); ++l) CHECK(m.flat_index(m.multi_index(l)) == l);
}

TEST_CASE("mesh construction rejects bad input") {
  CHECK_THROWS_AS(build_velocity_mesh(3, 8.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_velocity_mesh(1, -1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_spatial_mesh(1.0, 0.0, 10, BoundaryCondition::kPeriodic), std::invalid_argument);
}

TEST_CASE("maxwellian peak values") {
  const auto m2 = build_velocity_mesh(2, 8.0, 32);  // nodal grid contains the origin
  const int origin = m2.flat_index({16, 16});
  REQUIRE(m2.coord(origin, 0) == doctest::Approx(0.0));
  CHECK(maxwellian(m2, 1.0, zero2, 1.0)[origin] == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));

  const auto m1 = build_velocity_mesh(1, 8.0, 100);
  const double u0 = 0.0;
  CHECK(maxwellian(m1, 1.0, {&u0, 1}, 1.0)[50] == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));

  CHECK_THROWS_AS(maxwellian(m1, 0.0, {&u0, 1}, 1.0), InvalidStateError);
  CHECK_THROWS_AS(maxwellian(m1, 1.0, {&u0, 1}, -1.0), InvalidStateError);
}

TEST_CASE("moments of sampled Maxwellians") {
  const auto m = build_velocity_mesh(2, 8.0, 32, VelocityLayout::kCellCentered);
  const std::array<double, 2> u{1.0, 0.0};
  const auto mom = compute_moments(m, rows_of(maxwellian(m, 2.0, u, 0.5), 3));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(mom.rho[i] - 2.0) < 1e-6);
    CHECK(std::abs(mom.u(i, 0) - 1.0) < 1e-6);
    CHECK(std::abs(mom.u(i, 1)) < 1e-6);
    CHECK(std::abs(mom.T[i] - 0.5) < 1e-6);
  }

  const auto std_mom = compute_moments(m, rows_of(maxwellian(m, 1.0, zero2, 1.0), 1));
  CHECK(std::abs(std_mom.rho[0] - 1.0) < 1e-6);
  CHECK(std::abs(std_mom.T[0] - 1.0) < 1e-6);

  const auto doubled = compute_moments(m, rows_of(2.0 * maxwellian(m, 1.0, zero2, 1.0), 1));
  CHECK(doubled.rho[0] == doctest::Approx(2.0 * std_mom.rho[0]));
  CHECK(doubled.T[0] == doctest::Approx(std_mom.T[0]));
}

TEST_CASE("moments agree with a naive loop oracle") {
  const auto m = build_velocity_mesh(2, 5.0, 12, VelocityLayout::kCellCentered);
  const Eigen::MatrixXd r = oracle::random_matrix(1, m.size(), 7, 0.0, 1.0);
  Field f = r;
  std::vector<std::vector<double>> v;
  std::vector<double> vals;
  for (int l = 0; l < m.size(); ++l) {
    v.push_back({m.coord(l, 0), m.coord(l, 1)});
    vals.push_back(f(0, l));
  }
  const auto ref = oracle::naive_moments(v, vals, m.cell_volume());
  const auto got = compute_moments(m, f);
  CHECK(got.rho[0] == doctest::Approx(ref.rho).epsilon(1e-13));
  CHECK(got.u(0, 0) == doctest::Approx(ref.u[0]).epsilon(1e-12));
  CHECK(got.u(0, 1) == doctest::Approx(ref.u[1]).epsilon(1e-12));
  CHECK(got.T[0] == doctest::Approx(ref.T).epsilon(1e-12));
}

TEST_CASE("one-dimensional temperature convention") {
  const auto m = build_velocity_mesh(1, 8.0, 64, VelocityLayout::kCellCentered);
  const double u = 0.3;
  const auto mom = compute_moments(m, rows_of(maxwellian(m, 1.0, {&u, 1}, 0.7), 1));
  CHECK(std::abs(mom.T[0] - 0.7) < 1e-8);
}

TEST_CASE("moment quadrature error decreases under refinement") {
  const std::array<double, 2> u{0.4, -0.2};
  double prev = 1.0;
  for (int n : {16, 32, 64}) {
    const auto m = build_velocity_mesh(2, 8.0, n, VelocityLayout::kCellCentered);
    const auto mom = compute_moments(m, rows_of(maxwellian(m, 1.0, u, 0.3), 1));
    const double err = std::abs(mom.rho[0] - 1.0) + std::abs(mom.u(0, 0) - 0.4) + std::abs(mom.u(0, 1) + 0.2) +
                       std::abs(mom.T[0] - 0.3);
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("zero field is a vacuum cell") {
  const auto m = build_velocity_mesh(2, 8.0, 8, VelocityLayout::kCellCentered);
  Field f = Field::Zero(3, m.size());
  f.row(0).setConstant(1.0);
  try {
    compute_moments(m, f);
    FAIL("expected a vacuum error");
  } catch (const VacuumCellError& e) {
    CHECK(e.cell() == 1);
  }
}

TEST_CASE("equilibrium distance") {
  const auto space = build_spatial_mesh(0.0, 1.0, 4, BoundaryCondition::kPeriodic);
  const auto m = build_velocity_mesh(2, 8.0, 32, VelocityLayout::kCellCentered);
  const Field eq = rows_of(maxwellian(m, 1.3, zero2, 0.9), 4);
  const Field meq = maxwellian_field(m, compute_moments(m, eq));
  CHECK(equilibrium_distance(space, m, meq, EquilibriumModel::kNonlinear) < 1e-14);

  // s v1 v2 M has zero mass, momentum and energy, so the local equilibrium
  // is unchanged and the distance is the size of the perturbation.
  for (auto model : {EquilibriumModel::kLinear, EquilibriumModel::kNonlinear}) {
    const Field base = model == EquilibriumModel::kLinear ? rows_of(normalized_maxwellian(m), 4) : meq;
    Field pert = base;
    for (int i = 0; i < 4; ++i) {
      for (int l = 0; l < m.size(); ++l) pert(i, l) += 1e-3 * m.coord(l, 0) * m.coord(l, 1) * base(i, l);
    }
    const double expected = lp_norm(as_span(Field(pert - base)), Norm::kL1, space.spacing * m.cell_volume());
    CHECK(equilibrium_distance(space, m, pert, model) == doctest::Approx(expected).epsilon(1e-8));
  }

  Field two_bumps(1, m.size());
  const std::array<double, 2> up{1.0, 0.0}, um{-1.0, 0.0};
  two_bumps.row(0) = (0.5 * maxwellian(m, 1.0, up, 1.0) + 0.5 * maxwellian(m, 1.0, um, 1.0)).transpose();
  const auto one = build_spatial_mesh(0.0, 1.0, 2, BoundaryCondition::kPeriodic);
  Field tb2(2, m.size());
  tb2.row(0) = two_bumps.row(0);
  tb2.row(1) = two_bumps.row(0);
  CHECK(equilibrium_distance(one, m, tb2, EquilibriumModel::kNonlinear) > 1e-3);
}

TEST_CASE("norms") {
  const std::vector<double> v{3.0, 4.0};
  CHECK(lp_norm(v, Norm::kL2) == doctest::Approx(5.0));
  CHECK(lp_norm(v, Norm::kL1) == doctest::Approx(7.0));
  CHECK(lp_norm(v, Norm::kLinf) == doctest::Approx(4.0));
  const std::vector<double> z(5, 0.0);
  for (Norm p : {Norm::kL1, Norm::kL2, Norm::kLinf}) CHECK(lp_norm(z, p) == 0.0);

  const Eigen::MatrixXd r = oracle::random_matrix(10, 1, 3);
  std::vector<double> x(r.data(), r.data() + 10);
  double l1 = 0.0, l2 = 0.0;
  for (int k = 9; k >= 0; --k) {
    l1 += std::abs(x[k]);
    l2 += x[k] * x[k];
  }
  CHECK(std::abs(lp_norm(x, Norm::kL1) - l1) < 1e-14);
  CHECK(std::abs(lp_norm(x, Norm::kL2) - std::sqrt(l2)) < 1e-14);

  std::vector<double> scaled = x;
  for (double& e : scaled) e *= -2.5;
  for (Norm p : {Norm::kL1, Norm::kL2, Norm::kLinf}) {
    CHECK(lp_norm(scaled, p) == doctest::Approx(2.5 * lp_norm(x, p)).epsilon(1e-14));
  }
  CHECK(lp_norm(x, Norm::kL2, 0.25) == doctest::Approx(0.5 * lp_norm(x, Norm::kL2)));
}
