#include <doctest.h>

#include <cmath>

#include "bifid/selection.hpp"
#include "oracles.hpp"

using namespace bifid;

TEST_CASE("rank-one ensemble selects one point") {
  Eigen::VectorXd u(4);
  u << 1.0, 2.0, -1.0, 0.5;
  Eigen::MatrixXd a(4, 6);
  for (int l = 0; l < 6; ++l) a.col(l) = (l + 1.0) * u;
  const auto s = greedy_select(a, 1e-12, 10);
  REQUIRE(s.gamma.size() == 1);
  CHECK(s.gamma[0] == 5);
  CHECK(s.terminated_by == Termination::kThreshold);
  CHECK(s.residuals.maxCoeff() < 1e-10);
}

TEST_CASE("orthogonal columns are taken by decreasing norm") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = 5.0;
  const auto s = greedy_select(a, 1e-12, 3);
  REQUIRE(s.gamma.size() == 2);
  CHECK(s.gamma[0] == 1);
  CHECK(s.gamma[1] == 0);
  CHECK(s.pivot_values[0] == doctest::Approx(25.0));
  CHECK(s.pivot_values[1] == doctest::Approx(9.0));

  const auto capped = greedy_select(a, 1e-12, 1);
  CHECK(capped.gamma.size() == 1);
  CHECK(capped.terminated_by == Termination::kMaxPoints);
}

TEST_CASE("selection agrees with an explicit Gram-Schmidt greedy oracle") {
  int exact = 0;
  for (std::uint32_t seed = 1; seed <= 100; ++seed) {
    const int rows = 6 + static_cast<int>(seed % 7);
    const int cols = 10 + static_cast<int>(seed % 11);
    const Eigen::MatrixXd a = oracle::random_matrix(rows, cols, seed);
    const int cap = 1 + static_cast<int>(seed % 8);
    const auto got = greedy_select(a, 1e-10, cap);
    const auto want = oracle::gram_schmidt_greedy(a, 1e-10, cap);
    if (got.gamma == want) ++exact;
  }
  CHECK(exact == 100);
}

TEST_CASE("pivoted Cholesky factor reproduces the Gramian on the selected block") {
  const Eigen::MatrixXd a = oracle::random_matrix(8, 20, 11);
  const auto s = greedy_select(a, 1e-12, 8);
  REQUIRE(s.gamma.size() == 8);
  const Eigen::MatrixXd g = a.transpose() * a;
  const Eigen::MatrixXd lf = s.chol_factor * s.chol_factor.transpose();
  for (int p : s.gamma) {
    for (int l = 0; l < 20; ++l) CHECK(std::abs(lf(p, l) - g(p, l)) < 1e-10 * g.cwiseAbs().maxCoeff());
  }
  for (std::size_t k = 1; k < s.pivot_values.size(); ++k) CHECK(s.pivot_values[k] <= s.pivot_values[k - 1] + 1e-12);
  // Full rank in R^8: the residuals vanish after eight pivots.
  CHECK(s.residuals.maxCoeff() < 1e-10);
}

TEST_CASE("selection rejects bad arguments") {
  const Eigen::MatrixXd a = oracle::random_matrix(3, 3, 1);
  CHECK_THROWS_AS(greedy_select(a, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(greedy_select(a, 1e-12, 0), std::invalid_argument);
  CHECK_THROWS_AS(greedy_select(Eigen::MatrixXd(0, 0), 1e-12, 2), std::invalid_argument);
}

TEST_CASE("projection coefficients") {
  const Eigen::MatrixXd a = oracle::random_matrix(10, 15, 21);
  const auto s = greedy_select(a, 1e-12, 4);
  const auto pc = project_coefficients(a, s);
  REQUIRE(pc.coeffs.rows() == 4);
  for (std::size_t k = 0; k < s.gamma.size(); ++k) {
    for (int r = 0; r < 4; ++r) CHECK(pc.coeffs(r, s.gamma[k]) == (r == static_cast<int>(k) ? 1.0 : 0.0));
  }
  const Eigen::MatrixXd basis = gather_columns(a, s.gamma);
  const Eigen::MatrixXd ref = oracle::least_squares(basis, a);
  for (int l = 0; l < 15; ++l) {
    if (std::find(s.gamma.begin(), s.gamma.end(), l) != s.gamma.end()) continue;
    CHECK((pc.coeffs.col(l) - ref.col(l)).cwiseAbs().maxCoeff() < 1e-10);
  }

  // A column orthogonal to the basis has zero coefficients.
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 3);
  b(0, 0) = 1.0;
  b(1, 1) = 2.0;
  b(2, 2) = 0.5;
  const auto pb = project_coefficients(b, std::vector<int>{1, 0});
  CHECK(pb.coeffs.col(2).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(project_coefficients(b, std::vector<int>{3}), std::out_of_range);
}

TEST_CASE("pseudo-inverse drops the Gramian kernel") {
  Eigen::MatrixXd basis(4, 3);
  basis.col(0) << 1, 0, 0, 0;
  basis.col(1) << 0, 1, 0, 0;
  basis.col(2) = basis.col(0) + 1e-9 * basis.col(1);  // numerically dependent
  Eigen::VectorXd t(4);
  t << 2, 3, 0, 0;
  const Eigen::MatrixXd c = pseudo_projection_coefficients(basis, t);
  CHECK(((basis * c).col(0) - t).norm() < 1e-6);
  CHECK(c.cwiseAbs().maxCoeff() < 10.0);
}

TEST_CASE("bi-fidelity reconstruction") {
  const Eigen::MatrixXd lf = oracle::random_matrix(6, 12, 31);
  const auto s = greedy_select(lf, 1e-12, 3);
  const auto pc = project_coefficients(lf, s);

  // HF equal to LF on the selection reproduces the LF projection.
  const Eigen::MatrixXd rec = bf_reconstruct(pc, gather_columns(lf, s.gamma));
  for (std::size_t k = 0; k < s.gamma.size(); ++k) CHECK((rec.col(s.gamma[k]) - lf.col(s.gamma[k])).norm() == 0.0);

  // Linear in the HF data.
  const Eigen::MatrixXd h1 = oracle::random_matrix(6, 3, 1), h2 = oracle::random_matrix(6, 3, 2);
  const Eigen::MatrixXd lin = bf_reconstruct(pc, 2.0 * h1 - h2) - (2.0 * bf_reconstruct(pc, h1) - bf_reconstruct(pc, h2));
  CHECK(lin.cwiseAbs().maxCoeff() < 1e-12);

  // Full selection reproduces HF exactly.
  const auto all = project_coefficients(lf, std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  const Eigen::MatrixXd hf = oracle::random_matrix(6, 12, 5);
  CHECK((bf_reconstruct(all, hf) - hf).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(bf_reconstruct(pc, h1.leftCols(2)), std::invalid_argument);
}
