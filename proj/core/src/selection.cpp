#include "bifid/selection.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace bifid {

SelectionResult greedy_select(const Eigen::MatrixXd& ensemble, double delta, int gamma_max) {
  if (ensemble.cols() == 0 || ensemble.rows() == 0) throw std::invalid_argument("empty ensemble");
  if (!(delta > 0.0)) throw std::invalid_argument("selection threshold must be positive");
  if (gamma_max < 1) throw std::invalid_argument("gamma_max must be at least 1");

  const Eigen::Index n = ensemble.cols();
  const Eigen::Index cap = std::min<Eigen::Index>(gamma_max, n);
  SelectionResult res;
  res.residuals = ensemble.colwise().squaredNorm().transpose();
  Eigen::MatrixXd factor = Eigen::MatrixXd::Zero(n, cap);
  std::vector<char> taken(static_cast<std::size_t>(n), 0);

  auto best_remaining = [&](double& best) {
    Eigen::Index arg = -1;
    best = -1.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (taken[static_cast<std::size_t>(l)]) continue;
      if (res.residuals[l] > best) {
        best = res.residuals[l];
        arg = l;
      }
    }
    return arg;
  };

  for (Eigen::Index step = 0; step < cap; ++step) {
    double best = 0.0;
    const Eigen::Index piv = best_remaining(best);
    if (piv < 0 || best < delta) break;
    res.gamma.push_back(static_cast<int>(piv));
    res.pivot_values.push_back(best);
    taken[static_cast<std::size_t>(piv)] = 1;

    Eigen::VectorXd r = ensemble.transpose() * ensemble.col(piv);
    if (step > 0) r -= factor.leftCols(step) * factor.row(piv).head(step).transpose();
    const double diag = std::sqrt(best);
    factor(piv, step) = diag;
    res.residuals[piv] = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (taken[static_cast<std::size_t>(l)]) continue;
      factor(l, step) = r[l] / diag;
      res.residuals[l] -= factor(l, step) * factor(l, step);
    }
  }

  res.chol_factor = factor.leftCols(static_cast<Eigen::Index>(res.gamma.size()));
  double best = 0.0;
  const bool remaining = best_remaining(best) >= 0 && best >= delta;
  res.terminated_by = remaining ? Termination::kMaxPoints : Termination::kThreshold;
  return res;
}

Eigen::MatrixXd pseudo_projection_coefficients(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& targets, double cutoff) {
  if (basis.rows() != targets.rows()) throw std::invalid_argument("basis and targets have different lengths");
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(basis.cols(), targets.cols());
  if (basis.cols() == 0) return coeffs;
  // Singular values of the basis are square roots of the Gramian eigenvalues.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(basis, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv[0] > 0.0)) return coeffs;
  const double floor = cutoff * sv[0] * sv[0];
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] * sv[rank] > floor) ++rank;
  const Eigen::MatrixXd ut = svd.matrixU().leftCols(rank).transpose() * targets;
  const Eigen::VectorXd inv = sv.head(rank).cwiseInverse();
  coeffs = svd.matrixV().leftCols(rank) * (inv.asDiagonal() * ut);
  return coeffs;
}

Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& m, const std::vector<int>& cols) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(cols[c]);
  return out;
}

ProjectionCoeffs project_coefficients(const Eigen::MatrixXd& ensemble, const SelectionResult& selection) {
  return project_coefficients(ensemble, selection.gamma);
}

ProjectionCoeffs project_coefficients(const Eigen::MatrixXd& ensemble, const std::vector<int>& gamma) {
  for (int k : gamma) {
    if (k < 0 || k >= ensemble.cols()) throw std::out_of_range("selected index out of range");
  }
  ProjectionCoeffs pc;
  pc.gamma = gamma;
  pc.coeffs = pseudo_projection_coefficients(gather_columns(ensemble, gamma), ensemble);
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    pc.coeffs.col(gamma[k]).setZero();
    pc.coeffs(static_cast<Eigen::Index>(k), gamma[k]) = 1.0;
  }
  return pc;
}

Eigen::MatrixXd bf_reconstruct(const ProjectionCoeffs& coeffs, const Eigen::MatrixXd& hf_columns) {
  if (hf_columns.cols() != coeffs.coeffs.rows()) {
    throw std::invalid_argument("number of high-fidelity columns does not match the selection");
  }
  return hf_columns * coeffs.coeffs;
}

}  // namespace bifid
