#include "bifid/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bifid/selection.hpp"

namespace bifid {

Eigen::VectorXd subspace_distances(const Eigen::MatrixXd& columns, const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) return columns.colwise().norm().transpose();
  const Eigen::MatrixXd c = pseudo_projection_coefficients(basis, columns);
  return (columns - basis * c).colwise().norm().transpose();
}

double subspace_distance(const Eigen::VectorXd& column, const Eigen::MatrixXd& basis) {
  return subspace_distances(column, basis)[0];
}

double max_relative_distance(const Eigen::MatrixXd& columns, const std::vector<int>& gamma) {
  const Eigen::VectorXd d = subspace_distances(columns, gather_columns(columns, gamma));
  const Eigen::VectorXd norms = columns.colwise().norm().transpose();
  double out = 0.0;
  for (Eigen::Index l = 0; l < columns.cols(); ++l) {
    if (norms[l] < kTinyDenominator) continue;
    out = std::max(out, d[l] / norms[l]);
  }
  return out;
}

ErrorReport empirical_bound(const Eigen::MatrixXd& lf_columns, const std::vector<int>& gamma,
                            const Eigen::MatrixXd& hf_selected_columns) {
  if (hf_selected_columns.cols() != static_cast<Eigen::Index>(gamma.size())) {
    throw std::invalid_argument("high-fidelity columns must match the selection");
  }
  ErrorReport rep;
  rep.lf_relative_distance = max_relative_distance(lf_columns, gamma);

  if (gamma.size() < 2) {
    rep.notes.emplace_back("in-plane ratio needs at least two selected points");
  } else {
    const Eigen::Index m = static_cast<Eigen::Index>(gamma.size()) - 1;
    const std::vector<int> rest(gamma.begin(), gamma.end() - 1);
    const Eigen::MatrixXd hf_rest = hf_selected_columns.leftCols(m);
    const Eigen::VectorXd hf_end = hf_selected_columns.col(m);

    const Eigen::MatrixXd c_lf = pseudo_projection_coefficients(gather_columns(lf_columns, rest), lf_columns.col(gamma.back()));
    const Eigen::VectorXd bf_end = hf_rest * c_lf;
    const Eigen::VectorXd proj = hf_rest * pseudo_projection_coefficients(hf_rest, hf_end);
    const double d_h = (hf_end - proj).norm();
    if (d_h < kTinyDenominator) {
      rep.notes.emplace_back("in-plane ratio undefined: held-out column lies in the span");
    } else {
      rep.r_e_end = (proj - bf_end).norm() / d_h;
    }
  }
  rep.empirical_bound = rep.lf_relative_distance * (1.0 + rep.r_e_end.value_or(0.0));
  return rep;
}

std::optional<double> similarity_ratio(const Eigen::MatrixXd& lf_columns, const Eigen::MatrixXd& hf_columns,
                                       const std::vector<int>& gamma) {
  const double den = max_relative_distance(lf_columns, gamma);
  if (den < kTinyDenominator) return std::nullopt;
  return max_relative_distance(hf_columns, gamma) / den;
}

double relative_l1_error(const Eigen::MatrixXd& f_ref, const Eigen::MatrixXd& f_approx) {
  if (f_ref.rows() != f_approx.rows() || f_ref.cols() != f_approx.cols()) throw std::invalid_argument("shape mismatch");
  const double den = f_ref.cwiseAbs().sum();
  if (!(den > 0.0)) throw std::domain_error("reference has zero l1 norm");
  return (f_ref - f_approx).cwiseAbs().sum() / den;
}

double relative_l1_error(const Field& f_ref, const Field& f_approx) {
  if (f_ref.rows() != f_approx.rows() || f_ref.cols() != f_approx.cols()) throw std::invalid_argument("shape mismatch");
  const double den = f_ref.cwiseAbs().sum();
  if (!(den > 0.0)) throw std::domain_error("reference has zero l1 norm");
  return (f_ref - f_approx).cwiseAbs().sum() / den;
}

double theorem_constant(const Eigen::MatrixXd& lf_columns, const Eigen::MatrixXd& hf_columns,
                        const Eigen::MatrixXd& bf_columns, double delta) {
  double c = 0.0;
  for (Eigen::Index i = 0; i < hf_columns.rows(); ++i) {
    const double num = (hf_columns.row(i) - bf_columns.row(i)).cwiseAbs().maxCoeff();
    const double den = (hf_columns.row(i) - lf_columns.row(i)).cwiseAbs().maxCoeff() + delta;
    if (den < kTinyDenominator) continue;
    c = std::max(c, num / den);
  }
  return c;
}

void attach_full_sweep(ErrorReport& report, const Eigen::MatrixXd& lf_columns, const Eigen::MatrixXd& hf_columns,
                       const Eigen::MatrixXd& bf_columns, const std::vector<int>& gamma, double delta) {
  report.r_s = similarity_ratio(lf_columns, hf_columns, gamma);
  if (!report.r_s) report.notes.emplace_back("similarity ratio undefined: LF ensemble lies in the selected span");

  const double norm = hf_columns.norm();
  if (norm < kTinyDenominator) {
    report.notes.emplace_back("true error undefined: zero high-fidelity ensemble");
  } else {
    report.true_error = (hf_columns - bf_columns).norm() / norm;
    double worst = 0.0;
    for (Eigen::Index l = 0; l < hf_columns.cols(); ++l) {
      const double n = hf_columns.col(l).norm();
      if (n < kTinyDenominator) continue;
      worst = std::max(worst, (hf_columns.col(l) - bf_columns.col(l)).norm() / n);
    }
    report.true_error_max = worst;
  }
  report.theorem_constant = theorem_constant(lf_columns, hf_columns, bf_columns, delta);
}

}  // namespace bifid
