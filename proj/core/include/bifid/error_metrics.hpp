#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bifid/grid.hpp"

namespace bifid {

/// Denominators below this are reported as an absent metric.
inline constexpr double kTinyDenominator = 1e-300;

struct ErrorReport {
  double empirical_bound = 0.0;
  /// Largest relative LF distance to the selected span (the factor in front of 1 + R_e).
  double lf_relative_distance = 0.0;
  std::optional<double> r_e_end;
  std::optional<double> r_s;
  /// Global ||f_H - f_B||_F / ||f_H||_F over the ensemble.
  std::optional<double> true_error;
  /// Largest per-velocity relative error.
  std::optional<double> true_error_max;
  std::optional<double> theorem_constant;
  std::optional<double> rel_l1;
  std::vector<std::string> notes;
};

/// l2 distance from `column` to the span of `basis`.
double subspace_distance(const Eigen::VectorXd& column, const Eigen::MatrixXd& basis);

/// Distances of every column of `columns` to span(basis).
Eigen::VectorXd subspace_distances(const Eigen::MatrixXd& columns, const Eigen::MatrixXd& basis);

/// max_v d^L / ||f_L(v)|| over columns with nonzero norm.
double max_relative_distance(const Eigen::MatrixXd& columns, const std::vector<int>& gamma);

/// Computable bound from the LF ensemble, the HF values at gamma (ordered as
/// gamma) and nothing else. The in-plane ratio uses the last selected point as
/// a held-out test column.
ErrorReport empirical_bound(const Eigen::MatrixXd& lf_columns, const std::vector<int>& gamma,
                            const Eigen::MatrixXd& hf_selected_columns);

/// max_v d^H/||f_H|| divided by max_v d^L/||f_L||; absent on a zero denominator.
std::optional<double> similarity_ratio(const Eigen::MatrixXd& lf_columns, const Eigen::MatrixXd& hf_columns,
                                       const std::vector<int>& gamma);

double relative_l1_error(const Field& f_ref, const Field& f_approx);
double relative_l1_error(const Eigen::MatrixXd& f_ref, const Eigen::MatrixXd& f_approx);

/// Fills true_error, true_error_max, r_s and theorem_constant from a full HF sweep.
void attach_full_sweep(ErrorReport& report, const Eigen::MatrixXd& lf_columns, const Eigen::MatrixXd& hf_columns,
                       const Eigen::MatrixXd& bf_columns, const std::vector<int>& gamma, double delta);

/// max over cells of max_l |f_H - f_B| / (max_l |f_H - f_L| + delta).
double theorem_constant(const Eigen::MatrixXd& lf_columns, const Eigen::MatrixXd& hf_columns,
                        const Eigen::MatrixXd& bf_columns, double delta);

}  // namespace bifid
