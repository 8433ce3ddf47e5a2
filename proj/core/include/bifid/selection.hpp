#pragma once

#include <vector>

#include <Eigen/Dense>

namespace bifid {

enum class Termination { kThreshold, kMaxPoints };

struct SelectionResult {
  std::vector<int> gamma;          // original column indices, pivot order
  Eigen::MatrixXd chol_factor;     // N x |gamma|, row l belongs to original column l
  Eigen::VectorXd residuals;       // final squared residual norms, by original column
  std::vector<double> pivot_values;  // residual of each pivot when it was chosen
  Termination terminated_by = Termination::kThreshold;
};

// Pivoted Cholesky greedy selection over the columns of `ensemble` (N_x x N)
// with the plain l2 inner product. `delta` bounds the squared residual norm.
SelectionResult greedy_select(const Eigen::MatrixXd& ensemble, double delta, int gamma_max);

inline constexpr double kDefaultDelta = 1e-12;
inline constexpr int kDefaultGammaMax = 50;
inline constexpr double kKernelCutoff = 1e-12;

struct ProjectionCoeffs {
  std::vector<int> gamma;
  Eigen::MatrixXd coeffs;  // |gamma| x N
};

// Least-squares coefficients of every column of `targets` in the span of the
// columns of `basis`. Gramian eigenvalues below cutoff * largest are treated
// as kernel and dropped.
Eigen::MatrixXd pseudo_projection_coefficients(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& targets,
                                               double cutoff = kKernelCutoff);

Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& m, const std::vector<int>& cols);

// Selected columns receive indicator coefficients, so reconstruction
// interpolates the high-fidelity values at gamma.
ProjectionCoeffs project_coefficients(const Eigen::MatrixXd& ensemble, const SelectionResult& selection);
ProjectionCoeffs project_coefficients(const Eigen::MatrixXd& ensemble, const std::vector<int>& gamma);

// Column l of the result is sum_k coeffs(k, l) * hf_columns.col(k).
Eigen::MatrixXd bf_reconstruct(const ProjectionCoeffs& coeffs, const Eigen::MatrixXd& hf_columns);

}  // namespace bifid
