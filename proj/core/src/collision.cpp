#include "bifid/collision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bifid {

CrossSectionTable build_cross_section(const VelocityMesh& mesh, const CrossSectionFn& sigma_fn) {
  if (mesh.dim != 1) throw std::invalid_argument("cross-section tables need a 1-D velocity mesh");
  const int n = mesh.size();
  CrossSectionTable t;
  t.spacing = mesh.spacing;
  t.sigma.resize(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double s = sigma_fn(mesh.coord(k, 0), mesh.coord(l, 0));
      if (!(s >= 0.0)) {
        std::ostringstream os;
        os << "cross section is negative or NaN at (" << mesh.coord(k, 0) << ", " << mesh.coord(l, 0) << ")";
        throw std::invalid_argument(os.str());
      }
      t.sigma(k, l) = s;
    }
  }
  t.equilibrium = normalized_maxwellian(mesh);
  t.mu = mesh.spacing * (t.sigma * t.equilibrium);
  t.lambda_lin = t.mu.maxCoeff();
  if (!(t.lambda_lin > 0.0)) throw std::invalid_argument("collision frequency vanishes; penalty parameter undefined");
  return t;
}

Eigen::VectorXd q_lb_apply(const CrossSectionTable& table, std::span<const double> f) {
  const int n = table.size();
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("profile length does not match cross-section table");
  const auto& m = table.equilibrium;
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int l = 0; l < n; ++l) s += table.sigma(k, l) * (m[k] * f[static_cast<std::size_t>(l)] - m[l] * f[static_cast<std::size_t>(k)]);
    out[k] = table.spacing * s;
  }
  return out;
}

Eigen::MatrixXd q_lb_apply_rows(const CrossSectionTable& table, const Field& f, std::span<const int> rows) {
  const int n = table.size();
  if (f.cols() != n) throw std::invalid_argument("field width does not match cross-section table");
  const auto& m = table.equilibrium;
  Eigen::MatrixXd out(f.rows(), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    const int k = rows[c];
    if (k < 0 || k >= n) throw std::out_of_range("velocity index out of range");
    for (Eigen::Index x = 0; x < f.rows(); ++x) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += table.sigma(k, l) * (m[k] * f(x, l) - m[l] * f(x, k));
      out(x, static_cast<Eigen::Index>(c)) = table.spacing * s;
    }
  }
  return out;
}

Eigen::VectorXd relaxation_penalty(std::span<const double> f, std::span<const double> equilibrium, double lambda) {
  if (f.size() != equilibrium.size()) throw std::invalid_argument("profile and equilibrium lengths differ");
  Eigen::VectorXd out(static_cast<Eigen::Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k) out[static_cast<Eigen::Index>(k)] = lambda * (equilibrium[k] - f[k]);
  return out;
}

// ---------------------------------------------------------------------------
// Discrete velocity model

namespace {

struct Lattice {
  int n;
  int span;  // 2n - 1
  int dir(int i1, int i2) const { return (i1 + n - 1) * span + (i2 + n - 1); }
};

// Largest/smallest m with lo <= base + m * p <= hi for both bases.
inline void clip_range(int p, int base_a, int base_b, int hi, int& m_lo, int& m_hi) {
  if (p == 0) return;
  const int lo_base = std::min(base_a, base_b);
  const int hi_base = std::max(base_a, base_b);
  auto floor_div = [](int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
  auto ceil_div = [&](int a, int b) { return -floor_div(-a, b); };
  if (p > 0) {
    m_lo = std::max(m_lo, ceil_div(-lo_base, p));
    m_hi = std::min(m_hi, floor_div(hi - hi_base, p));
  } else {
    m_lo = std::max(m_lo, ceil_div(hi - hi_base, p));
    m_hi = std::min(m_hi, floor_div(-lo_base, p));
  }
}

struct DirectionStep {
  int p1 = 0;
  int p2 = 0;
  double weight = 0.0;
};

std::vector<DirectionStep> direction_steps(const DvmTables& t) {
  const Lattice lat{t.points_per_dim, 2 * t.points_per_dim - 1};
  std::vector<DirectionStep> steps(static_cast<std::size_t>(lat.span * lat.span));
  for (const auto& d : t.directions) {
    auto& s = steps[static_cast<std::size_t>(lat.dir(d.offset[0], d.offset[1]))];
    s.p1 = -d.offset[1] / d.gcd;
    s.p2 = d.offset[0] / d.gcd;
    s.weight = t.term_weight(d.offset[0], d.offset[1]);
  }
  return steps;
}

// Calls fn(a, b, d, w) for every collision rectangle (k, a, b, d) seen from k.
template <typename Fn>
void for_each_rectangle(const DvmTables& t, const std::vector<DirectionStep>& steps, int k, Fn&& fn) {
  const int n = t.points_per_dim;
  const Lattice lat{n, 2 * n - 1};
  const int k1 = k / n;
  const int k2 = k % n;
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const int i1 = a1 - k1;
      const int i2 = a2 - k2;
      if (i1 == 0 && i2 == 0) continue;
      const auto& s = steps[static_cast<std::size_t>(lat.dir(i1, i2))];
      int m_lo = -(n - 1);
      int m_hi = n - 1;
      clip_range(s.p1, k1, a1, n - 1, m_lo, m_hi);
      clip_range(s.p2, k2, a2, n - 1, m_lo, m_hi);
      const int a = a1 * n + a2;
      for (int m = m_lo; m <= m_hi; ++m) {
        if (m == 0) continue;
        const int b = (k1 + m * s.p1) * n + (k2 + m * s.p2);
        const int d = (a1 + m * s.p1) * n + (a2 + m * s.p2);
        fn(a, b, d, s.weight);
      }
    }
  }
}

}  // namespace

double DvmTables::term_weight(int i1, int i2) const {
  const int g = std::gcd(std::abs(i1), std::abs(i2));
  if (kernel == CarlemanKernel::kTwoDimensional) return 2.0 * b0 * spacing * spacing / g;
  const double norm = std::sqrt(static_cast<double>(i1 * i1 + i2 * i2));
  return 2.0 * b0 * spacing / (g * norm);
}

DvmTables build_dvm_tables(const VelocityMesh& mesh, double b0, CarlemanKernel kernel) {
  if (mesh.dim != 2) throw std::invalid_argument("the discrete velocity model needs a 2-D velocity mesh");
  if (!(b0 > 0.0)) throw std::invalid_argument("kernel constant must be positive");
  DvmTables t;
  const int n = mesh.points_per_dim;
  t.points_per_dim = n;
  t.spacing = mesh.spacing;
  t.b0 = b0;
  t.kernel = kernel;

  for (int i1 = -(n - 1); i1 <= n - 1; ++i1) {
    for (int i2 = -(n - 1); i2 <= n - 1; ++i2) {
      if (i1 == 0 && i2 == 0) continue;
      DvmDirection d;
      d.offset = {i1, i2};
      d.gcd = std::gcd(std::abs(i1), std::abs(i2));
      const double norm = std::sqrt(static_cast<double>(i1 * i1 + i2 * i2));
      d.det_li = norm / d.gcd;
      const double bc = kernel == CarlemanKernel::kTwoDimensional ? 2.0 * b0 / (norm * mesh.spacing)
                                                                  : 2.0 * b0 / (norm * norm * mesh.spacing * mesh.spacing);
      const int p1 = -i2 / d.gcd;
      const int p2 = i1 / d.gcd;
      for (int m = -(n - 1); m <= n - 1; ++m) {
        if (m == 0) continue;
        const int j1 = m * p1;
        const int j2 = m * p2;
        if (std::abs(j1) > n - 1 || std::abs(j2) > n - 1) continue;
        d.members.push_back({j1, j2});
        d.kernel_values.push_back(bc);
      }
      t.directions.push_back(std::move(d));
    }
  }

  const int total = n * n;
  t.loss = Eigen::MatrixXd::Zero(total, total);
  const auto steps = direction_steps(t);
  for (int k = 0; k < total; ++k) {
    for_each_rectangle(t, steps, k, [&](int, int, int d, double w) { t.loss(k, d) += w; });
    // Degenerate pairs (j = 0, d = a) cancel in Q but belong to the loss rate.
    const int k1 = k / n;
    const int k2 = k % n;
    for (int a = 0; a < total; ++a) {
      if (a != k) t.loss(k, a) += t.term_weight(a / n - k1, a % n - k2);
    }
  }
  return t;
}

Eigen::MatrixXd q_nb_dvm_apply(const DvmTables& tables, const Field& f, std::span<const int> cols) {
  const int total = tables.points_per_dim * tables.points_per_dim;
  if (f.cols() != total) throw std::invalid_argument("field width does not match DVM tables");
  const Eigen::Index cells = f.rows();
  const Eigen::MatrixXd fc = f;  // column-major: one contiguous spatial profile per velocity
  const auto steps = direction_steps(tables);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(cells, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int k = cols[c];
    if (k < 0 || k >= total) throw std::out_of_range("velocity index out of range");
    double* o = out.col(static_cast<Eigen::Index>(c)).data();
    const double* fk = fc.col(k).data();
    for_each_rectangle(tables, steps, k, [&](int a, int b, int d, double w) {
      const double* fa = fc.col(a).data();
      const double* fb = fc.col(b).data();
      const double* fd = fc.col(d).data();
      for (Eigen::Index x = 0; x < cells; ++x) o[x] += w * (fa[x] * fb[x] - fk[x] * fd[x]);
    });
  }
  return out;
}

Eigen::VectorXd q_nb_dvm_apply(const DvmTables& tables, std::span<const double> f) {
  const int total = tables.points_per_dim * tables.points_per_dim;
  if (static_cast<int>(f.size()) != total) throw std::invalid_argument("profile length does not match DVM tables");
  Field row = Eigen::Map<const Field>(f.data(), 1, total);
  std::vector<int> cols(static_cast<std::size_t>(total));
  std::iota(cols.begin(), cols.end(), 0);
  return q_nb_dvm_apply(tables, row, cols).row(0).transpose();
}

double q_nb_loss_max(const DvmTables& tables, std::span<const double> f) {
  const Field row = Eigen::Map<const Field>(f.data(), 1, static_cast<Eigen::Index>(f.size()));
  return q_nb_loss_max(tables, row);
}

double q_nb_loss_max(const DvmTables& tables, const Field& f) {
  if (f.cols() != tables.loss.rows()) throw std::invalid_argument("field width does not match DVM tables");
  const double lambda = (f * tables.loss.transpose()).maxCoeff();
  if (!(lambda > 0.0)) throw std::domain_error("loss coefficient vanishes; penalty parameter undefined");
  return lambda;
}

}  // namespace bifid
