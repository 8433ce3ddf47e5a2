#include "bifid/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace bifid {

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw OutputError("failed writing '" + path + "'");
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void moment_header(std::ofstream& out, int dim, const std::string& suffix) {
  out << ",rho" << suffix;
  for (int a = 0; a < dim; ++a) out << ",u" << (a + 1) << suffix;
  out << ",T" << suffix;
}

void moment_row(std::ofstream& out, const MacroMoments& m, int i, int dim) {
  out << ',' << format_double(m.rho[i]);
  for (int a = 0; a < dim; ++a) out << ',' << format_double(m.u(i, a));
  out << ',' << format_double(m.T[i]);
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw OutputError("cannot create output directory '" + dir + "'");
}

void write_profiles(const std::string& path, const SpatialMesh& space, const VelocityMesh& velocity, const Field& f,
                    const Field* reference) {
  const MacroMoments m = compute_moments(velocity, f);
  MacroMoments mr;
  if (reference != nullptr) mr = compute_moments(velocity, *reference);
  auto out = open_csv(path);
  out << 'x';
  moment_header(out, velocity.dim, "");
  if (reference != nullptr) moment_header(out, velocity.dim, "_ref");
  out << '\n';
  for (int i = 0; i < space.cells; ++i) {
    out << format_double(space.position(i));
    moment_row(out, m, i, velocity.dim);
    if (reference != nullptr) moment_row(out, mr, i, velocity.dim);
    out << '\n';
  }
  finish(out, path);
}

void write_history(const std::string& path, const std::vector<StepRecord>& history) {
  auto out = open_csv(path);
  out << "step,t,gamma_size,equilibrium_distance,min_f,lambda,empirical_bound,lf_relative_distance,r_e,r_s,true_error,"
         "true_error_max,theorem_constant\n";
  for (const auto& r : history) {
    out << r.step << ',' << format_double(r.t) << ',' << r.gamma_size << ',' << format_double(r.equilibrium_distance) << ','
        << format_double(r.min_f) << ',' << format_double(r.lambda);
    if (r.errors) {
      const auto& e = *r.errors;
      out << ',' << format_double(e.empirical_bound) << ',' << format_double(e.lf_relative_distance) << ',' << opt(e.r_e_end)
          << ',' << opt(e.r_s) << ',' << opt(e.true_error) << ',' << opt(e.true_error_max) << ',' << opt(e.theorem_constant);
    } else {
      out << ",,,,,,,";
    }
    out << '\n';
  }
  finish(out, path);
}

void write_selected_points(const std::string& path, const VelocityMesh& velocity, const std::vector<StepRecord>& history,
                           const std::vector<std::vector<int>>& gammas) {
  auto out = open_csv(path);
  out << "step,t,order,index";
  for (int a = 0; a < velocity.dim; ++a) out << ",v" << (a + 1);
  out << '\n';
  for (std::size_t s = 0; s < gammas.size() && s < history.size(); ++s) {
    for (std::size_t k = 0; k < gammas[s].size(); ++k) {
      const int l = gammas[s][k];
      out << history[s].step << ',' << format_double(history[s].t) << ',' << k << ',' << l;
      for (int a = 0; a < velocity.dim; ++a) out << ',' << format_double(velocity.coord(l, a));
      out << '\n';
    }
  }
  finish(out, path);
}

void write_sweep(const std::string& path, const std::vector<SweepRow>& rows) {
  auto out = open_csv(path);
  out << "gamma_max,t,rel_l1_error,mean_gamma_size\n";
  for (const auto& r : rows) {
    out << r.gamma_max << ',' << format_double(r.t) << ',' << format_double(r.rel_l1) << ',' << format_double(r.mean_gamma)
        << '\n';
  }
  finish(out, path);
}

}  // namespace bifid
