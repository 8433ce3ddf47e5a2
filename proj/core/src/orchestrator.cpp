#include "bifid/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "bifid/selection.hpp"

namespace bifid {

NumericAbort::NumericAbort(int step, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<int> iota_columns(Eigen::Index n) {
  std::vector<int> cols(static_cast<std::size_t>(n));
  std::iota(cols.begin(), cols.end(), 0);
  return cols;
}

Field to_field(const Eigen::MatrixXd& m) { return Field(m); }

}  // namespace

StepOutput bifid_step_semiconductor(const SemiconductorSetup& s, const Field& f, const RunConfig& cfg, double dt,
                                    bool full_sweep) {
  StepOutput out;
  const double eps = *cfg.epsilon;
  EvenOddState st = even_odd_decompose(s.velocity, f, eps);

  auto t0 = Clock::now();
  const Eigen::MatrixXd r_lf = lf_update_r(s, st, dt);
  out.record.timings.lf = seconds_since(t0);

  t0 = Clock::now();
  const SelectionResult sel = greedy_select(r_lf, cfg.delta, cfg.gamma_max);
  const ProjectionCoeffs coeffs = project_coefficients(r_lf, sel);
  out.record.timings.select = seconds_since(t0);

  t0 = Clock::now();
  const Eigen::MatrixXd r_hf = hf_update_r(s, st, dt, sel.gamma);
  out.record.timings.hf = seconds_since(t0);

  t0 = Clock::now();
  const Eigen::MatrixXd r_bf = bf_reconstruct(coeffs, r_hf);
  EvenOddState next;
  next.epsilon = eps;
  next.phi = st.phi;
  next.j = update_j(s, st, r_bf, dt);
  next.r = r_bf;
  out.f_next = even_odd_recompose(s.velocity, next);
  out.record.timings.reconstruct = seconds_since(t0);

  out.gamma = sel.gamma;
  out.record.gamma_size = static_cast<int>(sel.gamma.size());
  out.record.lambda = s.table.lambda_lin;
  if (cfg.diagnostics != DiagnosticsLevel::kOff) {
    ErrorReport rep = empirical_bound(r_lf, sel.gamma, r_hf);
    if (full_sweep) attach_full_sweep(rep, r_lf, hf_update_r(s, st, dt), r_bf, sel.gamma, cfg.delta);
    out.record.errors = std::move(rep);
  }
  return out;
}

namespace {

Eigen::MatrixXd boltzmann_hf_columns(const BoltzmannSetup& s, const Field& f, const RunConfig& cfg, double dt, double lambda,
                                     std::span<const int> cols) {
  if (cfg.stepper == Stepper::kImexTypeA) return hf_step_imex_typeA(s, f, dt, *cfg.epsilon, lambda, cols).values;
  return hf_step_penalty(s, f, dt, *cfg.epsilon, lambda, cols);
}

}  // namespace

StepOutput bifid_step_boltzmann(const BoltzmannSetup& s, const Field& f, const RunConfig& cfg, double dt, bool full_sweep) {
  StepOutput out;
  const double eps = *cfg.epsilon;
  const double lambda = q_nb_loss_max(s.dvm, f);

  auto t0 = Clock::now();
  const Eigen::MatrixXd f_lf = lf_step_bgk(s, f, dt, eps, lambda);
  out.record.timings.lf = seconds_since(t0);

  t0 = Clock::now();
  const SelectionResult sel = greedy_select(f_lf, cfg.delta, cfg.gamma_max);
  const ProjectionCoeffs coeffs = project_coefficients(f_lf, sel);
  out.record.timings.select = seconds_since(t0);

  t0 = Clock::now();
  const Eigen::MatrixXd f_hf = boltzmann_hf_columns(s, f, cfg, dt, lambda, sel.gamma);
  out.record.timings.hf = seconds_since(t0);

  t0 = Clock::now();
  const Eigen::MatrixXd f_bf = bf_reconstruct(coeffs, f_hf);
  out.f_next = to_field(f_bf);
  out.record.timings.reconstruct = seconds_since(t0);

  out.gamma = sel.gamma;
  out.record.gamma_size = static_cast<int>(sel.gamma.size());
  out.record.lambda = lambda;
  if (cfg.diagnostics != DiagnosticsLevel::kOff) {
    ErrorReport rep = empirical_bound(f_lf, sel.gamma, f_hf);
    if (full_sweep) {
      const auto all = iota_columns(f.cols());
      attach_full_sweep(rep, f_lf, boltzmann_hf_columns(s, f, cfg, dt, lambda, all), f_bf, sel.gamma, cfg.delta);
    }
    out.record.errors = std::move(rep);
  }
  return out;
}

Field hf_full_step_semiconductor(const SemiconductorSetup& s, const Field& f, double epsilon, double dt) {
  EvenOddState st = even_odd_decompose(s.velocity, f, epsilon);
  EvenOddState next = st;
  next.r = hf_update_r(s, st, dt);
  next.j = update_j(s, st, next.r, dt);
  return even_odd_recompose(s.velocity, next);
}

Field lf_full_step_semiconductor(const SemiconductorSetup& s, const Field& f, double epsilon, double dt) {
  EvenOddState st = even_odd_decompose(s.velocity, f, epsilon);
  EvenOddState next = st;
  next.r = lf_update_r(s, st, dt);
  next.j = update_j(s, st, next.r, dt);
  return even_odd_recompose(s.velocity, next);
}

Field hf_full_step_boltzmann(const BoltzmannSetup& s, const Field& f, const RunConfig& cfg, double dt) {
  const double lambda = q_nb_loss_max(s.dvm, f);
  const auto all = iota_columns(f.cols());
  return to_field(boltzmann_hf_columns(s, f, cfg, dt, lambda, all));
}

Field lf_full_step_boltzmann(const BoltzmannSetup& s, const Field& f, double epsilon, double dt) {
  return lf_step_bgk(s, f, dt, epsilon, q_nb_loss_max(s.dvm, f));
}

SimulationResult run_simulation(const RunConfig& cfg) { return run_simulation(cfg, build_problem(cfg)); }

SimulationResult run_simulation(const RunConfig& cfg, const Problem& pb) {
  validate_config(cfg);
  const double dt = effective_dt(cfg);
  const double eps = *cfg.epsilon;
  const bool semi = cfg.model == ModelKind::kSemiconductor;
  if (semi && !pb.semiconductor) throw std::invalid_argument("problem lacks the semiconductor setup");
  if (!semi && !pb.boltzmann) throw std::invalid_argument("problem lacks the Boltzmann setup");
  if (!semi) check_cfl(*pb.boltzmann, dt);

  SimulationResult res;
  res.space = pb.space;
  res.velocity = pb.velocity;
  res.model = cfg.model;
  res.final_state = pb.initial;

  std::vector<double> stops = cfg.snapshots;
  stops.push_back(cfg.t_final);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const EquilibriumModel eq = semi ? EquilibriumModel::kLinear : EquilibriumModel::kNonlinear;
  const int total_columns = static_cast<int>(pb.velocity.size());
  Field f = pb.initial;
  double t = 0.0;
  int n = 0;
  std::size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= 0.0) ++next_stop;

  while (next_stop < stops.size()) {
    const double target = stops[next_stop];
    double h = dt;
    bool hits_stop = false;
    if (t + h >= target - 1e-9 * dt) {
      h = target - t;
      hits_stop = true;
    }
    const int step = n + 1;
    StepRecord rec;
    std::vector<int> gamma;
    Field f_next;
    try {
      const bool full_sweep = cfg.diagnostics == DiagnosticsLevel::kFull && n % cfg.diagnostics_every == 0;
      if (cfg.mode == RunMode::kBifidelity) {
        StepOutput o = semi ? bifid_step_semiconductor(*pb.semiconductor, f, cfg, h, full_sweep)
                            : bifid_step_boltzmann(*pb.boltzmann, f, cfg, h, full_sweep);
        f_next = std::move(o.f_next);
        rec = std::move(o.record);
        gamma = std::move(o.gamma);
      } else {
        const auto t0 = Clock::now();
        const bool hf = cfg.mode == RunMode::kHfReference;
        if (semi) {
          f_next = hf ? hf_full_step_semiconductor(*pb.semiconductor, f, eps, h) : lf_full_step_semiconductor(*pb.semiconductor, f, eps, h);
          rec.lambda = pb.semiconductor->table.lambda_lin;
        } else {
          rec.lambda = q_nb_loss_max(pb.boltzmann->dvm, f);
          f_next = hf ? hf_full_step_boltzmann(*pb.boltzmann, f, cfg, h) : lf_full_step_boltzmann(*pb.boltzmann, f, eps, h);
        }
        (hf ? rec.timings.hf : rec.timings.lf) = seconds_since(t0);
        rec.gamma_size = hf ? total_columns : 0;
      }
      if (!f_next.allFinite()) throw NumericAbort(step, "non-finite values in the distribution");
      rec.equilibrium_distance = equilibrium_distance(pb.space, pb.velocity, f_next, eq);
    } catch (const NumericAbort&) {
      throw;
    } catch (const VacuumCellError& e) {
      throw NumericAbort(step, e.what());
    } catch (const InvalidStateError& e) {
      throw NumericAbort(step, e.what());
    } catch (const std::domain_error& e) {
      throw NumericAbort(step, e.what());
    }

    f = std::move(f_next);
    t = hits_stop ? target : t + h;
    n = step;
    rec.step = step;
    rec.t = t;
    rec.min_f = f.minCoeff();
    res.history.push_back(std::move(rec));
    res.gammas.push_back(std::move(gamma));

    if (hits_stop) {
      if (std::find(cfg.snapshots.begin(), cfg.snapshots.end(), target) != cfg.snapshots.end()) {
        res.snapshots.push_back({target, f});
      }
      ++next_stop;
    }
  }
  res.final_state = std::move(f);
  res.final_time = t;
  return res;
}

}  // namespace bifid
