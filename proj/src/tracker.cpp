#include "implicitize/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "implicitize/rng.hpp"

namespace implicitize {

SystemEvaluator::SystemEvaluator(std::vector<Polynomial> system) : system_(std::move(system)) {
  if (system_.empty()) throw InputError("system must have at least one equation");
  num_vars_ = system_.front().num_vars();
  for (const auto& p : system_) {
    if (p.num_vars() != num_vars_) throw InputError("system equations disagree on arity");
  }
  int max_exp = 0;
  for (const auto& p : system_) {
    for (const auto& [e, c] : p.terms()) {
      for (int v : e) max_exp = std::max(max_exp, v);
    }
  }
  stride_ = max_exp + 1;
  compiled_.reserve(system_.size());
  for (const auto& p : system_) compiled_.push_back(compile(p));
  jacobian_.reserve(system_.size() * num_vars_);
  for (const auto& p : system_) {
    for (int j = 0; j < num_vars_; ++j) jacobian_.push_back(compile(p.derivative(j)));
  }
}

SystemEvaluator::CompiledPoly SystemEvaluator::compile(const Polynomial& p) const {
  CompiledPoly out;
  out.reserve(p.terms().size());
  for (const auto& [e, c] : p.terms()) {
    CompiledTerm term;
    term.coefficient = c;
    for (int v = 0; v < num_vars_; ++v) {
      if (e[v] > 0) term.factors.emplace_back(v, e[v]);
    }
    out.push_back(std::move(term));
  }
  return out;
}

void SystemEvaluator::fill_powers(const Eigen::VectorXcd& x, Workspace& ws) const {
  if (x.size() != num_vars_) throw InputError("evaluation point has the wrong dimension");
  ws.powers.resize(static_cast<std::size_t>(num_vars_) * stride_);
  for (int v = 0; v < num_vars_; ++v) {
    Complex* row = ws.powers.data() + static_cast<std::size_t>(v) * stride_;
    row[0] = Complex(1.0, 0.0);
    for (int e = 1; e < stride_; ++e) row[e] = row[e - 1] * x[v];
  }
}

Complex SystemEvaluator::eval_compiled(const CompiledPoly& poly, const Workspace& ws) const {
  Complex acc(0.0, 0.0);
  for (const auto& term : poly) {
    Complex m = term.coefficient;
    for (const auto& [v, e] : term.factors) {
      m *= ws.powers[static_cast<std::size_t>(v) * stride_ + e];
    }
    acc += m;
  }
  return acc;
}

void SystemEvaluator::values(const Eigen::VectorXcd& x, Workspace& ws,
                             Eigen::VectorXcd& out) const {
  fill_powers(x, ws);
  out.resize(size());
  for (int i = 0; i < size(); ++i) out[i] = eval_compiled(compiled_[i], ws);
}

void SystemEvaluator::jacobian(const Eigen::VectorXcd& x, Workspace& ws,
                               Eigen::MatrixXcd& out) const {
  fill_powers(x, ws);
  out.resize(size(), num_vars_);
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < num_vars_; ++j) {
      out(i, j) = eval_compiled(jacobian_[static_cast<std::size_t>(i) * num_vars_ + j], ws);
    }
  }
}

void SystemEvaluator::values_and_jacobian(const Eigen::VectorXcd& x, Workspace& ws,
                                          Eigen::VectorXcd& values_out,
                                          Eigen::MatrixXcd& jacobian_out) const {
  fill_powers(x, ws);
  values_out.resize(size());
  jacobian_out.resize(size(), num_vars_);
  for (int i = 0; i < size(); ++i) {
    values_out[i] = eval_compiled(compiled_[i], ws);
    for (int j = 0; j < num_vars_; ++j) {
      jacobian_out(i, j) = eval_compiled(jacobian_[static_cast<std::size_t>(i) * num_vars_ + j], ws);
    }
  }
}

double SystemEvaluator::max_residual(const Eigen::VectorXcd& x) const {
  Workspace ws;
  Eigen::VectorXcd v;
  values(x, ws, v);
  return v.lpNorm<Eigen::Infinity>();
}

Homotopy::Homotopy(std::vector<Polynomial> start_system, std::vector<Polynomial> target_system,
                   Complex gamma)
    : start_(std::move(start_system)), target_(std::move(target_system)), gamma_(gamma) {
  if (start_.size() != target_.size() || start_.num_vars() != target_.num_vars())
    throw InputError("homotopy start and target systems must have the same shape");
  if (start_.size() != start_.num_vars())
    throw InputError("homotopy systems must be square");
  if (std::abs(std::abs(gamma_) - 1.0) > 1e-12)
    throw InputError("homotopy gamma must have modulus 1");
}

TrackedPoint track_path(const Homotopy& h, const Eigen::VectorXcd& start_point,
                        const TrackSettings& st) {
  if (!(0.0 < st.min_step && st.min_step < st.initial_step && st.initial_step <= 0.1) ||
      st.corrector_tolerance <= 0.0 || st.endpoint_refinement_tolerance <= 0.0)
    throw InputError("invalid track settings");
  const int n = h.size();
  SystemEvaluator::Workspace ws_start, ws_target;
  Eigen::VectorXcd x = start_point;
  Eigen::VectorXcd vs(n), vt(n), hv(n), rhs(n);
  Eigen::MatrixXcd js(n, n), jt(n, n), hj(n, n);

  auto h_values = [&](const Eigen::VectorXcd& p, double t) {
    h.start().values(p, ws_start, vs);
    h.target().values(p, ws_target, vt);
    hv = ((1.0 - t) * h.gamma()) * vs + t * vt;
  };
  auto h_all = [&](const Eigen::VectorXcd& p, double t) {
    h.start().values_and_jacobian(p, ws_start, vs, js);
    h.target().values_and_jacobian(p, ws_target, vt, jt);
    hv = ((1.0 - t) * h.gamma()) * vs + t * vt;
    hj = ((1.0 - t) * h.gamma()) * js + t * jt;
  };

  double t = 0.0;
  double dt = st.initial_step;
  int streak = 0;
  long steps = 0;
  while (t < 1.0 - 1e-14) {
    if (++steps > st.max_steps) return {x, PathStatus::kStepUnderflow, h.target().max_residual(x)};
    const double step = std::min(dt, 1.0 - t);
    const double t_next = t + step;

    // Tangent prediction: Hx dx/dt = -Ht with Ht = -gamma*start + target.
    h_all(x, t);
    rhs = h.gamma() * vs - vt;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hj);
    Eigen::VectorXcd xc = x + step * lu.solve(rhs);

    bool corrected = false;
    for (int it = 0;; ++it) {
      h_values(xc, t_next);
      if (hv.lpNorm<Eigen::Infinity>() <= st.corrector_tolerance) {
        corrected = true;
        break;
      }
      if (it >= st.max_corrector_iterations) break;
      h_all(xc, t_next);
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu_c(hj);
      xc -= lu_c.solve(hv);
      if (!xc.allFinite()) break;
    }

    if (corrected) {
      x = xc;
      t = t_next;
      if (x.lpNorm<Eigen::Infinity>() > st.divergence_threshold)
        return {x, PathStatus::kDiverged, std::numeric_limits<double>::infinity()};
      if (++streak >= st.successes_before_increase) {
        dt = std::min(dt * st.step_increase_factor, st.max_step);
        streak = 0;
      }
    } else {
      streak = 0;
      dt *= st.step_decrease_factor;
      if (dt < st.min_step) return {x, PathStatus::kStepUnderflow, h.target().max_residual(x)};
    }
  }

  return newton_refine(h.target(), x, st.endpoint_refinement_tolerance);
}

std::vector<TrackedPoint> track_many(const Homotopy& h,
                                     const std::vector<Eigen::VectorXcd>& start_points,
                                     const TrackSettings& settings, int threads) {
  std::vector<TrackedPoint> results(start_points.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(start_points.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < start_points.size(); ++i)
      results[i] = track_path(h, start_points[i], settings);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < start_points.size(); i += workers)
        results[i] = track_path(h, start_points[i], settings);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

TrackedPoint newton_refine(const SystemEvaluator& system, Eigen::VectorXcd point, double tolerance,
                           int max_iterations) {
  const int n = system.size();
  SystemEvaluator::Workspace ws;
  Eigen::VectorXcd r(n);
  Eigen::MatrixXcd jac(n, n);
  const double inf = std::numeric_limits<double>::infinity();
  double update = inf;       // last Newton step size
  double prev_update = inf;  // the one before it
  int stalls = 0;

  // Success needs a small residual AND a quadratic-contraction certificate.
  // Near a multiple root or a degenerate sheet the residual can sink below
  // any tolerance (it vanishes to second order in the distance) while the
  // steps only contract linearly; such points must not pass as regular.
  auto certified = [&](double res) {
    if (res > tolerance) return false;
    const double floor = 1e-13 * (1.0 + point.lpNorm<Eigen::Infinity>());
    if (update <= floor) return true;
    return std::isfinite(prev_update) && update <= 0.25 * prev_update;
  };

  for (int it = 0; it < max_iterations; ++it) {
    system.values(point, ws, r);
    const double res = r.lpNorm<Eigen::Infinity>();
    if (certified(res)) return {point, PathStatus::kSuccess, res};
    system.jacobian(point, ws, jac);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(jac);
    if (!lu.isInvertible()) return {point, PathStatus::kSingularEndpoint, res};
    const Eigen::VectorXcd dx = lu.solve(-r);
    point += dx;
    if (!point.allFinite()) return {point, PathStatus::kSingularEndpoint, res};
    prev_update = update;
    update = dx.lpNorm<Eigen::Infinity>();
    if (update >= 0.5 * prev_update) {
      if (++stalls >= 3) break;
    } else {
      stalls = 0;
    }
  }
  system.values(point, ws, r);
  const double res = r.lpNorm<Eigen::Infinity>();
  const PathStatus status = certified(res) ? PathStatus::kSuccess : PathStatus::kSingularEndpoint;
  return {point, status, res};
}

TrackedPoint newton_refine(const std::vector<Polynomial>& system, const Eigen::VectorXcd& point,
                           double tolerance, int max_iterations) {
  SystemEvaluator ev(system);
  if (ev.size() != ev.num_vars()) throw InputError("newton refinement needs a square system");
  return newton_refine(ev, point, tolerance, max_iterations);
}

std::vector<TrackedPoint> solve_total_degree(const std::vector<Polynomial>& system,
                                             const TrackSettings& settings, std::uint64_t seed,
                                             int threads, std::vector<PathStatus>* path_statuses) {
  if (system.empty()) throw InputError("cannot solve an empty system");
  const int n = system.front().num_vars();
  if (static_cast<int>(system.size()) != n) throw InputError("total-degree solve needs a square system");

  std::vector<int> degrees(n);
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    degrees[i] = system[i].degree();
    if (degrees[i] <= 0) throw InputError("every equation must have positive degree");
    total *= degrees[i];
    if (total > 20'000'000LL) throw InputError("total-degree start system is too large");
  }

  std::vector<Polynomial> start;
  start.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = degrees[i];
    Polynomial p = Polynomial::monomial(n, std::move(e), Complex(1.0, 0.0));
    p += Polynomial::constant(n, Complex(-1.0, 0.0));
    start.push_back(std::move(p));
  }

  Rng rng(seed);
  Homotopy h(std::move(start), system, rng.unit_circle());

  // Start points: all tuples of d_i-th roots of unity.
  std::vector<Eigen::VectorXcd> starts;
  starts.reserve(static_cast<std::size_t>(total));
  std::vector<int> index(n, 0);
  const double two_pi = 6.283185307179586476925286766559;
  for (long long path = 0; path < total; ++path) {
    Eigen::VectorXcd p(n);
    for (int i = 0; i < n; ++i) {
      const double angle = two_pi * index[i] / degrees[i];
      p[i] = Complex(std::cos(angle), std::sin(angle));
    }
    starts.push_back(std::move(p));
    for (int i = n - 1; i >= 0; --i) {
      if (++index[i] < degrees[i]) break;
      index[i] = 0;
    }
  }

  const std::vector<TrackedPoint> tracked = track_many(h, starts, settings, threads);
  if (path_statuses) {
    path_statuses->clear();
    for (const auto& tp : tracked) path_statuses->push_back(tp.status);
  }

  std::vector<TrackedPoint> solutions;
  for (const auto& tp : tracked) {
    if (!tp.ok()) continue;
    bool duplicate = false;
    for (const auto& kept : solutions) {
      if ((kept.coordinates - tp.coordinates).lpNorm<Eigen::Infinity>() <=
          kSolutionMatchTolerance) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) solutions.push_back(tp);
  }
  if (solutions.empty()) throw NumericalError("every continuation path failed");
  return solutions;
}

}  // namespace implicitize
