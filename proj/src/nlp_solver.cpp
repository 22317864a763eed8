#include "tgtsp/nlp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace tgtsp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "?";
}

namespace {

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_vec(const std::vector<double>& a) { return std::sqrt(dot_vec(a, a)); }

void project(const NlpProblem& p, std::vector<double>& z) {
  for (int i = 0; i < p.n; ++i) z[i] = std::clamp(z[i], p.lower[i], p.upper[i]);
}

// Augmented Lagrangian in the Powell-Hestenes-Rockafellar form. Equalities
// carry lambda*c + (rho/2)c^2; inequalities g >= 0 carry
// (max(0, lambda - rho*g)^2 - lambda^2) / (2 rho).
struct AugLag {
  const NlpProblem& p;
  std::vector<double> lam_eq;
  std::vector<double> lam_in;
  double rho = 10.0;

  explicit AugLag(const NlpProblem& prob)
      : p(prob), lam_eq(prob.eq.size(), 0.0), lam_in(prob.ineq.size(), 0.0) {}

  double value(const std::vector<double>& z) const {
    double total = p.objective.value(z);
    for (std::size_t j = 0; j < p.eq.size(); ++j) {
      const double c = p.eq[j].value(z);
      total += lam_eq[j] * c + 0.5 * rho * c * c;
    }
    for (std::size_t j = 0; j < p.ineq.size(); ++j) {
      const double g = p.ineq[j].value(z);
      const double m = std::max(0.0, lam_in[j] - rho * g);
      total += (m * m - lam_in[j] * lam_in[j]) / (2.0 * rho);
    }
    return total;
  }

  void gradient(const std::vector<double>& z, std::vector<double>& grad) const {
    std::fill(grad.begin(), grad.end(), 0.0);
    p.objective.add_grad(z, 1.0, grad);
    for (std::size_t j = 0; j < p.eq.size(); ++j) {
      const double c = p.eq[j].value(z);
      p.eq[j].add_grad(z, lam_eq[j] + rho * c, grad);
    }
    for (std::size_t j = 0; j < p.ineq.size(); ++j) {
      const double g = p.ineq[j].value(z);
      const double m = std::max(0.0, lam_in[j] - rho * g);
      if (m > 0.0) p.ineq[j].add_grad(z, -m, grad);
    }
  }

  // max constraint violation at z
  double violation(const std::vector<double>& z) const {
    double v = 0.0;
    for (const NlpFunction& f : p.eq) v = std::max(v, std::fabs(f.value(z)));
    for (const NlpFunction& f : p.ineq)
      v = std::max(v, std::max(0.0, -f.value(z)));
    return v;
  }

  void update_multipliers(const std::vector<double>& z) {
    for (std::size_t j = 0; j < p.eq.size(); ++j)
      lam_eq[j] += rho * p.eq[j].value(z);
    for (std::size_t j = 0; j < p.ineq.size(); ++j)
      lam_in[j] = std::max(0.0, lam_in[j] - rho * p.ineq[j].value(z));
  }
};

struct LbfgsMemory {
  std::deque<std::vector<double>> s, y;
  std::deque<double> rho_sy;
  static constexpr std::size_t kDepth = 10;

  void clear() {
    s.clear();
    y.clear();
    rho_sy.clear();
  }

  void push(std::vector<double> si, std::vector<double> yi) {
    const double sy = dot_vec(si, yi);
    if (sy <= 1e-10 * norm2_vec(si) * norm2_vec(yi)) return;  // curvature skip
    if (s.size() == kDepth) {
      s.pop_front();
      y.pop_front();
      rho_sy.pop_front();
    }
    s.push_back(std::move(si));
    y.push_back(std::move(yi));
    rho_sy.push_back(1.0 / sy);
  }

  // two-loop recursion: d = -H * g
  void direction(const std::vector<double>& g, std::vector<double>& d) const {
    d = g;
    const int m = static_cast<int>(s.size());
    std::vector<double> alpha(m);
    for (int i = m - 1; i >= 0; --i) {
      alpha[i] = rho_sy[i] * dot_vec(s[i], d);
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= alpha[i] * y[i][k];
    }
    if (m > 0) {
      const double gamma = (1.0 / rho_sy[m - 1]) / dot_vec(y[m - 1], y[m - 1]);
      for (double& v : d) v *= gamma;
    }
    for (int i = 0; i < m; ++i) {
      const double beta = rho_sy[i] * dot_vec(y[i], d);
      for (std::size_t k = 0; k < d.size(); ++k)
        d[k] += (alpha[i] - beta) * s[i][k];
    }
    for (double& v : d) v = -v;
  }
};

struct InnerResult {
  double value = 0.0;
  double pg_norm = 0.0;
  bool nan_hit = false;
};

// Projected L-BFGS with Armijo backtracking along the projected path.
InnerResult minimize_inner(const AugLag& al, const NlpProblem& p,
                           std::vector<double>& z, double tol, int max_iter) {
  constexpr double kArmijo = 1e-4;
  InnerResult res;
  LbfgsMemory mem;
  std::vector<double> g(p.n), d(p.n), trial(p.n), gnew(p.n);
  double fz = al.value(z);
  if (!std::isfinite(fz)) {
    res.nan_hit = true;
    return res;
  }
  al.gradient(z, g);

  auto projected_gradient_norm = [&]() {
    double norm = 0.0;
    for (int i = 0; i < p.n; ++i) {
      const double step = std::clamp(z[i] - g[i], p.lower[i], p.upper[i]) - z[i];
      norm = std::max(norm, std::fabs(step));
    }
    return norm;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    res.pg_norm = projected_gradient_norm();
    if (res.pg_norm <= tol) break;

    mem.direction(g, d);
    // freeze directions that push an active variable further out of the box
    for (int i = 0; i < p.n; ++i) {
      if ((z[i] <= p.lower[i] && d[i] < 0.0) ||
          (z[i] >= p.upper[i] && d[i] > 0.0))
        d[i] = 0.0;
    }
    if (dot_vec(d, g) > -1e-14 * std::max(1.0, norm2_vec(d) * norm2_vec(g))) {
      // not a descent direction: restart from projected steepest descent
      mem.clear();
      for (int i = 0; i < p.n; ++i)
        d[i] = std::clamp(z[i] - g[i], p.lower[i], p.upper[i]) - z[i];
    }

    double alpha = 1.0;
    bool accepted = false;
    double ftrial = 0.0;
    for (int bt = 0; bt < 50; ++bt) {
      for (int i = 0; i < p.n; ++i)
        trial[i] = std::clamp(z[i] + alpha * d[i], p.lower[i], p.upper[i]);
      ftrial = al.value(trial);
      if (std::isfinite(ftrial)) {
        double gdx = 0.0;
        for (int i = 0; i < p.n; ++i) gdx += g[i] * (trial[i] - z[i]);
        if (ftrial <= fz + kArmijo * gdx && gdx < 0.0) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // no progress along this direction; drop the memory once, then give up
      if (mem.s.empty()) break;
      mem.clear();
      continue;
    }

    al.gradient(trial, gnew);
    std::vector<double> sstep(p.n), ystep(p.n);
    for (int i = 0; i < p.n; ++i) {
      sstep[i] = trial[i] - z[i];
      ystep[i] = gnew[i] - g[i];
    }
    mem.push(std::move(sstep), std::move(ystep));
    z = trial;
    fz = ftrial;
    g = gnew;
  }
  res.value = fz;
  res.pg_norm = projected_gradient_norm();
  return res;
}

}  // namespace

SolveResult solve_nlp(const NlpProblem& p, std::vector<double> z0,
                      const SolveOptions& options) {
  SolveResult res;
  if (static_cast<int>(z0.size()) != p.n) {
    res.status = SolveStatus::infeasible;
    res.diagnostic = "start point length mismatch";
    return res;
  }
  project(p, z0);
  AugLag al(p);

  std::vector<double> z = std::move(z0);

  // scale the initial penalty so the start point's constraint violation is
  // not worth trading away for objective: a weak penalty lets the first
  // inner solve destroy the warm start
  {
    const double f0 = p.objective.value(z);
    double sumsq = 0.0;
    for (const NlpFunction& f : p.eq) {
      const double c = f.value(z);
      sumsq += c * c;
    }
    for (const NlpFunction& f : p.ineq) {
      const double g = std::max(0.0, -f.value(z));
      sumsq += g * g;
    }
    double rho0 = options.penalty_init;
    if (std::isfinite(f0) && sumsq > 1e-12)
      rho0 = std::max(rho0, std::min(1e5, 2.0 * std::fabs(f0) / sumsq));
    al.rho = rho0;
  }

  // classic forcing sequences: tighten the inner tolerance with the penalty
  double omega = std::max(options.tol_grad, 1.0 / al.rho);
  double eta = std::max(options.tol_feas, 1.0 / std::pow(al.rho, 0.1));
  res.status = SolveStatus::max_iter;
  double viol_prev = al.violation(z);

  for (int outer = 0; outer < options.max_outer; ++outer) {
    const std::vector<double> z_before = z;
    const InnerResult inner =
        minimize_inner(al, p, z, omega, options.max_inner);
    if (inner.nan_hit) {
      res.status = SolveStatus::infeasible;
      res.diagnostic = "NaN in objective or constraints at the start point";
      break;
    }
    double viol = al.violation(z);
    const double fobj = p.objective.value(z);
    if (!std::isfinite(viol) || !std::isfinite(fobj)) {
      res.status = SolveStatus::infeasible;
      res.diagnostic = "NaN encountered during the outer loop";
      break;
    }

    // a weak penalty can make the inner solve trade the warm start's
    // near-feasibility for objective; reject such steps and raise rho
    if (viol > 10.0 * viol_prev + options.tol_feas) {
      z = z_before;
      al.rho = std::min(al.rho * options.penalty_growth, 1e12);
      eta = std::max(1.0 / std::pow(al.rho, 0.1), options.tol_feas);
      omega = std::max(1.0 / al.rho, options.tol_grad);
      res.history.push_back({al.rho, viol_prev, p.objective.value(z)});
      continue;
    }
    viol_prev = std::max(viol, options.tol_feas);
    res.history.push_back({al.rho, viol, fobj});

    if (viol <= eta) {
      if (viol <= options.tol_feas && omega <= options.tol_grad &&
          inner.pg_norm <= options.tol_grad) {
        al.update_multipliers(z);
        res.status = SolveStatus::converged;
        break;
      }
      al.update_multipliers(z);
      eta = std::max(eta / std::pow(al.rho, 0.5), options.tol_feas);
      omega = std::max(omega / 10.0, options.tol_grad);
    } else {
      al.rho = std::min(al.rho * options.penalty_growth, 1e12);
      eta = std::max(1.0 / std::pow(al.rho, 0.1), options.tol_feas);
      omega = std::max(1.0 / al.rho, options.tol_grad);
    }
  }

  res.z = std::move(z);
  res.feasibility_inf_norm = al.violation(res.z);
  res.objective = p.objective.value(res.z);
  return res;
}

double gradient_check(const NlpProblem& p, const std::vector<double>& z,
                      double h) {
  std::vector<double> zp = z;
  std::vector<double> analytic(p.n);

  auto check_one = [&](const NlpFunction& f) {
    std::fill(analytic.begin(), analytic.end(), 0.0);
    f.add_grad(zp, 1.0, analytic);
    double scale = 1.0;
    for (double v : analytic) scale = std::max(scale, std::fabs(v));
    double worst = 0.0;
    for (int i = 0; i < p.n; ++i) {
      const double zi = zp[i];
      zp[i] = zi + h;
      const double fp = f.value(zp);
      zp[i] = zi - h;
      const double fm = f.value(zp);
      zp[i] = zi;
      const double fd = (fp - fm) / (2.0 * h);
      worst = std::max(worst, std::fabs(fd - analytic[i]) / scale);
    }
    return worst;
  };

  double worst = check_one(p.objective);
  for (const NlpFunction& f : p.eq) worst = std::max(worst, check_one(f));
  for (const NlpFunction& f : p.ineq) worst = std::max(worst, check_one(f));
  return worst;
}

}  // namespace tgtsp
