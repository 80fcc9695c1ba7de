#include "ldrop/jellium/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "ldrop/core/types.hpp"

namespace ldrop {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> x, const LbfgsParams& p,
                           const Normalizer& normalize) {
  if (p.memory < 1 || p.max_iterations < 0) throw ArgumentError("lbfgs: invalid parameters");
  const std::size_t n = x.size();
  LbfgsResult res;
  std::vector<double> g(n), gn(n), xn(n), dir(n);
  double fx = f(x, g);
  if (!std::isfinite(fx)) throw ArgumentError("lbfgs: starting point is infeasible");
  std::deque<Pair> mem;
  res.trace.push_back({0, fx, max_abs(g)});
  int it = 0, stall = 0;
  for (; it < p.max_iterations; ++it) {
    if (max_abs(g) <= p.gradient_tol) {
      res.converged = true;
      break;
    }
    // two-loop recursion
    dir = g;
    std::vector<double> alpha(mem.size());
    for (std::size_t k = mem.size(); k-- > 0;) {
      alpha[k] = mem[k].rho * dot(mem[k].s, dir);
      for (std::size_t i = 0; i < n; ++i) dir[i] -= alpha[k] * mem[k].y[i];
    }
    if (!mem.empty()) {
      const double gamma = dot(mem.back().s, mem.back().y) / dot(mem.back().y, mem.back().y);
      for (auto& v : dir) v *= gamma;
    }
    for (std::size_t k = 0; k < mem.size(); ++k) {
      const double beta = mem[k].rho * dot(mem[k].y, dir);
      for (std::size_t i = 0; i < n; ++i) dir[i] += (alpha[k] - beta) * mem[k].s[i];
    }
    for (auto& v : dir) v = -v;
    double slope = dot(dir, g);
    if (!(slope < 0)) {
      // lost descent: restart from steepest descent
      mem.clear();
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      slope = dot(dir, g);
    }
    double t = 1.0;
    if (mem.empty()) t = std::min(1.0, 1.0 / std::max(max_abs(dir), 1e-300));
    if (p.max_step > 0) t = std::min(t, p.max_step / std::max(max_abs(dir), 1e-300));
    double fn = 0.0;
    bool ok = false;
    for (int b = 0; b < p.max_backtracks; ++b) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + t * dir[i];
      fn = f(xn, gn);
      if (std::isfinite(fn) && fn <= fx + p.armijo * t * slope) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) {
      if (!mem.empty()) {
        // one retry along steepest descent with a fresh memory
        mem.clear();
        --it;
        continue;
      }
      res.line_search_failed = true;
      res.message = "line search failed at iteration " + std::to_string(it);
      break;
    }
    Pair pr;
    pr.s.resize(n);
    pr.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      pr.s[i] = t * dir[i];
      pr.y[i] = gn[i] - g[i];
    }
    const double sy = dot(pr.s, pr.y);
    if (sy > 1e-16 * std::sqrt(dot(pr.s, pr.s) * dot(pr.y, pr.y))) {
      pr.rho = 1.0 / sy;
      mem.push_back(std::move(pr));
      if (int(mem.size()) > p.memory) mem.pop_front();
    }
    stall = fx - fn <= 1e-15 * std::abs(fx) ? stall + 1 : 0;
    x = xn;
    if (normalize) normalize(x);
    fx = fn;
    g = gn;
    res.trace.push_back({it + 1, fx, max_abs(g)});
    if (stall >= 5) {
      res.message = "no further decrease at machine precision";
      ++it;
      break;
    }
  }
  if (!res.converged && max_abs(g) <= p.gradient_tol) res.converged = true;
  if (res.message.empty()) res.message = res.converged ? "converged" : "iteration limit";
  res.x = std::move(x);
  res.f = fx;
  res.gradient_norm = max_abs(g);
  res.iterations = it;
  return res;
}

}  // namespace ldrop
