#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ldrop {

struct LbfgsParams {
  int max_iterations = 1000;
  int memory = 8;
  double gradient_tol = 1e-8;   // on the largest gradient component
  double max_step = 0.0;        // cap on the largest coordinate move per step, 0 = none
  double armijo = 1e-4;
  int max_backtracks = 40;
};

struct TraceRow {
  int iteration;
  double energy;
  double gradient_norm;
};

struct LbfgsResult {
  std::vector<double> x;
  double f = 0.0;
  double gradient_norm = 0.0;  // largest component
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
  std::string message;
  std::vector<TraceRow> trace;
};

// Returns f(x) and writes the gradient; +inf marks an infeasible point and makes
// the line search back off.
using Objective = std::function<double(const std::vector<double>&, std::vector<double>&)>;
// Optional map applied after every accepted step (e.g. periodic wrapping); must
// leave f and the gradient unchanged.
using Normalizer = std::function<void(std::vector<double>&)>;

// Limited-memory BFGS with Armijo backtracking. The step s = t p is stored
// rather than the difference of iterates so that a Normalizer cannot corrupt the
// curvature pairs. Accepted steps never increase f.
LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> x0, const LbfgsParams& p = {},
                           const Normalizer& normalize = {});

}  // namespace ldrop
