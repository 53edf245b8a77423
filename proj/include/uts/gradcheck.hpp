#pragma once

#include <functional>
#include <string>
#include <vector>

#include "uts/ops.hpp"
#include "uts/params.hpp"

namespace uts {

// Builds the scalar loss for the current parameter values. Must be
// deterministic; the checker verifies this by evaluating twice.
using LossClosure = std::function<Var(Tape&, const ParamStore&)>;

struct GradCheckEntry {
  std::string name;
  long index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  long coords_checked = 0;
  std::vector<GradCheckEntry> failures;   // coordinates above tolerance
  GradCheckEntry worst;
  bool passed(double tol) const { return max_rel_error < tol; }
};

// Central finite differences against the tape gradients, every coordinate.
// rel = |a - n| / max(1, |a|, |n|)  (absolute error near zero).
GradCheckReport gradcheck(const LossClosure& f, ParamStore& params,
                          double tolerance, double step = 1e-5);

}  // namespace uts
