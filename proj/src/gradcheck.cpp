#include "uts/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "uts/errors.hpp"

namespace uts {

GradCheckReport gradcheck(const LossClosure& f, ParamStore& params,
                          double tolerance, double step) {
  auto eval = [&](bool with_grad) {
    Tape tape(with_grad);
    Var loss = f(tape, params);
    return std::pair<double, Var>(loss.value().value(), loss);
  };

  {
    Tape t1(false), t2(false);
    double a = f(t1, params).value().value();
    double b = f(t2, params).value().value();
    if (a != b) throw NumericError("gradcheck: closure is non-deterministic");
  }

  GradStore analytic;
  {
    Tape tape(true);
    Var loss = f(tape, params);
    tape.backward(loss);
    tape.accumulate_param_grads(analytic);
  }

  GradCheckReport rep;
  for (auto& [name, p] : params.entries()) {
    const Tensor& ga = analytic.at(name);
    for (long i = 0; i < p.size(); ++i) {
      double orig = p.data[i];
      p.data[i] = orig + step;
      double up = eval(false).first;
      p.data[i] = orig - step;
      double dn = eval(false).first;
      p.data[i] = orig;
      double num = (up - dn) / (2.0 * step);
      double ana = ga.data[i];
      double denom = std::max({1.0, std::abs(ana), std::abs(num)});
      double rel = std::abs(ana - num) / denom;
      ++rep.coords_checked;
      if (rel > rep.max_rel_error) {
        rep.max_rel_error = rel;
        rep.worst = {name, i, ana, num, rel};
      }
      if (rel >= tolerance) rep.failures.push_back({name, i, ana, num, rel});
    }
  }
  return rep;
}

}  // namespace uts
