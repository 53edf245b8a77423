#include "uts/optim.hpp"

#include <cmath>

#include "uts/errors.hpp"

namespace uts {

double clip_global_norm(GradStore& grads, double clip_norm) {
  if (clip_norm <= 0.0) throw NumericError("clip_norm must be positive");
  double sq = 0.0;
  for (const auto& [k, g] : grads) sq += (g.data * g.data).sum();
  double norm = std::sqrt(sq);
  if (norm > clip_norm) {
    double s = clip_norm / norm;
    for (auto& [k, g] : grads) g.data *= s;
  }
  return norm;
}

void adagrad_step(ParamStore& params, GradStore& grads, const AdagradConfig& cfg) {
  if (cfg.lr <= 0.0) throw NumericError("learning rate must be positive");
  clip_global_norm(grads, cfg.clip_norm);
  for (auto& [name, g] : grads) {
    Tensor& p = params.at(name);
    Tensor& acc = params.accumulator(name);
    if (!p.same_shape(g)) throw ShapeError("gradient shape mismatch for " + name);
    g.check_finite(("gradient " + name).c_str());
    acc.data += g.data * g.data;
    p.data -= cfg.lr * g.data / (acc.data.sqrt() + cfg.eps);
    p.check_finite(("parameter " + name).c_str());
  }
}

}  // namespace uts
