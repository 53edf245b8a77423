#pragma once

#include "uts/params.hpp"

namespace uts {

// Rescales so the global (all-parameter) L2 norm is at most clip_norm.
// Returns the pre-clip norm. No-op when already within the bound.
double clip_global_norm(GradStore& grads, double clip_norm);

// In place: acc += g^2; p -= lr * g / (sqrt(acc) + eps). Gradients are
// clipped globally first.
struct AdagradConfig {
  double lr = 0.15;
  double clip_norm = 2.0;
  double eps = 1e-8;
};

void adagrad_step(ParamStore& params, GradStore& grads, const AdagradConfig& cfg);

}  // namespace uts
