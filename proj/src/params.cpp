#include "uts/params.hpp"

#include "uts/errors.hpp"

namespace uts {

Tensor& ParamStore::add(const std::string& name, Tensor t) {
  if (entries_.count(name)) throw ShapeError("duplicate parameter " + name);
  t.requires_grad = true;
  auto [it, ok] = entries_.emplace(name, std::move(t));
  (void)ok;
  accumulators_.emplace(name, Tensor::zeros(it->second.shape));
  return it->second;
}

Tensor& ParamStore::at(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw ShapeError("unknown parameter " + name);
  return it->second;
}

const Tensor& ParamStore::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw ShapeError("unknown parameter " + name);
  return it->second;
}

Tensor& ParamStore::accumulator(const std::string& name) {
  auto it = accumulators_.find(name);
  if (it == accumulators_.end()) throw ShapeError("no accumulator for " + name);
  return it->second;
}

const Tensor& ParamStore::accumulator(const std::string& name) const {
  auto it = accumulators_.find(name);
  if (it == accumulators_.end()) throw ShapeError("no accumulator for " + name);
  return it->second;
}

long ParamStore::total_size() const {
  long n = 0;
  for (const auto& [k, v] : entries_) n += v.size();
  return n;
}

void ParamStore::check_invariants() const {
  if (entries_.size() != accumulators_.size())
    throw ShapeError("accumulator name set differs from entries");
  for (const auto& [k, v] : entries_) {
    auto it = accumulators_.find(k);
    if (it == accumulators_.end()) throw ShapeError("missing accumulator " + k);
    if (it->second.shape != v.shape) throw ShapeError("accumulator shape differs: " + k);
    if ((it->second.data < 0.0).any())
      throw NumericError("negative adagrad accumulator in " + k);
  }
}

void ParamStore::init_uniform(Rng& rng, double range) {
  for (auto& [k, v] : entries_) {
    for (long i = 0; i < v.size(); ++i) v.data[i] = rng.uniform(-range, range);
  }
}

}  // namespace uts
