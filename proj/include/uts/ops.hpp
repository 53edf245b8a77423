#pragma once

#include <vector>

#include "uts/tape.hpp"

namespace uts {

// Elementwise, same shape.
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var neg(Var a);

// Broadcasts.
Var scale(Var a, Var s);            // a * scalar-tensor s
Var scale_const(Var a, double c);   // a * c
Var add_rowvec(Var a, Var v);       // [m x n] + row-broadcast [n]

// Nonlinearities.
Var tanh_(Var a);
Var sigmoid(Var a);
Var exp_(Var a);
Var log_eps(Var a, double eps = 0.0);  // log(a + eps)
Var inv(Var s);                        // 1/s, scalar

// Linear algebra.
Var matmul(Var a, Var b);    // [m x k][k x n] -> [m x n]
Var matvec(Var a, Var x);    // A x
Var matvec_t(Var a, Var x);  // A^T x  (also: weighted sum of A's rows by x)
Var dot(Var a, Var b);       // -> scalar

// Softmax over the last axis (whole vector for rank 1, per row for rank 2),
// with max subtraction.
Var softmax(Var a);

// Reductions.
Var sum(Var a);
Var mean(Var a);

// Structure.
Var concat(const std::vector<Var>& parts);      // rank-1 concatenation
Var stack_rows(const std::vector<Var>& rows);   // k vectors [n] -> [k x n]
Var row(Var a, long i);                         // matrix row -> vector
Var pick(Var a, long i);                        // flat element -> scalar
Var segment(Var a, long offset, long len);      // flat slice -> vector

// v[counts.size()] -> vector of size sum(counts); entry i repeated counts[i]
// times, order preserved.
Var tile_by_counts(Var v, const std::vector<long>& counts);

// Pointer-generator mixture over the extended vocabulary:
//   out[w] = p_gen * vocab_dist[w]                  for w < |vocab_dist|
//   out[ext_ids[k]] += (1 - p_gen) * gamma_hat[k]   for every source slot k
Var copy_mix(Var vocab_dist, Var gamma_hat, Var p_gen,
             const std::vector<long>& ext_ids, long ext_vocab);

// Composites (no dedicated nodes).
inline Var affine(Var w, Var x, Var b) { return add(matvec(w, x), b); }
inline Var renormalize(Var v) { return scale(v, inv(sum(v))); }

}  // namespace uts
