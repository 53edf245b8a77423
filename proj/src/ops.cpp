#include "uts/ops.hpp"

#include <cmath>

#include "uts/errors.hpp"

namespace uts {
namespace {

using Flat = Tensor::Flat;

Tape& tp(Var a) {
  if (!a.valid()) throw ShapeError("operation on invalid Var");
  return *a.tape;
}

void same_tape(Var a, Var b) {
  if (a.tape != b.tape) throw ShapeError("operands live on different tapes");
}

bool needs(Var a) { return a.tape->node(a.id).requires_grad; }

// Pushes the result and, when any parent is differentiable, attaches the
// backward rule. `bw(tape, out_grad)` must add into parent grad buffers.
template <class BW>
Var record(Tape& t, Tensor out, bool req, BW&& bw) {
  Var v = t.push(std::move(out), req, {});
  if (t.node(v.id).requires_grad) {
    int oid = v.id;
    t.node(oid).backward = [oid, bw = std::forward<BW>(bw)](Tape& tape) {
      bw(tape, tape.node(oid).grad);
    };
  }
  return v;
}

void acc(Tape& t, int id, const Flat& contrib) {
  if (t.node(id).requires_grad) t.grad_buffer(id).data += contrib;
}

}  // namespace

Var add(Var a, Var b) {
  same_tape(a, b);
  const Tensor& x = a.value();
  const Tensor& y = b.value();
  if (!x.same_shape(y))
    throw ShapeError("add: " + x.shape_str() + " vs " + y.shape_str());
  int ai = a.id, bi = b.id;
  return record(tp(a), Tensor::from_flat(x.shape, x.data + y.data),
                needs(a) || needs(b), [ai, bi](Tape& t, const Tensor& g) {
                  acc(t, ai, g.data);
                  acc(t, bi, g.data);
                });
}

Var sub(Var a, Var b) {
  same_tape(a, b);
  const Tensor& x = a.value();
  const Tensor& y = b.value();
  if (!x.same_shape(y))
    throw ShapeError("sub: " + x.shape_str() + " vs " + y.shape_str());
  int ai = a.id, bi = b.id;
  return record(tp(a), Tensor::from_flat(x.shape, x.data - y.data),
                needs(a) || needs(b), [ai, bi](Tape& t, const Tensor& g) {
                  acc(t, ai, g.data);
                  acc(t, bi, -g.data);
                });
}

Var mul(Var a, Var b) {
  same_tape(a, b);
  const Tensor& x = a.value();
  const Tensor& y = b.value();
  if (!x.same_shape(y))
    throw ShapeError("mul: " + x.shape_str() + " vs " + y.shape_str());
  int ai = a.id, bi = b.id;
  return record(tp(a), Tensor::from_flat(x.shape, x.data * y.data),
                needs(a) || needs(b), [ai, bi](Tape& t, const Tensor& g) {
                  acc(t, ai, g.data * t.node(bi).value.data);
                  acc(t, bi, g.data * t.node(ai).value.data);
                });
}

Var neg(Var a) {
  int ai = a.id;
  return record(tp(a), Tensor::from_flat(a.value().shape, -a.value().data),
                needs(a),
                [ai](Tape& t, const Tensor& g) { acc(t, ai, -g.data); });
}

Var scale(Var a, Var s) {
  same_tape(a, s);
  if (!s.value().is_scalar()) throw ShapeError("scale: s must be scalar");
  double sv = s.value().value();
  int ai = a.id, si = s.id;
  return record(tp(a), Tensor::from_flat(a.value().shape, a.value().data * sv),
                needs(a) || needs(s), [ai, si, sv](Tape& t, const Tensor& g) {
                  acc(t, ai, g.data * sv);
                  if (t.node(si).requires_grad) {
                    t.grad_buffer(si).data[0] +=
                        (g.data * t.node(ai).value.data).sum();
                  }
                });
}

Var scale_const(Var a, double c) {
  int ai = a.id;
  return record(tp(a), Tensor::from_flat(a.value().shape, a.value().data * c),
                needs(a),
                [ai, c](Tape& t, const Tensor& g) { acc(t, ai, g.data * c); });
}

Var add_rowvec(Var a, Var v) {
  same_tape(a, v);
  const Tensor& x = a.value();
  const Tensor& r = v.value();
  if (x.rank() != 2 || r.rank() != 1 || x.cols() != r.size())
    throw ShapeError("add_rowvec: need [m x n] and [n]");
  Tensor out = x;
  out.mat().rowwise() += r.vec().transpose();
  int ai = a.id, vi = v.id;
  return record(tp(a), std::move(out), needs(a) || needs(v),
                [ai, vi](Tape& t, const Tensor& g) {
                  acc(t, ai, g.data);
                  if (t.node(vi).requires_grad) {
                    t.grad_buffer(vi).vec() += g.mat().colwise().sum().transpose();
                  }
                });
}

Var tanh_(Var a) {
  Tensor out = Tensor::from_flat(a.value().shape, a.value().data.tanh());
  Var v = tp(a).push(std::move(out), needs(a), {});
  if (tp(a).node(v.id).requires_grad) {
    int oid = v.id, ai = a.id;
    tp(a).node(oid).backward = [ai, oid](Tape& t) {
      const Tensor& g = t.node(oid).grad;
      const Flat& y = t.node(oid).value.data;
      acc(t, ai, g.data * (1.0 - y * y));
    };
  }
  return v;
}

Var sigmoid(Var a) {
  const Flat& x = a.value().data;
  Flat y = 0.5 * (0.5 * x).tanh() + 0.5;  // stable logistic
  Tensor out = Tensor::from_flat(a.value().shape, std::move(y));
  Var v = tp(a).push(std::move(out), needs(a), {});
  if (tp(a).node(v.id).requires_grad) {
    int oid = v.id, ai = a.id;
    tp(a).node(oid).backward = [ai, oid](Tape& t) {
      const Tensor& g = t.node(oid).grad;
      const Flat& yv = t.node(oid).value.data;
      acc(t, ai, g.data * yv * (1.0 - yv));
    };
  }
  return v;
}

Var exp_(Var a) {
  Tensor out = Tensor::from_flat(a.value().shape, a.value().data.exp());
  Var v = tp(a).push(std::move(out), needs(a), {});
  if (tp(a).node(v.id).requires_grad) {
    int oid = v.id, ai = a.id;
    tp(a).node(oid).backward = [ai, oid](Tape& t) {
      acc(t, ai, t.node(oid).grad.data * t.node(oid).value.data);
    };
  }
  return v;
}

Var log_eps(Var a, double eps) {
  const Flat& x = a.value().data;
  if (((x + eps) <= 0.0).any()) throw NumericError("log of non-positive value");
  Tensor out = Tensor::from_flat(a.value().shape, (x + eps).log());
  int ai = a.id;
  return record(tp(a), std::move(out), needs(a),
                [ai, eps](Tape& t, const Tensor& g) {
                  acc(t, ai, g.data / (t.node(ai).value.data + eps));
                });
}

Var inv(Var s) {
  if (!s.value().is_scalar()) throw ShapeError("inv: scalar only");
  double sv = s.value().value();
  if (sv == 0.0) throw NumericError("inv of zero");
  int si = s.id;
  return record(tp(s), Tensor::scalar(1.0 / sv), needs(s),
                [si, sv](Tape& t, const Tensor& g) {
                  if (t.node(si).requires_grad)
                    t.grad_buffer(si).data[0] += -g.data[0] / (sv * sv);
                });
}

Var matmul(Var a, Var b) {
  same_tape(a, b);
  const Tensor& x = a.value();
  const Tensor& y = b.value();
  if (x.rank() != 2 || y.rank() != 2 || x.cols() != y.rows())
    throw ShapeError("matmul: " + x.shape_str() + " * " + y.shape_str());
  Tensor out = Tensor::zeros({x.rows(), y.cols()});
  out.mat().noalias() = x.mat() * y.mat();
  int ai = a.id, bi = b.id;
  return record(tp(a), std::move(out), needs(a) || needs(b),
                [ai, bi](Tape& t, const Tensor& g) {
                  if (t.node(ai).requires_grad)
                    t.grad_buffer(ai).mat().noalias() +=
                        g.mat() * t.node(bi).value.mat().transpose();
                  if (t.node(bi).requires_grad)
                    t.grad_buffer(bi).mat().noalias() +=
                        t.node(ai).value.mat().transpose() * g.mat();
                });
}

Var matvec(Var a, Var x) {
  same_tape(a, x);
  const Tensor& m = a.value();
  const Tensor& v = x.value();
  if (m.rank() != 2 || v.rank() != 1 || m.cols() != v.size())
    throw ShapeError("matvec: " + m.shape_str() + " * " + v.shape_str());
  Tensor out = Tensor::zeros({m.rows()});
  out.vec().noalias() = m.mat() * v.vec();
  int ai = a.id, xi = x.id;
  return record(tp(a), std::move(out), needs(a) || needs(x),
                [ai, xi](Tape& t, const Tensor& g) {
                  if (t.node(ai).requires_grad)
                    t.grad_buffer(ai).mat().noalias() +=
                        g.vec() * t.node(xi).value.vec().transpose();
                  if (t.node(xi).requires_grad)
                    t.grad_buffer(xi).vec().noalias() +=
                        t.node(ai).value.mat().transpose() * g.vec();
                });
}

Var matvec_t(Var a, Var x) {
  same_tape(a, x);
  const Tensor& m = a.value();
  const Tensor& v = x.value();
  if (m.rank() != 2 || v.rank() != 1 || m.rows() != v.size())
    throw ShapeError("matvec_t: " + m.shape_str() + "^T * " + v.shape_str());
  Tensor out = Tensor::zeros({m.cols()});
  out.vec().noalias() = m.mat().transpose() * v.vec();
  int ai = a.id, xi = x.id;
  return record(tp(a), std::move(out), needs(a) || needs(x),
                [ai, xi](Tape& t, const Tensor& g) {
                  if (t.node(ai).requires_grad)
                    t.grad_buffer(ai).mat().noalias() +=
                        t.node(xi).value.vec() * g.vec().transpose();
                  if (t.node(xi).requires_grad)
                    t.grad_buffer(xi).vec().noalias() +=
                        t.node(ai).value.mat() * g.vec();
                });
}

Var dot(Var a, Var b) {
  same_tape(a, b);
  const Tensor& x = a.value();
  const Tensor& y = b.value();
  if (x.size() != y.size()) throw ShapeError("dot: length mismatch");
  int ai = a.id, bi = b.id;
  return record(tp(a), Tensor::scalar((x.data * y.data).sum()),
                needs(a) || needs(b), [ai, bi](Tape& t, const Tensor& g) {
                  double gv = g.data[0];
                  acc(t, ai, gv * t.node(bi).value.data);
                  acc(t, bi, gv * t.node(ai).value.data);
                });
}

Var softmax(Var a) {
  const Tensor& x = a.value();
  if (x.rank() > 2) throw ShapeError("softmax: rank must be 1 or 2");
  Tensor out = x;
  long nrows = x.rank() == 2 ? x.rows() : 1;
  long ncols = x.rank() == 2 ? x.cols() : x.size();
  for (long r = 0; r < nrows; ++r) {
    auto seg = out.data.segment(r * ncols, ncols);
    double m = seg.maxCoeff();
    seg = (seg - m).exp();
    seg /= seg.sum();
  }
  Var v = tp(a).push(std::move(out), needs(a), {});
  if (tp(a).node(v.id).requires_grad) {
    int oid = v.id, ai = a.id;
    tp(a).node(oid).backward = [ai, oid, nrows, ncols](Tape& t) {
      const Flat& g = t.node(oid).grad.data;
      const Flat& y = t.node(oid).value.data;
      Flat dx(g.size());
      for (long r = 0; r < nrows; ++r) {
        auto gs = g.segment(r * ncols, ncols);
        auto ys = y.segment(r * ncols, ncols);
        double inner = (gs * ys).sum();
        dx.segment(r * ncols, ncols) = (gs - inner) * ys;
      }
      acc(t, ai, dx);
    };
  }
  return v;
}

Var sum(Var a) {
  int ai = a.id;
  long n = a.value().size();
  return record(tp(a), Tensor::scalar(a.value().data.sum()), needs(a),
                [ai, n](Tape& t, const Tensor& g) {
                  acc(t, ai, Flat::Constant(n, g.data[0]));
                });
}

Var mean(Var a) {
  int ai = a.id;
  long n = a.value().size();
  return record(tp(a), Tensor::scalar(a.value().data.mean()), needs(a),
                [ai, n](Tape& t, const Tensor& g) {
                  acc(t, ai, Flat::Constant(n, g.data[0] / double(n)));
                });
}

Var concat(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat: empty");
  Tape& t = tp(parts[0]);
  long total = 0;
  bool req = false;
  for (Var p : parts) {
    same_tape(parts[0], p);
    total += p.value().size();
    req = req || needs(p);
  }
  Tensor out = Tensor::zeros({total});
  long off = 0;
  std::vector<int> ids;
  std::vector<long> sizes;
  for (Var p : parts) {
    out.data.segment(off, p.value().size()) = p.value().data;
    off += p.value().size();
    ids.push_back(p.id);
    sizes.push_back(p.value().size());
  }
  return record(t, std::move(out), req,
                [ids, sizes](Tape& tape, const Tensor& g) {
                  long o = 0;
                  for (size_t k = 0; k < ids.size(); ++k) {
                    if (tape.node(ids[k]).requires_grad)
                      tape.grad_buffer(ids[k]).data += g.data.segment(o, sizes[k]);
                    o += sizes[k];
                  }
                });
}

Var stack_rows(const std::vector<Var>& rows) {
  if (rows.empty()) throw ShapeError("stack_rows: empty");
  Tape& t = tp(rows[0]);
  long n = rows[0].value().size();
  bool req = false;
  std::vector<int> ids;
  for (Var r : rows) {
    same_tape(rows[0], r);
    if (r.value().rank() != 1 || r.value().size() != n)
      throw ShapeError("stack_rows: rows must be equal-length vectors");
    req = req || needs(r);
    ids.push_back(r.id);
  }
  Tensor out = Tensor::zeros({static_cast<long>(rows.size()), n});
  for (size_t k = 0; k < rows.size(); ++k)
    out.data.segment(static_cast<long>(k) * n, n) = rows[k].value().data;
  return record(t, std::move(out), req, [ids, n](Tape& tape, const Tensor& g) {
    for (size_t k = 0; k < ids.size(); ++k) {
      if (tape.node(ids[k]).requires_grad)
        tape.grad_buffer(ids[k]).data +=
            g.data.segment(static_cast<long>(k) * n, n);
    }
  });
}

Var row(Var a, long i) {
  const Tensor& m = a.value();
  if (m.rank() != 2 || i < 0 || i >= m.rows()) throw ShapeError("row: out of range");
  long n = m.cols();
  Tensor out = Tensor::zeros({n});
  out.data = m.data.segment(i * n, n);
  int ai = a.id;
  return record(tp(a), std::move(out), needs(a),
                [ai, i, n](Tape& t, const Tensor& g) {
                  if (t.node(ai).requires_grad)
                    t.grad_buffer(ai).data.segment(i * n, n) += g.data;
                });
}

Var pick(Var a, long i) {
  const Tensor& v = a.value();
  if (i < 0 || i >= v.size()) throw ShapeError("pick: index out of range");
  int ai = a.id;
  return record(tp(a), Tensor::scalar(v.data[i]), needs(a),
                [ai, i](Tape& t, const Tensor& g) {
                  if (t.node(ai).requires_grad)
                    t.grad_buffer(ai).data[i] += g.data[0];
                });
}

Var segment(Var a, long offset, long len) {
  const Tensor& v = a.value();
  if (offset < 0 || len <= 0 || offset + len > v.size())
    throw ShapeError("segment: out of range");
  Tensor out = Tensor::zeros({len});
  out.data = v.data.segment(offset, len);
  int ai = a.id;
  return record(tp(a), std::move(out), needs(a),
                [ai, offset, len](Tape& t, const Tensor& g) {
                  if (t.node(ai).requires_grad)
                    t.grad_buffer(ai).data.segment(offset, len) += g.data;
                });
}

Var tile_by_counts(Var v, const std::vector<long>& counts) {
  const Tensor& x = v.value();
  if (x.rank() != 1 || static_cast<long>(counts.size()) != x.size())
    throw ShapeError("tile_by_counts: counts must match vector length");
  long total = 0;
  for (long c : counts) {
    if (c < 0) throw ShapeError("tile_by_counts: negative count");
    total += c;
  }
  if (total == 0) throw ShapeError("tile_by_counts: empty output");
  Tensor out = Tensor::zeros({total});
  long o = 0;
  for (long i = 0; i < x.size(); ++i) {
    out.data.segment(o, counts[static_cast<size_t>(i)]).setConstant(x.data[i]);
    o += counts[static_cast<size_t>(i)];
  }
  int vi = v.id;
  return record(tp(v), std::move(out), needs(v),
                [vi, counts](Tape& t, const Tensor& g) {
                  if (!t.node(vi).requires_grad) return;
                  Flat& dv = t.grad_buffer(vi).data;
                  long o2 = 0;
                  for (size_t i = 0; i < counts.size(); ++i) {
                    dv[static_cast<long>(i)] += g.data.segment(o2, counts[i]).sum();
                    o2 += counts[i];
                  }
                });
}

Var copy_mix(Var vocab_dist, Var gamma_hat, Var p_gen,
             const std::vector<long>& ext_ids, long ext_vocab) {
  same_tape(vocab_dist, gamma_hat);
  same_tape(vocab_dist, p_gen);
  const Tensor& pv = vocab_dist.value();
  const Tensor& gh = gamma_hat.value();
  if (!p_gen.value().is_scalar()) throw ShapeError("copy_mix: p_gen must be scalar");
  if (gh.size() != static_cast<long>(ext_ids.size()))
    throw ShapeError("copy_mix: gamma/ids length mismatch");
  if (ext_vocab < pv.size()) throw ShapeError("copy_mix: extended vocab too small");
  for (long id : ext_ids)
    if (id < 0 || id >= ext_vocab) throw ShapeError("copy_mix: id out of range");
  double pg = p_gen.value().value();
  Tensor out = Tensor::zeros({ext_vocab});
  out.data.head(pv.size()) = pg * pv.data;
  for (size_t k = 0; k < ext_ids.size(); ++k)
    out.data[ext_ids[k]] += (1.0 - pg) * gh.data[static_cast<long>(k)];
  int pvi = vocab_dist.id, ghi = gamma_hat.id, pgi = p_gen.id;
  long nv = pv.size();
  return record(tp(vocab_dist), std::move(out),
                needs(vocab_dist) || needs(gamma_hat) || needs(p_gen),
                [pvi, ghi, pgi, ext_ids, nv, pg](Tape& t, const Tensor& g) {
                  if (t.node(pvi).requires_grad)
                    t.grad_buffer(pvi).data += pg * g.data.head(nv);
                  if (t.node(ghi).requires_grad) {
                    Flat& dg = t.grad_buffer(ghi).data;
                    for (size_t k = 0; k < ext_ids.size(); ++k)
                      dg[static_cast<long>(k)] += (1.0 - pg) * g.data[ext_ids[k]];
                  }
                  if (t.node(pgi).requires_grad) {
                    double d = (g.data.head(nv) * t.node(pvi).value.data).sum();
                    const Flat& ghv = t.node(ghi).value.data;
                    for (size_t k = 0; k < ext_ids.size(); ++k)
                      d -= g.data[ext_ids[k]] * ghv[static_cast<long>(k)];
                    t.grad_buffer(pgi).data[0] += d;
                  }
                });
}

}  // namespace uts
