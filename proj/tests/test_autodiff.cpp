#include <cmath>
#include <cstring>

#include "doctest_main.hpp"
#include "uts/gradcheck.hpp"
#include "uts/optim.hpp"

using namespace uts;

TEST_CASE("quadratic gradient: d sum(x*x) = 2x") {
  ParamStore ps;
  ps.add("x", Tensor::vector({1.0, 2.0}));
  Tape t;
  Var x = t.leaf(ps.at("x"), "x");
  Var loss = sum(mul(x, x));
  t.backward(loss);
  GradStore g;
  t.accumulate_param_grads(g);
  CHECK(g.at("x").data[0] == doctest::Approx(2.0));
  CHECK(g.at("x").data[1] == doctest::Approx(4.0));
}

TEST_CASE("log-softmax gradient equals softmax minus onehot") {
  ParamStore ps;
  ps.add("z", Tensor::vector({0.3, -1.2, 2.0, 0.0}));
  Tape t;
  Var z = t.leaf(ps.at("z"), "z");
  Var p = softmax(z);
  Var loss = neg(log_eps(pick(p, 2)));
  t.backward(loss);
  GradStore g;
  t.accumulate_param_grads(g);
  Tape t2(false);
  Var p2 = softmax(t2.input(ps.at("z")));
  for (long i = 0; i < 4; ++i) {
    double expect = p2.value().data[i] - (i == 2 ? 1.0 : 0.0);
    CHECK(g.at("z").data[i] == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("backward rejects non-scalar loss and double invocation") {
  ParamStore ps;
  ps.add("x", Tensor::vector({1.0, 2.0}));
  Tape t;
  Var x = t.leaf(ps.at("x"), "x");
  CHECK_THROWS_AS(t.backward(x), ShapeError);
  Tape t2;
  Var y = sum(t2.leaf(ps.at("x"), "x"));
  t2.backward(y);
  CHECK_THROWS_AS(t2.backward(y), NumericError);
}

// One composite touching every differentiable op, checked against central
// finite differences.
TEST_CASE("finite-difference oracle over the full op set") {
  ParamStore ps;
  Rng rng(42);
  ps.add("W", Tensor::zeros({3, 4}));
  ps.add("b", Tensor::zeros({3}));
  ps.add("E", Tensor::zeros({5, 4}));
  ps.add("v3", Tensor::zeros({3}));
  ps.add("s1", Tensor::zeros({1}));
  ps.init_uniform(rng, 0.5);

  LossClosure f = [](Tape& t, const ParamStore& p) {
    Var W = t.leaf(p.at("W"), "W");
    Var b = t.leaf(p.at("b"), "b");
    Var E = t.leaf(p.at("E"), "E");
    Var v3 = t.leaf(p.at("v3"), "v3");
    Var s1 = t.leaf(p.at("s1"), "s1");

    Var x = row(E, 1);
    Var h = tanh_(affine(W, x, b));              // [3]
    Var g = sigmoid(add(h, v3));                 // [3]
    Var sm = softmax(scale(g, pick(v3, 0)));     // [3]
    Var m = stack_rows({h, g, sm});              // [3 x 3]
    Var mt = matmul(m, m);                       // [3 x 3]
    Var rv = add_rowvec(mt, v3);                 // [3 x 3]
    Var wsum = matvec_t(m, sm);                  // [3]
    Var cat = concat({wsum, segment(row(rv, 2), 0, 2)});  // [5]
    Var tiled = tile_by_counts(v3, {2, 1, 2});   // [5]
    Var prod = mul(cat, tiled);
    Var e = exp_(scale_const(sigmoid(prod), 0.3));
    Var pvec = softmax(matvec(E, matvec_t(E, sub(cat, neg(e)))));  // [5]
    Var gh = renormalize(sigmoid(segment(cat, 1, 3)));
    Var mixture = copy_mix(pvec, gh, sigmoid(s1), {0, 2, 5}, 6);
    Var lm = log_eps(mixture, 1e-10);
    Var ms = mean(lm);
    Var extra = add(dot(h, g), mul(inv(add(s1, t.constant(3.0))), mean(rv)));
    return add(neg(ms), sum(mul(extra, extra)));
  };

  GradCheckReport rep = gradcheck(f, ps, 1e-4);
  CAPTURE(rep.worst.name);
  CAPTURE(rep.worst.index);
  CAPTURE(rep.max_rel_error);
  CHECK(rep.passed(1e-4));
  CHECK(rep.coords_checked == ps.total_size());
}

TEST_CASE("constant closure has all-zero gradients") {
  ParamStore ps;
  ps.add("x", Tensor::vector({1.5, -2.0}));
  LossClosure f = [](Tape& t, const ParamStore& p) {
    t.leaf(p.at("x"), "x");  // registered but unused
    return t.constant(7.0);
  };
  Tape t;
  Var loss = f(t, ps);
  t.backward(loss);
  GradStore g;
  t.accumulate_param_grads(g);
  CHECK(g.at("x").data[0] == 0.0);
  CHECK(g.at("x").data[1] == 0.0);
}

TEST_CASE("gradcheck flags a deliberately wrong backward rule") {
  ParamStore ps;
  ps.add("x", Tensor::vector({0.7, -0.4}));
  // square with backward 3x (instead of 2x)
  auto bad_square = [](Tape& t, Var v) {
    Tensor out = Tensor::from_flat(v.value().shape, v.value().data * v.value().data);
    Var o = t.push(std::move(out), t.node(v.id).requires_grad, {});
    if (t.node(o.id).requires_grad) {
      int oid = o.id, vid = v.id;
      t.node(oid).backward = [oid, vid](Tape& tape) {
        tape.grad_buffer(vid).data +=
            tape.node(oid).grad.data * 3.0 * tape.node(vid).value.data;
      };
    }
    return o;
  };
  LossClosure f = [&](Tape& t, const ParamStore& p) {
    return sum(bad_square(t, t.leaf(p.at("x"), "x")));
  };
  GradCheckReport rep = gradcheck(f, ps, 1e-4);
  CHECK(!rep.passed(1e-4));
  CHECK(!rep.failures.empty());
}

TEST_CASE("gradcheck detects a non-deterministic closure") {
  ParamStore ps;
  ps.add("x", Tensor::vector({1.0}));
  int calls = 0;
  LossClosure f = [&calls](Tape& t, const ParamStore& p) {
    ++calls;
    return scale_const(sum(t.leaf(p.at("x"), "x")), 1.0 + 0.001 * calls);
  };
  CHECK_THROWS_AS(gradcheck(f, ps, 1e-4), NumericError);
}

TEST_CASE("adagrad single-step hand computation") {
  ParamStore ps;
  ps.add("p", Tensor::vector({1.0}));
  GradStore g;
  g.emplace("p", Tensor::vector({1.0}));
  adagrad_step(ps, g, {0.1, 2.0, 1e-8});
  CHECK(ps.at("p").data[0] == doctest::Approx(1.0 - 0.1 * 1.0 / (1.0 + 1e-8)).epsilon(1e-12));
  CHECK(ps.accumulator("p").data[0] == doctest::Approx(1.0));
}

TEST_CASE("gradient clipping rescales the global norm") {
  GradStore g;
  g.emplace("a", Tensor::vector({6.0, 8.0}));  // norm 10
  double pre = clip_global_norm(g, 2.0);
  CHECK(pre == doctest::Approx(10.0));
  double post = std::sqrt((g.at("a").data * g.at("a").data).sum());
  CHECK(post == doctest::Approx(2.0));
}

TEST_CASE("clipping is a no-op within the bound") {
  GradStore g;
  g.emplace("a", Tensor::vector({0.3, 0.4}));  // norm 0.5
  clip_global_norm(g, 2.0);
  CHECK(g.at("a").data[0] == 0.3);
  CHECK(g.at("a").data[1] == 0.4);
}

TEST_CASE("adagrad with zero gradient keeps parameters bit-identical") {
  ParamStore ps;
  ps.add("p", Tensor::vector({0.123456789, -42.0}));
  Tensor before = ps.at("p");
  GradStore g;
  g.emplace("p", Tensor::zeros({2}));
  adagrad_step(ps, g, {});
  for (long i = 0; i < 2; ++i) {
    CHECK(std::memcmp(&ps.at("p").data[i], &before.data[i], sizeof(double)) == 0);
  }
}

TEST_CASE("adagrad rejects bad hyperparameters") {
  ParamStore ps;
  ps.add("p", Tensor::vector({1.0}));
  GradStore g;
  g.emplace("p", Tensor::vector({1.0}));
  CHECK_THROWS_AS(adagrad_step(ps, g, {-0.1, 2.0, 1e-8}), NumericError);
  CHECK_THROWS_AS(adagrad_step(ps, g, {0.1, 0.0, 1e-8}), NumericError);
}
