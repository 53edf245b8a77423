#include "doctest_main.hpp"
#include "uts/ops.hpp"
#include "uts/rng.hpp"

using namespace uts;

TEST_CASE("softmax of uniform logits is uniform") {
  Tape t(false);
  Var v = t.input(Tensor::vector({0.0, 0.0, 0.0}));
  Var s = softmax(v);
  for (long i = 0; i < 3; ++i) CHECK(s.value().data[i] == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("softmax survives huge logits via max subtraction") {
  Tape t(false);
  Var s = softmax(t.input(Tensor::vector({1000.0, 0.0})));
  CHECK(s.value().data[0] == doctest::Approx(1.0));
  CHECK(s.value().data[1] == doctest::Approx(0.0));
  CHECK(s.value().data.isFinite().all());
}

TEST_CASE("softmax rows normalize and shift invariance holds") {
  Tape t(false);
  Tensor m = Tensor::zeros({2, 3});
  m.data << 1.0, 2.0, 3.0, -5.0, 0.0, 5.0;
  Var s = softmax(t.input(m));
  for (long r = 0; r < 2; ++r) {
    double rs = s.value().data.segment(r * 3, 3).sum();
    CHECK(rs == doctest::Approx(1.0).epsilon(1e-9));
  }
  Tensor shifted = m;
  shifted.data.segment(0, 3) += 42.0;
  Var s2 = softmax(t.input(shifted));
  for (long i = 0; i < 3; ++i)
    CHECK(s2.value().data[i] == doctest::Approx(s.value().data[i]).epsilon(1e-12));
}

TEST_CASE("matmul identity") {
  Tape t(false);
  Tensor id = Tensor::zeros({3, 3});
  for (long i = 0; i < 3; ++i) id(i, i) = 1.0;
  Tensor x = Tensor::zeros({3, 4});
  for (long i = 0; i < 12; ++i) x.data[i] = 0.5 * double(i) - 2.0;
  Var y = matmul(t.input(id), t.input(x));
  for (long i = 0; i < 12; ++i) CHECK(y.value().data[i] == x.data[i]);
}

TEST_CASE("shape mismatch raises") {
  Tape t(false);
  Var a = t.input(Tensor::vector({1.0, 2.0}));
  Var b = t.input(Tensor::vector({1.0, 2.0, 3.0}));
  CHECK_THROWS_AS(add(a, b), ShapeError);
  CHECK_THROWS_AS(dot(a, b), ShapeError);
}

TEST_CASE("non-finite op output raises") {
  Tape t(false);
  Var z = t.input(Tensor::vector({0.0}));
  CHECK_THROWS_AS(inv(z), NumericError);
  CHECK_THROWS_AS(log_eps(z, 0.0), NumericError);
  Var big = t.input(Tensor::vector({1e308, 1e308}));
  CHECK_THROWS_AS(add(big, big), NumericError);
}

TEST_CASE("concat/segment/row/pick round out structure ops") {
  Tape t(false);
  Var a = t.input(Tensor::vector({1.0, 2.0}));
  Var b = t.input(Tensor::vector({3.0}));
  Var c = concat({a, b});
  CHECK(c.value().size() == 3);
  CHECK(pick(c, 2).value().value() == 3.0);
  Var seg = segment(c, 1, 2);
  CHECK(seg.value().data[0] == 2.0);
  Var m = stack_rows({a, seg});
  CHECK(m.value().rows() == 2);
  CHECK(row(m, 1).value().data[1] == 3.0);
}

TEST_CASE("tile_by_counts duplication") {
  Tape t(false);
  Var v = t.input(Tensor::vector({0.1, 0.2, 0.7}));
  Var out = tile_by_counts(v, {2, 1, 3});
  Tensor expect = Tensor::vector({0.1, 0.1, 0.2, 0.7, 0.7, 0.7});
  for (long i = 0; i < 6; ++i) CHECK(out.value().data[i] == expect.data[i]);
}

TEST_CASE("copy_mix accumulates repeated source tokens") {
  // p_gen = 0, source "a a b" with gamma_hat {0.5, 0.3, 0.2}
  Tape t(false);
  Var pv = t.input(Tensor::vector({0.25, 0.25, 0.25, 0.25}));
  Var gh = t.input(Tensor::vector({0.5, 0.3, 0.2}));
  Var pg = t.input(Tensor::scalar(0.0));
  Var out = copy_mix(pv, gh, pg, {0, 0, 1}, 4);
  CHECK(out.value().data[0] == doctest::Approx(0.8));
  CHECK(out.value().data[1] == doctest::Approx(0.2));
  CHECK(out.value().data.sum() == doctest::Approx(1.0));

  Var pg1 = t.input(Tensor::scalar(1.0));
  Var out1 = copy_mix(pv, gh, pg1, {0, 0, 1}, 4);
  for (long i = 0; i < 4; ++i) CHECK(out1.value().data[i] == doctest::Approx(0.25));
}

TEST_CASE("copy_mix distribution sums to one for random mixtures") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    Tape t(false);
    long nv = 5 + static_cast<long>(rng.next_below(10));
    long ns = 1 + static_cast<long>(rng.next_below(8));
    long next = nv + static_cast<long>(rng.next_below(4));
    Tensor pvt = Tensor::zeros({nv});
    for (long i = 0; i < nv; ++i) pvt.data[i] = rng.uniform(0.0, 1.0) + 1e-3;
    pvt.data /= pvt.data.sum();
    Tensor ght = Tensor::zeros({ns});
    for (long i = 0; i < ns; ++i) ght.data[i] = rng.uniform(0.0, 1.0) + 1e-3;
    ght.data /= ght.data.sum();
    std::vector<long> ids;
    for (long i = 0; i < ns; ++i) ids.push_back(static_cast<long>(rng.next_below(static_cast<uint64_t>(next))));
    Var out = copy_mix(t.input(pvt), t.input(ght), t.input(Tensor::scalar(rng.uniform(0.0, 1.0))), ids, next);
    CHECK(out.value().data.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((out.value().data >= 0.0).all());
  }
}
