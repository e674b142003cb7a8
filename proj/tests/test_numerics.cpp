#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "auxsumm/grad_check.hpp"
#include "auxsumm/graph.hpp"
#include "auxsumm/tensor.hpp"

using namespace auxsumm;

namespace {

// Scalar loss: dot the op output with fixed random coefficients so every
// output element feeds the gradient.
ScalarFn make_fn(std::function<Var(Graph&, const std::vector<Var>&)> build, Tensor coefs) {
  return [build = std::move(build), coefs = std::move(coefs)](const std::vector<Tensor>& inputs,
                                                              std::vector<Tensor>* grads) {
    Graph g;
    std::vector<Var> leaves;
    leaves.reserve(inputs.size());
    for (const Tensor& t : inputs) leaves.push_back(g.input(t));
    Var out = build(g, leaves);
    Var loss = g.sum(g.mul(out, g.input(coefs)));
    const double value = g.value(loss).data[0];
    if (grads != nullptr) {
      g.backward(loss);
      grads->clear();
      for (Var leaf : leaves) grads->push_back(g.grad(leaf));
    }
    return value;
  };
}

Tensor coefs_for(const Tensor& sample, Rng& rng) {
  Tensor c(sample.shape);
  for (double& x : c.data) x = rng.uniform(-1.0, 1.0);
  return c;
}

double check(std::function<Var(Graph&, const std::vector<Var>&)> build,
             std::vector<Tensor> inputs, Rng& rng) {
  Graph probe;
  std::vector<Var> leaves;
  for (const Tensor& t : inputs) leaves.push_back(probe.input(t));
  Tensor coefs = coefs_for(probe.value(build(probe, leaves)), rng);
  const auto report = grad_check(make_fn(std::move(build), std::move(coefs)), std::move(inputs));
  return report.max_rel_error;
}

}  // namespace

TEST_CASE("every primitive passes grad_check below 1e-6 on randomized shapes") {
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    Rng rng(1000 + trial);
    auto dim = [&] { return 1 + static_cast<int>(rng.next_below(5)); };
    const int m = dim(), k = dim(), n = dim();

    auto rt = [&](std::vector<int> shape) { return uniform_tensor(shape, -1.0, 1.0, rng); };

    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.matmul(in[0], in[1]); },
                {rt({m, k}), rt({k, n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.matmul(in[0], in[1]); },
                {rt({m, k}), rt({k})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.affine(in[0], in[1], in[2]); },
                {rt({m, k}), rt({k}), rt({m})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.add(in[0], in[1]); },
                {rt({m, n}), rt({m, n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.add_rowvec(in[0], in[1]); },
                {rt({m, n}), rt({n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.mul(in[0], in[1]); },
                {rt({m, n}), rt({m, n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.concat(in[0], in[1]); },
                {rt({m}), rt({n})}, rng) < 1e-6);
    CHECK(check([&](Graph& g, const std::vector<Var>& in) { return g.slice(in[0], 1, k); },
                {rt({k + 2})}, rng) < 1e-6);
    CHECK(check([&](Graph& g, const std::vector<Var>& in) { return g.slice_row(in[0], m - 1); },
                {rt({m, n})}, rng) < 1e-6);
    CHECK(check(
              [](Graph& g, const std::vector<Var>& in) {
                return g.stack_rows({in[0], in[1], in[0]});
              },
              {rt({n}), rt({n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.tanh(in[0]); }, {rt({m, n})},
                rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.sigmoid(in[0]); },
                {rt({m, n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.softmax(in[0]); }, {rt({n})},
                rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.log(in[0]); },
                {uniform_tensor({n}, 0.5, 2.0, rng)}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.log(in[0], 1e-12); },
                {uniform_tensor({n}, 0.5, 2.0, rng)}, rng) < 1e-6);
    CHECK(check(
              [](Graph& g, const std::vector<Var>& in) { return g.elementwise_min(in[0], in[1]); },
              {rt({m, n}), rt({m, n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.weighted_sum(in[0], in[1]); },
                {rt({m}), rt({m, n})}, rng) < 1e-6);
    CHECK(check(
              [&](Graph& g, const std::vector<Var>& in) {
                return g.embed_lookup(in[0], {0, m - 1, 0});
              },
              {rt({m, n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.outer(in[0], in[1]); },
                {rt({m}), rt({n})}, rng) < 1e-6);
    CHECK(check(
              [&](Graph& g, const std::vector<Var>& in) {
                return g.scatter_add(in[0], {0, k - 1, 0}, k + 1);
              },
              {rt({3})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.smul(in[0], in[1]); },
                {rt({1}), rt({m, n})}, rng) < 1e-6);
    CHECK(check(
              [](Graph& g, const std::vector<Var>& in) {
                return g.scalar_mix(0.3, in[0], 0.7, in[1]);
              },
              {rt({n}), rt({n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.scale(-1.7, in[0]); },
                {rt({m, n})}, rng) < 1e-6);
    CHECK(check([](Graph& g, const std::vector<Var>& in) { return g.sum(in[0]); }, {rt({m, n})},
                rng) < 1e-6);
    CHECK(check([&](Graph& g, const std::vector<Var>& in) { return g.pick(in[0], n - 1); },
                {rt({n})}, rng) < 1e-6);
  }
}

TEST_CASE("softmax basics") {
  Graph g;
  Var y = g.softmax(g.input(Tensor::from_vec({0.0, 0.0})));
  CHECK(g.value(y).at(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.value(y).at(1) == doctest::Approx(0.5).epsilon(1e-12));

  // invariance to additive constants per row
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor x = uniform_tensor({6}, -3.0, 3.0, rng);
    Tensor shifted = x;
    const double c = rng.uniform(-50.0, 50.0);
    for (double& v : shifted.data) v += c;
    Graph g2;
    const Tensor& a = g2.value(g2.softmax(g2.input(x)));
    const Tensor& b = g2.value(g2.softmax(g2.input(shifted)));
    double total = 0.0;
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(a.at(i) - b.at(i)) < 1e-12);
      CHECK(a.at(i) >= 0.0);
      total += a.at(i);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sigmoid(0) is 0.5 and outputs stay in (0,1)") {
  Graph g;
  CHECK(g.value(g.sigmoid(g.input(Tensor::scalar(0.0)))).data[0] == doctest::Approx(0.5));
  Rng rng(3);
  const Tensor& y = g.value(g.sigmoid(g.input(uniform_tensor({32}, -20.0, 20.0, rng))));
  for (double v : y.data) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("elementwise_min subgradient: x-branch below, zero above, ties to first arg") {
  auto min_grad = [](double x, double c) {
    Graph g;
    Var vx = g.input(Tensor::scalar(x));
    Var loss = g.sum(g.elementwise_min(vx, g.input(Tensor::scalar(c))));
    g.backward(loss);
    return g.grad(vx).data[0];
  };
  CHECK(min_grad(1.0, 2.0) == 1.0);
  CHECK(min_grad(3.0, 2.0) == 0.0);
  CHECK(min_grad(2.0, 2.0) == 1.0);  // tie routes to the first argument
}

TEST_CASE("log below the floor clamps the value and zeroes the gradient") {
  Graph g;
  Var x = g.input(Tensor::scalar(1e-15));
  Var y = g.log(x, 1e-12);
  CHECK(g.value(y).data[0] == doctest::Approx(std::log(1e-12)));
  g.backward(y);
  CHECK(g.grad(x).data[0] == 0.0);
}

TEST_CASE("grad_check harness on closed forms") {
  // f(x) = x^2 at x = 3: analytic gradient 6
  ScalarFn square = [](const std::vector<Tensor>& in, std::vector<Tensor>* grads) {
    if (grads != nullptr) {
      Tensor t(in[0].shape);
      t.data[0] = 2.0 * in[0].data[0];
      *grads = {t};
    }
    return in[0].data[0] * in[0].data[0];
  };
  auto report = grad_check(square, {Tensor::scalar(3.0)});
  CHECK(report.max_rel_error < 1e-6);
  CHECK(report.analytic == doctest::Approx(6.0));

  // constant f: zero gradient everywhere
  ScalarFn constant = [](const std::vector<Tensor>& in, std::vector<Tensor>* grads) {
    if (grads != nullptr) *grads = {Tensor(in[0].shape)};
    return 42.0;
  };
  CHECK(grad_check(constant, {Tensor::from_vec({1.0, -2.0, 0.5})}).max_rel_error == 0.0);

  // a wrong analytic gradient is caught
  ScalarFn wrong = [](const std::vector<Tensor>& in, std::vector<Tensor>* grads) {
    if (grads != nullptr) {
      Tensor t(in[0].shape);
      t.data[0] = 1.0;
      *grads = {t};
    }
    return in[0].data[0] * in[0].data[0];
  };
  CHECK(grad_check(wrong, {Tensor::scalar(3.0)}).max_rel_error > 0.5);
}

TEST_CASE("shape mismatches and invalid values throw with the op name") {
  Graph g;
  Var a = g.input(Tensor::zeros({2, 3}));
  Var b = g.input(Tensor::zeros({4}));
  CHECK_THROWS_WITH_AS(g.matmul(a, b), doctest::Contains("matmul"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(g.add(a, b), doctest::Contains("add"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(g.weighted_sum(b, a), doctest::Contains("weighted_sum"),
                       std::invalid_argument);
  CHECK_THROWS_AS(g.pick(b, 9), std::invalid_argument);
  CHECK_THROWS_AS(g.embed_lookup(a, {5}), std::invalid_argument);
  // log(0) with no floor is -inf: rejected at the op boundary
  CHECK_THROWS_AS(g.log(g.input(Tensor::scalar(0.0))), std::domain_error);
}

TEST_CASE("identical seeds give bitwise-identical graph results") {
  auto run = [] {
    Rng rng(99);
    Graph g;
    Var x = g.input(uniform_tensor({4, 4}, -1.0, 1.0, rng));
    Var y = g.input(uniform_tensor({4}, -1.0, 1.0, rng));
    Var loss = g.sum(g.softmax(g.matmul(g.tanh(x), y)));
    g.backward(loss);
    return std::make_pair(g.value(loss).data[0], g.grad(x).data);
  };
  auto [l1, g1] = run();
  auto [l2, g2] = run();
  CHECK(l1 == l2);
  CHECK(g1 == g2);
}

TEST_CASE("rng is platform-stable splitmix64") {
  Rng rng(0);
  // first draws of splitmix64 with seed 0
  CHECK(rng.next_u64() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ULL);
}
