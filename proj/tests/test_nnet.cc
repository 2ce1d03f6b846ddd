// tests/test_nnet.cc

#include <cmath>
#include <filesystem>
#include <fstream>

#include "base/rng.h"
#include "doctest.h"
#include "nnet/checkpoint.h"
#include "nnet/grad_check.h"
#include "nnet/network.h"
#include "nnet/optimizer.h"

using namespace tase;
using nnet::LayerSpec;
using nnet::Network;
using nnet::Padding;
using nnet::Tensor;

namespace {

template <typename Real>
Tensor<Real> RandomTensor(int rows, int cols, uint64_t seed, double amp = 1.0) {
  Tensor<Real> t(rows, cols);
  Rng rng = MakeRng(seed);
  for (Real &v : t.v) v = static_cast<Real>(UniformReal(rng, -amp, amp));
  return t;
}

// Scalar objective: dot product with a fixed random direction.
template <typename Real>
nnet::LossFn<Real> DotLoss(uint64_t seed) {
  return [seed](const Tensor<Real> &out) {
    Rng rng = MakeRng(seed);
    nnet::ScalarLoss<Real> loss;
    loss.output_grad = Tensor<Real>(out.rows, out.cols);
    for (size_t i = 0; i < out.size(); ++i) {
      const Real w = static_cast<Real>(UniformReal(rng, -1.0, 1.0));
      loss.value += static_cast<double>(w) * out.v[i];
      loss.output_grad.v[i] = w;
    }
    return loss;
  };
}

// Curved objective so second-order terms are exercised too.
template <typename Real>
nnet::LossFn<Real> SquareLoss() {
  return [](const Tensor<Real> &out) {
    nnet::ScalarLoss<Real> loss;
    loss.output_grad = Tensor<Real>(out.rows, out.cols);
    for (size_t i = 0; i < out.size(); ++i) {
      loss.value += 0.5 * static_cast<double>(out.v[i]) * out.v[i];
      loss.output_grad.v[i] = out.v[i];
    }
    return loss;
  };
}

}  // namespace

TEST_CASE("relu forward") {
  Network<double> net({LayerSpec::Relu()}, 1);
  Tensor<double> x(1, 3);
  x.v = {-1.0, 0.0, 2.0};
  Tensor<double> y = net.Forward(x);
  CHECK(y.v[0] == 0.0);
  CHECK(y.v[1] == 0.0);
  CHECK(y.v[2] == 2.0);
}

TEST_CASE("conv1d with an identity kernel reproduces the input") {
  Network<double> net({LayerSpec::Conv1d(1, 1, 1)}, 2);
  net.mutable_layers()[0].weight.value.v[0] = 1.0;
  net.mutable_layers()[0].bias.value.v[0] = 0.0;
  Tensor<double> x = RandomTensor<double>(1, 40, 3);
  Tensor<double> y = net.Forward(x);
  REQUIRE(y.cols == 40);
  for (size_t i = 0; i < x.size(); ++i) CHECK(y.v[i] == doctest::Approx(x.v[i]));
}

TEST_CASE("dilated conv1d framing under valid padding") {
  Network<double> net({LayerSpec::Conv1d(2, 3, 3, /*dilation=*/2)}, 4);
  Tensor<double> x = RandomTensor<double>(2, 50, 5);
  Tensor<double> y = net.Forward(x);
  CHECK(y.rows == 3);
  CHECK(y.cols == 50 - 2 * 2);  // span 5 under valid padding
}

TEST_CASE("replicate padding preserves length") {
  Network<double> net(
      {LayerSpec::Conv1d(2, 2, 3, 4, 1, Padding::kReplicate)}, 6);
  Tensor<double> x = RandomTensor<double>(2, 37, 7);
  CHECK(net.Forward(x).cols == 37);
}

TEST_CASE("linear layer backward equals the closed form dL/dW = g x^T") {
  Network<double> net({LayerSpec::PointwiseLinear(3, 2)}, 8);
  Tensor<double> x = RandomTensor<double>(3, 1, 9);
  nnet::Trace<double> trace;
  net.Forward(x, &trace);
  Tensor<double> g(2, 1);
  g.v = {0.7, -1.3};
  net.Backward(trace, g);
  const auto &layer = net.layers()[0];
  for (int o = 0; o < 2; ++o)
    for (int i = 0; i < 3; ++i)
      CHECK(layer.weight.grad.at(o, i) ==
            doctest::Approx(g.v[o] * x.v[i]).epsilon(1e-12));
  CHECK(layer.bias.grad.v[0] == doctest::Approx(0.7));
  CHECK(layer.bias.grad.v[1] == doctest::Approx(-1.3));
}

TEST_CASE("zero upstream gradient yields zero parameter gradients") {
  Network<double> net({LayerSpec::Conv1d(2, 4, 3), LayerSpec::Relu(),
                       LayerSpec::PointwiseLinear(4, 2)},
                      10);
  Tensor<double> x = RandomTensor<double>(2, 20, 11);
  nnet::Trace<double> trace;
  Tensor<double> out = net.Forward(x, &trace);
  Tensor<double> zero(out.rows, out.cols);
  net.Backward(trace, zero);
  for (const auto *p : std::as_const(net).Parameters())
    for (double v : p->grad.v) CHECK(v == 0.0);
}

TEST_CASE("every layer kind passes the gradient check in isolation") {
  Rng rng = MakeRng(1000);
  struct Case {
    const char *name;
    std::vector<LayerSpec> specs;
    int in_rows, in_cols;
  };
  const std::vector<Case> cases = {
      {"conv1d", {LayerSpec::Conv1d(3, 4, 3, 2)}, 3, 24},
      {"conv1d_strided", {LayerSpec::Conv1d(2, 3, 8, 1, 4)}, 2, 40},
      {"conv1d_replicate",
       {LayerSpec::Conv1d(3, 3, 3, 2, 1, Padding::kReplicate)},
       3,
       20},
      {"pointwise_linear", {LayerSpec::PointwiseLinear(4, 3)}, 4, 10},
      {"prelu", {LayerSpec::Prelu(3)}, 3, 12},
      {"layernorm", {LayerSpec::LayerNorm(5)}, 5, 9},
      {"mean_pool_time", {LayerSpec::PointwiseLinear(3, 3), LayerSpec::MeanPoolTime()}, 3, 11},
      {"stats_pool_time", {LayerSpec::PointwiseLinear(3, 3), LayerSpec::StatsPoolTime()}, 3, 13},
      {"l2_normalize", {LayerSpec::PointwiseLinear(4, 4), LayerSpec::L2Normalize()}, 4, 1},
      {"sigmoid_mask", {LayerSpec::PointwiseLinear(3, 3), LayerSpec::SigmoidMask()}, 3, 7},
      {"transposed_conv1d", {LayerSpec::TransposedConv1d(3, 2, 8, 4)}, 3, 9},
  };
  for (const Case &c : cases) {
    CAPTURE(std::string(c.name));
    Network<double> net(c.specs, 77);
    Tensor<double> x = RandomTensor<double>(c.in_rows, c.in_cols, 1234);
    // The square objective is constant on the l2-normalize output sphere;
    // use a linear functional there so gradients are nontrivial.
    const bool on_sphere = std::string(c.name) == "l2_normalize";
    nnet::GradCheckResult r = nnet::GradCheck<double>(
        &net, x, on_sphere ? DotLoss<double>(9) : SquareLoss<double>(), 1e-5,
        rng);
    CHECK(r.max_rel_err <= 1e-4);
    CHECK(r.params_checked > 0);
  }
}

TEST_CASE("relu network gradient check (kink-free at random inputs)") {
  Rng rng = MakeRng(2000);
  Network<double> net({LayerSpec::Conv1d(2, 6, 3), LayerSpec::Relu(),
                       LayerSpec::PointwiseLinear(6, 4)},
                      21);
  Tensor<double> x = RandomTensor<double>(2, 18, 22);
  nnet::GradCheckResult r =
      nnet::GradCheck<double>(&net, x, DotLoss<double>(5), 1e-5, rng);
  CHECK(r.max_rel_err <= 1e-4);
}

TEST_CASE("composed embedder-style stack passes the gradient check") {
  Rng rng = MakeRng(3000);
  Network<double> net(
      {LayerSpec::Conv1d(6, 8, 5, 1), LayerSpec::Relu(),
       LayerSpec::LayerNorm(8), LayerSpec::Conv1d(8, 8, 3, 2),
       LayerSpec::Relu(), LayerSpec::StatsPoolTime(),
       LayerSpec::PointwiseLinear(16, 8), LayerSpec::L2Normalize()},
      31);
  Tensor<double> x = RandomTensor<double>(6, 40, 32);
  nnet::GradCheckResult r =
      nnet::GradCheck<double>(&net, x, DotLoss<double>(6), 1e-5, rng, 400);
  CHECK(r.max_rel_err <= 1e-4);
}

TEST_CASE("composed enhancer-style stack passes the gradient check") {
  Rng rng = MakeRng(4000);
  Network<double> net(
      {LayerSpec::Conv1d(1, 8, 16, 1, 8), LayerSpec::PointwiseLinear(8, 6),
       LayerSpec::Prelu(6), LayerSpec::LayerNorm(6),
       LayerSpec::Conv1d(6, 6, 3, 2, 1, Padding::kReplicate),
       LayerSpec::Prelu(6), LayerSpec::PointwiseLinear(6, 8),
       LayerSpec::SigmoidMask(), LayerSpec::TransposedConv1d(8, 1, 16, 8)},
      41);
  Tensor<double> x = RandomTensor<double>(1, 128, 42, 0.5);
  nnet::GradCheckResult r =
      nnet::GradCheck<double>(&net, x, DotLoss<double>(7), 1e-5, rng, 400);
  CHECK(r.max_rel_err <= 1e-4);
}

TEST_CASE("grad check harness flags a corrupted gradient") {
  Rng rng = MakeRng(5000);
  Network<double> net({LayerSpec::PointwiseLinear(4, 3)}, 51);
  Tensor<double> x = RandomTensor<double>(4, 5, 52);
  // Sign-flipped upstream gradient: analytic and numeric must disagree.
  nnet::LossFn<double> corrupted = [](const Tensor<double> &out) {
    nnet::ScalarLoss<double> loss;
    loss.output_grad = Tensor<double>(out.rows, out.cols);
    for (size_t i = 0; i < out.size(); ++i) {
      loss.value += 0.5 * out.v[i] * out.v[i];
      loss.output_grad.v[i] = -out.v[i];  // sign flip
    }
    return loss;
  };
  nnet::GradCheckResult r = nnet::GradCheck<double>(&net, x, corrupted, 1e-5, rng);
  CHECK(r.max_rel_err >= 1e-1);
}

TEST_CASE("grad check warns about overly coarse steps") {
  Rng rng = MakeRng(6000);
  Network<double> net({LayerSpec::PointwiseLinear(3, 3)}, 61);
  Tensor<double> x = RandomTensor<double>(3, 4, 62);
  nnet::GradCheckResult r =
      nnet::GradCheck<double>(&net, x, SquareLoss<double>(), 1e-1, rng);
  CHECK(r.step_warning);
  nnet::GradCheckResult fine =
      nnet::GradCheck<double>(&net, x, SquareLoss<double>(), 1e-5, rng);
  CHECK_FALSE(fine.step_warning);
}

TEST_CASE("sgd step arithmetic and small-lr bound") {
  nnet::Parameter<float> p;
  p.value = Tensor<float>(1, 1, 1.0f);
  p.EnsureGradShape();
  p.grad.v[0] = 1.0f;
  nnet::Optimizer<float> opt(nnet::OptimizerOptions::Sgd(0.1));
  opt.Step({&p});
  CHECK(p.value.v[0] == doctest::Approx(0.9f));
  CHECK(p.grad.v[0] == 0.0f);  // gradients cleared

  // Fine-tune-scale learning rate: per-element change bounded by lr * |g|max.
  nnet::Parameter<float> q;
  q.value = RandomTensor<float>(4, 4, 63);
  q.EnsureGradShape();
  Rng rng = MakeRng(64);
  float gmax = 0.0f;
  for (float &g : q.grad.v) {
    g = static_cast<float>(UniformReal(rng, -3.0, 3.0));
    gmax = std::max(gmax, std::abs(g));
  }
  Tensor<float> before = q.value;
  nnet::Optimizer<float> fine(nnet::OptimizerOptions::Sgd(1e-6));
  fine.Step({&q});
  for (size_t i = 0; i < q.value.size(); ++i)
    CHECK(std::abs(q.value.v[i] - before.v[i]) <= 1e-6f * gmax + 1e-12f);
}

TEST_CASE("adam first step moves toward a 1-D quadratic optimum") {
  // f(p) = 0.5 (p - 3)^2, gradient p - 3.
  nnet::Parameter<double> p;
  p.value = Tensor<double>(1, 1, 0.0);
  p.EnsureGradShape();
  nnet::Optimizer<double> opt(nnet::OptimizerOptions::Adam(0.1));
  const double target = 3.0;
  double prev_dist = std::abs(p.value.v[0] - target);
  for (int step = 0; step < 50; ++step) {
    p.grad.v[0] = p.value.v[0] - target;
    opt.Step({&p});
  }
  CHECK(std::abs(p.value.v[0] - target) < prev_dist);
}

TEST_CASE("l2-normalize layer: unit output, zero maps to zero") {
  Network<double> net({LayerSpec::L2Normalize()}, 71);
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    Tensor<double> x = RandomTensor<double>(8, 1, seed, 2.0);
    Tensor<double> y = net.Forward(x);
    double norm = 0.0;
    for (double v : y.v) norm += v * v;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-6);
  }
  Tensor<double> zero(8, 1);
  nnet::Trace<double> trace;
  Tensor<double> y = net.Forward(zero, &trace);
  for (double v : y.v) CHECK(v == 0.0);
  Tensor<double> g(8, 1, 1.0);
  Tensor<double> gx = net.Backward(trace, g);
  for (double v : gx.v) CHECK(v == 0.0);
}

TEST_CASE("stats pooling doubles the channel count") {
  Network<double> net({LayerSpec::StatsPoolTime()}, 81);
  Tensor<double> x = RandomTensor<double>(6, 25, 82);
  Tensor<double> y = net.Forward(x);
  CHECK(y.rows == 12);
  CHECK(y.cols == 1);
}

TEST_CASE("forward is deterministic") {
  Network<float> net({LayerSpec::Conv1d(3, 5, 3), LayerSpec::Relu()}, 91);
  Tensor<float> x = RandomTensor<float>(3, 30, 92);
  Tensor<float> a = net.Forward(x), b = net.Forward(x);
  CHECK(a.v == b.v);
}

TEST_CASE("stale traces are rejected after a parameter update") {
  Network<double> net({LayerSpec::PointwiseLinear(3, 3)}, 93);
  Tensor<double> x = RandomTensor<double>(3, 4, 94);
  nnet::Trace<double> trace;
  Tensor<double> out = net.Forward(x, &trace);
  net.BumpVersion();  // parameters changed
  Tensor<double> g(out.rows, out.cols, 1.0);
  CHECK_THROWS_AS(net.Backward(trace, g), std::invalid_argument);
}

TEST_CASE("shape errors name the offending layer") {
  Network<double> net({LayerSpec::Conv1d(4, 2, 3)}, 95, "embedder");
  Tensor<double> x = RandomTensor<double>(3, 10, 96);
  try {
    net.Forward(x);
    FAIL("expected a shape error");
  } catch (const std::invalid_argument &e) {
    const std::string msg = e.what();
    CHECK(msg.find("embedder") != std::string::npos);
    CHECK(msg.find("conv1d") != std::string::npos);
    CHECK(msg.find("layer 0") != std::string::npos);
  }
}

TEST_CASE("checkpoint: bit-exact round trip") {
  namespace fs = std::filesystem;
  const std::string path =
      (fs::temp_directory_path() / "tase_ckpt_test.bin").string();
  Network<float> net({LayerSpec::Conv1d(3, 4, 3), LayerSpec::LayerNorm(4),
                      LayerSpec::PointwiseLinear(4, 2)},
                     101, "net");
  nnet::SaveNetwork(path, net);

  std::ifstream in(path, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  CHECK(std::string(magic, 8) == "TASECKPT");
  in.close();

  Network<float> other({LayerSpec::Conv1d(3, 4, 3), LayerSpec::LayerNorm(4),
                        LayerSpec::PointwiseLinear(4, 2)},
                       999, "net");
  nnet::LoadNetwork(path, &other);
  Tensor<float> x = RandomTensor<float>(3, 12, 103);
  CHECK(net.Forward(x).v == other.Forward(x).v);

  // Write -> read -> write is byte-identical.
  const std::string path2 = path + "2";
  nnet::WriteCheckpoint(path2, nnet::ReadCheckpoint(path));
  std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
  std::string b1((std::istreambuf_iterator<char>(f1)), {});
  std::string b2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(b1 == b2);
  fs::remove(path);
  fs::remove(path2);
}

TEST_CASE("checkpoint: shape or name mismatches are rejected") {
  namespace fs = std::filesystem;
  const std::string path =
      (fs::temp_directory_path() / "tase_ckpt_bad.bin").string();
  Network<float> net({LayerSpec::PointwiseLinear(4, 2)}, 111, "a");
  nnet::SaveNetwork(path, net);
  Network<float> renamed({LayerSpec::PointwiseLinear(4, 2)}, 112, "b");
  CHECK_THROWS_AS(nnet::LoadNetwork(path, &renamed), std::invalid_argument);
  Network<float> reshaped({LayerSpec::PointwiseLinear(4, 3)}, 113, "a");
  CHECK_THROWS_AS(nnet::LoadNetwork(path, &reshaped), std::invalid_argument);
  fs::remove(path);
}
