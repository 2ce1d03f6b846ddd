// tests/test_losses.cc

#include <cmath>
#include <numbers>
#include <numeric>

#include "base/rng.h"
#include "doctest.h"
#include "losses/si_snr.h"
#include "losses/sv_losses.h"
#include "testing/oracles.h"

using namespace tase;
using loss::LossOutput;
using loss::SiSnrMode;
using loss::SiSnrOptions;

namespace {

std::vector<double> SineVec(size_t n, int periods, double amp) {
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i)
    v[i] = amp * std::sin(2.0 * std::numbers::pi * periods * i / double(n));
  return v;
}

std::vector<double> CosineVec(size_t n, int periods, double amp) {
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i)
    v[i] = amp * std::cos(2.0 * std::numbers::pi * periods * i / double(n));
  return v;
}

std::vector<double> RandomVec(size_t n, uint64_t seed, double amp = 0.5) {
  Rng rng = MakeRng(seed);
  std::vector<double> v(n);
  for (double &x : v) x = UniformReal(rng, -amp, amp);
  return v;
}

std::vector<double> UnitVec(size_t n, uint64_t seed) {
  std::vector<double> v = RandomVec(n, seed, 1.0);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double &x : v) x /= norm;
  return v;
}

loss::Matrix UnitRows(size_t rows, size_t cols, uint64_t seed) {
  loss::Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    std::vector<double> v = UnitVec(cols, seed + r);
    for (size_t c = 0; c < cols; ++c) m.at(r, c) = v[c];
  }
  return m;
}

}  // namespace

TEST_CASE("si_snr standard: clamp cases") {
  std::vector<double> t = SineVec(2048, 5, 0.7);
  LossOutput same = loss::SiSnr(t, t);
  CHECK(same.value == doctest::Approx(60.0));

  std::vector<double> orth = CosineVec(2048, 9, 0.7);  // exactly orthogonal
  LossOutput o = loss::SiSnr(orth, t);
  CHECK(o.value == doctest::Approx(-60.0));
}

TEST_CASE("si_snr standard: 20 dB closed-form case") {
  const size_t n = 4096;
  std::vector<double> t = SineVec(n, 7, 1.0);
  std::vector<double> noise = CosineVec(n, 13, 1.0);  // same power, orthogonal
  std::vector<double> e(n);
  for (size_t i = 0; i < n; ++i) e[i] = t[i] + 0.1 * noise[i];
  LossOutput out = loss::SiSnr(e, t);
  CHECK(std::abs(out.value - 20.0) < 1e-6);
}

TEST_CASE("si_snr standard: scale invariance in the estimate") {
  std::vector<double> t = SineVec(3000, 4, 0.5);
  std::vector<double> e = RandomVec(3000, 2);
  for (size_t i = 0; i < e.size(); ++i) e[i] = 0.7 * t[i] + 0.1 * e[i];
  const double base = loss::SiSnr(e, t).value;
  for (double c : {0.1, 3.0, 10.0}) {
    std::vector<double> scaled = e;
    for (double &x : scaled) x *= c;
    CHECK(std::abs(loss::SiSnr(scaled, t).value - base) < 1e-6);
  }
}

TEST_CASE("si_snr literal: not scale-invariant, perfect match clamps high") {
  std::vector<double> t = SineVec(2048, 5, 0.7);
  SiSnrOptions literal;
  literal.mode = SiSnrMode::kLiteral;
  CHECK(loss::SiSnr(t, t, literal).value == doctest::Approx(60.0));

  std::vector<double> e = RandomVec(2048, 3);
  for (size_t i = 0; i < e.size(); ++i) e[i] = t[i] + 0.3 * e[i];
  const double v1 = loss::SiSnr(e, t, literal).value;
  std::vector<double> e5 = e;
  for (double &x : e5) x *= 5.0;
  const double v5 = loss::SiSnr(e5, t, literal).value;
  CHECK(std::abs(v1 - v5) > 0.1);
}

TEST_CASE("si_snr: loss decreases monotonically toward the target") {
  const size_t n = 2048;
  std::vector<double> t = SineVec(n, 6, 0.8);
  std::vector<double> orth = CosineVec(n, 11, 0.8);
  double prev_loss = 1e9;
  for (int k = 0; k <= 10; ++k) {
    const double a = k / 10.0;
    std::vector<double> e(n);
    // Interpolate from pure orthogonal noise toward the target; keep a tiny
    // noise floor at the endpoint so the value stays off the clamp.
    for (size_t i = 0; i < n; ++i)
      e[i] = a * t[i] + (1.0 - a + 1e-4) * orth[i];
    const double l = -loss::SiSnr(e, t).value;
    CHECK(l < prev_loss);
    prev_loss = l;
  }
}

TEST_CASE("si_snr: rejects zero-power targets and length mismatches") {
  std::vector<double> e = RandomVec(128, 4);
  std::vector<double> zeros(128, 0.25);  // constant = zero power once centered
  CHECK_THROWS_AS(loss::SiSnr(e, zeros), std::invalid_argument);
  std::vector<double> shorter = RandomVec(64, 5);
  CHECK_THROWS_AS(loss::SiSnr(e, shorter), std::invalid_argument);
}

TEST_CASE("si_snr: analytic gradients match finite differences (both modes)") {
  const size_t n = 96;
  std::vector<double> t = RandomVec(n, 10, 0.8);
  std::vector<double> e(n);
  for (size_t i = 0; i < n; ++i)
    e[i] = 0.8 * t[i] + 0.3 * RandomVec(n, 11)[i];

  for (SiSnrMode mode : {SiSnrMode::kStandard, SiSnrMode::kLiteral}) {
    SiSnrOptions opts;
    opts.mode = mode;
    LossOutput out = loss::SiSnr(e, t, opts);
    REQUIRE(std::abs(out.value) < 59.0);  // off the clamp

    auto fe = [&](const std::vector<double> &x) {
      return loss::SiSnr(x, t, opts).value;
    };
    auto ft = [&](const std::vector<double> &x) {
      return loss::SiSnr(e, x, opts).value;
    };
    std::vector<double> fd_e = testing::FiniteDifference(fe, e, 1e-5);
    std::vector<double> fd_t = testing::FiniteDifference(ft, t, 1e-5);
    CHECK(testing::MaxRelErr(out.gradients.at("estimate").v, fd_e) <= 1e-4);
    CHECK(testing::MaxRelErr(out.gradients.at("target").v, fd_t) <= 1e-4);
  }
}

TEST_CASE("si_snr_with_null: target branch equals plain si_snr") {
  dsp::Waveform est, ref;
  est.samples = {0.1f, -0.2f, 0.3f, 0.05f, -0.4f, 0.2f, 0.0f, -0.1f};
  ref.samples = {0.12f, -0.18f, 0.28f, 0.02f, -0.35f, 0.22f, 0.01f, -0.09f};
  Rng rng = MakeRng(1);
  LossOutput with_null = loss::SiSnrWithNull(
      est, mix::TripletLabel::kTarget, &ref, rng);
  LossOutput direct = loss::SiSnr(est, ref);
  CHECK(with_null.value == direct.value);
  CHECK(with_null.gradients.at("estimate").v == direct.gradients.at("estimate").v);
}

TEST_CASE("si_snr_with_null: matched near-silent estimate scores high") {
  const size_t n = 4000;
  // Reproduce the draw the loss will make, then hand it in as the estimate.
  Rng preview = MakeRng(99, 1);
  dsp::Waveform matched = mix::NullReference(n, preview);
  Rng rng = MakeRng(99, 1);
  LossOutput out = loss::SiSnrWithNull(matched, mix::TripletLabel::kNontarget,
                                       nullptr, rng);
  CHECK(out.value >= 0.0);
}

TEST_CASE("si_snr_with_null: loud speech scores strongly negative") {
  const size_t n = 8000;
  dsp::Waveform loud;
  loud.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    loud.samples[i] = static_cast<float>(
        0.5 * std::sin(2.0 * std::numbers::pi * 220.0 * i / 16000.0));
  Rng rng = MakeRng(7);
  LossOutput out =
      loss::SiSnrWithNull(loud, mix::TripletLabel::kNontarget, nullptr, rng);
  CHECK(out.value < -10.0);
}

TEST_CASE("si_snr_with_null: target label without a reference throws") {
  dsp::Waveform est;
  est.samples.assign(256, 0.1f);
  Rng rng = MakeRng(2);
  CHECK_THROWS_AS(
      loss::SiSnrWithNull(est, mix::TripletLabel::kTarget, nullptr, rng),
      std::invalid_argument);
}

TEST_CASE("lmcl: closed-form two-class case") {
  // Embedding equals its class weight, orthogonal to the other class;
  // m = 0, s = 1 gives -log(e / (e + 1)).
  loss::Matrix emb(1, 4), weights(2, 4);
  emb.at(0, 0) = 1.0;
  weights.at(0, 0) = 1.0;
  weights.at(1, 1) = 1.0;
  loss::LmclOptions opts;
  opts.margin = 0.0;
  opts.scale = 1.0;
  LossOutput out = loss::Lmcl(emb, {0}, weights, opts);
  const double expected = -std::log(std::exp(1.0) / (std::exp(1.0) + 1.0));
  CHECK(out.value == doctest::Approx(expected).epsilon(1e-9));
  CHECK(out.value == doctest::Approx(0.3133).epsilon(1e-3));
}

TEST_CASE("lmcl: loss strictly increases with the margin") {
  loss::Matrix emb = UnitRows(3, 16, 100);
  loss::Matrix weights = UnitRows(4, 16, 200);
  std::vector<int> labels = {0, 2, 3};
  double prev = -1.0;
  for (double m : {0.0, 0.1, 0.2, 0.35, 0.5}) {
    loss::LmclOptions opts;
    opts.margin = m;
    const double v = loss::Lmcl(emb, labels, weights, opts).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("lmcl: gradients match finite differences") {
  const size_t n = 3, c = 4, d = 8;
  loss::Matrix emb = UnitRows(n, d, 300);
  loss::Matrix weights = UnitRows(c, d, 400);
  std::vector<int> labels = {1, 0, 3};
  loss::LmclOptions opts;
  LossOutput out = loss::Lmcl(emb, labels, weights, opts);

  auto femb = [&](const std::vector<double> &x) {
    loss::Matrix m = emb;
    m.v = x;
    return loss::Lmcl(m, labels, weights, opts).value;
  };
  auto fw = [&](const std::vector<double> &x) {
    loss::Matrix m = weights;
    m.v = x;
    return loss::Lmcl(emb, labels, m, opts).value;
  };
  CHECK(testing::MaxRelErr(out.gradients.at("embeddings").v,
                           testing::FiniteDifference(femb, emb.v, 1e-5)) <=
        1e-4);
  CHECK(testing::MaxRelErr(out.gradients.at("class_weights").v,
                           testing::FiniteDifference(fw, weights.v, 1e-5)) <=
        1e-4);
}

TEST_CASE("lmcl: invariant under joint rotation of embeddings and weights") {
  const size_t d = 8;
  loss::Matrix emb = UnitRows(3, d, 500);
  loss::Matrix weights = UnitRows(4, d, 600);
  std::vector<int> labels = {0, 1, 2};
  const double base = loss::Lmcl(emb, labels, weights).value;

  // Givens rotation applied to every row of both matrices.
  const double theta = 0.83;
  auto rotate = [&](loss::Matrix m) {
    for (size_t r = 0; r < m.rows; ++r) {
      const double a = m.at(r, 2), b = m.at(r, 5);
      m.at(r, 2) = std::cos(theta) * a - std::sin(theta) * b;
      m.at(r, 5) = std::sin(theta) * a + std::cos(theta) * b;
    }
    return m;
  };
  const double rotated =
      loss::Lmcl(rotate(emb), labels, rotate(weights)).value;
  CHECK(std::abs(rotated - base) < 1e-8);
}

TEST_CASE("lmcl: rejects out-of-range labels") {
  loss::Matrix emb = UnitRows(2, 8, 700);
  loss::Matrix weights = UnitRows(3, 8, 800);
  CHECK_THROWS_AS(loss::Lmcl(emb, {0, 3}, weights), std::invalid_argument);
}

TEST_CASE("triplet loss: hinge arithmetic") {
  std::vector<double> a = UnitVec(8, 1), n = UnitVec(8, 2);
  // a == p with the negative far away: loss 0 when margin <= d(a,n).
  LossOutput zero = loss::TripletLoss(a, a, n, 0.2);
  if (1.0 - std::inner_product(a.begin(), a.end(), n.begin(), 0.0) >= 0.2)
    CHECK(zero.value == 0.0);

  // a == n and a orthogonal to p: 0.2 + 1 - 0 = 1.2.
  std::vector<double> p(8, 0.0);
  p[3] = 1.0;
  std::vector<double> anchor(8, 0.0);
  anchor[0] = 1.0;
  LossOutput worst = loss::TripletLoss(anchor, p, anchor, 0.2);
  CHECK(worst.value == doctest::Approx(1.2));
}

TEST_CASE("triplet loss: gradients match finite differences off the hinge") {
  std::vector<double> a = UnitVec(12, 3), p = UnitVec(12, 4), n = UnitVec(12, 5);
  const double margin = 0.5;
  LossOutput out = loss::TripletLoss(a, p, n, margin);
  REQUIRE(out.value > 1e-3);  // active hinge, away from the kink

  auto fa = [&](const std::vector<double> &x) {
    return loss::TripletLoss(x, p, n, margin).value;
  };
  auto fp = [&](const std::vector<double> &x) {
    return loss::TripletLoss(a, x, n, margin).value;
  };
  auto fn = [&](const std::vector<double> &x) {
    return loss::TripletLoss(a, p, x, margin).value;
  };
  CHECK(testing::MaxRelErr(out.gradients.at("anchor").v,
                           testing::FiniteDifference(fa, a, 1e-5)) <= 1e-4);
  CHECK(testing::MaxRelErr(out.gradients.at("positive").v,
                           testing::FiniteDifference(fp, p, 1e-5)) <= 1e-4);
  CHECK(testing::MaxRelErr(out.gradients.at("negative").v,
                           testing::FiniteDifference(fn, n, 1e-5)) <= 1e-4);
}

TEST_CASE("sv_loss: weighted combination and exact gradient linearity") {
  LossOutput triplet, lmcl, l2;
  triplet.value = 1.0;
  lmcl.value = 1.0;
  l2.value = 1.0;
  triplet.gradients["embeddings"] = loss::Matrix(1, 3, 1.0);
  lmcl.gradients["embeddings"] = loss::Matrix(1, 3, 2.0);
  lmcl.gradients["class_weights"] = loss::Matrix(2, 3, 1.0);
  l2.gradients["net.weights"] = loss::Matrix(1, 3, 4.0);

  LossOutput sv = loss::SvLoss(triplet, lmcl, l2);
  CHECK(sv.value == doctest::Approx(1.201));
  for (double g : sv.gradients.at("embeddings").v)
    CHECK(g == doctest::Approx(1.0 + 0.2 * 2.0));
  for (double g : sv.gradients.at("class_weights").v)
    CHECK(g == doctest::Approx(0.2));
  for (double g : sv.gradients.at("net.weights").v)
    CHECK(g == doctest::Approx(0.004));

  loss::SvLossWeights off;
  off.omega1 = 0.0;
  off.omega2 = 0.0;
  LossOutput only_triplet = loss::SvLoss(triplet, lmcl, l2, off);
  CHECK(only_triplet.value == 1.0);
  for (double g : only_triplet.gradients.at("class_weights").v) CHECK(g == 0.0);
}

TEST_CASE("tase_loss: equal-weight combination") {
  LossOutput enh, sv;
  enh.value = 2.0;
  sv.value = 3.0;
  enh.gradients["estimate"] = loss::Matrix(1, 2, 0.5);
  sv.gradients["embeddings"] = loss::Matrix(1, 2, -1.0);
  LossOutput total = loss::TaseLoss(enh, sv);
  CHECK(total.value == doctest::Approx(5.0));
  CHECK(total.gradients.at("estimate").v[0] == doctest::Approx(0.5));

  LossOutput enh_only = loss::TaseLoss(enh, sv, 1.0, 0.0);
  CHECK(enh_only.value == doctest::Approx(2.0));
  for (double g : enh_only.gradients.at("embeddings").v) CHECK(g == 0.0);
}

TEST_CASE("ts_mse: identities, unit case, brute-force oracle") {
  loss::Matrix same = UnitRows(4, 16, 900);
  CHECK(loss::TsMse(same, same).value == 0.0);

  loss::Matrix one(1, 1), zero(1, 1);
  one.at(0, 0) = 1.0;
  CHECK(loss::TsMse(one, zero).value == doctest::Approx(1.0));

  loss::Matrix t(4, 128), s(4, 128);
  Rng rng = MakeRng(1234);
  for (double &x : t.v) x = UniformReal(rng, -1.0, 1.0);
  for (double &x : s.v) x = UniformReal(rng, -1.0, 1.0);
  LossOutput out = loss::TsMse(t, s);

  // Independent double-loop summation with a different accumulation order.
  long double acc = 0.0L;
  for (size_t j = 0; j < t.cols; ++j)
    for (size_t i = 0; i < t.rows; ++i) {
      const long double d = t.at(i, j) - s.at(i, j);
      acc += d * d;
    }
  acc /= static_cast<long double>(t.rows * t.cols);
  CHECK(std::abs(out.value - static_cast<double>(acc)) < 1e-10);

  // Printed gradient formula.
  for (size_t i = 0; i < t.size(); ++i)
    CHECK(out.gradients.at("student").v[i] ==
          doctest::Approx(-2.0 * (t.v[i] - s.v[i]) / (4.0 * 128.0)));

  loss::Matrix bad(3, 128);
  CHECK_THROWS_AS(loss::TsMse(t, bad), std::invalid_argument);
}

TEST_CASE("ts_mse: gradients match finite differences") {
  loss::Matrix t(2, 6), s(2, 6);
  Rng rng = MakeRng(555);
  for (double &x : t.v) x = UniformReal(rng, -1.0, 1.0);
  for (double &x : s.v) x = UniformReal(rng, -1.0, 1.0);
  LossOutput out = loss::TsMse(t, s);
  auto fs = [&](const std::vector<double> &x) {
    loss::Matrix m = s;
    m.v = x;
    return loss::TsMse(t, m).value;
  };
  CHECK(testing::MaxRelErr(out.gradients.at("student").v,
                           testing::FiniteDifference(fs, s.v, 1e-5)) <= 1e-4);
}

TEST_CASE("student loss: unweighted sum with exact gradient additivity") {
  LossOutput sv, mse;
  sv.value = 1.201;
  mse.value = 0.5;
  sv.gradients["embeddings"] = loss::Matrix(1, 4, 2.0);
  mse.gradients["embeddings"] = loss::Matrix(1, 4, -0.5);
  LossOutput total = loss::StudentLoss(sv, mse);
  CHECK(total.value == doctest::Approx(1.701));
  for (double g : total.gradients.at("embeddings").v)
    CHECK(g == doctest::Approx(1.5));

  LossOutput zero_mse;
  zero_mse.value = 0.0;
  CHECK(loss::StudentLoss(sv, zero_mse).value == doctest::Approx(sv.value));
}
