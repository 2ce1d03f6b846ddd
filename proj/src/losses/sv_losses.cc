// losses/sv_losses.cc

// Copyright 2026  Tasenet Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "losses/sv_losses.h"

#include <algorithm>
#include <cmath>

#include "base/common.h"

namespace tase {
namespace loss {

namespace {

// Catches grossly unnormalized inputs; the slack leaves room for
// finite-difference probing around the unit sphere.
void CheckUnitRows(const Matrix &m, const char *what) {
  for (size_t r = 0; r < m.rows; ++r) {
    double norm_sq = 0.0;
    for (size_t c = 0; c < m.cols; ++c) norm_sq += m.at(r, c) * m.at(r, c);
    TASE_CHECK(std::abs(std::sqrt(norm_sq) - 1.0) < 1e-3, what, ": row ", r,
               " is not unit-norm (", std::sqrt(norm_sq), ")");
  }
}

double Dot(const std::vector<double> &a, const std::vector<double> &b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

LossOutput Lmcl(const Matrix &embeddings, const std::vector<int> &labels,
                const Matrix &class_weights, const LmclOptions &opts) {
  const size_t n = embeddings.rows, d = embeddings.cols, c = class_weights.rows;
  TASE_CHECK(n > 0 && labels.size() == n, "Lmcl: batch/label size mismatch");
  TASE_CHECK(class_weights.cols == d, "Lmcl: weight dimension mismatch");
  TASE_CHECK(opts.margin >= 0.0 && opts.margin < 1.0 && opts.scale > 0.0,
             "Lmcl: need 0 <= margin < 1 and scale > 0");
  for (int y : labels)
    TASE_CHECK(y >= 0 && static_cast<size_t>(y) < c,
               "Lmcl: label id ", y, " out of range [0,", c, ")");
  CheckUnitRows(embeddings, "Lmcl embeddings");
  CheckUnitRows(class_weights, "Lmcl class_weights");

  LossOutput out;
  Matrix ge(n, d, 0.0), gw(c, d, 0.0);
  std::vector<double> logits(c), probs(c);
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const int y = labels[i];
    for (size_t j = 0; j < c; ++j) {
      double cos = 0.0;
      for (size_t k = 0; k < d; ++k)
        cos += embeddings.at(i, k) * class_weights.at(j, k);
      logits[j] = opts.scale * cos;
    }
    logits[y] -= opts.scale * opts.margin;

    const double lse_max = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (size_t j = 0; j < c; ++j) sum += std::exp(logits[j] - lse_max);
    const double lse = lse_max + std::log(sum);
    total += lse - logits[y];

    for (size_t j = 0; j < c; ++j) {
      probs[j] = std::exp(logits[j] - lse);
      const double dz = probs[j] - (static_cast<int>(j) == y ? 1.0 : 0.0);
      for (size_t k = 0; k < d; ++k) {
        ge.at(i, k) += opts.scale * dz * class_weights.at(j, k);
        gw.at(j, k) += opts.scale * dz * embeddings.at(i, k);
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  out.value = total * inv_n;
  for (double &g : ge.v) g *= inv_n;
  for (double &g : gw.v) g *= inv_n;
  out.gradients.emplace("embeddings", std::move(ge));
  out.gradients.emplace("class_weights", std::move(gw));
  ValidateLossOutput(out, "Lmcl");
  return out;
}

LossOutput TripletLoss(const std::vector<double> &anchor,
                       const std::vector<double> &positive,
                       const std::vector<double> &negative, double margin) {
  TASE_CHECK(margin >= 0.0, "TripletLoss: margin must be >= 0");
  TASE_CHECK(anchor.size() == positive.size() &&
                 anchor.size() == negative.size() && !anchor.empty(),
             "TripletLoss: dimension mismatch");
  const size_t d = anchor.size();
  // d(a,p) - d(a,n) = <a,n> - <a,p> for cosine distance over unit vectors.
  const double hinge = margin + Dot(anchor, negative) - Dot(anchor, positive);

  LossOutput out;
  Matrix ga(1, d, 0.0), gp(1, d, 0.0), gn(1, d, 0.0);
  if (hinge > 0.0) {
    out.value = hinge;
    for (size_t i = 0; i < d; ++i) {
      ga.v[i] = negative[i] - positive[i];
      gp.v[i] = -anchor[i];
      gn.v[i] = anchor[i];
    }
  }
  out.gradients.emplace("anchor", std::move(ga));
  out.gradients.emplace("positive", std::move(gp));
  out.gradients.emplace("negative", std::move(gn));
  ValidateLossOutput(out, "TripletLoss");
  return out;
}

LossOutput MinedTripletLoss(const Matrix &embeddings,
                            const std::vector<int> &labels, double margin) {
  const size_t n = embeddings.rows, d = embeddings.cols;
  TASE_CHECK(labels.size() == n, "MinedTripletLoss: label count mismatch");

  // Pairwise cosine distances d(i,j) = 1 - <e_i, e_j>.
  std::vector<double> dist(n * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (size_t k = 0; k < d; ++k)
        dot += embeddings.at(i, k) * embeddings.at(j, k);
      dist[i * n + j] = dist[j * n + i] = 1.0 - dot;
    }

  LossOutput out;
  Matrix grads(n, d, 0.0);
  double total = 0.0;
  int anchors = 0;
  for (size_t a = 0; a < n; ++a) {
    // Hardest positive.
    int pos = -1;
    for (size_t j = 0; j < n; ++j) {
      if (j == a || labels[j] != labels[a]) continue;
      if (pos < 0 || dist[a * n + j] > dist[a * n + pos])
        pos = static_cast<int>(j);
    }
    if (pos < 0) continue;
    const double dp = dist[a * n + pos];

    // Semi-hard negative; hardest negative as fallback.
    int neg = -1;
    double best_semi = 0.0;
    int hardest = -1;
    for (size_t j = 0; j < n; ++j) {
      if (labels[j] == labels[a]) continue;
      const double dn = dist[a * n + j];
      if (hardest < 0 || dn < dist[a * n + hardest])
        hardest = static_cast<int>(j);
      if (dn > dp && (neg < 0 || dn < best_semi)) {
        neg = static_cast<int>(j);
        best_semi = dn;
      }
    }
    if (neg < 0) neg = hardest;
    if (neg < 0) continue;

    std::vector<double> av(embeddings.row(a), embeddings.row(a) + d);
    std::vector<double> pv(embeddings.row(pos), embeddings.row(pos) + d);
    std::vector<double> nv(embeddings.row(neg), embeddings.row(neg) + d);
    LossOutput one = TripletLoss(av, pv, nv, margin);
    total += one.value;
    ++anchors;
    for (size_t k = 0; k < d; ++k) {
      grads.at(a, k) += one.gradients.at("anchor").v[k];
      grads.at(pos, k) += one.gradients.at("positive").v[k];
      grads.at(neg, k) += one.gradients.at("negative").v[k];
    }
  }
  if (anchors > 0) {
    out.value = total / anchors;
    for (double &g : grads.v) g /= anchors;
  }
  out.gradients.emplace("embeddings", std::move(grads));
  ValidateLossOutput(out, "MinedTripletLoss");
  return out;
}

LossOutput SvLoss(const LossOutput &triplet, const LossOutput &lmcl,
                  const LossOutput &l2reg, const SvLossWeights &w) {
  TASE_CHECK(w.omega1 >= 0.0 && w.omega2 >= 0.0,
             "SvLoss: weights must be >= 0");
  return AxpyLoss(AxpyLoss(triplet, w.omega1, lmcl), w.omega2, l2reg);
}

LossOutput TaseLoss(const LossOutput &enhancement_loss,
                    const LossOutput &sv_loss, double enhancement_weight,
                    double sv_weight) {
  return AxpyLoss(ScaleLoss(enhancement_loss, enhancement_weight), sv_weight,
                  sv_loss);
}

LossOutput TsMse(const Matrix &teacher, const Matrix &student) {
  TASE_CHECK(teacher.rows == student.rows && teacher.cols == student.cols,
             "TsMse: shape mismatch (", teacher.rows, "x", teacher.cols,
             " vs ", student.rows, "x", student.cols, ")");
  TASE_CHECK(teacher.rows > 0 && teacher.cols > 0, "TsMse: empty batch");
  const double inv = 1.0 / (static_cast<double>(teacher.rows) *
                            static_cast<double>(teacher.cols));
  LossOutput out;
  Matrix gs(student.rows, student.cols, 0.0);
  Matrix gt(teacher.rows, teacher.cols, 0.0);
  double total = 0.0;
  for (size_t i = 0; i < teacher.size(); ++i) {
    const double diff = teacher.v[i] - student.v[i];
    total += diff * diff;
    gs.v[i] = -2.0 * diff * inv;
    gt.v[i] = 2.0 * diff * inv;
  }
  out.value = total * inv;
  out.gradients.emplace("student", std::move(gs));
  out.gradients.emplace("teacher", std::move(gt));
  ValidateLossOutput(out, "TsMse");
  return out;
}

LossOutput StudentLoss(const LossOutput &sv, const LossOutput &mse) {
  return AxpyLoss(sv, 1.0, mse);
}

}  // namespace loss
}  // namespace tase
