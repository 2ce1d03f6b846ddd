// losses/sv_losses.h

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

#ifndef TASE_LOSSES_SV_LOSSES_H_
#define TASE_LOSSES_SV_LOSSES_H_

#include <vector>

#include "losses/loss_output.h"

namespace tase {
namespace loss {

// Large margin cosine loss over a batch of unit-norm embeddings against
// unit-norm class weight rows. Gradients land under "embeddings" and
// "class_weights". Inputs are treated as free variables; renormalization
// belongs to the layers that produced them.
struct LmclOptions {
  double margin = 0.2;
  double scale = 30.0;
};
LossOutput Lmcl(const Matrix &embeddings, const std::vector<int> &labels,
                const Matrix &class_weights, const LmclOptions &opts = {});

// Hinge on cosine distance d(x,y) = 1 - <x,y> over unit vectors:
// max(0, margin + d(a,p) - d(a,n)). Gradients under "anchor", "positive",
// "negative"; zero subgradient at the hinge.
LossOutput TripletLoss(const std::vector<double> &anchor,
                       const std::vector<double> &positive,
                       const std::vector<double> &negative, double margin);

// Batch triplet term with in-batch mining: every sample with at least one
// positive and one negative anchors a triplet; the positive is the hardest
// one, the negative is semi-hard (closest negative farther than the
// positive) with a hardest-negative fallback. Value is the mean over
// anchors; gradient lands under "embeddings" (N x D). A batch with no valid
// anchor yields zero loss and gradients.
LossOutput MinedTripletLoss(const Matrix &embeddings,
                            const std::vector<int> &labels, double margin);

struct SvLossWeights {
  double omega1 = 0.2;    // LMCL weight
  double omega2 = 0.001;  // L2-regularization weight
};

// L_SV = triplet + omega1 * lmcl + omega2 * l2reg; gradients combine
// linearly. The component losses must come from the same batch.
LossOutput SvLoss(const LossOutput &triplet, const LossOutput &lmcl,
                  const LossOutput &l2reg, const SvLossWeights &w = {});

// Joint objective: enhancement_loss is already loss-oriented (negated
// SI-SNR). Defaults are the equal-weight combination.
LossOutput TaseLoss(const LossOutput &enhancement_loss,
                    const LossOutput &sv_loss,
                    double enhancement_weight = 1.0, double sv_weight = 1.0);

// Distillation regression between teacher and student embedding batches:
// mean over batch and dimension of the squared difference. Gradients under
// "student" (-2(Yt-Ys)/(N*D)) and "teacher".
LossOutput TsMse(const Matrix &teacher, const Matrix &student);

// Overall student objective: L_S = L_SV + L_MSE, unweighted.
LossOutput StudentLoss(const LossOutput &sv, const LossOutput &mse);

}  // namespace loss
}  // namespace tase

#endif  // TASE_LOSSES_SV_LOSSES_H_
