// nnet/network.h

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

#ifndef TASE_NNET_NETWORK_H_
#define TASE_NNET_NETWORK_H_

#include <cmath>
#include <string>
#include <vector>

#include "nnet/layers.h"
#include "nnet/tensor.h"

namespace tase {
namespace nnet {

constexpr double kStatsPoolEps = 1e-5;   // under the stddev square root
constexpr double kLayerNormEps = 1e-5;
constexpr double kL2NormFloor = 1e-30;   // below this the output is zero

template <typename Real>
struct Layer {
  LayerSpec spec;
  Parameter<Real> weight;
  Parameter<Real> bias;
  bool has_weight = false;
  bool has_bias = false;
};

template <typename Real>
struct LayerTrace {
  Tensor<Real> input;
  Tensor<Real> aux0, aux1;  // layer-specific saved activations
};

// Activation trace of one forward pass; sufficient for exact backprop.
// Traces are invalidated by any parameter update (version mismatch).
template <typename Real>
struct Trace {
  std::vector<LayerTrace<Real>> layers;
  Tensor<Real> output;
  uint64_t version = 0;
};

// An ordered stack of layers with explicit reverse-mode backprop. Forward is
// const and deterministic; Backward accumulates into parameter gradient
// buffers. A single instance must not be mutated concurrently; distinct
// instances are independent.
template <typename Real>
class Network {
 public:
  Network() = default;
  Network(std::vector<LayerSpec> specs, uint64_t init_seed,
          std::string name = "net");

  Tensor<Real> Forward(const Tensor<Real> &input,
                       Trace<Real> *trace = nullptr) const;

  // Returns the gradient w.r.t. the network input. Throws on a stale trace.
  Tensor<Real> Backward(const Trace<Real> &trace,
                        const Tensor<Real> &output_grad);

  std::vector<Parameter<Real> *> Parameters();
  std::vector<const Parameter<Real> *> Parameters() const;
  void ZeroGrad();

  // Parameter updates must bump the version so outstanding traces die.
  uint64_t version() const { return version_; }
  void BumpVersion() { ++version_; }

  const std::string &name() const { return name_; }
  const std::vector<Layer<Real>> &layers() const { return layers_; }
  std::vector<Layer<Real>> &mutable_layers() { return layers_; }

  // Sum of squared entries of non-normalization trainable tensors
  // (layernorm gain/bias excluded), with the gradient (2w) accumulated into
  // the parameter grads when `accumulate_grad` is set and weight != 0.
  double L2Penalty(double weight, bool accumulate_grad);

 private:
  std::string name_;
  std::vector<Layer<Real>> layers_;
  uint64_t version_ = 1;

  [[noreturn]] void LayerError(size_t index, const std::string &msg) const {
    throw std::invalid_argument(StrCat("network '", name_, "' layer ", index,
                                       " (",
                                       LayerKindName(layers_[index].spec.kind),
                                       "): ", msg));
  }

  Tensor<Real> LayerForward(size_t index, const Tensor<Real> &x,
                            LayerTrace<Real> *trace) const;
  Tensor<Real> LayerBackward(size_t index, const LayerTrace<Real> &trace,
                             const Tensor<Real> &gout);
};

// ---------------------------------------------------------------------------
// implementation

template <typename Real>
Network<Real>::Network(std::vector<LayerSpec> specs, uint64_t init_seed,
                       std::string name)
    : name_(std::move(name)) {
  layers_.reserve(specs.size());
  for (size_t i = 0; i < specs.size(); ++i) {
    const LayerSpec &spec = specs[i];
    Layer<Real> layer;
    layer.spec = spec;
    Rng rng = MakeRng(init_seed, i);
    const std::string prefix =
        StrCat(name_, ".", i, ".", LayerKindName(spec.kind));
    switch (spec.kind) {
      case LayerKind::kConv1d: {
        TASE_CHECK(spec.in_channels > 0 && spec.out_channels > 0 &&
                       spec.kernel > 0 && spec.dilation > 0 && spec.stride > 0,
                   prefix, ": sizes must be positive");
        TASE_CHECK(spec.padding == Padding::kValid || spec.stride == 1,
                   prefix, ": replicate padding requires stride 1");
        const int fan_in = spec.in_channels * spec.kernel;
        layer.weight.name = prefix + ".weight";
        layer.weight.value = Tensor<Real>(spec.out_channels, fan_in);
        UniformInit(&layer.weight.value, std::sqrt(6.0 / fan_in), rng);
        layer.bias.name = prefix + ".bias";
        layer.bias.value = Tensor<Real>(spec.out_channels, 1);
        layer.has_weight = layer.has_bias = true;
        break;
      }
      case LayerKind::kPointwiseLinear: {
        TASE_CHECK(spec.in_channels > 0 && spec.out_channels > 0, prefix,
                   ": sizes must be positive");
        layer.weight.name = prefix + ".weight";
        layer.weight.value = Tensor<Real>(spec.out_channels, spec.in_channels);
        UniformInit(&layer.weight.value, std::sqrt(6.0 / spec.in_channels),
                    rng);
        layer.bias.name = prefix + ".bias";
        layer.bias.value = Tensor<Real>(spec.out_channels, 1);
        layer.has_weight = layer.has_bias = true;
        break;
      }
      case LayerKind::kPrelu: {
        TASE_CHECK(spec.in_channels > 0, prefix, ": channels must be positive");
        layer.weight.name = prefix + ".slope";
        layer.weight.value = Tensor<Real>(spec.in_channels, 1, Real(0.25));
        layer.has_weight = true;
        break;
      }
      case LayerKind::kLayerNorm: {
        TASE_CHECK(spec.in_channels > 0, prefix, ": channels must be positive");
        layer.weight.name = prefix + ".gain";
        layer.weight.value = Tensor<Real>(spec.in_channels, 1, Real(1));
        layer.bias.name = prefix + ".bias";
        layer.bias.value = Tensor<Real>(spec.in_channels, 1);
        layer.has_weight = layer.has_bias = true;
        break;
      }
      case LayerKind::kTransposedConv1d: {
        TASE_CHECK(spec.in_channels > 0 && spec.out_channels > 0 &&
                       spec.kernel > 0 && spec.stride > 0,
                   prefix, ": sizes must be positive");
        layer.weight.name = prefix + ".weight";
        layer.weight.value =
            Tensor<Real>(spec.out_channels * spec.kernel, spec.in_channels);
        UniformInit(&layer.weight.value, std::sqrt(6.0 / spec.in_channels),
                    rng);
        layer.bias.name = prefix + ".bias";
        layer.bias.value = Tensor<Real>(spec.out_channels, 1);
        layer.has_weight = layer.has_bias = true;
        break;
      }
      case LayerKind::kRelu:
      case LayerKind::kMeanPoolTime:
      case LayerKind::kStatsPoolTime:
      case LayerKind::kL2Normalize:
      case LayerKind::kSigmoidMask:
        break;
    }
    if (layer.has_weight) layer.weight.EnsureGradShape();
    if (layer.has_bias) layer.bias.EnsureGradShape();
    layers_.push_back(std::move(layer));
  }
}

template <typename Real>
Tensor<Real> Network<Real>::Forward(const Tensor<Real> &input,
                                    Trace<Real> *trace) const {
  if (trace != nullptr) {
    trace->layers.clear();
    trace->layers.resize(layers_.size());
    trace->version = version_;
  }
  Tensor<Real> x = input;
  for (size_t i = 0; i < layers_.size(); ++i)
    x = LayerForward(i, x, trace ? &trace->layers[i] : nullptr);
  if (trace != nullptr) trace->output = x;
  return x;
}

template <typename Real>
Tensor<Real> Network<Real>::Backward(const Trace<Real> &trace,
                                     const Tensor<Real> &output_grad) {
  TASE_CHECK(trace.version == version_,
             "network '", name_, "': stale trace (version ", trace.version,
             " vs ", version_, ")");
  TASE_CHECK(trace.layers.size() == layers_.size(),
             "network '", name_, "': trace does not match layer stack");
  TASE_CHECK(output_grad.SameShape(trace.output),
             "network '", name_, "': upstream gradient shape mismatch");
  Tensor<Real> g = output_grad;
  for (size_t i = layers_.size(); i-- > 0;)
    g = LayerBackward(i, trace.layers[i], g);
  return g;
}

template <typename Real>
std::vector<Parameter<Real> *> Network<Real>::Parameters() {
  std::vector<Parameter<Real> *> out;
  for (Layer<Real> &layer : layers_) {
    if (layer.has_weight) out.push_back(&layer.weight);
    if (layer.has_bias) out.push_back(&layer.bias);
  }
  return out;
}

template <typename Real>
std::vector<const Parameter<Real> *> Network<Real>::Parameters() const {
  std::vector<const Parameter<Real> *> out;
  for (const Layer<Real> &layer : layers_) {
    if (layer.has_weight) out.push_back(&layer.weight);
    if (layer.has_bias) out.push_back(&layer.bias);
  }
  return out;
}

template <typename Real>
void Network<Real>::ZeroGrad() {
  for (Parameter<Real> *p : Parameters()) p->grad.SetZero();
}

template <typename Real>
double Network<Real>::L2Penalty(double weight, bool accumulate_grad) {
  double total = 0.0;
  for (Layer<Real> &layer : layers_) {
    if (layer.spec.kind == LayerKind::kLayerNorm) continue;
    for (Parameter<Real> *p : {&layer.weight, &layer.bias}) {
      if ((p == &layer.weight && !layer.has_weight) ||
          (p == &layer.bias && !layer.has_bias))
        continue;
      for (size_t i = 0; i < p->value.size(); ++i) {
        const double w = static_cast<double>(p->value.v[i]);
        total += w * w;
        if (accumulate_grad && weight != 0.0)
          p->grad.v[i] += static_cast<Real>(2.0 * weight * w);
      }
    }
  }
  return total;
}

template <typename Real>
Tensor<Real> Network<Real>::LayerForward(size_t index, const Tensor<Real> &x,
                                         LayerTrace<Real> *trace) const {
  const Layer<Real> &layer = layers_[index];
  const LayerSpec &spec = layer.spec;
  if (trace != nullptr) trace->input = x;

  switch (spec.kind) {
    case LayerKind::kConv1d: {
      if (x.rows != spec.in_channels)
        LayerError(index, StrCat("input has ", x.rows, " channels, expected ",
                                 spec.in_channels));
      const int span = (spec.kernel - 1) * spec.dilation + 1;
      int pad_left = 0, pad_right = 0;
      if (spec.padding == Padding::kReplicate) {
        pad_left = span / 2;
        pad_right = span - 1 - pad_left;
      }
      const int t_pad = x.cols + pad_left + pad_right;
      if (t_pad < span)
        LayerError(index, StrCat("input of ", x.cols,
                                 " frames is shorter than the kernel span ",
                                 span));
      const int t_out = (t_pad - span) / spec.stride + 1;

      Tensor<Real> xpad(spec.in_channels, t_pad);
      for (int c = 0; c < spec.in_channels; ++c) {
        Real *dst = xpad.row(c);
        const Real *src = x.row(c);
        for (int t = 0; t < pad_left; ++t) dst[t] = src[0];
        std::copy(src, src + x.cols, dst + pad_left);
        for (int t = 0; t < pad_right; ++t)
          dst[pad_left + x.cols + t] = src[x.cols - 1];
      }

      Tensor<Real> xcol(spec.in_channels * spec.kernel, t_out);
      for (int c = 0; c < spec.in_channels; ++c)
        for (int k = 0; k < spec.kernel; ++k) {
          Real *dst = xcol.row(c * spec.kernel + k);
          const Real *src = xpad.row(c) + k * spec.dilation;
          for (int t = 0; t < t_out; ++t) dst[t] = src[t * spec.stride];
        }

      Tensor<Real> y(spec.out_channels, t_out);
      AsEigen(y).noalias() = AsEigen(layer.weight.value) * AsEigen(xcol);
      for (int o = 0; o < spec.out_channels; ++o) {
        const Real b = layer.bias.value.v[o];
        Real *row = y.row(o);
        for (int t = 0; t < t_out; ++t) row[t] += b;
      }
      if (trace != nullptr) trace->aux0 = std::move(xcol);
      return y;
    }

    case LayerKind::kPointwiseLinear: {
      if (x.rows != spec.in_channels)
        LayerError(index, StrCat("input has ", x.rows, " channels, expected ",
                                 spec.in_channels));
      Tensor<Real> y(spec.out_channels, x.cols);
      AsEigen(y).noalias() = AsEigen(layer.weight.value) * AsEigen(x);
      for (int o = 0; o < spec.out_channels; ++o) {
        const Real b = layer.bias.value.v[o];
        Real *row = y.row(o);
        for (int t = 0; t < x.cols; ++t) row[t] += b;
      }
      return y;
    }

    case LayerKind::kRelu: {
      Tensor<Real> y = x;
      for (Real &v : y.v) v = v > Real(0) ? v : Real(0);
      return y;
    }

    case LayerKind::kPrelu: {
      if (x.rows != spec.in_channels)
        LayerError(index, StrCat("input has ", x.rows, " channels, expected ",
                                 spec.in_channels));
      Tensor<Real> y = x;
      for (int c = 0; c < x.rows; ++c) {
        const Real a = layer.weight.value.v[c];
        Real *row = y.row(c);
        for (int t = 0; t < x.cols; ++t)
          if (row[t] < Real(0)) row[t] *= a;
      }
      return y;
    }

    case LayerKind::kLayerNorm: {
      if (x.rows != spec.in_channels)
        LayerError(index, StrCat("input has ", x.rows, " channels, expected ",
                                 spec.in_channels));
      const int c_n = x.rows;
      Tensor<Real> xhat(x.rows, x.cols);
      Tensor<Real> istd(1, x.cols);
      Tensor<Real> y(x.rows, x.cols);
      for (int t = 0; t < x.cols; ++t) {
        double mean = 0.0;
        for (int c = 0; c < c_n; ++c) mean += x.at(c, t);
        mean /= c_n;
        double var = 0.0;
        for (int c = 0; c < c_n; ++c) {
          const double d = x.at(c, t) - mean;
          var += d * d;
        }
        var /= c_n;
        const double is = 1.0 / std::sqrt(var + kLayerNormEps);
        istd.v[t] = static_cast<Real>(is);
        for (int c = 0; c < c_n; ++c) {
          const double xh = (x.at(c, t) - mean) * is;
          xhat.at(c, t) = static_cast<Real>(xh);
          y.at(c, t) = static_cast<Real>(
              xh * layer.weight.value.v[c] + layer.bias.value.v[c]);
        }
      }
      if (trace != nullptr) {
        trace->aux0 = std::move(xhat);
        trace->aux1 = std::move(istd);
      }
      return y;
    }

    case LayerKind::kMeanPoolTime: {
      if (x.cols < 1) LayerError(index, "empty time axis");
      Tensor<Real> y(x.rows, 1);
      for (int c = 0; c < x.rows; ++c) {
        double acc = 0.0;
        for (int t = 0; t < x.cols; ++t) acc += x.at(c, t);
        y.v[c] = static_cast<Real>(acc / x.cols);
      }
      return y;
    }

    case LayerKind::kStatsPoolTime: {
      if (x.cols < 1) LayerError(index, "empty time axis");
      Tensor<Real> y(2 * x.rows, 1);
      for (int c = 0; c < x.rows; ++c) {
        double mean = 0.0;
        for (int t = 0; t < x.cols; ++t) mean += x.at(c, t);
        mean /= x.cols;
        double var = 0.0;
        for (int t = 0; t < x.cols; ++t) {
          const double d = x.at(c, t) - mean;
          var += d * d;
        }
        var /= x.cols;
        y.v[c] = static_cast<Real>(mean);
        y.v[x.rows + c] = static_cast<Real>(std::sqrt(var + kStatsPoolEps));
      }
      if (trace != nullptr) trace->aux0 = y;
      return y;
    }

    case LayerKind::kL2Normalize: {
      double norm_sq = 0.0;
      for (Real v : x.v) norm_sq += static_cast<double>(v) * v;
      const double norm = std::sqrt(norm_sq);
      Tensor<Real> y(x.rows, x.cols);
      if (norm > kL2NormFloor)
        for (size_t i = 0; i < x.size(); ++i)
          y.v[i] = static_cast<Real>(x.v[i] / norm);
      if (trace != nullptr) {
        trace->aux0 = y;
        trace->aux1 = Tensor<Real>(1, 1, static_cast<Real>(norm));
      }
      return y;
    }

    case LayerKind::kSigmoidMask: {
      Tensor<Real> y(x.rows, x.cols);
      for (size_t i = 0; i < x.size(); ++i)
        y.v[i] = static_cast<Real>(1.0 / (1.0 + std::exp(-static_cast<double>(x.v[i]))));
      if (trace != nullptr) trace->aux0 = y;
      return y;
    }

    case LayerKind::kTransposedConv1d: {
      if (x.rows != spec.in_channels)
        LayerError(index, StrCat("input has ", x.rows, " channels, expected ",
                                 spec.in_channels));
      const int frames = x.cols;
      const int length = (frames - 1) * spec.stride + spec.kernel;
      Tensor<Real> cols(spec.out_channels * spec.kernel, frames);
      AsEigen(cols).noalias() = AsEigen(layer.weight.value) * AsEigen(x);
      Tensor<Real> y(spec.out_channels, length);
      for (int o = 0; o < spec.out_channels; ++o) {
        Real *dst = y.row(o);
        const Real b = layer.bias.value.v[o];
        for (int t = 0; t < length; ++t) dst[t] = b;
        for (int k = 0; k < spec.kernel; ++k) {
          const Real *src = cols.row(o * spec.kernel + k);
          for (int f = 0; f < frames; ++f) dst[f * spec.stride + k] += src[f];
        }
      }
      return y;
    }
  }
  LayerError(index, "unhandled layer kind");
}

template <typename Real>
Tensor<Real> Network<Real>::LayerBackward(size_t index,
                                          const LayerTrace<Real> &trace,
                                          const Tensor<Real> &gout) {
  Layer<Real> &layer = layers_[index];
  const LayerSpec &spec = layer.spec;
  const Tensor<Real> &x = trace.input;

  switch (spec.kind) {
    case LayerKind::kConv1d: {
      const Tensor<Real> &xcol = trace.aux0;
      AsEigen(layer.weight.grad).noalias() +=
          AsEigen(gout) * AsEigen(xcol).transpose();
      for (int o = 0; o < spec.out_channels; ++o) {
        double acc = 0.0;
        const Real *row = gout.row(o);
        for (int t = 0; t < gout.cols; ++t) acc += row[t];
        layer.bias.grad.v[o] += static_cast<Real>(acc);
      }
      Tensor<Real> gcol(xcol.rows, xcol.cols);
      AsEigen(gcol).noalias() =
          AsEigen(layer.weight.value).transpose() * AsEigen(gout);

      const int span = (spec.kernel - 1) * spec.dilation + 1;
      int pad_left = 0, pad_right = 0;
      if (spec.padding == Padding::kReplicate) {
        pad_left = span / 2;
        pad_right = span - 1 - pad_left;
      }
      const int t_pad = x.cols + pad_left + pad_right;
      Tensor<Real> gpad(spec.in_channels, t_pad);
      for (int c = 0; c < spec.in_channels; ++c)
        for (int k = 0; k < spec.kernel; ++k) {
          const Real *src = gcol.row(c * spec.kernel + k);
          Real *dst = gpad.row(c) + k * spec.dilation;
          for (int t = 0; t < gout.cols; ++t) dst[t * spec.stride] += src[t];
        }
      Tensor<Real> gx(x.rows, x.cols);
      for (int c = 0; c < spec.in_channels; ++c) {
        const Real *src = gpad.row(c);
        Real *dst = gx.row(c);
        std::copy(src + pad_left, src + pad_left + x.cols, dst);
        for (int t = 0; t < pad_left; ++t) dst[0] += src[t];
        for (int t = 0; t < pad_right; ++t)
          dst[x.cols - 1] += src[pad_left + x.cols + t];
      }
      return gx;
    }

    case LayerKind::kPointwiseLinear: {
      AsEigen(layer.weight.grad).noalias() +=
          AsEigen(gout) * AsEigen(x).transpose();
      for (int o = 0; o < spec.out_channels; ++o) {
        double acc = 0.0;
        const Real *row = gout.row(o);
        for (int t = 0; t < gout.cols; ++t) acc += row[t];
        layer.bias.grad.v[o] += static_cast<Real>(acc);
      }
      Tensor<Real> gx(x.rows, x.cols);
      AsEigen(gx).noalias() =
          AsEigen(layer.weight.value).transpose() * AsEigen(gout);
      return gx;
    }

    case LayerKind::kRelu: {
      Tensor<Real> gx = gout;
      for (size_t i = 0; i < x.size(); ++i)
        if (x.v[i] <= Real(0)) gx.v[i] = Real(0);
      return gx;
    }

    case LayerKind::kPrelu: {
      Tensor<Real> gx = gout;
      for (int c = 0; c < x.rows; ++c) {
        const Real a = layer.weight.value.v[c];
        double ga = 0.0;
        const Real *xr = x.row(c);
        Real *gr = gx.row(c);
        const Real *go = gout.row(c);
        for (int t = 0; t < x.cols; ++t) {
          if (xr[t] < Real(0)) {
            ga += static_cast<double>(xr[t]) * go[t];
            gr[t] = go[t] * a;
          }
        }
        layer.weight.grad.v[c] += static_cast<Real>(ga);
      }
      return gx;
    }

    case LayerKind::kLayerNorm: {
      const Tensor<Real> &xhat = trace.aux0;
      const Tensor<Real> &istd = trace.aux1;
      const int c_n = x.rows;
      Tensor<Real> gx(x.rows, x.cols);
      for (int t = 0; t < x.cols; ++t) {
        double mean_g = 0.0, mean_gx = 0.0;
        for (int c = 0; c < c_n; ++c) {
          const double gh =
              static_cast<double>(gout.at(c, t)) * layer.weight.value.v[c];
          mean_g += gh;
          mean_gx += gh * xhat.at(c, t);
        }
        mean_g /= c_n;
        mean_gx /= c_n;
        for (int c = 0; c < c_n; ++c) {
          const double gh =
              static_cast<double>(gout.at(c, t)) * layer.weight.value.v[c];
          gx.at(c, t) = static_cast<Real>(
              istd.v[t] * (gh - mean_g - xhat.at(c, t) * mean_gx));
        }
      }
      for (int c = 0; c < c_n; ++c) {
        double gw = 0.0, gb = 0.0;
        for (int t = 0; t < x.cols; ++t) {
          gw += static_cast<double>(gout.at(c, t)) * xhat.at(c, t);
          gb += gout.at(c, t);
        }
        layer.weight.grad.v[c] += static_cast<Real>(gw);
        layer.bias.grad.v[c] += static_cast<Real>(gb);
      }
      return gx;
    }

    case LayerKind::kMeanPoolTime: {
      Tensor<Real> gx(x.rows, x.cols);
      for (int c = 0; c < x.rows; ++c) {
        const Real g = gout.v[c] / static_cast<Real>(x.cols);
        Real *row = gx.row(c);
        for (int t = 0; t < x.cols; ++t) row[t] = g;
      }
      return gx;
    }

    case LayerKind::kStatsPoolTime: {
      const Tensor<Real> &pooled = trace.aux0;
      Tensor<Real> gx(x.rows, x.cols);
      for (int c = 0; c < x.rows; ++c) {
        const double mean = pooled.v[c];
        const double stddev = pooled.v[x.rows + c];
        const double gm = gout.v[c];
        const double gs = gout.v[x.rows + c];
        Real *row = gx.row(c);
        const Real *xr = x.row(c);
        for (int t = 0; t < x.cols; ++t)
          row[t] = static_cast<Real>(gm / x.cols +
                                     gs * (xr[t] - mean) / (x.cols * stddev));
      }
      return gx;
    }

    case LayerKind::kL2Normalize: {
      const Tensor<Real> &y = trace.aux0;
      const double norm = trace.aux1.v[0];
      Tensor<Real> gx(x.rows, x.cols);
      if (norm > kL2NormFloor) {
        double ydotg = 0.0;
        for (size_t i = 0; i < y.size(); ++i)
          ydotg += static_cast<double>(y.v[i]) * gout.v[i];
        for (size_t i = 0; i < y.size(); ++i)
          gx.v[i] = static_cast<Real>((gout.v[i] - y.v[i] * ydotg) / norm);
      }
      return gx;  // zero input: zero output, zero (sub)gradient
    }

    case LayerKind::kSigmoidMask: {
      const Tensor<Real> &y = trace.aux0;
      Tensor<Real> gx(x.rows, x.cols);
      for (size_t i = 0; i < y.size(); ++i)
        gx.v[i] = static_cast<Real>(gout.v[i] * y.v[i] * (Real(1) - y.v[i]));
      return gx;
    }

    case LayerKind::kTransposedConv1d: {
      const int frames = x.cols;
      Tensor<Real> gcols(spec.out_channels * spec.kernel, frames);
      for (int o = 0; o < spec.out_channels; ++o) {
        double acc = 0.0;
        const Real *go = gout.row(o);
        for (int t = 0; t < gout.cols; ++t) acc += go[t];
        layer.bias.grad.v[o] += static_cast<Real>(acc);
        for (int k = 0; k < spec.kernel; ++k) {
          Real *dst = gcols.row(o * spec.kernel + k);
          for (int f = 0; f < frames; ++f) dst[f] = go[f * spec.stride + k];
        }
      }
      AsEigen(layer.weight.grad).noalias() +=
          AsEigen(gcols) * AsEigen(x).transpose();
      Tensor<Real> gx(x.rows, x.cols);
      AsEigen(gx).noalias() =
          AsEigen(layer.weight.value).transpose() * AsEigen(gcols);
      return gx;
    }
  }
  LayerError(index, "unhandled layer kind");
}

}  // namespace nnet
}  // namespace tase

#endif  // TASE_NNET_NETWORK_H_
