// am/nnet.h

// Copyright 2026  xlasr authors

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

#ifndef XLASR_AM_NNET_H_
#define XLASR_AM_NNET_H_

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "base/xlasr-common.h"

namespace xlasr {

enum class Activation { kSigmoid, kTanh, kRelu };

std::string ActivationName(Activation a);
Activation ParseActivation(const std::string &name);

/// Feed-forward network: affine layers with a hidden nonlinearity between
/// them and a softmax on the last one. Batches are column-major, one frame
/// per column.
template <typename Real>
class Nnet {
 public:
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  struct Layer {
    Matrix weights;  // out x in
    Vector bias;     // out
    bool operator==(const Layer &o) const {
      return weights.rows() == o.weights.rows() && weights.cols() == o.weights.cols() &&
             bias.size() == o.bias.size() && weights == o.weights && bias == o.bias;
    }
  };

  Nnet() = default;

  // dims = {input, hidden..., output}; parameters zero.
  Nnet(const std::vector<int> &dims, Activation activation) : activation_(activation) {
    if (dims.size() < 2) XLASR_ERR << "a network needs at least input and output dims";
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
      if (dims[i] <= 0 || dims[i + 1] <= 0) XLASR_ERR << "layer dims must be positive";
      layers_.push_back({Matrix::Zero(dims[i + 1], dims[i]), Vector::Zero(dims[i + 1])});
    }
  }

  // Glorot/Xavier uniform weights, zero biases.
  void InitGlorot(std::mt19937_64 &rng) {
    for (auto &l : layers_) {
      double r = std::sqrt(6.0 / (l.weights.rows() + l.weights.cols()));
      std::uniform_real_distribution<double> u(-r, r);
      for (Eigen::Index j = 0; j < l.weights.cols(); ++j)
        for (Eigen::Index i = 0; i < l.weights.rows(); ++i)
          l.weights(i, j) = static_cast<Real>(u(rng));
      l.bias.setZero();
    }
  }

  int NumLayers() const { return static_cast<int>(layers_.size()); }
  int InputDim() const { return static_cast<int>(layers_.front().weights.cols()); }
  int OutputDim() const { return static_cast<int>(layers_.back().weights.rows()); }
  std::vector<int> Dims() const {
    std::vector<int> d{InputDim()};
    for (const auto &l : layers_) d.push_back(static_cast<int>(l.weights.rows()));
    return d;
  }
  Activation GetActivation() const { return activation_; }
  const Layer &GetLayer(int i) const { return layers_[i]; }
  Layer &GetLayer(int i) { return layers_[i]; }
  const std::vector<Layer> &Layers() const { return layers_; }

  bool operator==(const Nnet &o) const {
    return activation_ == o.activation_ && layers_ == o.layers_;
  }

  template <typename Other>
  Nnet<Other> Cast() const {
    Nnet<Other> out(Dims(), activation_);
    for (int i = 0; i < NumLayers(); ++i) {
      out.GetLayer(i).weights = layers_[i].weights.template cast<Other>();
      out.GetLayer(i).bias = layers_[i].bias.template cast<Other>();
    }
    return out;
  }

  // Per-layer outputs: acts[0] = input, acts[i+1] = output of layer i
  // (after the nonlinearity; the last entry holds log-softmax values).
  void Propagate(const Matrix &input, std::vector<Matrix> *acts) const {
    acts->resize(layers_.size() + 1);
    (*acts)[0] = input;
    for (size_t i = 0; i < layers_.size(); ++i) {
      Matrix z = layers_[i].weights * (*acts)[i];
      z.colwise() += layers_[i].bias;
      if (i + 1 < layers_.size()) {
        ApplyActivation(&z);
      } else {
        LogSoftmaxColumns(&z);
      }
      (*acts)[i + 1] = std::move(z);
    }
  }

  // frames-as-columns log-posteriors.
  Matrix LogPosteriors(const Matrix &input) const {
    std::vector<Matrix> acts;
    Propagate(input, &acts);
    return std::move(acts.back());
  }

  // Mean cross-entropy of `labels` over the batch. If `grads` is non-null it
  // receives d(loss)/d(params) for every layer with index >= first_trainable
  // (other entries are left empty).
  double ComputeLossAndGradient(const Matrix &input, std::span<const int> labels,
                                std::vector<Layer> *grads, int first_trainable = 0) const {
    const Eigen::Index B = input.cols();
    if (static_cast<Eigen::Index>(labels.size()) != B)
      XLASR_ERR << "label count does not match batch size";
    std::vector<Matrix> acts;
    Propagate(input, &acts);
    const Matrix &logp = acts.back();
    double loss = 0.0;
    for (Eigen::Index b = 0; b < B; ++b) {
      int y = labels[b];
      if (y < 0 || y >= logp.rows()) XLASR_ERR << "label " << y << " out of range";
      loss -= logp(y, b);
    }
    loss /= static_cast<double>(B);
    if (grads == nullptr) return loss;

    grads->assign(layers_.size(), Layer{});
    const Real inv_b = static_cast<Real>(1.0 / static_cast<double>(B));
    Matrix delta = logp.array().exp();
    for (Eigen::Index b = 0; b < B; ++b) delta(labels[b], b) -= Real(1);
    delta *= inv_b;
    for (int i = NumLayers() - 1; i >= first_trainable; --i) {
      (*grads)[i].weights.noalias() = delta * acts[i].transpose();
      (*grads)[i].bias = delta.rowwise().sum();
      if (i == first_trainable || i == 0) break;
      Matrix back = layers_[i].weights.transpose() * delta;
      ApplyActivationDerivative(acts[i], &back);
      delta = std::move(back);
    }
    return loss;
  }

 private:
  void ApplyActivation(Matrix *z) const {
    switch (activation_) {
      case Activation::kSigmoid:
        *z = (Real(1) + (-z->array()).exp()).inverse().matrix();
        break;
      case Activation::kTanh:
        *z = z->array().tanh().matrix();
        break;
      case Activation::kRelu:
        *z = z->array().max(Real(0)).matrix();
        break;
    }
  }

  // d *= act'(z), expressed through the activation output a.
  void ApplyActivationDerivative(const Matrix &a, Matrix *d) const {
    switch (activation_) {
      case Activation::kSigmoid:
        d->array() *= a.array() * (Real(1) - a.array());
        break;
      case Activation::kTanh:
        d->array() *= Real(1) - a.array().square();
        break;
      case Activation::kRelu:
        d->array() *= (a.array() > Real(0)).template cast<Real>();
        break;
    }
  }

  static void LogSoftmaxColumns(Matrix *z) {
    for (Eigen::Index b = 0; b < z->cols(); ++b) {
      auto col = z->col(b);
      Real m = col.maxCoeff();
      Real lse = m + std::log((col.array() - m).exp().sum());
      col.array() -= lse;
    }
  }

  Activation activation_ = Activation::kSigmoid;
  std::vector<Layer> layers_;
};

}  // namespace xlasr

#endif  // XLASR_AM_NNET_H_
