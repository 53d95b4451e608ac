// am/nnet-train.cc

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

#include "am/nnet-train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "base/xlasr-common.h"

namespace xlasr {

void TrainConfig::Check() const {
  if (hidden_layers < 0) XLASR_ERR << "hidden layer count must be non-negative";
  if (hidden_dim <= 0) XLASR_ERR << "hidden dim must be positive";
  if (context < 0) XLASR_ERR << "context must be non-negative";
  if (!(learning_rate > 0)) XLASR_ERR << "learning rate must be positive";
  if (minibatch_size <= 0) XLASR_ERR << "minibatch size must be positive";
  if (max_epochs < 0) XLASR_ERR << "max epochs must be non-negative";
  if (heldout_fraction < 0 || heldout_fraction >= 1)
    XLASR_ERR << "held-out fraction must be in [0, 1)";
  if (!(halving_factor > 0 && halving_factor < 1))
    XLASR_ERR << "halving factor must be in (0, 1)";
}

TrainConfig TrainConfig::AdaptationDefaults(const TrainConfig &training) {
  TrainConfig c = training;
  c.learning_rate = training.learning_rate / 10.0;
  c.max_epochs = 5;
  c.schedule = LrSchedule::kFixed;
  c.frozen_layers = "all-but-last";
  return c;
}

std::vector<bool> FrozenMask(const std::string &selector, int num_layers) {
  std::vector<bool> frozen(num_layers, false);
  if (selector.empty() || selector == "none") return frozen;
  if (selector == "all-but-last") {
    for (int i = 0; i + 1 < num_layers; ++i) frozen[i] = true;
    return frozen;
  }
  for (const auto &tok : SplitOn(selector, ',')) {
    int idx;
    try {
      idx = std::stoi(tok);
    } catch (const std::exception &) {
      XLASR_ERR << "bad frozen-layer selector '" << selector << "'";
    }
    if (idx < 0 || idx >= num_layers)
      XLASR_ERR << "frozen layer " << idx << " out of range [0, " << num_layers << ")";
    frozen[idx] = true;
  }
  return frozen;
}

namespace {

// CMVN'd frames of all utterances, addressable by global frame index.
struct FramePool {
  int dim = 0;
  int context = 0;
  Eigen::MatrixXf frames;       // dim x total
  std::vector<int> labels;      // per frame
  std::vector<int> utt_start;   // per frame: first frame of its utterance
  std::vector<int> utt_end;     // per frame: one past the last

  int Size() const { return static_cast<int>(labels.size()); }

  void Build(const std::vector<const TrainingUtterance *> &utts, int ctx) {
    context = ctx;
    long total = 0;
    for (const auto *u : utts) total += u->feats.NumFrames();
    dim = utts.empty() ? 0 : utts.front()->feats.Dim();
    frames.resize(dim, total);
    labels.reserve(total);
    utt_start.reserve(total);
    utt_end.reserve(total);
    int offset = 0;
    for (const auto *u : utts) {
      FeatureMatrix norm = ApplyCmvn(u->feats);
      const int T = norm.NumFrames();
      frames.block(0, offset, dim, T) = norm.data.transpose();
      for (int t = 0; t < T; ++t) {
        labels.push_back(u->labels[t]);
        utt_start.push_back(offset);
        utt_end.push_back(offset + T);
      }
      offset += T;
    }
  }

  void Gather(std::span<const int> idx, Eigen::MatrixXf *input, std::vector<int> *y) const {
    const int width = 2 * context + 1;
    input->resize(width * dim, static_cast<Eigen::Index>(idx.size()));
    y->resize(idx.size());
    for (size_t b = 0; b < idx.size(); ++b) {
      int f = idx[b];
      for (int k = -context; k <= context; ++k) {
        int src = std::clamp(f + k, utt_start[f], utt_end[f] - 1);
        input->block((k + context) * dim, static_cast<Eigen::Index>(b), dim, 1) =
            frames.col(src);
      }
      (*y)[b] = labels[f];
    }
  }
};

void ValidateData(const std::vector<TrainingUtterance> &data, int num_states, int dim) {
  if (data.empty()) XLASR_ERR << "no training data";
  for (const auto &u : data) {
    if (u.feats.Dim() != dim)
      XLASR_ERR << "utterance " << u.utt_id << " has feature dim " << u.feats.Dim()
                << ", expected " << dim;
    if (static_cast<int>(u.labels.size()) != u.feats.NumFrames())
      XLASR_ERR << "utterance " << u.utt_id << ": " << u.labels.size()
                << " labels for " << u.feats.NumFrames() << " frames";
    for (int s : u.labels)
      if (s < 0 || s >= num_states)
        XLASR_ERR << "utterance " << u.utt_id << ": label " << s << " out of range [0, "
                  << num_states << ")";
  }
}

constexpr int kEvalBatch = 2048;

double PoolLoss(const Nnet<float> &nnet, const FramePool &pool) {
  if (pool.Size() == 0) return 0.0;
  std::vector<int> idx(pool.Size());
  std::iota(idx.begin(), idx.end(), 0);
  double total = 0.0;
  Eigen::MatrixXf input;
  std::vector<int> y;
  for (int s = 0; s < pool.Size(); s += kEvalBatch) {
    int n = std::min(kEvalBatch, pool.Size() - s);
    pool.Gather(std::span<const int>(idx).subspan(s, n), &input, &y);
    total += nnet.ComputeLossAndGradient(input, y, nullptr) * n;
  }
  double loss = total / pool.Size();
  if (!std::isfinite(loss)) XLASR_ERR << "non-finite cross-entropy during training";
  return loss;
}

// Runs the epoch loop on `model` in place.
TrainResult RunTraining(AcousticModel model, const std::vector<TrainingUtterance> &data,
                        const TrainConfig &config) {
  config.Check();
  ValidateData(data, model.NumStates(), model.FeatureDim());
  const std::vector<bool> frozen = FrozenMask(config.frozen_layers, model.nnet.NumLayers());
  int first_trainable = model.nnet.NumLayers();
  for (int i = model.nnet.NumLayers() - 1; i >= 0; --i)
    if (!frozen[i]) first_trainable = i;

  std::vector<const TrainingUtterance *> train_utts, heldout_utts;
  const bool use_heldout = config.schedule == LrSchedule::kNewbob &&
                           config.heldout_fraction > 0 && data.size() > 1;
  for (const auto &u : data) {
    bool held = use_heldout &&
                (MixSeed(config.seed, "heldout:" + u.utt_id) % 10000) <
                    static_cast<uint64_t>(config.heldout_fraction * 10000);
    (held ? heldout_utts : train_utts).push_back(&u);
  }
  if (train_utts.empty()) {
    train_utts.push_back(heldout_utts.back());
    heldout_utts.pop_back();
  }
  FramePool train_pool, heldout_pool;
  train_pool.Build(train_utts, model.context);
  heldout_pool.Build(heldout_utts, model.context);
  const bool have_heldout = heldout_pool.Size() > 0;
  const FramePool &valid_pool = have_heldout ? heldout_pool : train_pool;

  {
    std::vector<int> counts(model.NumStates(), 0);
    for (const auto &u : data)
      for (int s : u.labels) ++counts[s];
    int empty = 0;
    for (int c : counts) empty += c == 0;
    if (empty > 0 && first_trainable == 0)
      XLASR_WARN << empty << " of " << model.NumStates()
                 << " states have no training frames";
  }

  TrainResult res;
  res.num_frames = train_pool.Size();
  res.num_heldout_frames = heldout_pool.Size();
  res.initial_train_loss = PoolLoss(model.nnet, train_pool);
  double best_valid = have_heldout ? PoolLoss(model.nnet, heldout_pool)
                                   : res.initial_train_loss;
  res.heldout_loss.push_back(best_valid);

  double lr = config.learning_rate;
  int bad_halvings = 0;
  std::vector<int> order(train_pool.Size());
  std::iota(order.begin(), order.end(), 0);
  Eigen::MatrixXf input;
  std::vector<int> y;
  std::vector<Nnet<float>::Layer> grads;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    Nnet<float> before = model.nnet;
    std::mt19937_64 rng(MixSeed(config.seed, "epoch:" + std::to_string(epoch)));
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (int s = 0; s < train_pool.Size(); s += config.minibatch_size) {
      int n = std::min(config.minibatch_size, train_pool.Size() - s);
      train_pool.Gather(std::span<const int>(order).subspan(s, n), &input, &y);
      double loss = model.nnet.ComputeLossAndGradient(input, y, &grads, first_trainable);
      if (!std::isfinite(loss))
        XLASR_ERR << "non-finite loss in epoch " << epoch + 1 << " at frame " << s
                  << " (learning rate " << lr << ")";
      loss_sum += loss * n;
      const float step = static_cast<float>(lr);
      for (int l = first_trainable; l < model.nnet.NumLayers(); ++l) {
        if (frozen[l]) continue;
        auto &layer = model.nnet.GetLayer(l);
        layer.weights.noalias() -= step * grads[l].weights;
        layer.bias.noalias() -= step * grads[l].bias;
      }
    }
    res.train_loss.push_back(loss_sum / std::max(1, train_pool.Size()));
    res.learning_rates.push_back(lr);
    ++res.epochs_run;

    if (config.schedule == LrSchedule::kFixed) {
      res.heldout_loss.push_back(PoolLoss(model.nnet, valid_pool));
      continue;
    }
    double valid = PoolLoss(model.nnet, valid_pool);
    double gain = (best_valid - valid) / std::max(std::abs(best_valid), 1e-12);
    if (valid < best_valid) {
      best_valid = valid;
    } else {
      model.nnet = std::move(before);  // reject the epoch
    }
    res.heldout_loss.push_back(best_valid);
    XLASR_LOG << "epoch " << epoch + 1 << " lr " << lr << " train "
              << res.train_loss.back() << " valid " << valid
              << (valid < res.heldout_loss[res.heldout_loss.size() - 2] ? "" : " (rejected)");
    if (gain < config.min_improvement) {
      lr *= config.halving_factor;
      if (++bad_halvings >= config.max_halvings_without_improvement) break;
    } else {
      bad_halvings = 0;
    }
  }
  res.final_train_loss = PoolLoss(model.nnet, train_pool);
  model.metadata.seed = config.seed;
  res.model = std::move(model);
  return res;
}

std::vector<std::vector<int>> AllLabels(const std::vector<TrainingUtterance> &data) {
  std::vector<std::vector<int>> out;
  out.reserve(data.size());
  for (const auto &u : data) out.push_back(u.labels);
  return out;
}

}  // namespace

TrainResult TrainAcousticModel(const std::vector<TrainingUtterance> &data,
                               const StateMap &state_map,
                               const std::string &feature_fingerprint,
                               const TrainConfig &config) {
  config.Check();
  if (data.empty()) XLASR_ERR << "no training data";
  AcousticModel model;
  model.state_map = state_map;
  model.context = config.context;
  model.feature_fingerprint = feature_fingerprint;
  std::vector<int> dims{data.front().feats.Dim() * (2 * config.context + 1)};
  for (int i = 0; i < config.hidden_layers; ++i) dims.push_back(config.hidden_dim);
  dims.push_back(state_map.NumStates());
  model.nnet = Nnet<float>(dims, config.activation);
  std::mt19937_64 rng(MixSeed(config.seed, "init"));
  model.nnet.InitGlorot(rng);
  model.priors = EstimatePriors(AllLabels(data), state_map.NumStates());
  TrainResult res = RunTraining(std::move(model), data, config);
  res.model.metadata.epochs = res.epochs_run;
  return res;
}

TrainResult ContinueTraining(const AcousticModel &model,
                             const std::vector<TrainingUtterance> &data,
                             const TrainConfig &config) {
  model.Check();
  AcousticModel start = model;
  ValidateData(data, start.NumStates(), start.FeatureDim());
  start.priors = EstimatePriors(AllLabels(data), start.NumStates());
  TrainResult res = RunTraining(std::move(start), data, config);
  res.model.metadata.epochs = model.metadata.epochs + res.epochs_run;
  return res;
}

TrainResult AdaptAcousticModel(const AcousticModel &model,
                               const std::vector<TrainingUtterance> &data,
                               const StateMap &labels_map, const TrainConfig &config) {
  model.Check();
  if (!(labels_map == model.state_map))
    XLASR_ERR << "adaptation labels use a state map of " << labels_map.NumStates()
              << " states that differs from the model's (" << model.NumStates() << ")";
  TrainResult res = RunTraining(model, data, config);
  res.model.priors = model.priors;
  res.model.metadata = model.metadata;
  res.model.metadata.adapted = true;
  res.model.metadata.adaptation_epochs = res.epochs_run;
  res.model.metadata.adapted_layers.clear();
  const auto frozen = FrozenMask(config.frozen_layers, model.nnet.NumLayers());
  for (int i = 0; i < model.nnet.NumLayers(); ++i)
    if (!frozen[i]) res.model.metadata.adapted_layers.push_back(i);
  res.model.metadata.adaptation_updates_bias = true;
  return res;
}

double MeanCrossEntropy(const AcousticModel &model,
                        const std::vector<TrainingUtterance> &data) {
  ValidateData(data, model.NumStates(), model.FeatureDim());
  double total = 0.0;
  long frames = 0;
  for (const auto &u : data) {
    Eigen::MatrixXf in = ModelInput(model, u.feats);
    total += model.nnet.ComputeLossAndGradient(in, u.labels, nullptr) * u.labels.size();
    frames += static_cast<long>(u.labels.size());
  }
  return total / std::max(1L, frames);
}

double FrameAccuracy(const AcousticModel &model, const std::vector<TrainingUtterance> &data) {
  ValidateData(data, model.NumStates(), model.FeatureDim());
  long correct = 0, frames = 0;
  for (const auto &u : data) {
    Eigen::MatrixXf logp = model.nnet.LogPosteriors(ModelInput(model, u.feats));
    for (Eigen::Index t = 0; t < logp.cols(); ++t) {
      Eigen::Index best;
      logp.col(t).maxCoeff(&best);
      correct += best == u.labels[t];
      ++frames;
    }
  }
  return frames == 0 ? 0.0 : static_cast<double>(correct) / frames;
}

}  // namespace xlasr
