// am/acoustic-model.cc

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

#include "am/acoustic-model.h"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "base/binary-io.h"
#include "base/xlasr-common.h"
#include "json.hpp"

namespace xlasr {

std::string ActivationName(Activation a) {
  switch (a) {
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kTanh: return "tanh";
    case Activation::kRelu: return "relu";
  }
  return "?";
}

Activation ParseActivation(const std::string &name) {
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  XLASR_ERR << "unknown activation '" << name << "'";
}

void AcousticModel::Check() const {
  if (nnet.NumLayers() == 0) XLASR_ERR << "acoustic model has no layers";
  if (context < 0) XLASR_ERR << "negative context";
  if (nnet.InputDim() % (2 * context + 1) != 0)
    XLASR_ERR << "input dim " << nnet.InputDim() << " not a multiple of the "
              << 2 * context + 1 << "-frame splice";
  if (nnet.OutputDim() != NumStates())
    XLASR_ERR << "output dim " << nnet.OutputDim() << " != " << NumStates() << " states";
  if (static_cast<int>(priors.size()) != NumStates())
    XLASR_ERR << "prior vector has " << priors.size() << " entries for " << NumStates()
              << " states";
  double sum = 0.0;
  for (double p : priors) {
    if (!(p > 0)) XLASR_ERR << "state priors must be positive";
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) XLASR_ERR << "state priors sum to " << sum;
}

namespace {
constexpr char kModelMagic[4] = {'X', 'L', 'A', 'M'};
constexpr uint32_t kModelVersion = 1;
}  // namespace

void AcousticModel::Write(std::ostream &os) const {
  Check();
  nlohmann::ordered_json meta;
  meta["dims"] = nnet.Dims();
  meta["activation"] = ActivationName(nnet.GetActivation());
  meta["context"] = context;
  meta["input_transform"] = "cmvn+splice";
  meta["feature_fingerprint"] = feature_fingerprint;
  std::vector<std::string> phones(state_map.Phones().begin(),
                                  state_map.Phones().end() - 1);  // without silence
  meta["phones"] = phones;
  meta["priors"] = priors;
  auto &tr = meta["training"];
  tr["seed"] = metadata.seed;
  tr["epochs"] = metadata.epochs;
  tr["adapted"] = metadata.adapted;
  tr["adaptation_epochs"] = metadata.adaptation_epochs;
  tr["adapted_layers"] = metadata.adapted_layers;
  tr["adaptation_updates_bias"] = metadata.adaptation_updates_bias;
  tr["notes"] = metadata.notes;

  os.write(kModelMagic, 4);
  WriteU32LE(os, kModelVersion);
  WriteLenString(os, meta.dump());
  for (const auto &layer : nnet.Layers()) {
    WriteU32LE(os, static_cast<uint32_t>(layer.weights.rows()));
    WriteU32LE(os, static_cast<uint32_t>(layer.weights.cols()));
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
        WriteF32LE(os, layer.weights(i, j));
    WriteU32LE(os, static_cast<uint32_t>(layer.bias.size()));
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) WriteF32LE(os, layer.bias(i));
  }
  if (!os) XLASR_ERR << "failed writing acoustic model";
}

void AcousticModel::Read(std::istream &is) {
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() != 4 || std::string(magic, 4) != std::string(kModelMagic, 4))
    XLASR_ERR << "not an acoustic model file (bad magic)";
  uint32_t version = ReadU32LE(is);
  if (version != kModelVersion) XLASR_ERR << "unsupported model version " << version;
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(ReadLenString(is));
    auto dims = meta.at("dims").get<std::vector<int>>();
    nnet = Nnet<float>(dims, ParseActivation(meta.at("activation").get<std::string>()));
    context = meta.at("context").get<int>();
    if (meta.at("input_transform").get<std::string>() != "cmvn+splice")
      XLASR_ERR << "unsupported input transform";
    feature_fingerprint = meta.at("feature_fingerprint").get<std::string>();
    state_map = StateMap(meta.at("phones").get<std::vector<std::string>>());
    priors = meta.at("priors").get<std::vector<double>>();
    const auto &tr = meta.at("training");
    metadata.seed = tr.at("seed").get<uint64_t>();
    metadata.epochs = tr.at("epochs").get<int>();
    metadata.adapted = tr.at("adapted").get<bool>();
    metadata.adaptation_epochs = tr.at("adaptation_epochs").get<int>();
    metadata.adapted_layers = tr.at("adapted_layers").get<std::vector<int>>();
    metadata.adaptation_updates_bias = tr.at("adaptation_updates_bias").get<bool>();
    metadata.notes = tr.at("notes").get<std::string>();
  } catch (const nlohmann::json::exception &e) {
    XLASR_ERR << "bad model metadata: " << e.what();
  }
  for (int l = 0; l < nnet.NumLayers(); ++l) {
    auto &layer = nnet.GetLayer(l);
    uint32_t rows = ReadU32LE(is), cols = ReadU32LE(is);
    if (rows != layer.weights.rows() || cols != layer.weights.cols())
      XLASR_ERR << "layer " << l << " shape disagrees with metadata";
    for (uint32_t i = 0; i < rows; ++i)
      for (uint32_t j = 0; j < cols; ++j) layer.weights(i, j) = ReadF32LE(is);
    uint32_t n = ReadU32LE(is);
    if (n != layer.bias.size()) XLASR_ERR << "layer " << l << " bias size mismatch";
    for (uint32_t i = 0; i < n; ++i) layer.bias(i) = ReadF32LE(is);
  }
  Check();
}

bool AcousticModel::operator==(const AcousticModel &o) const {
  return nnet == o.nnet && state_map == o.state_map && priors == o.priors &&
         feature_fingerprint == o.feature_fingerprint && context == o.context;
}

void WriteAcousticModel(const AcousticModel &model, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) XLASR_ERR << "cannot write " << path;
  model.Write(os);
}

AcousticModel ReadAcousticModel(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) XLASR_ERR << "cannot open " << path;
  AcousticModel m;
  try {
    m.Read(is);
  } catch (const Error &e) {
    XLASR_ERR << path << ": " << e.what();
  }
  return m;
}

uint64_t LayerHash(const Nnet<float> &nnet, int layer) {
  const auto &l = nnet.GetLayer(layer);
  std::string bytes(reinterpret_cast<const char *>(l.weights.data()),
                    l.weights.size() * sizeof(float));
  bytes.append(reinterpret_cast<const char *>(l.bias.data()), l.bias.size() * sizeof(float));
  return Fnv1a64(bytes);
}

Eigen::MatrixXf SpliceFrames(const FeatureData &feats, int context) {
  const Eigen::Index T = feats.rows(), D = feats.cols();
  const int width = 2 * context + 1;
  Eigen::MatrixXf out(width * D, T);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (int k = -context; k <= context; ++k) {
      Eigen::Index src = std::clamp<Eigen::Index>(t + k, 0, T - 1);
      out.block((k + context) * D, t, D, 1) = feats.row(src).transpose();
    }
  }
  return out;
}

Eigen::MatrixXf ModelInput(const AcousticModel &model, const FeatureMatrix &feats) {
  if (feats.Dim() != model.FeatureDim())
    XLASR_ERR << "feature dim " << feats.Dim() << " does not match model input dim "
              << model.FeatureDim();
  return SpliceFrames(ApplyCmvn(feats).data, model.context);
}

std::vector<double> EstimatePriors(const std::vector<std::vector<int>> &alignments,
                                   int num_states) {
  if (num_states <= 0) XLASR_ERR << "need a positive number of states";
  std::vector<double> counts(num_states, 0.0);
  long total = 0;
  for (const auto &ali : alignments)
    for (int s : ali) {
      if (s < 0 || s >= num_states) XLASR_ERR << "state id " << s << " out of range";
      counts[s] += 1.0;
      ++total;
    }
  if (total == 0) XLASR_ERR << "cannot estimate priors from an empty alignment set";
  const double denom = static_cast<double>(total) + num_states;
  std::vector<double> priors(num_states);
  for (int s = 0; s < num_states; ++s) priors[s] = (counts[s] + 1.0) / denom;
  return priors;
}

Eigen::MatrixXd ComputePosteriors(const AcousticModel &model, const FeatureMatrix &feats) {
  Eigen::MatrixXf logp = model.nnet.LogPosteriors(ModelInput(model, feats));
  return logp.cast<double>().array().exp().matrix().transpose();
}

Eigen::MatrixXd ScaledLogLikelihoodsFromPosteriors(const Eigen::MatrixXd &posteriors,
                                                   const std::vector<double> &priors,
                                                   double prior_scale) {
  if (posteriors.cols() != static_cast<Eigen::Index>(priors.size()))
    XLASR_ERR << "posterior dim " << posteriors.cols() << " != " << priors.size()
              << " priors";
  Eigen::MatrixXd out(posteriors.rows(), posteriors.cols());
  for (Eigen::Index s = 0; s < posteriors.cols(); ++s) {
    double lp = prior_scale * std::log(priors[s]);
    for (Eigen::Index t = 0; t < posteriors.rows(); ++t)
      out(t, s) = std::log(std::max(posteriors(t, s), 1e-300)) - lp;
  }
  return out;
}

Eigen::MatrixXd ScaledLogLikelihoods(const AcousticModel &model,
                                     const FeatureMatrix &feats, double prior_scale) {
  Eigen::MatrixXf logp = model.nnet.LogPosteriors(ModelInput(model, feats));
  Eigen::MatrixXd out = logp.cast<double>().transpose();
  for (Eigen::Index s = 0; s < out.cols(); ++s)
    out.col(s).array() -= prior_scale * std::log(model.priors[s]);
  return out;
}

}  // namespace xlasr
