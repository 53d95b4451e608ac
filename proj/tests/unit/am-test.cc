// unit/am-test.cc

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

#include <cmath>
#include <random>
#include <sstream>

#include "am/acoustic-model.h"
#include "am/nnet-train.h"
#include "doctest.h"
#include "frontend/synth-corpus.h"
#include "lexicon/lexicon.h"
#include "test-util.h"

namespace xlasr {

namespace {

TrainConfig SmallConfig(int hidden_layers = 1, int hidden_dim = 32) {
  TrainConfig c;
  c.hidden_layers = hidden_layers;
  c.hidden_dim = hidden_dim;
  c.context = 2;
  c.max_epochs = 10;
  c.seed = 3;
  return c;
}

AcousticModel ZeroModel(int dim, int context, const StateMap &map) {
  AcousticModel m;
  m.context = context;
  m.state_map = map;
  m.nnet = Nnet<float>({dim * (2 * context + 1), 8, map.NumStates()}, Activation::kSigmoid);
  m.priors.assign(map.NumStates(), 1.0 / map.NumStates());
  m.feature_fingerprint = "test";
  return m;
}

// Utterances of 10-frame blocks; block class c has mean (2c - 1) * sep in
// every dimension.
std::vector<TrainingUtterance> TwoClassData(int num_utts, double sep, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<TrainingUtterance> out(num_utts);
  for (int u = 0; u < num_utts; ++u) {
    auto &utt = out[u];
    utt.utt_id = "u" + std::to_string(seed) + "-" + std::to_string(u);
    const int blocks = 10, T = blocks * 10;
    utt.feats.data.resize(T, 13);
    for (int b = 0; b < blocks; ++b) {
      int c = b % 2 == 0 ? UniformInt(rng, 0, 1) : 1 - utt.labels.back();
      for (int k = 0; k < 10; ++k) {
        int t = b * 10 + k;
        for (int d = 0; d < 13; ++d)
          utt.feats.data(t, d) = static_cast<float>((2 * c - 1) * sep + g(rng));
        utt.labels.push_back(c);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("state map") {
  StateMap merged = BuildStateMap(ReferenceInventory());
  CHECK(merged.NumStates() == 204);
  CHECK(merged.Phones().back() == "sil");
  StateMap one({"a"});
  CHECK(one.NumStates() == 6);
  CHECK(one.StateId("a", 2) == 2);
  CHECK(one.StateId("sil", 0) == 3);
  CHECK(StateMap({"b", "a", "b"}) == StateMap({"a", "b"}));
  CHECK(BuildStateMap(ReferenceInventory()) == merged);
  for (int s = 0; s < merged.NumStates(); ++s)
    CHECK(merged.StateId(merged.PhoneOfState(s), StateMap::HmmStateOf(s)) == s);
  CHECK_THROWS_AS(StateMap({"sil"}), Error);
  CHECK_THROWS_AS(StateMap(std::vector<PhoneSymbol>{}), Error);
  CHECK_THROWS_AS(one.PhoneIndex("zz"), Error);

  std::vector<PhoneSegment> segs = one.SegmentsOf({0, 1, 2, 0, 2, 3, 4, 5});
  REQUIRE(segs.size() == 3);
  CHECK(segs[0] == PhoneSegment{"a", 0, 3});
  CHECK(segs[1] == PhoneSegment{"a", 3, 5});
  CHECK(segs[2] == PhoneSegment{"sil", 5, 8});
}

TEST_CASE("backprop matches central finite differences") {
  std::mt19937_64 rng(19);
  const Activation acts[] = {Activation::kSigmoid, Activation::kTanh, Activation::kRelu};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> dims = {UniformInt(rng, 2, 6)};
    for (int h = UniformInt(rng, 0, 2); h > 0; --h) dims.push_back(UniformInt(rng, 2, 7));
    dims.push_back(UniformInt(rng, 2, 5));
    Nnet<double> net(dims, acts[trial % 3]);
    net.InitGlorot(rng);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int l = 0; l < net.NumLayers(); ++l)
      for (Eigen::Index i = 0; i < net.GetLayer(l).bias.size(); ++i)
        net.GetLayer(l).bias(i) = 0.3 * g(rng);
    const int B = UniformInt(rng, 1, 6);
    Nnet<double>::Matrix x(dims.front(), B);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
    std::vector<int> y(B);
    for (auto &v : y) v = UniformInt(rng, 0, dims.back() - 1);

    std::vector<Nnet<double>::Layer> grads;
    net.ComputeLossAndGradient(x, y, &grads);
    const double h = 1e-6;
    double worst = 0.0;
    auto check = [&](double *param, double analytic) {
      const double saved = *param;
      *param = saved + h;
      double up = net.ComputeLossAndGradient(x, y, nullptr);
      *param = saved - h;
      double down = net.ComputeLossAndGradient(x, y, nullptr);
      *param = saved;
      double numeric = (up - down) / (2 * h);
      double err = std::abs(numeric - analytic) /
                   std::max(1e-6, std::abs(numeric) + std::abs(analytic));
      worst = std::max(worst, err);
    };
    for (int l = 0; l < net.NumLayers(); ++l) {
      auto &layer = net.GetLayer(l);
      for (Eigen::Index i = 0; i < layer.weights.size(); ++i)
        check(layer.weights.data() + i, grads[l].weights(i));
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i)
        check(layer.bias.data() + i, grads[l].bias(i));
    }
    CAPTURE(trial);
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("gradients of frozen layers are not computed") {
  std::mt19937_64 rng(2);
  Nnet<double> net({3, 4, 4, 2}, Activation::kTanh);
  net.InitGlorot(rng);
  Nnet<double>::Matrix x = Nnet<double>::Matrix::Random(3, 5);
  std::vector<int> y = {0, 1, 1, 0, 1};
  std::vector<Nnet<double>::Layer> full, last;
  net.ComputeLossAndGradient(x, y, &full);
  net.ComputeLossAndGradient(x, y, &last, 2);
  CHECK(last[0].weights.size() == 0);
  CHECK(last[1].weights.size() == 0);
  CHECK(last[2].weights == full[2].weights);
  CHECK(last[2].bias == full[2].bias);
}

TEST_CASE("priors") {
  std::vector<double> p = EstimatePriors({std::vector<int>(100, 3)}, 4);
  CHECK(std::abs(p[3] - 101.0 / 104.0) < 1e-15);
  for (int s = 0; s < 3; ++s) CHECK(std::abs(p[s] - 1.0 / 104.0) < 1e-15);
  std::vector<double> u = EstimatePriors({{0, 1, 2}, {2, 1, 0}}, 3);
  for (double v : u) CHECK(std::abs(v - 1.0 / 3.0) < 1e-15);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    int K = UniformInt(rng, 1, 30);
    std::vector<std::vector<int>> ali(UniformInt(rng, 1, 5));
    for (auto &a : ali)
      for (int n = UniformInt(rng, 1, 50); n > 0; --n) a.push_back(UniformInt(rng, 0, K - 1));
    auto q = EstimatePriors(ali, K);
    double sum = 0.0;
    for (double v : q) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(EstimatePriors({}, 3), Error);
  CHECK_THROWS_AS(EstimatePriors({{5}}, 3), Error);
}

TEST_CASE("posteriors and scaled likelihoods") {
  StateMap map({"a", "b"});
  AcousticModel zero = ZeroModel(4, 1, map);
  FeatureMatrix f;
  f.data = FeatureData::Random(7, 4);
  Eigen::MatrixXd post = ComputePosteriors(zero, f);
  REQUIRE(post.rows() == 7);
  REQUIRE(post.cols() == 9);
  for (int t = 0; t < 7; ++t)
    for (int s = 0; s < 9; ++s) CHECK(std::abs(post(t, s) - 1.0 / 9.0) < 1e-6);

  std::mt19937_64 rng(8);
  zero.nnet.InitGlorot(rng);
  post = ComputePosteriors(zero, f);
  for (int t = 0; t < 7; ++t) CHECK(std::abs(post.row(t).sum() - 1.0) < 1e-6);

  Eigen::MatrixXd hand(1, 2);
  hand << 0.8, 0.2;
  Eigen::MatrixXd ll = ScaledLogLikelihoodsFromPosteriors(hand, {0.5, 0.5}, 1.0);
  CHECK(std::abs((ll(0, 0) - ll(0, 1)) - std::log(0.8 / 0.2)) < 1e-12);
  Eigen::MatrixXd skew = ScaledLogLikelihoodsFromPosteriors(hand, {0.8, 0.2}, 1.0);
  CHECK(std::abs(skew(0, 0) - skew(0, 1)) < 1e-12);

  FeatureMatrix wrong;
  wrong.data = FeatureData::Random(7, 5);
  CHECK_THROWS_AS(ComputePosteriors(zero, wrong), Error);
}

TEST_CASE("a single class is learned") {
  StateMap map({"a"});
  std::vector<TrainingUtterance> data = TwoClassData(30, 1.0, 5);
  for (auto &u : data) std::fill(u.labels.begin(), u.labels.end(), 0);
  std::vector<TrainingUtterance> test = TwoClassData(5, 1.0, 6);
  for (auto &u : test) std::fill(u.labels.begin(), u.labels.end(), 0);
  TrainConfig c = SmallConfig();
  c.schedule = LrSchedule::kFixed;
  TrainResult r = TrainAcousticModel(data, map, "test", c);
  CHECK(MeanCrossEntropy(r.model, test) < 0.01);
  CHECK(r.final_train_loss <= r.initial_train_loss);
}

TEST_CASE("two separable Gaussian classes") {
  StateMap map({"a"});
  // 100 utterances of 100 frames: about 5k frames per class.
  std::vector<TrainingUtterance> data = TwoClassData(100, 1.5, 7);
  std::vector<TrainingUtterance> test = TwoClassData(20, 1.5, 8);
  TrainResult r = TrainAcousticModel(data, map, "test", SmallConfig());
  CHECK(FrameAccuracy(r.model, test) > 0.99);
  CHECK(r.final_train_loss <= r.initial_train_loss);
  for (size_t i = 1; i < r.heldout_loss.size(); ++i)
    CHECK(r.heldout_loss[i] <= r.heldout_loss[i - 1]);

  SUBCASE("deterministic and serializable") {
    TrainResult again = TrainAcousticModel(data, map, "test", SmallConfig());
    CHECK(again.model == r.model);
    std::string path = ScratchDir("am-model") + "/m.xlam";
    WriteAcousticModel(r.model, path);
    AcousticModel back = ReadAcousticModel(path);
    CHECK(back == r.model);
    CHECK(back.metadata.seed == r.model.metadata.seed);
    CHECK(back.metadata.epochs == r.model.metadata.epochs);
    std::ostringstream a, b;
    r.model.Write(a);
    back.Write(b);
    CHECK(a.str() == b.str());
  }

  SUBCASE("corrupt model files are rejected") {
    std::ostringstream os;
    r.model.Write(os);
    std::string bytes = os.str();
    std::istringstream truncated(bytes.substr(0, bytes.size() / 2));
    AcousticModel m;
    CHECK_THROWS_AS(m.Read(truncated), Error);
    bytes[0] = 'Y';
    std::istringstream bad_magic(bytes);
    CHECK_THROWS_AS(m.Read(bad_magic), Error);
  }

  SUBCASE("freezing") {
    TrainConfig ac = TrainConfig::AdaptationDefaults(SmallConfig(2, 16));
    TrainResult deep = TrainAcousticModel(data, map, "test", SmallConfig(2, 16));
    std::vector<TrainingUtterance> shifted = TwoClassData(20, 1.0, 9);
    TrainResult adapted = AdaptAcousticModel(deep.model, shifted, map, ac);
    const int L = deep.model.nnet.NumLayers();
    REQUIRE(L == 3);
    for (int l = 0; l + 1 < L; ++l)
      CHECK(LayerHash(adapted.model.nnet, l) == LayerHash(deep.model.nnet, l));
    CHECK(LayerHash(adapted.model.nnet, L - 1) != LayerHash(deep.model.nnet, L - 1));
    CHECK(adapted.model.priors == deep.model.priors);
    CHECK(adapted.model.metadata.adapted_layers == std::vector<int>{L - 1});

    ac.max_epochs = 0;
    TrainResult none = AdaptAcousticModel(deep.model, shifted, map, ac);
    CHECK(none.model == deep.model);

    TrainConfig partial = SmallConfig(2, 16);
    partial.frozen_layers = "0";
    partial.max_epochs = 2;
    TrainResult cont = ContinueTraining(deep.model, shifted, partial);
    CHECK(LayerHash(cont.model.nnet, 0) == LayerHash(deep.model.nnet, 0));
    CHECK(LayerHash(cont.model.nnet, 1) != LayerHash(deep.model.nnet, 1));

    CHECK_THROWS_AS(AdaptAcousticModel(deep.model, shifted, StateMap({"b", "c"}), ac),
                    Error);
  }
}

TEST_CASE("frozen-layer selectors") {
  CHECK(FrozenMask("none", 3) == std::vector<bool>{false, false, false});
  CHECK(FrozenMask("all-but-last", 3) == std::vector<bool>{true, true, false});
  CHECK(FrozenMask("0,2", 3) == std::vector<bool>{true, false, true});
  CHECK_THROWS_AS(FrozenMask("3", 3), Error);
  CHECK_THROWS_AS(FrozenMask("first", 3), Error);
}

TEST_CASE("invalid labels are rejected") {
  StateMap map({"a"});
  std::vector<TrainingUtterance> data = TwoClassData(3, 1.0, 1);
  data[1].labels[4] = 6;
  CHECK_THROWS_AS(TrainAcousticModel(data, map, "test", SmallConfig()), Error);
}

TEST_CASE("adaptation to accented speech lowers held-out loss") {
  // Two toy languages sharing phones a, b; "de" adds x, "it" adds y.
  PhoneInventory inv;
  for (auto p : {"a", "b", "x"}) inv.Add(p, "de");
  for (auto p : {"a", "b", "y"}) inv.Add(p, "it");
  SynthSpaceParams params;
  params.language_spread = 3.0;
  SynthSpec spec = GenerateSynthSpec(inv, params, 13);
  spec.interference_weight = 0.6;
  spec.substitution_rate = 0.0;

  Lexicon de("de");
  de.AddPronunciation("ab", {"a", "b"});
  de.AddPronunciation("xa", {"x", "a"});
  de.AddPronunciation("bx", {"b", "x"});
  StateMap map = BuildStateMap(inv.Restrict("de"));

  auto make = [&](const std::string &prefix, const std::string &l1, int n) {
    std::mt19937_64 rng(MixSeed(7, prefix));
    const std::vector<std::string> words = {"ab", "xa", "bx"};
    std::vector<TrainingUtterance> out;
    for (int i = 0; i < n; ++i) {
      UtteranceRecord r;
      r.utt_id = prefix + std::to_string(i);
      r.mother_language = l1;
      r.spoken_language = "de";
      for (int k = 0; k < 6; ++k) r.transcript.push_back(words[UniformInt(rng, 0, 2)]);
      SynthUtterance s = SynthesizeUtterance(r, de, spec);
      out.push_back({r.utt_id, s.feats, map.ToAlignment(s.oracle).frame_states});
    }
    return out;
  };
  std::vector<TrainingUtterance> native = make("nat", "de", 60);
  std::vector<TrainingUtterance> ada = make("ada", "it", 30);
  std::vector<TrainingUtterance> heldout = make("eval", "it", 15);

  TrainConfig c = SmallConfig(1, 48);
  c.max_epochs = 8;
  TrainResult base = TrainAcousticModel(native, map, "synth", c);
  TrainResult adapted =
      AdaptAcousticModel(base.model, ada, map, TrainConfig::AdaptationDefaults(c));
  double before = MeanCrossEntropy(base.model, heldout);
  double after = MeanCrossEntropy(adapted.model, heldout);
  CAPTURE(before);
  CAPTURE(after);
  CHECK(after < before);
}

}  // namespace xlasr
