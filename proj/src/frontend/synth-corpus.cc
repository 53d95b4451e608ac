// frontend/synth-corpus.cc

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

#include "frontend/synth-corpus.h"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "base/xlasr-common.h"
#include "json.hpp"

namespace xlasr {

std::vector<double> PhoneGaussian::StateMean(int state) const {
  std::vector<double> m = mean;
  for (size_t d = 0; d < m.size(); ++d) m[d] += state_offsets[state][d];
  return m;
}

void SynthSpec::Check() const {
  if (dim <= 0) XLASR_ERR << "synthesis dimension must be positive";
  if (interference_weight < 0 || interference_weight > 1)
    XLASR_ERR << "interference weight must be in [0, 1]";
  if (substitution_rate < 0 || substitution_rate > 1)
    XLASR_ERR << "substitution rate must be in [0, 1]";
  if (min_frames < 3 || max_frames < min_frames)
    XLASR_ERR << "phone durations need 3 <= min_frames <= max_frames";
  for (const auto &[p, r] : duration_overrides)
    if (r.first < 3 || r.second < r.first)
      XLASR_ERR << "bad duration range for phone " << p;
  for (const auto &[key, g] : gaussians) {
    if (static_cast<int>(g.mean.size()) != dim ||
        static_cast<int>(g.variance.size()) != dim)
      XLASR_ERR << "Gaussian of " << key.first << "/" << key.second
                << " has wrong dimension";
    for (const auto &o : g.state_offsets)
      if (static_cast<int>(o.size()) != dim)
        XLASR_ERR << "state offsets of " << key.first << "/" << key.second
                  << " have wrong dimension";
    for (double v : g.variance)
      if (!(v > 0)) XLASR_ERR << "non-positive variance for " << key.first;
  }
}

const PhoneGaussian &SynthSpec::Gaussian(const PhoneSymbol &phone,
                                         const LanguageCode &language) const {
  auto it = gaussians.find({phone, language});
  if (it == gaussians.end())
    XLASR_ERR << "no synthesis entry for phone '" << phone << "' in " << language;
  return it->second;
}

std::pair<int, int> SynthSpec::DurationRange(const PhoneSymbol &phone) const {
  auto it = duration_overrides.find(phone);
  return it == duration_overrides.end() ? std::make_pair(min_frames, max_frames)
                                        : it->second;
}

std::string SynthSpec::Fingerprint() const {
  return "synth:" + HexDigest(Fnv1a64(ToJson()));
}

std::string SynthSpec::ToJson() const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["dim"] = dim;
  j["interference_weight"] = interference_weight;
  j["substitution_rate"] = substitution_rate;
  j["min_frames"] = min_frames;
  j["max_frames"] = max_frames;
  j["seed"] = seed;
  auto &dur = j["duration_overrides"] = nlohmann::ordered_json::object();
  for (const auto &[p, r] : duration_overrides) dur[p] = {r.first, r.second};
  auto &gs = j["gaussians"] = nlohmann::ordered_json::array();
  for (const auto &[key, g] : gaussians) {
    nlohmann::ordered_json e;
    e["phone"] = key.first;
    e["language"] = key.second;
    e["mean"] = g.mean;
    e["state_offsets"] = {g.state_offsets[0], g.state_offsets[1], g.state_offsets[2]};
    e["variance"] = g.variance;
    gs.push_back(std::move(e));
  }
  return j.dump();
}

SynthSpec SynthSpec::FromJson(const std::string &text) {
  SynthSpec s;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != 1) XLASR_ERR << "unsupported synth spec version";
    s.dim = j.at("dim").get<int>();
    s.interference_weight = j.at("interference_weight").get<double>();
    s.substitution_rate = j.at("substitution_rate").get<double>();
    s.min_frames = j.at("min_frames").get<int>();
    s.max_frames = j.at("max_frames").get<int>();
    s.seed = j.at("seed").get<uint64_t>();
    for (const auto &[p, r] : j.at("duration_overrides").items())
      s.duration_overrides[p] = {r.at(0).get<int>(), r.at(1).get<int>()};
    for (const auto &e : j.at("gaussians")) {
      PhoneGaussian g;
      g.mean = e.at("mean").get<std::vector<double>>();
      for (int k = 0; k < 3; ++k)
        g.state_offsets[k] = e.at("state_offsets").at(k).get<std::vector<double>>();
      g.variance = e.at("variance").get<std::vector<double>>();
      s.gaussians[{e.at("phone").get<std::string>(), e.at("language").get<std::string>()}] =
          std::move(g);
    }
  } catch (const nlohmann::json::exception &e) {
    XLASR_ERR << "bad synth spec: " << e.what();
  }
  s.Check();
  return s;
}

SynthSpec GenerateSynthSpec(const PhoneInventory &inventory,
                            const SynthSpaceParams &params, uint64_t seed) {
  SynthSpec spec;
  spec.dim = params.dim;
  spec.seed = seed;
  const int D = params.dim;
  auto draw = [&](std::mt19937_64 &rng, double scale) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(D);
    for (auto &x : v) x = scale * g(rng);
    return v;
  };
  for (const auto &[phone, langs] : inventory.Membership()) {
    std::mt19937_64 phone_rng(MixSeed(seed, "phone:" + phone));
    std::vector<double> centre = draw(phone_rng, params.phone_spread);
    std::array<std::vector<double>, 3> offsets;
    for (auto &o : offsets) o = draw(phone_rng, params.state_spread);
    for (const auto &lang : langs) {
      std::mt19937_64 rng(MixSeed(seed, "lang:" + lang + ":" + phone));
      PhoneGaussian g;
      std::vector<double> shift = draw(rng, params.language_spread);
      g.mean.resize(D);
      for (int d = 0; d < D; ++d) g.mean[d] = centre[d] + shift[d];
      g.state_offsets = offsets;
      std::uniform_real_distribution<double> u(0.8, 1.2);
      g.variance.resize(D);
      for (int d = 0; d < D; ++d) g.variance[d] = params.noise_variance * u(rng);
      spec.gaussians[{phone, lang}] = std::move(g);
    }
  }
  spec.Check();
  return spec;
}

PhoneSymbol NearestPhone(const SynthSpec &spec, const PhoneSymbol &phone,
                         const LanguageCode &spoken, const LanguageCode &mother) {
  if (spec.Has(phone, mother)) return phone;
  const auto &target = spec.Gaussian(phone, spoken).mean;
  double best = std::numeric_limits<double>::infinity();
  PhoneSymbol best_phone;
  for (const auto &[key, g] : spec.gaussians) {
    if (key.second != mother) continue;
    double d2 = 0.0;
    for (size_t d = 0; d < target.size(); ++d) {
      double diff = g.mean[d] - target[d];
      d2 += diff * diff;
    }
    if (d2 < best) {
      best = d2;
      best_phone = key.first;
    }
  }
  if (best_phone.empty())
    XLASR_ERR << "no synthesis entries for mother language " << mother;
  return best_phone;
}

PhoneGaussian RealizePhone(const SynthSpec &spec, const PhoneSymbol &phone,
                           const LanguageCode &spoken, const LanguageCode &mother,
                           std::mt19937_64 &rng, bool *substituted) {
  *substituted = false;
  const PhoneGaussian &native = spec.Gaussian(phone, spoken);
  if (spoken == mother) return native;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const PhoneGaussian &foreign =
      spec.Gaussian(NearestPhone(spec, phone, spoken, mother), mother);
  if (unit(rng) < spec.substitution_rate) {
    *substituted = true;
    return foreign;
  }
  const double a = spec.interference_weight;
  PhoneGaussian realized = native;
  for (int d = 0; d < spec.dim; ++d) {
    realized.mean[d] = (1 - a) * native.mean[d] + a * foreign.mean[d];
    for (int s = 0; s < 3; ++s)
      realized.state_offsets[s][d] =
          (1 - a) * native.state_offsets[s][d] + a * foreign.state_offsets[s][d];
  }
  return realized;
}

SynthUtterance SynthesizeUtterance(const UtteranceRecord &record,
                                   const Lexicon &spoken_lexicon, const SynthSpec &spec) {
  const std::string &l1 = record.mother_language, &l2 = record.spoken_language;
  std::mt19937_64 rng(MixSeed(spec.seed, record.utt_id));
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<PhoneSymbol> phones;
  for (const auto &word : record.transcript) {
    const auto *prons = spoken_lexicon.Lookup(word);
    if (prons == nullptr)
      XLASR_ERR << "utterance " << record.utt_id << ": word '" << word
                << "' not in the " << l2 << " lexicon";
    std::uniform_int_distribution<size_t> pick(0, prons->size() - 1);
    const auto &pron = (*prons)[prons->size() == 1 ? 0 : pick(rng)];
    phones.insert(phones.end(), pron.begin(), pron.end());
  }

  SynthUtterance utt;
  utt.num_phones = static_cast<int>(phones.size());
  std::vector<std::vector<double>> frames;
  for (const auto &phone : phones) {
    bool substituted = false;
    PhoneGaussian realized = RealizePhone(spec, phone, l2, l1, rng, &substituted);
    if (substituted) ++utt.num_substituted;
    auto [lo, hi] = spec.DurationRange(phone);
    int duration = std::uniform_int_distribution<int>(lo, hi)(rng);
    int start = static_cast<int>(frames.size());
    for (int s = 0; s < 3; ++s) {
      int len = duration / 3 + (s < duration % 3 ? 1 : 0);
      std::vector<double> mu = realized.StateMean(s);
      for (int k = 0; k < len; ++k) {
        std::vector<double> x(spec.dim);
        for (int d = 0; d < spec.dim; ++d)
          x[d] = mu[d] + std::sqrt(realized.variance[d]) * gauss(rng);
        frames.push_back(std::move(x));
        utt.oracle.hmm_states.push_back(s);
      }
    }
    utt.oracle.segments.push_back({phone, start, static_cast<int>(frames.size())});
  }

  utt.feats.fingerprint = spec.Fingerprint();
  utt.feats.data.resize(static_cast<Eigen::Index>(frames.size()), spec.dim);
  for (size_t t = 0; t < frames.size(); ++t)
    for (int d = 0; d < spec.dim; ++d)
      utt.feats.data(static_cast<Eigen::Index>(t), d) = static_cast<float>(frames[t][d]);
  return utt;
}

std::map<std::string, SynthUtterance> SynthesizeCorpus(
    const CorpusManifest &manifest, const std::map<LanguageCode, Lexicon> &lexica,
    const SynthSpec &spec) {
  spec.Check();
  std::map<std::string, SynthUtterance> out;
  for (const auto &r : manifest.Records()) {
    auto it = lexica.find(r.spoken_language);
    if (it == lexica.end())
      XLASR_ERR << "no lexicon for spoken language " << r.spoken_language;
    out.emplace(r.utt_id, SynthesizeUtterance(r, it->second, spec));
  }
  return out;
}

}  // namespace xlasr
