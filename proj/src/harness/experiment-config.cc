// harness/experiment-config.cc

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

#include "harness/experiment-config.h"

#include <cmath>
#include <filesystem>
#include <set>

#include "json.hpp"

namespace xlasr {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void CheckKeys(const json &j, const std::string &where, const std::set<std::string> &allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto &[k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <typename T>
void Get(const json &j, const char *key, T *out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

ordered_json BeamJson(double beam) {
  if (std::isinf(beam)) return nullptr;
  return beam;
}

}  // namespace

void ExperimentConfig::Check() const {
  try {
    if (languages.empty()) XLASR_ERR << "no languages configured";
    std::set<LanguageCode> langs(languages.begin(), languages.end());
    if (langs.size() != languages.size()) XLASR_ERR << "duplicate language in 'languages'";
    if (!synthetic_setup) {
      for (const auto &l : languages) {
        if (!lexica.count(l)) XLASR_ERR << "no lexicon configured for " << l;
        if (!lm_texts.count(l)) XLASR_ERR << "no LM text configured for " << l;
      }
      if (manifest.empty()) XLASR_ERR << "no manifest configured";
    } else {
      if (synthetic_setup->languages != languages)
        XLASR_ERR << "synthetic_setup.languages must equal languages";
    }
    if (interference_weight < 0 || interference_weight > 1)
      XLASR_ERR << "interference_weight must be in [0, 1]";
    if (substitution_rate < 0 || substitution_rate > 1)
      XLASR_ERR << "substitution_rate must be in [0, 1]";
    if (min_phone_frames < 3 || max_phone_frames < min_phone_frames)
      XLASR_ERR << "phone durations need 3 <= min <= max";
    frontend.Check();
    am.Check();
    if (realign_iterations < 0) XLASR_ERR << "realign_iterations must be non-negative";
    if (adaptation.epochs < 0) XLASR_ERR << "adaptation epochs must be non-negative";
    FrozenMask(adaptation.frozen_layers, am.hidden_layers + 1);
    if (adaptation.pooling != "raw" && adaptation.pooling != "balanced")
      XLASR_ERR << "adaptation pooling must be 'raw' or 'balanced'";
    if (!(decoder.beam > 0)) XLASR_ERR << "beam must be positive";
    if (!(decoder.scales.lm_scale >= 0)) XLASR_ERR << "lm_scale must be non-negative";
    std::set<std::string> names;
    for (const auto &r : runs) {
      if (r.name.empty()) XLASR_ERR << "run without a name";
      if (!names.insert(r.name).second) XLASR_ERR << "duplicate run name '" << r.name << "'";
      CheckModalityPairing(r.model, r.adaptation);
      if (!r.model.language.empty() && !langs.count(r.model.language))
        XLASR_ERR << "run " << r.name << ": unknown language " << r.model.language;
      if (!r.adaptation.language.empty() && !langs.count(r.adaptation.language))
        XLASR_ERR << "run " << r.name << ": unknown language " << r.adaptation.language;
    }
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
}

std::string ExperimentConfig::ResolvePath(const std::string &path) const {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

std::string ExperimentConfig::ToJson() const {
  ordered_json j;
  j["version"] = kVersion;
  j["name"] = name;
  j["languages"] = languages;
  j["inventory"] = inventory;
  if (synthetic_setup) {
    j["synthetic_setup"] = ordered_json::parse(synthetic_setup->ToJson());
  } else {
    j["lexica"] = lexica;
    j["lm_texts"] = lm_texts;
    j["manifest"] = manifest;
  }
  j["seed"] = seed;
  j["synth"] = {{"dim", synth_space.dim},
                {"phone_spread", synth_space.phone_spread},
                {"language_spread", synth_space.language_spread},
                {"state_spread", synth_space.state_spread},
                {"noise_variance", synth_space.noise_variance},
                {"interference_weight", interference_weight},
                {"substitution_rate", substitution_rate},
                {"min_phone_frames", min_phone_frames},
                {"max_phone_frames", max_phone_frames}};
  j["frontend"] = {{"sample_rate", frontend.sample_rate}, {"window_ms", frontend.window_ms},
                   {"shift_ms", frontend.shift_ms},       {"num_mels", frontend.num_mels},
                   {"num_ceps", frontend.num_ceps},       {"preemphasis", frontend.preemphasis},
                   {"low_freq", frontend.low_freq},       {"high_freq", frontend.high_freq}};
  j["am"] = {{"hidden_layers", am.hidden_layers},
             {"hidden_dim", am.hidden_dim},
             {"activation", ActivationName(am.activation)},
             {"context", am.context},
             {"learning_rate", am.learning_rate},
             {"min_improvement", am.min_improvement},
             {"minibatch_size", am.minibatch_size},
             {"max_epochs", am.max_epochs},
             {"heldout_fraction", am.heldout_fraction},
             {"realign_iterations", realign_iterations}};
  j["adaptation"] = {{"epochs", adaptation.epochs},
                     {"learning_rate", AdaptationTrainConfig().learning_rate},
                     {"frozen_layers", adaptation.frozen_layers},
                     {"pooling", adaptation.pooling}};
  j["decoder"] = {{"lm_scale", decoder.scales.lm_scale},
                  {"word_insertion_penalty", decoder.scales.word_insertion_penalty},
                  {"optional_silence", decoder.scales.optional_silence},
                  {"silence_penalty", decoder.scales.silence_penalty},
                  {"beam", BeamJson(decoder.beam)},
                  {"prior_scale", decoder.prior_scale}};
  auto &rs = j["runs"] = ordered_json::array();
  for (const auto &r : runs)
    rs.push_back({{"name", r.name}, {"model", r.model.Name()}, {"adaptation", r.adaptation.Name()}});
  return j.dump(2);
}

std::string ExperimentConfig::Hash() const { return HexDigest(Fnv1a64(ToJson())); }

TrainConfig ExperimentConfig::AdaptationTrainConfig() const {
  TrainConfig c = TrainConfig::AdaptationDefaults(am);
  c.max_epochs = adaptation.epochs;
  if (adaptation.learning_rate > 0) c.learning_rate = adaptation.learning_rate;
  c.frozen_layers = adaptation.frozen_layers;
  return c;
}

ExperimentConfig ParseExperimentConfig(const std::string &text, const std::string &base_dir) {
  ExperimentConfig c;
  c.base_dir = base_dir;
  try {
    json j = json::parse(text);
    CheckKeys(j, "config",
              {"version", "name", "languages", "inventory", "lexica", "lm_texts", "manifest",
               "synthetic_setup", "seed", "synth", "frontend", "am", "adaptation", "decoder",
               "runs"});
    if (!j.contains("version")) throw ConfigError("config lacks 'version'");
    if (j.at("version").get<int>() != ExperimentConfig::kVersion)
      throw ConfigError("unsupported config version " + j.at("version").dump());
    Get(j, "name", &c.name);
    Get(j, "languages", &c.languages);
    Get(j, "inventory", &c.inventory);
    Get(j, "lexica", &c.lexica);
    Get(j, "lm_texts", &c.lm_texts);
    Get(j, "manifest", &c.manifest);
    if (j.contains("synthetic_setup"))
      c.synthetic_setup = SyntheticSetupConfig::FromJson(j.at("synthetic_setup").dump());
    Get(j, "seed", &c.seed);
    if (j.contains("synth")) {
      const json &s = j.at("synth");
      CheckKeys(s, "synth",
                {"dim", "phone_spread", "language_spread", "state_spread", "noise_variance",
                 "interference_weight", "substitution_rate", "min_phone_frames",
                 "max_phone_frames"});
      Get(s, "dim", &c.synth_space.dim);
      Get(s, "phone_spread", &c.synth_space.phone_spread);
      Get(s, "language_spread", &c.synth_space.language_spread);
      Get(s, "state_spread", &c.synth_space.state_spread);
      Get(s, "noise_variance", &c.synth_space.noise_variance);
      Get(s, "interference_weight", &c.interference_weight);
      Get(s, "substitution_rate", &c.substitution_rate);
      Get(s, "min_phone_frames", &c.min_phone_frames);
      Get(s, "max_phone_frames", &c.max_phone_frames);
    }
    if (j.contains("frontend")) {
      const json &f = j.at("frontend");
      CheckKeys(f, "frontend",
                {"sample_rate", "window_ms", "shift_ms", "num_mels", "num_ceps", "preemphasis",
                 "low_freq", "high_freq"});
      Get(f, "sample_rate", &c.frontend.sample_rate);
      Get(f, "window_ms", &c.frontend.window_ms);
      Get(f, "shift_ms", &c.frontend.shift_ms);
      Get(f, "num_mels", &c.frontend.num_mels);
      Get(f, "num_ceps", &c.frontend.num_ceps);
      Get(f, "preemphasis", &c.frontend.preemphasis);
      Get(f, "low_freq", &c.frontend.low_freq);
      Get(f, "high_freq", &c.frontend.high_freq);
    }
    if (j.contains("am")) {
      const json &a = j.at("am");
      CheckKeys(a, "am",
                {"hidden_layers", "hidden_dim", "activation", "context", "learning_rate",
                 "min_improvement", "minibatch_size", "max_epochs", "heldout_fraction",
                 "realign_iterations"});
      Get(a, "hidden_layers", &c.am.hidden_layers);
      Get(a, "hidden_dim", &c.am.hidden_dim);
      if (a.contains("activation"))
        c.am.activation = ParseActivation(a.at("activation").get<std::string>());
      Get(a, "context", &c.am.context);
      Get(a, "learning_rate", &c.am.learning_rate);
      Get(a, "min_improvement", &c.am.min_improvement);
      Get(a, "minibatch_size", &c.am.minibatch_size);
      Get(a, "max_epochs", &c.am.max_epochs);
      Get(a, "heldout_fraction", &c.am.heldout_fraction);
      Get(a, "realign_iterations", &c.realign_iterations);
    }
    if (j.contains("adaptation")) {
      const json &a = j.at("adaptation");
      CheckKeys(a, "adaptation", {"epochs", "learning_rate", "frozen_layers", "pooling"});
      Get(a, "epochs", &c.adaptation.epochs);
      Get(a, "learning_rate", &c.adaptation.learning_rate);
      Get(a, "frozen_layers", &c.adaptation.frozen_layers);
      Get(a, "pooling", &c.adaptation.pooling);
    }
    if (j.contains("decoder")) {
      const json &d = j.at("decoder");
      CheckKeys(d, "decoder",
                {"lm_scale", "word_insertion_penalty", "optional_silence", "silence_penalty",
                 "beam", "prior_scale"});
      Get(d, "lm_scale", &c.decoder.scales.lm_scale);
      Get(d, "word_insertion_penalty", &c.decoder.scales.word_insertion_penalty);
      Get(d, "optional_silence", &c.decoder.scales.optional_silence);
      Get(d, "silence_penalty", &c.decoder.scales.silence_penalty);
      if (d.contains("beam") && !d.at("beam").is_null()) c.decoder.beam = d.at("beam").get<double>();
      Get(d, "prior_scale", &c.decoder.prior_scale);
    }
    if (j.contains("runs")) {
      for (const auto &r : j.at("runs")) {
        CheckKeys(r, "run", {"name", "model", "adaptation"});
        RunSpec run;
        run.name = r.at("name").get<std::string>();
        run.model = ParseModelKind(r.at("model").get<std::string>());
        run.adaptation = ParseModality(r.value("adaptation", std::string("none")));
        c.runs.push_back(std::move(run));
      }
    }
  } catch (const ConfigError &) {
    throw;
  } catch (const json::exception &e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
  c.Check();
  return c;
}

ExperimentConfig ReadExperimentConfig(const std::string &path) {
  std::string text;
  try {
    text = ReadFileToString(path);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
  std::string dir = std::filesystem::path(path).parent_path().string();
  return ParseExperimentConfig(text, dir.empty() ? "." : dir);
}

}  // namespace xlasr
