// harness/experiment.cc

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

#include "harness/experiment.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "decoder/aligner.h"
#include "decoder/decoding-graph.h"
#include "decoder/viterbi.h"
#include "frontend/mfcc.h"
#include "frontend/wave-io.h"
#include "json.hpp"

namespace xlasr {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char *kToolkitVersion = "xlasr 1.0";

PhoneInventory ConfiguredInventory(const ExperimentConfig &config) {
  PhoneInventory full = config.inventory == "reference"
                            ? ReferenceInventory()
                            : ReadPhoneInventory(config.ResolvePath(config.inventory));
  std::vector<PhoneInventory> parts;
  for (const auto &l : config.languages) {
    PhoneInventory part = full.Restrict(l);
    if (part.NumPhones() == 0) XLASR_ERR << "inventory has no phones for language " << l;
    parts.push_back(std::move(part));
  }
  return MergeInventories(parts);
}

std::string Describe(const UtteranceRecord &r) {
  return "utterance " + r.utt_id + " (" + r.mother_language + "->" + r.spoken_language + ")";
}

}  // namespace

ExperimentData PrepareExperimentData(const ExperimentConfig &config) {
  ExperimentData data;
  try {
    data.inventory = ConfiguredInventory(config);
    if (config.synthetic_setup) {
      SyntheticSetup setup = GenerateSyntheticSetup(*config.synthetic_setup, data.inventory);
      data.lexica = std::move(setup.lexica);
      data.lm_texts = std::move(setup.lm_texts);
      data.manifest = std::move(setup.manifest);
    } else {
      for (const auto &l : config.languages) {
        data.lexica.emplace(l, LoadLexicon(config.ResolvePath(config.lexica.at(l)), l,
                                           data.inventory));
        data.lm_texts[l] = ReadSentences(config.ResolvePath(config.lm_texts.at(l)));
      }
      data.manifest = ReadManifest(config.ResolvePath(config.manifest));
    }
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
  FinishExperimentData(config, &data);
  return data;
}

void FinishExperimentData(const ExperimentConfig &config, ExperimentData *data) {
  std::set<LanguageCode> langs(config.languages.begin(), config.languages.end());
  try {
    data->manifest.Validate();
    for (const auto &r : data->manifest.Records())
      if (!langs.count(r.mother_language) || !langs.count(r.spoken_language))
        XLASR_ERR << Describe(r) << " uses a language outside the configuration";
    data->lms.clear();
    for (const auto &l : config.languages) {
      if (!data->lexica.count(l)) XLASR_ERR << "no lexicon for " << l;
      auto it = data->lm_texts.find(l);
      if (it == data->lm_texts.end() || it->second.empty()) XLASR_ERR << "no LM text for " << l;
      data->lms.emplace(l, TrainBigram(it->second));
    }
    data->synth = GenerateSynthSpec(data->inventory, config.synth_space,
                                    MixSeed(config.seed, "synth-space"));
    data->synth.interference_weight = config.interference_weight;
    data->synth.substitution_rate = config.substitution_rate;
    data->synth.min_frames = config.min_phone_frames;
    data->synth.max_frames = config.max_phone_frames;
    data->synth.Check();
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }

  std::ostringstream content;
  for (const auto &[l, lex] : data->lexica) {
    content << "lexicon " << l << "\n";
    lex.Write(content);
  }
  for (const auto &[l, text] : data->lm_texts) {
    content << "text " << l << "\n";
    for (const auto &s : text) content << JoinStrings(s, " ") << "\n";
  }
  data->manifest.Write(content);
  const std::string synth_fp = data->synth.Fingerprint();
  content << synth_fp << "\n" << config.frontend.Fingerprint() << "\n";
  data->content_hash = HexDigest(Fnv1a64(content.str()));

  data->feats.clear();
  data->oracle.clear();
  for (const auto &r : data->manifest.Records()) {
    try {
      if (r.IsSynthetic()) {
        SynthUtterance u = SynthesizeUtterance(r, data->lexica.at(r.spoken_language), data->synth);
        u.feats.fingerprint = synth_fp;
        data->feats.emplace(r.utt_id, std::move(u.feats));
        data->oracle.emplace(r.utt_id, std::move(u.oracle));
      } else {
        WaveData wave = ReadWave(config.ResolvePath(r.source));
        if (wave.sample_rate != config.frontend.sample_rate)
          XLASR_ERR << "sample rate " << wave.sample_rate << " differs from the configured "
                    << config.frontend.sample_rate;
        data->feats.emplace(r.utt_id, ComputeMfcc(wave.samples, config.frontend));
      }
    } catch (const Error &e) {
      throw StageError("features", Describe(r) + ": " + e.what());
    }
  }
}

std::string CacheDirFromEnvironment() {
  const char *v = std::getenv(kCacheDirEnv);
  return v == nullptr ? "" : v;
}

namespace {

std::string ModelId(const AcousticModel &model) {
  std::ostringstream os;
  model.Write(os);
  return HexDigest(Fnv1a64(os.str()));
}

struct BaseModel {
  std::string name;  // "multi" or "mono-<L>"
  std::string cache_key;
  AcousticModel model;
  std::string id;
  ordered_json info;
};

struct AdaptedModel {
  std::string cache_key;
  AcousticModel model;
  std::string id;
  ordered_json info;
};

class Runner {
 public:
  Runner(const ExperimentConfig &config, const ExperimentData &data,
         const ExperimentOptions &options)
      : config_(config), data_(data), options_(options) {}

  ExperimentResults Run();

 private:
  const BaseModel &GetBaseModel(const std::string &name);
  BaseModel TrainBaseModel(const std::string &name);
  const AdaptedModel &GetAdaptedModel(const BaseModel &base, const AdaptationModality &m);
  ResultMatrix RunOne(const RunSpec &run);

  std::vector<TrainingUtterance> LabelledData(const std::vector<const UtteranceRecord *> &recs,
                                              const AcousticModel *model,
                                              const StateMap &state_map,
                                              const std::string &stage) const;
  double OracleAgreement(const std::vector<const UtteranceRecord *> &recs,
                         const std::vector<TrainingUtterance> &labelled,
                         const StateMap &state_map) const;
  bool LoadCached(const std::string &key, AcousticModel *model, ordered_json *info) const;
  void StoreCached(const std::string &key, const AcousticModel &model,
                   const ordered_json &info) const;
  void WriteArtifact(const std::string &rel, const std::string &contents) const;

  const ExperimentConfig &config_;
  const ExperimentData &data_;
  const ExperimentOptions &options_;
  std::map<std::string, BaseModel> base_;
  std::map<std::string, AdaptedModel> adapted_;
};

void Runner::WriteArtifact(const std::string &rel, const std::string &contents) const {
  if (options_.output_dir.empty()) return;
  fs::path p = fs::path(options_.output_dir) / rel;
  fs::create_directories(p.parent_path());
  WriteStringToFile(p.string(), contents);
}

bool Runner::LoadCached(const std::string &key, AcousticModel *model,
                        ordered_json *info) const {
  if (options_.cache_dir.empty()) return false;
  fs::path dir = fs::path(options_.cache_dir) / key;
  if (!fs::exists(dir / "model.xlam") || !fs::exists(dir / "info.json")) return false;
  try {
    *model = ReadAcousticModel((dir / "model.xlam").string());
    *info = ordered_json::parse(ReadFileToString((dir / "info.json").string()));
    XLASR_LOG << "reusing cached model " << key;
    return true;
  } catch (const std::exception &e) {
    XLASR_WARN << "ignoring unreadable cache entry " << dir.string() << ": " << e.what();
    return false;
  }
}

void Runner::StoreCached(const std::string &key, const AcousticModel &model,
                         const ordered_json &info) const {
  if (options_.cache_dir.empty()) return;
  fs::path dir = fs::path(options_.cache_dir) / key;
  fs::create_directories(dir);
  // Write to temporaries first so an interrupted run leaves no half entry.
  WriteAcousticModel(model, (dir / "model.xlam.tmp").string());
  WriteStringToFile((dir / "info.json.tmp").string(), info.dump(2));
  fs::rename(dir / "model.xlam.tmp", dir / "model.xlam");
  fs::rename(dir / "info.json.tmp", dir / "info.json");
}

std::vector<TrainingUtterance> Runner::LabelledData(
    const std::vector<const UtteranceRecord *> &recs, const AcousticModel *model,
    const StateMap &state_map, const std::string &stage) const {
  std::vector<TrainingUtterance> out;
  out.reserve(recs.size());
  for (const UtteranceRecord *r : recs) {
    const FeatureMatrix &feats = data_.feats.at(r->utt_id);
    const Lexicon &lex = data_.lexica.at(r->spoken_language);
    try {
      Alignment ali = model == nullptr
                          ? FlatStartAlign(r->transcript, lex, state_map, feats.NumFrames())
                          : AlignUtterance(*model, feats, r->transcript, lex,
                                           config_.decoder.prior_scale);
      out.push_back({r->utt_id, feats, std::move(ali.frame_states)});
    } catch (const Error &e) {
      throw StageError(stage, Describe(*r) + ": " + e.what());
    }
  }
  return out;
}

double Runner::OracleAgreement(const std::vector<const UtteranceRecord *> &recs,
                               const std::vector<TrainingUtterance> &labelled,
                               const StateMap &state_map) const {
  long same = 0, total = 0;
  for (size_t i = 0; i < recs.size(); ++i) {
    auto it = data_.oracle.find(recs[i]->utt_id);
    if (it == data_.oracle.end()) return -1.0;
    std::vector<int> truth = state_map.ToAlignment(it->second).frame_states;
    for (size_t t = 0; t < truth.size(); ++t) same += truth[t] == labelled[i].labels[t];
    total += static_cast<long>(truth.size());
  }
  return total == 0 ? -1.0 : static_cast<double>(same) / total;
}

BaseModel Runner::TrainBaseModel(const std::string &name) {
  BaseModel bm;
  bm.name = name;
  const bool multi = name == "multi";
  const std::string lang = multi ? "" : name.substr(5);
  StateMap state_map =
      BuildStateMap(multi ? data_.inventory : data_.inventory.Restrict(lang));
  std::vector<const UtteranceRecord *> recs;
  for (const auto &r : data_.manifest.Records())
    if (r.split == Split::kTrain && (multi || r.spoken_language == lang)) recs.push_back(&r);
  if (recs.empty()) throw StageError("train", "no training utterances for model " + name);

  ordered_json key;
  key["data"] = data_.content_hash;
  key["model"] = name;
  key["seed"] = config_.seed;
  key["config"] = ordered_json::parse(config_.ToJson())["am"];
  key["prior_scale"] = config_.decoder.prior_scale;
  bm.cache_key = "base-" + name + "-" + HexDigest(Fnv1a64(key.dump()));
  if (LoadCached(bm.cache_key, &bm.model, &bm.info)) {
    bm.id = ModelId(bm.model);
    return bm;
  }

  XLASR_LOG << "training " << name << " on " << recs.size() << " utterances";
  TrainConfig tc = config_.am;
  std::vector<double> agreement, losses;
  std::vector<int> epochs;
  auto labelled = LabelledData(recs, nullptr, state_map, "flat-start");
  agreement.push_back(OracleAgreement(recs, labelled, state_map));
  AcousticModel model;
  for (int pass = 0; pass <= config_.realign_iterations; ++pass) {
    tc.seed = MixSeed(config_.seed, "am:" + name + ":" + std::to_string(pass));
    try {
      TrainResult res = pass == 0 ? TrainAcousticModel(labelled, state_map,
                                                       labelled.front().feats.fingerprint, tc)
                                  : ContinueTraining(model, labelled, tc);
      model = std::move(res.model);
      losses.push_back(res.final_train_loss);
      epochs.push_back(res.epochs_run);
    } catch (const StageError &) {
      throw;
    } catch (const Error &e) {
      throw StageError("train", "model " + name + ": " + e.what());
    }
    if (pass < config_.realign_iterations) {
      labelled = LabelledData(recs, &model, state_map, "realign");
      agreement.push_back(OracleAgreement(recs, labelled, state_map));
    }
  }
  model.metadata.seed = config_.seed;
  bm.model = std::move(model);
  bm.info["train_utterances"] = recs.size();
  bm.info["states"] = state_map.NumStates();
  bm.info["oracle_frame_agreement"] = agreement;
  bm.info["final_train_loss"] = losses;
  bm.info["epochs"] = epochs;
  StoreCached(bm.cache_key, bm.model, bm.info);
  bm.id = ModelId(bm.model);
  return bm;
}

const BaseModel &Runner::GetBaseModel(const std::string &name) {
  auto it = base_.find(name);
  if (it == base_.end()) {
    it = base_.emplace(name, TrainBaseModel(name)).first;
    std::ostringstream os;
    it->second.model.Write(os);
    WriteArtifact("models/" + name + ".xlam", os.str());
  }
  return it->second;
}

const AdaptedModel &Runner::GetAdaptedModel(const BaseModel &base,
                                            const AdaptationModality &m) {
  const std::string label = base.name + "+" + m.Name();
  auto found = adapted_.find(label);
  if (found != adapted_.end()) return found->second;

  auto selected = SelectAdaptationData(data_.manifest, m);
  if (config_.adaptation.pooling == "balanced") {
    std::map<LanguagePair, std::vector<const UtteranceRecord *>> sets;
    for (const auto *r : selected) sets[{r->mother_language, r->spoken_language}].push_back(r);
    size_t largest = 0;
    for (const auto &[k, v] : sets) largest = std::max(largest, v.size());
    selected.clear();
    for (const auto &[k, v] : sets)
      for (size_t i = 0; i < largest; ++i) selected.push_back(v[i % v.size()]);
  }
  std::set<std::string> ada_ids;
  for (const auto *r : selected) {
    if (r->split != Split::kAda)
      throw StageError("adapt", Describe(*r) + " is not adaptation data");
    ada_ids.insert(r->utt_id);
  }
  for (const auto &r : data_.manifest.Records())
    if (r.split == Split::kEval && ada_ids.count(r.utt_id))
      throw StageError("adapt", Describe(r) + " is both adaptation and eval data");

  AdaptedModel am;
  ordered_json key;
  key["base"] = base.cache_key;
  key["modality"] = m.Name();
  key["adaptation"] = ordered_json::parse(config_.ToJson())["adaptation"];
  am.cache_key = "adapt-" + HexDigest(Fnv1a64(key.dump()));
  if (!LoadCached(am.cache_key, &am.model, &am.info)) {
    auto labelled = LabelledData(selected, &base.model, base.model.state_map, "adapt-align");
    TrainConfig tc = config_.AdaptationTrainConfig();
    tc.seed = MixSeed(config_.seed, "adapt:" + label);
    TrainResult res;
    try {
      res = AdaptAcousticModel(base.model, labelled, base.model.state_map, tc);
    } catch (const Error &e) {
      throw StageError("adapt", label + ": " + e.what());
    }
    am.model = std::move(res.model);
    am.info["loss_before"] = res.initial_train_loss;
    am.info["loss_after"] = res.final_train_loss;
    am.info["epochs"] = res.epochs_run;
    StoreCached(am.cache_key, am.model, am.info);
  }
  // Frozen layers must come out bit-identical.
  const auto frozen = FrozenMask(config_.adaptation.frozen_layers, base.model.nnet.NumLayers());
  ordered_json checks = ordered_json::array();
  for (int l = 0; l < base.model.nnet.NumLayers(); ++l) {
    if (!frozen[l]) continue;
    uint64_t before = LayerHash(base.model.nnet, l), after = LayerHash(am.model.nnet, l);
    if (before != after)
      throw StageError("adapt", label + ": frozen layer " + std::to_string(l) + " changed");
    checks.push_back({{"layer", l}, {"hash", HexDigest(before)}});
  }
  am.id = ModelId(am.model);
  ordered_json info;
  info["modality"] = m.Name();
  info["base_model"] = base.id;
  info["model"] = am.id;
  info["utterances"] = std::vector<std::string>(ada_ids.begin(), ada_ids.end());
  info["num_selected"] = selected.size();
  info["frozen_layer_hashes"] = checks;
  info["loss_before"] = am.info.value("loss_before", 0.0);
  info["loss_after"] = am.info.value("loss_after", 0.0);
  am.info = info;
  std::ostringstream os;
  am.model.Write(os);
  WriteArtifact("models/" + base.name + "-" + m.Name() + ".xlam", os.str());
  return adapted_.emplace(label, std::move(am)).first->second;
}

ResultMatrix Runner::RunOne(const RunSpec &run) {
  ResultMatrix matrix;
  matrix.name = run.name;
  matrix.model_kind = run.model.Name();
  matrix.adaptation = run.adaptation.Name();
  matrix.languages = config_.languages;

  std::set<LanguagePair> pairs = data_.manifest.PopulatedPairs(Split::kEval);
  if (run.model.kind == ModelKind::kMono && !run.model.language.empty())
    std::erase_if(pairs, [&](const LanguagePair &p) { return p.second != run.model.language; });

  ordered_json prov;
  prov["toolkit"] = kToolkitVersion;
  prov["config_hash"] = config_.Hash();
  prov["data_hash"] = data_.content_hash;
  prov["seed"] = config_.seed;
  prov["decoder"] = ordered_json::parse(config_.ToJson())["decoder"];
  prov["am"] = ordered_json::parse(config_.ToJson())["am"];
  prov["models"] = ordered_json::object();
  prov["adaptation"] = ordered_json::array();

  struct CellJob {
    LanguagePair pair;
    const AcousticModel *model;
    std::string model_id;
    std::string adaptation_id;
  };
  std::vector<CellJob> jobs;
  std::set<std::string> ada_ids;
  for (const auto &pair : pairs) {
    const std::string base_name =
        run.model.kind == ModelKind::kMulti ? "multi" : "mono-" + pair.second;
    const BaseModel &base = GetBaseModel(base_name);
    if (!prov["models"].contains(base.id)) {
      ordered_json mi = base.info;
      mi["name"] = base.name;
      prov["models"][base.id] = mi;
    }
    CellJob job{pair, &base.model, base.id, "none"};
    if (run.adaptation.kind != AdaptationModality::kNone) {
      for (const auto &m : ExpandModality(data_.manifest, run.adaptation)) {
        bool applies = m.kind == AdaptationModality::kM3 ||
                       m.kind == AdaptationModality::kPoolByL1 ||
                       m.kind == AdaptationModality::kPoolByL2 || m.language == pair.second;
        if (!applies) continue;
        const AdaptedModel &am = GetAdaptedModel(base, m);
        job = {pair, &am.model, am.id, m.Name()};
        bool listed = false;
        for (const auto &a : prov["adaptation"]) listed |= a["model"] == am.id;
        if (!listed) prov["adaptation"].push_back(am.info);
        for (const auto &id : am.info["utterances"]) ada_ids.insert(id.get<std::string>());
      }
    }
    jobs.push_back(job);
  }

  // Decode and score every cell; cells are independent.
  std::vector<std::pair<ResultCell, std::string>> outputs(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::map<std::pair<const AcousticModel *, std::string>, DecodingGraph> graphs;
  for (const auto &job : jobs) {
    auto key = std::make_pair(job.model, job.pair.second);
    if (graphs.count(key)) continue;
    try {
      graphs.emplace(key, BuildDecodingGraph(data_.lexica.at(job.pair.second),
                                             data_.lms.at(job.pair.second),
                                             job.model->state_map, config_.decoder.scales));
    } catch (const Error &e) {
      throw StageError("graph", job.pair.second + " graph for " + run.name + ": " + e.what());
    }
  }
  auto decode_cell = [&](size_t i) {
    const CellJob &job = jobs[i];
    const DecodingGraph &graph = graphs.at({job.model, job.pair.second});
    TranscriptTable refs, hyps;
    std::string current;
    try {
      for (const auto &r : data_.manifest.Records()) {
        if (r.split != Split::kEval || r.mother_language != job.pair.first ||
            r.spoken_language != job.pair.second)
          continue;
        current = r.utt_id;
        Eigen::MatrixXd loglik = ScaledLogLikelihoods(*job.model, data_.feats.at(r.utt_id),
                                                      config_.decoder.prior_scale);
        DecodeOptions opts;
        opts.beam = config_.decoder.beam;
        DecodeResult res = ViterbiDecode(graph, loglik, opts);
        refs.emplace_back(r.utt_id, r.transcript);
        hyps.emplace_back(r.utt_id, res.words);
      }
      WerReport report = ComputeWer(refs, hyps);
      ResultCell cell{report.total, static_cast<int>(refs.size()), job.model_id,
                      job.adaptation_id};
      std::ostringstream hyp_text, wer_text;
      WriteTranscriptTable(hyps, hyp_text);
      report.WriteText(wer_text);
      outputs[i] = {cell, hyp_text.str() + "\x1f" + wer_text.str()};
    } catch (const std::exception &e) {
      errors[i] = "utterance " + current + ": " + e.what();
    }
  };
  const int threads = std::max(1, std::min<int>(options_.num_threads, jobs.size()));
  if (threads == 1) {
    for (size_t i = 0; i < jobs.size(); ++i) decode_cell(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (size_t i = t; i < jobs.size(); i += threads) decode_cell(i);
      });
    for (auto &th : pool) th.join();
  }
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) throw StageError("decode", errors[i]);
    matrix.cells[jobs[i].pair] = outputs[i].first;
    const std::string &both = outputs[i].second;
    size_t sep = both.find('\x1f');
    std::string tag = jobs[i].pair.first + "-" + jobs[i].pair.second;
    WriteArtifact(run.name + "/hyp-" + tag + ".txt", both.substr(0, sep));
    WriteArtifact(run.name + "/wer-" + tag + ".txt", both.substr(sep + 1));
  }

  long eval_utts = 0;
  for (const auto &r : data_.manifest.Records()) {
    if (r.split != Split::kEval) continue;
    ++eval_utts;
    if (ada_ids.count(r.utt_id)) throw StageError("adapt", "eval " + Describe(r) + " used for adaptation");
  }
  prov["eval_utterances"] = eval_utts;
  prov["ada_eval_disjoint"] = true;
  matrix.provenance_json = prov.dump();
  WriteArtifact(run.name + "/matrix.json", MatrixToJson(matrix));
  WriteArtifact(run.name + "/matrix.txt", FormatMatrixText(matrix));
  return matrix;
}

ExperimentResults Runner::Run() {
  ExperimentResults out;
  out.config_hash = config_.Hash();
  for (const auto &run : config_.runs) {
    XLASR_LOG << "run " << run.name;
    out.matrices.push_back(RunOne(run));
  }
  WriteArtifact("config.json", config_.ToJson() + "\n");
  WriteArtifact("results.json", out.ToJson());
  return out;
}

}  // namespace

ExperimentResults RunExperiment(const ExperimentConfig &config, const ExperimentData &data,
                                const ExperimentOptions &options) {
  config.Check();
  return Runner(config, data, options).Run();
}

}  // namespace xlasr
