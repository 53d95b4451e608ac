// tools/xlasr.cc

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

// Command-line front end: one subcommand group per module.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "am/acoustic-model.h"
#include "am/nnet-train.h"
#include "base/xlasr-common.h"
#include "decoder/aligner.h"
#include "decoder/decoding-graph.h"
#include "decoder/viterbi.h"
#include "frontend/mfcc.h"
#include "frontend/wave-io.h"
#include "harness/experiment.h"
#include "lexicon/lexicon.h"
#include "lm/bigram-lm.h"
#include "scoring/corpus-stats.h"
#include "scoring/wer.h"

using namespace xlasr;

namespace {

PhoneInventory LoadInventory(const std::string &spec) {
  return spec == "reference" ? ReferenceInventory() : ReadPhoneInventory(spec);
}

// "it,de" -> inventory restricted to those languages (all if empty).
PhoneInventory SelectLanguages(const PhoneInventory &inv, const std::string &langs) {
  if (langs.empty()) return inv;
  std::vector<PhoneInventory> parts;
  for (const auto &l : SplitOn(langs, ',')) parts.push_back(inv.Restrict(Trim(l)));
  return MergeInventories(parts);
}

std::ostream &Output(const std::string &path, std::ofstream *file) {
  if (path.empty() || path == "-") return std::cout;
  file->open(path, std::ios::binary);
  if (!*file) XLASR_ERR << "cannot write " << path;
  return *file;
}

std::map<std::string, std::vector<int>> LabelsFromFile(const std::string &path) {
  return ReadStateAlignments(path);
}

std::vector<TrainingUtterance> JoinFeatsAndLabels(
    const std::map<std::string, FeatureMatrix> &feats,
    const std::map<std::string, std::vector<int>> &labels) {
  std::vector<TrainingUtterance> data;
  for (const auto &[id, f] : feats) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      XLASR_WARN << "no alignment for " << id << "; skipped";
      continue;
    }
    if (static_cast<int>(it->second.size()) != f.NumFrames())
      XLASR_ERR << "alignment of " << id << " has " << it->second.size() << " frames, features "
                << f.NumFrames();
    data.push_back({id, f, it->second});
  }
  return data;
}

void PrintMatrices(const std::vector<ResultMatrix> &ms, const std::string &format) {
  if (format == "json") {
    std::cout << ResultsToJson(ms, "");
    return;
  }
  for (const auto &m : ms) std::cout << (format == "csv" ? FormatMatrixCsv(m) : FormatMatrixText(m)) << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"xlasr: multilingual hybrid ASR toolkit"};
  app.require_subcommand(1);
  int verbose = 0;
  app.add_flag("-v,--verbose", verbose, "Log progress (repeat for more)");

  // ---- lexicon
  auto *lex = app.add_subcommand("lexicon", "Phone inventories and lexica");
  lex->require_subcommand(1);
  std::string inv_path = "reference", out_path, lex_path, language, langs;
  std::vector<std::string> inv_parts;
  auto *lex_stats = lex->add_subcommand("stats", "Overlap statistics of a merged inventory");
  lex_stats->add_option("--inventory", inv_path, "Inventory file or 'reference'");
  auto *lex_merge = lex->add_subcommand("merge", "Merge per-language inventories");
  lex_merge->add_option("inventories", inv_parts, "Inventory files")->required();
  lex_merge->add_option("-o,--out", out_path, "Output inventory");
  auto *lex_validate = lex->add_subcommand("validate", "Check a lexicon against an inventory");
  lex_validate->add_option("--lexicon", lex_path)->required();
  lex_validate->add_option("--language", language)->required();
  lex_validate->add_option("--inventory", inv_path);
  bool italian = false;
  lex_validate->add_flag("--collapse-geminates", italian, "Print the geminate-collapsed lexicon");

  // ---- lm
  auto *lm = app.add_subcommand("lm", "Witten-Bell bigram language models");
  lm->require_subcommand(1);
  std::string text_path, arpa_path;
  auto *lm_train = lm->add_subcommand("train", "Train from one sentence per line");
  lm_train->add_option("--text", text_path)->required();
  lm_train->add_option("-o,--out", arpa_path, "ARPA output");
  auto *lm_ppl = lm->add_subcommand("ppl", "Perplexity of a text");
  lm_ppl->add_option("--lm", arpa_path)->required();
  lm_ppl->add_option("--text", text_path)->required();

  // ---- frontend
  auto *fe = app.add_subcommand("frontend", "Feature extraction and synthesis");
  fe->require_subcommand(1);
  std::vector<std::string> wavs;
  std::string feats_path, config_path, ali_path;
  bool as_text = false;
  FeatureConfig fc;
  auto *fe_mfcc = fe->add_subcommand("mfcc", "13 MFCCs of WAV files (id = file stem)");
  fe_mfcc->add_option("wavs", wavs)->required();
  fe_mfcc->add_option("-o,--out", feats_path, "Feature archive")->required();
  fe_mfcc->add_option("--num-ceps", fc.num_ceps);
  fe_mfcc->add_option("--num-mels", fc.num_mels);
  fe_mfcc->add_option("--window-ms", fc.window_ms);
  fe_mfcc->add_option("--shift-ms", fc.shift_ms);
  fe_mfcc->add_flag("--text", as_text, "Write text instead of a binary archive");
  auto *fe_synth = fe->add_subcommand("synth", "Synthesize the features of an experiment");
  fe_synth->add_option("--config", config_path)->required();
  fe_synth->add_option("-o,--out", feats_path, "Feature archive")->required();
  fe_synth->add_option("--oracle", ali_path, "Oracle phone segments");

  // ---- am
  auto *am = app.add_subcommand("am", "Acoustic models");
  am->require_subcommand(1);
  std::string model_path, labels_path;
  TrainConfig tcfg;
  std::string act = "sigmoid", freeze = "all-but-last";
  int adapt_epochs = 5;
  double adapt_lr = 0.05, prior_scale = 1.0;
  auto *am_train = am->add_subcommand("train", "Cross-entropy training on aligned frames");
  am_train->add_option("--feats", feats_path)->required();
  am_train->add_option("--ali", labels_path, "State alignments")->required();
  am_train->add_option("--inventory", inv_path);
  am_train->add_option("--languages", langs, "Comma-separated languages (default all)");
  am_train->add_option("--hidden-layers", tcfg.hidden_layers);
  am_train->add_option("--hidden-dim", tcfg.hidden_dim);
  am_train->add_option("--activation", act);
  am_train->add_option("--context", tcfg.context);
  am_train->add_option("--learning-rate", tcfg.learning_rate);
  am_train->add_option("--minibatch", tcfg.minibatch_size);
  am_train->add_option("--max-epochs", tcfg.max_epochs);
  am_train->add_option("--seed", tcfg.seed);
  am_train->add_option("-o,--out", model_path)->required();
  auto *am_adapt = am->add_subcommand("adapt", "Output-layer transfer learning");
  am_adapt->add_option("--model", model_path)->required();
  am_adapt->add_option("--feats", feats_path)->required();
  am_adapt->add_option("--ali", labels_path)->required();
  am_adapt->add_option("--freeze", freeze, "none, all-but-last or layer list");
  am_adapt->add_option("--epochs", adapt_epochs);
  am_adapt->add_option("--learning-rate", adapt_lr);
  am_adapt->add_option("-o,--out", out_path)->required();
  auto *am_post = am->add_subcommand("post", "Posteriors or scaled log-likelihoods");
  am_post->add_option("--model", model_path)->required();
  am_post->add_option("--feats", feats_path)->required();
  bool loglik = false;
  am_post->add_flag("--loglik", loglik, "Scaled log-likelihoods instead of posteriors");
  am_post->add_option("--prior-scale", prior_scale);
  am_post->add_option("-o,--out", out_path);

  // ---- decode / align
  std::string lm_path, hyp_path, ref_path, trans_path;
  GraphScales scales;
  double beam = std::numeric_limits<double>::infinity();
  std::vector<double> grid;
  auto *dec = app.add_subcommand("decode", "Viterbi decoding with a word-loop bigram graph");
  dec->add_option("--model", model_path)->required();
  dec->add_option("--feats", feats_path)->required();
  dec->add_option("--lexicon", lex_path)->required();
  dec->add_option("--language", language)->required();
  dec->add_option("--lm", lm_path, "ARPA bigram")->required();
  dec->add_option("--inventory", inv_path);
  dec->add_option("--lm-scale", scales.lm_scale);
  dec->add_option("--word-penalty", scales.word_insertion_penalty);
  dec->add_flag("--optional-silence", scales.optional_silence);
  dec->add_option("--beam", beam);
  dec->add_option("--prior-scale", prior_scale);
  dec->add_option("--lm-scale-grid", grid, "Try these scales, report WER against --ref");
  dec->add_option("--ref", ref_path, "Reference transcripts for the grid search");
  dec->add_option("-o,--out", hyp_path, "Hypotheses (utt<TAB>words)");
  auto *ali = app.add_subcommand("align", "Forced alignment to transcripts");
  bool flat = false;
  ali->add_option("--model", model_path);
  ali->add_flag("--flat-start", flat, "Uniform segmentation, no model");
  ali->add_option("--feats", feats_path)->required();
  ali->add_option("--transcripts", trans_path, "utt<TAB>words")->required();
  ali->add_option("--lexicon", lex_path)->required();
  ali->add_option("--language", language)->required();
  ali->add_option("--inventory", inv_path);
  ali->add_option("--languages", langs, "State map languages for --flat-start");
  ali->add_option("-o,--out", out_path, "State alignments")->required();
  ali->add_option("--segments", ali_path, "Phone segments (utt phone start end)");

  // ---- score
  auto *sc = app.add_subcommand("score", "Scoring and corpus statistics");
  sc->require_subcommand(1);
  bool json_out = false;
  auto *sc_wer = sc->add_subcommand("wer", "Word error rate");
  sc_wer->add_option("--ref", ref_path)->required();
  sc_wer->add_option("--hyp", hyp_path)->required();
  sc_wer->add_flag("--json", json_out);
  std::string manifest_path;
  auto *sc_stats = sc->add_subcommand("stats", "Corpus statistics per (L1, L2, split)");
  sc_stats->add_option("--manifest", manifest_path)->required();
  sc_stats->add_option("--feats", feats_path, "Feature archive for durations");

  // ---- exp
  auto *exp = app.add_subcommand("exp", "Experiment harness");
  exp->require_subcommand(1);
  std::string out_dir, results_path, format = "text";
  int threads = 1;
  auto *exp_run = exp->add_subcommand("run", "Run every configured run");
  exp_run->add_option("--config", config_path)->required();
  exp_run->add_option("--out", out_dir, "Artifact directory");
  exp_run->add_option("--threads", threads, "Parallel decoding of cells");
  auto *exp_report = exp->add_subcommand("report", "Render result matrices");
  exp_report->add_option("--results", results_path)->required();
  exp_report->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
  auto *exp_setup = exp->add_subcommand("setup", "Write the synthetic lexica, texts and manifest");
  exp_setup->add_option("--config", config_path)->required();
  exp_setup->add_option("--out", out_dir)->required();

  CLI11_PARSE(app, argc, argv);
  SetVerbose(verbose);

  try {
    if (*lex_stats) {
      std::cout << ComputeOverlapStats(LoadInventory(inv_path)).ToString();
    } else if (*lex_merge) {
      std::vector<PhoneInventory> parts;
      for (const auto &p : inv_parts) parts.push_back(ReadPhoneInventory(p));
      PhoneInventory merged = MergeInventories(parts);
      std::ofstream f;
      merged.Write(Output(out_path, &f));
      std::cerr << ComputeOverlapStats(merged).ToString();
    } else if (*lex_validate) {
      Lexicon l = LoadLexicon(lex_path, language, LoadInventory(inv_path));
      std::cerr << lex_path << ": " << l.NumWords() << " words, " << l.PhonesUsed().size()
                << " phones used\n";
      if (italian)
        for (const auto &[w, prons] : l.Entries())
          for (const auto &p : prons)
            std::cout << w << " " << JoinStrings(NormalizeItalian(p), " ") << "\n";
    } else if (*lm_train) {
      BigramLM m = TrainBigram(ReadSentences(text_path));
      std::ofstream f;
      m.WriteArpa(Output(arpa_path, &f));
    } else if (*lm_ppl) {
      PerplexityResult r = ComputePerplexity(ReadArpaFile(arpa_path), ReadSentences(text_path));
      std::cout << "ppl " << r.ppl << " events " << r.num_events << " logprob "
                << r.total_log_prob << "\n";
    } else if (*fe_mfcc) {
      fc.Check();
      std::map<std::string, FeatureMatrix> out;
      for (const auto &w : wavs) {
        WaveData wave = ReadWave(w);
        if (wave.sample_rate != fc.sample_rate) fc.sample_rate = wave.sample_rate;
        out[std::filesystem::path(w).stem().string()] = ComputeMfcc(wave.samples, fc);
      }
      if (as_text) {
        std::ofstream f;
        std::ostream &os = Output(feats_path, &f);
        for (const auto &[id, m] : out) WriteFeatureText(id, m, os);
      } else {
        WriteFeatureArchive(out, feats_path);
      }
    } else if (*fe_synth) {
      ExperimentConfig cfg = ReadExperimentConfig(config_path);
      ExperimentData data = PrepareExperimentData(cfg);
      WriteFeatureArchive(data.feats, feats_path);
      if (!ali_path.empty()) {
        std::ofstream f(ali_path);
        for (const auto &[id, o] : data.oracle) WritePhoneSegments(id, o.segments, f);
      }
    } else if (*am_train) {
      tcfg.activation = ParseActivation(act);
      auto feats = ReadFeatureArchive(feats_path);
      auto data = JoinFeatsAndLabels(feats, LabelsFromFile(labels_path));
      if (data.empty()) XLASR_ERR << "no labelled utterances";
      StateMap map = BuildStateMap(SelectLanguages(LoadInventory(inv_path), langs));
      TrainResult r = TrainAcousticModel(data, map, data.front().feats.fingerprint, tcfg);
      std::cerr << "epochs " << r.epochs_run << ", train loss " << r.initial_train_loss << " -> "
                << r.final_train_loss << "\n";
      WriteAcousticModel(r.model, model_path);
    } else if (*am_adapt) {
      AcousticModel model = ReadAcousticModel(model_path);
      TrainConfig c = TrainConfig::AdaptationDefaults(TrainConfig{});
      c.max_epochs = adapt_epochs;
      c.learning_rate = adapt_lr;
      c.frozen_layers = freeze;
      auto data = JoinFeatsAndLabels(ReadFeatureArchive(feats_path), LabelsFromFile(labels_path));
      TrainResult r = AdaptAcousticModel(model, data, model.state_map, c);
      std::cerr << "adaptation loss " << r.initial_train_loss << " -> " << r.final_train_loss
                << "\n";
      WriteAcousticModel(r.model, out_path);
    } else if (*am_post) {
      AcousticModel model = ReadAcousticModel(model_path);
      std::ofstream f;
      std::ostream &os = Output(out_path, &f);
      for (const auto &[id, feats] : ReadFeatureArchive(feats_path)) {
        Eigen::MatrixXd m = loglik ? ScaledLogLikelihoods(model, feats, prior_scale)
                                   : ComputePosteriors(model, feats);
        os << id << "  [\n" << m << " ]\n";
      }
    } else if (*dec) {
      AcousticModel model = ReadAcousticModel(model_path);
      Lexicon lexicon = LoadLexicon(lex_path, language, LoadInventory(inv_path));
      BigramLM lmodel = ReadArpaFile(lm_path);
      auto feats = ReadFeatureArchive(feats_path);
      std::map<std::string, Eigen::MatrixXd> logliks;
      for (const auto &[id, f] : feats) logliks[id] = ScaledLogLikelihoods(model, f, prior_scale);
      auto decode_all = [&](const GraphScales &s) {
        DecodingGraph g = BuildDecodingGraph(lexicon, lmodel, model.state_map, s);
        TranscriptTable hyps;
        DecodeOptions opts;
        opts.beam = beam;
        for (const auto &[id, l] : logliks) hyps.emplace_back(id, ViterbiDecode(g, l, opts).words);
        return hyps;
      };
      if (!grid.empty()) {
        if (ref_path.empty()) XLASR_ERR << "--lm-scale-grid needs --ref";
        TranscriptTable refs = ReadTranscriptTable(ref_path);
        double best_scale = grid.front(), best_wer = 2.0;
        for (double s : grid) {
          GraphScales gs = scales;
          gs.lm_scale = s;
          double wer = ComputeWer(refs, decode_all(gs)).Wer();
          std::cout << "lm_scale " << s << " WER " << 100.0 * wer << "%\n";
          if (wer < best_wer) best_wer = wer, best_scale = s;
        }
        std::cout << "best lm_scale " << best_scale << "\n";
        scales.lm_scale = best_scale;
      }
      if (grid.empty() || !hyp_path.empty()) {
        std::ofstream f;
        WriteTranscriptTable(decode_all(scales), Output(hyp_path, &f));
      }
    } else if (*ali) {
      if (flat == !model_path.empty()) XLASR_ERR << "give exactly one of --model and --flat-start";
      PhoneInventory inv = LoadInventory(inv_path);
      Lexicon lexicon = LoadLexicon(lex_path, language, inv);
      auto feats = ReadFeatureArchive(feats_path);
      AcousticModel model;
      StateMap map;
      if (flat) {
        map = BuildStateMap(SelectLanguages(inv, langs.empty() ? language : langs));
      } else {
        model = ReadAcousticModel(model_path);
        map = model.state_map;
      }
      std::ofstream out(out_path), seg;
      if (!ali_path.empty()) seg.open(ali_path);
      for (const auto &[id, words] : ReadTranscriptTable(trans_path)) {
        auto it = feats.find(id);
        if (it == feats.end()) XLASR_ERR << "no features for " << id;
        try {
          Alignment a = flat ? FlatStartAlign(words, lexicon, map, it->second.NumFrames())
                             : AlignUtterance(model, it->second, words, lexicon);
          WriteStateAlignment(id, a.frame_states, out);
          if (seg.is_open()) WritePhoneSegments(id, a.segments, seg);
        } catch (const Error &e) {
          XLASR_ERR << id << ": " << e.what();
        }
      }
    } else if (*sc_wer) {
      WerReport r = ComputeWer(ReadTranscriptTable(ref_path), ReadTranscriptTable(hyp_path));
      if (json_out)
        std::cout << r.ToJson() << "\n";
      else
        r.WriteText(std::cout);
    } else if (*sc_stats) {
      CorpusManifest m = ReadManifest(manifest_path);
      std::map<std::string, long> frames;
      if (!feats_path.empty())
        for (const auto &[id, f] : ReadFeatureArchive(feats_path)) frames[id] = f.NumFrames();
      WriteCorpusStats(ComputeCorpusStats(m, frames), std::cout);
    } else if (*exp_run || *exp_setup) {
      ExperimentConfig cfg;
      try {
        cfg = ReadExperimentConfig(config_path);
      } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
      try {
        ExperimentData data = PrepareExperimentData(cfg);
        if (*exp_setup) {
          SyntheticSetup s{data.lexica, data.lm_texts, data.manifest};
          WriteSyntheticSetup(s, out_dir);
          return 0;
        }
        ExperimentOptions opts;
        opts.output_dir = out_dir;
        opts.cache_dir = CacheDirFromEnvironment();
        opts.num_threads = threads;
        ExperimentResults res = RunExperiment(cfg, data, opts);
        for (const auto &m : res.matrices) std::cout << FormatMatrixText(m) << "\n";
      } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      } catch (const StageError &e) {
        std::cerr << e.what() << "\n";
        return 3;
      } catch (const std::exception &e) {
        std::cerr << "stage 'experiment' failed: " << e.what() << "\n";
        return 3;
      }
    } else if (*exp_report) {
      PrintMatrices(ResultsFromJson(ReadFileToString(results_path)), format);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
