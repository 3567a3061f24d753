// Copyright 2026 The Morphoton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "morphoton/cli.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "morphoton/checkpoint.h"
#include "morphoton/corpus.h"
#include "morphoton/eval.h"
#include "morphoton/reinflect.h"
#include "morphoton/resources.h"

namespace morphoton {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// One manifest per artifact-producing command.
struct Manifest {
  std::vector<std::string> command;
  json config = json::object();
  std::vector<uint64_t> seeds;
  std::map<std::string, std::string> inputs;  // path -> fnv1a
  std::vector<std::string> outputs;
  json extra = json::object();

  void add_input(const std::string& path) { inputs[path] = fnv1a_hex(read_file(path)); }

  void write(const std::string& path) const {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["seeds"] = seeds;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["toolkit_version"] = kToolkitVersion;
    j["timestamp"] = utc_timestamp();
    for (const auto& [k, v] : extra.items()) j[k] = v;
    write_file(path, j.dump(2) + "\n");
  }
};

void require_language(const std::string& lang) {
  std::vector<std::string> known = known_languages();
  if (std::find(known.begin(), known.end(), lang) == known.end()) {
    std::string list;
    for (const std::string& k : known) list += (list.empty() ? "" : ", ") + k;
    throw UsageError("unknown language '" + lang + "' (available: " + list + ")");
  }
}

Hyperparameters load_hp(const std::string& path) {
  if (path.empty()) return {};
  try {
    return parse_hyperparameters(read_file(path));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

struct DatasetInfo {
  std::string language;
  std::string pos;
  SplitDataset split;
};

DatasetInfo load_dataset(const std::string& dir) {
  fs::path root(dir);
  fs::path manifest = root / "manifest.json";
  if (!fs::exists(manifest)) throw UsageError("no dataset manifest in " + dir);
  json m = read_json(manifest.string());
  DatasetInfo d;
  try {
    d.language = m.at("config").at("lang").get<std::string>();
    d.pos = m.at("config").at("pos").get<std::string>();
    d.split.seed = m.at("config").at("seed").get<uint64_t>();
  } catch (const json::exception& e) {
    throw UsageError(manifest.string() + " is not a dataset manifest: " + e.what());
  }
  d.split.train = read_samples((root / "train.tsv").string());
  d.split.dev = read_samples((root / "dev.tsv").string());
  d.split.test = read_samples((root / "test.tsv").string());
  return d;
}

// Mean length of the method's form region relative to the grapheme form.
double form_length_ratio(std::span<const ReinflectionSample> samples, Method method,
                         const LanguageResources& res) {
  double sum = 0;
  size_t n = 0;
  for (const ReinflectionSample& s : samples) {
    for (const std::string* f : {&s.src_form, &s.trg_form}) {
      size_t g = segment(*f).size();
      if (g == 0) continue;
      try {
        sum += static_cast<double>(form_symbols(*f, method, res).size()) /
               static_cast<double>(g);
        ++n;
      } catch (const Error&) {
      }
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

std::vector<size_t> parse_sizes(const std::string& spec) {
  std::vector<std::string> parts = split(spec, ':');
  auto num = [&](const std::string& s) -> size_t {
    try {
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size() || v <= 0) throw std::invalid_argument(s);
      return static_cast<size_t>(v);
    } catch (const std::exception&) {
      throw UsageError("bad --sizes value '" + spec + "' (expected start:stop:step)");
    }
  };
  if (parts.size() == 1) return {num(parts[0])};
  if (parts.size() != 3) throw UsageError("bad --sizes value '" + spec + "'");
  size_t start = num(parts[0]), stop = num(parts[1]), step = num(parts[2]);
  if (stop < start) throw UsageError("--sizes stop is below start");
  std::vector<size_t> out;
  for (size_t s = start; s <= stop; s += step) out.push_back(s);
  return out;
}

std::vector<uint64_t> parse_seeds(const std::string& spec) {
  std::vector<uint64_t> out;
  try {
    if (spec.find(',') == std::string::npos) {
      long long n = std::stoll(spec);
      if (n <= 0) throw std::invalid_argument(spec);
      for (long long i = 1; i <= n; ++i) out.push_back(static_cast<uint64_t>(i));
    } else {
      for (const std::string& s : split(spec, ',')) out.push_back(std::stoull(s));
    }
  } catch (const std::exception&) {
    throw UsageError("bad --seeds value '" + spec + "' (a count or a comma list)");
  }
  return out;
}

std::vector<Method> parse_methods(const std::string& spec) {
  if (spec == "all") return {Method::kBaseline, Method::kFeatures, Method::kFusion};
  std::vector<Method> out;
  for (const std::string& s : split(spec, ',')) {
    try {
      out.push_back(parse_method(trim(s)));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

std::vector<ModelKind> parse_models(const std::string& spec) {
  if (spec == "all") return {ModelKind::kSeq2Seq, ModelKind::kTransducer};
  std::vector<ModelKind> out;
  for (const std::string& s : split(spec, ',')) {
    try {
      out.push_back(parse_model_kind(trim(s)));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

// ---- commands ------------------------------------------------------------

struct ConvertArgs {
  std::string lang, direction, in, out = "-";
};

int cmd_convert(const ConvertArgs& a, std::ostream& out, std::ostream& err) {
  require_language(a.lang);
  Direction dir;
  try {
    dir = parse_direction(a.direction);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  LanguageResources res = load_resources(a.lang);
  const Grammar& g = dir == Direction::kG2P ? res.g2p : res.p2g;
  std::string text = read_file(a.in);
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::string result;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    try {
      SymbolSeq sym = transduce(segment(line), g);
      result += join(sym, dir == Direction::kG2P ? " " : "");
    } catch (const ConversionError& e) {
      err << a.in << ":" << (i + 1) << ": '" << line << "': " << e.what() << "\n";
      return kExitRuntime;
    }
    result += '\n';
  }
  if (a.out == "-") {
    out << result;
  } else {
    write_file(a.out, result);
  }
  return kExitOk;
}

struct PrepareArgs {
  std::string unimorph, lang, pos, out;
  size_t n = 10000;
  uint64_t seed = 0;
};

int cmd_prepare(const PrepareArgs& a, const std::vector<std::string>& argv, std::ostream& out,
                std::ostream& err) {
  require_language(a.lang);
  LanguageResources res = load_resources(a.lang);
  std::string src = a.unimorph.empty()
                        ? (fs::path(data_dir()) / "unimorph" / (a.lang + ".tsv")).string()
                        : a.unimorph;
  ParseReport parsed = parse_unimorph(src, pos_filter(a.pos));
  for (const std::string& w : parsed.warnings) err << src << ": " << w << "\n";
  if (parsed.forms.empty()) throw EmptyCorpus("no " + a.pos + " forms in " + src);
  SampleReport sampled = sample_reinflection(parsed.forms, a.n, a.seed);
  SplitDataset split = split_by_lemma(sampled.samples, {0.8, 0.1, 0.1}, a.seed);
  std::string dir = a.out.empty() ? "datasets/" + a.lang + "_" + a.pos : a.out;
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  for (auto [name, rows] : {std::pair{"train.tsv", &split.train}, {"dev.tsv", &split.dev},
                            {"test.tsv", &split.test}}) {
    std::string path = (fs::path(dir) / name).string();
    write_samples(path, *rows);
    outputs.push_back(path);
  }
  Manifest m;
  m.command = argv;
  m.config = {{"lang", a.lang}, {"pos", a.pos}, {"n", a.n}, {"seed", a.seed},
              {"ratios", {0.8, 0.1, 0.1}}};
  m.seeds = {a.seed};
  m.add_input(src);
  m.outputs = outputs;
  double ratio = form_length_ratio(split.train, Method::kFeatures, res);
  m.extra["counts"] = {{"train", split.train.size()},
                       {"dev", split.dev.size()},
                       {"test", split.test.size()},
                       {"forms", parsed.forms.size()},
                       {"distinct_triples", sampled.distinct_triples}};
  m.extra["feature_length_ratio"] = ratio;
  m.write((fs::path(dir) / "manifest.json").string());
  out << "wrote " << split.train.size() << "/" << split.dev.size() << "/" << split.test.size()
      << " samples to " << dir << " (feature/grapheme length ratio " << ratio << ")\n";
  return kExitOk;
}

struct TrainArgs {
  std::string dataset_dir, model = "seq2seq", method = "baseline", hp_file, out;
  int64_t seed = -1;
};

int cmd_train(const TrainArgs& a, const std::vector<std::string>& argv, std::ostream& out,
              std::ostream& err) {
  TrainRequest req;
  try {
    req.kind = parse_model_kind(a.model);
    req.method = parse_method(a.method);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  req.hp = load_hp(a.hp_file);
  if (a.seed >= 0) req.hp.seed = static_cast<uint64_t>(a.seed);
  DatasetInfo data = load_dataset(a.dataset_dir);
  req.pos = data.pos;
  require_language(data.language);
  LanguageResources res = load_resources(data.language);
  std::string dir = a.out.empty() ? (fs::path(a.dataset_dir) / "runs" /
                                     (a.model + "-" + std::string(method_name(req.method)) +
                                      "-s" + std::to_string(req.hp.seed)))
                                        .string()
                                  : a.out;
  fs::create_directories(dir);
  double ratio = form_length_ratio(data.split.train, req.method, res);
  out << "method " << method_name(req.method) << ": form length " << ratio
      << "x the grapheme length\n";
  std::string log_path = (fs::path(dir) / "train_log.csv").string();
  std::string log = "epoch,train_loss,dev_exact_match,dev_edit_distance\n";
  auto on_epoch = [&](const EpochLog& e) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f\n", e.epoch, e.train_loss, e.dev_score,
                  e.dev_distance);
    log += buf;
    write_file(log_path, log);
    out << "epoch " << e.epoch << " loss " << e.train_loss << " dev " << e.dev_score << "\n";
  };
  Manifest m;
  m.command = argv;
  m.config = {{"model", a.model},
              {"method", method_name(req.method)},
              {"lang", data.language},
              {"pos", data.pos},
              {"hyperparameters", json::parse(format_hyperparameters(req.hp))}};
  m.seeds = {req.hp.seed};
  for (const char* f : {"train.tsv", "dev.tsv"}) {
    m.add_input((fs::path(a.dataset_dir) / f).string());
  }
  m.extra["form_length_ratio"] = ratio;
  std::string ckpt_path = (fs::path(dir) / "model.ckpt").string();
  try {
    TrainOutcome trained = train_reinflector(data.split.train, data.split.dev, req, res, on_epoch);
    save_checkpoint(ckpt_path, trained.checkpoint);
    m.outputs = {ckpt_path, log_path};
    m.extra["training"] = {{"epochs", trained.result.epochs_run},
                           {"best_epoch", trained.result.best_epoch},
                           {"best_dev", trained.result.best_dev},
                           {"skipped_samples", trained.skipped}};
    m.write((fs::path(dir) / "manifest.json").string());
    out << "best dev exact match " << trained.result.best_dev << " at epoch "
        << trained.result.best_epoch << "; checkpoint " << ckpt_path << "\n";
  } catch (const DivergenceError& e) {
    err << "training diverged: " << e.what() << "\n";
    m.extra["diverged"] = {{"message", e.what()}, {"epoch", e.epoch()}};
    m.outputs = {log_path};
    m.write((fs::path(dir) / "manifest.json").string());
    return kExitRuntime;
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string checkpoint, test, out, predictions;
};

int cmd_evaluate(const EvaluateArgs& a, const std::vector<std::string>& argv, std::ostream& out,
                 std::ostream&) {
  ModelCheckpoint ckpt = load_checkpoint(a.checkpoint);
  std::vector<ReinflectionSample> test = read_samples(a.test);
  if (test.empty()) throw Error(a.test + ": empty test set");
  LanguageResources res = load_resources(ckpt.language);
  std::vector<Prediction> preds = predict(ckpt, test, res);
  std::vector<std::string> forms, golds;
  std::string listing;
  for (size_t i = 0; i < test.size(); ++i) {
    forms.push_back(preds[i].form);
    golds.push_back(test[i].trg_form);
    listing += test[i].src_form + "\t" + test[i].trg_form + "\t" + preds[i].form + "\n";
  }
  Scores s = evaluate(forms, golds);
  EvalResult r{ckpt.language,
               ckpt.pos,
               std::string(model_kind_name(ckpt.kind)),
               std::string(method_name(ckpt.vocabs.method)),
               ckpt.training.seed,
               ckpt.training.train_size,
               s.exact_match,
               s.mean_edit_distance,
               s.n};
  Manifest m;
  m.command = argv;
  m.config = {{"checkpoint", a.checkpoint}, {"test", a.test}};
  m.seeds = {ckpt.training.seed};
  m.add_input(a.checkpoint);
  m.add_input(a.test);
  if (!a.out.empty()) {
    std::string csv;
    if (fs::exists(a.out)) {
      csv = read_file(a.out);
      parse_results_csv(csv);  // refuse to append to a foreign file
    } else {
      csv = std::string(results_csv_header()) + "\n";
    }
    csv += format_result_row(r) + "\n";
    write_file(a.out, csv);
    m.outputs.push_back(a.out);
  }
  if (!a.predictions.empty()) {
    write_file(a.predictions, listing);
    m.outputs.push_back(a.predictions);
  }
  if (!m.outputs.empty()) m.write(m.outputs.front() + ".manifest.json");
  out << results_csv_header() << "\n" << format_result_row(r) << "\n";
  return kExitOk;
}

struct CurveArgs {
  std::string dataset_dir, sizes = "1000:8000:1000", seeds = "3", methods = "all",
                           models = "seq2seq", hp_file, out;
  int jobs = 1;
};

std::string shard_name(ModelKind k, Method m, const CurveCell& c) {
  return std::string(model_kind_name(k)) + "_" + std::string(method_name(m)) + "_n" +
         std::to_string(c.train_size) + "_s" + std::to_string(c.seed) + ".csv";
}

int cmd_learning_curve(const CurveArgs& a, const std::vector<std::string>& argv,
                       std::ostream& out, std::ostream& err) {
  std::vector<size_t> sizes = parse_sizes(a.sizes);
  std::vector<uint64_t> seeds = parse_seeds(a.seeds);
  std::vector<Method> methods = parse_methods(a.methods);
  std::vector<ModelKind> models = parse_models(a.models);
  if (a.jobs < 1) throw UsageError("--jobs must be at least 1");
  Hyperparameters hp = load_hp(a.hp_file);
  DatasetInfo data = load_dataset(a.dataset_dir);
  for (size_t s : sizes) {
    if (s > data.split.train.size()) {
      throw UsageError("size " + std::to_string(s) + " exceeds the " +
                       std::to_string(data.split.train.size()) + " training samples");
    }
  }
  require_language(data.language);
  LanguageResources res = load_resources(data.language);
  fs::path dir = a.out.empty() ? fs::path(a.dataset_dir) / "curve" : fs::path(a.out);
  fs::create_directories(dir / "shards");

  Manifest m;
  m.command = argv;
  std::vector<std::string> method_names, model_names;
  for (Method x : methods) method_names.emplace_back(method_name(x));
  for (ModelKind x : models) model_names.emplace_back(model_kind_name(x));
  m.config = {{"dataset", a.dataset_dir},
              {"lang", data.language},
              {"pos", data.pos},
              {"sizes", sizes},
              {"methods", method_names},
              {"models", model_names},
              {"hyperparameters", json::parse(format_hyperparameters(hp))}};
  m.seeds = seeds;
  for (const char* f : {"train.tsv", "dev.tsv", "test.tsv"}) {
    m.add_input((fs::path(a.dataset_dir) / f).string());
  }
  const std::string manifest_path = (dir / "manifest.json").string();
  std::set<std::string> completed;
  if (fs::exists(manifest_path)) {
    json old = read_json(manifest_path);
    if (old.value("config", json()) == m.config && old.value("inputs", json()) == json(m.inputs)) {
      for (const auto& s : old.value("completed", json::array())) {
        std::string name = s.get<std::string>();
        if (fs::exists(dir / "shards" / name)) completed.insert(name);
      }
    } else {
      err << "existing manifest has a different configuration; starting over\n";
    }
  }
  std::mutex mu;
  auto save_progress = [&] {
    m.extra["completed"] = completed;
    m.outputs = {};
    m.write(manifest_path);
  };

  std::vector<EvalResult> all;
  for (ModelKind kind : models) {
    for (Method method : methods) {
      LearningCurveConfig cfg;
      cfg.sizes = sizes;
      cfg.seeds = seeds;
      cfg.model = kind;
      cfg.method = method;
      cfg.hp = hp;
      cfg.pos = data.pos;
      cfg.jobs = a.jobs;
      auto skip = [&](const CurveCell& c) {
        return completed.count(shard_name(kind, method, c)) > 0;
      };
      auto done = [&](const CurveCell& c, const EvalResult& r) {
        std::string name = shard_name(kind, method, c);
        write_file((dir / "shards" / name).string(),
                   format_results_csv(std::span<const EvalResult>(&r, 1)));
        std::lock_guard<std::mutex> lock(mu);
        completed.insert(name);
        save_progress();
        out << name << ": exact match " << r.exact_match << "\n";
      };
      learning_curve(data.split, cfg, res, skip, done);
      for (const CurveCell& c : curve_cells(cfg)) {
        std::string name = shard_name(kind, method, c);
        std::vector<EvalResult> rows =
            parse_results_csv(read_file((dir / "shards" / name).string()));
        all.insert(all.end(), rows.begin(), rows.end());
      }
    }
  }
  std::string results = (dir / "results.csv").string();
  std::string plot = (dir / "plot.tsv").string();
  write_file(results, format_results_csv(all));
  write_file(plot, format_plot_data(all));
  m.extra["completed"] = completed;
  m.outputs = {results, plot};
  m.write(manifest_path);
  out << "wrote " << all.size() << " rows to " << results << "\n";
  return kExitOk;
}

struct AuditArgs {
  std::string lang, pos, unimorph;
  double threshold = 0.99;
};

int cmd_audit(const AuditArgs& a, std::ostream& out, std::ostream&) {
  require_language(a.lang);
  LanguageResources res = load_resources(a.lang);
  std::string src = a.unimorph.empty()
                        ? (fs::path(data_dir()) / "unimorph" / (a.lang + ".tsv")).string()
                        : a.unimorph;
  ParseReport parsed = parse_unimorph(src, a.pos.empty() ? TagPredicate{} : pos_filter(a.pos));
  std::set<std::string> unique;
  for (const InflectedForm& f : parsed.forms) unique.insert(f.form);
  std::vector<std::string> words(unique.begin(), unique.end());
  AuditReport report = roundtrip_audit(res.g2p, res.p2g, words);
  for (const AuditEntry* e : report.failures()) {
    out << "FAIL\t" << e->word << "\t" << (e->error.empty() ? e->round_trip : e->error) << "\n";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %zu/%zu forms round-trip (%.2f%%)\n", a.lang.c_str(),
                report.passed, report.count(), 100.0 * report.rate());
  out << buf;
  return report.rate() >= a.threshold ? kExitOk : kExitQuality;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phonological-feature morphological reinflection toolkit", "morphoton"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  ConvertArgs conv;
  CLI::App* convert = app.add_subcommand("convert", "Run a G2P or P2G grammar line by line");
  convert->add_option("--lang", conv.lang, "Language code (tr, fi, ka)")->required();
  convert->add_option("--direction", conv.direction, "g2p or p2g")->required();
  convert->add_option("--in", conv.in, "Input file, one word per line")->required();
  convert->add_option("--out", conv.out, "Output file ('-' for stdout)");

  PrepareArgs prep;
  CLI::App* prepare =
      app.add_subcommand("prepare", "Sample a lemma-split reinflection dataset from UniMorph");
  prepare->add_option("--unimorph", prep.unimorph,
                      "UniMorph TSV (default: <data>/unimorph/<lang>.tsv)");
  prepare->add_option("--lang", prep.lang, "Language code")->required();
  prepare->add_option("--pos", prep.pos, "Part-of-speech tag, e.g. V or N")->required();
  prepare->add_option("--n", prep.n, "Number of reinflection samples")->capture_default_str();
  prepare->add_option("--seed", prep.seed, "Sampling and split seed")->capture_default_str();
  prepare->add_option("--out", prep.out, "Output directory (default: datasets/<lang>_<pos>)");

  TrainArgs tr;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a model on a prepared dataset");
  train_cmd->add_option("--dataset-dir", tr.dataset_dir, "Directory written by prepare")
      ->required();
  train_cmd->add_option("--model", tr.model, "seq2seq or transducer")->capture_default_str();
  train_cmd->add_option("--method", tr.method, "baseline, feat or fuse")->capture_default_str();
  train_cmd->add_option("--hp-file", tr.hp_file, "Hyperparameter JSON file");
  train_cmd->add_option("--seed", tr.seed, "Overrides the seed in the hyperparameters");
  train_cmd->add_option("--out", tr.out, "Run directory");

  EvaluateArgs ev;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Score a checkpoint on a test split");
  evaluate_cmd->add_option("--checkpoint", ev.checkpoint, "Checkpoint file")->required();
  evaluate_cmd->add_option("--test", ev.test, "Test TSV")->required();
  evaluate_cmd->add_option("--out", ev.out, "Results CSV to append to");
  evaluate_cmd->add_option("--predictions", ev.predictions,
                           "Write source, gold and predicted forms here");

  CurveArgs lc;
  CLI::App* curve = app.add_subcommand("learning-curve", "Accuracy as a function of train size");
  curve->add_option("--dataset-dir", lc.dataset_dir, "Directory written by prepare")->required();
  curve->add_option("--sizes", lc.sizes, "start:stop:step or a single size")
      ->capture_default_str();
  curve->add_option("--seeds", lc.seeds, "Seed count (1..N) or comma-separated seeds")
      ->capture_default_str();
  curve->add_option("--methods", lc.methods, "all or a comma list of baseline,feat,fuse")
      ->capture_default_str();
  curve->add_option("--model", lc.models, "seq2seq, transducer or all")->capture_default_str();
  curve->add_option("--hp-file", lc.hp_file, "Hyperparameter JSON file");
  curve->add_option("--out", lc.out, "Output directory (default: <dataset-dir>/curve)");
  curve->add_option("--jobs", lc.jobs, "Cells trained in parallel")->capture_default_str();

  AuditArgs au;
  CLI::App* audit = app.add_subcommand("audit", "Check p2g(g2p(w)) == w over a corpus");
  audit->add_option("--lang", au.lang, "Language code")->required();
  audit->add_option("--pos", au.pos, "Only forms with this part of speech");
  audit->add_option("--unimorph", au.unimorph, "Corpus (default: <data>/unimorph/<lang>.tsv)");
  audit->add_option("--threshold", au.threshold, "Minimum pass rate")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  std::vector<std::string> argv{"morphoton"};
  argv.insert(argv.end(), args.begin(), args.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (*convert) return cmd_convert(conv, out, err);
    if (*prepare) return cmd_prepare(prep, argv, out, err);
    if (*train_cmd) return cmd_train(tr, argv, out, err);
    if (*evaluate_cmd) return cmd_evaluate(ev, argv, out, err);
    if (*curve) return cmd_learning_curve(lc, argv, out, err);
    if (*audit) return cmd_audit(au, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace morphoton
