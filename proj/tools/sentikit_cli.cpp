#include <CLI11.hpp>
#include <json.hpp>

#include <signal.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sentikit/sentikit.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(sk_status s) {
  switch (s) {
    case SK_OK:
      return 0;
    case SK_ERR_INVALID_ARGUMENT:
    case SK_ERR_PARSE:
    case SK_ERR_NOT_FOUND:
    case SK_ERR_CONFLICT:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

void check(sk_status s) {
  if (s != SK_OK) throw Failure{exit_code(s), std::string(sk_status_name(s)) + ": " + sk_last_error()};
}

// Owning wrappers over the C handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
  T** out() { return &p; }
  T* get() const { return p; }
};
using Corpus = Handle<sk_corpus, sk_corpus_free>;
using Store = Handle<sk_store, sk_store_free>;
using Model = Handle<sk_model, sk_model_free>;
using Server = Handle<sk_server, sk_server_free>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { sk_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  out.close();
  if (!out) throw Failure{kExitRuntime, "cannot write " + path};
}

void emit(const std::optional<std::string>& path, const std::string& contents) {
  if (path) {
    write_file(*path, contents);
  } else {
    std::cout << contents;
    if (!contents.empty() && contents.back() != '\n') std::cout << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitValidation, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Inline JSON (starting with '{' or '[') or a path to a JSON file.
Json json_arg(const std::string& value, const std::string& what) {
  const auto first = value.find_first_not_of(" \t\n");
  const std::string text = first != std::string::npos && (value[first] == '{' || value[first] == '[') ? value
                                                                                                      : read_file(value);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Failure{kExitValidation, what + " is not valid JSON: " + e.what()};
  }
}

Json roles_json(const std::string& annotators, const std::string& adjudicator) {
  Json j = Json::object();
  if (!annotators.empty()) {
    std::vector<std::string> ids;
    std::stringstream ss(annotators);
    for (std::string id; std::getline(ss, id, ',');) ids.push_back(id);
    j["annotators"] = ids;
  }
  if (!adjudicator.empty()) j["adjudicator"] = adjudicator;
  return j;
}

const char* format_or_null(const std::string& f) { return f.empty() ? nullptr : f.c_str(); }

/// Expands `--config run.json` into flags: top-level keys and keys of the
/// object named after the subcommand become `--key=value` unless already
/// given on the command line; object values are passed as inline JSON.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "--config" || a.rfind("--config=", 0) == 0;
  });
  if (it == args.end()) return args;
  std::string path;
  if (*it == "--config") {
    if (it + 1 == args.end()) throw Failure{kExitValidation, "--config needs a file"};
    path = *(it + 1);
    args.erase(it, it + 2);
  } else {
    path = it->substr(9);
    args.erase(it);
  }
  const Json cfg = json_arg(path, "config file " + path);
  if (!cfg.is_object()) throw Failure{kExitValidation, "config file must hold a JSON object"};
  if (args.size() < 2) return args;
  const std::string sub = args[1];
  auto given = [&](const std::string& key) {
    for (const auto& a : args) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  auto add = [&](const std::string& key, const Json& v) {
    if (given(key)) return;
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back("--" + key);
    } else if (v.is_string()) {
      extra.push_back("--" + key + "=" + v.get<std::string>());
    } else if (v.is_array() && !v.empty() && v.front().is_string()) {
      std::string joined;
      for (const auto& e : v) joined += (joined.empty() ? "" : ",") + e.get<std::string>();
      extra.push_back("--" + key + "=" + joined);
    } else {
      extra.push_back("--" + key + "=" + v.dump());
    }
  };
  static const std::vector<std::string> kSubcommands = {"ingest", "kappa",   "export-gold", "split",   "train", "evaluate",
                                                       "predict", "cv", "benchmark",   "explain", "serve"};
  for (const auto& [key, value] : cfg.items()) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), key) != kSubcommands.end()) continue;
    add(key, value);
  }
  if (cfg.contains(sub) && cfg.at(sub).is_object()) {
    for (const auto& [key, value] : cfg.at(sub).items()) add(key, value);
  }
  args.insert(args.begin() + 2, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment classification toolkit: annotation agreement, classical and neural models, evaluation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", sk_version());
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of default flag values");

  std::string corpus_path, format, out_path, annotations, annotators, adjudicator, model_tag, model_file,
      options, text, host = "127.0.0.1", store_path, static_dir, train_out, test_out, grid, algorithms,
      hyperparams, embeddings;
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
  std::size_t folds = 5, k = 20, snapshot_every = 100;
  int port = 8080;
  bool strip_labels = false, table = false, select_by_auc = false, quiet = false;

  auto add_out = [&](CLI::App* cmd, const char* help) { cmd->add_option("--out", out_path, help); };
  auto add_roles = [&](CLI::App* cmd) {
    cmd->add_option("--annotators", annotators, "Two primary annotator ids, comma separated");
    cmd->add_option("--adjudicator", adjudicator, "Adjudicator id");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and write it as canonical JSONL");
  ingest->add_option("--corpus", corpus_path, "Input corpus (.jsonl or .csv)")->required();
  ingest->add_option("--format", format, "jsonl or csv (default: from extension)");
  ingest->add_flag("--strip-labels", strip_labels, "Drop labels, keeping ids and texts");
  add_out(ingest, "Output JSONL file");

  auto* kappa = app.add_subcommand("kappa", "Per-class agreement, counts and prevalence");
  kappa->add_option("--annotations", annotations, "Annotation JSONL")->required();
  kappa->add_option("--corpus", corpus_path, "Corpus the annotations refer to")->required();
  add_roles(kappa);
  add_out(kappa, "Write the report here instead of standard output");

  auto* gold = app.add_subcommand("export-gold", "Write the gold-labeled corpus");
  gold->add_option("--annotations", annotations, "Annotation JSONL")->required();
  gold->add_option("--corpus", corpus_path, "Corpus")->required();
  add_roles(gold);
  add_out(gold, "Output JSONL file");

  auto* split = app.add_subcommand("split", "Stratified train/test split");
  split->add_option("--corpus", corpus_path, "Labeled corpus")->required();
  split->add_option("--test-fraction", test_fraction, "Held-out fraction")->capture_default_str();
  split->add_option("--seed", seed, "Seed")->capture_default_str();
  split->add_option("--train-out", train_out, "Training part")->required();
  split->add_option("--test-out", test_out, "Test part")->required();

  auto* train = app.add_subcommand("train", "Train one model and save it");
  train->add_option("--model", model_tag, "nb, rf, svm, lr, knn, cnn or lstm")->required();
  train->add_option("--corpus", corpus_path, "Labeled training corpus")->required();
  train->add_option("--seed", seed, "Seed")->capture_default_str();
  train->add_option("--hyperparams", hyperparams, "Hyperparameters (inline JSON or file)");
  train->add_option("--embeddings", embeddings, "Word-vector text file for cnn/lstm");
  train->add_option("--options", options, "Further training options (inline JSON or file)");
  train->add_option("--out", out_path, "Model file")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Score a labeled corpus with a saved model");
  evaluate->add_option("--model-file", model_file, "Model file")->required();
  evaluate->add_option("--corpus", corpus_path, "Labeled corpus")->required();
  evaluate->add_flag("--table", table, "Print a text table instead of JSON");
  add_out(evaluate, "Write the report here instead of standard output");

  auto* predict = app.add_subcommand("predict", "Per-item scores and labels");
  predict->add_option("--model-file", model_file, "Model file")->required();
  auto* predict_corpus = predict->add_option("--corpus", corpus_path, "Corpus to score");
  auto* predict_text = predict->add_option("--text", text, "Score a single text");
  predict_corpus->excludes(predict_text);
  add_out(predict, "Write JSONL here instead of standard output");

  auto* cv = app.add_subcommand("cv", "k-fold model selection for a classical algorithm");
  cv->add_option("--model", model_tag, "nb, rf, svm, lr or knn")->required();
  cv->add_option("--corpus", corpus_path, "Labeled corpus")->required();
  cv->add_option("--seed", seed, "Seed")->capture_default_str();
  cv->add_option("--folds", folds, "Fold count")->capture_default_str();
  cv->add_option("--grid", grid, "Array of hyperparameter objects (inline JSON or file)");
  cv->add_flag("--select-by-auc", select_by_auc, "Select on macro AUC instead of accuracy");
  add_out(cv, "Write the result here instead of standard output");

  auto* bench = app.add_subcommand("benchmark", "Split, select, train all models, evaluate on the holdout");
  bench->add_option("--corpus", corpus_path, "Gold-labeled corpus")->required();
  bench->add_option("--seed", seed, "Seed")->capture_default_str();
  bench->add_option("--algorithms", algorithms, "Comma-separated subset of nb,rf,svm,lr,knn,cnn,lstm");
  bench->add_option("--embeddings", embeddings, "Word-vector text file for cnn/lstm");
  bench->add_option("--options", options, "Benchmark configuration (inline JSON or file)");
  bench->add_flag("--select-by-auc", select_by_auc, "Select on macro AUC instead of accuracy");
  bench->add_flag("--quiet", quiet, "No progress lines on standard error");
  add_out(bench, "Write the full JSON report here");

  auto* expl = app.add_subcommand("explain", "Top words of a logistic-regression model");
  expl->add_option("--model-file", model_file, "Logistic-regression model file")->required();
  expl->add_option("-k,--k", k, "Number of words")->capture_default_str();
  add_out(expl, "Word-importance JSON file");

  auto* serve = app.add_subcommand("serve", "Run the annotation HTTP service");
  serve->add_option("--corpus", corpus_path, "Comments to annotate")->required();
  serve->add_option("--store", store_path, "Annotation log file")->required();
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--static", static_dir, "Directory of web assets served at /");
  serve->add_option("--snapshot-every", snapshot_every, "Log records between snapshots")->capture_default_str();
  add_roles(serve);

  std::vector<std::string> args;
  try {
    args = expand_config(std::vector<std::string>(argv, argv + argc));
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitValidation;
  }
  const std::optional<std::string> out = out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);

  try {
    if (*ingest) {
      Corpus c;
      check(sk_corpus_load(corpus_path.c_str(), format_or_null(format), c.out()));
      std::size_t counts[3] = {0, 0, 0}, unlabeled = 0;
      check(sk_corpus_class_counts(c.get(), counts, &unlabeled));
      OwnedString jsonl;
      check(sk_corpus_to_jsonl(c.get(), jsonl.out()));
      std::string body = jsonl.str();
      if (strip_labels) {
        std::string stripped;
        std::stringstream lines(body);
        for (std::string line; std::getline(lines, line);) {
          Json j = Json::parse(line);
          j.erase("label");
          stripped += j.dump() + "\n";
        }
        body = stripped;
      }
      if (out) write_file(*out, body);
      Json summary = {{"items", sk_corpus_size(c.get())},
                      {"unlabeled", unlabeled},
                      {"counts", {{"Negative", counts[0]}, {"Positive", counts[1]}, {"Neutral", counts[2]}}}};
      if (!out) {
        std::cout << body;
      } else {
        std::cout << summary.dump() << "\n";
      }
    } else if (*kappa || *gold) {
      Corpus c;
      check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
      Store s;
      const std::string roles = roles_json(annotators, adjudicator).dump();
      check(sk_store_load(annotations.c_str(), roles.c_str(), c.get(), s.out()));
      if (*kappa) {
        OwnedString report;
        check(sk_store_report(s.get(), report.out()));
        emit(out, report.str() + "\n");
      } else {
        Corpus g;
        check(sk_store_export_gold(s.get(), c.get(), g.out()));
        OwnedString jsonl;
        check(sk_corpus_to_jsonl(g.get(), jsonl.out()));
        emit(out, jsonl.str());
      }
    } else if (*split) {
      Corpus c, a, b;
      check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
      check(sk_corpus_split(c.get(), test_fraction, seed, a.out(), b.out()));
      check(sk_corpus_save(a.get(), train_out.c_str()));
      check(sk_corpus_save(b.get(), test_out.c_str()));
      std::cout << Json{{"train", sk_corpus_size(a.get())}, {"test", sk_corpus_size(b.get())}}.dump() << "\n";
    } else if (*train) {
      Corpus c;
      check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
      Json opts = options.empty() ? Json::object() : json_arg(options, "--options");
      opts["seed"] = seed;
      if (!hyperparams.empty()) opts["hyperparams"] = json_arg(hyperparams, "--hyperparams");
      if (!embeddings.empty()) opts["neural"]["embeddings"] = embeddings;
      Model m;
      check(sk_model_train(model_tag.c_str(), c.get(), opts.dump().c_str(), m.out()));
      check(sk_model_save(m.get(), out_path.c_str()));
    } else if (*evaluate) {
      Model m;
      check(sk_model_load(model_file.c_str(), m.out()));
      Corpus c;
      check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
      OwnedString report;
      check(sk_model_evaluate(m.get(), c.get(), report.out()));
      if (table) {
        OwnedString tag;
        check(sk_model_algorithm(m.get(), tag.out()));
        const Json r = Json::parse(report.str());
        std::ostringstream s;
        s << "Algorithm | Accuracy | Averaged AUC\n"
          << tag.str() << " | " << r.at("accuracy").get<double>() << " | "
          << (r.at("macro_auc").is_null() ? std::string("n/a") : std::to_string(r.at("macro_auc").get<double>()))
          << "\n";
        emit(out, s.str());
      } else {
        emit(out, report.str() + "\n");
      }
    } else if (*predict) {
      Model m;
      check(sk_model_load(model_file.c_str(), m.out()));
      if (!text.empty()) {
        double scores[3];
        int label = 0;
        check(sk_model_predict(m.get(), text.c_str(), scores, &label));
        static const char* kNames[] = {"Negative", "Positive", "Neutral"};
        emit(out, Json{{"label", kNames[label]}, {"scores", scores}}.dump() + "\n");
      } else {
        if (corpus_path.empty()) throw Failure{kExitValidation, "predict needs --corpus or --text"};
        Corpus c;
        check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
        OwnedString jsonl;
        check(sk_model_predict_corpus(m.get(), c.get(), jsonl.out()));
        emit(out, jsonl.str());
      }
    } else if (*cv) {
      Corpus c;
      check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
      Json opts = {{"seed", seed}, {"folds", folds}, {"select_by_auc", select_by_auc}};
      if (!grid.empty()) opts["grid"] = json_arg(grid, "--grid");
      OwnedString result;
      check(sk_cross_validate(model_tag.c_str(), c.get(), opts.dump().c_str(), result.out()));
      emit(out, result.str() + "\n");
    } else if (*bench) {
      Corpus c;
      check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
      Json opts = options.empty() ? Json::object() : json_arg(options, "--options");
      opts["seed"] = seed;
      if (select_by_auc) opts["select_by_auc"] = true;
      if (!embeddings.empty()) opts["neural"]["embeddings"] = embeddings;
      if (!algorithms.empty()) {
        std::vector<std::string> tags;
        std::stringstream ss(algorithms);
        for (std::string t; std::getline(ss, t, ',');) tags.push_back(t);
        opts["algorithms"] = tags;
      }
      auto log = [](const char* line, void*) { std::cerr << line << std::endl; };
      OwnedString report, table_text;
      check(sk_benchmark(c.get(), opts.dump().c_str(), quiet ? nullptr : +log, nullptr, out ? report.out() : nullptr,
                         table_text.out()));
      if (out) write_file(*out, report.str());
      std::cout << table_text.str();
    } else if (*expl) {
      Model m;
      check(sk_model_load(model_file.c_str(), m.out()));
      if (out) {
        check(sk_explain_export(m.get(), k, out->c_str()));
      } else {
        OwnedString words;
        check(sk_model_explain(m.get(), k, words.out()));
        std::cout << words.str() << "\n";
      }
    } else if (*serve) {
      Corpus c;
      check(sk_corpus_load(corpus_path.c_str(), nullptr, c.out()));
      Json cfg = roles_json(annotators, adjudicator);
      cfg["store"] = store_path;
      cfg["snapshot_every"] = snapshot_every;
      if (!static_dir.empty()) cfg["static_dir"] = static_dir;
      Server s;
      check(sk_server_create(c.get(), cfg.dump().c_str(), s.out()));
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
      int bound = 0;
      check(sk_server_bind(s.get(), host.c_str(), port, &bound));
      check(sk_server_start(s.get()));
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      int received = 0;
      sigwait(&signals, &received);
      check(sk_server_stop(s.get()));
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return 0;
}
