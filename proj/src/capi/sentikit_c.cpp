#include "sentikit/sentikit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "sentikit/agreement/kappa.hpp"
#include "sentikit/agreement/store.hpp"
#include "sentikit/common/error.hpp"
#include "sentikit/common/json_io.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/corpus/split.hpp"
#include "sentikit/eval/cross_validate.hpp"
#include "sentikit/eval/metrics.hpp"
#include "sentikit/explain/explain.hpp"
#include "sentikit/pipeline/benchmark.hpp"
#include "sentikit/pipeline/pipeline.hpp"
#include "sentikit/service/annotation_service.hpp"

using namespace sentikit;

struct sk_corpus {
  corpus::LabeledCorpus value;
};
struct sk_store {
  agreement::AnnotationStore value;
};
struct sk_model {
  pipeline::TrainedModel value;
};
struct sk_server {
  corpus::LabeledCorpus corpus;
  std::unique_ptr<service::AnnotationService> service;
  std::unique_ptr<service::HttpServer> http;
};

namespace {

thread_local std::string g_last_error;

sk_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return SK_ERR_INVALID_ARGUMENT;
    case ErrorKind::kParse:
      return SK_ERR_PARSE;
    case ErrorKind::kNotFound:
      return SK_ERR_NOT_FOUND;
    case ErrorKind::kConflict:
      return SK_ERR_CONFLICT;
    case ErrorKind::kIo:
      return SK_ERR_IO;
    case ErrorKind::kNumeric:
      return SK_ERR_NUMERIC;
  }
  return SK_ERR_INTERNAL;
}

template <class F>
sk_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SK_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const Json::exception& e) {
    g_last_error = e.what();
    return SK_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SK_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (!p) throw_error(ErrorKind::kInvalidArgument, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

Json parse_options(const char* json) {
  if (!json || !*json) return Json::object();
  Json j;
  try {
    j = Json::parse(json);
  } catch (const Json::parse_error& e) {
    throw_error(ErrorKind::kInvalidArgument, std::string("options are not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw_error(ErrorKind::kInvalidArgument, "options must be a JSON object");
  return j;
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> keys, const char* what) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw_error(ErrorKind::kInvalidArgument, std::string(what) + ": unknown option \"" + key + "\"");
  }
}

Algorithm algorithm_arg(const char* tag) {
  need(tag, "algorithm");
  auto a = parse_algorithm(tag);
  if (!a) throw_error(ErrorKind::kInvalidArgument, std::string("unknown algorithm \"") + tag + "\"");
  return *a;
}

corpus::Format format_arg(const char* format, const char* path) {
  if (format) {
    auto f = corpus::parse_format(format);
    if (!f) throw_error(ErrorKind::kInvalidArgument, std::string("unknown corpus format \"") + format + "\"");
    return *f;
  }
  const std::string p = path ? path : "";
  return p.size() >= 4 && p.compare(p.size() - 4, 4, ".csv") == 0 ? corpus::Format::kCsv : corpus::Format::kJsonl;
}

Sentiment label_arg(int v) {
  if (v < 0 || v >= static_cast<int>(kNumClasses)) {
    throw_error(ErrorKind::kInvalidArgument, "label index " + std::to_string(v) + " out of range");
  }
  return sentiment_at(static_cast<std::size_t>(v));
}

agreement::AnnotatorRoles roles_from(const Json& j) {
  agreement::AnnotatorRoles roles;
  if (j.contains("annotators")) {
    const auto ids = j.at("annotators").get<std::vector<std::string>>();
    if (ids.size() != 2) throw_error(ErrorKind::kInvalidArgument, "exactly two primary annotators are required");
    roles.primary_a = ids[0];
    roles.primary_b = ids[1];
  }
  if (j.contains("adjudicator")) roles.adjudicator = j.at("adjudicator").get<std::string>();
  roles.validate();
  return roles;
}

pipeline::TrainOptions train_options(const Json& o) {
  reject_unknown(o, {"seed", "hyperparams", "featurizer", "neural"}, "train");
  pipeline::TrainOptions opts;
  opts.seed = o.value("seed", std::uint64_t{0});
  if (o.contains("hyperparams")) opts.hyperparams = classical::hyperparams_from_json(o.at("hyperparams"));
  if (o.contains("featurizer")) opts.featurizer = pipeline::FeaturizerConfig::from_json(o.at("featurizer"));
  if (o.contains("neural")) opts.neural = pipeline::NeuralOptions::from_json(o.at("neural"));
  return opts;
}

}  // namespace

extern "C" {

const char* sk_version(void) { return "0.3.0"; }

const char* sk_status_name(sk_status status) {
  switch (status) {
    case SK_OK:
      return "ok";
    case SK_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case SK_ERR_PARSE:
      return "parse error";
    case SK_ERR_NOT_FOUND:
      return "not found";
    case SK_ERR_CONFLICT:
      return "conflict";
    case SK_ERR_IO:
      return "i/o error";
    case SK_ERR_NUMERIC:
      return "numeric error";
    case SK_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* sk_last_error(void) { return g_last_error.c_str(); }

void sk_string_free(char* s) { std::free(s); }

sk_status sk_corpus_load(const char* path, const char* format, sk_corpus** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sk_corpus{corpus::load_corpus(path, format_arg(format, path))};
  });
}

sk_status sk_corpus_parse(const char* contents, const char* format, sk_corpus** out) {
  return guarded([&] {
    need(contents, "contents");
    need(out, "out");
    const auto f = format_arg(format ? format : "jsonl", nullptr);
    *out = new sk_corpus{f == corpus::Format::kCsv ? corpus::parse_csv(contents) : corpus::parse_jsonl(contents)};
  });
}

void sk_corpus_free(sk_corpus* corpus) { delete corpus; }

size_t sk_corpus_size(const sk_corpus* corpus) { return corpus ? corpus->value.size() : 0; }

sk_status sk_corpus_class_counts(const sk_corpus* corpus, size_t counts[3], size_t* unlabeled) {
  return guarded([&] {
    need(corpus, "corpus");
    need(counts, "counts");
    const auto c = corpus->value.class_counts();
    for (std::size_t i = 0; i < kNumClasses; ++i) counts[i] = c[i];
    if (unlabeled) *unlabeled = corpus->value.unlabeled_count();
  });
}

sk_status sk_corpus_to_jsonl(const sk_corpus* corpus, char** out) {
  return guarded([&] {
    need(corpus, "corpus");
    need(out, "out");
    *out = dup_string(corpus::to_jsonl(corpus->value));
  });
}

sk_status sk_corpus_save(const sk_corpus* corpus, const char* path) {
  return guarded([&] {
    need(corpus, "corpus");
    need(path, "path");
    corpus::save_corpus(corpus->value, path);
  });
}

sk_status sk_corpus_split(const sk_corpus* corpus, double test_fraction, uint64_t seed, sk_corpus** train,
                          sk_corpus** test) {
  return guarded([&] {
    need(corpus, "corpus");
    need(train, "train");
    need(test, "test");
    auto split = corpus::stratified_split(corpus->value, test_fraction, seed);
    auto a = std::make_unique<sk_corpus>(sk_corpus{std::move(split.first)});
    auto b = std::make_unique<sk_corpus>(sk_corpus{std::move(split.second)});
    *train = a.release();
    *test = b.release();
  });
}

sk_status sk_corpus_dev_split(const sk_corpus* train, double dev_fraction, uint64_t seed, sk_corpus** fit,
                              sk_corpus** dev) {
  return guarded([&] {
    need(train, "train");
    need(fit, "fit");
    need(dev, "dev");
    auto split = corpus::dev_split(train->value, dev_fraction, seed);
    auto a = std::make_unique<sk_corpus>(sk_corpus{std::move(split.first)});
    auto b = std::make_unique<sk_corpus>(sk_corpus{std::move(split.second)});
    *fit = a.release();
    *dev = b.release();
  });
}

sk_status sk_store_load(const char* path, const char* roles_json, const sk_corpus* corpus, sk_store** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    const Json roles = parse_options(roles_json);
    reject_unknown(roles, {"annotators", "adjudicator"}, "roles");
    auto store = agreement::load_annotations(path, roles_from(roles));
    if (corpus) {
      for (const auto& record : store.records()) {
        if (!corpus->value.find(record.comment_id)) {
          throw_error(ErrorKind::kNotFound, "annotation for comment " + record.comment_id + " not in the corpus");
        }
      }
    }
    *out = new sk_store{std::move(store)};
  });
}

void sk_store_free(sk_store* store) { delete store; }

sk_status sk_store_report(const sk_store* store, char** json_out) {
  return guarded([&] {
    need(store, "store");
    need(json_out, "json_out");
    *json_out = dup_string(canonical_dump(store->value.report().to_json()));
  });
}

sk_status sk_store_export_gold(const sk_store* store, const sk_corpus* corpus, sk_corpus** out) {
  return guarded([&] {
    need(store, "store");
    need(corpus, "corpus");
    need(out, "out");
    *out = new sk_corpus{store->value.export_gold(corpus->value)};
  });
}

sk_status sk_kappa_binary(const int* labels_a, const int* labels_b, size_t n, int target, double* out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) {
      need(labels_a, "labels_a");
      need(labels_b, "labels_b");
    }
    std::vector<Sentiment> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(label_arg(labels_a[i]));
      b.push_back(label_arg(labels_b[i]));
    }
    *out = agreement::cohen_kappa_binary(a, b, label_arg(target));
  });
}

sk_status sk_auc_binary(const double* scores, const int* positives, size_t n, double* out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) {
      need(scores, "scores");
      need(positives, "positives");
    }
    auto flags = std::make_unique<bool[]>(n);
    for (std::size_t i = 0; i < n; ++i) flags[i] = positives[i] != 0;
    *out = eval::roc_auc_binary(std::span<const double>(scores, n), std::span<const bool>(flags.get(), n));
  });
}

sk_status sk_model_train(const char* algorithm, const sk_corpus* train, const char* options_json, sk_model** out) {
  return guarded([&] {
    need(train, "train");
    need(out, "out");
    const Algorithm a = algorithm_arg(algorithm);
    *out = new sk_model{pipeline::train_model(a, train->value, train_options(parse_options(options_json)))};
  });
}

sk_status sk_model_load(const char* path, sk_model** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sk_model{pipeline::TrainedModel::load(path)};
  });
}

sk_status sk_model_save(const sk_model* model, const char* path) {
  return guarded([&] {
    need(model, "model");
    need(path, "path");
    model->value.save(path);
  });
}

void sk_model_free(sk_model* model) { delete model; }

sk_status sk_model_algorithm(const sk_model* model, char** tag_out) {
  return guarded([&] {
    need(model, "model");
    need(tag_out, "tag_out");
    *tag_out = dup_string(std::string(algorithm_tag(model->value.algorithm())));
  });
}

sk_status sk_model_predict(const sk_model* model, const char* text, double scores[3], int* label) {
  return guarded([&] {
    need(model, "model");
    need(text, "text");
    const auto s = model->value.score_text(text);
    if (scores) {
      for (std::size_t c = 0; c < kNumClasses; ++c) scores[c] = s[c];
    }
    if (label) *label = static_cast<int>(class_index(eval::predict_label(s)));
  });
}

sk_status sk_model_predict_corpus(const sk_model* model, const sk_corpus* corpus, char** jsonl_out) {
  return guarded([&] {
    need(model, "model");
    need(corpus, "corpus");
    need(jsonl_out, "jsonl_out");
    std::string out;
    for (const auto& item : corpus->value) {
      const auto s = model->value.score_text(item.comment.text);
      out += canonical_dump({{"id", item.comment.id},
                             {"label", sentiment_name(eval::predict_label(s))},
                             {"scores", s}});
      out += '\n';
    }
    *jsonl_out = dup_string(out);
  });
}

sk_status sk_model_evaluate(const sk_model* model, const sk_corpus* gold, char** report_json) {
  return guarded([&] {
    need(model, "model");
    need(gold, "gold");
    need(report_json, "report_json");
    *report_json = dup_string(canonical_dump(model->value.evaluate(gold->value).to_json()));
  });
}

namespace {

std::vector<explain::WordImportance> explain_model(const sk_model* model, size_t k) {
  need(model, "model");
  const auto* clf = model->value.classifier();
  if (!clf) throw_error(ErrorKind::kInvalidArgument, "explain: requires a logistic-regression model");
  return explain::top_words(*clf, model->value.featurizer().vocabulary(), k);
}

}  // namespace

sk_status sk_model_explain(const sk_model* model, size_t k, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    *json_out = dup_string(canonical_dump(explain::to_json(explain_model(model, k))));
  });
}

sk_status sk_explain_export(const sk_model* model, size_t k, const char* path) {
  return guarded([&] {
    need(path, "path");
    explain::export_wordcloud(explain_model(model, k), path);
  });
}

sk_status sk_cross_validate(const char* algorithm, const sk_corpus* corpus, const char* options_json,
                            char** result_json) {
  return guarded([&] {
    need(corpus, "corpus");
    need(result_json, "result_json");
    const Algorithm a = algorithm_arg(algorithm);
    const Json o = parse_options(options_json);
    reject_unknown(o, {"seed", "folds", "grid", "select_by_auc", "featurizer"}, "cv");
    eval::CvConfig config;
    config.seed = o.value("seed", config.seed);
    config.folds = o.value("folds", config.folds);
    config.select_by_auc = o.value("select_by_auc", config.select_by_auc);
    if (o.contains("featurizer")) config.featurizer = pipeline::FeaturizerConfig::from_json(o.at("featurizer"));
    std::vector<classical::Hyperparams> grid;
    if (o.contains("grid")) {
      for (const auto& entry : o.at("grid")) grid.push_back(classical::hyperparams_from_json(entry));
    } else {
      grid = classical::default_grid(a, {});
    }
    *result_json = dup_string(canonical_dump(eval::cross_validate(a, grid, corpus->value, config).to_json()));
  });
}

sk_status sk_benchmark(const sk_corpus* gold, const char* config_json, sk_log_fn log, void* user, char** report_json,
                       char** table_out) {
  return guarded([&] {
    need(gold, "gold");
    const Json o = parse_options(config_json);
    reject_unknown(o, {"seed", "test_fraction", "folds", "select_by_auc", "featurizer", "neural", "algorithms", "grids"},
                   "benchmark");
    auto config = pipeline::BenchmarkConfig::from_json(o, {});
    if (log) config.log = [log, user](const std::string& line) { log(line.c_str(), user); };
    const auto report = pipeline::run_benchmark(gold->value, config);
    std::unique_ptr<char, decltype(&std::free)> report_text(
        report_json ? dup_string(canonical_dump(report.to_json()) + "\n") : nullptr, &std::free);
    if (table_out) *table_out = dup_string(report.table());
    if (report_json) *report_json = report_text.release();
  });
}

sk_status sk_server_create(const sk_corpus* corpus, const char* config_json, sk_server** out) {
  return guarded([&] {
    need(corpus, "corpus");
    need(out, "out");
    const Json o = parse_options(config_json);
    reject_unknown(o, {"store", "annotators", "adjudicator", "snapshot_every", "static_dir"}, "serve");
    if (!o.contains("store")) throw_error(ErrorKind::kInvalidArgument, "serve: a store path is required");
    service::ServiceConfig config;
    config.store_path = o.at("store").get<std::string>();
    config.roles = roles_from(o);
    config.snapshot_every = o.value("snapshot_every", config.snapshot_every);
    if (o.contains("static_dir") && !o.at("static_dir").is_null()) {
      config.static_dir = o.at("static_dir").get<std::string>();
    }
    auto server = std::make_unique<sk_server>();
    server->corpus = corpus->value;
    server->service = std::make_unique<service::AnnotationService>(server->corpus, std::move(config));
    server->http = std::make_unique<service::HttpServer>(*server->service);
    *out = server.release();
  });
}

sk_status sk_server_bind(sk_server* server, const char* host, int port, int* bound_port) {
  return guarded([&] {
    need(server, "server");
    const int p = server->http->bind(host ? host : "127.0.0.1", port);
    if (bound_port) *bound_port = p;
  });
}

sk_status sk_server_run(sk_server* server) {
  return guarded([&] {
    need(server, "server");
    server->http->listen();
  });
}

sk_status sk_server_start(sk_server* server) {
  return guarded([&] {
    need(server, "server");
    server->http->start();
  });
}

sk_status sk_server_stop(sk_server* server) {
  return guarded([&] {
    need(server, "server");
    server->http->stop();
  });
}

void sk_server_free(sk_server* server) {
  if (!server) return;
  if (server->http) server->http->stop();
  delete server;
}

sk_status sk_server_request(sk_server* server, const char* method, const char* path, const char* query,
                            const char* body, int* http_status, char** body_out) {
  return guarded([&] {
    need(server, "server");
    need(method, "method");
    need(path, "path");
    std::multimap<std::string, std::string> params;
    if (query) {
      std::string q(query);
      std::size_t start = 0;
      while (start <= q.size() && !q.empty()) {
        const auto amp = q.find('&', start);
        const std::string part = q.substr(start, amp == std::string::npos ? std::string::npos : amp - start);
        if (!part.empty()) {
          const auto eq = part.find('=');
          params.emplace(part.substr(0, eq), eq == std::string::npos ? "" : part.substr(eq + 1));
        }
        if (amp == std::string::npos) break;
        start = amp + 1;
      }
    }
    const auto r = server->service->handle(method, path, params, body ? body : "");
    if (http_status) *http_status = r.status;
    if (body_out) *body_out = dup_string(r.body);
  });
}

}  // extern "C"
