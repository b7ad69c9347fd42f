#ifndef SENTIKIT_SENTIKIT_H
#define SENTIKIT_SENTIKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(SENTIKIT_BUILDING_LIBRARY)
#define SK_API __attribute__((visibility("default")))
#else
#define SK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sk_status {
  SK_OK = 0,
  SK_ERR_INVALID_ARGUMENT = 1,
  SK_ERR_PARSE = 2,
  SK_ERR_NOT_FOUND = 3,
  SK_ERR_CONFLICT = 4,
  SK_ERR_IO = 5,
  SK_ERR_NUMERIC = 6,
  SK_ERR_INTERNAL = 7
} sk_status;

/* Labels as integers: 0 Negative, 1 Positive, 2 Neutral. */
enum { SK_NEGATIVE = 0, SK_POSITIVE = 1, SK_NEUTRAL = 2, SK_NUM_CLASSES = 3 };

typedef struct sk_corpus sk_corpus;
typedef struct sk_store sk_store;
typedef struct sk_model sk_model;
typedef struct sk_server sk_server;

typedef void (*sk_log_fn)(const char* line, void* user);

SK_API const char* sk_version(void);
SK_API const char* sk_status_name(sk_status status);
/* Message of the last failed call on this thread; "" if none. */
SK_API const char* sk_last_error(void);
/* Releases any char* produced by this library. */
SK_API void sk_string_free(char* s);

/* Corpora. `format` is "jsonl", "csv", or NULL to infer from the file
   extension (".csv" is CSV, anything else JSONL). */
SK_API sk_status sk_corpus_load(const char* path, const char* format, sk_corpus** out);
SK_API sk_status sk_corpus_parse(const char* contents, const char* format, sk_corpus** out);
SK_API void sk_corpus_free(sk_corpus* corpus);
SK_API size_t sk_corpus_size(const sk_corpus* corpus);
/* counts[3] receives per-class label counts. */
SK_API sk_status sk_corpus_class_counts(const sk_corpus* corpus, size_t counts[3], size_t* unlabeled);
SK_API sk_status sk_corpus_to_jsonl(const sk_corpus* corpus, char** out);
SK_API sk_status sk_corpus_save(const sk_corpus* corpus, const char* path);
SK_API sk_status sk_corpus_split(const sk_corpus* corpus, double test_fraction, uint64_t seed, sk_corpus** train,
                                 sk_corpus** test);
SK_API sk_status sk_corpus_dev_split(const sk_corpus* train, double dev_fraction, uint64_t seed, sk_corpus** fit,
                                     sk_corpus** dev);

/* Annotations. `roles_json` is NULL or {"annotators": [a, b], "adjudicator": c}.
   When `corpus` is given every annotated comment id must occur in it. */
SK_API sk_status sk_store_load(const char* path, const char* roles_json, const sk_corpus* corpus, sk_store** out);
SK_API void sk_store_free(sk_store* store);
SK_API sk_status sk_store_report(const sk_store* store, char** json_out);
SK_API sk_status sk_store_export_gold(const sk_store* store, const sk_corpus* corpus, sk_corpus** out);

/* Statistics. */
SK_API sk_status sk_kappa_binary(const int* labels_a, const int* labels_b, size_t n, int target, double* out);
SK_API sk_status sk_auc_binary(const double* scores, const int* positives, size_t n, double* out);

/* Models. `options_json` may be NULL; keys: seed, hyperparams, featurizer,
   neural. */
SK_API sk_status sk_model_train(const char* algorithm, const sk_corpus* train, const char* options_json,
                                sk_model** out);
SK_API sk_status sk_model_load(const char* path, sk_model** out);
SK_API sk_status sk_model_save(const sk_model* model, const char* path);
SK_API void sk_model_free(sk_model* model);
SK_API sk_status sk_model_algorithm(const sk_model* model, char** tag_out);
SK_API sk_status sk_model_predict(const sk_model* model, const char* text, double scores[3], int* label);
/* One JSON line per item: {"id", "label", "scores"}. */
SK_API sk_status sk_model_predict_corpus(const sk_model* model, const sk_corpus* corpus, char** jsonl_out);
SK_API sk_status sk_model_evaluate(const sk_model* model, const sk_corpus* gold, char** report_json);
/* Logistic-regression models only: top-k word importances as a JSON array. */
SK_API sk_status sk_model_explain(const sk_model* model, size_t k, char** json_out);
SK_API sk_status sk_explain_export(const sk_model* model, size_t k, const char* path);

/* Protocol. `options_json` keys for cross-validation: seed, folds, grid
   (array of hyperparameter objects), select_by_auc, featurizer. */
SK_API sk_status sk_cross_validate(const char* algorithm, const sk_corpus* corpus, const char* options_json,
                                   char** result_json);
/* Full holdout benchmark. Either output pointer may be NULL. */
SK_API sk_status sk_benchmark(const sk_corpus* gold, const char* config_json, sk_log_fn log, void* user,
                              char** report_json, char** table_out);

/* Annotation service. `config_json` keys: store (required), annotators,
   adjudicator, snapshot_every, static_dir. */
SK_API sk_status sk_server_create(const sk_corpus* corpus, const char* config_json, sk_server** out);
SK_API sk_status sk_server_bind(sk_server* server, const char* host, int port, int* bound_port);
/* Blocks until sk_server_stop is called from another thread. */
SK_API sk_status sk_server_run(sk_server* server);
SK_API sk_status sk_server_start(sk_server* server);
SK_API sk_status sk_server_stop(sk_server* server);
SK_API void sk_server_free(sk_server* server);
/* Routes one request without the network; `query` is "k=v&k2=v2" or NULL. */
SK_API sk_status sk_server_request(sk_server* server, const char* method, const char* path, const char* query,
                                   const char* body, int* http_status, char** body_out);

#ifdef __cplusplus
}
#endif

#endif
