#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "sentikit/agreement/store.hpp"
#include "sentikit/common/error.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/service/store_log.hpp"

namespace httplib {
class Server;
}

namespace sentikit::service {

struct ServiceConfig {
  agreement::AnnotatorRoles roles;
  std::filesystem::path store_path;
  std::size_t snapshot_every = 100;
  /// Served at "/" when set.
  std::optional<std::filesystem::path> static_dir;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// The annotation workflow over a fixed corpus. Reads run concurrently;
/// mutations are serialized and reach the log (fsync) before they become
/// visible or acknowledged.
class AnnotationService {
 public:
  AnnotationService(const corpus::LabeledCorpus& corpus, ServiceConfig config);

  /// {comment_id, text, remaining}; comment_id and text are null once the
  /// annotator has labeled everything.
  Json next_task(const std::string& annotator) const;
  /// Body {comment_id, annotator, label}.
  Json submit_label(const Json& body);
  Json agreement() const;
  /// Disputed, unresolved comments with both primary labels.
  Json queue() const;
  /// Body {comment_id, label[, annotator]}; a given annotator must be the
  /// adjudicator.
  Json resolve(const Json& body);
  /// Gold-labeled corpus lines.
  std::string export_gold() const;
  Json comment(const std::string& id) const;
  Json config_json() const;

  agreement::AnnotationStore store() const;
  const ServiceConfig& config() const noexcept { return config_; }

  /// Transport-independent routing of the /api endpoints. Errors map to
  /// 400 (validation), 404 (unknown id or route), 409 (conflict).
  Response handle(const std::string& method, const std::string& path,
                  const std::multimap<std::string, std::string>& query, const std::string& body);

 private:
  const corpus::Item& require_comment(const std::string& id) const;
  std::string status_of(const std::string& id) const;

  ServiceConfig config_;
  corpus::LabeledCorpus corpus_;
  std::vector<std::string> order_;  // comment ids ascending
  mutable std::shared_mutex mutex_;
  agreement::AnnotationStore store_;
  StoreLog log_;
};

int http_status(ErrorKind kind) noexcept;

/// HTTP front end for an AnnotationService.
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); requires bind().
  void listen();
  /// listen() on a background thread; returns once ready.
  void start();
  void stop();
  int port() const noexcept { return port_; }

 private:
  AnnotationService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace sentikit::service
