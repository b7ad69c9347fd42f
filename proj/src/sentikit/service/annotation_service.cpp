#include "sentikit/service/annotation_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <mutex>

#include "sentikit/common/error.hpp"

namespace sentikit::service {

namespace {

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string string_field(const Json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body.at(key).is_string()) {
    throw_error(ErrorKind::kInvalidArgument, std::string("missing string field \"") + key + "\"");
  }
  return body.at(key).get<std::string>();
}

Sentiment label_field(const Json& body) {
  const std::string name = string_field(body, "label");
  auto s = parse_sentiment(name);
  if (!s) throw_error(ErrorKind::kInvalidArgument, "unknown label \"" + name + "\"");
  return *s;
}

Json error_body(const std::string& message) { return {{"error", message}}; }

}  // namespace

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kParse:
      return 400;
    case ErrorKind::kNotFound:
      return 404;
    case ErrorKind::kConflict:
      return 409;
    default:
      return 500;
  }
}

AnnotationService::AnnotationService(const corpus::LabeledCorpus& corpus, ServiceConfig config)
    : config_(std::move(config)),
      corpus_(corpus.without_labels()),
      store_(config_.roles),
      log_(config_.store_path, config_.roles, config_.snapshot_every) {
  require(!corpus_.empty(), "service: empty corpus");
  for (const auto& item : corpus_) order_.push_back(item.comment.id);
  std::sort(order_.begin(), order_.end());
  store_ = log_.replay();
  for (const auto& record : store_.records()) {
    if (!corpus_.find(record.comment_id)) {
      throw_error(ErrorKind::kParse, "store references comment " + record.comment_id + " missing from the corpus");
    }
  }
}

const corpus::Item& AnnotationService::require_comment(const std::string& id) const {
  const corpus::Item* item = corpus_.find(id);
  if (!item) throw_error(ErrorKind::kNotFound, "unknown comment " + id);
  return *item;
}

Json AnnotationService::next_task(const std::string& annotator) const {
  if (!config_.roles.is_primary(annotator)) {
    throw_error(ErrorKind::kInvalidArgument, "\"" + annotator + "\" is not a primary annotator");
  }
  std::shared_lock lock(mutex_);
  const std::string* first = nullptr;
  std::size_t remaining = 0;
  for (const auto& id : order_) {
    if (store_.has_label(id, annotator)) continue;
    if (!first) first = &id;
    ++remaining;
  }
  if (!first) return {{"comment_id", nullptr}, {"text", nullptr}, {"remaining", 0}};
  return {{"comment_id", *first}, {"text", require_comment(*first).comment.text}, {"remaining", remaining}};
}

Json AnnotationService::submit_label(const Json& body) {
  const std::string comment_id = string_field(body, "comment_id");
  const std::string annotator = string_field(body, "annotator");
  const Sentiment label = label_field(body);
  if (!config_.roles.is_primary(annotator)) {
    throw_error(ErrorKind::kInvalidArgument, "\"" + annotator + "\" is not a primary annotator");
  }
  require_comment(comment_id);
  const agreement::AnnotationRecord record{comment_id, annotator, label, now_ms()};

  std::unique_lock lock(mutex_);
  agreement::AnnotationStore next = store_;
  next.add_record(record);
  log_.append(record, next);
  store_ = std::move(next);
  return {{"ok", true}, {"comment_id", comment_id}, {"annotator", annotator}, {"label", sentiment_name(label)}};
}

Json AnnotationService::resolve(const Json& body) {
  const std::string comment_id = string_field(body, "comment_id");
  const Sentiment label = label_field(body);
  if (body.contains("annotator") && string_field(body, "annotator") != config_.roles.adjudicator) {
    throw_error(ErrorKind::kInvalidArgument, "only the adjudicator may resolve disagreements");
  }
  require_comment(comment_id);
  const agreement::AnnotationRecord record{comment_id, config_.roles.adjudicator, label, now_ms()};

  std::unique_lock lock(mutex_);
  agreement::AnnotationStore next = store_;
  next.resolve(comment_id, label, record.timestamp_ms);
  log_.append(record, next);
  store_ = std::move(next);
  return {{"ok", true}, {"comment_id", comment_id}, {"label", sentiment_name(label)}};
}

Json AnnotationService::agreement() const {
  std::shared_lock lock(mutex_);
  return store_.report().to_json();
}

Json AnnotationService::queue() const {
  std::shared_lock lock(mutex_);
  Json items = Json::array();
  for (const auto& id : store_.adjudication_queue()) {
    items.push_back({{"comment_id", id},
                     {"text", require_comment(id).comment.text},
                     {"labels",
                      {{config_.roles.primary_a, sentiment_name(*store_.label_of(id, config_.roles.primary_a))},
                       {config_.roles.primary_b, sentiment_name(*store_.label_of(id, config_.roles.primary_b))}}}});
  }
  return {{"items", items}, {"count", items.size()}};
}

std::string AnnotationService::export_gold() const {
  std::shared_lock lock(mutex_);
  return corpus::to_jsonl(store_.export_gold(corpus_));
}

std::string AnnotationService::status_of(const std::string& id) const {
  const bool a = store_.has_label(id, config_.roles.primary_a);
  const bool b = store_.has_label(id, config_.roles.primary_b);
  if (!a && !b) return "unlabeled";
  if (!(a && b)) return "partial";
  if (store_.adjudication_of(id)) return "resolved";
  return store_.gold_label(id) ? "agreed" : "disputed";
}

Json AnnotationService::comment(const std::string& id) const {
  const corpus::Item& item = require_comment(id);
  std::shared_lock lock(mutex_);
  const auto gold = store_.gold_label(id);
  return {{"id", id},
          {"text", item.comment.text},
          {"status", status_of(id)},
          {"gold", gold ? Json(sentiment_name(*gold)) : Json(nullptr)}};
}

Json AnnotationService::config_json() const {
  return {{"annotators", {config_.roles.primary_a, config_.roles.primary_b}},
          {"adjudicator", config_.roles.adjudicator},
          {"comments", corpus_.size()}};
}

agreement::AnnotationStore AnnotationService::store() const {
  std::shared_lock lock(mutex_);
  return store_;
}

Response AnnotationService::handle(const std::string& method, const std::string& path,
                                   const std::multimap<std::string, std::string>& query, const std::string& body) {
  auto json_response = [](const Json& j) { return Response{200, canonical_dump(j), "application/json"}; };
  auto parse_body = [&]() {
    try {
      return Json::parse(body);
    } catch (const Json::parse_error& e) {
      throw_error(ErrorKind::kInvalidArgument, std::string("request body is not JSON: ") + e.what());
    }
  };
  try {
    static const std::string kComments = "/api/comments/";
    if (method == "GET") {
      if (path == "/api/next") {
        auto it = query.find("annotator");
        if (it == query.end()) throw_error(ErrorKind::kInvalidArgument, "missing annotator parameter");
        return json_response(next_task(it->second));
      }
      if (path == "/api/agreement") return json_response(agreement());
      if (path == "/api/queue") return json_response(queue());
      if (path == "/api/export") return Response{200, export_gold(), "application/x-ndjson"};
      if (path == "/api/config") return json_response(config_json());
      if (path.starts_with(kComments) && path.size() > kComments.size()) {
        return json_response(comment(path.substr(kComments.size())));
      }
    } else if (method == "POST") {
      if (path == "/api/labels") return json_response(submit_label(parse_body()));
      if (path == "/api/resolve") return json_response(resolve(parse_body()));
    }
    return Response{404, canonical_dump(error_body("no route " + method + " " + path))};
  } catch (const Error& e) {
    return Response{http_status(e.kind()), canonical_dump(error_body(e.what()))};
  } catch (const std::exception& e) {
    return Response{500, canonical_dump(error_body(e.what()))};
  }
}

HttpServer::HttpServer(AnnotationService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    std::multimap<std::string, std::string> query(req.params.begin(), req.params.end());
    const Response r = service_.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server_->Get(R"(/api/.*)", dispatch);
  server_->Post(R"(/api/.*)", dispatch);
  if (const auto& dir = service_.config().static_dir) {
    require(std::filesystem::is_directory(*dir), "service: static directory " + dir->string() + " not found");
    server_->set_mount_point("/", dir->string());
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  require(port >= 0 && port <= 65535, "service: port out of range");
  const bool ok = port == 0 ? (port_ = server_->bind_to_any_port(host)) > 0 : server_->bind_to_port(host, port);
  if (!ok) throw_error(ErrorKind::kIo, "service: cannot bind " + host + ":" + std::to_string(port));
  if (port != 0) port_ = port;
  return port_;
}

void HttpServer::listen() {
  require(port_ > 0, "service: bind() before listen()");
  server_->listen_after_bind();
}

void HttpServer::start() {
  require(port_ > 0, "service: bind() before start()");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace sentikit::service
