#include "sentikit/service/store_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "sentikit/common/error.hpp"

namespace sentikit::service {

namespace {

[[noreturn]] void io_error(const std::string& what) {
  throw_error(ErrorKind::kIo, what + ": " + std::strerror(errno));
}

}  // namespace

void apply_record(agreement::AnnotationStore& store, const agreement::AnnotationRecord& record) {
  if (record.annotator_id == store.roles().adjudicator) {
    store.resolve(record.comment_id, record.label, record.timestamp_ms);
  } else {
    store.add_record(record);
  }
}

StoreLog::StoreLog(std::filesystem::path log_path, agreement::AnnotatorRoles roles, std::size_t snapshot_every)
    : log_path_(std::move(log_path)), roles_(std::move(roles)), snapshot_every_(snapshot_every) {
  roles_.validate();
}

StoreLog::~StoreLog() {
  if (fd_ >= 0) ::close(fd_);
}

std::filesystem::path StoreLog::snapshot_path() const {
  auto p = log_path_;
  p += ".snapshot";
  return p;
}

agreement::AnnotationStore StoreLog::replay() {
  std::string contents;
  if (std::filesystem::exists(log_path_)) contents = read_text_file(log_path_);
  const std::size_t keep = contents.empty() || contents.back() == '\n' ? contents.size() : contents.rfind('\n') + 1;
  if (keep != contents.size()) {
    contents.resize(keep);
    std::filesystem::resize_file(log_path_, keep);
  }
  std::vector<std::string> lines = split_lines(contents);
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  agreement::AnnotationStore store(roles_);
  std::size_t start = 0;
  const auto snap = snapshot_path();
  if (std::filesystem::exists(snap)) {
    const std::string text = read_text_file(snap);
    const auto nl = text.find('\n');
    try {
      const Json header = Json::parse(text.substr(0, nl));
      const std::size_t covered = header.at("log_lines").get<std::size_t>();
      if (covered <= lines.size()) {
        store = agreement::parse_annotations(nl == std::string::npos ? "" : text.substr(nl + 1), roles_);
        start = covered;
      }
    } catch (const std::exception&) {
      // An unreadable snapshot is only an optimization lost; replay everything.
      store = agreement::AnnotationStore(roles_);
      start = 0;
    }
  }
  for (std::size_t i = start; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string context = log_path_.string() + " line " + std::to_string(i + 1) + ": ";
    Json obj;
    try {
      obj = Json::parse(lines[i]);
    } catch (const Json::parse_error& e) {
      throw_error(ErrorKind::kParse, context + e.what());
    }
    try {
      apply_record(store, agreement::record_from_json(obj, context));
    } catch (const Error& e) {
      throw_error(ErrorKind::kParse, context + e.what());
    }
  }
  lines_ = lines.size();
  since_snapshot_ = lines_ - start;

  if (fd_ >= 0) ::close(fd_);
  fd_ = ::open(log_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) io_error("cannot open " + log_path_.string());
  return store;
}

void StoreLog::append(const agreement::AnnotationRecord& record, const agreement::AnnotationStore& store) {
  require(fd_ >= 0, "store log: replay() must run before append()");
  const std::string line = canonical_dump(agreement::record_to_json(record)) + "\n";
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("cannot append to " + log_path_.string());
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) io_error("cannot sync " + log_path_.string());
  ++lines_;
  if (snapshot_every_ > 0 && ++since_snapshot_ >= snapshot_every_) write_snapshot(store);
}

void StoreLog::write_snapshot(const agreement::AnnotationStore& store) {
  const std::string body = canonical_dump(Json{{"log_lines", lines_}}) + "\n" + agreement::to_jsonl(store);
  write_text_file_atomic(snapshot_path(), body);
  since_snapshot_ = 0;
}

}  // namespace sentikit::service
