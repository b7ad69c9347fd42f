#pragma once

#include <filesystem>
#include <string>

#include "sentikit/agreement/store.hpp"

namespace sentikit::service {

/// Append-only annotation log. Each mutation is one JSONL record, flushed
/// to disk with fsync before append() returns. A snapshot next to the log
/// records the store plus the number of log lines it covers, so startup
/// only replays the tail.
class StoreLog {
 public:
  StoreLog(std::filesystem::path log_path, agreement::AnnotatorRoles roles, std::size_t snapshot_every = 100);
  ~StoreLog();
  StoreLog(const StoreLog&) = delete;
  StoreLog& operator=(const StoreLog&) = delete;

  /// Store rebuilt from the snapshot (if usable) and the log. An
  /// unterminated final line, the trace of a write cut short by a crash, is
  /// discarded from the file.
  agreement::AnnotationStore replay();

  /// Durably appends one record; `store` must already contain it and is
  /// used for the periodic snapshot.
  void append(const agreement::AnnotationRecord& record, const agreement::AnnotationStore& store);

  void write_snapshot(const agreement::AnnotationStore& store);

  std::size_t line_count() const noexcept { return lines_; }
  const std::filesystem::path& log_path() const noexcept { return log_path_; }
  std::filesystem::path snapshot_path() const;

 private:
  std::filesystem::path log_path_;
  agreement::AnnotatorRoles roles_;
  std::size_t snapshot_every_;
  std::size_t lines_ = 0;
  std::size_t since_snapshot_ = 0;
  int fd_ = -1;
};

/// Applies one logged record: primary labels are added, adjudicator
/// records resolve.
void apply_record(agreement::AnnotationStore& store, const agreement::AnnotationRecord& record);

}  // namespace sentikit::service
