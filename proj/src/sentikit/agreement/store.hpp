#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentikit/common/json_io.hpp"
#include "sentikit/corpus/corpus.hpp"

namespace sentikit::agreement {

struct AnnotationRecord {
  std::string comment_id;
  std::string annotator_id;
  Sentiment label = Sentiment::kNeutral;
  std::int64_t timestamp_ms = 0;
  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

/// Two primary annotators plus one adjudicator, all distinct and non-empty.
struct AnnotatorRoles {
  std::string primary_a = "annotator1";
  std::string primary_b = "annotator2";
  std::string adjudicator = "annotator3";

  void validate() const;
  bool is_primary(const std::string& id) const { return id == primary_a || id == primary_b; }
  friend bool operator==(const AnnotatorRoles&, const AnnotatorRoles&) = default;
};

struct ClassAgreement {
  std::size_t count = 0;
  double prevalence = 0.0;
  /// Absent when no comment carries both primary labels.
  std::optional<double> kappa;
};

struct AgreementReport {
  std::array<ClassAgreement, kNumClasses> classes;
  std::size_t total = 0;          // comments with a gold label
  std::size_t double_labeled = 0; // comments with both primary labels
  std::vector<std::string> pending;  // disputed and unresolved, by id

  Json to_json() const;
};

/// Label records of the two primary annotators plus adjudications. An
/// adjudication exists only where the primary labels both exist and differ.
class AnnotationStore {
 public:
  explicit AnnotationStore(AnnotatorRoles roles = {});

  const AnnotatorRoles& roles() const noexcept { return roles_; }

  /// Throws kInvalidArgument for a non-primary annotator and kConflict if the
  /// annotator already labeled the comment.
  void add_record(const AnnotationRecord& record);

  /// Throws kConflict unless the comment is currently in the queue.
  void resolve(const std::string& comment_id, Sentiment label, std::int64_t timestamp_ms = 0);

  std::optional<Sentiment> label_of(const std::string& comment_id, const std::string& annotator) const;
  std::optional<Sentiment> adjudication_of(const std::string& comment_id) const;

  /// Agreed label, else adjudication, else nothing.
  std::optional<Sentiment> gold_label(const std::string& comment_id) const;

  bool has_label(const std::string& comment_id, const std::string& annotator) const {
    return label_of(comment_id, annotator).has_value();
  }

  /// Disputed, unresolved comments ordered by id.
  std::vector<std::string> adjudication_queue() const;

  AgreementReport report() const;

  /// Corpus items that have a gold label, relabeled with it, in corpus order.
  corpus::LabeledCorpus export_gold(const corpus::LabeledCorpus& corpus) const;

  /// Every primary record followed by every adjudication (as records by the
  /// adjudicator), both ordered by comment id then annotator.
  std::vector<AnnotationRecord> records() const;

  std::size_t record_count() const noexcept;

  friend bool operator==(const AnnotationStore&, const AnnotationStore&) = default;

 private:
  struct Entry {
    std::optional<AnnotationRecord> a;
    std::optional<AnnotationRecord> b;
    std::optional<AnnotationRecord> adjudication;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  const Entry* entry(const std::string& comment_id) const;
  static bool disputed(const Entry& e) { return e.a && e.b && e.a->label != e.b->label; }

  AnnotatorRoles roles_;
  std::map<std::string, Entry> entries_;
};

/// Annotation JSONL: `{"comment_id", "annotator", "label"[, "timestamp"]}`.
/// Lines by the adjudicator are applied as resolutions after all primary
/// labels, regardless of file position.
AnnotationStore parse_annotations(const std::string& contents, const AnnotatorRoles& roles);
AnnotationStore load_annotations(const std::filesystem::path& path, const AnnotatorRoles& roles);

Json record_to_json(const AnnotationRecord& record);
/// Parses one annotation line; errors are prefixed with `context`.
AnnotationRecord record_from_json(const Json& obj, const std::string& context);

std::string to_jsonl(const AnnotationStore& store);

}  // namespace sentikit::agreement
