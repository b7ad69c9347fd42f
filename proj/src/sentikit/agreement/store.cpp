#include "sentikit/agreement/store.hpp"

#include <algorithm>

#include "sentikit/agreement/kappa.hpp"
#include "sentikit/common/error.hpp"

namespace sentikit::agreement {

void AnnotatorRoles::validate() const {
  require(!primary_a.empty() && !primary_b.empty() && !adjudicator.empty(), "annotator ids must be non-empty");
  require(primary_a != primary_b, "the two primary annotators must differ");
  require(adjudicator != primary_a && adjudicator != primary_b,
          "the adjudicator must differ from both primary annotators");
}

AnnotationStore::AnnotationStore(AnnotatorRoles roles) : roles_(std::move(roles)) { roles_.validate(); }

const AnnotationStore::Entry* AnnotationStore::entry(const std::string& comment_id) const {
  auto it = entries_.find(comment_id);
  return it == entries_.end() ? nullptr : &it->second;
}

void AnnotationStore::add_record(const AnnotationRecord& record) {
  require(!record.comment_id.empty(), "empty comment id");
  if (!roles_.is_primary(record.annotator_id)) {
    throw_error(ErrorKind::kInvalidArgument, "\"" + record.annotator_id + "\" is not a primary annotator");
  }
  Entry& e = entries_[record.comment_id];
  auto& slot = record.annotator_id == roles_.primary_a ? e.a : e.b;
  if (slot) {
    throw_error(ErrorKind::kConflict,
                record.annotator_id + " already labeled comment " + record.comment_id);
  }
  slot = record;
}

void AnnotationStore::resolve(const std::string& comment_id, Sentiment label, std::int64_t timestamp_ms) {
  auto it = entries_.find(comment_id);
  if (it == entries_.end() || !disputed(it->second)) {
    throw_error(ErrorKind::kConflict, "comment " + comment_id + " is not disputed");
  }
  if (it->second.adjudication) {
    throw_error(ErrorKind::kConflict, "comment " + comment_id + " is already resolved");
  }
  it->second.adjudication = AnnotationRecord{comment_id, roles_.adjudicator, label, timestamp_ms};
}

std::optional<Sentiment> AnnotationStore::label_of(const std::string& comment_id,
                                                   const std::string& annotator) const {
  const Entry* e = entry(comment_id);
  if (!e) return std::nullopt;
  const auto& slot = annotator == roles_.primary_a ? e->a
                     : annotator == roles_.primary_b ? e->b
                     : annotator == roles_.adjudicator ? e->adjudication
                                                       : std::optional<AnnotationRecord>{};
  if (!slot) return std::nullopt;
  return slot->label;
}

std::optional<Sentiment> AnnotationStore::adjudication_of(const std::string& comment_id) const {
  const Entry* e = entry(comment_id);
  if (!e || !e->adjudication) return std::nullopt;
  return e->adjudication->label;
}

std::optional<Sentiment> AnnotationStore::gold_label(const std::string& comment_id) const {
  const Entry* e = entry(comment_id);
  if (!e || !e->a || !e->b) return std::nullopt;
  if (e->a->label == e->b->label) return e->a->label;
  if (e->adjudication) return e->adjudication->label;
  return std::nullopt;
}

std::vector<std::string> AnnotationStore::adjudication_queue() const {
  std::vector<std::string> queue;
  for (const auto& [id, e] : entries_) {
    if (disputed(e) && !e.adjudication) queue.push_back(id);
  }
  return queue;
}

AgreementReport AnnotationStore::report() const {
  AgreementReport report;
  std::vector<Sentiment> labels_a;
  std::vector<Sentiment> labels_b;
  for (const auto& [id, e] : entries_) {
    if (!e.a || !e.b) continue;
    labels_a.push_back(e.a->label);
    labels_b.push_back(e.b->label);
    if (auto gold = gold_label(id)) {
      ++report.classes[class_index(*gold)].count;
      ++report.total;
    } else {
      report.pending.push_back(id);
    }
  }
  report.double_labeled = labels_a.size();
  for (Sentiment s : kAllSentiments) {
    auto& cls = report.classes[class_index(s)];
    cls.prevalence = report.total == 0 ? 0.0 : static_cast<double>(cls.count) / static_cast<double>(report.total);
    if (!labels_a.empty()) cls.kappa = cohen_kappa_binary(labels_a, labels_b, s);
  }
  return report;
}

Json AgreementReport::to_json() const {
  Json cls = Json::array();
  for (Sentiment s : kAllSentiments) {
    const auto& c = classes[class_index(s)];
    cls.push_back({{"label", sentiment_name(s)},
                   {"count", c.count},
                   {"prevalence", c.prevalence},
                   {"kappa", c.kappa ? Json(*c.kappa) : Json(nullptr)}});
  }
  return {{"classes", cls},
          {"total", total},
          {"double_labeled", double_labeled},
          {"pending", pending.size()},
          {"pending_ids", pending}};
}

corpus::LabeledCorpus AnnotationStore::export_gold(const corpus::LabeledCorpus& corpus) const {
  corpus::LabeledCorpus gold;
  for (const auto& item : corpus) {
    if (auto label = gold_label(item.comment.id)) gold.add({item.comment, label});
  }
  return gold;
}

std::vector<AnnotationRecord> AnnotationStore::records() const {
  std::vector<AnnotationRecord> out;
  std::vector<AnnotationRecord> adjudications;
  for (const auto& [id, e] : entries_) {
    if (e.a) out.push_back(*e.a);
    if (e.b) out.push_back(*e.b);
    if (e.adjudication) adjudications.push_back(*e.adjudication);
  }
  out.insert(out.end(), adjudications.begin(), adjudications.end());
  return out;
}

std::size_t AnnotationStore::record_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, e] : entries_) n += e.a.has_value() + e.b.has_value() + e.adjudication.has_value();
  return n;
}

Json record_to_json(const AnnotationRecord& record) {
  return {{"comment_id", record.comment_id},
          {"annotator", record.annotator_id},
          {"label", sentiment_name(record.label)},
          {"timestamp", record.timestamp_ms}};
}

AnnotationRecord record_from_json(const Json& obj, const std::string& context) {
  if (!obj.is_object()) throw_error(ErrorKind::kParse, context + "expected an object");
  auto text = [&](const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
      throw_error(ErrorKind::kParse, context + "missing string field \"" + key + "\"");
    }
    return it->get<std::string>();
  };
  AnnotationRecord record;
  record.comment_id = text("comment_id");
  record.annotator_id = text("annotator");
  const std::string label = text("label");
  auto parsed = parse_sentiment(label);
  if (!parsed) throw_error(ErrorKind::kParse, context + "unknown label \"" + label + "\"");
  record.label = *parsed;
  if (auto it = obj.find("timestamp"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw_error(ErrorKind::kParse, context + "timestamp must be an integer");
    record.timestamp_ms = it->get<std::int64_t>();
  }
  return record;
}

AnnotationStore parse_annotations(const std::string& contents, const AnnotatorRoles& roles) {
  AnnotationStore store(roles);
  std::vector<std::pair<std::size_t, AnnotationRecord>> adjudications;
  const auto lines = split_lines(contents);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (lines[n].find_first_not_of(" \t") == std::string::npos) continue;
    const std::string context = "line " + std::to_string(n + 1) + ": ";
    Json obj;
    try {
      obj = Json::parse(lines[n]);
    } catch (const Json::parse_error& e) {
      throw_error(ErrorKind::kParse, context + "invalid JSON: " + e.what());
    }
    AnnotationRecord record = record_from_json(obj, context);
    if (record.annotator_id == roles.adjudicator) {
      adjudications.emplace_back(n + 1, std::move(record));
      continue;
    }
    try {
      store.add_record(record);
    } catch (const Error& e) {
      throw_error(e.kind() == ErrorKind::kConflict ? ErrorKind::kConflict : ErrorKind::kParse, context + e.what());
    }
  }
  for (const auto& [line, record] : adjudications) {
    try {
      store.resolve(record.comment_id, record.label, record.timestamp_ms);
    } catch (const Error& e) {
      throw_error(e.kind(), "line " + std::to_string(line) + ": " + e.what());
    }
  }
  return store;
}

AnnotationStore load_annotations(const std::filesystem::path& path, const AnnotatorRoles& roles) {
  return parse_annotations(read_text_file(path), roles);
}

std::string to_jsonl(const AnnotationStore& store) {
  std::string out;
  for (const auto& record : store.records()) {
    out += canonical_dump(record_to_json(record));
    out += '\n';
  }
  return out;
}

}  // namespace sentikit::agreement
