#include "sentikit/corpus/corpus.hpp"

#include <algorithm>
#include <cctype>

#include "sentikit/common/error.hpp"
#include "sentikit/common/json_io.hpp"

namespace sentikit::corpus {

namespace {

bool is_blank(const std::string& text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

Item make_item(std::string id, std::string text, const std::optional<std::string>& label,
               std::size_t line) {
  Item item{{std::move(id), std::move(text)}, std::nullopt};
  if (label) {
    item.label = parse_sentiment(*label);
    if (!item.label) {
      throw_error(ErrorKind::kParse, at_line(line) + "unknown label \"" + *label + "\"");
    }
  }
  return item;
}

void add_at_line(LabeledCorpus& corpus, Item item, std::size_t line) {
  try {
    corpus.add(std::move(item));
  } catch (const Error& e) {
    throw_error(ErrorKind::kParse, at_line(line) + e.what());
  }
}

}  // namespace

LabeledCorpus::LabeledCorpus(std::vector<Item> items) {
  items_.reserve(items.size());
  for (Item& item : items) add(std::move(item));
}

void LabeledCorpus::add(Item item) {
  if (item.comment.id.empty()) throw_error(ErrorKind::kInvalidArgument, "empty comment id");
  if (is_blank(item.comment.text)) {
    throw_error(ErrorKind::kInvalidArgument, "blank text for comment " + item.comment.id);
  }
  auto [it, inserted] = index_.emplace(item.comment.id, items_.size());
  if (!inserted) throw_error(ErrorKind::kInvalidArgument, "duplicate id " + item.comment.id);
  items_.push_back(std::move(item));
}

const Item* LabeledCorpus::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &items_[it->second];
}

bool LabeledCorpus::all_labeled() const noexcept {
  return std::all_of(items_.begin(), items_.end(), [](const Item& i) { return i.label.has_value(); });
}

std::array<std::size_t, kNumClasses> LabeledCorpus::class_counts() const noexcept {
  std::array<std::size_t, kNumClasses> counts{};
  for (const Item& item : items_) {
    if (item.label) ++counts[class_index(*item.label)];
  }
  return counts;
}

std::size_t LabeledCorpus::unlabeled_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(items_.begin(), items_.end(), [](const Item& i) { return !i.label; }));
}

std::vector<Sentiment> LabeledCorpus::labels() const {
  std::vector<Sentiment> out;
  out.reserve(items_.size());
  for (const Item& item : items_) {
    if (!item.label) throw_error(ErrorKind::kInvalidArgument, "unlabeled item " + item.comment.id);
    out.push_back(*item.label);
  }
  return out;
}

LabeledCorpus LabeledCorpus::subset(const std::vector<std::size_t>& positions) const {
  LabeledCorpus out;
  out.items_.reserve(positions.size());
  for (std::size_t p : positions) out.add(items_.at(p));
  return out;
}

LabeledCorpus LabeledCorpus::without_labels() const {
  LabeledCorpus out = *this;
  for (Item& item : out.items_) item.label.reset();
  return out;
}

std::optional<Format> parse_format(const std::string& name) {
  if (name == "jsonl") return Format::kJsonl;
  if (name == "csv") return Format::kCsv;
  return std::nullopt;
}

LabeledCorpus parse_jsonl(const std::string& contents) {
  LabeledCorpus corpus;
  const auto lines = split_lines(contents);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    const std::size_t line_no = n + 1;
    if (is_blank(line)) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw_error(ErrorKind::kParse, at_line(line_no) + "invalid JSON: " + e.what());
    }
    if (!obj.is_object()) throw_error(ErrorKind::kParse, at_line(line_no) + "expected an object");
    auto text_field = [&](const char* key) -> std::string {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        throw_error(ErrorKind::kParse, at_line(line_no) + "missing string field \"" + key + "\"");
      }
      return it->get<std::string>();
    };
    std::optional<std::string> label;
    if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) throw_error(ErrorKind::kParse, at_line(line_no) + "label must be a string");
      label = it->get<std::string>();
    }
    add_at_line(corpus, make_item(text_field("id"), text_field("text"), label, line_no), line_no);
  }
  return corpus;
}

namespace {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC 4180: fields may be quoted, quotes inside quoted fields are doubled,
// quoted fields may span lines.
std::vector<CsvRecord> read_csv_records(const std::string& contents) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  std::size_t line = 1;
  current.line = 1;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(current.fields.size() == 1 && current.fields[0].empty())) records.push_back(std::move(current));
    current = CsvRecord{};
    current.line = line;
  };
  for (std::size_t i = 0; i < contents.size(); ++i) {
    const char c = contents[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < contents.size() && contents[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) throw_error(ErrorKind::kParse, at_line(line) + "stray quote in unquoted field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < contents.size() && contents[i + 1] == '\n') break;
        field.push_back(c);
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) throw_error(ErrorKind::kParse, at_line(current.line) + "unterminated quoted field");
  if (field_started || !field.empty() || !current.fields.empty()) end_record();
  return records;
}

}  // namespace

LabeledCorpus parse_csv(const std::string& contents) {
  const auto records = read_csv_records(contents);
  if (records.empty()) throw_error(ErrorKind::kParse, "line 1: missing header row");
  const auto& header = records.front().fields;
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = column("id");
  const auto text_col = column("text");
  const auto label_col = column("label");
  if (!id_col || !text_col) throw_error(ErrorKind::kParse, "line 1: header must contain id and text");
  LabeledCorpus corpus;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw_error(ErrorKind::kParse, at_line(rec.line) + "expected " + std::to_string(header.size()) +
                                         " fields, found " + std::to_string(rec.fields.size()));
    }
    std::optional<std::string> label;
    if (label_col && !rec.fields[*label_col].empty()) label = rec.fields[*label_col];
    add_at_line(corpus, make_item(rec.fields[*id_col], rec.fields[*text_col], label, rec.line), rec.line);
  }
  return corpus;
}

LabeledCorpus load_corpus(const std::filesystem::path& path, Format format) {
  const std::string contents = read_text_file(path);
  return format == Format::kJsonl ? parse_jsonl(contents) : parse_csv(contents);
}

std::string to_jsonl(const LabeledCorpus& corpus) {
  std::string out;
  for (const Item& item : corpus) {
    Json obj = {{"id", item.comment.id}, {"text", item.comment.text}};
    if (item.label) obj["label"] = std::string(sentiment_name(*item.label));
    out += canonical_dump(obj);
    out += '\n';
  }
  return out;
}

void save_corpus(const LabeledCorpus& corpus, const std::filesystem::path& path) {
  write_text_file_atomic(path, to_jsonl(corpus));
}

}  // namespace sentikit::corpus
