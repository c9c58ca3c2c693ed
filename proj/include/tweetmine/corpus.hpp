#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "time.hpp"
#include "tokenize.hpp"

namespace tweetmine {

inline constexpr std::size_t kMaxTextLength = 10'000;

struct Message {
  std::string id;
  Instant timestamp;
  std::string author;
  std::string text;
  std::vector<std::string> mentions;

  bool operator==(const Message&) const = default;
};

namespace detail {

// Strict UTF-8 check (no overlong forms, surrogates or values past U+10FFFF).
inline bool valid_utf8(std::string_view s, std::size_t* code_points = nullptr) {
  std::size_t i = 0, n = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len;
    char32_t cp, min;
    if (b0 < 0x80) {
      len = 1, cp = b0, min = 0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
    ++n;
  }
  if (code_points) *code_points = n;
  return true;
}

inline bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

}  // namespace detail

// Reason the message breaks a record invariant, or nullopt when it is valid.
inline std::optional<std::string> message_violation(const Message& m) {
  if (m.id.empty()) return "empty id";
  if (m.author.empty()) return "empty author";
  std::size_t length = 0;
  if (!detail::valid_utf8(m.text, &length)) return "text is not valid UTF-8";
  if (length > kMaxTextLength) return "text longer than 10000 characters";
  if (!detail::valid_utf8(m.id) || !detail::valid_utf8(m.author)) return "id/author not valid UTF-8";
  for (const auto& h : m.mentions) {
    if (h.empty()) return "empty mention handle";
    if (detail::has_space(h)) return "mention handle contains whitespace: '" + h + "'";
    if (!detail::valid_utf8(h)) return "mention handle not valid UTF-8";
  }
  return std::nullopt;
}

// `@handle` occurrences in text, in order. A handle is a run of ASCII
// letters, digits and underscores preceded by `@` at a word boundary.
inline std::vector<std::string> extract_mentions(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '@') continue;
    if (i > 0) {
      const char p = text[i - 1];
      if (detail::is_ascii_alnum(static_cast<unsigned char>(p)) || p == '_') continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() &&
           (detail::is_ascii_alnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      ++j;
    if (j > i + 1) out.emplace_back(text.substr(i + 1, j - i - 1));
    i = j - 1;
  }
  return out;
}

// Immutable, sorted-by-(timestamp, id) collection of messages with unique ids.
class Corpus {
 public:
  using Meta = std::map<std::string, std::string>;

  Corpus() = default;

  // Validates and sorts. Throws PreconditionError on an invalid message and
  // DuplicateId on a repeated id.
  static Corpus from_messages(std::vector<Message> messages, Meta meta = {}) {
    for (const auto& m : messages)
      if (auto why = message_violation(m)) throw PreconditionError("invalid message '" + m.id + "': " + *why);
    std::sort(messages.begin(), messages.end(), order);
    std::unordered_set<std::string_view> seen;
    for (const auto& m : messages)
      if (!seen.insert(m.id).second) throw DuplicateId(m.id);
    return Corpus(std::move(messages), std::move(meta));
  }

  const std::vector<Message>& messages() const noexcept { return messages_; }
  const Meta& meta() const noexcept { return meta_; }
  std::size_t size() const noexcept { return messages_.size(); }
  bool empty() const noexcept { return messages_.empty(); }
  auto begin() const noexcept { return messages_.begin(); }
  auto end() const noexcept { return messages_.end(); }
  const Message& operator[](std::size_t i) const { return messages_[i]; }

  // Message content only; provenance metadata is not compared.
  bool operator==(const Corpus& o) const { return messages_ == o.messages_; }

  static bool order(const Message& a, const Message& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.id < b.id;
  }

 private:
  template <class F>
  friend Corpus select_messages(const Corpus& c, F&& keep, Corpus::Meta meta);

  Corpus(std::vector<Message> messages, Meta meta)
      : messages_(std::move(messages)), meta_(std::move(meta)) {}

  std::vector<Message> messages_;
  Meta meta_;
};

// Order-preserving subset of an already valid corpus.
template <class F>
Corpus select_messages(const Corpus& c, F&& keep, Corpus::Meta meta) {
  std::vector<Message> kept;
  for (const auto& m : c)
    if (keep(m)) kept.push_back(m);
  return Corpus(std::move(kept), std::move(meta));
}

enum class MatchMode { substring, token };

inline std::string_view to_string(MatchMode m) { return m == MatchMode::token ? "token" : "substring"; }

inline std::optional<MatchMode> parse_match_mode(std::string_view s) {
  if (s == "substring") return MatchMode::substring;
  if (s == "token") return MatchMode::token;
  return std::nullopt;
}

// Keyword set for corpus selection. Keywords are stored folded to lowercase.
// In token mode a keyword matches when its own token sequence occurs
// contiguously in the message's token stream; phrases like "kate middleton"
// therefore work in both modes.
class KeywordFilter {
 public:
  KeywordFilter(const std::vector<std::string>& keywords, MatchMode mode = MatchMode::substring)
      : mode_(mode) {
    if (keywords.empty()) throw PreconditionError("keyword filter needs at least one keyword");
    for (const auto& k : keywords) {
      if (k.empty()) throw PreconditionError("empty keyword");
      keywords_.insert(fold_lower(k));
    }
    for (const auto& k : keywords_) {
      auto toks = tokenize(k).tokens;
      if (mode_ == MatchMode::token && toks.empty())
        throw PreconditionError("keyword '" + k + "' has no word characters for token matching");
      token_keywords_.push_back(std::move(toks));
    }
  }

  const std::set<std::string>& keywords() const noexcept { return keywords_; }
  MatchMode mode() const noexcept { return mode_; }

  bool matches(std::string_view text) const {
    if (mode_ == MatchMode::substring) {
      const std::string folded = fold_lower(text);
      return std::any_of(keywords_.begin(), keywords_.end(),
                         [&](const std::string& k) { return folded.find(k) != std::string::npos; });
    }
    const auto tokens = tokenize(text).tokens;
    for (const auto& kw : token_keywords_)
      if (std::search(tokens.begin(), tokens.end(), kw.begin(), kw.end()) != tokens.end()) return true;
    return false;
  }

  std::string describe() const {
    std::string s(to_string(mode_));
    s += ':';
    bool first = true;
    for (const auto& k : keywords_) {
      if (!first) s += ',';
      s += k;
      first = false;
    }
    return s;
  }

 private:
  std::set<std::string> keywords_;
  std::vector<std::vector<std::string>> token_keywords_;
  MatchMode mode_;
};

// Half-open interval [start, end).
class TimeWindow {
 public:
  TimeWindow(Instant start, Instant end) : start_(start), end_(end) {
    if (!(start < end)) throw PreconditionError("time window requires start < end");
  }
  Instant start() const noexcept { return start_; }
  Instant end() const noexcept { return end_; }
  bool contains(Instant t) const noexcept { return start_ <= t && t < end_; }
  bool operator==(const TimeWindow&) const = default;

 private:
  Instant start_;
  Instant end_;
};

namespace detail {
inline void append_meta(Corpus::Meta& meta, const std::string& key, const std::string& value) {
  auto [it, inserted] = meta.emplace(key, value);
  if (!inserted) it->second += "; " + value;
}
}  // namespace detail

inline Corpus filter_by_keywords(const Corpus& corpus, const KeywordFilter& filter) {
  auto meta = corpus.meta();
  detail::append_meta(meta, "filter", filter.describe());
  return select_messages(corpus, [&](const Message& m) { return filter.matches(m.text); }, std::move(meta));
}

inline Corpus slice_by_time(const Corpus& corpus, const TimeWindow& window) {
  auto meta = corpus.meta();
  detail::append_meta(meta, "window", format_iso8601(window.start()) + "/" + format_iso8601(window.end()));
  return select_messages(corpus, [&](const Message& m) { return window.contains(m.timestamp); },
                         std::move(meta));
}

// ---------------------------------------------------------------------------
// Persistence

enum class CorpusFormat { jsonl, csv };

inline std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "jsonl" || s == "json") return CorpusFormat::jsonl;
  if (s == "csv") return CorpusFormat::csv;
  return std::nullopt;
}

inline CorpusFormat format_from_path(const std::filesystem::path& p) {
  return p.extension() == ".csv" ? CorpusFormat::csv : CorpusFormat::jsonl;
}

inline constexpr std::string_view kCsvHeader = "id,ts,author,text,mentions";

namespace detail {

inline Corpus finish_load(std::vector<std::pair<std::size_t, Message>> records) {
  std::unordered_set<std::string> ids;
  std::vector<Message> messages;
  messages.reserve(records.size());
  for (auto& [line, m] : records) {
    if (auto why = message_violation(m)) throw MalformedRecord(line, *why);
    if (!ids.insert(m.id).second) throw DuplicateId(m.id);
    messages.push_back(std::move(m));
  }
  return Corpus::from_messages(std::move(messages));
}

inline Instant parse_ts_field(std::size_t line, const std::string& s) {
  auto t = parse_iso8601(s);
  if (!t) throw MalformedRecord(line, "invalid timestamp '" + s + "'");
  return *t;
}

// Splits RFC 4180 CSV into records; each record carries its first line number.
struct CsvRecord {
  std::size_t line;
  std::vector<std::string> fields;
};

inline std::vector<CsvRecord> read_csv(std::istream& in) {
  std::vector<CsvRecord> out;
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t line = 1, i = 0;
  while (i < data.size()) {
    CsvRecord rec{line, {}};
    std::string field;
    bool done = false;
    while (!done) {
      if (i < data.size() && data[i] == '"') {
        ++i;
        const std::size_t open_line = line;
        for (;;) {
          if (i >= data.size()) throw MalformedRecord(open_line, "unterminated quoted field");
          if (data[i] == '"') {
            if (i + 1 < data.size() && data[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (data[i] == '\n') ++line;
          field += data[i++];
        }
        if (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r')
          throw MalformedRecord(line, "characters after closing quote");
      } else {
        while (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
          if (data[i] == '"') throw MalformedRecord(line, "stray quote in unquoted field");
          field += data[i++];
        }
      }
      rec.fields.push_back(std::move(field));
      field.clear();
      if (i >= data.size()) {
        done = true;
      } else if (data[i] == ',') {
        ++i;
      } else {
        if (data[i] == '\r') ++i;
        if (i < data.size() && data[i] == '\n') ++i;
        ++line;
        done = true;
      }
    }
    if (!(rec.fields.size() == 1 && rec.fields[0].empty())) out.push_back(std::move(rec));
  }
  return out;
}

inline bool csv_needs_quotes(std::string_view s) {
  if (s.empty()) return false;
  if (s.front() == ' ' || s.back() == ' ') return true;
  return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

inline void write_csv_field(std::ostream& out, std::string_view s) {
  if (!csv_needs_quotes(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace detail

// Reads line-delimited JSON records. Blank lines are skipped. The
// `mentions` field is optional; when absent, mentions are extracted from
// `@handle` tokens in the text.
inline Corpus read_jsonl(std::istream& in) {
  std::vector<std::pair<std::size_t, Message>> records;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (std::all_of(raw.begin(), raw.end(), [](char c) { return detail::is_space(c); })) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedRecord(line, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedRecord(line, "record is not a JSON object");
    auto str_field = [&](const char* key) -> std::string {
      auto it = j.find(key);
      if (it == j.end()) throw MalformedRecord(line, std::string("missing field '") + key + "'");
      if (!it->is_string()) throw MalformedRecord(line, std::string("field '") + key + "' is not a string");
      return it->get<std::string>();
    };
    Message m;
    m.id = str_field("id");
    m.timestamp = detail::parse_ts_field(line, str_field("ts"));
    m.author = str_field("author");
    m.text = str_field("text");
    if (auto it = j.find("mentions"); it != j.end()) {
      if (!it->is_array()) throw MalformedRecord(line, "field 'mentions' is not an array");
      for (const auto& h : *it) {
        if (!h.is_string()) throw MalformedRecord(line, "mention is not a string");
        m.mentions.push_back(h.get<std::string>());
      }
    } else {
      m.mentions = extract_mentions(m.text);
    }
    records.emplace_back(line, std::move(m));
  }
  return detail::finish_load(std::move(records));
}

// Reads CSV with header `id,ts,author,text,mentions`; mentions are
// `;`-separated and an empty field means no mentions.
inline Corpus read_csv(std::istream& in) {
  auto rows = detail::read_csv(in);
  if (rows.empty()) return {};
  const auto& header = rows.front();
  std::string joined;
  for (std::size_t k = 0; k < header.fields.size(); ++k) joined += (k ? "," : "") + header.fields[k];
  if (joined != kCsvHeader) throw MalformedRecord(header.line, "expected header '" + std::string(kCsvHeader) + "'");
  std::vector<std::pair<std::size_t, Message>> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 5)
      throw MalformedRecord(row.line, "expected 5 fields, found " + std::to_string(row.fields.size()));
    Message m;
    m.id = row.fields[0];
    m.timestamp = detail::parse_ts_field(row.line, row.fields[1]);
    m.author = row.fields[2];
    m.text = row.fields[3];
    const std::string& mentions = row.fields[4];
    if (!mentions.empty()) {
      std::size_t start = 0;
      for (;;) {
        const auto semi = mentions.find(';', start);
        m.mentions.push_back(mentions.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
    }
    records.emplace_back(row.line, std::move(m));
  }
  return detail::finish_load(std::move(records));
}

inline void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& m : corpus) {
    nlohmann::ordered_json j;
    j["id"] = m.id;
    j["ts"] = format_iso8601(m.timestamp);
    j["author"] = m.author;
    j["text"] = m.text;
    j["mentions"] = m.mentions;
    out << j.dump() << '\n';
  }
}

// Throws PreconditionError for a handle containing `;`, which the CSV
// mentions encoding cannot represent.
inline void write_csv(std::ostream& out, const Corpus& corpus) {
  out << kCsvHeader << '\n';
  for (const auto& m : corpus) {
    std::string mentions;
    for (std::size_t k = 0; k < m.mentions.size(); ++k) {
      if (m.mentions[k].find(';') != std::string::npos)
        throw PreconditionError("mention handle '" + m.mentions[k] + "' contains ';'");
      if (k) mentions += ';';
      mentions += m.mentions[k];
    }
    detail::write_csv_field(out, m.id);
    out << ',' << format_iso8601(m.timestamp) << ',';
    detail::write_csv_field(out, m.author);
    out << ',';
    detail::write_csv_field(out, m.text);
    out << ',';
    detail::write_csv_field(out, mentions);
    out << '\n';
  }
}

inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path.string());
  return format == CorpusFormat::csv ? read_csv(in) : read_jsonl(in);
}

inline Corpus load_corpus(const std::filesystem::path& path) { return load_corpus(path, format_from_path(path)); }

inline void write_corpus(const std::filesystem::path& path, const Corpus& corpus, CorpusFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path.string());
  if (format == CorpusFormat::csv)
    write_csv(out, corpus);
  else
    write_jsonl(out, corpus);
}

inline std::string to_string(const Corpus& corpus, CorpusFormat format) {
  std::ostringstream out;
  if (format == CorpusFormat::csv)
    write_csv(out, corpus);
  else
    write_jsonl(out, corpus);
  return out.str();
}

}  // namespace tweetmine
