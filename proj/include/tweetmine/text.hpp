#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "tokenize.hpp"

namespace tweetmine {

using Stoplist = std::set<std::string, std::less<>>;

// Mirrors data/stopwords_en.txt.
inline const Stoplist& default_stoplist() {
  static const Stoplist words = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your",
    "yours", "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers",
    "herself", "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what",
    "which", "who", "whom", "this", "that", "these", "those", "am", "is", "are",
    "was", "were", "be", "been", "being", "have", "has", "had", "having", "do",
    "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
    "because", "as", "until", "while", "of", "at", "by", "for", "with", "about",
    "against", "between", "into", "through", "during", "before", "after", "above", "below", "to",
    "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
    "further", "then", "once", "here", "there", "when", "where", "why", "how", "all",
    "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
    "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s",
    "t", "can", "will", "just", "don", "should", "now", "d", "ll", "m",
    "o", "re", "ve", "y", "ain", "aren", "couldn", "didn", "doesn", "hadn",
    "hasn", "haven", "isn", "ma", "mightn", "mustn", "needn", "shan", "shouldn", "wasn",
    "weren", "won", "wouldn", "would", "could", "shall", "may", "might", "must", "also",
    "ever", "every", "many", "much", "us", "upon", "yet", "via", "rt", "amp",
    "im", "u", "ur", "lol", "get", "got", "let",
  };
  return words;
}

// Mirrors data/names.txt.
inline const std::vector<std::string>& default_names() {
  static const std::vector<std::string> names = {
    "albert", "alexander", "andrew", "arthur", "boris", "charles", "edward", "freddy", "george", "harry", "henry",
    "james", "joffrey", "john", "joseph", "louis", "michael", "philip", "richard", "rudiger", "spencer", "stuart",
  };
  return names;
}

inline TokenStream remove_stopwords(const TokenStream& ts, const Stoplist& stoplist) {
  TokenStream out;
  for (const auto& t : ts.tokens)
    if (!stoplist.contains(t)) out.tokens.push_back(t);
  return out;
}

// Token list files: one token per line, `#` starts a comment, blank lines ignored.
inline std::vector<std::string> read_token_list(std::istream& in, const std::string& source = "<stream>") {
  std::vector<std::string> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(first, last - first + 1);
    if (detail::has_space(tok))
      throw MalformedRecord(n, source + ": more than one token on a line: '" + tok + "'");
    out.push_back(fold_lower(tok));
  }
  return out;
}

inline std::vector<std::string> load_token_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  return read_token_list(in, path.string());
}

inline Stoplist load_stoplist(const std::filesystem::path& path) {
  auto words = load_token_list(path);
  return Stoplist(words.begin(), words.end());
}

class FrequencyDictionary {
 public:
  using Counts = std::map<std::string, std::uint64_t, std::less<>>;

  void add(std::string_view token, std::uint64_t n = 1) {
    if (n == 0) return;
    auto it = counts_.find(token);
    if (it == counts_.end())
      counts_.emplace(std::string(token), n);
    else
      it->second += n;
    total_ += n;
  }

  std::uint64_t count(std::string_view token) const {
    auto it = counts_.find(token);
    return it == counts_.end() ? 0 : it->second;
  }

  const Counts& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }

  bool operator==(const FrequencyDictionary&) const = default;

 private:
  Counts counts_;
  std::uint64_t total_ = 0;
};

inline FrequencyDictionary build_frequency_dictionary(const Corpus& corpus, const Stoplist& stoplist) {
  FrequencyDictionary dict;
  for (const auto& m : corpus)
    for (const auto& t : remove_stopwords(tokenize(m.text), stoplist).tokens) dict.add(t);
  return dict;
}

// Nonempty set of single-token lowercase names.
class NameLexicon {
 public:
  explicit NameLexicon(const std::vector<std::string>& names) {
    if (names.empty()) throw PreconditionError("name lexicon must not be empty");
    for (const auto& raw : names) {
      const auto toks = tokenize(raw).tokens;
      if (toks.size() != 1 || toks.front() != fold_lower(raw))
        throw PreconditionError("lexicon entry '" + raw + "' is not a single lowercase token");
      names_.insert(toks.front());
    }
  }

  static NameLexicon defaults() { return NameLexicon(default_names()); }
  static NameLexicon load(const std::filesystem::path& path) { return NameLexicon(load_token_list(path)); }

  const std::set<std::string, std::less<>>& names() const noexcept { return names_; }
  bool contains(std::string_view n) const { return names_.contains(n); }
  std::size_t size() const noexcept { return names_.size(); }
  auto begin() const noexcept { return names_.begin(); }
  auto end() const noexcept { return names_.end(); }

 private:
  std::set<std::string, std::less<>> names_;
};

using NameCount = std::pair<std::string, std::uint64_t>;

// Lexicon names present in the dictionary, by count descending then name.
inline std::vector<NameCount> extract_names(const FrequencyDictionary& dict, const NameLexicon& lexicon) {
  std::vector<NameCount> out;
  for (const auto& n : lexicon)
    if (auto c = dict.count(n); c > 0) out.emplace_back(n, c);
  std::stable_sort(out.begin(), out.end(), [](const NameCount& a, const NameCount& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace tweetmine
