#pragma once

#include <string>
#include <vector>

#include "tweetmine/corpus.hpp"

namespace fixture {

inline tweetmine::Instant ts(const char* iso) { return *tweetmine::parse_iso8601(iso); }

inline tweetmine::Message msg(std::string id, const char* iso, std::string author, std::string text,
                              std::vector<std::string> mentions = {}) {
  return {std::move(id), ts(iso), std::move(author), std::move(text), std::move(mentions)};
}

// Five messages; "name" appears as a token in m1 and m4 only (m2 has
// "names", m3 "surname", m5 "#nameday").
inline tweetmine::Corpus five() {
  return tweetmine::Corpus::from_messages({
      msg("m1", "2013-07-24T10:00:00Z", "alice", "What name will they pick? George!", {"bob"}),
      msg("m2", "2013-07-24T10:01:00Z", "bob", "So many names floating around #RoyalBaby", {"alice", "carol"}),
      msg("m3", "2013-07-24T10:02:00Z", "carol", "The surname is Windsor", {}),
      msg("m4", "2013-07-24T10:03:00Z", "alice", "NAME: george or james @bob", {"bob"}),
      msg("m5", "2013-07-24T10:04:00Z", "dave", "#nameday for the baby, the george bet", {}),
  });
}

// Ten messages at minutes 0..9 past 2013-07-24T19:00Z.
inline tweetmine::Corpus ten_minutes() {
  std::vector<tweetmine::Message> ms;
  for (int i = 0; i < 10; ++i) {
    tweetmine::Message m;
    m.id = "k" + std::to_string(i);
    m.timestamp = ts("2013-07-24T19:00:00Z") + std::chrono::minutes{i};
    m.author = "u" + std::to_string(i % 3);
    m.text = i % 2 ? "george #royalbaby" : "waiting #royalbabywatch";
    ms.push_back(m);
  }
  return tweetmine::Corpus::from_messages(std::move(ms));
}

}  // namespace fixture
