#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "tweetmine/corpus.hpp"
#include "tweetmine/scenarios.hpp"
#include "tweetmine/synth.hpp"

using namespace tweetmine;
using fixture::msg;
using fixture::ts;

namespace {

Corpus parse_jsonl(const std::string& s) {
  std::istringstream in(s);
  return read_jsonl(in);
}

std::vector<std::string> ids(const Corpus& c) {
  std::vector<std::string> out;
  for (const auto& m : c) out.push_back(m.id);
  return out;
}

}  // namespace

TEST(Time, ParsesAndNormalizesToUtc) {
  EXPECT_EQ(format_iso8601(*parse_iso8601("2013-07-24T19:25:00Z")), "2013-07-24T19:25:00Z");
  EXPECT_EQ(*parse_iso8601("2013-07-24T20:25:00+01:00"), *parse_iso8601("2013-07-24T19:25:00Z"));
  EXPECT_EQ(*parse_iso8601("2013-07-24 14:25:00-0500"), *parse_iso8601("2013-07-24T19:25:00Z"));
  EXPECT_EQ(*parse_iso8601("2013-07-24T19:25:00.999Z"), *parse_iso8601("2013-07-24T19:25:00"));
  EXPECT_FALSE(parse_iso8601("2013-02-30T00:00:00Z"));
  EXPECT_FALSE(parse_iso8601("yesterday"));
  EXPECT_FALSE(parse_iso8601("2013-07-24T19:25Z"));
}

TEST(Time, FloorToWindow) {
  EXPECT_EQ(floor_to(ts("2013-07-24T19:27:13Z"), Seconds{600}), ts("2013-07-24T19:20:00Z"));
  EXPECT_EQ(floor_to(ts("2013-07-24T19:20:00Z"), Seconds{600}), ts("2013-07-24T19:20:00Z"));
}

TEST(LoadCorpus, EmptyFileGivesEmptyCorpus) {
  EXPECT_TRUE(parse_jsonl("").empty());
  std::istringstream csv("");
  EXPECT_TRUE(read_csv(csv).empty());
}

TEST(LoadCorpus, SortsByTimestamp) {
  const auto c = parse_jsonl(
      R"({"id":"b","ts":"2013-07-24T19:30:00Z","author":"x","text":"t2"})"
      "\n"
      R"({"id":"a","ts":"2013-07-24T19:40:00Z","author":"x","text":"t3"})"
      "\n"
      R"({"id":"c","ts":"2013-07-24T19:20:00Z","author":"y","text":"t1"})"
      "\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(ids(c), (std::vector<std::string>{"c", "b", "a"}));
}

TEST(LoadCorpus, MissingTimestampNamesTheLine) {
  try {
    parse_jsonl(R"({"id":"a","ts":"2013-07-24T19:30:00Z","author":"x","text":"ok"})"
                "\n"
                R"({"id":"b","author":"x","text":"no time"})"
                "\n");
    FAIL() << "expected MalformedRecord";
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(e.reason().find("ts"), std::string::npos);
  }
}

TEST(LoadCorpus, InvariantViolationsAreMalformed) {
  EXPECT_THROW(parse_jsonl(R"({"id":"","ts":"2013-07-24T19:30:00Z","author":"x","text":""})"), MalformedRecord);
  EXPECT_THROW(parse_jsonl(R"({"id":"a","ts":"2013-07-24T19:30:00Z","author":"","text":""})"), MalformedRecord);
  EXPECT_THROW(parse_jsonl(R"({"id":"a","ts":"2013-07-24T19:30:00Z","author":"x","text":"","mentions":["a b"]})"),
               MalformedRecord);
  EXPECT_THROW(parse_jsonl(R"({"id":"a","ts":"nope","author":"x","text":""})"), MalformedRecord);
  EXPECT_THROW(parse_jsonl("{not json"), MalformedRecord);
  const std::string long_text(kMaxTextLength + 1, 'a');
  EXPECT_THROW(parse_jsonl(R"({"id":"a","ts":"2013-07-24T19:30:00Z","author":"x","text":")" + long_text + "\"}"),
               MalformedRecord);
}

TEST(LoadCorpus, DuplicateIdIsAnError) {
  try {
    parse_jsonl(R"({"id":"a","ts":"2013-07-24T19:30:00Z","author":"x","text":"1"})"
                "\n"
                R"({"id":"a","ts":"2013-07-24T19:31:00Z","author":"y","text":"2"})");
    FAIL();
  } catch (const DuplicateId& e) {
    EXPECT_EQ(e.id(), "a");
  }
}

TEST(LoadCorpus, MentionsFallBackToTextHandles) {
  const auto c = parse_jsonl(R"({"id":"a","ts":"2013-07-24T19:30:00Z","author":"x","text":"RT @Kensington_Royal: it's a boy! cc @bbc mail@host.com"})");
  EXPECT_EQ(c[0].mentions, (std::vector<std::string>{"Kensington_Royal", "bbc"}));
  const auto explicit_list = parse_jsonl(R"({"id":"a","ts":"2013-07-24T19:30:00Z","author":"x","text":"@bbc","mentions":[]})");
  EXPECT_TRUE(explicit_list[0].mentions.empty());
}

TEST(LoadCorpus, MissingFile) {
  EXPECT_THROW(load_corpus("/nonexistent/corpus.jsonl"), FileNotFound);
}

TEST(LoadCorpus, CsvQuotingAndMentions) {
  std::istringstream in(
      "id,ts,author,text,mentions\n"
      "a,2013-07-24T19:30:00Z,x,\"hello, \"\"world\"\"\nsecond line\",bob;carol\n"
      "b,2013-07-24T19:31:00Z,y,plain,\n");
  const auto c = read_csv(in);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].text, "hello, \"world\"\nsecond line");
  EXPECT_EQ(c[0].mentions, (std::vector<std::string>{"bob", "carol"}));
  EXPECT_TRUE(c[1].mentions.empty());

  std::istringstream bad("id,ts,author,text,mentions\na,2013-07-24T19:30:00Z,x,t\n");
  EXPECT_THROW(read_csv(bad), MalformedRecord);
  std::istringstream header("id,time,author,text,mentions\n");
  EXPECT_THROW(read_csv(header), MalformedRecord);
}

TEST(FilterByKeywords, SubstringIsCaseInsensitive) {
  const auto c = Corpus::from_messages({msg("a", "2013-07-24T19:30:00Z", "x", "Waiting! #RoyalBaby")});
  const auto f = filter_by_keywords(c, KeywordFilter({"#royalbaby"}));
  EXPECT_EQ(f.size(), 1u);
  EXPECT_NE(f.meta().at("filter").find("#royalbaby"), std::string::npos);
}

TEST(FilterByKeywords, EmptyCorpus) {
  EXPECT_TRUE(filter_by_keywords(Corpus{}, KeywordFilter({"#royals"})).empty());
}

TEST(FilterByKeywords, TokenModeOnFiveMessageFixture) {
  const auto f = filter_by_keywords(fixture::five(), KeywordFilter({"name"}, MatchMode::token));
  EXPECT_EQ(ids(f), (std::vector<std::string>{"m1", "m4"}));
  // substring mode also catches names/surname/#nameday
  EXPECT_EQ(filter_by_keywords(fixture::five(), KeywordFilter({"name"})).size(), 5u);
}

TEST(FilterByKeywords, PhraseKeyword) {
  const auto c = Corpus::from_messages({msg("a", "2013-07-24T19:30:00Z", "x", "Go Kate  Middleton!"),
                                        msg("b", "2013-07-24T19:31:00Z", "x", "Kate and Pippa Middleton")});
  EXPECT_EQ(ids(filter_by_keywords(c, KeywordFilter({"Kate Middleton"}, MatchMode::token))),
            (std::vector<std::string>{"a"}));
  EXPECT_TRUE(filter_by_keywords(c, KeywordFilter({"Kate Middleton"})).empty());  // double space
}

TEST(FilterByKeywords, RejectsEmptyKeywordSets) {
  EXPECT_THROW(KeywordFilter({}), PreconditionError);
  EXPECT_THROW(KeywordFilter({""}), PreconditionError);
  EXPECT_THROW(KeywordFilter({"#"}, MatchMode::token), PreconditionError);
}

TEST(SliceByTime, HalfOpenWindow) {
  const auto c = fixture::ten_minutes();
  const auto base = ts("2013-07-24T19:00:00Z");
  const auto s = slice_by_time(c, TimeWindow(base + std::chrono::minutes{3}, base + std::chrono::minutes{7}));
  EXPECT_EQ(ids(s), (std::vector<std::string>{"k3", "k4", "k5", "k6"}));
}

TEST(SliceByTime, CoveringWindowIsIdentity) {
  const auto c = fixture::ten_minutes();
  EXPECT_EQ(slice_by_time(c, TimeWindow(ts("2013-07-24T00:00:00Z"), ts("2013-07-25T00:00:00Z"))), c);
}

TEST(SliceByTime, DegenerateWindowRejected) {
  const auto t = ts("2013-07-24T19:00:00Z");
  EXPECT_THROW(TimeWindow(t, t), PreconditionError);
}

TEST(CorpusProperties, FilterSliceAlgebra) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"george", "#RoyalBaby", "name", "james", "#royals", "the", "Kate", "baby"};
  const KeywordFilter filter({"#royalbaby", "name"});
  for (int round = 0; round < 50; ++round) {
    std::vector<Message> ms;
    const int n = static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      std::string text;
      for (int w = 0, k = 1 + static_cast<int>(rng() % 5); w < k; ++w) text += words[rng() % words.size()] + " ";
      ms.push_back({"id" + std::to_string(i), ts("2013-07-24T00:00:00Z") + Seconds{static_cast<long>(rng() % 7200)},
                    "u" + std::to_string(rng() % 5), text, {}});
    }
    const auto c = Corpus::from_messages(ms);
    const TimeWindow w(ts("2013-07-24T00:20:00Z"), ts("2013-07-24T01:30:00Z"));
    const auto f = filter_by_keywords(c, filter);
    // subset, and retained/excluded agree with an independent scan
    std::size_t expected = 0;
    for (const auto& m : c) {
      std::string lower;
      for (char ch : m.text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      const bool hit = lower.find("#royalbaby") != std::string::npos || lower.find("name") != std::string::npos;
      expected += hit;
    }
    EXPECT_EQ(f.size(), expected);
    for (const auto& m : f) EXPECT_TRUE(filter.matches(m.text));
    EXPECT_EQ(slice_by_time(slice_by_time(c, w), w), slice_by_time(c, w));
    EXPECT_EQ(slice_by_time(f, w), filter_by_keywords(slice_by_time(c, w), filter));
  }
}

TEST(CorpusProperties, RoundTripBothFormats) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> texts = {"plain", "with, comma", "quote \"here\"", "multi\nline", " padded ",
                                          "unicode caf\xC3\xA9 \xD0\x9F\xD1\x80\xD0\xB8", "", "@bob hi"};
  for (int round = 0; round < 30; ++round) {
    std::vector<Message> ms;
    for (int i = 0, n = static_cast<int>(rng() % 25); i < n; ++i) {
      Message m{"id" + std::to_string(rng() % 1000) + "_" + std::to_string(i),
                ts("2013-07-19T00:00:00Z") + Seconds{static_cast<long>(rng() % 600000)},
                "user" + std::to_string(rng() % 10), texts[rng() % texts.size()], {}};
      for (int k = 0, km = static_cast<int>(rng() % 3); k < km; ++k) m.mentions.push_back("h" + std::to_string(rng() % 4));
      ms.push_back(m);
    }
    const auto c = Corpus::from_messages(ms);
    for (auto fmt : {CorpusFormat::jsonl, CorpusFormat::csv}) {
      std::istringstream in(to_string(c, fmt));
      const auto back = fmt == CorpusFormat::csv ? read_csv(in) : read_jsonl(in);
      EXPECT_EQ(back, c);
      EXPECT_EQ(to_string(back, fmt), to_string(c, fmt));
    }
  }
}

TEST(WriteCorpus, StableFieldOrder) {
  const auto c = Corpus::from_messages({msg("a", "2013-07-24T19:30:00+02:00", "x", "hi", {"y"})});
  EXPECT_EQ(to_string(c, CorpusFormat::jsonl),
            "{\"id\":\"a\",\"ts\":\"2013-07-24T17:30:00Z\",\"author\":\"x\",\"text\":\"hi\",\"mentions\":[\"y\"]}\n");
  EXPECT_EQ(to_string(c, CorpusFormat::csv), "id,ts,author,text,mentions\na,2013-07-24T17:30:00Z,x,hi,y\n");
}

TEST(Synthetic, EmptySpec) {
  Scenario s;
  s.start = ts("2013-07-24T00:00:00Z");
  EXPECT_TRUE(generate_synthetic(s, 1).empty());
}

TEST(Synthetic, DeterministicAndByteIdentical) {
  const auto a = generate_synthetic(scenarios::ranking(), 42);
  const auto b = generate_synthetic(scenarios::ranking(), 42);
  EXPECT_EQ(to_string(a, CorpusFormat::jsonl), to_string(b, CorpusFormat::jsonl));
  EXPECT_NE(to_string(a, CorpusFormat::jsonl), to_string(generate_synthetic(scenarios::ranking(), 43), CorpusFormat::jsonl));
}

TEST(Synthetic, TokenBagsAreReproducedExactly) {
  Scenario s;
  s.start = ts("2013-07-24T00:00:00Z");
  s.groups = {{0, 3, {"george", "name", "#royalbaby"}, "", {}}, {2, 2, {"james", "james"}, "ann", {"bob"}}};
  const auto c = generate_synthetic(s, 9);
  ASSERT_EQ(c.size(), 5u);
  std::map<std::string, int> counts;
  for (const auto& m : c) {
    std::istringstream words(m.text);
    for (std::string w; words >> w;) ++counts[w];
  }
  EXPECT_EQ(counts, (std::map<std::string, int>{{"george", 3}, {"name", 3}, {"#royalbaby", 3}, {"james", 4}}));
  for (const auto& m : c) EXPECT_FALSE(message_violation(m));
}

TEST(Synthetic, InconsistentSpec) {
  Scenario s;
  s.start = ts("2013-07-24T00:00:00Z");
  s.groups = {{0, -1, {"george"}, "", {}}};
  EXPECT_THROW(generate_synthetic(s, 1), InconsistentSpec);
  s.groups = {{0, 1, {"two words"}, "", {}}};
  EXPECT_THROW(generate_synthetic(s, 1), InconsistentSpec);
}

TEST(Synthetic, JsonScenarioRoundTrip) {
  const auto s = scenarios::step();
  const auto back = scenario_from_json(nlohmann::json::parse(scenario_to_json(s).dump()));
  EXPECT_EQ(generate_synthetic(back, 3), generate_synthetic(s, 3));
  EXPECT_THROW(scenario_from_json(nlohmann::json::parse(R"({"groups":[]})")), InconsistentSpec);
}
