#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "auxsumm/corpus.hpp"
#include "auxsumm/tensor.hpp"

using namespace auxsumm;

namespace {
std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("preprocess_tweet applies the removal rules") {
  TokenSet stop = {"in"};
  CHECK(preprocess_text("Floods in Chennai http://t.co/x :(", stop) ==
        std::vector<std::string>{"floods", "chennai"});
  CHECK(preprocess_text("", stop).empty());
  CHECK(preprocess_text("#help @user RT", stop).empty());

  SUBCASE("urls, emoticons, case, short tokens") {
    CHECK(preprocess_text("WWW.EXAMPLE.COM hello", {}) == std::vector<std::string>{"hello"});
    CHECK(preprocess_text("great day :-D <3", {}) ==
          std::vector<std::string>{"great", "day"});
    CHECK(preprocess_text("Fire, rescue!", {}) == std::vector<std::string>{"fire", "rescue"});
    // codepoints outside the basic multilingual plane are stripped
    CHECK(preprocess_text("flood\xF0\x9F\x98\x80 ok", {}) == std::vector<std::string>{"flood"});
  }

  SUBCASE("stopwords from the builtin list") {
    CHECK(preprocess_text("the flood and the rescue", default_stopwords()) ==
          std::vector<std::string>{"flood", "rescue"});
  }
}

TEST_CASE("preprocess_tweet is idempotent on its own output") {;
  const char* samples[] = {
      "Floods in Chennai http://t.co/x :( #chennai @rescue",
      "BREAKING: 20 people trapped!!! send help NOW www.example.com",
      "rain rain go away... :-( RT @user",
      "Aftershocks reported; magnitude 5.4, #earthquake",
  };
  for (const char* s : samples) {
    auto once = preprocess_text(s, default_stopwords());
    auto twice = preprocess_text(join_tokens(once), default_stopwords());
    CHECK(once == twice);
  }
}

TEST_CASE("chunk_corpus cuts exact budget chunks") {
  auto make_tweets = [](int total, int per_tweet) {
    std::vector<PreprocessedTweet> tweets;
    int made = 0;
    int id = 0;
    while (made < total) {
      PreprocessedTweet t;
      t.id = std::to_string(id++);
      for (int k = 0; k < per_tweet && made < total; ++k) {
        t.tokens.push_back("tok" + std::to_string(made++));
      }
      tweets.push_back(std::move(t));
    }
    return tweets;
  };

  SUBCASE("900 tokens at budget 400 gives sizes 400/400/100") {
    auto chunks = chunk_corpus(make_tweets(900, 17), 400);
    REQUIRE(chunks.size() == 3);
    CHECK(chunks[0].source_tokens.size() == 400);
    CHECK(chunks[1].source_tokens.size() == 400);
    CHECK(chunks[2].source_tokens.size() == 100);
  }
  SUBCASE("exact fit gives one chunk") {
    auto chunks = chunk_corpus(make_tweets(400, 40), 400);
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].source_tokens.size() == 400);
  }
  SUBCASE("empty corpus gives no chunks") { CHECK(chunk_corpus({}, 400).empty()); }

  SUBCASE("token count and order are preserved") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      const int total = static_cast<int>(rng.next_below(300));
      const int per = 1 + static_cast<int>(rng.next_below(9));
      const int budget = 1 + static_cast<int>(rng.next_below(70));
      auto tweets = make_tweets(total, per);
      auto chunks = chunk_corpus(tweets, budget);
      std::vector<std::string> flat;
      for (const Chunk& c : chunks) {
        CHECK(static_cast<int>(c.source_tokens.size()) <= budget);
        flat.insert(flat.end(), c.source_tokens.begin(), c.source_tokens.end());
      }
      CHECK(flat.size() == static_cast<std::size_t>(total));
      for (int i = 0; i < total; ++i) CHECK(flat[static_cast<std::size_t>(i)] == "tok" + std::to_string(i));
    }
  }

  SUBCASE("origin ids track contributing tweets across a split") {
    std::vector<PreprocessedTweet> tweets = {{"a", {"one", "two", "three"}},
                                             {"b", {"four", "five"}}};
    auto chunks = chunk_corpus(tweets, 4);
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[0].origin_ids == std::vector<std::string>{"a", "b"});
    CHECK(chunks[1].origin_ids == std::vector<std::string>{"b"});
  }
}

TEST_CASE("dataset round trip") {
  const auto path = temp_file("auxsumm_test_dataset.jsonl");
  std::vector<Chunk> chunks(3);
  chunks[0].source_tokens = {"floods", "chennai"};
  chunks[0].reference_tokens = std::vector<std::string>{"flood", "summary"};
  chunks[0].origin_ids = {"1", "2"};
  chunks[1].source_tokens = {"alpha"};
  chunks[2].source_tokens = {"beta", "gamma"};
  chunks[2].origin_ids = {"9"};

  write_dataset(chunks, path.string());
  CHECK(load_dataset(path.string()) == chunks);

  SUBCASE("canonical serialization is byte-stable") {
    std::ifstream f1(path);
    std::string first((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    write_dataset(load_dataset(path.string()), path.string());
    std::ifstream f2(path);
    std::string second((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(first == second);
  }
  std::filesystem::remove(path);
}

TEST_CASE("dataset parse errors name the line and field") {
  const auto path = temp_file("auxsumm_test_bad_dataset.jsonl");
  {
    std::ofstream out(path);
    out << R"({"source": "ok tokens", "origin_ids": []})" << '\n';
    out << R"({"reference": "no source here", "origin_ids": []})" << '\n';
  }
  CHECK_THROWS_WITH_AS(load_dataset(path.string()),
                       doctest::Contains("line 2") && doctest::Contains("'source'"),
                       std::runtime_error);
  {
    std::ofstream out(path);
    out << "not json at all\n";
  }
  CHECK_THROWS_WITH_AS(load_dataset(path.string()), doctest::Contains("line 1"),
                       std::runtime_error);
  {
    std::ofstream out(path);  // empty file
  }
  CHECK(load_dataset(path.string()).empty());
  std::filesystem::remove(path);
}
