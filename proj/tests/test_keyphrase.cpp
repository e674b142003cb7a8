#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "auxsumm/keyphrase.hpp"
#include "auxsumm/tensor.hpp"

using namespace auxsumm;

namespace {
Chunk chunk_of(std::vector<std::string> tokens) {
  Chunk c;
  c.source_tokens = std::move(tokens);
  return c;
}
}  // namespace

TEST_CASE("phrase_word_probs is the within-phrase relative frequency") {
  auto probs = phrase_word_probs(KeyPhrase{{"rescue", "team"}, 1.0});
  CHECK(probs["rescue"] == doctest::Approx(0.5));
  CHECK(probs["team"] == doctest::Approx(0.5));

  probs = phrase_word_probs(KeyPhrase{{"fire"}, 1.0});
  CHECK(probs["fire"] == doctest::Approx(1.0));

  probs = phrase_word_probs(KeyPhrase{{"aid", "aid", "camp"}, 1.0});
  CHECK(probs["aid"] == doctest::Approx(2.0 / 3.0));
  CHECK(probs["camp"] == doctest::Approx(1.0 / 3.0));

  SUBCASE("probabilities always sum to 1") {
    Rng rng(5);
    const std::vector<std::string> alphabet = {"a1", "b2", "c3", "d4"};
    for (int trial = 0; trial < 40; ++trial) {
      KeyPhrase kp;
      const std::size_t len = 1 + rng.next_below(3);
      for (std::size_t i = 0; i < len; ++i) {
        kp.tokens.push_back(alphabet[rng.next_below(alphabet.size())]);
      }
      double total = 0.0;
      for (const auto& [token, p] : phrase_word_probs(kp)) total += p;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("build_keyphrase_vector accumulates score-weighted word probabilities") {
  Vocabulary vocab = build_vocab({chunk_of({"rescue", "team", "flood", "now"})}, 10);

  SUBCASE("single phrase") {
    auto gamma = build_keyphrase_vector({KeyPhrase{{"rescue", "team"}, 0.8}}, vocab);
    CHECK(gamma[static_cast<std::size_t>(vocab.id_of("rescue"))] == doctest::Approx(0.4));
    CHECK(gamma[static_cast<std::size_t>(vocab.id_of("team"))] == doctest::Approx(0.4));
    double total = 0.0;
    for (double x : gamma) total += x;
    CHECK(total == doctest::Approx(0.8));
  }
  SUBCASE("no key-phrases gives the zero vector") {
    auto gamma = build_keyphrase_vector({}, vocab);
    for (double x : gamma) CHECK(x == 0.0);
  }
  SUBCASE("phrases sharing a word add up") {
    auto gamma = build_keyphrase_vector(
        {KeyPhrase{{"flood", "team"}, 0.5}, KeyPhrase{{"flood"}, 1.0}}, vocab);
    CHECK(gamma[static_cast<std::size_t>(vocab.id_of("flood"))] ==
          doctest::Approx(0.5 * 0.5 + 1.0 * 1.0));
  }
  SUBCASE("OOV key-phrase words contribute nothing") {
    auto gamma = build_keyphrase_vector({KeyPhrase{{"unknownword"}, 1.0}}, vocab);
    for (double x : gamma) CHECK(x == 0.0);
  }
  SUBCASE("all scores zero gives the zero vector") {
    auto gamma = build_keyphrase_vector(
        {KeyPhrase{{"rescue"}, 0.0}, KeyPhrase{{"team", "flood"}, 0.0}}, vocab);
    for (double x : gamma) CHECK(x == 0.0);
  }
}

TEST_CASE("reduce_keyphrase_vector projects onto source positions") {
  Vocabulary vocab = build_vocab({chunk_of({"rescue", "team", "now"})}, 10);
  auto gamma = build_keyphrase_vector({KeyPhrase{{"rescue", "team"}, 0.8}}, vocab);

  auto enc = encode_extended({"rescue", "team", "now"}, vocab);
  CHECK(reduce_keyphrase_vector(gamma, enc) == std::vector<double>{0.4, 0.4, 0.0});

  SUBCASE("OOV source positions are zero") {
    auto enc2 = encode_extended({"rescue", "zzz"}, vocab);
    auto gb = reduce_keyphrase_vector(gamma, enc2);
    CHECK(gb == std::vector<double>{0.4, 0.0});
  }
  SUBCASE("zero gamma reduces to zero") {
    std::vector<double> zeros(static_cast<std::size_t>(vocab.size()), 0.0);
    for (double x : reduce_keyphrase_vector(zeros, enc)) CHECK(x == 0.0);
  }
  SUBCASE("repeated occurrences of a word get equal entries") {
    auto enc3 = encode_extended({"team", "now", "team"}, vocab);
    auto gb = reduce_keyphrase_vector(gamma, enc3);
    CHECK(gb[0] == gb[2]);
  }
}

TEST_CASE("tf-idf scorer ranks phrases and normalizes to [0,1]") {
  SUBCASE("stopword-blocked bigram tops the list") {
    // "the" blocks longer candidates, so the bigram keeps the highest mass
    Chunk chunk = chunk_of({"rescue", "team", "the", "flood"});
    TfIdfKeyPhraseScorer scorer({chunk}, TokenSet{"the"});
    auto phrases = extract_keyphrases(chunk, scorer);
    REQUIRE_FALSE(phrases.empty());
    CHECK(phrases[0].tokens == std::vector<std::string>{"rescue", "team"});
    CHECK(phrases[0].score == doctest::Approx(1.0));
    for (const KeyPhrase& kp : phrases) {
      CHECK(kp.score >= 0.0);
      CHECK(kp.score <= 1.0);
    }
  }
  SUBCASE("single token source") {
    Chunk chunk = chunk_of({"flood"});
    TfIdfKeyPhraseScorer scorer;
    auto phrases = extract_keyphrases(chunk, scorer);
    REQUIRE(phrases.size() == 1);
    CHECK(phrases[0].tokens == std::vector<std::string>{"flood"});
    CHECK(phrases[0].score == doctest::Approx(1.0));
  }
  SUBCASE("empty source gives no phrases") {
    CHECK(extract_keyphrases(chunk_of({}), TfIdfKeyPhraseScorer{}).empty());
  }
  SUBCASE("ordering is score desc then first position asc") {
    Chunk chunk = chunk_of({"aa", "bb", "aa", "bb"});
    TfIdfKeyPhraseScorer scorer;
    auto phrases = extract_keyphrases(chunk, scorer);
    for (std::size_t i = 1; i < phrases.size(); ++i) {
      CHECK(phrases[i - 1].score >= phrases[i].score);
    }
  }
}

TEST_CASE("key-phrase file is a passthrough plug-in") {
  const auto path = std::filesystem::temp_directory_path() / "auxsumm_test_keyphrases.jsonl";
  std::map<int, std::vector<KeyPhrase>> phrases;
  phrases[0] = {KeyPhrase{{"rescue", "team"}, 1.0}, KeyPhrase{{"flood"}, 0.25}};
  phrases[2] = {KeyPhrase{{"aid", "camp"}, 0.5}};
  write_keyphrase_file(phrases, path.string());

  FileKeyPhraseScorer scorer(path.string());
  auto got = extract_keyphrases(chunk_of({"anything"}), scorer, 0);
  REQUIRE(got.size() == 2);
  CHECK(got[0].tokens == phrases[0][0].tokens);
  CHECK(got[0].score == phrases[0][0].score);
  CHECK(got[1].tokens == phrases[0][1].tokens);
  CHECK(extract_keyphrases(chunk_of({"anything"}), scorer, 1).empty());
  CHECK(extract_keyphrases(chunk_of({"anything"}), scorer, 2).size() == 1);

  SUBCASE("scores outside [0,1] are rejected") {
    std::ofstream out(path);
    out << R"({"chunk_index": 0, "phrase": "bad", "score": 1.5})" << '\n';
    out.close();
    CHECK_THROWS_AS(FileKeyPhraseScorer(path.string()), std::runtime_error);
  }
  std::filesystem::remove(path);
}
