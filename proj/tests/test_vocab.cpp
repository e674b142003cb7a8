#include <doctest.h>

#include <filesystem>

#include "auxsumm/tensor.hpp"
#include "auxsumm/vocab.hpp"

using namespace auxsumm;

namespace {
Chunk chunk_of(std::vector<std::string> tokens) {
  Chunk c;
  c.source_tokens = std::move(tokens);
  return c;
}
}  // namespace

TEST_CASE("build_vocab keeps the most frequent tokens") {
  SUBCASE("frequency ordering") {
    Vocabulary v = build_vocab({chunk_of({"a", "a", "b"})}, 1);
    CHECK(v.size() == kReservedTokens + 1);
    CHECK(v.contains("a"));
    CHECK_FALSE(v.contains("b"));
  }
  SUBCASE("ties break lexicographically") {
    Vocabulary v = build_vocab({chunk_of({"y", "x", "y", "x"})}, 1);
    CHECK(v.contains("x"));
    CHECK_FALSE(v.contains("y"));
  }
  SUBCASE("empty corpus leaves only reserved tokens") {
    Vocabulary v = build_vocab({}, 10);
    CHECK(v.size() == kReservedTokens);
  }
  SUBCASE("references count toward frequencies") {
    Chunk c = chunk_of({"a"});
    c.reference_tokens = std::vector<std::string>{"b", "b"};
    Vocabulary v = build_vocab({c}, 1);
    CHECK(v.contains("b"));
  }
  SUBCASE("reserved ids are fixed") {
    Vocabulary v = build_vocab({chunk_of({"zzz"})}, 5);
    CHECK(v.token_of(kPadId) == "[PAD]");
    CHECK(v.token_of(kUnkId) == "[UNK]");
    CHECK(v.token_of(kStartId) == "[START]");
    CHECK(v.token_of(kStopId) == "[STOP]");
    CHECK(v.id_of("zzz") == kReservedTokens);
  }
}

TEST_CASE("encode_extended maps OOVs past the vocabulary") {
  Vocabulary v = build_vocab({chunk_of({"flood", "rescue", "camp"})}, 10);
  const int flood = v.id_of("flood");

  SUBCASE("repeated OOVs share one extended id") {
    auto enc = encode_extended({"flood", "zzz", "flood", "zzz"}, v);
    CHECK(enc.base_ids == std::vector<int>{flood, kUnkId, flood, kUnkId});
    CHECK(enc.extended_ids == std::vector<int>{flood, v.size(), flood, v.size()});
    CHECK(enc.oov_tokens == std::vector<std::string>{"zzz"});
    CHECK(enc.extended_size(v) == v.size() + 1);
  }
  SUBCASE("all in-vocab tokens") {
    auto enc = encode_extended({"camp", "flood"}, v);
    CHECK(enc.extended_ids == enc.base_ids);
    CHECK(enc.oov_tokens.empty());
  }
  SUBCASE("all OOV tokens get consecutive ids by first appearance") {
    auto enc = encode_extended({"qq1", "qq2", "qq3", "qq2"}, v);
    CHECK(enc.extended_ids ==
          std::vector<int>{v.size(), v.size() + 1, v.size() + 2, v.size() + 1});
    CHECK(enc.oov_tokens == std::vector<std::string>{"qq1", "qq2", "qq3"});
  }
}

TEST_CASE("decode_ids inverts encode_extended") {
  Vocabulary v = build_vocab({chunk_of({"flood", "rescue", "camp", "team", "aid"})}, 10);
  Rng rng(42);
  const std::vector<std::string> alphabet = {"flood", "rescue", "camp", "team",
                                             "aid",   "oov1",   "oov2", "oov3"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> tokens;
    const std::size_t len = rng.next_below(12);
    for (std::size_t i = 0; i < len; ++i) {
      tokens.push_back(alphabet[rng.next_below(alphabet.size())]);
    }
    auto enc = encode_extended(tokens, v);
    CHECK(decode_ids(enc.extended_ids, v, enc.oov_tokens) == tokens);
  }

  SUBCASE("first oov id maps to oov_tokens[0]") {
    CHECK(decode_ids({v.size()}, v, {"zzz"}) == std::vector<std::string>{"zzz"});
  }
  SUBCASE("id beyond the extended range throws") {
    CHECK_THROWS_AS(decode_ids({v.size() + 1}, v, {"zzz"}), std::out_of_range);
    CHECK_THROWS_AS(decode_ids({-1}, v, {}), std::out_of_range);
  }
}

TEST_CASE("vocabulary file round trip with header") {
  Vocabulary v = build_vocab({chunk_of({"flood", "flood", "rescue"})}, 10);
  const auto path = std::filesystem::temp_directory_path() / "auxsumm_test_vocab.txt";
  write_vocab(v, path.string());
  Vocabulary loaded = load_vocab(path.string());
  CHECK(loaded.tokens() == v.tokens());

  SUBCASE("bad header is rejected") {
    std::ofstream out(path);
    out << "wrong-header v9 3\nx\ny\nz\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_vocab(path.string()), doctest::Contains("header"),
                         std::runtime_error);
  }
  std::filesystem::remove(path);
}
