#ifndef AUXSUMM_CORPUS_HPP
#define AUXSUMM_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace auxsumm {

struct RawTweet {
  std::string id;
  std::string text;
  std::optional<std::int64_t> timestamp;
};

/// One training/inference sample: a bounded window of source tokens plus an
/// optional reference summary.
struct Chunk {
  std::vector<std::string> source_tokens;                 // <= kSourceBudget
  std::optional<std::vector<std::string>> reference_tokens;  // <= kReferenceBudget
  std::vector<std::string> origin_ids;

  bool operator==(const Chunk&) const = default;
};

inline constexpr int kSourceBudget = 400;
inline constexpr int kReferenceBudget = 200;

using TokenSet = std::set<std::string>;

/// The bundled English stopword list (lowercase).
const TokenSet& default_stopwords();
TokenSet load_stopwords(const std::string& path);

/// Tweet normalization: drops URLs, emoticons, hashtag and username tokens,
/// stopwords and tokens shorter than 3 characters; strips punctuation and
/// characters outside the basic multilingual plane; lowercases. Idempotent
/// on its own (re-joined) output.
std::vector<std::string> preprocess_tweet(const RawTweet& raw, const TokenSet& stopwords);
std::vector<std::string> preprocess_text(const std::string& text, const TokenSet& stopwords);

struct PreprocessedTweet {
  std::string id;
  std::vector<std::string> tokens;
};

/// Concatenates tweet token streams in input order and cuts consecutive
/// non-overlapping chunks of exactly `budget` tokens (final chunk may be
/// shorter). Token count and order are preserved.
std::vector<Chunk> chunk_corpus(const std::vector<PreprocessedTweet>& tweets,
                                int budget = kSourceBudget);

/// Dataset file: one JSON object per line, fields `source` (space-separated
/// tokens), optional `reference`, `origin_ids` (array of strings). UTF-8,
/// LF line endings. Serialization is canonical, so write/load round-trips
/// are byte-stable.
std::vector<Chunk> load_dataset(const std::string& path);
void write_dataset(const std::vector<Chunk>& chunks, const std::string& path);

std::string join_tokens(const std::vector<std::string>& tokens);
std::vector<std::string> split_tokens(const std::string& text);

}  // namespace auxsumm

#endif  // AUXSUMM_CORPUS_HPP
