#include "auxsumm/corpus.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace auxsumm {

namespace {

using nlohmann::json;

// Standard English stopword list (Snowball-derived).
constexpr const char* kStopwords[] = {
    "a",       "about",   "above",  "after",   "again",    "against", "all",     "am",
    "an",      "and",     "any",    "are",     "aren't",   "as",      "at",      "be",
    "because", "been",    "before", "being",   "below",    "between", "both",    "but",
    "by",      "can't",   "cannot", "could",   "couldn't", "did",     "didn't",  "do",
    "does",    "doesn't", "doing",  "don't",   "down",     "during",  "each",    "few",
    "for",     "from",    "further","had",     "hadn't",   "has",     "hasn't",  "have",
    "haven't", "having",  "he",     "he'd",    "he'll",    "he's",    "her",     "here",
    "here's",  "hers",    "herself","him",     "himself",  "his",     "how",     "how's",
    "i",       "i'd",     "i'll",   "i'm",     "i've",     "if",      "in",      "into",
    "is",      "isn't",   "it",     "it's",    "its",      "itself",  "let's",   "me",
    "more",    "most",    "mustn't","my",      "myself",   "no",      "nor",     "not",
    "of",      "off",     "on",     "once",    "only",     "or",      "other",   "ought",
    "our",     "ours",    "ourselves", "out",  "over",     "own",     "same",    "shan't",
    "she",     "she'd",   "she'll", "she's",   "should",   "shouldn't", "so",    "some",
    "such",    "than",    "that",   "that's",  "the",      "their",   "theirs",  "them",
    "themselves", "then", "there",  "there's", "these",    "they",    "they'd",  "they'll",
    "they're", "they've", "this",   "those",   "through",  "to",      "too",     "under",
    "until",   "up",      "very",   "was",     "wasn't",   "we",      "we'd",    "we'll",
    "we're",   "we've",   "were",   "weren't", "what",     "what's",  "when",    "when's",
    "where",   "where's", "which",  "while",   "who",      "who's",   "whom",    "why",
    "why's",   "with",    "won't",  "would",   "wouldn't", "you",     "you'd",   "you'll",
    "you're",  "you've",  "your",   "yours",   "yourself", "yourselves",
};

constexpr const char* kEmoticons[] = {
    ":)",  ":(",  ":-)", ":-(", ";)",  ";-)", ":D",  ":-D", ":P",  ":-P", ":p",  ":-p",
    ":/",  ":-/", ":|",  ":-|", ":o",  ":O",  ":-o", ":-O", "xD",  "XD",  "xd",  "<3",
    "=)",  "=(",  ":'(", ":')", "^_^", "-_-", "o_O", "O_o", "T_T", ";P",  ";p",  ";D",
};

bool is_ascii_punct(char32_t c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

bool is_emoticon(const std::string& token) {
  for (const char* e : kEmoticons) {
    if (token == e) return true;
  }
  return false;
}

bool has_url_prefix(const std::string& token) {
  auto starts_with_ci = [&](const char* prefix) {
    std::size_t n = std::char_traits<char>::length(prefix);
    if (token.size() < n) return false;
    for (std::size_t i = 0; i < n; ++i) {
      char c = token[i];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      if (c != prefix[i]) return false;
    }
    return true;
  };
  return starts_with_ci("http://") || starts_with_ci("https://") || starts_with_ci("www.");
}

// Decodes one UTF-8 codepoint starting at i; advances i. Invalid bytes are
// passed through as single codepoints.
char32_t next_codepoint(const std::string& s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  int extra = 0;
  char32_t cp = b0;
  if (b0 >= 0xF0) {
    extra = 3;
    cp = b0 & 0x07u;
  } else if (b0 >= 0xE0) {
    extra = 2;
    cp = b0 & 0x0Fu;
  } else if (b0 >= 0xC0) {
    extra = 1;
    cp = b0 & 0x1Fu;
  }
  if (i + static_cast<std::size_t>(extra) >= s.size()) {
    ++i;
    return b0;
  }
  for (int k = 1; k <= extra; ++k) {
    const unsigned char bk = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
    if ((bk & 0xC0u) != 0x80u) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (bk & 0x3Fu);
  }
  i += static_cast<std::size_t>(extra) + 1;
  return cp;
}

void append_codepoint(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Strips punctuation and non-BMP codepoints, lowercases ASCII. Returns the
// cleaned token and its codepoint count.
std::pair<std::string, int> clean_token(const std::string& token) {
  std::string out;
  int count = 0;
  std::size_t i = 0;
  while (i < token.size()) {
    char32_t cp = next_codepoint(token, i);
    if (is_ascii_punct(cp)) continue;
    if (cp > 0xFFFF) continue;  // outside the basic multilingual plane
    if (cp >= 'A' && cp <= 'Z') cp = cp - 'A' + 'a';
    append_codepoint(out, cp);
    ++count;
  }
  return {out, count};
}

[[noreturn]] void dataset_error(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path + ": line " + std::to_string(line) + ": " + what);
}

}  // namespace

const TokenSet& default_stopwords() {
  static const TokenSet set(std::begin(kStopwords), std::end(kStopwords));
  return set;
}

TokenSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  TokenSet set;
  std::string word;
  while (in >> word) set.insert(word);
  return set;
}

std::vector<std::string> preprocess_text(const std::string& text, const TokenSet& stopwords) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string raw;
  while (in >> raw) {
    if (has_url_prefix(raw)) continue;
    if (raw[0] == '#' || raw[0] == '@') continue;
    if (is_emoticon(raw)) continue;
    auto [token, count] = clean_token(raw);
    if (count < 3) continue;
    if (stopwords.count(token)) continue;
    out.push_back(std::move(token));
  }
  return out;
}

std::vector<std::string> preprocess_tweet(const RawTweet& raw, const TokenSet& stopwords) {
  return preprocess_text(raw.text, stopwords);
}

std::vector<Chunk> chunk_corpus(const std::vector<PreprocessedTweet>& tweets, int budget) {
  if (budget <= 0) throw std::invalid_argument("chunk_corpus: budget must be > 0");
  std::vector<Chunk> chunks;
  Chunk current;
  auto flush = [&] {
    if (!current.source_tokens.empty()) {
      chunks.push_back(std::move(current));
      current = Chunk{};
    }
  };
  for (const PreprocessedTweet& tweet : tweets) {
    bool contributed = false;
    for (const std::string& token : tweet.tokens) {
      if (!contributed) {
        current.origin_ids.push_back(tweet.id);
        contributed = true;
      }
      current.source_tokens.push_back(token);
      if (static_cast<int>(current.source_tokens.size()) == budget) {
        flush();
        // the tweet keeps contributing to the next chunk
        contributed = false;
      }
    }
  }
  flush();
  return chunks;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

std::vector<Chunk> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  std::vector<Chunk> chunks;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      dataset_error(path, lineno, std::string("malformed JSON record: ") + e.what());
    }
    if (!record.is_object()) dataset_error(path, lineno, "record is not a JSON object");
    if (!record.contains("source") || !record["source"].is_string()) {
      dataset_error(path, lineno, "missing or invalid field 'source'");
    }
    Chunk chunk;
    chunk.source_tokens = split_tokens(record["source"].get<std::string>());
    if (static_cast<int>(chunk.source_tokens.size()) > kSourceBudget) {
      dataset_error(path, lineno, "field 'source' exceeds " + std::to_string(kSourceBudget) +
                                      " tokens");
    }
    if (record.contains("reference") && !record["reference"].is_null()) {
      if (!record["reference"].is_string()) {
        dataset_error(path, lineno, "missing or invalid field 'reference'");
      }
      chunk.reference_tokens = split_tokens(record["reference"].get<std::string>());
      if (static_cast<int>(chunk.reference_tokens->size()) > kReferenceBudget) {
        dataset_error(path, lineno, "field 'reference' exceeds " +
                                        std::to_string(kReferenceBudget) + " tokens");
      }
    }
    if (record.contains("origin_ids")) {
      if (!record["origin_ids"].is_array()) {
        dataset_error(path, lineno, "missing or invalid field 'origin_ids'");
      }
      for (const auto& id : record["origin_ids"]) {
        if (!id.is_string()) dataset_error(path, lineno, "missing or invalid field 'origin_ids'");
        chunk.origin_ids.push_back(id.get<std::string>());
      }
    }
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

void write_dataset(const std::vector<Chunk>& chunks, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open dataset file for writing: " + path);
  for (const Chunk& chunk : chunks) {
    json record;
    record["origin_ids"] = chunk.origin_ids;
    if (chunk.reference_tokens) record["reference"] = join_tokens(*chunk.reference_tokens);
    record["source"] = join_tokens(chunk.source_tokens);
    out << record.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace auxsumm
