#include "auxsumm/keyphrase.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace auxsumm {

namespace {
using nlohmann::json;

struct Candidate {
  std::vector<std::string> tokens;
  double raw = 0.0;
  std::size_t first_pos = 0;
};
}  // namespace

TfIdfKeyPhraseScorer::TfIdfKeyPhraseScorer(const std::vector<Chunk>& corpus, TokenSet stopwords)
    : n_docs_(static_cast<long long>(corpus.size())), stopwords_(std::move(stopwords)) {
  for (const Chunk& chunk : corpus) {
    TokenSet seen(chunk.source_tokens.begin(), chunk.source_tokens.end());
    for (const std::string& t : seen) ++df_[t];
  }
}

double TfIdfKeyPhraseScorer::token_weight(const std::string& token,
                                          const std::map<std::string, int>& tf) const {
  auto it = tf.find(token);
  const double term_freq = it == tf.end() ? 0.0 : static_cast<double>(it->second);
  auto dit = df_.find(token);
  const double doc_freq = dit == df_.end() ? 0.0 : static_cast<double>(dit->second);
  // Smoothed idf; always >= 1, so every present token carries positive weight.
  const double idf =
      std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + doc_freq)) + 1.0;
  return term_freq * idf;
}

std::vector<KeyPhrase> TfIdfKeyPhraseScorer::score(const Chunk& chunk, int /*chunk_index*/) const {
  const std::vector<std::string>& src = chunk.source_tokens;
  if (src.empty()) return {};

  std::map<std::string, int> tf;
  for (const std::string& t : src) ++tf[t];

  std::map<std::vector<std::string>, Candidate> candidates;
  for (std::size_t start = 0; start < src.size(); ++start) {
    for (std::size_t len = 1; len <= 3 && start + len <= src.size(); ++len) {
      const std::string& next = src[start + len - 1];
      if (stopwords_.count(next)) break;  // no candidate may span a stopword
      std::vector<std::string> tokens(src.begin() + static_cast<std::ptrdiff_t>(start),
                                      src.begin() + static_cast<std::ptrdiff_t>(start + len));
      auto [it, inserted] = candidates.try_emplace(tokens);
      if (inserted) {
        it->second.tokens = tokens;
        it->second.first_pos = start;
        for (const std::string& t : tokens) it->second.raw += token_weight(t, tf);
      } else {
        it->second.first_pos = std::min(it->second.first_pos, start);
      }
    }
  }

  double max_raw = 0.0;
  for (const auto& [tokens, c] : candidates) max_raw = std::max(max_raw, c.raw);

  std::vector<Candidate> ordered;
  ordered.reserve(candidates.size());
  for (auto& [tokens, c] : candidates) ordered.push_back(std::move(c));
  std::sort(ordered.begin(), ordered.end(), [](const Candidate& a, const Candidate& b) {
    if (a.raw != b.raw) return a.raw > b.raw;
    if (a.first_pos != b.first_pos) return a.first_pos < b.first_pos;
    return a.tokens < b.tokens;
  });

  std::vector<KeyPhrase> out;
  out.reserve(ordered.size());
  for (Candidate& c : ordered) {
    out.push_back(KeyPhrase{std::move(c.tokens), c.raw / max_raw});
  }
  return out;
}

FileKeyPhraseScorer::FileKeyPhraseScorer(const std::string& path)
    : by_chunk_(load_keyphrase_file(path)) {}

std::vector<KeyPhrase> FileKeyPhraseScorer::score(const Chunk& /*chunk*/, int chunk_index) const {
  auto it = by_chunk_.find(chunk_index);
  return it == by_chunk_.end() ? std::vector<KeyPhrase>{} : it->second;
}

std::map<int, std::vector<KeyPhrase>> load_keyphrase_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open key-phrase file: " + path);
  std::map<int, std::vector<KeyPhrase>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": malformed JSON record: " + e.what());
    }
    if (!record.contains("chunk_index") || !record["chunk_index"].is_number_integer() ||
        !record.contains("phrase") || !record["phrase"].is_string() ||
        !record.contains("score") || !record["score"].is_number()) {
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected fields chunk_index, phrase, score");
    }
    KeyPhrase kp;
    kp.tokens = split_tokens(record["phrase"].get<std::string>());
    kp.score = record["score"].get<double>();
    if (kp.tokens.empty() || kp.score < 0.0 || kp.score > 1.0) {
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": phrase must be non-empty with score in [0, 1]");
    }
    out[record["chunk_index"].get<int>()].push_back(std::move(kp));
  }
  return out;
}

void write_keyphrase_file(const std::map<int, std::vector<KeyPhrase>>& phrases,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open key-phrase file for writing: " + path);
  for (const auto& [index, list] : phrases) {
    for (const KeyPhrase& kp : list) {
      json record;
      record["chunk_index"] = index;
      record["phrase"] = join_tokens(kp.tokens);
      record["score"] = kp.score;
      out << record.dump() << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<KeyPhrase> extract_keyphrases(const Chunk& chunk, const KeyPhraseScorer& scorer,
                                          int chunk_index) {
  return scorer.score(chunk, chunk_index);
}

std::map<std::string, double> phrase_word_probs(const KeyPhrase& kp) {
  if (kp.tokens.empty()) throw std::invalid_argument("phrase_word_probs: empty key-phrase");
  std::map<std::string, double> probs;
  for (const std::string& t : kp.tokens) probs[t] += 1.0;
  const double n = static_cast<double>(kp.tokens.size());
  for (auto& [t, p] : probs) p /= n;
  return probs;
}

std::vector<double> build_keyphrase_vector(const std::vector<KeyPhrase>& keyphrases,
                                           const Vocabulary& vocab) {
  std::vector<double> gamma(static_cast<std::size_t>(vocab.size()), 0.0);
  for (const KeyPhrase& kp : keyphrases) {
    for (const auto& [token, prob] : phrase_word_probs(kp)) {
      if (!vocab.contains(token)) continue;
      gamma[static_cast<std::size_t>(vocab.id_of(token))] += kp.score * prob;
    }
  }
  return gamma;
}

std::vector<double> reduce_keyphrase_vector(const std::vector<double>& gamma,
                                            const ExtendedEncoding& encoding) {
  std::vector<double> gamma_bar(encoding.base_ids.size(), 0.0);
  for (std::size_t k = 0; k < encoding.base_ids.size(); ++k) {
    const int id = encoding.base_ids[k];
    if (id != kUnkId) gamma_bar[k] = gamma[static_cast<std::size_t>(id)];
  }
  return gamma_bar;
}

}  // namespace auxsumm
