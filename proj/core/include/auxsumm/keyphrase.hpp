#ifndef AUXSUMM_KEYPHRASE_HPP
#define AUXSUMM_KEYPHRASE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "auxsumm/corpus.hpp"
#include "auxsumm/vocab.hpp"

namespace auxsumm {

/// A token sequence with an importance score in [0, 1].
struct KeyPhrase {
  std::vector<std::string> tokens;
  double score = 0.0;
};

/// Plug-in interface for key-phrase identification. The built-in default is
/// TF-IDF based; precomputed phrases can be supplied from a file instead.
class KeyPhraseScorer {
 public:
  virtual ~KeyPhraseScorer() = default;
  virtual std::vector<KeyPhrase> score(const Chunk& chunk, int chunk_index) const = 0;
};

/// Scores candidate 1-3 gram phrases by the summed TF-IDF weight of their
/// member tokens, max-normalized to [0, 1]. Document frequencies come from
/// the corpus the scorer was built over; without one, weights reduce to
/// plain term frequency.
class TfIdfKeyPhraseScorer : public KeyPhraseScorer {
 public:
  TfIdfKeyPhraseScorer() = default;
  explicit TfIdfKeyPhraseScorer(const std::vector<Chunk>& corpus, TokenSet stopwords = {});

  std::vector<KeyPhrase> score(const Chunk& chunk, int chunk_index) const override;
  double token_weight(const std::string& token, const std::map<std::string, int>& tf) const;

 private:
  std::map<std::string, int> df_;
  long long n_docs_ = 0;
  TokenSet stopwords_;
};

/// Passthrough scorer over a precomputed key-phrase file.
class FileKeyPhraseScorer : public KeyPhraseScorer {
 public:
  explicit FileKeyPhraseScorer(const std::string& path);
  std::vector<KeyPhrase> score(const Chunk& chunk, int chunk_index) const override;

 private:
  std::map<int, std::vector<KeyPhrase>> by_chunk_;
};

/// Key-phrase file: one JSON object per line:
/// {"chunk_index": int, "phrase": "space separated tokens", "score": float}
std::map<int, std::vector<KeyPhrase>> load_keyphrase_file(const std::string& path);
void write_keyphrase_file(const std::map<int, std::vector<KeyPhrase>>& phrases,
                          const std::string& path);

std::vector<KeyPhrase> extract_keyphrases(const Chunk& chunk, const KeyPhraseScorer& scorer,
                                          int chunk_index = 0);

/// Within-phrase relative word frequencies; values sum to 1.
std::map<std::string, double> phrase_word_probs(const KeyPhrase& kp);

/// Key-phrase word vector over the vocabulary: the score-weighted sum of
/// each phrase's word-probability vector. Words outside the vocabulary
/// contribute nothing.
std::vector<double> build_keyphrase_vector(const std::vector<KeyPhrase>& keyphrases,
                                           const Vocabulary& vocab);

/// Projects the vocabulary-sized vector onto the source positions: entry k is
/// the vector value of source token k, or 0 when the token is OOV.
std::vector<double> reduce_keyphrase_vector(const std::vector<double>& gamma,
                                            const ExtendedEncoding& encoding);

}  // namespace auxsumm

#endif  // AUXSUMM_KEYPHRASE_HPP
