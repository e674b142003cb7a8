#ifndef AUXSUMM_DECODE_HPP
#define AUXSUMM_DECODE_HPP

#include <string>
#include <vector>

#include "auxsumm/extract.hpp"
#include "auxsumm/keyphrase.hpp"
#include "auxsumm/model.hpp"

namespace auxsumm {

struct DecodeConfig {
  int beam_size = 5;
  int min_length = 35;
  int max_length = 200;
  /// Recompute key-phrases at inference and keep the attention mix; the
  /// default drops the key-phrase term, leaving the plain energy softmax.
  bool keyphrase_at_decode = false;
  /// Rank finished hypotheses by log_prob / length instead of raw log_prob.
  bool length_normalize = false;

  void validate() const;
};

/// Beam-search partial output.
struct Hypothesis {
  std::vector<int> token_ids;  // extended ids, STOP excluded
  double log_prob = 0.0;
  AuxPgn::StepState state;
  std::vector<double> p_gens;
  bool finished = false;
};

/// Length-unnormalized beam search over the final distribution. STOP is
/// masked (zeroed, distribution renormalized) until min_length; PAD and
/// START are always masked. Finished hypotheses stay in the beam and compete
/// by log_prob. Ties break toward the lexicographically smaller id sequence.
Hypothesis beam_search(const AuxPgn& model, const ExtendedEncoding& encoding,
                       const std::vector<double>& gamma_bar, const DecodeConfig& config);

struct SummarizeResult {
  std::vector<std::string> tokens;
  double log_prob = 0.0;
  std::vector<double> p_gens;
};

/// Decode one already-encoded chunk.
SummarizeResult summarize_chunk(const AuxPgn& model, const Vocabulary& vocab, const Chunk& chunk,
                                const KeyPhraseScorer* scorer, int chunk_index,
                                const DecodeConfig& config);

/// Full pipeline over raw tweets: preprocess, Phase-I selection, encode,
/// beam search, detokenize.
SummarizeResult summarize(const AuxPgn& model, const Vocabulary& vocab,
                          const std::vector<RawTweet>& tweets, const Ranker& ranker,
                          const KeyPhraseScorer* scorer, const TokenSet& stopwords,
                          const DecodeConfig& config, int budget = kSourceBudget);

}  // namespace auxsumm

#endif  // AUXSUMM_DECODE_HPP
