#include "auxsumm/decode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auxsumm {

void DecodeConfig::validate() const {
  if (beam_size < 1) throw std::invalid_argument("DecodeConfig: beam_size must be >= 1");
  if (min_length < 0 || min_length > max_length) {
    throw std::invalid_argument("DecodeConfig: need 0 <= min_length <= max_length");
  }
}

namespace {

struct Candidate {
  std::size_t beam_index;
  int token = -1;          // -1 marks a finished hypothesis passing through
  double log_prob = 0.0;
};

// Comparison used for both pruning and final selection: higher log_prob
// first, ties toward the lexicographically smaller token-id sequence.
bool better(const std::vector<Hypothesis>& beams, const Candidate& a, const Candidate& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  const Hypothesis& ha = beams[a.beam_index];
  const Hypothesis& hb = beams[b.beam_index];
  auto key = [](const Hypothesis& h, int token) {
    std::vector<int> ids = h.token_ids;
    if (token >= 0) ids.push_back(token);
    return ids;
  };
  return key(ha, a.token) < key(hb, b.token);
}

}  // namespace

Hypothesis beam_search(const AuxPgn& model, const ExtendedEncoding& encoding,
                       const std::vector<double>& gamma_bar, const DecodeConfig& config) {
  config.validate();
  if (encoding.base_ids.empty()) throw std::invalid_argument("beam_search: empty source");

  const int vocab_size = model.config().vocab_size;
  const AuxPgn::EncodedValues encoded = model.encode_values(encoding.base_ids);

  std::vector<Hypothesis> beams(1);
  beams[0].state = encoded.init;

  for (int step = 0; step < config.max_length; ++step) {
    bool all_finished = true;
    for (const Hypothesis& h : beams) all_finished = all_finished && h.finished;
    if (all_finished) break;

    std::vector<Candidate> candidates;
    std::vector<AuxPgn::StepValues> step_values(beams.size());
    for (std::size_t b = 0; b < beams.size(); ++b) {
      Hypothesis& hyp = beams[b];
      if (hyp.finished) {
        candidates.push_back(Candidate{b, -1, hyp.log_prob});
        continue;
      }
      int input_id = kStartId;
      if (!hyp.token_ids.empty()) {
        const int last = hyp.token_ids.back();
        input_id = last < vocab_size ? last : kUnkId;  // copied OOVs feed back as UNK
      }
      step_values[b] = model.decode_step(encoded.states, hyp.state, input_id, encoding,
                                         gamma_bar, AttentionMode::kDecode);
      std::vector<double>& probs = step_values[b].p_final;
      probs[kPadId] = 0.0;
      probs[kStartId] = 0.0;
      if (static_cast<int>(hyp.token_ids.size()) < config.min_length) probs[kStopId] = 0.0;
      double total = 0.0;
      for (double p : probs) total += p;
      for (double& p : probs) p /= total;
      for (int w = 0; w < static_cast<int>(probs.size()); ++w) {
        if (probs[static_cast<std::size_t>(w)] <= 0.0) continue;
        candidates.push_back(
            Candidate{b, w, hyp.log_prob + std::log(probs[static_cast<std::size_t>(w)])});
      }
    }

    std::sort(candidates.begin(), candidates.end(),
              [&](const Candidate& a, const Candidate& b) { return better(beams, a, b); });
    if (candidates.size() > static_cast<std::size_t>(config.beam_size)) {
      candidates.resize(static_cast<std::size_t>(config.beam_size));
    }

    std::vector<Hypothesis> next;
    next.reserve(candidates.size());
    for (const Candidate& c : candidates) {
      Hypothesis hyp = beams[c.beam_index];
      if (c.token < 0) {
        next.push_back(std::move(hyp));  // already finished
        continue;
      }
      hyp.log_prob = c.log_prob;
      const AuxPgn::StepValues& sv = step_values[c.beam_index];
      hyp.state = sv.next;
      hyp.p_gens.push_back(sv.p_gen);
      if (c.token == kStopId) {
        hyp.finished = true;  // STOP is only reachable at length >= min_length
      } else {
        hyp.token_ids.push_back(c.token);
      }
      next.push_back(std::move(hyp));
    }
    beams = std::move(next);
  }

  auto score = [&](const Hypothesis& h) {
    if (!config.length_normalize || h.token_ids.empty()) return h.log_prob;
    return h.log_prob / static_cast<double>(h.token_ids.size());
  };
  const Hypothesis* best = nullptr;
  for (const Hypothesis& h : beams) {
    if (!h.finished) continue;
    if (best == nullptr || score(h) > score(*best) ||
        (score(h) == score(*best) && h.token_ids < best->token_ids)) {
      best = &h;
    }
  }
  if (best == nullptr) {
    // nothing finished by max_length: fall back to the best running beam
    for (const Hypothesis& h : beams) {
      if (best == nullptr || score(h) > score(*best) ||
          (score(h) == score(*best) && h.token_ids < best->token_ids)) {
        best = &h;
      }
    }
  }
  return *best;
}

SummarizeResult summarize_chunk(const AuxPgn& model, const Vocabulary& vocab, const Chunk& chunk,
                                const KeyPhraseScorer* scorer, int chunk_index,
                                const DecodeConfig& config) {
  if (chunk.source_tokens.empty()) {
    throw std::runtime_error("summarize: no input after preprocessing");
  }
  const ExtendedEncoding encoding = encode_extended(chunk.source_tokens, vocab);
  std::vector<double> gamma_bar(chunk.source_tokens.size(), 0.0);
  if (config.keyphrase_at_decode && scorer != nullptr) {
    const std::vector<KeyPhrase> phrases = extract_keyphrases(chunk, *scorer, chunk_index);
    gamma_bar = reduce_keyphrase_vector(build_keyphrase_vector(phrases, vocab), encoding);
  }
  const Hypothesis best = beam_search(model, encoding, gamma_bar, config);
  SummarizeResult result;
  result.tokens = decode_ids(best.token_ids, vocab, encoding.oov_tokens);
  result.log_prob = best.log_prob;
  result.p_gens = best.p_gens;
  return result;
}

SummarizeResult summarize(const AuxPgn& model, const Vocabulary& vocab,
                          const std::vector<RawTweet>& tweets, const Ranker& ranker,
                          const KeyPhraseScorer* scorer, const TokenSet& stopwords,
                          const DecodeConfig& config, int budget) {
  std::vector<PreprocessedTweet> preprocessed;
  preprocessed.reserve(tweets.size());
  for (const RawTweet& tweet : tweets) {
    preprocessed.push_back(PreprocessedTweet{tweet.id, preprocess_tweet(tweet, stopwords)});
  }
  const Chunk selected = select_until_budget(rank_tweets(preprocessed, ranker), budget);
  if (selected.source_tokens.empty()) {
    throw std::runtime_error("summarize: no input after preprocessing");
  }
  return summarize_chunk(model, vocab, selected, scorer, 0, config);
}

}  // namespace auxsumm
