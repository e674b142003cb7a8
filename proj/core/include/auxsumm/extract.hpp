#ifndef AUXSUMM_EXTRACT_HPP
#define AUXSUMM_EXTRACT_HPP

#include <memory>
#include <string>
#include <vector>

#include "auxsumm/corpus.hpp"

namespace auxsumm {

struct RankedTweet {
  PreprocessedTweet tweet;
  double score = 0.0;
  int rank = 0;  // 1-based
};

/// Plug-in interface for the tweet ranking stage. Returns one score per
/// tweet; higher ranks first.
class Ranker {
 public:
  virtual ~Ranker() = default;
  virtual std::vector<double> score(const std::vector<PreprocessedTweet>& tweets) const = 0;
};

/// Default ranker: each tweet is scored by the summed TF-IDF weight of its
/// content words (approximated as all tokens, since preprocessing already
/// strips stopwords). Document frequencies are taken over the input tweets.
class TfIdfRanker : public Ranker {
 public:
  std::vector<double> score(const std::vector<PreprocessedTweet>& tweets) const override;
};

/// Ranking read from a file with one tweet index per line, best first.
class FileRanker : public Ranker {
 public:
  explicit FileRanker(const std::string& path);
  std::vector<double> score(const std::vector<PreprocessedTweet>& tweets) const override;

 private:
  std::vector<int> order_;
};

/// Scores and sorts tweets, stable on ties so equal scores keep input order.
/// Ranks are assigned 1..n in output order.
std::vector<RankedTweet> rank_tweets(const std::vector<PreprocessedTweet>& tweets,
                                     const Ranker& ranker);

/// Greedily concatenates ranked tweets while the budget holds; stops at the
/// first tweet that would overflow it. The selection is always a prefix of
/// the ranked list.
Chunk select_until_budget(const std::vector<RankedTweet>& ranked, int budget = kSourceBudget);

}  // namespace auxsumm

#endif  // AUXSUMM_EXTRACT_HPP
