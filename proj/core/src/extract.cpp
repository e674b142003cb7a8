#include "auxsumm/extract.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace auxsumm {

std::vector<double> TfIdfRanker::score(const std::vector<PreprocessedTweet>& tweets) const {
  std::map<std::string, int> df;
  for (const PreprocessedTweet& tweet : tweets) {
    std::set<std::string> seen(tweet.tokens.begin(), tweet.tokens.end());
    for (const std::string& t : seen) ++df[t];
  }
  const double n = static_cast<double>(tweets.size());
  std::vector<double> scores;
  scores.reserve(tweets.size());
  for (const PreprocessedTweet& tweet : tweets) {
    std::map<std::string, int> tf;
    for (const std::string& t : tweet.tokens) ++tf[t];
    double s = 0.0;
    for (const auto& [t, count] : tf) {
      const double idf =
          std::log((1.0 + n) / (1.0 + static_cast<double>(df[t]))) + 1.0;
      s += static_cast<double>(count) * idf;
    }
    scores.push_back(s);
  }
  return scores;
}

FileRanker::FileRanker(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ranking file: " + path);
  int index = 0;
  while (in >> index) order_.push_back(index);
}

std::vector<double> FileRanker::score(const std::vector<PreprocessedTweet>& tweets) const {
  // Rank position r (0-based) becomes score n - r, so the file order wins.
  std::vector<double> scores(tweets.size(), 0.0);
  const double n = static_cast<double>(order_.size());
  for (std::size_t r = 0; r < order_.size(); ++r) {
    const int idx = order_[r];
    if (idx < 0 || static_cast<std::size_t>(idx) >= tweets.size()) {
      throw std::runtime_error("ranking file: tweet index " + std::to_string(idx) +
                               " out of range for " + std::to_string(tweets.size()) + " tweets");
    }
    scores[static_cast<std::size_t>(idx)] = n - static_cast<double>(r);
  }
  return scores;
}

std::vector<RankedTweet> rank_tweets(const std::vector<PreprocessedTweet>& tweets,
                                     const Ranker& ranker) {
  std::vector<double> scores = ranker.score(tweets);
  if (scores.size() != tweets.size()) {
    throw std::runtime_error("ranker returned " + std::to_string(scores.size()) +
                             " scores for " + std::to_string(tweets.size()) + " tweets");
  }
  std::vector<RankedTweet> ranked;
  ranked.reserve(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    ranked.push_back(RankedTweet{tweets[i], scores[i], 0});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedTweet& a, const RankedTweet& b) { return a.score > b.score; });
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    ranked[i].rank = static_cast<int>(i) + 1;
  }
  return ranked;
}

Chunk select_until_budget(const std::vector<RankedTweet>& ranked, int budget) {
  if (budget <= 0) throw std::invalid_argument("select_until_budget: budget must be > 0");
  Chunk chunk;
  int used = 0;
  for (const RankedTweet& rt : ranked) {
    const int len = static_cast<int>(rt.tweet.tokens.size());
    if (used + len > budget) break;
    chunk.source_tokens.insert(chunk.source_tokens.end(), rt.tweet.tokens.begin(),
                               rt.tweet.tokens.end());
    chunk.origin_ids.push_back(rt.tweet.id);
    used += len;
  }
  return chunk;
}

}  // namespace auxsumm
