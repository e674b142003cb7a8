#include "auxsumm/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace auxsumm {

namespace {

std::string fold_case(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::map<std::vector<std::string>, int> ngram_counts(const std::vector<std::string>& tokens,
                                                     int n) {
  std::map<std::vector<std::string>, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::vector<std::string> gram;
    gram.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) gram.push_back(fold_case(tokens[i + static_cast<std::size_t>(k)]));
    ++counts[gram];
  }
  return counts;
}

}  // namespace

RougeScore make_rouge(double precision, double recall) {
  RougeScore s;
  s.precision = precision;
  s.recall = recall;
  s.f1 = (precision + recall > 0.0) ? 2.0 * precision * recall / (precision + recall) : 0.0;
  return s;
}

RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n) {
  if (n < 1) throw std::invalid_argument("rouge_n: n must be >= 1");
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  long long cand_total = 0, ref_total = 0, overlap = 0;
  for (const auto& [gram, count] : cand) cand_total += count;
  for (const auto& [gram, count] : ref) ref_total += count;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const double p = cand_total > 0 ? static_cast<double>(overlap) / cand_total : 0.0;
  const double r = ref_total > 0 ? static_cast<double>(overlap) / ref_total : 0.0;
  return make_rouge(p, r);
}

RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference) {
  const std::size_t m = candidate.size(), n = reference.size();
  if (m == 0 || n == 0) return make_rouge(0.0, 0.0);
  std::vector<std::string> cand(m), ref(n);
  for (std::size_t i = 0; i < m; ++i) cand[i] = fold_case(candidate[i]);
  for (std::size_t j = 0; j < n; ++j) ref[j] = fold_case(reference[j]);
  // standard O(m*n) LCS table with two rolling rows
  std::vector<long long> prev(n + 1, 0), cur(n + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (cand[i - 1] == ref[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  const double lcs = static_cast<double>(prev[n]);
  return make_rouge(lcs / static_cast<double>(m), lcs / static_cast<double>(n));
}

RougeReport evaluate_dataset(const std::vector<std::vector<std::string>>& candidates,
                             const std::vector<std::vector<std::string>>& references) {
  if (candidates.size() != references.size()) {
    throw std::invalid_argument("evaluate_dataset: " + std::to_string(candidates.size()) +
                                " candidates vs " + std::to_string(references.size()) +
                                " references");
  }
  RougeReport report;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    RougeReport::Row row;
    row.pair_id = std::to_string(i);
    row.r1 = rouge_n(candidates[i], references[i], 1);
    row.r2 = rouge_n(candidates[i], references[i], 2);
    row.rl = rouge_l(candidates[i], references[i]);
    report.rows.push_back(std::move(row));
  }
  auto mean = [&](auto pick) {
    RougeScore m;
    if (report.rows.empty()) return m;
    for (const auto& row : report.rows) {
      const RougeScore& s = pick(row);
      m.precision += s.precision;
      m.recall += s.recall;
      m.f1 += s.f1;
    }
    const double n = static_cast<double>(report.rows.size());
    m.precision /= n;
    m.recall /= n;
    m.f1 /= n;
    return m;
  };
  report.mean_r1 = mean([](const RougeReport::Row& r) -> const RougeScore& { return r.r1; });
  report.mean_r2 = mean([](const RougeReport::Row& r) -> const RougeScore& { return r.r2; });
  report.mean_rl = mean([](const RougeReport::Row& r) -> const RougeScore& { return r.rl; });
  return report;
}

std::string report_to_csv(const RougeReport& report) {
  std::string out = "pair_id,r1_p,r1_r,r1_f1,r2_p,r2_r,r2_f1,rl_p,rl_r,rl_f1\n";
  char buf[256];
  auto emit = [&](const std::string& id, const RougeScore& r1, const RougeScore& r2,
                  const RougeScore& rl) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  id.c_str(), r1.precision, r1.recall, r1.f1, r2.precision, r2.recall, r2.f1,
                  rl.precision, rl.recall, rl.f1);
    out += buf;
  };
  for (const auto& row : report.rows) emit(row.pair_id, row.r1, row.r2, row.rl);
  emit("mean", report.mean_r1, report.mean_r2, report.mean_rl);
  return out;
}

}  // namespace auxsumm
