#ifndef AUXSUMM_EVAL_HPP
#define AUXSUMM_EVAL_HPP

#include <string>
#include <vector>

namespace auxsumm {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

RougeScore make_rouge(double precision, double recall);

/// Clipped n-gram overlap. Comparison is case-folded; no stemming or
/// stopword removal is applied (inputs are expected preprocessed).
RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n);

/// Longest-common-subsequence variant.
RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference);

struct RougeReport {
  struct Row {
    std::string pair_id;
    RougeScore r1, r2, rl;
  };
  std::vector<Row> rows;
  RougeScore mean_r1, mean_r2, mean_rl;
};

/// Per-pair ROUGE-1/2/L plus arithmetic means over the pairs.
RougeReport evaluate_dataset(const std::vector<std::vector<std::string>>& candidates,
                             const std::vector<std::vector<std::string>>& references);

/// Report CSV: pair_id,r1_p,r1_r,r1_f1,r2_p,r2_r,r2_f1,rl_p,rl_r,rl_f1 with a
/// final `mean` row.
std::string report_to_csv(const RougeReport& report);

}  // namespace auxsumm

#endif  // AUXSUMM_EVAL_HPP
