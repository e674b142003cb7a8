#ifndef AUXSUMM_TRAIN_HPP
#define AUXSUMM_TRAIN_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "auxsumm/checkpoint.hpp"
#include "auxsumm/keyphrase.hpp"
#include "auxsumm/model.hpp"

namespace auxsumm {

struct TrainConfig {
  double learning_rate = 0.15;
  double initial_accumulator = 0.1;
  int batch_size = 16;
  long long max_iterations = 120000;
  double grad_clip_norm = 2.0;  // <= 0 disables clipping
  std::uint64_t seed = 0;
  long long checkpoint_every = 0;  // 0 = checkpoint only at exit

  void validate() const;
};

/// Elementwise Adagrad step: acc += grad^2; param -= lr * grad / (sqrt(acc) + eps).
void adagrad_update(Tensor& param, const Tensor& grad, Tensor& accumulator, double lr,
                    double eps = 1e-10);

class Adagrad {
 public:
  Adagrad(const ModelConfig& config, double initial_accumulator);
  explicit Adagrad(ModelParams accumulators);

  void update(ModelParams& params, const ModelParams& grads, double lr);
  ModelParams& accumulators() { return acc_; }
  const ModelParams& accumulators() const { return acc_; }

 private:
  ModelParams acc_;
};

/// Scales all gradients so the global L2 norm is at most max_norm. Returns
/// the pre-clip norm. max_norm <= 0 is a no-op.
double clip_global_norm(ModelParams& grads, double max_norm);

/// One preprocessed training example: source encoding, reduced key-phrase
/// vector, and the teacher-forcing target.
struct TrainExample {
  ExtendedEncoding source;
  std::vector<double> gamma_bar;
  TargetEncoding target;
};

/// Builds training examples from chunks (every chunk must carry a
/// reference). Key-phrase vectors come from the scorer.
std::vector<TrainExample> prepare_examples(const std::vector<Chunk>& chunks,
                                           const Vocabulary& vocab,
                                           const KeyPhraseScorer& scorer);

struct MetricsRow {
  long long iteration = 0;
  double loss = 0.0;
  double coverage_penalty = 0.0;
};

/// Metrics log CSV: `iteration,loss,coverage_penalty` with header. Values are
/// printed round-trip exact, so identical runs produce identical bytes.
void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path);

struct TrainSinks {
  std::string checkpoint_dir;   // empty = no checkpoints
  std::string metrics_path;     // empty = in-memory metrics only
  /// Called once per iteration with the batch's forward diagnostics.
  std::function<void(long long iteration, const std::vector<ForwardResult>&)> on_batch;
};

struct TrainOutput {
  std::vector<MetricsRow> metrics;
  long long iteration = 0;
};

/// Minibatch training loop. Batch order is a pure function of (seed,
/// iteration): epoch e is shuffled with seed + e and batches are consecutive
/// slices, so resuming from `start_iteration` continues the same stream.
/// Throws on a non-finite batch loss, naming the batch.
TrainOutput train(AuxPgn& model, Adagrad& optimizer, const std::vector<TrainExample>& examples,
                  const TrainConfig& config, long long start_iteration = 0,
                  const TrainSinks& sinks = {});

}  // namespace auxsumm

#endif  // AUXSUMM_TRAIN_HPP
