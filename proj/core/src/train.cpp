#include "auxsumm/train.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace auxsumm {

void TrainConfig::validate() const {
  if (learning_rate <= 0.0 || initial_accumulator <= 0.0) {
    throw std::invalid_argument("TrainConfig: learning rate and accumulator must be > 0");
  }
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
  if (max_iterations <= 0) throw std::invalid_argument("TrainConfig: max_iterations must be > 0");
  if (checkpoint_every < 0) {
    throw std::invalid_argument("TrainConfig: checkpoint_every must be >= 0");
  }
}

void adagrad_update(Tensor& param, const Tensor& grad, Tensor& accumulator, double lr,
                    double eps) {
  if (!param.same_shape(grad) || !param.same_shape(accumulator)) {
    throw std::invalid_argument("adagrad_update: shape mismatch " + param.shape_str() + " vs " +
                                grad.shape_str() + " vs " + accumulator.shape_str());
  }
  for (std::size_t i = 0; i < param.numel(); ++i) {
    const double g = grad.data[i];
    accumulator.data[i] += g * g;
    param.data[i] -= lr * g / (std::sqrt(accumulator.data[i]) + eps);
  }
}

Adagrad::Adagrad(const ModelConfig& config, double initial_accumulator)
    : acc_(ModelParams::zeros(config)) {
  for (auto& [name, tensor] : acc_.named()) tensor->fill(initial_accumulator);
}

Adagrad::Adagrad(ModelParams accumulators) : acc_(std::move(accumulators)) {}

void Adagrad::update(ModelParams& params, const ModelParams& grads, double lr) {
  auto ps = params.named();
  auto gs = grads.named();
  auto as = acc_.named();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    adagrad_update(*ps[i].second, *gs[i].second, *as[i].second, lr);
  }
}

double clip_global_norm(ModelParams& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& [name, tensor] : std::as_const(grads).named()) {
    for (double x : tensor->data) sq += x * x;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (auto& [name, tensor] : grads.named()) {
      for (double& x : tensor->data) x *= s;
    }
  }
  return norm;
}

std::vector<TrainExample> prepare_examples(const std::vector<Chunk>& chunks,
                                           const Vocabulary& vocab,
                                           const KeyPhraseScorer& scorer) {
  std::vector<TrainExample> examples;
  examples.reserve(chunks.size());
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const Chunk& chunk = chunks[i];
    if (!chunk.reference_tokens) {
      throw std::invalid_argument("prepare_examples: chunk " + std::to_string(i) +
                                  " has no reference summary");
    }
    TrainExample ex;
    ex.source = encode_extended(chunk.source_tokens, vocab);
    const std::vector<KeyPhrase> phrases =
        extract_keyphrases(chunk, scorer, static_cast<int>(i));
    ex.gamma_bar = reduce_keyphrase_vector(build_keyphrase_vector(phrases, vocab), ex.source);
    ex.target = encode_target(*chunk.reference_tokens, vocab, ex.source);
    examples.push_back(std::move(ex));
  }
  return examples;
}

namespace {

std::string format_metrics_row(const MetricsRow& row) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n", row.iteration, row.loss,
                row.coverage_penalty);
  return buf;
}

// Batch order as a pure function of (seed, iteration): keeps resumed runs on
// the identical data stream.
class BatchCursor {
 public:
  BatchCursor(std::size_t n, std::uint64_t seed) : n_(n), seed_(seed) {}

  std::size_t example_at(long long global_pos) {
    const long long epoch = global_pos / static_cast<long long>(n_);
    if (epoch != cached_epoch_) {
      order_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) order_[i] = i;
      Rng rng(seed_ + static_cast<std::uint64_t>(epoch));
      deterministic_shuffle(order_, rng);
      cached_epoch_ = epoch;
    }
    return order_[static_cast<std::size_t>(global_pos % static_cast<long long>(n_))];
  }

 private:
  std::size_t n_;
  std::uint64_t seed_;
  long long cached_epoch_ = -1;
  std::vector<std::size_t> order_;
};

}  // namespace

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open metrics file for writing: " + path);
  out << "iteration,loss,coverage_penalty\n";
  for (const MetricsRow& row : rows) out << format_metrics_row(row);
  if (!out) throw std::runtime_error("write failed: " + path);
}

TrainOutput train(AuxPgn& model, Adagrad& optimizer, const std::vector<TrainExample>& examples,
                  const TrainConfig& config, long long start_iteration,
                  const TrainSinks& sinks) {
  config.validate();
  if (examples.empty()) throw std::invalid_argument("train: empty dataset");

  std::ofstream metrics_out;
  if (!sinks.metrics_path.empty()) {
    metrics_out.open(sinks.metrics_path, std::ios::binary);
    if (!metrics_out) {
      throw std::runtime_error("cannot open metrics file for writing: " + sinks.metrics_path);
    }
    metrics_out << "iteration,loss,coverage_penalty\n";
  }

  auto write_checkpoints = [&](long long iteration) {
    if (sinks.checkpoint_dir.empty()) return;
    namespace fs = std::filesystem;
    fs::create_directories(sinks.checkpoint_dir);
    char name[64];
    std::snprintf(name, sizeof(name), "ckpt-%08lld", iteration);
    CheckpointMeta meta{model.config(), iteration, config.seed};
    const std::string base = (fs::path(sinks.checkpoint_dir) / name).string();
    save_checkpoint(base + ".auxckpt", model.params(), meta);
    save_train_state(base + ".trainstate", model.params(), optimizer.accumulators(), meta);
  };

  TrainOutput out;
  BatchCursor cursor(examples.size(), config.seed);
  ModelParams grads = ModelParams::zeros(model.config());

  for (long long iteration = start_iteration + 1; iteration <= config.max_iterations;
       ++iteration) {
    for (auto& [name, tensor] : grads.named()) tensor->fill(0.0);

    std::vector<ForwardResult> results;
    std::vector<std::size_t> batch_indices;
    results.reserve(static_cast<std::size_t>(config.batch_size));
    double batch_loss = 0.0;
    double batch_cov = 0.0;
    for (int k = 0; k < config.batch_size; ++k) {
      const long long global_pos =
          (iteration - 1) * static_cast<long long>(config.batch_size) + k;
      const std::size_t idx = cursor.example_at(global_pos);
      batch_indices.push_back(idx);
      const TrainExample& ex = examples[idx];
      ForwardResult r = model.forward_example(ex.source, ex.gamma_bar, ex.target, &grads);
      batch_loss += r.loss;
      double cov = 0.0;
      for (const StepDiagnostics& s : r.steps) cov += s.coverage_penalty;
      batch_cov += cov / static_cast<double>(r.steps.size());
      results.push_back(std::move(r));
    }
    batch_loss /= static_cast<double>(config.batch_size);
    batch_cov /= static_cast<double>(config.batch_size);

    if (!std::isfinite(batch_loss)) {
      std::string what = "train: non-finite loss at iteration " + std::to_string(iteration) +
                         " (batch examples:";
      for (std::size_t idx : batch_indices) what += " " + std::to_string(idx);
      throw std::runtime_error(what + ")");
    }

    const double inv_batch = 1.0 / static_cast<double>(config.batch_size);
    for (auto& [name, tensor] : grads.named()) {
      for (double& x : tensor->data) x *= inv_batch;
    }
    clip_global_norm(grads, config.grad_clip_norm);
    optimizer.update(model.params(), grads, config.learning_rate);

    MetricsRow row{iteration, batch_loss, batch_cov};
    out.metrics.push_back(row);
    out.iteration = iteration;
    if (metrics_out.is_open()) {
      metrics_out << format_metrics_row(row);
      metrics_out.flush();
    }
    if (sinks.on_batch) sinks.on_batch(iteration, results);
    if (config.checkpoint_every > 0 && iteration % config.checkpoint_every == 0) {
      write_checkpoints(iteration);
    }
  }
  write_checkpoints(out.iteration == 0 ? start_iteration : out.iteration);
  return out;
}

}  // namespace auxsumm
