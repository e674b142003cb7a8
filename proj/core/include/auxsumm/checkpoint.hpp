#ifndef AUXSUMM_CHECKPOINT_HPP
#define AUXSUMM_CHECKPOINT_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "auxsumm/model.hpp"

namespace auxsumm {

struct CheckpointMeta {
  ModelConfig config;
  long long iteration = 0;
  std::uint64_t seed = 0;
};

/// Model checkpoint: header line `auxsumm-ckpt v1`, a JSON metadata line
/// (config, iteration, seed), then named tensors in sorted name order, each
/// as a `tensor <name> <ndim> <dims...>` line followed by the values as
/// little-endian 32-bit floats. Byte-stable for identical states.
void save_checkpoint(const std::string& path, const ModelParams& params,
                     const CheckpointMeta& meta);
std::pair<ModelParams, CheckpointMeta> load_checkpoint(const std::string& path);

/// Training resume state. Same container as the checkpoint but with header
/// `auxsumm-trainstate v1` and 64-bit payloads, carrying both the parameters
/// and the Adagrad accumulators (under `adagrad/`), so resuming reproduces
/// the uninterrupted trajectory bit for bit. The 32-bit checkpoint stays the
/// interchange format for decoding.
void save_train_state(const std::string& path, const ModelParams& params,
                      const ModelParams& accumulators, const CheckpointMeta& meta);
struct TrainState {
  ModelParams params;
  ModelParams accumulators;
  CheckpointMeta meta;
};
TrainState load_train_state(const std::string& path);

}  // namespace auxsumm

#endif  // AUXSUMM_CHECKPOINT_HPP
