#include "auxsumm/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace auxsumm {

namespace {

using nlohmann::json;

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  b[0] = static_cast<char>(v & 0xFF);
  b[1] = static_cast<char>((v >> 8) & 0xFF);
  b[2] = static_cast<char>((v >> 16) & 0xFF);
  b[3] = static_cast<char>((v >> 24) & 0xFF);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v & 0xFFFFFFFFu));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
  const std::uint64_t lo = get_u32(in);
  const std::uint64_t hi = get_u32(in);
  return lo | (hi << 32);
}

json config_to_json(const ModelConfig& c) {
  json j;
  j["hidden_dim"] = c.hidden_dim;
  j["embed_dim"] = c.embed_dim;
  j["vocab_size"] = c.vocab_size;
  j["w1"] = c.w1;
  j["w2"] = c.w2;
  j["lambda_cov"] = c.lambda_cov;
  j["max_source_len"] = c.max_source_len;
  j["max_target_len"] = c.max_target_len;
  j["keyphrase_at_decode"] = c.keyphrase_at_decode;
  j["pgn_fallback_on_zero_keyphrases"] = c.pgn_fallback_on_zero_keyphrases;
  return j;
}

ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  c.hidden_dim = j.at("hidden_dim").get<int>();
  c.embed_dim = j.at("embed_dim").get<int>();
  c.vocab_size = j.at("vocab_size").get<int>();
  c.w1 = j.at("w1").get<double>();
  c.w2 = j.at("w2").get<double>();
  c.lambda_cov = j.at("lambda_cov").get<double>();
  c.max_source_len = j.at("max_source_len").get<int>();
  c.max_target_len = j.at("max_target_len").get<int>();
  c.keyphrase_at_decode = j.at("keyphrase_at_decode").get<bool>();
  c.pgn_fallback_on_zero_keyphrases = j.at("pgn_fallback_on_zero_keyphrases").get<bool>();
  return c;
}

void write_container(const std::string& path, const char* header,
                     std::vector<std::pair<std::string, const Tensor*>> tensors,
                     const CheckpointMeta& meta, bool wide) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint file for writing: " + path);
  out << header << '\n';
  json j;
  j["config"] = config_to_json(meta.config);
  j["iteration"] = meta.iteration;
  j["seed"] = meta.seed;
  out << j.dump() << '\n';

  std::sort(tensors.begin(), tensors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [name, tensor] : tensors) {
    out << "tensor " << name << ' ' << tensor->ndim();
    for (int d : tensor->shape) out << ' ' << d;
    out << '\n';
    for (double x : tensor->data) {
      if (wide) {
        put_u64(out, std::bit_cast<std::uint64_t>(x));
      } else {
        put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
      }
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void read_container(const std::string& path, const char* header,
                    std::vector<std::pair<std::string, Tensor*>> tensors, CheckpointMeta* meta,
                    bool wide) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error(path + ": bad checkpoint header");
  }
  if (!std::getline(in, line)) throw std::runtime_error(path + ": missing metadata");
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": malformed metadata: " + e.what());
  }
  meta->config = config_from_json(j.at("config"));
  meta->iteration = j.at("iteration").get<long long>();
  meta->seed = j.at("seed").get<std::uint64_t>();

  std::sort(tensors.begin(), tensors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [name, tensor] : tensors) {
    if (!std::getline(in, line)) throw std::runtime_error(path + ": truncated before " + name);
    std::istringstream hs(line);
    std::string tag, got_name;
    int ndim = -1;
    hs >> tag >> got_name >> ndim;
    if (tag != "tensor" || got_name != name) {
      throw std::runtime_error(path + ": expected tensor '" + name + "', found '" + line + "'");
    }
    std::vector<int> shape(static_cast<std::size_t>(ndim));
    for (int& d : shape) hs >> d;
    if (!hs) throw std::runtime_error(path + ": bad shape for tensor " + name);
    *tensor = Tensor(shape);
    for (double& x : tensor->data) {
      if (wide) {
        x = std::bit_cast<double>(get_u64(in));
      } else {
        x = static_cast<double>(std::bit_cast<float>(get_u32(in)));
      }
    }
    char nl = 0;
    in.get(nl);
    if (!in || nl != '\n') throw std::runtime_error(path + ": truncated tensor " + name);
  }
}

}  // namespace

void save_checkpoint(const std::string& path, const ModelParams& params,
                     const CheckpointMeta& meta) {
  write_container(path, "auxsumm-ckpt v1", params.named(), meta, /*wide=*/false);
}

std::pair<ModelParams, CheckpointMeta> load_checkpoint(const std::string& path) {
  // First pass only reads the metadata to size the parameter block.
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open checkpoint file: " + path);
  std::string line;
  std::getline(probe, line);
  if (line != "auxsumm-ckpt v1") throw std::runtime_error(path + ": bad checkpoint header");
  std::getline(probe, line);
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": malformed metadata: " + e.what());
  }
  CheckpointMeta meta;
  meta.config = config_from_json(j.at("config"));
  probe.close();

  ModelParams params = ModelParams::zeros(meta.config);
  read_container(path, "auxsumm-ckpt v1", params.named(), &meta, /*wide=*/false);
  return {std::move(params), meta};
}

void save_train_state(const std::string& path, const ModelParams& params,
                      const ModelParams& accumulators, const CheckpointMeta& meta) {
  std::vector<std::pair<std::string, const Tensor*>> tensors = params.named();
  for (const auto& [name, tensor] : accumulators.named()) {
    tensors.emplace_back("adagrad/" + name, tensor);
  }
  write_container(path, "auxsumm-trainstate v1", std::move(tensors), meta, /*wide=*/true);
}

TrainState load_train_state(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open train-state file: " + path);
  std::string line;
  std::getline(probe, line);
  if (line != "auxsumm-trainstate v1") throw std::runtime_error(path + ": bad train-state header");
  std::getline(probe, line);
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": malformed metadata: " + e.what());
  }
  TrainState state;
  state.meta.config = config_from_json(j.at("config"));
  probe.close();

  state.params = ModelParams::zeros(state.meta.config);
  state.accumulators = ModelParams::zeros(state.meta.config);
  std::vector<std::pair<std::string, Tensor*>> tensors = state.params.named();
  for (auto& [name, tensor] : state.accumulators.named()) {
    tensors.emplace_back("adagrad/" + name, tensor);
  }
  read_container(path, "auxsumm-trainstate v1", std::move(tensors), &state.meta, /*wide=*/true);
  return state;
}

}  // namespace auxsumm
