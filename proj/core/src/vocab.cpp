#include "auxsumm/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace auxsumm {

namespace {
const char* kReserved[kReservedTokens] = {"[PAD]", "[UNK]", "[START]", "[STOP]"};
}

Vocabulary::Vocabulary() {
  for (const char* t : kReserved) append(t);
}

void Vocabulary::append(const std::string& token) {
  ids_.emplace(token, static_cast<int>(tokens_.size()));
  tokens_.push_back(token);
}

int Vocabulary::id_of(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

bool Vocabulary::contains(const std::string& token) const { return ids_.count(token) != 0; }

const std::string& Vocabulary::token_of(int id) const {
  if (id < 0 || id >= size()) {
    throw std::out_of_range("Vocabulary::token_of: id " + std::to_string(id) +
                            " out of range [0, " + std::to_string(size()) + ")");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

Vocabulary Vocabulary::from_tokens(const std::vector<std::string>& tokens_in_id_order) {
  Vocabulary v;
  for (std::size_t i = 0; i < tokens_in_id_order.size(); ++i) {
    const std::string& t = tokens_in_id_order[i];
    if (i < kReservedTokens) {
      if (t != kReserved[i]) {
        throw std::runtime_error("vocabulary: reserved token mismatch at id " +
                                 std::to_string(i));
      }
      continue;
    }
    if (v.contains(t)) throw std::runtime_error("vocabulary: duplicate token '" + t + "'");
    v.append(t);
  }
  return v;
}

Vocabulary build_vocab(const std::vector<Chunk>& chunks, int max_size) {
  if (max_size <= 0) throw std::invalid_argument("build_vocab: max_size must be > 0");
  // std::map keeps tokens sorted, which settles frequency ties
  // lexicographically after the stable sort below.
  std::map<std::string, long long> counts;
  for (const Chunk& chunk : chunks) {
    for (const std::string& t : chunk.source_tokens) ++counts[t];
    if (chunk.reference_tokens) {
      for (const std::string& t : *chunk.reference_tokens) ++counts[t];
    }
  }
  std::vector<std::pair<std::string, long long>> by_freq(counts.begin(), counts.end());
  std::stable_sort(by_freq.begin(), by_freq.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (const auto& [token, count] : by_freq) {
    if (v.size() - kReservedTokens >= max_size) break;
    v.append(token);
  }
  return v;
}

void write_vocab(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open vocabulary file for writing: " + path);
  out << "auxsumm-vocab v1 " << vocab.size() << '\n';
  for (const std::string& t : vocab.tokens()) out << t << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Vocabulary load_vocab(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error(path + ": empty vocabulary file");
  std::istringstream hs(header);
  std::string magic, version;
  int size = -1;
  hs >> magic >> version >> size;
  if (magic != "auxsumm-vocab" || version != "v1" || size < kReservedTokens) {
    throw std::runtime_error(path + ": bad vocabulary header '" + header + "'");
  }
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) tokens.push_back(line);
  if (static_cast<int>(tokens.size()) != size) {
    throw std::runtime_error(path + ": header says " + std::to_string(size) + " tokens, found " +
                             std::to_string(tokens.size()));
  }
  return Vocabulary::from_tokens(tokens);
}

ExtendedEncoding encode_extended(const std::vector<std::string>& tokens,
                                 const Vocabulary& vocab) {
  ExtendedEncoding enc;
  enc.base_ids.reserve(tokens.size());
  enc.extended_ids.reserve(tokens.size());
  std::unordered_map<std::string, int> oov_ids;
  for (const std::string& t : tokens) {
    if (vocab.contains(t)) {
      const int id = vocab.id_of(t);
      enc.base_ids.push_back(id);
      enc.extended_ids.push_back(id);
    } else {
      enc.base_ids.push_back(kUnkId);
      auto [it, inserted] =
          oov_ids.emplace(t, vocab.size() + static_cast<int>(enc.oov_tokens.size()));
      if (inserted) enc.oov_tokens.push_back(t);
      enc.extended_ids.push_back(it->second);
    }
  }
  return enc;
}

std::vector<std::string> decode_ids(const std::vector<int>& extended_ids, const Vocabulary& vocab,
                                    const std::vector<std::string>& oov_tokens) {
  std::vector<std::string> out;
  out.reserve(extended_ids.size());
  const int limit = vocab.size() + static_cast<int>(oov_tokens.size());
  for (int id : extended_ids) {
    if (id < 0 || id >= limit) {
      throw std::out_of_range("decode_ids: id " + std::to_string(id) + " out of range [0, " +
                              std::to_string(limit) + ")");
    }
    if (id < vocab.size()) {
      out.push_back(vocab.token_of(id));
    } else {
      out.push_back(oov_tokens[static_cast<std::size_t>(id - vocab.size())]);
    }
  }
  return out;
}

}  // namespace auxsumm
