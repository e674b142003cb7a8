#ifndef AUXSUMM_VOCAB_HPP
#define AUXSUMM_VOCAB_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "auxsumm/corpus.hpp"

namespace auxsumm {

inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;
inline constexpr int kStartId = 2;
inline constexpr int kStopId = 3;
inline constexpr int kReservedTokens = 4;
inline constexpr int kMaxVocabTokens = 50000;  // excluding the 4 reserved ids

/// Fixed token <-> id bijection with reserved ids PAD=0, UNK=1, START=2,
/// STOP=3. Immutable after build; safe for concurrent reads.
class Vocabulary {
 public:
  Vocabulary();

  int size() const { return static_cast<int>(tokens_.size()); }
  /// Id for token, or UNK when absent.
  int id_of(const std::string& token) const;
  bool contains(const std::string& token) const;
  const std::string& token_of(int id) const;

  static Vocabulary from_tokens(const std::vector<std::string>& tokens_in_id_order);
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  friend Vocabulary build_vocab(const std::vector<Chunk>&, int);
  void append(const std::string& token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

/// Most frequent tokens across source and reference streams, ties broken
/// lexicographically, reserved ids prepended.
Vocabulary build_vocab(const std::vector<Chunk>& chunks, int max_size = kMaxVocabTokens);

/// Vocabulary file: header line `auxsumm-vocab v1 <size>`, then one token per
/// line in id order (reserved tokens included).
void write_vocab(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocab(const std::string& path);

/// Per-example extended vocabulary for the copy mechanism: source OOV tokens
/// get ids >= vocab.size() in order of first appearance.
struct ExtendedEncoding {
  std::vector<int> base_ids;      // UNK for OOV
  std::vector<int> extended_ids;  // OOVs mapped past the vocabulary
  std::vector<std::string> oov_tokens;

  int extended_size(const Vocabulary& vocab) const {
    return vocab.size() + static_cast<int>(oov_tokens.size());
  }
};

ExtendedEncoding encode_extended(const std::vector<std::string>& tokens, const Vocabulary& vocab);

/// Inverse of encode_extended on the token level. Ids in
/// [vocab.size(), vocab.size() + oov_tokens.size()) map into oov_tokens;
/// anything beyond throws.
std::vector<std::string> decode_ids(const std::vector<int>& extended_ids, const Vocabulary& vocab,
                                    const std::vector<std::string>& oov_tokens);

}  // namespace auxsumm

#endif  // AUXSUMM_VOCAB_HPP
