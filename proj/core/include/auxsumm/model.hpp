#ifndef AUXSUMM_MODEL_HPP
#define AUXSUMM_MODEL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "auxsumm/graph.hpp"
#include "auxsumm/tensor.hpp"
#include "auxsumm/vocab.hpp"

namespace auxsumm {

/// Attention behaves differently between training and decoding: training
/// mixes the energy softmax with the key-phrase softmax, decoding keeps the
/// energy softmax only (unless keyphrase_at_decode re-enables the mix).
enum class AttentionMode { kTrain, kDecode };

struct ModelConfig {
  int hidden_dim = 256;
  int embed_dim = 128;
  int vocab_size = 0;  // including the 4 reserved ids; at most 50004
  double w1 = 0.5;
  double w2 = 0.5;
  double lambda_cov = 1.0;
  int max_source_len = 400;
  int max_target_len = 200;
  bool keyphrase_at_decode = false;
  /// When set, an all-zero key-phrase vector falls back to the plain energy
  /// softmax instead of mixing in a uniform distribution.
  bool pgn_fallback_on_zero_keyphrases = false;

  int attention_dim() const { return 2 * hidden_dim; }
  void validate() const;
};

/// Every learnable tensor of the network. Layouts are chosen so the graph
/// ops apply them without transposes:
///   attn_wh is [2h, att] (applied as H * attn_wh, H being [N, 2h]);
///   all other matrices are [out, in].
struct ModelParams {
  Tensor embedding;                // [V, e], shared by encoder and decoder
  Tensor enc_fwd_w, enc_fwd_b;     // [4h, e+h], [4h]
  Tensor enc_bwd_w, enc_bwd_b;
  Tensor dec_w, dec_b;             // [4h, e+h], [4h]
  Tensor reduce_h_w, reduce_h_b;   // [h, 2h], [h]
  Tensor reduce_c_w, reduce_c_b;
  Tensor attn_wh;                  // [2h, att]
  Tensor attn_ws;                  // [att, h]
  Tensor attn_wc;                  // [att]
  Tensor attn_b;                   // [att]
  Tensor attn_v;                   // [att]
  Tensor out_w, out_b;             // [V, 3h], [V]
  Tensor pgen_wh;                  // [2h]
  Tensor pgen_ws;                  // [h]
  Tensor pgen_wx;                  // [e]
  Tensor pgen_b;                   // [1]

  /// Seeded uniform [-0.1, 0.1] initialization, drawn in named() order.
  static ModelParams init(const ModelConfig& config, std::uint64_t seed);
  static ModelParams zeros(const ModelConfig& config);

  /// Canonical (name, tensor) listing; names are unique and stable.
  std::vector<std::pair<std::string, Tensor*>> named();
  std::vector<std::pair<std::string, const Tensor*>> named() const;
};

/// Parameter leaves of one graph. Binding happens once per graph so each
/// tensor appears as a single tape node.
struct ParamVars {
  ParamVars(Graph& g, ModelParams& params, ModelParams* grads);

  Var embedding;
  Var enc_fwd_w, enc_fwd_b, enc_bwd_w, enc_bwd_b;
  Var dec_w, dec_b;
  Var reduce_h_w, reduce_h_b, reduce_c_w, reduce_c_b;
  Var attn_wh, attn_ws, attn_wc, attn_b, attn_v;
  Var out_w, out_b;
  Var pgen_wh, pgen_ws, pgen_wx, pgen_b;
};

/// Ids of a reference sequence against a source encoding. base_ids feed the
/// decoder under teacher forcing (any OOV becomes UNK); extended_ids are the
/// loss targets (source OOVs resolve to their copy ids). A STOP id is
/// appended to both.
struct TargetEncoding {
  std::vector<int> base_ids;
  std::vector<int> extended_ids;
};
TargetEncoding encode_target(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                             const ExtendedEncoding& source);

struct StepDiagnostics {
  std::vector<double> attention;
  double p_gen = 0.0;
  double nll = 0.0;
  double coverage_penalty = 0.0;
};

struct ForwardResult {
  double loss = 0.0;  // mean over decoder steps
  std::vector<StepDiagnostics> steps;
};

/// AuxPGN: BiLSTM encoder, LSTM decoder, coverage-aware key-phrase attention,
/// and a pointer-generator output layer over the per-example extended
/// vocabulary.
///
/// A model instance with frozen parameters is safe for concurrent decoding;
/// training mutates parameters and owns them exclusively.
class AuxPgn {
 public:
  AuxPgn(ModelConfig config, std::uint64_t seed);
  AuxPgn(ModelConfig config, ModelParams params);

  const ModelConfig& config() const { return config_; }
  ModelParams& params() { return params_; }
  const ModelParams& params() const { return params_; }

  // -- graph-building API ----------------------------------------------------

  struct DecoderStateVars {
    Var h;
    Var c;
  };
  struct EncodedVars {
    Var states;  // [N, 2h]
    DecoderStateVars init;
  };

  /// BiLSTM over the source ids; per-position states are the concatenated
  /// forward/backward hidden states. The decoder initial state is a learned
  /// affine reduction of the final forward/backward states.
  EncodedVars encode(Graph& g, const ParamVars& pv, const std::vector<int>& base_ids) const;

  DecoderStateVars lstm_cell(Graph& g, Var w, Var b, Var x, DecoderStateVars prev) const;

  /// Attention energies with coverage; in train mode the result mixes the
  /// energy softmax with the key-phrase softmax by (w1, w2).
  Var attention_step(Graph& g, const ParamVars& pv, Var states, Var s, Var coverage,
                     const std::vector<double>& gamma_bar, AttentionMode mode) const;

  /// Attention-weighted sum of encoder states.
  Var context(Graph& g, Var attention, Var states) const;

  /// Output distribution over the fixed vocabulary.
  Var vocab_dist(Graph& g, const ParamVars& pv, Var s, Var context) const;

  /// Generation probability in (0, 1).
  Var gen_prob(Graph& g, const ParamVars& pv, Var context, Var s, Var x) const;

  /// Final distribution over the extended vocabulary: generation mass on
  /// vocabulary words plus copy mass aggregated over source positions.
  Var final_dist(Graph& g, Var p_gen, Var p_vocab, Var attention,
                 const ExtendedEncoding& encoding) const;

  /// Negative log-likelihood of the target id plus the coverage penalty
  /// lambda * sum_k min(a_k, c_k). The log argument is floored at 1e-12.
  Var step_loss(Graph& g, Var p_final, int target_extended_id, Var attention, Var coverage,
                double lambda_cov) const;

  /// Teacher-forced forward pass over one example; loss is the mean of the
  /// per-step losses. When `grads` is given, runs backward and accumulates
  /// parameter gradients into it.
  ForwardResult forward_example(const ExtendedEncoding& source,
                                const std::vector<double>& gamma_bar,
                                const TargetEncoding& target, ModelParams* grads) const;

  // -- eager API (no gradients), used by beam search and step-level tests ----

  struct StepState {
    Tensor h, c;                   // decoder LSTM state
    std::vector<double> coverage;  // running attention sum, length N
  };
  struct EncodedValues {
    Tensor states;  // [N, 2h]
    StepState init;
  };
  struct StepValues {
    std::vector<double> attention;
    std::vector<double> context;
    std::vector<double> p_vocab;
    double p_gen = 0.0;
    std::vector<double> p_final;
    StepState next;
  };

  EncodedValues encode_values(const std::vector<int>& base_ids) const;
  StepValues decode_step(const Tensor& states, const StepState& state, int input_base_id,
                         const ExtendedEncoding& encoding, const std::vector<double>& gamma_bar,
                         AttentionMode mode) const;

 private:
  ModelConfig config_;
  ModelParams params_;
};

std::vector<double> softmax_values(const std::vector<double>& v);

}  // namespace auxsumm

#endif  // AUXSUMM_MODEL_HPP
