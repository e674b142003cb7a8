#include "auxsumm/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auxsumm {

void ModelConfig::validate() const {
  if (hidden_dim <= 0 || embed_dim <= 0) {
    throw std::invalid_argument("ModelConfig: dims must be > 0");
  }
  if (vocab_size < kReservedTokens || vocab_size > kMaxVocabTokens + kReservedTokens) {
    throw std::invalid_argument("ModelConfig: vocab_size " + std::to_string(vocab_size) +
                                " outside [" + std::to_string(kReservedTokens) + ", " +
                                std::to_string(kMaxVocabTokens + kReservedTokens) + "]");
  }
  const bool convex = w1 > 0.0 && w1 < 1.0 && w2 > 0.0 && w2 < 1.0 &&
                      std::abs(w1 + w2 - 1.0) < 1e-9;
  const bool fallback = w1 == 1.0 && w2 == 0.0;
  if (!convex && !fallback) {
    throw std::invalid_argument("ModelConfig: (w1, w2) must be convex weights or (1, 0)");
  }
  if (lambda_cov < 0.0) throw std::invalid_argument("ModelConfig: lambda_cov must be >= 0");
  if (max_source_len <= 0 || max_target_len <= 0) {
    throw std::invalid_argument("ModelConfig: length limits must be > 0");
  }
}

ModelParams ModelParams::zeros(const ModelConfig& config) {
  const int h = config.hidden_dim;
  const int e = config.embed_dim;
  const int v = config.vocab_size;
  const int att = config.attention_dim();
  ModelParams p;
  p.embedding = Tensor({v, e});
  p.enc_fwd_w = Tensor({4 * h, e + h});
  p.enc_fwd_b = Tensor({4 * h});
  p.enc_bwd_w = Tensor({4 * h, e + h});
  p.enc_bwd_b = Tensor({4 * h});
  p.dec_w = Tensor({4 * h, e + h});
  p.dec_b = Tensor({4 * h});
  p.reduce_h_w = Tensor({h, 2 * h});
  p.reduce_h_b = Tensor({h});
  p.reduce_c_w = Tensor({h, 2 * h});
  p.reduce_c_b = Tensor({h});
  p.attn_wh = Tensor({2 * h, att});
  p.attn_ws = Tensor({att, h});
  p.attn_wc = Tensor({att});
  p.attn_b = Tensor({att});
  p.attn_v = Tensor({att});
  p.out_w = Tensor({v, 3 * h});
  p.out_b = Tensor({v});
  p.pgen_wh = Tensor({2 * h});
  p.pgen_ws = Tensor({h});
  p.pgen_wx = Tensor({e});
  p.pgen_b = Tensor({1});
  return p;
}

ModelParams ModelParams::init(const ModelConfig& config, std::uint64_t seed) {
  ModelParams p = zeros(config);
  Rng rng(seed);
  for (auto& [name, tensor] : p.named()) {
    for (double& x : tensor->data) x = rng.uniform(-0.1, 0.1);
  }
  return p;
}

std::vector<std::pair<std::string, Tensor*>> ModelParams::named() {
  return {
      {"attention/b", &attn_b},
      {"attention/v", &attn_v},
      {"attention/w_c", &attn_wc},
      {"attention/w_h", &attn_wh},
      {"attention/w_s", &attn_ws},
      {"decoder/b", &dec_b},
      {"decoder/w", &dec_w},
      {"embedding", &embedding},
      {"encoder_bwd/b", &enc_bwd_b},
      {"encoder_bwd/w", &enc_bwd_w},
      {"encoder_fwd/b", &enc_fwd_b},
      {"encoder_fwd/w", &enc_fwd_w},
      {"output/b", &out_b},
      {"output/w", &out_w},
      {"pgen/b", &pgen_b},
      {"pgen/w_h", &pgen_wh},
      {"pgen/w_s", &pgen_ws},
      {"pgen/w_x", &pgen_wx},
      {"reduce_c/b", &reduce_c_b},
      {"reduce_c/w", &reduce_c_w},
      {"reduce_h/b", &reduce_h_b},
      {"reduce_h/w", &reduce_h_w},
  };
}

std::vector<std::pair<std::string, const Tensor*>> ModelParams::named() const {
  auto mutable_list = const_cast<ModelParams*>(this)->named();
  std::vector<std::pair<std::string, const Tensor*>> out;
  out.reserve(mutable_list.size());
  for (auto& [name, tensor] : mutable_list) out.emplace_back(name, tensor);
  return out;
}

namespace {
Var bind(Graph& g, ModelParams& p, ModelParams* grads, Tensor ModelParams::* member) {
  return g.param(&(p.*member), grads ? &(grads->*member) : nullptr);
}
}  // namespace

ParamVars::ParamVars(Graph& g, ModelParams& p, ModelParams* grads) {
  embedding = bind(g, p, grads, &ModelParams::embedding);
  enc_fwd_w = bind(g, p, grads, &ModelParams::enc_fwd_w);
  enc_fwd_b = bind(g, p, grads, &ModelParams::enc_fwd_b);
  enc_bwd_w = bind(g, p, grads, &ModelParams::enc_bwd_w);
  enc_bwd_b = bind(g, p, grads, &ModelParams::enc_bwd_b);
  dec_w = bind(g, p, grads, &ModelParams::dec_w);
  dec_b = bind(g, p, grads, &ModelParams::dec_b);
  reduce_h_w = bind(g, p, grads, &ModelParams::reduce_h_w);
  reduce_h_b = bind(g, p, grads, &ModelParams::reduce_h_b);
  reduce_c_w = bind(g, p, grads, &ModelParams::reduce_c_w);
  reduce_c_b = bind(g, p, grads, &ModelParams::reduce_c_b);
  attn_wh = bind(g, p, grads, &ModelParams::attn_wh);
  attn_ws = bind(g, p, grads, &ModelParams::attn_ws);
  attn_wc = bind(g, p, grads, &ModelParams::attn_wc);
  attn_b = bind(g, p, grads, &ModelParams::attn_b);
  attn_v = bind(g, p, grads, &ModelParams::attn_v);
  out_w = bind(g, p, grads, &ModelParams::out_w);
  out_b = bind(g, p, grads, &ModelParams::out_b);
  pgen_wh = bind(g, p, grads, &ModelParams::pgen_wh);
  pgen_ws = bind(g, p, grads, &ModelParams::pgen_ws);
  pgen_wx = bind(g, p, grads, &ModelParams::pgen_wx);
  pgen_b = bind(g, p, grads, &ModelParams::pgen_b);
}

TargetEncoding encode_target(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                             const ExtendedEncoding& source) {
  TargetEncoding t;
  t.base_ids.reserve(tokens.size() + 1);
  t.extended_ids.reserve(tokens.size() + 1);
  std::unordered_map<std::string, int> copy_ids;
  for (std::size_t i = 0; i < source.oov_tokens.size(); ++i) {
    copy_ids.emplace(source.oov_tokens[i], vocab.size() + static_cast<int>(i));
  }
  for (const std::string& token : tokens) {
    if (vocab.contains(token)) {
      const int id = vocab.id_of(token);
      t.base_ids.push_back(id);
      t.extended_ids.push_back(id);
    } else {
      t.base_ids.push_back(kUnkId);
      auto it = copy_ids.find(token);
      t.extended_ids.push_back(it == copy_ids.end() ? kUnkId : it->second);
    }
  }
  t.base_ids.push_back(kStopId);
  t.extended_ids.push_back(kStopId);
  return t;
}

std::vector<double> softmax_values(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double mx = v[0];
  for (double x : v) mx = std::max(mx, x);
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - mx);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

AuxPgn::AuxPgn(ModelConfig config, std::uint64_t seed) : config_(std::move(config)) {
  config_.validate();
  params_ = ModelParams::init(config_, seed);
}

AuxPgn::AuxPgn(ModelConfig config, ModelParams params)
    : config_(std::move(config)), params_(std::move(params)) {
  config_.validate();
}

AuxPgn::DecoderStateVars AuxPgn::lstm_cell(Graph& g, Var w, Var b, Var x,
                                           DecoderStateVars prev) const {
  const int h = config_.hidden_dim;
  Var z = g.affine(w, g.concat(x, prev.h), b);
  Var i_gate = g.sigmoid(g.slice(z, 0, h));
  Var f_gate = g.sigmoid(g.slice(z, h, h));
  Var g_cand = g.tanh(g.slice(z, 2 * h, h));
  Var o_gate = g.sigmoid(g.slice(z, 3 * h, h));
  Var c = g.add(g.mul(f_gate, prev.c), g.mul(i_gate, g_cand));
  Var hh = g.mul(o_gate, g.tanh(c));
  return {hh, c};
}

AuxPgn::EncodedVars AuxPgn::encode(Graph& g, const ParamVars& pv,
                                   const std::vector<int>& base_ids) const {
  const int n = static_cast<int>(base_ids.size());
  if (n == 0) throw std::invalid_argument("encode: empty input");
  if (n > config_.max_source_len) {
    throw std::invalid_argument("encode: source length " + std::to_string(n) + " exceeds " +
                                std::to_string(config_.max_source_len));
  }
  const int h = config_.hidden_dim;
  Var embedded = g.embed_lookup(pv.embedding, base_ids);  // [N, e]

  auto run_direction = [&](Var w, Var b, bool reverse) {
    std::vector<DecoderStateVars> states;
    states.reserve(static_cast<std::size_t>(n));
    DecoderStateVars s{g.input(Tensor::zeros({h})), g.input(Tensor::zeros({h}))};
    for (int step = 0; step < n; ++step) {
      const int pos = reverse ? n - 1 - step : step;
      Var row = g.slice_row(embedded, pos);
      s = lstm_cell(g, w, b, row, s);
      states.push_back(s);
    }
    if (reverse) std::reverse(states.begin(), states.end());
    return states;
  };

  std::vector<DecoderStateVars> fwd = run_direction(pv.enc_fwd_w, pv.enc_fwd_b, false);
  std::vector<DecoderStateVars> bwd = run_direction(pv.enc_bwd_w, pv.enc_bwd_b, true);

  std::vector<Var> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows.push_back(g.concat(fwd[static_cast<std::size_t>(i)].h, bwd[static_cast<std::size_t>(i)].h));
  }
  Var states = g.stack_rows(rows);

  // final forward state is at the last position, final backward at the first
  Var final_h = g.concat(fwd.back().h, bwd.front().h);
  Var final_c = g.concat(fwd.back().c, bwd.front().c);
  DecoderStateVars init{g.affine(pv.reduce_h_w, final_h, pv.reduce_h_b),
                        g.affine(pv.reduce_c_w, final_c, pv.reduce_c_b)};
  return {states, init};
}

Var AuxPgn::attention_step(Graph& g, const ParamVars& pv, Var states, Var s, Var coverage,
                           const std::vector<double>& gamma_bar, AttentionMode mode) const {
  const Tensor& hval = g.value(states);
  const int n = hval.rows();
  if (static_cast<int>(g.value(coverage).numel()) != n ||
      static_cast<int>(gamma_bar.size()) != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(
        "attention_step: length mismatch between states, coverage and key-phrase vector");
  }
  // e_k = v . tanh(W_h h_k + W_s s_t + w_c c_k + b_att)
  Var pre = g.add_rowvec(g.matmul(states, pv.attn_wh),
                         g.add(g.matmul(pv.attn_ws, s), pv.attn_b));
  pre = g.add(pre, g.outer(coverage, pv.attn_wc));
  Var energies = g.matmul(g.tanh(pre), pv.attn_v);  // [N]
  Var energy_softmax = g.softmax(energies);

  const bool use_keyphrases =
      mode == AttentionMode::kTrain || (mode == AttentionMode::kDecode && config_.keyphrase_at_decode);
  if (!use_keyphrases || config_.w2 == 0.0) return energy_softmax;
  if (config_.pgn_fallback_on_zero_keyphrases &&
      std::all_of(gamma_bar.begin(), gamma_bar.end(), [](double x) { return x == 0.0; })) {
    return energy_softmax;
  }
  Var keyphrase_softmax = g.input(Tensor::from_vec(softmax_values(gamma_bar)));
  return g.scalar_mix(config_.w1, energy_softmax, config_.w2, keyphrase_softmax);
}

Var AuxPgn::context(Graph& g, Var attention, Var states) const {
  return g.weighted_sum(attention, states);
}

Var AuxPgn::vocab_dist(Graph& g, const ParamVars& pv, Var s, Var context) const {
  return g.softmax(g.affine(pv.out_w, g.concat(s, context), pv.out_b));
}

Var AuxPgn::gen_prob(Graph& g, const ParamVars& pv, Var context, Var s, Var x) const {
  Var dot_h = g.sum(g.mul(pv.pgen_wh, context));
  Var dot_s = g.sum(g.mul(pv.pgen_ws, s));
  Var dot_x = g.sum(g.mul(pv.pgen_wx, x));
  return g.sigmoid(g.add(g.add(g.add(dot_h, dot_s), dot_x), pv.pgen_b));
}

Var AuxPgn::final_dist(Graph& g, Var p_gen, Var p_vocab, Var attention,
                       const ExtendedEncoding& encoding) const {
  const int v = static_cast<int>(g.value(p_vocab).numel());
  const int extended = v + static_cast<int>(encoding.oov_tokens.size());
  if (g.value(attention).numel() != encoding.extended_ids.size()) {
    throw std::invalid_argument("final_dist: attention length does not match the encoding");
  }
  Var gen_part = g.smul(p_gen, p_vocab);
  if (extended > v) {
    gen_part = g.concat(gen_part, g.input(Tensor::zeros({extended - v})));
  }
  Var copy_weight = g.scalar_mix(-1.0, p_gen, 1.0, g.input(Tensor::scalar(1.0)));
  Var copy_part =
      g.scatter_add(g.smul(copy_weight, attention), encoding.extended_ids, extended);
  return g.add(gen_part, copy_part);
}

Var AuxPgn::step_loss(Graph& g, Var p_final, int target_extended_id, Var attention, Var coverage,
                      double lambda_cov) const {
  const int extended = static_cast<int>(g.value(p_final).numel());
  if (target_extended_id < 0 || target_extended_id >= extended) {
    throw std::invalid_argument("step_loss: target id " + std::to_string(target_extended_id) +
                                " outside extended vocabulary of size " +
                                std::to_string(extended));
  }
  Var nll = g.scale(-1.0, g.log(g.pick(p_final, target_extended_id), 1e-12));
  if (lambda_cov == 0.0) return nll;
  Var penalty = g.sum(g.elementwise_min(attention, coverage));
  return g.add(nll, g.scale(lambda_cov, penalty));
}

ForwardResult AuxPgn::forward_example(const ExtendedEncoding& source,
                                      const std::vector<double>& gamma_bar,
                                      const TargetEncoding& target, ModelParams* grads) const {
  if (target.base_ids.empty() || target.base_ids.back() != kStopId) {
    throw std::invalid_argument("forward_example: target must be non-empty and end with STOP");
  }
  if (target.base_ids.size() != target.extended_ids.size()) {
    throw std::invalid_argument("forward_example: inconsistent target encoding");
  }
  const int t_len = static_cast<int>(target.base_ids.size());
  if (t_len > config_.max_target_len + 1) {
    throw std::invalid_argument("forward_example: target length " + std::to_string(t_len - 1) +
                                " exceeds " + std::to_string(config_.max_target_len));
  }

  Graph g;
  // const_cast: the graph only reads parameter values unless grads is given
  ParamVars pv(g, const_cast<ModelParams&>(params_), grads);
  EncodedVars enc = encode(g, pv, source.base_ids);

  const int n = static_cast<int>(source.base_ids.size());
  Var coverage = g.input(Tensor::zeros({n}));
  DecoderStateVars state = enc.init;

  ForwardResult result;
  Var total;
  for (int t = 0; t < t_len; ++t) {
    const int input_id = t == 0 ? kStartId : target.base_ids[static_cast<std::size_t>(t - 1)];
    Var x = g.slice_row(g.embed_lookup(pv.embedding, {input_id}), 0);
    state = lstm_cell(g, pv.dec_w, pv.dec_b, x, state);
    Var attention =
        attention_step(g, pv, enc.states, state.h, coverage, gamma_bar, AttentionMode::kTrain);
    Var ctx = context(g, attention, enc.states);
    Var p_vocab = vocab_dist(g, pv, state.h, ctx);
    Var p_gen = gen_prob(g, pv, ctx, state.h, x);
    Var p_final = final_dist(g, p_gen, p_vocab, attention, source);
    const int target_id = target.extended_ids[static_cast<std::size_t>(t)];
    Var loss_t = step_loss(g, p_final, target_id, attention, coverage, config_.lambda_cov);

    StepDiagnostics diag;
    diag.attention = g.value(attention).data;
    diag.p_gen = g.value(p_gen).data[0];
    const double p_target = std::max(g.value(p_final).at(target_id), 1e-12);
    diag.nll = -std::log(p_target);
    diag.coverage_penalty = g.value(loss_t).data[0] - diag.nll;
    result.steps.push_back(std::move(diag));

    total = t == 0 ? loss_t : g.add(total, loss_t);
    coverage = g.add(coverage, attention);  // c^{t+1} = c^t + a^t
  }
  Var mean_loss = g.scale(1.0 / static_cast<double>(t_len), total);
  result.loss = g.value(mean_loss).data[0];
  if (grads != nullptr) g.backward(mean_loss);
  return result;
}

AuxPgn::EncodedValues AuxPgn::encode_values(const std::vector<int>& base_ids) const {
  Graph g;
  ParamVars pv(g, const_cast<ModelParams&>(params_), nullptr);
  EncodedVars enc = encode(g, pv, base_ids);
  EncodedValues out;
  out.states = g.value(enc.states);
  out.init.h = g.value(enc.init.h);
  out.init.c = g.value(enc.init.c);
  out.init.coverage.assign(base_ids.size(), 0.0);
  return out;
}

AuxPgn::StepValues AuxPgn::decode_step(const Tensor& states, const StepState& state,
                                       int input_base_id, const ExtendedEncoding& encoding,
                                       const std::vector<double>& gamma_bar,
                                       AttentionMode mode) const {
  Graph g;
  ParamVars pv(g, const_cast<ModelParams&>(params_), nullptr);
  Var states_var = g.input(states);
  Var coverage = g.input(Tensor::from_vec(state.coverage));
  Var x = g.slice_row(g.embed_lookup(pv.embedding, {input_base_id}), 0);
  DecoderStateVars prev{g.input(state.h), g.input(state.c)};
  DecoderStateVars next = lstm_cell(g, pv.dec_w, pv.dec_b, x, prev);
  Var attention = attention_step(g, pv, states_var, next.h, coverage, gamma_bar, mode);
  Var ctx = context(g, attention, states_var);
  Var p_vocab = vocab_dist(g, pv, next.h, ctx);
  Var p_gen = gen_prob(g, pv, ctx, next.h, x);
  Var p_final = final_dist(g, p_gen, p_vocab, attention, encoding);

  StepValues out;
  out.attention = g.value(attention).data;
  out.context = g.value(ctx).data;
  out.p_vocab = g.value(p_vocab).data;
  out.p_gen = g.value(p_gen).data[0];
  out.p_final = g.value(p_final).data;
  out.next.h = g.value(next.h);
  out.next.c = g.value(next.c);
  out.next.coverage = state.coverage;
  for (std::size_t i = 0; i < out.attention.size(); ++i) {
    out.next.coverage[i] += out.attention[i];
  }
  return out;
}

}  // namespace auxsumm
