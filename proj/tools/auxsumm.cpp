// auxsumm command-line front end.
//
// Subcommands: preprocess, build-vocab, extract, train, summarize, evaluate.
// Flags mirror config keys one-to-one and may also be given through a flat
// key=value config file (--config); command-line values override file values.
// Exit codes: 0 success, 1 runtime failure, 2 usage/config error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "auxsumm/checkpoint.hpp"
#include "auxsumm/corpus.hpp"
#include "auxsumm/decode.hpp"
#include "auxsumm/eval.hpp"
#include "auxsumm/extract.hpp"
#include "auxsumm/keyphrase.hpp"
#include "auxsumm/model.hpp"
#include "auxsumm/train.hpp"
#include "auxsumm/vocab.hpp"

namespace {

using namespace auxsumm;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Every run prints its fully resolved configuration for reproducibility.
class ConfigEcho {
 public:
  template <typename T>
  void set(const std::string& key, const T& value) {
    std::ostringstream os;
    if constexpr (std::is_same_v<T, bool>) {
      os << (value ? "true" : "false");
    } else {
      os << value;
    }
    values_[key] = os.str();
  }

  void print(const std::string& subcommand) const {
    std::cout << "# auxsumm " << subcommand << " configuration\n";
    for (const auto& [key, value] : values_) {
      std::cout << "config " << key << " = " << value << '\n';
    }
  }

 private:
  std::map<std::string, std::string> values_;
};

TokenSet stopwords_from(const std::string& path) {
  return path.empty() ? default_stopwords() : load_stopwords(path);
}

std::vector<RawTweet> load_raw_tweets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<RawTweet> tweets;
  std::string line;
  std::size_t lineno = 0;
  bool jsonl = false;
  bool sniffed = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!sniffed) {
      jsonl = line[0] == '{';
      sniffed = true;
    }
    RawTweet tweet;
    if (jsonl) {
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                 ": malformed JSON record: " + e.what());
      }
      if (!record.contains("text") || !record["text"].is_string()) {
        throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                 ": missing or invalid field 'text'");
      }
      tweet.text = record["text"].get<std::string>();
      if (record.contains("id")) {
        tweet.id = record["id"].is_string() ? record["id"].get<std::string>()
                                            : record["id"].dump();
      } else {
        tweet.id = std::to_string(lineno);
      }
      if (record.contains("timestamp") && record["timestamp"].is_number_integer()) {
        tweet.timestamp = record["timestamp"].get<std::int64_t>();
      }
    } else {
      tweet.id = std::to_string(lineno);
      tweet.text = line;
    }
    tweets.push_back(std::move(tweet));
  }
  return tweets;
}

std::vector<std::string> load_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs {
  std::string input, output, stopwords, references;
  int budget = kSourceBudget;
  bool per_tweet = false;
};

int run_preprocess(const PreprocessArgs& args) {
  ConfigEcho echo;
  echo.set("input", args.input);
  echo.set("output", args.output);
  echo.set("stopwords", args.stopwords.empty() ? "<builtin>" : args.stopwords);
  echo.set("references", args.references.empty() ? "<none>" : args.references);
  echo.set("budget", args.budget);
  echo.set("per-tweet", args.per_tweet);
  echo.print("preprocess");

  const TokenSet stopwords = stopwords_from(args.stopwords);
  const std::vector<RawTweet> raw = load_raw_tweets(args.input);
  std::vector<PreprocessedTweet> tweets;
  tweets.reserve(raw.size());
  for (const RawTweet& tweet : raw) {
    tweets.push_back(PreprocessedTweet{tweet.id, preprocess_tweet(tweet, stopwords)});
  }

  std::vector<Chunk> chunks;
  if (args.per_tweet) {
    for (const PreprocessedTweet& tweet : tweets) {
      Chunk chunk;
      chunk.source_tokens = tweet.tokens;
      chunk.origin_ids = {tweet.id};
      chunks.push_back(std::move(chunk));
    }
  } else {
    chunks = chunk_corpus(tweets, args.budget);
  }

  if (!args.references.empty()) {
    const std::vector<std::string> refs = load_lines(args.references);
    if (refs.size() < chunks.size()) {
      throw std::runtime_error("references file has " + std::to_string(refs.size()) +
                               " lines for " + std::to_string(chunks.size()) + " chunks");
    }
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      std::vector<std::string> tokens = preprocess_text(refs[i], stopwords);
      if (static_cast<int>(tokens.size()) > kReferenceBudget) {
        throw std::runtime_error("reference " + std::to_string(i) + " exceeds " +
                                 std::to_string(kReferenceBudget) + " tokens");
      }
      chunks[i].reference_tokens = std::move(tokens);
    }
  }

  write_dataset(chunks, args.output);
  std::cout << "wrote " << chunks.size() << " chunks to " << args.output << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// build-vocab

struct BuildVocabArgs {
  std::string dataset, output;
  int max_size = kMaxVocabTokens;
};

int run_build_vocab(const BuildVocabArgs& args) {
  ConfigEcho echo;
  echo.set("dataset", args.dataset);
  echo.set("output", args.output);
  echo.set("max-size", args.max_size);
  echo.print("build-vocab");

  const std::vector<Chunk> chunks = load_dataset(args.dataset);
  const Vocabulary vocab = build_vocab(chunks, args.max_size);
  write_vocab(vocab, args.output);
  std::cout << "wrote vocabulary of " << vocab.size() << " tokens (incl. reserved) to "
            << args.output << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// extract

struct ExtractArgs {
  std::string dataset, output, ranking_file;
  int budget = kSourceBudget;
};

int run_extract(const ExtractArgs& args) {
  ConfigEcho echo;
  echo.set("dataset", args.dataset);
  echo.set("output", args.output);
  echo.set("ranking-file", args.ranking_file.empty() ? "<tf-idf>" : args.ranking_file);
  echo.set("budget", args.budget);
  echo.print("extract");

  const std::vector<Chunk> records = load_dataset(args.dataset);
  std::vector<PreprocessedTweet> tweets;
  tweets.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    PreprocessedTweet tweet;
    tweet.id = records[i].origin_ids.empty() ? std::to_string(i) : records[i].origin_ids.front();
    tweet.tokens = records[i].source_tokens;
    tweets.push_back(std::move(tweet));
  }

  std::unique_ptr<Ranker> ranker;
  if (args.ranking_file.empty()) {
    ranker = std::make_unique<TfIdfRanker>();
  } else {
    ranker = std::make_unique<FileRanker>(args.ranking_file);
  }
  const Chunk selected = select_until_budget(rank_tweets(tweets, *ranker), args.budget);
  write_dataset({selected}, args.output);
  std::cout << "selected " << selected.origin_ids.size() << " tweets ("
            << selected.source_tokens.size() << " tokens) into " << args.output << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string dataset, vocab, checkpoint_dir, metrics, keyphrases, resume;
  ModelConfig model;
  TrainConfig train;
  std::uint64_t init_seed = 0;
};

int run_train(const TrainArgs& args) {
  ConfigEcho echo;
  echo.set("dataset", args.dataset);
  echo.set("vocab", args.vocab);
  echo.set("checkpoint-dir", args.checkpoint_dir);
  echo.set("metrics", args.metrics);
  echo.set("keyphrases", args.keyphrases.empty() ? "<tf-idf>" : args.keyphrases);
  echo.set("resume", args.resume.empty() ? "<none>" : args.resume);
  echo.set("hidden-dim", args.model.hidden_dim);
  echo.set("embed-dim", args.model.embed_dim);
  echo.set("w1", args.model.w1);
  echo.set("w2", args.model.w2);
  echo.set("lambda-cov", args.model.lambda_cov);
  echo.set("max-source-len", args.model.max_source_len);
  echo.set("max-target-len", args.model.max_target_len);
  echo.set("pgn-fallback", args.model.pgn_fallback_on_zero_keyphrases);
  echo.set("learning-rate", args.train.learning_rate);
  echo.set("initial-accumulator", args.train.initial_accumulator);
  echo.set("batch-size", args.train.batch_size);
  echo.set("iterations", args.train.max_iterations);
  echo.set("grad-clip-norm", args.train.grad_clip_norm);
  echo.set("seed", args.train.seed);
  echo.set("init-seed", args.init_seed);
  echo.set("checkpoint-every", args.train.checkpoint_every);
  echo.print("train");

  const Vocabulary vocab = load_vocab(args.vocab);
  const std::vector<Chunk> chunks = load_dataset(args.dataset);

  ModelConfig model_config = args.model;
  model_config.vocab_size = vocab.size();

  std::unique_ptr<KeyPhraseScorer> scorer;
  if (args.keyphrases.empty()) {
    scorer = std::make_unique<TfIdfKeyPhraseScorer>(chunks);
  } else {
    scorer = std::make_unique<FileKeyPhraseScorer>(args.keyphrases);
  }
  const std::vector<TrainExample> examples = prepare_examples(chunks, vocab, *scorer);

  long long start_iteration = 0;
  std::unique_ptr<AuxPgn> model;
  std::unique_ptr<Adagrad> optimizer;
  if (!args.resume.empty()) {
    TrainState state = load_train_state(args.resume);
    model_config = state.meta.config;
    model = std::make_unique<AuxPgn>(model_config, std::move(state.params));
    optimizer = std::make_unique<Adagrad>(std::move(state.accumulators));
    start_iteration = state.meta.iteration;
    std::cout << "resumed at iteration " << start_iteration << " from " << args.resume << '\n';
  } else {
    model = std::make_unique<AuxPgn>(model_config, args.init_seed);
    optimizer = std::make_unique<Adagrad>(model_config, args.train.initial_accumulator);
  }

  TrainSinks sinks;
  sinks.checkpoint_dir = args.checkpoint_dir;
  sinks.metrics_path = args.metrics;
  const TrainOutput out =
      train(*model, *optimizer, examples, args.train, start_iteration, sinks);
  if (!out.metrics.empty()) {
    std::cout << "trained to iteration " << out.iteration
              << ", final loss " << out.metrics.back().loss << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// summarize

struct SummarizeArgs {
  std::string checkpoint, input, output, vocab, sidecar, keyphrases, ranking_file, stopwords;
  DecodeConfig decode;
  bool raw = false;
  int budget = kSourceBudget;
};

int run_summarize(const SummarizeArgs& args) {
  ConfigEcho echo;
  echo.set("checkpoint", args.checkpoint);
  echo.set("input", args.input);
  echo.set("output", args.output);
  echo.set("vocab", args.vocab);
  echo.set("sidecar", args.sidecar.empty() ? "<none>" : args.sidecar);
  echo.set("keyphrases", args.keyphrases.empty() ? "<tf-idf>" : args.keyphrases);
  echo.set("ranking-file", args.ranking_file.empty() ? "<tf-idf>" : args.ranking_file);
  echo.set("stopwords", args.stopwords.empty() ? "<builtin>" : args.stopwords);
  echo.set("beam-size", args.decode.beam_size);
  echo.set("min-length", args.decode.min_length);
  echo.set("max-length", args.decode.max_length);
  echo.set("keyphrase-at-decode", args.decode.keyphrase_at_decode);
  echo.set("length-normalize", args.decode.length_normalize);
  echo.set("raw", args.raw);
  echo.set("budget", args.budget);
  echo.print("summarize");

  const Vocabulary vocab = load_vocab(args.vocab);
  auto [params, meta] = load_checkpoint(args.checkpoint);
  ModelConfig config = meta.config;
  config.keyphrase_at_decode = args.decode.keyphrase_at_decode;
  if (config.vocab_size != vocab.size()) {
    throw std::runtime_error("vocabulary size " + std::to_string(vocab.size()) +
                             " does not match checkpoint vocab_size " +
                             std::to_string(config.vocab_size));
  }
  const AuxPgn model(config, std::move(params));

  std::unique_ptr<KeyPhraseScorer> scorer;
  if (args.decode.keyphrase_at_decode) {
    if (args.keyphrases.empty()) {
      scorer = std::make_unique<TfIdfKeyPhraseScorer>();
    } else {
      scorer = std::make_unique<FileKeyPhraseScorer>(args.keyphrases);
    }
  }

  std::vector<SummarizeResult> results;
  if (args.raw) {
    const std::vector<RawTweet> tweets = load_raw_tweets(args.input);
    std::unique_ptr<Ranker> ranker;
    if (args.ranking_file.empty()) {
      ranker = std::make_unique<TfIdfRanker>();
    } else {
      ranker = std::make_unique<FileRanker>(args.ranking_file);
    }
    results.push_back(summarize(model, vocab, tweets, *ranker, scorer.get(),
                                stopwords_from(args.stopwords), args.decode, args.budget));
  } else {
    const std::vector<Chunk> chunks = load_dataset(args.input);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      results.push_back(summarize_chunk(model, vocab, chunks[i], scorer.get(),
                                        static_cast<int>(i), args.decode));
    }
  }

  std::ofstream out(args.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file for writing: " + args.output);
  for (const SummarizeResult& r : results) out << join_tokens(r.tokens) << '\n';
  out.close();

  if (!args.sidecar.empty()) {
    nlohmann::json side = nlohmann::json::array();
    for (const SummarizeResult& r : results) {
      nlohmann::json entry;
      entry["log_prob"] = r.log_prob;
      entry["p_gen"] = r.p_gens;
      side.push_back(std::move(entry));
    }
    std::ofstream sc(args.sidecar, std::ios::binary);
    if (!sc) throw std::runtime_error("cannot open sidecar file for writing: " + args.sidecar);
    sc << side.dump(2) << '\n';
  }
  std::cout << "wrote " << results.size() << " summaries to " << args.output << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string candidates, references, report;
};

int run_evaluate(const EvaluateArgs& args) {
  ConfigEcho echo;
  echo.set("candidates", args.candidates);
  echo.set("references", args.references);
  echo.set("report", args.report);
  echo.print("evaluate");

  const std::vector<std::string> cand_lines = load_lines(args.candidates);
  const std::vector<std::string> ref_lines = load_lines(args.references);
  std::vector<std::vector<std::string>> candidates, references;
  for (const std::string& line : cand_lines) candidates.push_back(split_tokens(line));
  for (const std::string& line : ref_lines) references.push_back(split_tokens(line));

  const RougeReport report = evaluate_dataset(candidates, references);
  std::ofstream out(args.report, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file for writing: " + args.report);
  out << report_to_csv(report);
  out.close();

  std::printf("rouge-1 f1 %.4f  rouge-2 f1 %.4f  rouge-l f1 %.4f  (%zu pairs)\n",
              report.mean_r1.f1, report.mean_r2.f1, report.mean_rl.f1, report.rows.size());
  std::cout << "wrote report to " << args.report << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AuxSumm: two-phase abstractive tweet summarization"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file; flags override file values");
  app.failure_message(CLI::FailureMessage::help);

  PreprocessArgs pre;
  auto* cmd_pre = app.add_subcommand("preprocess", "Raw tweets -> dataset file");
  cmd_pre->add_option("--input", pre.input, "Raw tweet file (JSONL with id/text, or plain text)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_pre->add_option("--output", pre.output, "Dataset file to write")->required();
  cmd_pre->add_option("--stopwords", pre.stopwords, "Stopword file (default: builtin list)")
      ->check(CLI::ExistingFile);
  cmd_pre->add_option("--references", pre.references,
                      "Reference summaries, one line per chunk")
      ->check(CLI::ExistingFile);
  cmd_pre->add_option("--budget", pre.budget, "Chunk token budget")
      ->check(CLI::Range(1, kSourceBudget));
  cmd_pre->add_flag("--per-tweet", pre.per_tweet, "One dataset record per tweet (no chunking)");

  BuildVocabArgs bv;
  auto* cmd_bv = app.add_subcommand("build-vocab", "Dataset -> vocabulary file");
  cmd_bv->add_option("--dataset", bv.dataset, "Dataset file")->required()->check(CLI::ExistingFile);
  cmd_bv->add_option("--output", bv.output, "Vocabulary file to write")->required();
  cmd_bv->add_option("--max-size", bv.max_size, "Vocabulary size cap (excl. reserved)")
      ->check(CLI::Range(1, kMaxVocabTokens));

  ExtractArgs ex;
  auto* cmd_ex = app.add_subcommand("extract", "Phase-I budgeted tweet selection");
  cmd_ex->add_option("--dataset", ex.dataset, "Per-tweet dataset file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_ex->add_option("--output", ex.output, "Selected-chunk dataset file to write")->required();
  cmd_ex->add_option("--ranking-file", ex.ranking_file,
                     "Precomputed ranking (one tweet index per line)")
      ->check(CLI::ExistingFile);
  cmd_ex->add_option("--budget", ex.budget, "Selection token budget")
      ->check(CLI::Range(1, kSourceBudget));

  TrainArgs tr;
  auto* cmd_tr = app.add_subcommand("train", "Train the summarizer");
  cmd_tr->add_option("--dataset", tr.dataset, "Dataset file with references")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_tr->add_option("--vocab", tr.vocab, "Vocabulary file")->required()->check(CLI::ExistingFile);
  cmd_tr->add_option("--checkpoint-dir", tr.checkpoint_dir, "Checkpoint directory")->required();
  cmd_tr->add_option("--metrics", tr.metrics, "Metrics CSV path (default: none)");
  cmd_tr->add_option("--keyphrases", tr.keyphrases, "Precomputed key-phrase file")
      ->check(CLI::ExistingFile);
  cmd_tr->add_option("--resume", tr.resume, "Train-state file to resume from")
      ->check(CLI::ExistingFile);
  cmd_tr->add_option("--hidden-dim", tr.model.hidden_dim, "LSTM hidden dimension");
  cmd_tr->add_option("--embed-dim", tr.model.embed_dim, "Word embedding dimension");
  cmd_tr->add_option("--w1", tr.model.w1, "Energy-softmax attention weight");
  cmd_tr->add_option("--w2", tr.model.w2, "Key-phrase-softmax attention weight");
  cmd_tr->add_option("--lambda-cov", tr.model.lambda_cov, "Coverage loss weight");
  cmd_tr->add_option("--max-source-len", tr.model.max_source_len, "Max source tokens");
  cmd_tr->add_option("--max-target-len", tr.model.max_target_len, "Max target tokens");
  cmd_tr->add_flag("--pgn-fallback", tr.model.pgn_fallback_on_zero_keyphrases,
                   "Use the plain energy softmax when the key-phrase vector is all zero");
  cmd_tr->add_option("--learning-rate", tr.train.learning_rate, "Adagrad learning rate");
  cmd_tr->add_option("--initial-accumulator", tr.train.initial_accumulator,
                     "Adagrad initial accumulator");
  cmd_tr->add_option("--batch-size", tr.train.batch_size, "Minibatch size");
  cmd_tr->add_option("--iterations", tr.train.max_iterations, "Total training iterations");
  cmd_tr->add_option("--grad-clip-norm", tr.train.grad_clip_norm,
                     "Global gradient-norm clip (<= 0 disables)");
  cmd_tr->add_option("--seed", tr.train.seed, "Shuffling seed");
  cmd_tr->add_option("--init-seed", tr.init_seed, "Parameter initialization seed");
  cmd_tr->add_option("--checkpoint-every", tr.train.checkpoint_every,
                     "Checkpoint cadence in iterations (0 = only at exit)");

  SummarizeArgs su;
  auto* cmd_su = app.add_subcommand("summarize", "Generate summaries from a checkpoint");
  cmd_su->add_option("--checkpoint", su.checkpoint, "Model checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_su->add_option("--input", su.input, "Dataset file (or raw tweets with --raw)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_su->add_option("--output", su.output, "Summary text file to write")->required();
  cmd_su->add_option("--vocab", su.vocab, "Vocabulary file")->required()->check(CLI::ExistingFile);
  cmd_su->add_option("--sidecar", su.sidecar, "JSON sidecar with log_prob and p_gen per step");
  cmd_su->add_option("--keyphrases", su.keyphrases, "Precomputed key-phrase file")
      ->check(CLI::ExistingFile);
  cmd_su->add_option("--ranking-file", su.ranking_file, "Precomputed ranking for --raw input")
      ->check(CLI::ExistingFile);
  cmd_su->add_option("--stopwords", su.stopwords, "Stopword file for --raw input")
      ->check(CLI::ExistingFile);
  cmd_su->add_option("--beam-size", su.decode.beam_size, "Beam size");
  cmd_su->add_option("--min-length", su.decode.min_length, "Minimum summary tokens");
  cmd_su->add_option("--max-length", su.decode.max_length, "Maximum summary tokens");
  cmd_su->add_flag("--keyphrase-at-decode", su.decode.keyphrase_at_decode,
                   "Keep the key-phrase attention mix at decode time");
  cmd_su->add_flag("--length-normalize", su.decode.length_normalize,
                   "Rank finished beams by per-token log probability");
  cmd_su->add_flag("--raw", su.raw, "Treat --input as raw tweets and run the full pipeline");
  cmd_su->add_option("--budget", su.budget, "Phase-I token budget for --raw")
      ->check(CLI::Range(1, kSourceBudget));

  EvaluateArgs ev;
  auto* cmd_ev = app.add_subcommand("evaluate", "ROUGE-1/2/L report");
  cmd_ev->add_option("--candidates", ev.candidates, "Candidate summaries, one per line")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_ev->add_option("--references", ev.references, "Reference summaries, one per line")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_ev->add_option("--report", ev.report, "Report CSV to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    // Config-value validation failures are usage errors.
    try {
      if (cmd_tr->parsed()) {
        ModelConfig probe = tr.model;
        probe.vocab_size = kReservedTokens;  // real size known only after vocab load
        probe.validate();
        tr.train.validate();
      }
      if (cmd_su->parsed()) su.decode.validate();
    } catch (const std::invalid_argument& e) {
      std::cerr << "auxsumm: invalid configuration: " << e.what() << '\n';
      return kExitUsage;
    }

    if (cmd_pre->parsed()) return run_preprocess(pre);
    if (cmd_bv->parsed()) return run_build_vocab(bv);
    if (cmd_ex->parsed()) return run_extract(ex);
    if (cmd_tr->parsed()) return run_train(tr);
    if (cmd_su->parsed()) return run_summarize(su);
    if (cmd_ev->parsed()) return run_evaluate(ev);
  } catch (const std::exception& e) {
    std::cerr << "auxsumm: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
