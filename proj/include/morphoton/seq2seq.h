// Copyright 2026 The Morphoton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// LSTM encoder-decoder with global attention, plus the phoneme/feature
// self-attention layer used by the fusion method. Everything runs in double
// precision with hand-written backpropagation.
//
// Encoder: bidirectional LSTM over source embeddings. For fusion samples
// each form position is first replaced by fuse_phoneme(q, K=V) where q is
// the phoneme embedding and K=V are its feature embeddings.
// Decoder: LSTM with input feeding; attention scores s^T W_a h_i; the
// attentional state is tanh(W_c [context; s; pointer]) where `pointer` (the
// encoder state under a hard read head) is only present for edit-action
// models.

#ifndef MORPHOTON_SEQ2SEQ_H_
#define MORPHOTON_SEQ2SEQ_H_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "morphoton/encoding.h"

namespace morphoton {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct Hyperparameters {
  int embed_dim = 64;    // d_e
  int hidden_dim = 128;  // per encoder direction and for the decoder
  int fusion_dim = 64;   // d
  int fusion_heads = 1;  // n
  double learning_rate = 1e-3;
  int batch_size = 32;
  int max_epochs = 100;
  int patience = 10;
  double max_decode_len_factor = 2.0;
  double clip_norm = 5.0;
  uint64_t seed = 1;

  /// Throws Error on non-positive dims or d % n != 0.
  void validate() const;
  bool operator==(const Hyperparameters&) const = default;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Multi-head dot-product attention of one query over the rows of `kv`
/// (m x d), which serve as both keys and values. Returns the d-dim fused
/// vector; `weights` (heads x m) receives the attention rows if given.
Vec fuse_phoneme(const Vec& q, const Mat& kv, int heads, Mat* weights = nullptr);

/// Mean negative log likelihood of `gold[t]` under row t of `probs`.
double sequence_nll(const Mat& probs, std::span<const int> gold);

struct ModelConfig {
  Hyperparameters hp;
  int src_vocab = 0;
  int trg_vocab = 0;
  int feat_vocab = 0;  // > 0 enables the fusion layer
  bool pointer = false;
  int copy_token = -1;  // with `pointer`: target ids that advance the read head
  int delete_token = -1;

  bool fusion() const { return feat_vocab > 0; }
  /// Encoder input width: d for fusion, d_e otherwise.
  int input_dim() const { return fusion() ? hp.fusion_dim : hp.embed_dim; }
  /// True when fusion needs a d x d_e projection.
  bool projected() const { return fusion() && hp.fusion_dim != hp.embed_dim; }
};

/// All trainable tensors. Biases are single-column matrices.
struct Params {
  Mat src_embedding, feat_embedding, fusion_projection, trg_embedding;
  Mat enc_fwd_W, enc_fwd_b, enc_bwd_W, enc_bwd_b;
  Mat bridge_W, bridge_b;
  Mat dec_W, dec_b;
  Mat attn_W;
  Mat comb_W, comb_b;
  Mat out_W, out_b;

  template <typename F>
  void for_each(F&& f) {
    f("src_embedding", src_embedding);
    f("feat_embedding", feat_embedding);
    f("fusion_projection", fusion_projection);
    f("trg_embedding", trg_embedding);
    f("enc_fwd_W", enc_fwd_W);
    f("enc_fwd_b", enc_fwd_b);
    f("enc_bwd_W", enc_bwd_W);
    f("enc_bwd_b", enc_bwd_b);
    f("bridge_W", bridge_W);
    f("bridge_b", bridge_b);
    f("dec_W", dec_W);
    f("dec_b", dec_b);
    f("attn_W", attn_W);
    f("comb_W", comb_W);
    f("comb_b", comb_b);
    f("out_W", out_W);
    f("out_b", out_b);
  }
  template <typename F>
  void for_each(F&& f) const {
    const_cast<Params*>(this)->for_each(
        [&](const char* name, Mat& m) { f(name, static_cast<const Mat&>(m)); });
  }

  /// Same shapes, all zeros.
  Params zeros_like() const;
  void set_zero();
  size_t count() const;
  double squared_norm() const;
  bool all_finite() const;
  void add_scaled(const Params& other, double scale);
  bool operator==(const Params& other) const;
};

/// Source side of one sample as the model sees it.
struct ModelInput {
  std::span<const int> src;
  std::span<const std::vector<int>> feature_groups;  // fusion only
  size_t form_begin = 0;
  size_t form_end = 0;

  static ModelInput from(const EncodedSample& e) {
    return {e.src, e.src_feature_groups, e.form_begin, e.form_end};
  }
};

struct ForwardResult {
  Mat probs;      // steps x trg_vocab
  Mat attention;  // steps x |src|
  double loss = 0;
};

struct DecodeResult {
  std::vector<int> tokens;  // without BOS and EOS
  bool truncated = false;   // decode cap hit before EOS
};

class Seq2SeqModel {
 public:
  /// Random initialization from `config.hp.seed`.
  explicit Seq2SeqModel(ModelConfig config);
  Seq2SeqModel(ModelConfig config, Params params);

  const ModelConfig& config() const { return config_; }
  const Params& params() const { return params_; }
  Params& params() { return params_; }

  /// Teacher-forced pass. `target` starts with BOS; step t predicts
  /// target[t + 1], so there are |target| - 1 steps.
  ForwardResult forward(const ModelInput& in, std::span<const int> target) const;

  /// Loss of forward() and its gradient, accumulated (scaled by `scale`)
  /// into `grad`.
  double loss_and_grad(const ModelInput& in, std::span<const int> target, Params& grad,
                       double scale = 1.0) const;

  /// Greedy argmax decoding until EOS or the length cap.
  DecodeResult decode_greedy(const ModelInput& in) const;

  /// Read-head positions for each decoder step given the tokens fed so far.
  std::vector<size_t> pointer_positions(const ModelInput& in,
                                        std::span<const int> target) const;

 private:
  struct Cache;
  void encode(const ModelInput& in, Cache& c) const;
  ModelConfig config_;
  Params params_;
};

struct TrainExample {
  ModelInput input;
  std::vector<int> target;  // BOS ... EOS
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0;
  double dev_score = 0;     // exact match
  double dev_distance = 0;  // mean edit distance
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, Params last_good, int epoch)
      : Error(msg), last_good_(std::move(last_good)), epoch_(epoch) {}
  const Params& last_good() const { return last_good_; }
  int epoch() const { return epoch_; }

 private:
  Params last_good_;
  int epoch_;
};

struct TrainResult {
  Params best;
  double best_dev = -1;
  double best_distance = 0;
  int best_epoch = 0;
  int epochs_run = 0;
  bool stopped_early = false;
  std::vector<EpochLog> history;
};

/// Exact match in [0, 1]; equal accuracies are ranked by mean edit
/// distance, so early epochs that all score 0 still show progress.
struct DevScore {
  double accuracy = 0;
  double distance = 0;

  DevScore() = default;
  DevScore(double acc, double dist = 0) : accuracy(acc), distance(dist) {}  // NOLINT
  bool better_than(const DevScore& o) const {
    return accuracy > o.accuracy || (accuracy == o.accuracy && distance < o.distance);
  }
};

using DevScorer = std::function<DevScore(const Seq2SeqModel&)>;
using EpochCallback = std::function<void(const EpochLog&)>;

/// Fraction of dev examples whose greedy decode equals the gold target.
double token_exact_match(const Seq2SeqModel& model, std::span<const TrainExample> dev);

/// Mini-batch Adam with global-norm clipping. Stops after `patience` epochs
/// without dev improvement or once dev reaches 1. Leaves the best-dev
/// parameters in `model`. Throws DivergenceError on a non-finite loss.
TrainResult train(Seq2SeqModel& model, std::span<const TrainExample> train_set,
                  const DevScorer& dev_score, const EpochCallback& on_epoch = {});

struct GradCheckEntry {
  std::string name;
  double max_rel_error = 0;
  double max_abs_analytic = 0;
  size_t checked = 0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double max_rel_error = 0;
};

/// Compares analytic gradients with central differences on every entry of
/// the named tensors (all tensors when `names` is empty). Relative error is
/// |a - n| / max(|a| + |n|, floor).
GradCheckReport grad_check(const Seq2SeqModel& model, const ModelInput& in,
                           std::span<const int> target, double epsilon = 1e-5,
                           std::span<const std::string> names = {}, double floor = 1e-6);

}  // namespace morphoton

#endif  // MORPHOTON_SEQ2SEQ_H_
