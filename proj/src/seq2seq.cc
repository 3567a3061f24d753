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

#include "morphoton/seq2seq.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "morphoton/random.h"

namespace morphoton {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Vec softmax(const Vec& z) {
  Vec e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

void fill_uniform(Mat& m, Rng& rng, double scale) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = (2.0 * rng.uniform() - 1.0) * scale;
  }
}

// Activated gates [i f g o] and states for one LSTM run.
struct LstmTrace {
  Mat gates;  // 4H x N
  Mat c, tc, h;
};

void lstm_gates(Eigen::Ref<Vec> z, int H) {
  for (int k = 0; k < H; ++k) {
    z[k] = sigmoid(z[k]);
    z[H + k] = sigmoid(z[H + k]);
    z[2 * H + k] = std::tanh(z[2 * H + k]);
    z[3 * H + k] = sigmoid(z[3 * H + k]);
  }
}

void lstm_sequence(const Mat& W, const Mat& b, const Mat& X, bool reverse, LstmTrace& tr) {
  const Eigen::Index I = X.rows(), N = X.cols(), H = W.rows() / 4;
  Mat zx = W.leftCols(I) * X;
  zx.colwise() += b.col(0);
  tr.gates.resize(4 * H, N);
  tr.c.resize(H, N);
  tr.tc.resize(H, N);
  tr.h.resize(H, N);
  Vec h = Vec::Zero(H), c = Vec::Zero(H);
  for (Eigen::Index k = 0; k < N; ++k) {
    Eigen::Index t = reverse ? N - 1 - k : k;
    Vec z = zx.col(t) + W.rightCols(H) * h;
    lstm_gates(z, static_cast<int>(H));
    c = z.segment(H, H).cwiseProduct(c) + z.head(H).cwiseProduct(z.segment(2 * H, H));
    Vec tc = c.array().tanh();
    h = z.tail(H).cwiseProduct(tc);
    tr.gates.col(t) = z;
    tr.c.col(t) = c;
    tr.tc.col(t) = tc;
    tr.h.col(t) = h;
  }
}

// Gate pre-activation gradient for one step. Updates dc in place to the
// gradient w.r.t. the previous cell.
Vec lstm_step_backward(const Vec& gates, const Vec& tc, const Vec& c_prev, const Vec& dh,
                       Vec& dc) {
  const Eigen::Index H = tc.size();
  auto i = gates.head(H).array();
  auto f = gates.segment(H, H).array();
  auto g = gates.segment(2 * H, H).array();
  auto o = gates.tail(H).array();
  dc.array() += dh.array() * o * (1.0 - tc.array().square());
  Vec dz(4 * H);
  dz.head(H) = (dc.array() * g * i * (1.0 - i)).matrix();
  dz.segment(H, H) = (dc.array() * c_prev.array() * f * (1.0 - f)).matrix();
  dz.segment(2 * H, H) = (dc.array() * i * (1.0 - g.square())).matrix();
  dz.tail(H) = (dh.array() * tc.array() * o * (1.0 - o)).matrix();
  dc = (dc.array() * f).matrix();
  return dz;
}

// Returns dX.
Mat lstm_sequence_backward(const Mat& W, const Mat& X, bool reverse, const LstmTrace& tr,
                           const Mat& dH, Mat& dW, Mat& db) {
  const Eigen::Index I = X.rows(), N = X.cols(), H = W.rows() / 4;
  Mat dZ(4 * H, N);
  Mat h_prev = Mat::Zero(H, N);
  Vec dh_next = Vec::Zero(H), dc = Vec::Zero(H);
  for (Eigen::Index k = N - 1; k >= 0; --k) {
    Eigen::Index t = reverse ? N - 1 - k : k;
    Eigen::Index tp = reverse ? t + 1 : t - 1;
    Vec c_prev = k > 0 ? Vec(tr.c.col(tp)) : Vec::Zero(H);
    if (k > 0) h_prev.col(t) = tr.h.col(tp);
    Vec dh = dH.col(t) + dh_next;
    Vec dz = lstm_step_backward(tr.gates.col(t), tr.tc.col(t), c_prev, dh, dc);
    dZ.col(t) = dz;
    dh_next = W.rightCols(H).transpose() * dz;
  }
  dW.leftCols(I).noalias() += dZ * X.transpose();
  dW.rightCols(H).noalias() += dZ * h_prev.transpose();
  db.col(0) += dZ.rowwise().sum();
  return W.leftCols(I).transpose() * dZ;
}

struct FusionCache {
  Vec q;    // d
  Mat kv;   // m x d
  Mat raw;  // m x d_e feature embeddings before projection
  Mat weights;
};

}  // namespace

void Hyperparameters::validate() const {
  auto positive = [](const char* name, double v) {
    if (!(v > 0)) throw Error(std::string("hyperparameter ") + name + " must be positive");
  };
  positive("embed_dim", embed_dim);
  positive("hidden_dim", hidden_dim);
  positive("fusion_dim", fusion_dim);
  positive("fusion_heads", fusion_heads);
  positive("learning_rate", learning_rate);
  positive("batch_size", batch_size);
  positive("max_epochs", max_epochs);
  positive("patience", patience);
  positive("max_decode_len_factor", max_decode_len_factor);
  positive("clip_norm", clip_norm);
  if (fusion_dim % fusion_heads != 0) {
    throw Error("fusion_dim must be divisible by fusion_heads");
  }
}

Vec fuse_phoneme(const Vec& q, const Mat& kv, int heads, Mat* weights) {
  const Eigen::Index d = q.size(), m = kv.rows();
  if (heads < 1 || d % heads != 0) throw DimensionError("d must be divisible by heads");
  if (kv.cols() != d) {
    throw DimensionError("key/value width " + std::to_string(kv.cols()) +
                         " != query width " + std::to_string(d));
  }
  if (m < 1) throw DimensionError("fusion needs at least one feature row");
  const Eigen::Index dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  Vec out(d);
  if (weights) weights->resize(heads, m);
  for (int h = 0; h < heads; ++h) {
    auto qs = q.segment(h * dh, dh);
    auto ks = kv.middleCols(h * dh, dh);
    Vec w = softmax((ks * qs) * scale);
    out.segment(h * dh, dh) = ks.transpose() * w;
    if (weights) weights->row(h) = w.transpose();
  }
  return out;
}

double sequence_nll(const Mat& probs, std::span<const int> gold) {
  if (static_cast<size_t>(probs.rows()) != gold.size()) {
    throw DimensionError("loss: " + std::to_string(probs.rows()) + " steps vs " +
                         std::to_string(gold.size()) + " gold tokens");
  }
  if (gold.empty()) return 0.0;
  double total = 0;
  for (size_t t = 0; t < gold.size(); ++t) {
    total -= std::log(probs(static_cast<Eigen::Index>(t), gold[t]));
  }
  return total / static_cast<double>(gold.size());
}

Params Params::zeros_like() const {
  Params z;
  auto src = const_cast<Params*>(this);
  std::vector<Mat*> from;
  src->for_each([&](const char*, Mat& m) { from.push_back(&m); });
  size_t k = 0;
  z.for_each([&](const char*, Mat& m) {
    m = Mat::Zero(from[k]->rows(), from[k]->cols());
    ++k;
  });
  return z;
}

void Params::set_zero() {
  for_each([](const char*, Mat& m) { m.setZero(); });
}

size_t Params::count() const {
  size_t n = 0;
  for_each([&](const char*, const Mat& m) { n += static_cast<size_t>(m.size()); });
  return n;
}

double Params::squared_norm() const {
  double s = 0;
  for_each([&](const char*, const Mat& m) { s += m.squaredNorm(); });
  return s;
}

bool Params::all_finite() const {
  bool ok = true;
  for_each([&](const char*, const Mat& m) { ok = ok && m.allFinite(); });
  return ok;
}

void Params::add_scaled(const Params& other, double scale) {
  std::vector<const Mat*> rhs;
  other.for_each([&](const char*, const Mat& m) { rhs.push_back(&m); });
  size_t k = 0;
  for_each([&](const char*, Mat& m) { m += scale * *rhs[k++]; });
}

bool Params::operator==(const Params& other) const {
  std::vector<const Mat*> rhs;
  other.for_each([&](const char*, const Mat& m) { rhs.push_back(&m); });
  size_t k = 0;
  bool eq = true;
  for_each([&](const char*, const Mat& m) {
    const Mat& r = *rhs[k++];
    eq = eq && m.rows() == r.rows() && m.cols() == r.cols() && m == r;
  });
  return eq;
}

struct Seq2SeqModel::Cache {
  Mat X;  // encoder inputs, I x N
  std::vector<FusionCache> fusion;
  LstmTrace fwd, bwd;
  Mat hs;  // 2H x N
  Vec bridge_in, s0;

  struct Step {
    int prev = 0;
    Vec in;  // [embedding; h~_prev; s_prev]
    Vec gates, c_prev, c, tc, s;
    Vec alpha, ctx, comb_in, ht, probs;
    size_t ptr = 0;
  };
  std::vector<Step> steps;
};

Seq2SeqModel::Seq2SeqModel(ModelConfig config) : config_(std::move(config)) {
  const Hyperparameters& hp = config_.hp;
  hp.validate();
  if (config_.src_vocab <= 0 || config_.trg_vocab <= 0) {
    throw DimensionError("vocabulary sizes must be positive");
  }
  const int de = hp.embed_dim, H = hp.hidden_dim, I = config_.input_dim();
  Rng rng(hp.seed);
  Params& p = params_;
  auto init = [&](Mat& m, Eigen::Index r, Eigen::Index c, double scale) {
    m.resize(r, c);
    fill_uniform(m, rng, scale);
  };
  auto fan = [](Eigen::Index n) { return 1.0 / std::sqrt(static_cast<double>(n)); };
  init(p.src_embedding, config_.src_vocab, de, 0.1);
  init(p.feat_embedding, config_.feat_vocab, config_.fusion() ? de : 0, 0.1);
  if (config_.projected()) {
    init(p.fusion_projection, hp.fusion_dim, de, fan(de));
  } else {
    p.fusion_projection.resize(0, 0);
  }
  init(p.trg_embedding, config_.trg_vocab, de, 0.1);
  for (auto [W, b] : {std::pair{&p.enc_fwd_W, &p.enc_fwd_b}, {&p.enc_bwd_W, &p.enc_bwd_b}}) {
    init(*W, 4 * H, I + H, fan(I + H));
    *b = Mat::Zero(4 * H, 1);
    b->block(H, 0, H, 1).setOnes();
  }
  init(p.bridge_W, H, 2 * H, fan(2 * H));
  p.bridge_b = Mat::Zero(H, 1);
  init(p.dec_W, 4 * H, de + 2 * H, fan(de + 2 * H));
  p.dec_b = Mat::Zero(4 * H, 1);
  p.dec_b.block(H, 0, H, 1).setOnes();
  init(p.attn_W, H, 2 * H, fan(2 * H));
  const int comb_in = 3 * H + (config_.pointer ? 2 * H : 0);
  init(p.comb_W, H, comb_in, fan(comb_in));
  p.comb_b = Mat::Zero(H, 1);
  init(p.out_W, config_.trg_vocab, H, fan(H));
  p.out_b = Mat::Zero(config_.trg_vocab, 1);
}

Seq2SeqModel::Seq2SeqModel(ModelConfig config, Params params)
    : config_(std::move(config)), params_(std::move(params)) {
  config_.hp.validate();
  Seq2SeqModel shape(config_);
  bool ok = true;
  std::vector<const Mat*> want;
  shape.params_.for_each([&](const char*, const Mat& m) { want.push_back(&m); });
  size_t k = 0;
  std::string bad;
  params_.for_each([&](const char* name, const Mat& m) {
    const Mat& w = *want[k++];
    if (m.rows() != w.rows() || m.cols() != w.cols()) {
      ok = false;
      bad = name;
    }
  });
  if (!ok) throw DimensionError("tensor '" + bad + "' has the wrong shape for this config");
}

void Seq2SeqModel::encode(const ModelInput& in, Cache& c) const {
  const Params& p = params_;
  const Eigen::Index N = static_cast<Eigen::Index>(in.src.size());
  if (N == 0) throw DimensionError("empty source sequence");
  const bool fusion = config_.fusion();
  if (fusion && in.feature_groups.size() != in.form_end - in.form_begin) {
    throw DimensionError("fusion input has " + std::to_string(in.feature_groups.size()) +
                         " feature groups for " +
                         std::to_string(in.form_end - in.form_begin) + " form positions");
  }
  c.X.resize(config_.input_dim(), N);
  c.fusion.assign(fusion ? in.feature_groups.size() : 0, {});
  for (Eigen::Index i = 0; i < N; ++i) {
    int tok = in.src[static_cast<size_t>(i)];
    if (tok < 0 || tok >= config_.src_vocab) throw DimensionError("source token out of range");
    Vec e = p.src_embedding.row(tok).transpose();
    size_t ui = static_cast<size_t>(i);
    if (fusion && ui >= in.form_begin && ui < in.form_end) {
      const std::vector<int>& group = in.feature_groups[ui - in.form_begin];
      FusionCache& fc = c.fusion[ui - in.form_begin];
      fc.raw.resize(static_cast<Eigen::Index>(group.size()), config_.hp.embed_dim);
      for (size_t j = 0; j < group.size(); ++j) {
        if (group[j] < 0 || group[j] >= config_.feat_vocab) {
          throw DimensionError("feature token out of range");
        }
        fc.raw.row(static_cast<Eigen::Index>(j)) = p.feat_embedding.row(group[j]);
      }
      if (config_.projected()) {
        fc.q = p.fusion_projection * e;
        fc.kv = fc.raw * p.fusion_projection.transpose();
      } else {
        fc.q = e;
        fc.kv = fc.raw;
      }
      c.X.col(i) = fuse_phoneme(fc.q, fc.kv, config_.hp.fusion_heads, &fc.weights);
    } else if (config_.projected()) {
      c.X.col(i) = p.fusion_projection * e;
    } else {
      c.X.col(i) = e;
    }
  }
  lstm_sequence(p.enc_fwd_W, p.enc_fwd_b, c.X, false, c.fwd);
  lstm_sequence(p.enc_bwd_W, p.enc_bwd_b, c.X, true, c.bwd);
  const Eigen::Index H = config_.hp.hidden_dim;
  c.hs.resize(2 * H, N);
  c.hs.topRows(H) = c.fwd.h;
  c.hs.bottomRows(H) = c.bwd.h;
  c.bridge_in.resize(2 * H);
  c.bridge_in << c.fwd.h.col(N - 1), c.bwd.h.col(0);
  c.s0 = (p.bridge_W * c.bridge_in + p.bridge_b.col(0)).array().tanh();
  c.steps.clear();
}

namespace {

// One decoder step. `ht_prev`, `s_prev`, `c_prev` come from the previous
// step (or the bridge).
template <typename Step>
void decoder_step(const Params& p, const ModelConfig& cfg, const Mat& hs, int prev,
                  const Vec& ht_prev, const Vec& s_prev, const Vec& c_prev, size_t ptr,
                  Step& st) {
  const Eigen::Index de = cfg.hp.embed_dim, H = cfg.hp.hidden_dim;
  if (prev < 0 || prev >= cfg.trg_vocab) throw DimensionError("target token out of range");
  st.prev = prev;
  st.ptr = ptr;
  st.in.resize(de + 2 * H);
  st.in << p.trg_embedding.row(prev).transpose(), ht_prev, s_prev;
  st.gates = p.dec_W * st.in + p.dec_b.col(0);
  lstm_gates(st.gates, static_cast<int>(H));
  st.c_prev = c_prev;
  st.c = st.gates.segment(H, H).cwiseProduct(c_prev) +
         st.gates.head(H).cwiseProduct(st.gates.segment(2 * H, H));
  st.tc = st.c.array().tanh();
  st.s = st.gates.tail(H).cwiseProduct(st.tc);
  Vec scores = hs.transpose() * (p.attn_W.transpose() * st.s);
  st.alpha = softmax(scores);
  st.ctx = hs * st.alpha;
  st.comb_in.resize(p.comb_W.cols());
  if (cfg.pointer) {
    st.comb_in << st.ctx, st.s, hs.col(static_cast<Eigen::Index>(ptr));
  } else {
    st.comb_in << st.ctx, st.s;
  }
  st.ht = (p.comb_W * st.comb_in + p.comb_b.col(0)).array().tanh();
  st.probs = softmax(p.out_W * st.ht + p.out_b.col(0));
}

}  // namespace

std::vector<size_t> Seq2SeqModel::pointer_positions(const ModelInput& in,
                                                    std::span<const int> target) const {
  std::vector<size_t> out;
  if (target.empty()) return out;
  size_t ptr = in.form_begin;
  for (size_t t = 0; t + 1 < target.size(); ++t) {
    if (t > 0 && (target[t] == config_.copy_token || target[t] == config_.delete_token)) {
      ptr = std::min(ptr + 1, in.form_end);
    }
    out.push_back(std::min(ptr, in.form_end));
  }
  return out;
}

ForwardResult Seq2SeqModel::forward(const ModelInput& in, std::span<const int> target) const {
  if (target.size() < 2) throw DimensionError("target needs at least BOS and one token");
  Cache c;
  encode(in, c);
  const Eigen::Index H = config_.hp.hidden_dim;
  const size_t T = target.size() - 1;
  std::vector<size_t> ptrs = config_.pointer ? pointer_positions(in, target)
                                             : std::vector<size_t>(T, 0);
  ForwardResult r;
  r.probs.resize(static_cast<Eigen::Index>(T), config_.trg_vocab);
  r.attention.resize(static_cast<Eigen::Index>(T), c.hs.cols());
  Vec ht = Vec::Zero(H), s = c.s0, cell = Vec::Zero(H);
  Cache::Step st;
  for (size_t t = 0; t < T; ++t) {
    decoder_step(params_, config_, c.hs, target[t], ht, s, cell, ptrs[t], st);
    r.probs.row(static_cast<Eigen::Index>(t)) = st.probs.transpose();
    r.attention.row(static_cast<Eigen::Index>(t)) = st.alpha.transpose();
    ht = st.ht;
    s = st.s;
    cell = st.c;
  }
  r.loss = sequence_nll(r.probs, target.subspan(1));
  return r;
}

double Seq2SeqModel::loss_and_grad(const ModelInput& in, std::span<const int> target,
                                   Params& g, double scale) const {
  if (target.size() < 2) throw DimensionError("target needs at least BOS and one token");
  const Params& p = params_;
  Cache c;
  encode(in, c);
  const Eigen::Index H = config_.hp.hidden_dim, de = config_.hp.embed_dim;
  const Eigen::Index N = c.hs.cols();
  const size_t T = target.size() - 1;
  std::vector<size_t> ptrs = config_.pointer ? pointer_positions(in, target)
                                             : std::vector<size_t>(T, 0);
  c.steps.resize(T);
  Vec ht = Vec::Zero(H), s = c.s0, cell = Vec::Zero(H);
  double loss = 0;
  for (size_t t = 0; t < T; ++t) {
    auto& st = c.steps[t];
    decoder_step(p, config_, c.hs, target[t], ht, s, cell, ptrs[t], st);
    int gold = target[t + 1];
    if (gold < 0 || gold >= config_.trg_vocab) throw DimensionError("gold token out of range");
    loss -= std::log(st.probs[gold]);
    ht = st.ht;
    s = st.s;
    cell = st.c;
  }
  loss /= static_cast<double>(T);

  Mat dhs = Mat::Zero(2 * H, N);
  Vec dht_carry = Vec::Zero(H), ds_next = Vec::Zero(H), dc = Vec::Zero(H);
  const double step_scale = scale / static_cast<double>(T);
  for (size_t t = T; t-- > 0;) {
    const auto& st = c.steps[t];
    Vec dlog = st.probs;
    dlog[target[t + 1]] -= 1.0;
    dlog *= step_scale;
    g.out_W.noalias() += dlog * st.ht.transpose();
    g.out_b.col(0) += dlog;
    Vec dht = p.out_W.transpose() * dlog + dht_carry;
    Vec da = dht.array() * (1.0 - st.ht.array().square());
    g.comb_W.noalias() += da * st.comb_in.transpose();
    g.comb_b.col(0) += da;
    Vec dcomb = p.comb_W.transpose() * da;
    Vec dctx = dcomb.head(2 * H);
    Vec ds = dcomb.segment(2 * H, H);
    if (config_.pointer) dhs.col(static_cast<Eigen::Index>(st.ptr)) += dcomb.tail(2 * H);
    dhs.noalias() += dctx * st.alpha.transpose();
    Vec dalpha = c.hs.transpose() * dctx;
    Vec dscore = st.alpha.array() * (dalpha.array() - st.alpha.dot(dalpha));
    Vec hde = c.hs * dscore;
    Vec wa_s = p.attn_W.transpose() * st.s;
    dhs.noalias() += wa_s * dscore.transpose();
    g.attn_W.noalias() += st.s * hde.transpose();
    ds += p.attn_W * hde + ds_next;
    Vec dz = lstm_step_backward(st.gates, st.tc, st.c_prev, ds, dc);
    g.dec_W.noalias() += dz * st.in.transpose();
    g.dec_b.col(0) += dz;
    Vec din = p.dec_W.transpose() * dz;
    g.trg_embedding.row(st.prev) += din.head(de).transpose();
    dht_carry = din.segment(de, H);
    ds_next = din.tail(H);
  }
  Vec da0 = ds_next.array() * (1.0 - c.s0.array().square());
  g.bridge_W.noalias() += da0 * c.bridge_in.transpose();
  g.bridge_b.col(0) += da0;
  Vec dbin = p.bridge_W.transpose() * da0;
  dhs.col(N - 1).head(H) += dbin.head(H);
  dhs.col(0).tail(H) += dbin.tail(H);

  Mat dX = lstm_sequence_backward(p.enc_fwd_W, c.X, false, c.fwd, dhs.topRows(H), g.enc_fwd_W,
                                  g.enc_fwd_b);
  dX += lstm_sequence_backward(p.enc_bwd_W, c.X, true, c.bwd, dhs.bottomRows(H), g.enc_bwd_W,
                               g.enc_bwd_b);

  const bool fusion = config_.fusion(), projected = config_.projected();
  const int heads = config_.hp.fusion_heads;
  for (Eigen::Index i = 0; i < N; ++i) {
    const size_t ui = static_cast<size_t>(i);
    const int tok = in.src[ui];
    Vec dx = dX.col(i);
    if (fusion && ui >= in.form_begin && ui < in.form_end) {
      const FusionCache& fc = c.fusion[ui - in.form_begin];
      const Eigen::Index d = fc.q.size(), m = fc.kv.rows(), dh = d / heads;
      const double sc = 1.0 / std::sqrt(static_cast<double>(dh));
      Vec dq = Vec::Zero(d);
      Mat dkv = Mat::Zero(m, d);
      for (int h = 0; h < heads; ++h) {
        auto ks = fc.kv.middleCols(h * dh, dh);
        Vec w = fc.weights.row(h).transpose();
        Vec dout = dx.segment(h * dh, dh);
        dkv.middleCols(h * dh, dh).noalias() += w * dout.transpose();
        Vec dw = ks * dout;
        Vec dl = w.array() * (dw.array() - w.dot(dw));
        dq.segment(h * dh, dh) += sc * (ks.transpose() * dl);
        dkv.middleCols(h * dh, dh).noalias() += sc * dl * fc.q.segment(h * dh, dh).transpose();
      }
      const std::vector<int>& group = in.feature_groups[ui - in.form_begin];
      if (projected) {
        Vec e = p.src_embedding.row(tok).transpose();
        g.fusion_projection.noalias() += dq * e.transpose() + dkv.transpose() * fc.raw;
        g.src_embedding.row(tok) += (p.fusion_projection.transpose() * dq).transpose();
        Mat draw = dkv * p.fusion_projection;
        for (size_t j = 0; j < group.size(); ++j) {
          g.feat_embedding.row(group[j]) += draw.row(static_cast<Eigen::Index>(j));
        }
      } else {
        g.src_embedding.row(tok) += dq.transpose();
        for (size_t j = 0; j < group.size(); ++j) {
          g.feat_embedding.row(group[j]) += dkv.row(static_cast<Eigen::Index>(j));
        }
      }
    } else if (projected) {
      g.fusion_projection.noalias() += dx * p.src_embedding.row(tok);
      g.src_embedding.row(tok) += (p.fusion_projection.transpose() * dx).transpose();
    } else {
      g.src_embedding.row(tok) += dx.transpose();
    }
  }
  return loss;
}

DecodeResult Seq2SeqModel::decode_greedy(const ModelInput& in) const {
  Cache c;
  encode(in, c);
  const Eigen::Index H = config_.hp.hidden_dim;
  const size_t cap = static_cast<size_t>(config_.hp.max_decode_len_factor *
                                         static_cast<double>(in.src.size())) + 10;
  DecodeResult r;
  Vec ht = Vec::Zero(H), s = c.s0, cell = Vec::Zero(H);
  int prev = kBos;
  size_t ptr = in.form_begin;
  Cache::Step st;
  for (size_t t = 0;; ++t) {
    if (t == cap) {
      r.truncated = true;
      break;
    }
    if (config_.pointer && t > 0 &&
        (prev == config_.copy_token || prev == config_.delete_token)) {
      ptr = std::min(ptr + 1, in.form_end);
    }
    decoder_step(params_, config_, c.hs, prev, ht, s, cell, std::min(ptr, in.form_end), st);
    Eigen::Index best;
    st.probs.maxCoeff(&best);
    prev = static_cast<int>(best);
    if (prev == kEos) break;
    r.tokens.push_back(prev);
    ht = st.ht;
    s = st.s;
    cell = st.c;
  }
  return r;
}

double token_exact_match(const Seq2SeqModel& model, std::span<const TrainExample> dev) {
  if (dev.empty()) return 0.0;
  size_t hits = 0;
  for (const TrainExample& ex : dev) {
    DecodeResult r = model.decode_greedy(ex.input);
    if (ex.target.size() >= 2 &&
        std::equal(r.tokens.begin(), r.tokens.end(), ex.target.begin() + 1,
                   ex.target.end() - 1) &&
        r.tokens.size() == ex.target.size() - 2) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(dev.size());
}

TrainResult train(Seq2SeqModel& model, std::span<const TrainExample> train_set,
                  const DevScorer& dev_score, const EpochCallback& on_epoch) {
  if (train_set.empty()) throw Error("empty training set");
  const Hyperparameters& hp = model.config().hp;
  Params& p = model.params();
  Params grad = p.zeros_like(), m1 = p.zeros_like(), m2 = p.zeros_like();
  std::vector<Mat*> pt, gt, mt, vt;
  p.for_each([&](const char*, Mat& x) { pt.push_back(&x); });
  grad.for_each([&](const char*, Mat& x) { gt.push_back(&x); });
  m1.for_each([&](const char*, Mat& x) { mt.push_back(&x); });
  m2.for_each([&](const char*, Mat& x) { vt.push_back(&x); });
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;

  Rng rng(hp.seed ^ 0x5eed5eedULL);
  std::vector<size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  TrainResult result;
  result.best = p;
  Params last_good = p;
  int bad_epochs = 0;
  long step = 0;
  const size_t B = static_cast<size_t>(hp.batch_size);
  for (int epoch = 1; epoch <= hp.max_epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0;
    for (size_t start = 0; start < order.size(); start += B) {
      size_t end = std::min(start + B, order.size());
      grad.set_zero();
      double batch_loss = 0;
      const double inv = 1.0 / static_cast<double>(end - start);
      for (size_t k = start; k < end; ++k) {
        const TrainExample& ex = train_set[order[k]];
        batch_loss += model.loss_and_grad(ex.input, ex.target, grad, inv);
      }
      if (!std::isfinite(batch_loss) || !grad.all_finite()) {
        throw DivergenceError("non-finite loss in epoch " + std::to_string(epoch) +
                                  " at step " + std::to_string(step),
                              last_good, epoch - 1);
      }
      epoch_loss += batch_loss;
      double norm = std::sqrt(grad.squared_norm());
      double clip = norm > hp.clip_norm ? hp.clip_norm / norm : 1.0;
      ++step;
      const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      for (size_t k = 0; k < pt.size(); ++k) {
        Mat gk = *gt[k] * clip;
        *mt[k] = kBeta1 * *mt[k] + (1 - kBeta1) * gk;
        *vt[k] = kBeta2 * *vt[k] + (1 - kBeta2) * gk.cwiseProduct(gk);
        pt[k]->array() -= hp.learning_rate * (mt[k]->array() / c1) /
                          ((vt[k]->array() / c2).sqrt() + kEps);
      }
    }
    last_good = p;
    DevScore score = dev_score(model);
    EpochLog log{epoch, epoch_loss / static_cast<double>(train_set.size()), score.accuracy,
                 score.distance};
    result.history.push_back(log);
    result.epochs_run = epoch;
    if (on_epoch) on_epoch(log);
    if (result.best_epoch == 0 ||
        score.better_than({result.best_dev, result.best_distance})) {
      result.best_dev = score.accuracy;
      result.best_distance = score.distance;
      result.best_epoch = epoch;
      result.best = p;
      bad_epochs = 0;
    } else {
      ++bad_epochs;
    }
    if (result.best_dev >= 1.0 || bad_epochs >= hp.patience) {
      result.stopped_early = epoch < hp.max_epochs;
      break;
    }
  }
  p = result.best;
  return result;
}

GradCheckReport grad_check(const Seq2SeqModel& model, const ModelInput& in,
                           std::span<const int> target, double epsilon,
                           std::span<const std::string> names, double floor) {
  Params analytic = model.params().zeros_like();
  model.loss_and_grad(in, target, analytic);
  Seq2SeqModel probe = model;
  std::vector<const Mat*> grads;
  analytic.for_each([&](const char*, const Mat& m) { grads.push_back(&m); });
  GradCheckReport report;
  size_t k = 0;
  probe.params().for_each([&](const char* name, Mat& m) {
    const Mat& ga = *grads[k++];
    if (!names.empty() && std::find(names.begin(), names.end(), name) == names.end()) return;
    GradCheckEntry e;
    e.name = name;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      double saved = m.data()[i];
      m.data()[i] = saved + epsilon;
      double lp = probe.forward(in, target).loss;
      m.data()[i] = saved - epsilon;
      double lm = probe.forward(in, target).loss;
      m.data()[i] = saved;
      double numeric = (lp - lm) / (2 * epsilon);
      double a = ga.data()[i];
      double rel = std::abs(a - numeric) / std::max(std::abs(a) + std::abs(numeric), floor);
      e.max_rel_error = std::max(e.max_rel_error, rel);
      e.max_abs_analytic = std::max(e.max_abs_analytic, std::abs(a));
      ++e.checked;
    }
    report.max_rel_error = std::max(report.max_rel_error, e.max_rel_error);
    report.entries.push_back(std::move(e));
  });
  return report;
}

}  // namespace morphoton
