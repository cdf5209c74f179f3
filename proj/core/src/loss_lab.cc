// Copyright 2026 The Navero Authors
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

#include "navero/loss_lab.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "navero/error.h"

namespace navero::loss {
namespace {

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double Scale(Reduction reduction, double terms) {
  return reduction == Reduction::kMean ? 1.0 / terms : 1.0;
}

void RequireSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kNonPositiveSigma,
                "temperature must be a positive finite number, got " +
                    std::to_string(sigma));
  }
}

void RequireSameDim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": embedding widths " +
                    std::to_string(a.cols()) + " and " +
                    std::to_string(b.cols()) + " differ");
  }
}

void RequireSameRows(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::kNonSquare,
                std::string(what) + ": batch sizes " + std::to_string(a.rows()) +
                    " and " + std::to_string(b.rows()) + " differ");
  }
}

Vector RowNorms(const Matrix& m) { return m.rowwise().norm(); }

Matrix NormalizeRows(const Matrix& m, const Vector& norms) {
  return norms.cwiseInverse().asDiagonal() * m;
}

// Gradients of sum_ij G_ij C_ij with C = cos(texts_i, videos_j).
void CosineBackward(const Matrix& texts, const Matrix& videos, const Matrix& c,
                    const Matrix& g, Matrix* grad_texts, Matrix* grad_videos) {
  const Vector nt = RowNorms(texts);
  const Vector nv = RowNorms(videos);
  const Matrix th = NormalizeRows(texts, nt);
  const Matrix vh = NormalizeRows(videos, nv);
  const Matrix gc = g.cwiseProduct(c);
  const Vector row_w = gc.rowwise().sum();
  const Vector col_w = gc.colwise().sum().transpose();
  *grad_texts = nt.cwiseInverse().asDiagonal() *
                (g * vh - row_w.asDiagonal() * th);
  *grad_videos = nv.cwiseInverse().asDiagonal() *
                 (g.transpose() * th - col_w.asDiagonal() * vh);
}

// Row-paired cosine c_i = cos(a_i, b_i).
Vector PairCosine(const Matrix& a, const Matrix& b) {
  const Vector na = RowNorms(a);
  const Vector nb = RowNorms(b);
  return (a.cwiseProduct(b).rowwise().sum()).cwiseQuotient(na.cwiseProduct(nb));
}

// Gradients of sum_i g_i cos(a_i, b_i).
void PairCosineBackward(const Matrix& a, const Matrix& b, const Vector& c,
                        const Vector& g, Matrix* grad_a, Matrix* grad_b) {
  const Vector na = RowNorms(a);
  const Vector nb = RowNorms(b);
  const Matrix ah = NormalizeRows(a, na);
  const Matrix bh = NormalizeRows(b, nb);
  *grad_a = g.cwiseQuotient(na).asDiagonal() * (bh - c.asDiagonal() * ah);
  *grad_b = g.cwiseQuotient(nb).asDiagonal() * (ah - c.asDiagonal() * bh);
}

// Loss and d loss / d logits of the symmetric contrastive objective.
double VtcFromLogits(const Matrix& logits, Reduction reduction,
                     Matrix* grad_logits) {
  const Eigen::Index n = logits.rows();
  const double scale = Scale(reduction, static_cast<double>(n));
  Vector lse_row(n);
  Vector lse_col(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mr = logits.row(i).maxCoeff();
    lse_row(i) = mr + std::log((logits.row(i).array() - mr).exp().sum());
    const double mc = logits.col(i).maxCoeff();
    lse_col(i) = mc + std::log((logits.col(i).array() - mc).exp().sum());
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += (logits(i, i) - lse_row(i)) + (logits(i, i) - lse_col(i));
  }
  if (grad_logits != nullptr) {
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        g(i, j) = std::exp(logits(i, j) - lse_row(i)) +
                  std::exp(logits(i, j) - lse_col(j));
      }
      g(i, i) -= 2.0;
    }
    *grad_logits = scale * g;
  }
  return -scale * total;
}

double HeadLogit(const Vector& t, const Vector& v, const VtmHeadParams& p) {
  return p.w.dot(t.cwiseProduct(v)) + p.b(0) - p.b(1);
}

void RequireHead(const VtmHeadParams& params, Eigen::Index dim) {
  if (params.w.size() != dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "head weight has " + std::to_string(params.w.size()) +
                    " entries for embeddings of width " + std::to_string(dim));
  }
  if (!params.w.allFinite() || !params.b.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "head parameters are not finite");
  }
}

// Adds one cross-entropy term on (texts_ti, videos_vi) to `out`.
void AccumulateHeadTerm(const Matrix& texts, Eigen::Index ti,
                        const Matrix& videos, Eigen::Index vi,
                        const VtmHeadParams& params, bool match, double scale,
                        HeadGradients* out, Matrix* grad_texts) {
  const Vector t = texts.row(ti).transpose();
  const Vector v = videos.row(vi).transpose();
  const double d = HeadLogit(t, v, params);
  out->loss += scale * (match ? Softplus(-d) : Softplus(d));
  const double g = scale * (Sigmoid(d) - (match ? 1.0 : 0.0));
  out->grad_w += g * t.cwiseProduct(v);
  out->grad_b(0) += g;
  out->grad_b(1) -= g;
  grad_texts->row(ti) += g * params.w.cwiseProduct(v).transpose();
  out->grad_videos.row(vi) += g * params.w.cwiseProduct(t).transpose();
}

}  // namespace

void ValidateEmbeddings(const Matrix& batch, const char* role) {
  if (batch.rows() < 1 || batch.cols() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(role) + " batch needs B >= 1 rows and D >= 2 columns");
  }
  if (!batch.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(role) + " batch has non-finite entries");
  }
  const Vector norms = RowNorms(batch);
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (norms(i) < 1e-8) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(role) + " row " + std::to_string(i) +
                      " has (near) zero norm");
    }
  }
}

Matrix CosineMatrix(const Matrix& texts, const Matrix& videos) {
  RequireSameDim(texts, videos, "similarity");
  ValidateEmbeddings(texts, "text");
  ValidateEmbeddings(videos, "video");
  const Matrix th = NormalizeRows(texts, RowNorms(texts));
  const Matrix vh = NormalizeRows(videos, RowNorms(videos));
  return th * vh.transpose();
}

Matrix Similarity(const Matrix& texts, const Matrix& videos, double sigma) {
  RequireSigma(sigma);
  return (CosineMatrix(texts, videos).array() / sigma).exp().matrix();
}

PairGradients VtcLoss(const Matrix& texts, const Matrix& videos, double sigma,
                      Reduction reduction) {
  RequireSigma(sigma);
  RequireSameRows(texts, videos, "vtc");
  const Matrix c = CosineMatrix(texts, videos);
  Matrix grad_logits;
  PairGradients out;
  out.loss = VtcFromLogits(c / sigma, reduction, &grad_logits);
  CosineBackward(texts, videos, c, grad_logits / sigma, &out.grad_texts,
                 &out.grad_videos);
  return out;
}

double VtcLossFromSimilarity(const Matrix& similarity, Reduction reduction) {
  if (similarity.rows() != similarity.cols() || similarity.rows() == 0) {
    throw Error(ErrorCode::kNonSquare,
                "similarity matrix is " + std::to_string(similarity.rows()) +
                    "x" + std::to_string(similarity.cols()));
  }
  if (!similarity.allFinite() || (similarity.array() <= 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument,
                "similarity entries must be positive and finite");
  }
  return VtcFromLogits(similarity.array().log().matrix(), reduction, nullptr);
}

void NegBatch::Validate() const {
  ValidateEmbeddings(texts, "text");
  ValidateEmbeddings(neg_texts, "negative text");
  ValidateEmbeddings(videos, "video");
  if (texts.rows() != neg_texts.rows() || texts.rows() != videos.rows() ||
      texts.cols() != neg_texts.cols() || texts.cols() != videos.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "negative batch parts have inconsistent shapes");
  }
}

NegGradients NegVtcLoss(const NegBatch& batch, double sigma,
                        Reduction reduction) {
  RequireSigma(sigma);
  batch.Validate();
  const double scale =
      Scale(reduction, static_cast<double>(batch.texts.rows()));
  const Vector cp = PairCosine(batch.texts, batch.videos);
  const Vector cn = PairCosine(batch.neg_texts, batch.videos);
  const Vector gap = (cn - cp) / sigma;

  NegGradients out;
  Vector g(gap.size());
  for (Eigen::Index i = 0; i < gap.size(); ++i) {
    out.loss += scale * Softplus(gap(i));
    g(i) = scale * Sigmoid(gap(i)) / sigma;
  }
  Matrix gv_pos;
  Matrix gv_neg;
  PairCosineBackward(batch.texts, batch.videos, cp, -g, &out.grad_texts,
                     &gv_pos);
  PairCosineBackward(batch.neg_texts, batch.videos, cn, g, &out.grad_neg_texts,
                     &gv_neg);
  out.grad_videos = gv_pos + gv_neg;
  return out;
}

Eigen::Vector2d VtmHead(const Vector& text, const Vector& video,
                        const VtmHeadParams& params) {
  if (text.size() != video.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "text and video embeddings differ in width");
  }
  RequireHead(params, text.size());
  const double p_match = Sigmoid(HeadLogit(text, video, params));
  return {p_match, 1.0 - p_match};
}

HardNegatives SampleHardNegatives(const Matrix& similarity, Rng& rng) {
  const Eigen::Index n = similarity.rows();
  if (similarity.cols() != n) {
    throw Error(ErrorCode::kNonSquare, "similarity matrix is not square");
  }
  if (n < 2) {
    throw Error(ErrorCode::kBatchTooSmall,
                "hard negatives need a batch of at least 2");
  }
  auto draw = [&](auto weight, Eigen::Index skip) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != skip) total += weight(j);
    }
    const double u = rng.UniformReal() * total;
    double acc = 0.0;
    Eigen::Index last = skip == n - 1 ? n - 2 : n - 1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == skip) continue;
      acc += weight(j);
      if (u < acc) return static_cast<std::size_t>(j);
    }
    return static_cast<std::size_t>(last);
  };
  HardNegatives out;
  out.text_for_video.reserve(n);
  out.video_for_text.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.text_for_video.push_back(
        draw([&](Eigen::Index j) { return similarity(j, i); }, i));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    out.video_for_text.push_back(
        draw([&](Eigen::Index k) { return similarity(i, k); }, i));
  }
  return out;
}

HeadGradients VtmLoss(const Matrix& texts, const Matrix& videos,
                      const VtmHeadParams& params,
                      const HardNegatives& negatives, Reduction reduction) {
  RequireSameDim(texts, videos, "vtm");
  RequireSameRows(texts, videos, "vtm");
  ValidateEmbeddings(texts, "text");
  ValidateEmbeddings(videos, "video");
  RequireHead(params, texts.cols());
  const Eigen::Index n = texts.rows();
  if (negatives.text_for_video.size() != static_cast<std::size_t>(n) ||
      negatives.video_for_text.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "negative index lists do not match the batch size");
  }
  HeadGradients out;
  out.grad_w = Vector::Zero(texts.cols());
  out.grad_texts = Matrix::Zero(n, texts.cols());
  out.grad_videos = Matrix::Zero(n, texts.cols());
  const double scale = Scale(reduction, 3.0 * static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto tj = static_cast<Eigen::Index>(negatives.text_for_video[i]);
    const auto vk = static_cast<Eigen::Index>(negatives.video_for_text[i]);
    if (tj >= n || vk >= n) {
      throw Error(ErrorCode::kIndexOutOfRange, "negative index outside batch");
    }
    AccumulateHeadTerm(texts, i, videos, i, params, true, scale, &out,
                       &out.grad_texts);
    AccumulateHeadTerm(texts, tj, videos, i, params, false, scale, &out,
                       &out.grad_texts);
    AccumulateHeadTerm(texts, i, videos, vk, params, false, scale, &out,
                       &out.grad_texts);
  }
  return out;
}

HeadGradients NegVtmLoss(const NegBatch& batch, const VtmHeadParams& params,
                         Reduction reduction) {
  batch.Validate();
  RequireHead(params, batch.texts.cols());
  const Eigen::Index n = batch.texts.rows();
  const Eigen::Index d = batch.texts.cols();
  HeadGradients out;
  out.grad_w = Vector::Zero(d);
  out.grad_texts = Matrix::Zero(n, d);
  out.grad_neg_texts = Matrix::Zero(n, d);
  out.grad_videos = Matrix::Zero(n, d);
  const double scale = Scale(reduction, static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    AccumulateHeadTerm(batch.neg_texts, i, batch.videos, i, params, false,
                       scale, &out, &out.grad_neg_texts);
  }
  return out;
}

double FiniteDiffCheck(const std::function<double(const Vector&)>& f,
                       const Vector& point, const Vector& analytic,
                       double eps) {
  if (!(eps >= 1e-7 && eps <= 1e-3)) {
    throw Error(ErrorCode::kRejectedEps,
                "finite-difference step " + std::to_string(eps) +
                    " outside [1e-7, 1e-3]");
  }
  if (analytic.size() != point.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "gradient and point sizes differ");
  }
  double worst = 0.0;
  Vector x = point;
  for (Eigen::Index k = 0; k < point.size(); ++k) {
    x(k) = point(k) + eps;
    const double up = f(x);
    x(k) = point(k) - eps;
    const double down = f(x);
    x(k) = point(k);
    const double numeric = (up - down) / (2.0 * eps);
    const double denom =
        std::max({std::abs(analytic(k)), std::abs(numeric), 1e-12});
    worst = std::max(worst, std::abs(analytic(k) - numeric) / denom);
  }
  return worst;
}

namespace {

// Packs matrices and vectors end to end (column-major).
class Packer {
 public:
  template <typename M>
  Packer& Add(const M& m) {
    parts_.push_back(Eigen::Map<const Vector>(m.data(), m.size()));
    total_ += m.size();
    return *this;
  }
  Vector Done() const {
    Vector out(total_);
    Eigen::Index at = 0;
    for (const auto& p : parts_) {
      out.segment(at, p.size()) = p;
      at += p.size();
    }
    return out;
  }

 private:
  std::vector<Vector> parts_;
  Eigen::Index total_ = 0;
};

// Reads consecutive blocks back out of a packed vector.
class Unpacker {
 public:
  explicit Unpacker(const Vector& v) : v_(v) {}
  Matrix Take(Eigen::Index rows, Eigen::Index cols) {
    Matrix m = Eigen::Map<const Matrix>(v_.data() + at_, rows, cols);
    at_ += rows * cols;
    return m;
  }
  Vector TakeVector(Eigen::Index n) {
    Vector out = v_.segment(at_, n);
    at_ += n;
    return out;
  }

 private:
  const Vector& v_;
  Eigen::Index at_ = 0;
};

Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, double scale,
                    Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = scale * rng.Normal();
  }
  return m;
}

}  // namespace

std::vector<GradientCheck> CheckAllGradients(int batch, int dim, double sigma,
                                             std::uint64_t seed, double eps) {
  if (batch < 2 || dim < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "gradient checks need batch >= 2 and dim >= 2");
  }
  Rng rng(seed);
  const Eigen::Index b = batch;
  const Eigen::Index d = dim;
  NegBatch nb;
  nb.texts = RandomMatrix(b, d, 1.0, rng);
  nb.neg_texts = RandomMatrix(b, d, 1.0, rng);
  nb.videos = RandomMatrix(b, d, 1.0, rng);
  VtmHeadParams head;
  head.w = RandomMatrix(d, 1, 1.0 / std::sqrt(static_cast<double>(d)), rng);
  head.b = RandomMatrix(2, 1, 1.0, rng);
  const HardNegatives negatives =
      SampleHardNegatives(Similarity(nb.texts, nb.videos, sigma), rng);

  std::vector<GradientCheck> out;
  {
    const PairGradients g = VtcLoss(nb.texts, nb.videos, sigma);
    const Vector x = Packer().Add(nb.texts).Add(nb.videos).Done();
    const Vector a = Packer().Add(g.grad_texts).Add(g.grad_videos).Done();
    auto f = [&](const Vector& p) {
      Unpacker u(p);
      const Matrix t = u.Take(b, d);
      const Matrix v = u.Take(b, d);
      return VtcLoss(t, v, sigma).loss;
    };
    out.push_back({"vtc", g.loss, FiniteDiffCheck(f, x, a, eps)});
  }
  {
    const NegGradients g = NegVtcLoss(nb, sigma);
    const Vector x =
        Packer().Add(nb.texts).Add(nb.neg_texts).Add(nb.videos).Done();
    const Vector a = Packer()
                         .Add(g.grad_texts)
                         .Add(g.grad_neg_texts)
                         .Add(g.grad_videos)
                         .Done();
    auto f = [&](const Vector& p) {
      Unpacker u(p);
      NegBatch q;
      q.texts = u.Take(b, d);
      q.neg_texts = u.Take(b, d);
      q.videos = u.Take(b, d);
      return NegVtcLoss(q, sigma).loss;
    };
    out.push_back({"neg_vtc", g.loss, FiniteDiffCheck(f, x, a, eps)});
  }
  {
    const HeadGradients g = VtmLoss(nb.texts, nb.videos, head, negatives);
    const Vector x =
        Packer().Add(nb.texts).Add(nb.videos).Add(head.w).Add(head.b).Done();
    const Vector a = Packer()
                         .Add(g.grad_texts)
                         .Add(g.grad_videos)
                         .Add(g.grad_w)
                         .Add(g.grad_b)
                         .Done();
    auto f = [&](const Vector& p) {
      Unpacker u(p);
      const Matrix t = u.Take(b, d);
      const Matrix v = u.Take(b, d);
      VtmHeadParams h;
      h.w = u.TakeVector(d);
      h.b = u.TakeVector(2);
      return VtmLoss(t, v, h, negatives).loss;
    };
    out.push_back({"vtm", g.loss, FiniteDiffCheck(f, x, a, eps)});
  }
  {
    const HeadGradients g = NegVtmLoss(nb, head);
    const Vector x = Packer()
                         .Add(nb.neg_texts)
                         .Add(nb.videos)
                         .Add(head.w)
                         .Add(head.b)
                         .Done();
    const Vector a = Packer()
                         .Add(g.grad_neg_texts)
                         .Add(g.grad_videos)
                         .Add(g.grad_w)
                         .Add(g.grad_b)
                         .Done();
    auto f = [&](const Vector& p) {
      Unpacker u(p);
      NegBatch q;
      q.texts = nb.texts;
      q.neg_texts = u.Take(b, d);
      q.videos = u.Take(b, d);
      VtmHeadParams h;
      h.w = u.TakeVector(d);
      h.b = u.TakeVector(2);
      return NegVtmLoss(q, h).loss;
    };
    out.push_back({"neg_vtm", g.loss, FiniteDiffCheck(f, x, a, eps)});
  }
  return out;
}

const char* ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kVtc: return "vtc";
    case Objective::kVtm: return "vtm";
    case Objective::kNegVtc: return "neg_vtc";
    case Objective::kNegVtm: return "neg_vtm";
  }
  return "?";
}

bool ParseObjective(const std::string& name, Objective* out) {
  for (Objective o : {Objective::kVtc, Objective::kVtm, Objective::kNegVtc,
                      Objective::kNegVtm}) {
    if (name == ObjectiveName(o)) {
      *out = o;
      return true;
    }
  }
  return false;
}

std::vector<ToyStep> ToyTrain(const ToyTrainConfig& cfg) {
  if (cfg.batch < 2 || cfg.dim < 2 || cfg.steps < 0 || !(cfg.lr > 0.0) ||
      !std::isfinite(cfg.lr)) {
    throw Error(ErrorCode::kInvalidArgument,
                "toy training needs batch >= 2, dim >= 2, steps >= 0, lr > 0");
  }
  RequireSigma(cfg.sigma);
  Rng rng(cfg.seed);
  const Eigen::Index b = cfg.batch;
  const Eigen::Index d = cfg.dim;
  Matrix texts = RandomMatrix(b, d, 1.0, rng);
  Matrix videos = texts + RandomMatrix(b, d, 0.5, rng);
  Matrix offsets = RandomMatrix(b, d, cfg.offset_scale, rng);
  VtmHeadParams head;
  head.w = RandomMatrix(d, 1, cfg.head_scale, rng);
  Rng sampler(DeriveSeed(cfg.seed, "toy-train-negatives", 0));

  auto has = [&](Objective o) { return cfg.objectives.count(o) != 0; };
  auto diverged = [](int step, const std::string& what) {
    return Error(ErrorCode::kDivergenceDetected,
                 what + " became non-finite at step " + std::to_string(step));
  };

  std::vector<ToyStep> trajectory;
  trajectory.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  for (int step = 0; step <= cfg.steps; ++step) {
    if (!texts.allFinite() || !videos.allFinite() || !offsets.allFinite() ||
        !head.w.allFinite() || !head.b.allFinite()) {
      throw diverged(step, "parameters");
    }
    NegBatch nb{texts, texts + offsets, videos};
    double loss = 0.0;
    Matrix gt = Matrix::Zero(b, d);
    Matrix gv = Matrix::Zero(b, d);
    Matrix gn = Matrix::Zero(b, d);
    Vector gw = Vector::Zero(d);
    Eigen::Vector2d gb = Eigen::Vector2d::Zero();
    try {
      if (has(Objective::kVtc)) {
        const PairGradients g = VtcLoss(texts, videos, cfg.sigma);
        loss += g.loss;
        gt += g.grad_texts;
        gv += g.grad_videos;
      }
      if (has(Objective::kVtm)) {
        const HardNegatives negatives =
            SampleHardNegatives(Similarity(texts, videos, cfg.sigma), sampler);
        const HeadGradients g = VtmLoss(texts, videos, head, negatives);
        loss += g.loss;
        gt += g.grad_texts;
        gv += g.grad_videos;
        gw += g.grad_w;
        gb += g.grad_b;
      }
      if (has(Objective::kNegVtc)) {
        const NegGradients g = NegVtcLoss(nb, cfg.sigma);
        loss += g.loss;
        gt += g.grad_texts;
        gn += g.grad_neg_texts;
        gv += g.grad_videos;
      }
      if (has(Objective::kNegVtm)) {
        const HeadGradients g = NegVtmLoss(nb, head);
        loss += g.loss;
        gn += g.grad_neg_texts;
        gv += g.grad_videos;
        gw += g.grad_w;
        gb += g.grad_b;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidArgument) {
        throw diverged(step, std::string("embeddings (") + e.what() + ")");
      }
      throw;
    }
    if (!std::isfinite(loss)) throw diverged(step, "loss");

    double margin = 0.0;
    for (Eigen::Index i = 0; i < b; ++i) {
      const Vector v = videos.row(i).transpose();
      margin += Sigmoid(HeadLogit(texts.row(i).transpose(), v, head)) -
                Sigmoid(HeadLogit(nb.neg_texts.row(i).transpose(), v, head));
    }
    trajectory.push_back({step, loss, margin / static_cast<double>(b)});
    if (step == cfg.steps) break;

    texts -= cfg.lr * (gt + gn);
    offsets -= cfg.lr * gn;
    videos -= cfg.lr * gv;
    head.w -= cfg.lr * gw;
    head.b -= cfg.lr * gb;
  }
  return trajectory;
}

std::vector<double> SmoothedMargins(const std::vector<ToyStep>& trajectory,
                                    std::size_t window, std::size_t stride) {
  std::vector<double> out;
  if (window == 0 || stride == 0) return out;
  for (std::size_t end = window; end <= trajectory.size(); end += stride) {
    double sum = 0.0;
    for (std::size_t i = end - window; i < end; ++i) sum += trajectory[i].margin;
    out.push_back(sum / static_cast<double>(window));
  }
  return out;
}

}  // namespace navero::loss
