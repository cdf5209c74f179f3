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

#ifndef NAVERO_LOSS_LAB_H_
#define NAVERO_LOSS_LAB_H_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "navero/rng.h"

namespace navero::loss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultSigma = 0.07;

enum class Reduction { kMean, kSum };

// Checks an embedding batch (rows are samples): at least one row, at least
// two columns, finite entries, every row norm >= 1e-8. Throws
// InvalidArgument naming `role`.
void ValidateEmbeddings(const Matrix& batch, const char* role);

// C[i][j] = cos(texts_i, videos_j).
Matrix CosineMatrix(const Matrix& texts, const Matrix& videos);

// S[i][j] = exp(cos(texts_i, videos_j) / sigma). Throws DimensionMismatch or
// NonPositiveSigma. Computed from the log-domain values C / sigma, which are
// what the losses consume.
Matrix Similarity(const Matrix& texts, const Matrix& videos, double sigma);

struct PairGradients {
  double loss = 0.0;
  Matrix grad_texts;
  Matrix grad_videos;
};

// Symmetric contrastive loss, minimized form:
//   L = -(1/B) sum_i [ log softmax_j(S_ij)[i] + log softmax_k(S_ki)[i] ].
// Texts and videos must have the same number of rows.
PairGradients VtcLoss(const Matrix& texts, const Matrix& videos, double sigma,
                      Reduction reduction = Reduction::kMean);

// Value of the same loss from a precomputed similarity matrix. Throws
// NonSquare; entries must be positive and finite.
double VtcLossFromSimilarity(const Matrix& similarity,
                             Reduction reduction = Reduction::kMean);

// Triples (T_i, T_i^neg, V_i), one row each.
struct NegBatch {
  Matrix texts;
  Matrix neg_texts;
  Matrix videos;

  // Throws DimensionMismatch on inconsistent shapes.
  void Validate() const;
};

struct NegGradients {
  double loss = 0.0;
  Matrix grad_texts;
  Matrix grad_neg_texts;
  Matrix grad_videos;
};

// L = -(1/B) sum_i log( S(T_i,V_i) / (S(T_i,V_i) + S(T_i^neg,V_i)) ).
NegGradients NegVtcLoss(const NegBatch& batch, double sigma,
                        Reduction reduction = Reduction::kMean);

// Two-class matching head over the elementwise product of raw embeddings:
//   logits = [ w . (t * v) + b[0], b[1] ],  index 0 = match.
struct VtmHeadParams {
  Vector w;
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
};

Eigen::Vector2d VtmHead(const Vector& text, const Vector& video,
                        const VtmHeadParams& params);

struct HardNegatives {
  std::vector<std::size_t> text_for_video;  // j != i, drawn prop. to S[j][i]
  std::vector<std::size_t> video_for_text;  // k != i, drawn prop. to S[i][k]
};

// Throws BatchTooSmall for B < 2, NonSquare for a non-square matrix.
// Draws text_for_video[0..B) first, then video_for_text[0..B), one
// UniformReal() per draw.
HardNegatives SampleHardNegatives(const Matrix& similarity, Rng& rng);

struct HeadGradients {
  double loss = 0.0;
  Vector grad_w;
  Eigen::Vector2d grad_b = Eigen::Vector2d::Zero();
  Matrix grad_texts;
  Matrix grad_videos;
  Matrix grad_neg_texts;  // NegVtmLoss only
};

// Cross-entropy with label match on (T_i, V_i) and no-match on
// (T_text_for_video[i], V_i) and (T_i, V_video_for_text[i]); 3B terms,
// averaged under Reduction::kMean.
HeadGradients VtmLoss(const Matrix& texts, const Matrix& videos,
                      const VtmHeadParams& params,
                      const HardNegatives& negatives,
                      Reduction reduction = Reduction::kMean);

// Cross-entropy with label no-match on every (T_i^neg, V_i).
HeadGradients NegVtmLoss(const NegBatch& batch, const VtmHeadParams& params,
                         Reduction reduction = Reduction::kMean);

// Largest |a - n| / max(|a|, |n|, 1e-12) over coordinates, where n is the
// central difference (f(x + eps e_k) - f(x - eps e_k)) / (2 eps). Throws
// RejectedEps unless eps lies in [1e-7, 1e-3].
double FiniteDiffCheck(const std::function<double(const Vector&)>& f,
                       const Vector& point, const Vector& analytic,
                       double eps);

struct GradientCheck {
  std::string loss;  // "vtc", "neg_vtc", "vtm", "neg_vtm"
  double value = 0.0;
  double max_rel_error = 0.0;
};

// Draws a random instance (Gaussian embeddings and head) from `seed` and
// checks every loss against finite differences.
std::vector<GradientCheck> CheckAllGradients(int batch, int dim, double sigma,
                                             std::uint64_t seed, double eps);

enum class Objective { kVtc, kVtm, kNegVtc, kNegVtm };

const char* ObjectiveName(Objective objective);
// Accepts "vtc", "vtm", "neg_vtc", "neg_vtm".
bool ParseObjective(const std::string& name, Objective* out);

struct ToyTrainConfig {
  int batch = 8;
  int dim = 16;
  int steps = 500;
  double lr = 0.05;
  double sigma = 0.1;
  std::uint64_t seed = 3;
  double offset_scale = 0.1;  // std of the initial negative offsets E
  double head_scale = 0.5;    // std of the initial head weights w
  std::set<Objective> objectives = {Objective::kVtc, Objective::kVtm,
                                    Objective::kNegVtm};
};

struct ToyStep {
  int step = 0;
  double loss = 0.0;
  double margin = 0.0;  // mean(p_match(T_i, V_i) - p_match(T_i^neg, V_i))
};

// Plain gradient descent on texts T, videos V, negative offsets E and the
// head, with negatives T^neg = T + E. Initialization from `seed`:
// T ~ N(0, 1), V = T + 0.5 N(0, 1), E = offset_scale N(0, 1),
// w = head_scale N(0, 1), b = 0. Hard negatives for vtm are resampled every
// step from a substream of `seed`.
// Returns steps + 1 entries; entry s holds the loss and margin before update
// s. Throws DivergenceDetected when the loss or a parameter stops being
// finite.
std::vector<ToyStep> ToyTrain(const ToyTrainConfig& cfg);

// Mean margin over windows of `window` consecutive entries; the first
// window starts at entry 0 and each next one `stride` entries later.
std::vector<double> SmoothedMargins(const std::vector<ToyStep>& trajectory,
                                    std::size_t window, std::size_t stride);

}  // namespace navero::loss

#endif  // NAVERO_LOSS_LAB_H_
