#pragma once

#include <Eigen/Dense>
#include <vector>

#include <matrack/assignment.hpp>
#include <matrack/errors.hpp>

namespace matrack {

/// Re-ID embedding. Unit-normalized once on construction, so cosine
/// similarity reduces to a dot product.
class Feature {
public:
    /// Normalizes `raw` to unit Euclidean norm.
    /// Throws InvalidInputError on non-finite or zero-norm input.
    explicit Feature(Eigen::VectorXd raw);

    const Eigen::VectorXd& values() const noexcept { return v_; }
    Eigen::Index dim() const noexcept { return v_.size(); }

private:
    Eigen::VectorXd v_;
};

/// Frame-level appearance homogeneity: mu is the arithmetic mean of the
/// detection features, mu_det the mean cosine of each feature with mu.
/// mu_det -> 1 means the detections are visually indistinguishable.
struct UniformityStats {
    Eigen::VectorXd mu;
    double mu_det = 1.0;
};

/// Appearance/motion weights. Always sums to 2: weight taken from
/// appearance is redistributed to motion.
struct AdaptiveWeights {
    double w_a = 1.0;
    double w_m = 1.0;
};

/// Cosine of the angle between two features, clamped to [-1, 1].
double cosine(const Feature& f, const Feature& g);

/// M x N matrix of cosine similarities, rows = detections, cols = tracks.
/// Either list may be empty, giving a degenerate-dimension matrix.
ScoreMatrix appearance_matrix(const std::vector<Feature>& det_feats,
                              const std::vector<Feature>& track_feats);

/// Throws InvalidInputError when `det_feats` is empty or the mean feature
/// has zero norm (exactly antipodal inputs).
UniformityStats uniformity(const std::vector<Feature>& det_feats);

/// w_a = (1 - mu_det) / (1 - cos theta), clamped to [0, 1] unless `clamp`
/// is off; w_m = 2 - w_a. theta_deg must lie in (0, 90).
/// Unclamped mode can push w_a above 1 (and w_m below 1) when mu_det is
/// small; it exists for experimentation and voids the range invariants.
AdaptiveWeights adaptive_weights(double mu_det, double theta_deg, bool clamp = true);

/// Renormalized blend alpha_ema * track + (1 - alpha_ema) * det.
Feature ema_update(const Feature& track_feat, const Feature& det_feat, double alpha_ema);

}  // namespace matrack
