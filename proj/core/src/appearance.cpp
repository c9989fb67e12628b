#include <matrack/appearance.hpp>

#include <algorithm>
#include <cmath>

namespace matrack {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clamped_cos(double dot) { return std::clamp(dot, -1.0, 1.0); }
}  // namespace

Feature::Feature(Eigen::VectorXd raw) : v_(std::move(raw)) {
    if (v_.size() == 0 || !v_.allFinite()) {
        throw InvalidInputError("feature must be non-empty and finite");
    }
    const double norm = v_.norm();
    if (norm <= 0.0) {
        throw InvalidInputError("feature must have positive norm");
    }
    v_ /= norm;
}

double cosine(const Feature& f, const Feature& g) {
    if (f.dim() != g.dim()) {
        throw InvalidInputError("feature dimensions differ");
    }
    return clamped_cos(f.values().dot(g.values()));
}

ScoreMatrix appearance_matrix(const std::vector<Feature>& det_feats,
                              const std::vector<Feature>& track_feats) {
    ScoreMatrix m(static_cast<Eigen::Index>(det_feats.size()),
                  static_cast<Eigen::Index>(track_feats.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) = cosine(det_feats[i], track_feats[j]);
        }
    }
    return m;
}

UniformityStats uniformity(const std::vector<Feature>& det_feats) {
    if (det_feats.empty()) {
        throw InvalidInputError("uniformity requires at least one feature");
    }
    const Eigen::Index d = det_feats.front().dim();
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
    for (const Feature& f : det_feats) {
        if (f.dim() != d) throw InvalidInputError("feature dimensions differ");
        mu += f.values();
    }
    mu /= static_cast<double>(det_feats.size());

    const double mu_norm = mu.norm();
    if (mu_norm <= 0.0) {
        throw InvalidInputError("mean feature has zero norm");
    }
    double acc = 0.0;
    for (const Feature& f : det_feats) {
        acc += clamped_cos(f.values().dot(mu) / mu_norm);
    }
    UniformityStats stats;
    stats.mu = std::move(mu);
    stats.mu_det = acc / static_cast<double>(det_feats.size());
    return stats;
}

AdaptiveWeights adaptive_weights(double mu_det, double theta_deg, bool clamp) {
    if (!(theta_deg > 0.0 && theta_deg < 90.0)) {
        throw ConfigError("theta must lie in (0, 90) degrees");
    }
    if (!(mu_det >= -1.0 && mu_det <= 1.0)) {
        throw InvalidInputError("mu_det must lie in [-1, 1]");
    }
    const double denom = 1.0 - std::cos(theta_deg * kPi / 180.0);
    double w_a = (1.0 - mu_det) / denom;
    if (clamp) w_a = std::clamp(w_a, 0.0, 1.0);
    return AdaptiveWeights{w_a, 2.0 - w_a};
}

Feature ema_update(const Feature& track_feat, const Feature& det_feat, double alpha_ema) {
    if (!(alpha_ema >= 0.0 && alpha_ema <= 1.0)) {
        throw InvalidInputError("alpha_ema must lie in [0, 1]");
    }
    Eigen::VectorXd blended =
        alpha_ema * track_feat.values() + (1.0 - alpha_ema) * det_feat.values();
    return Feature(std::move(blended));  // renormalizes; rejects zero norm
}

}  // namespace matrack
