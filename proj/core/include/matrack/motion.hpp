#pragma once

#include <Eigen/Dense>
#include <utility>

#include <matrack/geometry.hpp>

namespace matrack {

/// Noise scales of the constant-velocity box filter. Position and velocity
/// standard deviations are proportional to the box scale sqrt(s), following
/// the de-facto SORT-lineage constants.
struct MotionConfig {
    double std_weight_pos = 1.0 / 20.0;
    double std_weight_vel = 1.0 / 160.0;
    /// Multiplier on the velocity std at initialization; velocities start
    /// with a near-uninformative prior (uncertainty far above position's).
    double init_vel_factor = 1000.0;
    /// Floor applied to the area component before box conversion.
    double area_eps = 1e-6;
};

/// Constant-velocity filter state over (cx, cy, s, r, vcx, vcy, vs):
/// box center, area, aspect ratio and their rates. r has no velocity.
struct KalmanState {
    Eigen::Matrix<double, 7, 1> mean = Eigen::Matrix<double, 7, 1>::Zero();
    Eigen::Matrix<double, 7, 7> cov = Eigen::Matrix<double, 7, 7>::Identity();
};

namespace motion {

/// State with mean at the box's center form, zero velocities, and a
/// diagonal covariance scaled per `cfg`.
KalmanState init(const BBox& b, const MotionConfig& cfg = {});

/// One constant-velocity transition with additive process noise. Returns
/// the advanced state and the box view of the predicted mean (area floored
/// at cfg.area_eps before conversion).
std::pair<KalmanState, BBox> predict(const KalmanState& state,
                                     const MotionConfig& cfg = {});

/// Kalman correction with the box's center form as the measurement.
/// Joseph-form covariance update, re-symmetrized.
KalmanState update(const KalmanState& state, const BBox& obs,
                   const MotionConfig& cfg = {});

/// Observation-centric re-update across an occlusion gap.
///
/// `checkpoint` is the filter state saved at the last real observation.
/// Runs `gap` predict/update cycles along the straight line from
/// center_form(last_obs) to center_form(new_obs) in equal steps, the final
/// cycle using new_obs itself, so the returned state reflects new_obs as
/// the latest measurement with velocity recovered from the bridged path.
/// gap = 1 degenerates to a single predict + update(new_obs).
///
/// Throws InvalidInputError when gap < 1.
KalmanState oru_reupdate(const KalmanState& checkpoint, const BBox& last_obs,
                         const BBox& new_obs, int gap,
                         const MotionConfig& cfg = {});

/// Box view of the state mean (area floored at cfg.area_eps).
BBox state_box(const KalmanState& state, const MotionConfig& cfg = {});

}  // namespace motion
}  // namespace matrack
