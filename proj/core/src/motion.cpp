#include <matrack/motion.hpp>

#include <algorithm>
#include <cmath>

namespace matrack {
namespace motion {
namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat47 = Eigen::Matrix<double, 4, 7>;

Mat7 transition() {
    Mat7 f = Mat7::Identity();
    f(0, 4) = 1.0;  // cx += vcx
    f(1, 5) = 1.0;  // cy += vcy
    f(2, 6) = 1.0;  // s  += vs
    return f;
}

Mat47 observation() {
    Mat47 h = Mat47::Zero();
    h.block<4, 4>(0, 0) = Mat4::Identity();
    return h;
}

double box_scale(double s, const MotionConfig& cfg) {
    return std::sqrt(std::max(s, cfg.area_eps));
}

Mat7 process_noise(double s, const MotionConfig& cfg) {
    const double l = box_scale(s, cfg);
    Vec7 std;
    std << cfg.std_weight_pos * l, cfg.std_weight_pos * l, cfg.std_weight_pos * l * l,
        1e-2, cfg.std_weight_vel * l, cfg.std_weight_vel * l, cfg.std_weight_vel * l * l;
    return std.array().square().matrix().asDiagonal();
}

Mat4 measurement_noise(double s, const MotionConfig& cfg) {
    const double l = box_scale(s, cfg);
    Vec4 std;
    std << cfg.std_weight_pos * l, cfg.std_weight_pos * l, cfg.std_weight_pos * l * l, 1e-1;
    return std.array().square().matrix().asDiagonal();
}

Vec4 measurement_of(const BBox& b) {
    const CenterForm c = center_form(b);
    Vec4 z;
    z << c.cx, c.cy, c.s, c.r;
    return z;
}

}  // namespace

KalmanState init(const BBox& b, const MotionConfig& cfg) {
    const CenterForm c = center_form(b);  // validates the box
    KalmanState st;
    st.mean << c.cx, c.cy, c.s, c.r, 0.0, 0.0, 0.0;

    const double l = box_scale(c.s, cfg);
    const double vf = cfg.init_vel_factor;
    Vec7 std;
    std << 2.0 * cfg.std_weight_pos * l, 2.0 * cfg.std_weight_pos * l,
        2.0 * cfg.std_weight_pos * l * l, 1e-2, vf * cfg.std_weight_vel * l,
        vf * cfg.std_weight_vel * l, vf * cfg.std_weight_vel * l * l;
    st.cov = std.array().square().matrix().asDiagonal();
    return st;
}

BBox state_box(const KalmanState& state, const MotionConfig& cfg) {
    CenterForm c{state.mean(0), state.mean(1), std::max(state.mean(2), cfg.area_eps),
                 state.mean(3)};
    return from_center_form(c);
}

std::pair<KalmanState, BBox> predict(const KalmanState& state, const MotionConfig& cfg) {
    static const Mat7 f = transition();
    KalmanState next;
    next.mean = f * state.mean;
    next.cov = f * state.cov * f.transpose() + process_noise(state.mean(2), cfg);
    next.cov = ((next.cov + next.cov.transpose()) / 2.0).eval();
    return {next, state_box(next, cfg)};
}

KalmanState update(const KalmanState& state, const BBox& obs, const MotionConfig& cfg) {
    static const Mat47 h = observation();
    const Vec4 z = measurement_of(obs);  // validates the box
    const Mat4 r = measurement_noise(state.mean(2), cfg);

    const Vec4 innovation = z - h * state.mean;
    const Mat4 s = h * state.cov * h.transpose() + r;
    const Eigen::Matrix<double, 7, 4> k =
        state.cov * h.transpose() * s.llt().solve(Mat4::Identity());

    KalmanState next;
    next.mean = state.mean + k * innovation;
    const Mat7 ikh = Mat7::Identity() - k * h;
    next.cov = ikh * state.cov * ikh.transpose() + k * r * k.transpose();
    next.cov = ((next.cov + next.cov.transpose()) / 2.0).eval();
    return next;
}

KalmanState oru_reupdate(const KalmanState& checkpoint, const BBox& last_obs,
                         const BBox& new_obs, int gap, const MotionConfig& cfg) {
    if (gap < 1) {
        throw InvalidInputError("oru_reupdate requires gap >= 1");
    }
    const CenterForm c0 = center_form(last_obs);
    const CenterForm c1 = center_form(new_obs);

    KalmanState st = checkpoint;
    for (int k = 1; k <= gap; ++k) {
        st = predict(st, cfg).first;
        if (k == gap) {
            st = update(st, new_obs, cfg);
        } else {
            const double t = static_cast<double>(k) / static_cast<double>(gap);
            const CenterForm mid{c0.cx + t * (c1.cx - c0.cx), c0.cy + t * (c1.cy - c0.cy),
                                 c0.s + t * (c1.s - c0.s), c0.r + t * (c1.r - c0.r)};
            st = update(st, from_center_form(mid), cfg);
        }
    }
    return st;
}

}  // namespace motion
}  // namespace matrack
