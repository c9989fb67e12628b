#include <matrack/geometry.hpp>

#include <algorithm>
#include <cmath>

namespace matrack {

bool bbox_valid(const BBox& b) noexcept {
    return std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) &&
           std::isfinite(b.h) && b.w > 0.0 && b.h > 0.0;
}

void require_valid(const BBox& b) {
    if (!bbox_valid(b)) {
        throw InvalidInputError("box must have finite fields and positive width/height");
    }
}

double iou(const BBox& a, const BBox& b) {
    require_valid(a);
    require_valid(b);

    const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
    const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
    const double inter = ix * iy;
    const double uni = a.w * a.h + b.w * b.h - inter;
    return inter <= 0.0 ? 0.0 : inter / uni;
}

CenterForm center_form(const BBox& b) {
    require_valid(b);
    return CenterForm{b.x + b.w / 2.0, b.y + b.h / 2.0, b.w * b.h, b.w / b.h};
}

BBox from_center_form(const CenterForm& c) {
    if (!(std::isfinite(c.cx) && std::isfinite(c.cy) && std::isfinite(c.s) &&
          std::isfinite(c.r)) ||
        c.s <= 0.0 || c.r <= 0.0) {
        throw InvalidInputError("center form must have finite fields and positive area/aspect");
    }
    const double w = std::sqrt(c.s * c.r);
    const double h = std::sqrt(c.s / c.r);
    return BBox{c.cx - w / 2.0, c.cy - h / 2.0, w, h};
}

}  // namespace matrack
