#pragma once

#include <matrack/errors.hpp>

namespace matrack {

/// Axis-aligned box, top-left corner plus extent, sub-pixel coordinates.
struct BBox {
    double x = 0.0;  ///< left edge
    double y = 0.0;  ///< top edge
    double w = 0.0;  ///< width, > 0 for a valid box
    double h = 0.0;  ///< height, > 0 for a valid box
};

/// Center/area/aspect view of a box: (cx, cy, s = w*h, r = w/h).
/// Derived parameterization used by the motion model; files and the
/// public API stay in top-left form.
struct CenterForm {
    double cx = 0.0;
    double cy = 0.0;
    double s = 0.0;
    double r = 0.0;
};

bool bbox_valid(const BBox& b) noexcept;

/// Throws InvalidInputError unless b has finite fields and positive extent.
void require_valid(const BBox& b);

/// Intersection-over-union of two valid boxes, in [0, 1]. Boxes touching
/// only along an edge have zero intersection area and IoU 0.
double iou(const BBox& a, const BBox& b);

CenterForm center_form(const BBox& b);

/// Inverse of center_form. Requires s > 0 and r > 0.
BBox from_center_form(const CenterForm& c);

}  // namespace matrack
