#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <matrack/geometry.hpp>
#include <matrack/qgm.hpp>

namespace matrack {

/// One detector output: box, confidence, and (when a feature sidecar is
/// attached) the re-ID embedding.
struct Detection {
    BBox box;
    double conf = 1.0;
    std::optional<Feature> feature;
};

/// Frame index -> detections. File frame indices are 1-based; contiguous
/// coverage is not required.
using FrameDetections = std::map<int, std::vector<Detection>>;

/// Frame index -> (track id, box). Used for ground truth and results.
using FrameTracks = std::map<int, std::vector<std::pair<int, BBox>>>;

/// Frame index -> features aligned to detections by in-frame index.
using FrameFeatures = std::map<int, std::vector<Feature>>;

/// Refer-style sequence annotation: the bare object category, its visible
/// attributes, optional additional attributes, and the ground-truth path.
struct ReferAnnotation {
    std::string object;
    std::vector<std::string> attributes;
    std::vector<std::string> other_attributes;
    std::string tracks;

    /// The bare object name.
    std::string general_prompt() const;
    /// attributes + object ("red ball"); degenerates to the object name.
    std::string specific_prompt() const;
};

struct ProposalRecord {
    int frame = 0;
    Proposal proposal;
};

namespace mot_io {

struct DetectionFile {
    FrameDetections frames;
    int skipped_lines = 0;  ///< lines dropped for non-positive width/height
};

/// Reads `frame,id,x,y,w,h,conf,...` detection CSV. The id column is
/// ignored; columns past conf are ignored. Malformed numeric fields raise
/// ParseError with the line number; lines with w <= 0 or h <= 0 are skipped
/// and counted.
DetectionFile read_detections(const std::filesystem::path& path);

/// Reads `frame,id,x,y,w,h,...` ground-truth or result CSV (>= 6 columns).
FrameTracks read_tracks(const std::filesystem::path& path);

/// Writes `frame,id,x,y,w,h,1,-1,-1,-1` lines, boxes at fixed 2 decimals,
/// sorted by (frame, id). Ids must be positive.
void write_results(const std::filesystem::path& path, const FrameTracks& tracks);

/// Writes `frame,-1,x,y,w,h,conf,-1,-1,-1` detection lines, boxes at fixed
/// 2 decimals, in frame order.
void write_detections(const std::filesystem::path& path, const FrameDetections& dets);

ReferAnnotation read_refer_annotation(const std::filesystem::path& path);

/// Feature sidecar: header `D=<dim> count=<n>`, then `frame,det_index,v1..vD`
/// rows. Values are written with round-trip precision.
FrameFeatures read_features(const std::filesystem::path& path);
void write_features(const std::filesystem::path& path, const FrameFeatures& feats);

/// Proposal file: header `D=<dim> count=<n>`, then
/// `frame,x,y,w,h,s_spec,s_gen,v1..vD` rows.
std::vector<ProposalRecord> read_proposals(const std::filesystem::path& path);
void write_proposals(const std::filesystem::path& path,
                     const std::vector<ProposalRecord>& records);

/// Moves features into the matching detections. Enforces the 1:1 join:
/// every feature row must reference an existing detection, no duplicates,
/// and within a frame either every detection receives a feature or none.
FrameDetections attach_features(FrameDetections dets, const FrameFeatures& feats);

}  // namespace mot_io
}  // namespace matrack
