#include <matrack/mot_io.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace matrack {

std::string ReferAnnotation::general_prompt() const { return object; }

std::string ReferAnnotation::specific_prompt() const {
    std::string s;
    for (const auto& a : attributes) {
        if (!a.empty()) s += a + " ";
    }
    s += object;
    return s;
}

namespace mot_io {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string_view trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string_view(s).substr(b, e - b);
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    long line) {
    const std::string_view sv = trimmed(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
        throw ParseError(path.string(), line, "bad numeric field '" + field + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(path.string(), line, "non-finite value '" + field + "'");
    }
    return value;
}

long parse_long(const std::string& field, const std::filesystem::path& path, long line) {
    const std::string_view sv = trimmed(field);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
        throw ParseError(path.string(), line, "bad integer field '" + field + "'");
    }
    return value;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

bool blank(const std::string& line) { return trimmed(line).empty(); }

void append_box_2dp(std::string& out, const BBox& b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f,%.2f,%.2f", b.x, b.y, b.w, b.h);
    out += buf;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Header line of the sidecar formats: `D=<dim> count=<n>`.
std::pair<int, long> parse_sidecar_header(const std::string& line,
                                          const std::filesystem::path& path) {
    int dim = -1;
    long count = -1;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok.rfind("D=", 0) == 0) {
            dim = static_cast<int>(parse_long(tok.substr(2), path, 1));
        } else if (tok.rfind("count=", 0) == 0) {
            count = parse_long(tok.substr(6), path, 1);
        } else {
            throw SchemaError(path.string() + ": unknown header token '" + tok + "'");
        }
    }
    if (dim < 1 || count < 0) {
        throw SchemaError(path.string() + ": header must declare D=<dim> count=<n>");
    }
    return {dim, count};
}

}  // namespace

DetectionFile read_detections(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    DetectionFile out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto f = split_csv(line);
        if (f.size() < 7) {
            throw ParseError(path.string(), lineno,
                             "expected at least 7 columns (frame,id,x,y,w,h,conf)");
        }
        const long frame = parse_long(f[0], path, lineno);
        if (frame < 1) {
            throw ParseError(path.string(), lineno, "frame index must be >= 1");
        }
        parse_long(f[1], path, lineno);  // id column, ignored for detections
        Detection d;
        d.box = BBox{parse_double(f[2], path, lineno), parse_double(f[3], path, lineno),
                     parse_double(f[4], path, lineno), parse_double(f[5], path, lineno)};
        d.conf = parse_double(f[6], path, lineno);
        if (d.box.w <= 0.0 || d.box.h <= 0.0) {
            ++out.skipped_lines;
            continue;
        }
        out.frames[static_cast<int>(frame)].push_back(std::move(d));
    }
    return out;
}

FrameTracks read_tracks(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    FrameTracks out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto f = split_csv(line);
        if (f.size() < 6) {
            throw ParseError(path.string(), lineno,
                             "expected at least 6 columns (frame,id,x,y,w,h)");
        }
        const long frame = parse_long(f[0], path, lineno);
        if (frame < 1) {
            throw ParseError(path.string(), lineno, "frame index must be >= 1");
        }
        const long id = parse_long(f[1], path, lineno);
        const BBox box{parse_double(f[2], path, lineno), parse_double(f[3], path, lineno),
                       parse_double(f[4], path, lineno), parse_double(f[5], path, lineno)};
        if (box.w <= 0.0 || box.h <= 0.0) {
            throw ParseError(path.string(), lineno, "non-positive box extent");
        }
        out[static_cast<int>(frame)].emplace_back(static_cast<int>(id), box);
    }
    return out;
}

void write_results(const std::filesystem::path& path, const FrameTracks& tracks) {
    std::ofstream out = open_for_write(path);
    for (const auto& [frame, rows] : tracks) {
        auto sorted = rows;
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [id, box] : sorted) {
            if (id <= 0) {
                throw InvalidInputError("result ids must be positive");
            }
            std::string line = std::to_string(frame) + "," + std::to_string(id) + ",";
            append_box_2dp(line, box);
            line += ",1,-1,-1,-1\n";
            out << line;
        }
    }
    if (!out) throw IoError("write failed for " + path.string());
}

void write_detections(const std::filesystem::path& path, const FrameDetections& dets) {
    std::ofstream out = open_for_write(path);
    for (const auto& [frame, rows] : dets) {
        for (const Detection& d : rows) {
            std::string line = std::to_string(frame) + ",-1,";
            append_box_2dp(line, d.box);
            char conf[32];
            std::snprintf(conf, sizeof(conf), "%.6f", d.conf);
            line += std::string(",") + conf + ",-1,-1,-1\n";
            out << line;
        }
    }
    if (!out) throw IoError("write failed for " + path.string());
}

ReferAnnotation read_refer_annotation(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string(), 0, std::string("invalid JSON: ") + e.what());
    }

    auto string_list = [&](const nlohmann::json& node,
                           const char* key) -> std::vector<std::string> {
        // Accepts either a plain string or a list of strings.
        if (node.is_string()) return {node.get<std::string>()};
        if (node.is_array()) {
            std::vector<std::string> out;
            for (const auto& item : node) {
                if (!item.is_string()) {
                    throw SchemaError(path.string() + ": '" + key +
                                      "' entries must be strings");
                }
                out.push_back(item.get<std::string>());
            }
            return out;
        }
        throw SchemaError(path.string() + ": '" + key + "' must be a string or list");
    };

    for (const char* key : {"object", "attributes", "tracks"}) {
        if (!j.contains(key)) {
            throw SchemaError(path.string() + ": missing required key '" + key + "'");
        }
    }

    ReferAnnotation ann;
    if (!j["object"].is_string() || j["object"].get<std::string>().empty()) {
        throw SchemaError(path.string() + ": 'object' must be a nonempty string");
    }
    ann.object = j["object"].get<std::string>();
    ann.attributes = string_list(j["attributes"], "attributes");
    if (j.contains("other_attributes")) {
        ann.other_attributes = string_list(j["other_attributes"], "other_attributes");
    }
    if (!j["tracks"].is_string()) {
        throw SchemaError(path.string() + ": 'tracks' must be a string path");
    }
    ann.tracks = j["tracks"].get<std::string>();
    return ann;
}

FrameFeatures read_features(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaError(path.string() + ": missing header line");
    }
    const auto [dim, count] = parse_sidecar_header(line, path);

    std::map<int, std::map<long, Feature>> staged;
    long rows = 0;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto f = split_csv(line);
        if (static_cast<int>(f.size()) != 2 + dim) {
            throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 2+" + std::to_string(dim) + " fields, got " +
                              std::to_string(f.size()));
        }
        const long frame = parse_long(f[0], path, lineno);
        const long det_index = parse_long(f[1], path, lineno);
        if (frame < 1 || det_index < 0) {
            throw ParseError(path.string(), lineno, "bad frame or detection index");
        }
        Eigen::VectorXd v(dim);
        for (int k = 0; k < dim; ++k) {
            v(k) = parse_double(f[2 + k], path, lineno);
        }
        const bool inserted =
            staged[static_cast<int>(frame)].emplace(det_index, Feature(std::move(v))).second;
        if (!inserted) {
            throw AlignmentError(path.string() + ":" + std::to_string(lineno) +
                                 ": duplicate feature row for frame " +
                                 std::to_string(frame) + " detection " +
                                 std::to_string(det_index));
        }
        ++rows;
    }
    if (rows != count) {
        throw SchemaError(path.string() + ": header declares count=" +
                          std::to_string(count) + " but file has " +
                          std::to_string(rows) + " rows");
    }

    FrameFeatures out;
    for (auto& [frame, by_index] : staged) {
        std::vector<Feature>& dst = out[frame];
        long expect = 0;
        for (auto& [idx, feat] : by_index) {
            if (idx != expect) {
                throw AlignmentError(path.string() + ": frame " + std::to_string(frame) +
                                     " feature indices are not contiguous from 0");
            }
            dst.push_back(std::move(feat));
            ++expect;
        }
    }
    return out;
}

void write_features(const std::filesystem::path& path, const FrameFeatures& feats) {
    long count = 0;
    int dim = 0;
    for (const auto& [frame, rows] : feats) {
        count += static_cast<long>(rows.size());
        if (!rows.empty()) dim = static_cast<int>(rows.front().dim());
    }
    std::ofstream out = open_for_write(path);
    out << "D=" << dim << " count=" << count << "\n";
    for (const auto& [frame, rows] : feats) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << frame << "," << i;
            for (Eigen::Index k = 0; k < rows[i].dim(); ++k) {
                out << "," << format_full(rows[i].values()(k));
            }
            out << "\n";
        }
    }
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<ProposalRecord> read_proposals(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaError(path.string() + ": missing header line");
    }
    const auto [dim, count] = parse_sidecar_header(line, path);

    std::vector<ProposalRecord> out;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto f = split_csv(line);
        if (static_cast<int>(f.size()) != 7 + dim) {
            throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 7+" + std::to_string(dim) + " fields, got " +
                              std::to_string(f.size()));
        }
        const long frame = parse_long(f[0], path, lineno);
        if (frame < 1) {
            throw ParseError(path.string(), lineno, "frame index must be >= 1");
        }
        const BBox box{parse_double(f[1], path, lineno), parse_double(f[2], path, lineno),
                       parse_double(f[3], path, lineno), parse_double(f[4], path, lineno)};
        const double s_spec = parse_double(f[5], path, lineno);
        const double s_gen = parse_double(f[6], path, lineno);
        if (s_spec < 0.0 || s_spec > 1.0 || s_gen < 0.0 || s_gen > 1.0) {
            throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                              ": alignment scores must lie in [0, 1]");
        }
        require_valid(box);
        Eigen::VectorXd v(dim);
        for (int k = 0; k < dim; ++k) {
            v(k) = parse_double(f[7 + k], path, lineno);
        }
        out.push_back(ProposalRecord{static_cast<int>(frame),
                                     Proposal{box, s_spec, s_gen, Feature(std::move(v))}});
    }
    if (static_cast<long>(out.size()) != count) {
        throw SchemaError(path.string() + ": header declares count=" +
                          std::to_string(count) + " but file has " +
                          std::to_string(out.size()) + " rows");
    }
    return out;
}

void write_proposals(const std::filesystem::path& path,
                     const std::vector<ProposalRecord>& records) {
    int dim = records.empty() ? 1 : static_cast<int>(records.front().proposal.feature.dim());
    std::ofstream out = open_for_write(path);
    out << "D=" << dim << " count=" << records.size() << "\n";
    for (const ProposalRecord& r : records) {
        const Proposal& p = r.proposal;
        out << r.frame << "," << format_full(p.bbox.x) << "," << format_full(p.bbox.y)
            << "," << format_full(p.bbox.w) << "," << format_full(p.bbox.h) << ","
            << format_full(p.s_spec) << "," << format_full(p.s_gen);
        for (Eigen::Index k = 0; k < p.feature.dim(); ++k) {
            out << "," << format_full(p.feature.values()(k));
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed for " + path.string());
}

FrameDetections attach_features(FrameDetections dets, const FrameFeatures& feats) {
    for (const auto& [frame, rows] : feats) {
        auto it = dets.find(frame);
        if (it == dets.end()) {
            throw AlignmentError("feature file references frame " +
                                 std::to_string(frame) + " absent from detections");
        }
        if (rows.size() != it->second.size()) {
            throw AlignmentError("frame " + std::to_string(frame) + " has " +
                                 std::to_string(it->second.size()) + " detections but " +
                                 std::to_string(rows.size()) + " feature rows");
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            it->second[i].feature = rows[i];
        }
    }
    return dets;
}

}  // namespace mot_io
}  // namespace matrack
