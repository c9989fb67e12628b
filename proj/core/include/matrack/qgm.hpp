#pragma once

#include <cstddef>
#include <vector>

#include <matrack/appearance.hpp>
#include <matrack/geometry.hpp>

namespace matrack {

/// Grounded detection proposal: box, per-prompt alignment scores reduced to
/// scalars, and the backbone visual feature used for query-guided matching.
struct Proposal {
    BBox bbox;
    double s_spec = 0.0;  ///< specific-prompt alignment score, [0, 1]
    double s_gen = 0.0;   ///< general-prompt alignment score, [0, 1]
    Feature feature;
};

struct FilterConfig {
    int kappa = 5;          ///< query count taken from the specific prompt
    double t_gen = 0.3;     ///< general-prompt score threshold (inclusive)
    double tau_sim = 0.85;  ///< query/candidate cosine cutoff (inclusive)
};

namespace qgm {

/// Indices of the min(kappa, |props|) proposals with highest s_spec, ordered
/// by descending score; equal scores keep input order. Throws on empty input.
std::vector<std::size_t> select_queries(const std::vector<Proposal>& props, int kappa);

/// Indices of all proposals with s_gen >= t_gen, in input order.
std::vector<std::size_t> select_candidates(const std::vector<Proposal>& props,
                                           double t_gen);

/// Queries plus every candidate whose best cosine similarity against any
/// query reaches tau_sim. Queries come first, then accepted candidates in
/// input order; a proposal serving as both appears once (by pool index).
/// Throws InvalidInputError when `queries` is empty.
std::vector<std::size_t> filter(const std::vector<Proposal>& props,
                                const std::vector<std::size_t>& queries,
                                const std::vector<std::size_t>& candidates,
                                double tau_sim);

/// select_queries + select_candidates + filter with config defaults.
std::vector<std::size_t> run(const std::vector<Proposal>& props,
                             const FilterConfig& cfg = {});

}  // namespace qgm
}  // namespace matrack
