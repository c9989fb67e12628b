#include <matrack/qgm.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace matrack {
namespace qgm {

std::vector<std::size_t> select_queries(const std::vector<Proposal>& props, int kappa) {
    if (props.empty()) {
        throw InvalidInputError("query selection requires at least one proposal");
    }
    if (kappa < 1) {
        throw ConfigError("kappa must be >= 1");
    }
    std::vector<std::size_t> order(props.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return props[a].s_spec > props[b].s_spec;
    });
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(kappa)));
    return order;
}

std::vector<std::size_t> select_candidates(const std::vector<Proposal>& props,
                                           double t_gen) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (props[i].s_gen >= t_gen) kept.push_back(i);
    }
    return kept;
}

std::vector<std::size_t> filter(const std::vector<Proposal>& props,
                                const std::vector<std::size_t>& queries,
                                const std::vector<std::size_t>& candidates,
                                double tau_sim) {
    if (queries.empty()) {
        throw InvalidInputError("query-guided filtering requires a nonempty query set");
    }
    std::vector<std::size_t> out = queries;
    std::unordered_set<std::size_t> seen(queries.begin(), queries.end());
    for (std::size_t c : candidates) {
        if (seen.count(c)) continue;
        double best = -1.0;
        for (std::size_t q : queries) {
            best = std::max(best, cosine(props[c].feature, props[q].feature));
        }
        if (best >= tau_sim) {
            out.push_back(c);
            seen.insert(c);
        }
    }
    return out;
}

std::vector<std::size_t> run(const std::vector<Proposal>& props, const FilterConfig& cfg) {
    const auto queries = select_queries(props, cfg.kappa);
    const auto candidates = select_candidates(props, cfg.t_gen);
    return filter(props, queries, candidates, cfg.tau_sim);
}

}  // namespace qgm
}  // namespace matrack
