// Frequency grids: linear block on (0,1], logarithmic above, positive
// frequencies only (negative side is reconstructed by symmetry or, for NLS,
// stored as a mirrored copy).
#pragma once

#include <algorithm>
#include <vector>

#include "ssp/common.hpp"

namespace ssp {

struct GridConfig {
    double near_zero_cut = 1e-3;
    double far_cut = 1e3;
    int nodes_per_decade = 32;   // log region density
    double linear_step = 1.0 / 64.0;  // linear block on (0,1]
};

struct FrequencyGrid {
    std::vector<double> nodes;   // strictly increasing, all > 0
    double near_zero_cut = 0;
    double far_cut = 0;
    int nodes_per_decade = 0;
    double linear_step = 0;

    std::size_t size() const { return nodes.size(); }

    /// Index of the first node >= x (nodes.size() if none).
    std::size_t lower_bound(double x) const {
        return std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin();
    }
};

/// Count of the geometric sequence near*r^j, r = 10^{1/per_decade}, that lies
/// in [near, far] (both endpoints included; far appended if not hit exactly).
inline std::size_t log_node_count(double near, double far, int per_decade) {
    std::size_t n = static_cast<std::size_t>(std::floor(per_decade * std::log10(far / near) * (1.0 + 1e-12))) + 1;
    double last = near * std::pow(10.0, double(n - 1) / per_decade);
    if (last < far * (1.0 - 1e-9)) ++n;
    return n;
}

inline FrequencyGrid build_grid(const GridConfig& cfg) {
    if (!(cfg.near_zero_cut > 0.0)) throw config_error("build_grid: near_zero_cut must be positive");
    if (!(cfg.far_cut > 1.0)) throw config_error("build_grid: far_cut must exceed 1");
    if (!(cfg.far_cut > cfg.near_zero_cut * (1.0 + 1e-12)))
        throw config_error("build_grid: degenerate range, far_cut <= near_zero_cut");
    if (cfg.nodes_per_decade < 16) throw config_error("build_grid: need >= 16 nodes per decade");
    if (!(cfg.linear_step > 0.0) || cfg.linear_step > 1.0 / 64.0 + 1e-15)
        throw config_error("build_grid: linear_step must be in (0, 1/64]");

    std::vector<double> nodes;
    // Log block over the full range [near_zero_cut, far_cut].
    std::size_t nlog = log_node_count(cfg.near_zero_cut, cfg.far_cut, cfg.nodes_per_decade);
    for (std::size_t j = 0; j + 1 < nlog; ++j)
        nodes.push_back(cfg.near_zero_cut * std::pow(10.0, double(j) / cfg.nodes_per_decade));
    nodes.push_back(cfg.far_cut);
    // Linear block on (0,1]: multiples of linear_step (hits 1/2 and 1 exactly).
    int nlin = static_cast<int>(std::round(1.0 / cfg.linear_step));
    for (int k = 1; k <= nlin; ++k) {
        double x = k * cfg.linear_step;
        if (x > cfg.near_zero_cut && x <= cfg.far_cut) nodes.push_back(x);
    }
    std::sort(nodes.begin(), nodes.end());
    // Dedup with a relative tolerance so exact breakpoints are kept once.
    std::vector<double> out;
    out.reserve(nodes.size());
    for (double x : nodes)
        if (out.empty() || x > out.back() * (1.0 + 1e-12)) out.push_back(x);
    // Snap near-duplicates of the exact breakpoints 1/2 and 1.
    for (double& x : out) {
        if (std::abs(x - 0.5) < 1e-12) x = 0.5;
        if (std::abs(x - 1.0) < 1e-12) x = 1.0;
    }

    FrequencyGrid g;
    g.nodes = std::move(out);
    g.near_zero_cut = g.nodes.front();
    g.far_cut = g.nodes.back();
    g.nodes_per_decade = cfg.nodes_per_decade;
    g.linear_step = cfg.linear_step;
    return g;
}

}  // namespace ssp
