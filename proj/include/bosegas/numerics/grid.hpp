#pragma once

#include <cmath>
#include <vector>

#include "bosegas/errors.hpp"

namespace bosegas {

// Discretization substrate for radial profiles. Nodes are radii, strictly
// increasing, first one at or above zero.
struct RadialGrid {
    std::vector<double> nodes;

    RadialGrid() = default;
    explicit RadialGrid(std::vector<double> n) : nodes(std::move(n)) { validate(); }

    void validate() const {
        if (nodes.size() < 2)
            throw Error("RadialGrid: need at least 2 nodes");
        if (!(nodes.front() >= 0.0))
            throw Error("RadialGrid: first node must be >= 0");
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (!(nodes[i] > nodes[i - 1]))
                throw Error("RadialGrid: nodes must be strictly increasing");
    }

    std::size_t size() const { return nodes.size(); }
    double front() const { return nodes.front(); }
    double back() const { return nodes.back(); }

    static RadialGrid uniform(double lo, double hi, std::size_t n) {
        if (n < 2 || !(hi > lo))
            throw Error("RadialGrid::uniform: bad arguments");
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        v.back() = hi;
        return RadialGrid(std::move(v));
    }

    // Starts at 0, then r_min, r_min*q, ..., up to hi. Resolves the u(0)=0
    // boundary layer without wasting nodes at large radii.
    static RadialGrid geometric(double r_min, double hi, std::size_t n) {
        if (n < 3 || !(hi > r_min) || !(r_min > 0.0))
            throw Error("RadialGrid::geometric: bad arguments");
        std::vector<double> v(n);
        v[0] = 0.0;
        const double q = std::pow(hi / r_min, 1.0 / static_cast<double>(n - 2));
        for (std::size_t i = 1; i < n; ++i)
            v[i] = r_min * std::pow(q, static_cast<double>(i - 1));
        v.back() = hi;
        return RadialGrid(std::move(v));
    }
};

} // namespace bosegas
