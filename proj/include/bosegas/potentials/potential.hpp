#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bosegas/errors.hpp"

namespace bosegas {

// Nonnegative radial potential of finite range. The finite part is stored as
// disjoint segments, each linear in r, which makes pointwise min, splitting
// and the radial integrals exact on the representation. A hard core is a
// structural marker (core_radius > 0), never a stored IEEE infinity; solvers
// branch on it and impose their boundary condition at the core edge.
class RadialPotential {
  public:
    enum class Kind { hard_core, square_well, piecewise_constant, tabulated, sum };

    // Linear value v_lo..v_hi across (r_lo, r_hi]. Jumps live between
    // segments; within one, v is smooth.
    struct Segment {
        double r_lo, r_hi, v_lo, v_hi;
        double eval(double r) const {
            if (r_hi == r_lo)
                return v_lo;
            const double t = (r - r_lo) / (r_hi - r_lo);
            return v_lo + t * (v_hi - v_lo);
        }
    };

    static RadialPotential hard_core(double r_core) {
        if (!(r_core > 0.0))
            throw Error("hard_core: r_core must be > 0");
        RadialPotential p;
        p.kind_ = Kind::hard_core;
        p.core_radius_ = r_core;
        p.params_ = {r_core};
        p.finish();
        return p;
    }

    static RadialPotential square_well(double v0, double R) {
        if (!(v0 >= 0.0) || !(R > 0.0))
            throw Error("square_well: need V0 >= 0 and R > 0");
        RadialPotential p;
        p.kind_ = Kind::square_well;
        p.params_ = {v0, R};
        if (v0 > 0.0)
            p.segments_.push_back({0.0, R, v0, v0});
        p.finish();
        return p;
    }

    // values[i] on (breakpoints[i], breakpoints[i+1]]; one more breakpoint
    // than values. Empty values gives the zero potential.
    static RadialPotential piecewise_constant(std::vector<double> breakpoints,
                                              std::vector<double> values) {
        if (breakpoints.size() != values.size() + 1)
            throw Error("piecewise_constant: need one more breakpoint than values");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i] > breakpoints[i - 1]))
                throw Error("piecewise_constant: breakpoints must increase");
        if (!breakpoints.empty() && !(breakpoints.front() >= 0.0))
            throw Error("piecewise_constant: breakpoints must be >= 0");
        RadialPotential p;
        p.kind_ = Kind::piecewise_constant;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i]) || values[i] < 0.0)
                throw Error("piecewise_constant: values must be finite and >= 0");
            p.segments_.push_back({breakpoints[i], breakpoints[i + 1], values[i], values[i]});
        }
        p.grid_ = std::move(breakpoints);
        p.params_ = std::move(values);
        p.finish();
        return p;
    }

    static RadialPotential zero() { return piecewise_constant({0.0}, {}); }

    // Piecewise-linear interpolation through (grid[i], samples[i]).
    static RadialPotential tabulated(std::vector<double> grid, std::vector<double> samples) {
        if (grid.size() != samples.size() || grid.size() < 2)
            throw Error("tabulated: need matching grid/samples with >= 2 points");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw Error("tabulated: grid must increase");
        if (!(grid.front() >= 0.0))
            throw Error("tabulated: grid must be >= 0");
        for (double s : samples)
            if (!std::isfinite(s) || s < 0.0)
                throw Error("tabulated: samples must be finite and >= 0");
        RadialPotential p;
        p.kind_ = Kind::tabulated;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            p.segments_.push_back({grid[i], grid[i + 1], samples[i], samples[i + 1]});
        p.grid_ = std::move(grid);
        p.params_ = std::move(samples);
        p.finish();
        return p;
    }

    static RadialPotential sum(std::vector<RadialPotential> parts) {
        RadialPotential p;
        p.kind_ = Kind::sum;
        for (const auto& q : parts)
            p.core_radius_ = std::max(p.core_radius_, q.core_radius_);
        // Merge all breakpoints beyond the combined core, then add the
        // parts' linear pieces on each merged interval (still linear).
        std::vector<double> cuts{p.core_radius_};
        for (const auto& q : parts)
            for (const auto& s : q.segments_) {
                cuts.push_back(s.r_lo);
                cuts.push_back(s.r_hi);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        while (!cuts.empty() && cuts.front() < p.core_radius_)
            cuts.erase(cuts.begin());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double lo = cuts[i], hi = cuts[i + 1];
            double vlo = 0.0, vhi = 0.0;
            for (const auto& q : parts) {
                vlo += q.limit_from_right(lo);
                vhi += q.limit_from_left(hi);
            }
            if (vlo != 0.0 || vhi != 0.0)
                p.segments_.push_back({lo, hi, vlo, vhi});
        }
        p.parts_ = std::move(parts);
        p.finish();
        return p;
    }

    Kind kind() const { return kind_; }
    double core_radius() const { return core_radius_; }
    bool has_hard_core() const { return core_radius_ > 0.0; }
    double range() const { return range_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<RadialPotential>& parts() const { return parts_; }
    const std::vector<double>& raw_params() const { return params_; }
    const std::vector<double>& raw_grid() const { return grid_; }

    // Finite part of v(r); 0 inside a hard core and beyond the range.
    // Left-continuous at jumps (segment (r_lo, r_hi] owns r_hi), except at
    // the inner edge of a piece where only the right limit exists.
    double operator()(double r) const {
        if (r < core_radius_ || r > range_)
            return 0.0;
        const double vl = limit_from_left(r);
        if (vl != 0.0)
            return vl;
        for (const auto& s : segments_)
            if (s.r_lo == r)
                return s.v_lo;
        return vl;
    }

    // Discontinuity/kink registry, used to split ODE and quadrature panels.
    std::vector<double> breakpoints() const {
        std::vector<double> b;
        if (core_radius_ > 0.0)
            b.push_back(core_radius_);
        for (const auto& s : segments_) {
            b.push_back(s.r_lo);
            b.push_back(s.r_hi);
        }
        b.push_back(range_);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }

    // Semantic equality: same core, same range, same compiled finite part.
    // Construction route is deliberately ignored, so a hard core truncated
    // at height n compares equal to the square well of that height.
    friend bool operator==(const RadialPotential& a, const RadialPotential& b) {
        if (a.core_radius_ != b.core_radius_ || a.range_ != b.range_)
            return false;
        if (a.segments_.size() != b.segments_.size())
            return false;
        for (std::size_t i = 0; i < a.segments_.size(); ++i) {
            const auto &s = a.segments_[i], &t = b.segments_[i];
            if (s.r_lo != t.r_lo || s.r_hi != t.r_hi || s.v_lo != t.v_lo || s.v_hi != t.v_hi)
                return false;
        }
        return true;
    }

  private:
    friend RadialPotential truncate(const RadialPotential&, double);
    friend std::pair<RadialPotential, RadialPotential> split_range(const RadialPotential&, double);

    double limit_from_right(double r) const {
        for (const auto& s : segments_)
            if (r >= s.r_lo && r < s.r_hi)
                return s.eval(r);
        return 0.0;
    }

    double limit_from_left(double r) const {
        for (const auto& s : segments_)
            if (r > s.r_lo && r <= s.r_hi)
                return s.eval(r);
        return 0.0;
    }

    // Canonicalize the segment list and derive the range.
    void finish() {
        std::sort(segments_.begin(), segments_.end(),
                  [](const Segment& a, const Segment& b) { return a.r_lo < b.r_lo; });
        std::vector<Segment> out;
        for (const auto& s : segments_) {
            if (s.v_lo == 0.0 && s.v_hi == 0.0)
                continue;
            if (!out.empty() && out.back().r_hi == s.r_lo && out.back().v_hi == s.v_lo) {
                // merge if the two pieces continue the same straight line
                const Segment& p = out.back();
                const double slope_p = (p.v_hi - p.v_lo) / (p.r_hi - p.r_lo);
                const double slope_s = (s.v_hi - s.v_lo) / (s.r_hi - s.r_lo);
                if (slope_p == slope_s) {
                    out.back().r_hi = s.r_hi;
                    out.back().v_hi = s.v_hi;
                    continue;
                }
            }
            out.push_back(s);
        }
        segments_ = std::move(out);
        range_ = core_radius_;
        if (!segments_.empty())
            range_ = std::max(range_, segments_.back().r_hi);
    }

    Kind kind_ = Kind::piecewise_constant;
    double core_radius_ = 0.0;
    double range_ = 0.0;
    std::vector<Segment> segments_;
    std::vector<double> params_;          // construction params, for serialization
    std::vector<double> grid_;            // breakpoints or tabulation grid
    std::vector<RadialPotential> parts_;  // for sums
};

// Pointwise min{v, n}. The result never has a hard core; the core region
// becomes a constant plateau at height n. Range is unchanged because v > 0
// implies min(v, n) > 0 for n > 0.
inline RadialPotential truncate(const RadialPotential& v, double n) {
    if (!(n > 0.0))
        throw Error("truncate: level must be > 0");
    RadialPotential p;
    p.kind_ = RadialPotential::Kind::tabulated;
    if (v.core_radius_ > 0.0)
        p.segments_.push_back({0.0, v.core_radius_, n, n});
    for (const auto& s : v.segments_) {
        if (s.v_lo <= n && s.v_hi <= n) {
            p.segments_.push_back(s);
        } else if (s.v_lo >= n && s.v_hi >= n) {
            p.segments_.push_back({s.r_lo, s.r_hi, n, n});
        } else {
            // the line crosses the level once inside this segment; rounding
            // may park the crossing on an endpoint, hence the width guards
            const double t = (n - s.v_lo) / (s.v_hi - s.v_lo);
            const double rc = s.r_lo + t * (s.r_hi - s.r_lo);
            if (s.v_lo < n) {
                if (rc > s.r_lo)
                    p.segments_.push_back({s.r_lo, rc, s.v_lo, n});
                if (s.r_hi > rc)
                    p.segments_.push_back({rc, s.r_hi, n, n});
            } else {
                if (rc > s.r_lo)
                    p.segments_.push_back({s.r_lo, rc, n, n});
                if (s.r_hi > rc)
                    p.segments_.push_back({rc, s.r_hi, n, s.v_hi});
            }
        }
    }
    p.finish();
    return p;
}

// (v restricted to r <= R_split, v restricted to r > R_split). The two parts
// add back to v pointwise. Splitting inside a hard core would leave an
// infinite annulus, which this representation cannot hold.
inline std::pair<RadialPotential, RadialPotential> split_range(const RadialPotential& v,
                                                               double R_split) {
    if (!(R_split >= 0.0))
        throw Error("split_range: R_split must be >= 0");
    if (R_split < v.core_radius_)
        throw Error("split_range: cannot split inside a hard core");
    RadialPotential lo, hi;
    lo.kind_ = RadialPotential::Kind::tabulated;
    hi.kind_ = RadialPotential::Kind::tabulated;
    lo.core_radius_ = v.core_radius_;
    for (const auto& s : v.segments_) {
        if (s.r_hi <= R_split) {
            lo.segments_.push_back(s);
        } else if (s.r_lo >= R_split) {
            hi.segments_.push_back(s);
        } else {
            const double vm = s.eval(R_split);
            lo.segments_.push_back({s.r_lo, R_split, s.v_lo, vm});
            hi.segments_.push_back({R_split, s.r_hi, vm, s.v_hi});
        }
    }
    lo.finish();
    hi.finish();
    return {lo, hi};
}

struct L1Norm {
    double value = 0.0;    // finite-part integral, 4 pi * int v r^2 dr
    bool infinite = false; // set when a hard core makes the true integral infinite
};

// Integral of v over R^3, exact on the piecewise-linear representation.
inline L1Norm l1_norm(const RadialPotential& v) {
    L1Norm out;
    out.infinite = v.has_hard_core();
    double acc = 0.0;
    for (const auto& s : v.segments()) {
        // v(r) = c0 + c1 r on the segment
        const double c1 = (s.v_hi - s.v_lo) / (s.r_hi - s.r_lo);
        const double c0 = s.v_lo - c1 * s.r_lo;
        const double r0 = s.r_lo, r1 = s.r_hi;
        acc += c0 * (r1 * r1 * r1 - r0 * r0 * r0) / 3.0 +
               c1 * (r1 * r1 * r1 * r1 - r0 * r0 * r0 * r0) / 4.0;
    }
    out.value = 4.0 * M_PI * acc;
    return out;
}

} // namespace bosegas
