#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tsvolterra/errors.hpp"

namespace tsv {

// Absolute tolerance for membership queries against component
// endpoints and isolated points.
inline constexpr double kMemberTol = 1e-12;

struct Component {
    double lo; // lo == hi encodes an isolated point
    double hi;

    bool is_point() const noexcept { return lo == hi; }
    static Component interval(double lo, double hi);
    static Component point(double t);
};

enum class RightClass { Scattered, Dense, Max };
enum class LeftClass { Scattered, Dense, Min };

struct PointClass {
    RightClass right;
    LeftClass left;
};

// Bounded time scale: finitely many disjoint closed intervals and
// isolated points, strictly increasing.
class TimeScale {
public:
    explicit TimeScale(std::vector<Component> components);

    const std::vector<Component>& components() const noexcept { return components_; }
    double min() const noexcept { return components_.front().lo; }
    double max() const noexcept { return components_.back().hi; }

    // Index of the component containing t, or nullopt.
    std::optional<std::size_t> locate(double t) const;
    bool contains(double t) const { return locate(t).has_value(); }

    double sigma(double t) const; // forward jump; sigma(max) == max
    double rho(double t) const;   // backward jump; rho(min) == min
    double mu(double t) const { return sigma(t) - t; }
    PointClass classify(double t) const;

    // Restriction to [min, horizon]; intervals are clipped, an
    // interval degenerating to a single point becomes a point.
    TimeScale truncated(double horizon) const;

private:
    std::vector<Component> components_;
};

// Sampling grid: all component endpoints and isolated points exactly,
// intervals subdivided uniformly with step <= h_max. Each adjacent
// pair either spans a piece of one interval (graininess 0) or bridges
// a scattered gap where points[i+1] == sigma(points[i]).
class Grid {
public:
    Grid(const TimeScale& ts, double h_max);

    std::span<const double> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const noexcept { return points_[i]; }
    double h_max() const noexcept { return h_max_; }

    // True when (points[i], points[i+1]) lies inside one interval.
    bool segment_is_interval(std::size_t i) const noexcept { return interval_segment_[i]; }
    std::size_t segment_count() const noexcept { return interval_segment_.size(); }

    // Index of a grid point equal to t within kMemberTol.
    std::size_t index_of(double t) const;

private:
    std::vector<double> points_;
    std::vector<char> interval_segment_; // one flag per adjacent pair
    double h_max_;
};

} // namespace tsv
