#include "tsvolterra/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tsv {

Component Component::interval(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
        throw Error(ErrorCode::InvalidTimeScale,
                    "interval requires finite lo < hi (got [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "])");
    }
    return Component{lo, hi};
}

Component Component::point(double t) {
    if (!std::isfinite(t)) {
        throw Error(ErrorCode::InvalidTimeScale, "isolated point must be finite");
    }
    return Component{t, t};
}

TimeScale::TimeScale(std::vector<Component> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw Error(ErrorCode::InvalidTimeScale, "time scale must be nonempty");
    }
    for (const auto& c : components_) {
        if (!(c.lo <= c.hi) || !std::isfinite(c.lo) || !std::isfinite(c.hi)) {
            throw Error(ErrorCode::InvalidTimeScale, "malformed component");
        }
    }
    for (std::size_t i = 0; i + 1 < components_.size(); ++i) {
        if (!(components_[i].hi < components_[i + 1].lo)) {
            throw Error(ErrorCode::InvalidTimeScale,
                        "components must be disjoint and strictly increasing");
        }
    }
}

std::optional<std::size_t> TimeScale::locate(double t) const {
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        if (t >= c.lo - kMemberTol && t <= c.hi + kMemberTol) {
            return i;
        }
        if (t < c.lo - kMemberTol) {
            break; // components are ordered
        }
    }
    return std::nullopt;
}

namespace {
[[noreturn]] void not_in_timescale(double t) {
    throw Error(ErrorCode::PointNotInTimeScale,
                "point " + std::to_string(t) + " is not in the time scale");
}
} // namespace

double TimeScale::sigma(double t) const {
    auto idx = locate(t);
    if (!idx) {
        not_in_timescale(t);
    }
    const auto& c = components_[*idx];
    if (!c.is_point() && t < c.hi - kMemberTol) {
        return t; // right-dense interior
    }
    if (*idx + 1 < components_.size()) {
        return components_[*idx + 1].lo;
    }
    return c.hi; // sigma(b) = b
}

double TimeScale::rho(double t) const {
    auto idx = locate(t);
    if (!idx) {
        not_in_timescale(t);
    }
    const auto& c = components_[*idx];
    if (!c.is_point() && t > c.lo + kMemberTol) {
        return t; // left-dense interior
    }
    if (*idx > 0) {
        return components_[*idx - 1].hi;
    }
    return c.lo; // rho(a) = a
}

PointClass TimeScale::classify(double t) const {
    auto idx = locate(t);
    if (!idx) {
        not_in_timescale(t);
    }
    PointClass pc{};
    if (std::fabs(t - max()) <= kMemberTol) {
        pc.right = RightClass::Max;
    } else {
        pc.right = sigma(t) - t > 0 ? RightClass::Scattered : RightClass::Dense;
    }
    if (std::fabs(t - min()) <= kMemberTol) {
        pc.left = LeftClass::Min;
    } else {
        pc.left = t - rho(t) > 0 ? LeftClass::Scattered : LeftClass::Dense;
    }
    return pc;
}

TimeScale TimeScale::truncated(double horizon) const {
    if (horizon < min() - kMemberTol) {
        throw Error(ErrorCode::InvalidTimeScale, "horizon precedes the time scale");
    }
    std::vector<Component> out;
    for (const auto& c : components_) {
        if (c.lo > horizon + kMemberTol) {
            break;
        }
        double hi = std::min(c.hi, horizon);
        if (hi - c.lo <= kMemberTol) {
            out.push_back(Component::point(c.lo));
        } else {
            out.push_back(Component::interval(c.lo, hi));
        }
    }
    return TimeScale(std::move(out));
}

Grid::Grid(const TimeScale& ts, double h_max) : h_max_(h_max) {
    if (!(h_max > 0)) {
        throw Error(ErrorCode::InvalidStep, "h_max must be positive");
    }
    const auto& comps = ts.components();
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& c = comps[ci];
        if (ci > 0) {
            interval_segment_.push_back(0); // scattered bridge
        }
        if (c.is_point()) {
            points_.push_back(c.lo);
            continue;
        }
        double len = c.hi - c.lo;
        auto n = static_cast<std::size_t>(std::ceil(len / h_max - 1e-12));
        n = std::max<std::size_t>(n, 1);
        points_.push_back(c.lo); // endpoints exact
        for (std::size_t i = 1; i < n; ++i) {
            points_.push_back(c.lo + len * static_cast<double>(i) / static_cast<double>(n));
            interval_segment_.push_back(1);
        }
        points_.push_back(c.hi);
        interval_segment_.push_back(1);
    }
}

std::size_t Grid::index_of(double t) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t - kMemberTol);
    if (it == points_.end() || std::fabs(*it - t) > kMemberTol) {
        throw Error(ErrorCode::PointNotOnGrid,
                    "point " + std::to_string(t) + " is not a grid point");
    }
    return static_cast<std::size_t>(it - points_.begin());
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::PointNotInTimeScale: return "PointNotInTimeScale";
        case ErrorCode::InvalidStep: return "InvalidStep";
        case ErrorCode::InvalidTimeScale: return "InvalidTimeScale";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::UnboundVariable: return "UnboundVariable";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NumericOverflow: return "NumericOverflow";
        case ErrorCode::PointNotOnGrid: return "PointNotOnGrid";
        case ErrorCode::NonRegressive: return "NonRegressive";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularDiagonal: return "SingularDiagonal";
        case ErrorCode::NotRightScattered: return "NotRightScattered";
        case ErrorCode::NonPositiveOmega: return "NonPositiveOmega";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::ConditionFailed: return "ConditionFailed";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace tsv
