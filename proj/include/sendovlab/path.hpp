#pragma once

#include <vector>

#include "sendovlab/errors.hpp"
#include "sendovlab/polynomial.hpp"

namespace sendovlab {

// A path in the u-plane made of straight lines and circular arcs, with a
// global parameter t in [0,1] proportional to arc length.
struct PathSegment {
    enum class Kind { Line, Arc };
    Kind kind = Kind::Line;

    // line data
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};

    // arc data (angles in radians, swept from angle_start to angle_end)
    cplx center{0.0, 0.0};
    double radius = 0.0;
    double angle_start = 0.0;
    double angle_end = 0.0;

    static PathSegment line(cplx a, cplx b);
    static PathSegment arc(cplx center, double radius, double angle_start, double angle_end);

    cplx start() const;
    cplx end() const;
    double length() const;
    cplx point(double s) const;    // s in [0,1] along this segment
    cplx velocity(double s) const; // derivative with respect to s
};

class Path {
public:
    // Validates the segment chain: consecutive endpoints must coincide within
    // 1e-12 and the total length must be positive unless the path is a single
    // degenerate point.
    explicit Path(std::vector<PathSegment> segments);

    static Path line(cplx a, cplx b);
    static Path constant(cplx a);
    // Full circle as two half arcs, starting at angle phase on the circle.
    static Path circle(cplx center, double radius, double phase = 0.0);

    const std::vector<PathSegment>& segments() const { return segments_; }
    double length() const { return total_length_; }
    bool degenerate() const { return total_length_ == 0.0; }

    cplx start() const;
    cplx end() const;
    bool closed(double tol = 1e-12) const;

    cplx point(double t) const;
    cplx velocity(double t) const; // du/dt, magnitude == total length

private:
    // locate(t) -> (segment index, local parameter)
    std::pair<std::size_t, double> locate(double t) const;

    std::vector<PathSegment> segments_;
    std::vector<double> cumulative_; // cumulative_[k] = length of segments [0,k)
    double total_length_ = 0.0;
};

} // namespace sendovlab
