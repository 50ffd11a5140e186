#include "sendovlab/path.hpp"

#include <cmath>
#include <sstream>

namespace sendovlab {

PathSegment PathSegment::line(cplx a, cplx b) {
    PathSegment s;
    s.kind = Kind::Line;
    s.a = a;
    s.b = b;
    return s;
}

PathSegment PathSegment::arc(cplx center, double radius, double angle_start, double angle_end) {
    if (!(radius > 0.0))
        fail(ErrorKind::BadInput, "arc radius must be positive");
    if (angle_start == angle_end)
        fail(ErrorKind::BadInput, "arc must sweep a nonzero angle");
    PathSegment s;
    s.kind = Kind::Arc;
    s.center = center;
    s.radius = radius;
    s.angle_start = angle_start;
    s.angle_end = angle_end;
    return s;
}

cplx PathSegment::start() const { return point(0.0); }

cplx PathSegment::end() const { return point(1.0); }

double PathSegment::length() const {
    if (kind == Kind::Line)
        return std::abs(b - a);
    return radius * std::abs(angle_end - angle_start);
}

cplx PathSegment::point(double s) const {
    if (kind == Kind::Line)
        return a + s * (b - a);
    const double theta = angle_start + s * (angle_end - angle_start);
    return center + radius * cplx(std::cos(theta), std::sin(theta));
}

cplx PathSegment::velocity(double s) const {
    if (kind == Kind::Line)
        return b - a;
    const double sweep = angle_end - angle_start;
    const double theta = angle_start + s * sweep;
    return radius * sweep * cplx(-std::sin(theta), std::cos(theta));
}

Path::Path(std::vector<PathSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty())
        fail(ErrorKind::BadInput, "path needs at least one segment");
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        const double gap = std::abs(segments_[i].end() - segments_[i + 1].start());
        if (gap > 1e-12) {
            std::ostringstream msg;
            msg << "segments " << i << " and " << i + 1 << " do not meet (gap " << gap << ")";
            fail(ErrorKind::BadInput, msg.str());
        }
    }
    cumulative_.resize(segments_.size() + 1, 0.0);
    for (std::size_t i = 0; i < segments_.size(); ++i)
        cumulative_[i + 1] = cumulative_[i] + segments_[i].length();
    total_length_ = cumulative_.back();
    if (total_length_ == 0.0 && segments_.size() > 1)
        fail(ErrorKind::BadInput, "zero-length path must be a single point segment");
}

Path Path::line(cplx a, cplx b) { return Path({PathSegment::line(a, b)}); }

Path Path::constant(cplx a) { return Path({PathSegment::line(a, a)}); }

Path Path::circle(cplx center, double radius, double phase) {
    const double pi = std::acos(-1.0);
    return Path({PathSegment::arc(center, radius, phase, phase + pi),
                 PathSegment::arc(center, radius, phase + pi, phase + 2.0 * pi)});
}

cplx Path::start() const { return segments_.front().start(); }

cplx Path::end() const { return segments_.back().end(); }

bool Path::closed(double tol) const { return std::abs(end() - start()) <= tol; }

std::pair<std::size_t, double> Path::locate(double t) const {
    if (t < 0.0 || t > 1.0)
        fail(ErrorKind::BadInput, "path parameter outside [0,1]");
    if (total_length_ == 0.0)
        return {0, 0.0};
    const double target = t * total_length_;
    // cumulative_ is nondecreasing; find the segment containing target
    std::size_t k = 0;
    while (k + 1 < segments_.size() && cumulative_[k + 1] < target)
        ++k;
    const double len = cumulative_[k + 1] - cumulative_[k];
    if (len == 0.0)
        return {k, 0.0};
    return {k, (target - cumulative_[k]) / len};
}

cplx Path::point(double t) const {
    const auto [k, s] = locate(t);
    return segments_[k].point(s);
}

cplx Path::velocity(double t) const {
    if (total_length_ == 0.0)
        return {0.0, 0.0};
    const auto [k, s] = locate(t);
    const double len = segments_[k].length();
    if (len == 0.0)
        return {0.0, 0.0};
    return segments_[k].velocity(s) * (total_length_ / len);
}

} // namespace sendovlab
