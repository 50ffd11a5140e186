#include "sendovlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sendovlab {

namespace {

using nlohmann::json;

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_list(const std::vector<cplx>& zs) {
    json out = json::array();
    for (const cplx& z : zs)
        out.push_back(complex_to_json(z));
    return out;
}

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::BadInput, "complex values must be [re, im] number pairs");
    const double re = j[0].get<double>();
    const double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        fail(ErrorKind::BadInput, "complex values must be finite");
    return {re, im};
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(ErrorKind::BadInput, "malformed JSON");
    return j;
}

// fixed 17-significant-digit formatting, enough to round-trip any double
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Polynomial polynomial_from_json_text(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() ||
        j["coeffs"].empty())
        fail(ErrorKind::BadInput, "polynomial JSON needs a nonempty \"coeffs\" array");
    std::vector<cplx> coeffs;
    for (const json& c : j["coeffs"])
        coeffs.push_back(complex_from_json(c));
    return Polynomial(std::move(coeffs));
}

std::string polynomial_to_json(const Polynomial& p) {
    json j;
    j["coeffs"] = complex_list(p.coeffs());
    return j.dump();
}

namespace {

Path path_from_json(const json& j) {
    if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array() ||
        j["segments"].empty())
        fail(ErrorKind::BadInput, "path JSON needs a nonempty \"segments\" array");
    std::vector<PathSegment> segments;
    for (const json& s : j["segments"]) {
        if (!s.is_object() || !s.contains("kind"))
            fail(ErrorKind::BadInput, "path segment needs a \"kind\"");
        const std::string kind = s["kind"].get<std::string>();
        if (kind == "line") {
            if (!s.contains("a") || !s.contains("b"))
                fail(ErrorKind::BadInput, "line segment needs \"a\" and \"b\"");
            segments.push_back(PathSegment::line(complex_from_json(s["a"]),
                                                 complex_from_json(s["b"])));
        } else if (kind == "arc") {
            if (!s.contains("center") || !s.contains("radius") || !s.contains("angle_start") ||
                !s.contains("angle_end"))
                fail(ErrorKind::BadInput,
                     "arc segment needs \"center\", \"radius\", \"angle_start\", \"angle_end\"");
            segments.push_back(PathSegment::arc(
                complex_from_json(s["center"]), s["radius"].get<double>(),
                s["angle_start"].get<double>(), s["angle_end"].get<double>()));
        } else {
            fail(ErrorKind::BadInput, "unknown segment kind: " + kind);
        }
    }
    return Path(std::move(segments));
}

} // namespace

Path path_from_json_text(const std::string& text) {
    return path_from_json(parse_text(text));
}

std::vector<Path> paths_from_json_text(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object() || !j.contains("loops") || !j["loops"].is_array() || j["loops"].empty())
        fail(ErrorKind::BadInput, "loops JSON needs a nonempty \"loops\" array");
    std::vector<Path> loops;
    for (const json& entry : j["loops"])
        loops.push_back(path_from_json(entry));
    return loops;
}

std::string path_to_json(const Path& path) {
    json segments = json::array();
    for (const PathSegment& s : path.segments()) {
        json seg;
        if (s.kind == PathSegment::Kind::Line) {
            seg["kind"] = "line";
            seg["a"] = complex_to_json(s.a);
            seg["b"] = complex_to_json(s.b);
        } else {
            seg["kind"] = "arc";
            seg["center"] = complex_to_json(s.center);
            seg["radius"] = s.radius;
            seg["angle_start"] = s.angle_start;
            seg["angle_end"] = s.angle_end;
        }
        segments.push_back(seg);
    }
    json j;
    j["segments"] = segments;
    return j.dump();
}

cplx parse_complex_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        fail(ErrorKind::BadInput, "expected RE,IM: " + text);
    try {
        std::size_t used = 0;
        const double re = std::stod(text.substr(0, comma), &used);
        if (used != comma)
            fail(ErrorKind::BadInput, "trailing characters in RE part: " + text);
        const std::string im_text = text.substr(comma + 1);
        const double im = std::stod(im_text, &used);
        if (used != im_text.size())
            fail(ErrorKind::BadInput, "trailing characters in IM part: " + text);
        if (!std::isfinite(re) || !std::isfinite(im))
            fail(ErrorKind::BadInput, "complex parts must be finite");
        return {re, im};
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::BadInput, "could not parse complex pair: " + text);
    } catch (const std::out_of_range&) {
        fail(ErrorKind::BadInput, "complex pair out of range: " + text);
    }
}

std::vector<double> parse_geometric_list(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        fail(ErrorKind::BadInput, "expected A:B:STEPS: " + text);
    double a = 0.0;
    double b = 0.0;
    long steps = 0;
    try {
        a = std::stod(text.substr(0, c1));
        b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        steps = std::stol(text.substr(c2 + 1));
    } catch (const std::exception&) {
        fail(ErrorKind::BadInput, "could not parse A:B:STEPS: " + text);
    }
    if (!(a > 0.0) || !(b >= a) || steps < 1)
        fail(ErrorKind::BadInput, "need 0 < A <= B and STEPS >= 1: " + text);
    std::vector<double> out;
    if (steps == 1 || b == a) {
        out.push_back(a);
        return out;
    }
    const double ratio = std::pow(b / a, 1.0 / static_cast<double>(steps - 1));
    for (long k = 0; k < steps; ++k)
        out.push_back(k == steps - 1 ? b : a * std::pow(ratio, static_cast<double>(k)));
    return out;
}

std::string roots_to_json(const RootList& roots) {
    json j;
    j["roots"] = complex_list(roots.roots);
    j["residual_bound"] = roots.residual_bound;
    json clusters = json::array();
    for (const auto& group : roots.clusters)
        clusters.push_back(group);
    j["clusters"] = clusters;
    return j.dump();
}

std::string critical_radius_to_json(const CriticalRadiusReport& report) {
    json j;
    j["rho"] = report.rho;
    j["essential"] = complex_list(report.essential);
    j["critical"] = complex_list(report.all_critical.roots);
    return j.dump();
}

std::string sendov_to_json(const SendovReport& report) {
    json rows = json::array();
    for (const SendovRow& row : report.per_zero) {
        json r;
        r["zero"] = complex_to_json(row.zero);
        r["nearest_critical"] = complex_to_json(row.nearest_critical);
        r["distance"] = row.distance;
        rows.push_back(r);
    }
    json j;
    j["per_zero"] = rows;
    j["max_distance"] = report.max_distance;
    j["passes"] = report.passes;
    return j.dump();
}

std::string grr_to_json(const GrrReport& report) {
    json rows = json::array();
    for (const GrrWitness& w : report.witnesses) {
        json r;
        r["zeta"] = complex_to_json(w.zeta);
        r["abs_two_zeta_minus_one"] = w.abs_two_zeta_minus_one;
        r["position"] = w.position == DiskPosition::Inside    ? "inside"
                        : w.position == DiskPosition::OnCircle ? "circle"
                                                               : "outside";
        rows.push_back(r);
    }
    json j;
    j["has_closed_disk_zero"] = report.has_closed_disk_zero;
    j["has_open_disk_zero"] = report.has_open_disk_zero;
    j["all_on_circle"] = report.all_on_circle;
    j["witnesses"] = rows;
    return j.dump();
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,u_re,u_im,zeta_re,zeta_im,residual,step\n";
    for (const TrajectorySample& s : traj.samples) {
        out << num(s.t) << ',' << num(s.u.real()) << ',' << num(s.u.imag()) << ','
            << num(s.zeta.real()) << ',' << num(s.zeta.imag()) << ',' << num(s.residual) << ','
            << num(s.step) << '\n';
    }
    for (const TrackEvent& e : traj.events)
        out << "# event " << num(e.t) << ' ' << track_event_name(e.kind) << '\n';
    return out.str();
}

std::string trajectory_to_json(const Trajectory& traj) {
    json samples = json::array();
    for (const TrajectorySample& s : traj.samples) {
        json row;
        row["t"] = s.t;
        row["u"] = complex_to_json(s.u);
        row["zeta"] = complex_to_json(s.zeta);
        row["residual"] = s.residual;
        row["step"] = s.step;
        samples.push_back(row);
    }
    json events = json::array();
    for (const TrackEvent& e : traj.events) {
        json row;
        row["t"] = e.t;
        row["kind"] = track_event_name(e.kind);
        events.push_back(row);
    }
    json j;
    j["samples"] = samples;
    j["events"] = events;
    j["start_zeta"] = complex_to_json(traj.start_zeta);
    j["end_zeta"] = complex_to_json(traj.end_zeta);
    return j.dump();
}

std::string branch_locus_to_json(const std::vector<BranchPoint>& locus) {
    json rows = json::array();
    for (const BranchPoint& bp : locus) {
        json r;
        r["w"] = complex_to_json(bp.w);
        r["u"] = complex_to_json(bp.u);
        r["residual"] = bp.residual;
        rows.push_back(r);
    }
    return rows.dump();
}

std::string branch_disk_report_to_json(const BranchDiskReport& report) {
    json rows = json::array();
    for (const BranchDiskRow& row : report.rows) {
        json r;
        r["w"] = complex_to_json(row.point.w);
        r["u"] = complex_to_json(row.point.u);
        r["abs_phi"] = row.abs_phi;
        r["violation"] = row.violation;
        rows.push_back(r);
    }
    return rows.dump();
}

std::string sheets_to_json(const SheetAtInfinityReport& report) {
    json rows = json::array();
    for (const SheetInfo& info : report.per_sheet) {
        json r;
        r["start"] = complex_to_json(info.start);
        r["kind"] = info.kind == SheetKind::Unbounded ? "unbounded" : "bounded";
        r["ratio"] = complex_to_json(info.ratio);
        if (info.kind == SheetKind::Bounded) {
            r["limit"] = complex_to_json(info.limit);
            r["matched_root"] = complex_to_json(info.matched_root);
            r["match_error"] = info.match_error;
        }
        rows.push_back(r);
    }
    json j;
    j["per_sheet"] = rows;
    j["unbounded_count"] = report.unbounded_count;
    return j.dump();
}

std::string monodromy_to_json(const MonodromyReport& report) {
    json loops = json::array();
    for (const auto& perm : report.permutations) {
        json l;
        l["perm"] = perm;
        loops.push_back(l);
    }
    json j;
    j["labels"] = complex_list(report.sheet_labels);
    j["loops"] = loops;
    j["product"] = report.product;
    return j.dump();
}

std::string identity_report_to_json(const IdentityCheckReport& report) {
    json j;
    j["f_closed"] = complex_to_json(report.f_closed_value);
    j["f_integral"] = complex_to_json(report.f_integral_value);
    j["abs_discrepancy"] = report.abs_discrepancy;
    j["qf_residual"] = report.qf_residual;
    j["z1"] = complex_to_json(report.z1);
    j["zeta_start"] = complex_to_json(report.zeta_start);
    j["zeta_end"] = complex_to_json(report.zeta_end);
    j["u_end"] = complex_to_json(report.u_end);
    return j.dump();
}

std::string blowup_to_csv(const BlowupScan& scan) {
    std::ostringstream out;
    out << "r,min_abs_f";
    for (std::size_t j = 0; j < scan.start_fiber.size(); ++j)
        out << ",abs_f_" << j;
    out << '\n';
    for (const BlowupRow& row : scan.rows) {
        out << num(row.r) << ',' << num(row.min_abs_f);
        for (const double v : row.abs_f)
            out << ',' << num(v);
        out << '\n';
    }
    if (scan.crossing_r)
        out << "# crossing_r " << num(*scan.crossing_r) << '\n';
    return out.str();
}

std::string blowup_to_json(const BlowupScan& scan) {
    json rows = json::array();
    for (const BlowupRow& row : scan.rows) {
        json r;
        r["r"] = row.r;
        r["abs_f"] = row.abs_f;
        r["min_abs_f"] = row.min_abs_f;
        rows.push_back(r);
    }
    json j;
    j["start_fiber"] = complex_list(scan.start_fiber);
    j["rows"] = rows;
    if (scan.crossing_r)
        j["crossing_r"] = *scan.crossing_r;
    else
        j["crossing_r"] = nullptr;
    return j.dump();
}

std::string boundary_comparison_to_json(const BoundaryComparison& cmp) {
    json j;
    j["rho_interior"] = cmp.rho_interior;
    j["rho_boundary"] = cmp.rho_boundary;
    return j.dump();
}

std::string search_result_to_json(const MaximalSearchResult& result) {
    json trace = json::array();
    for (const auto& [iteration, rho] : result.trace)
        trace.push_back(json::array({iteration, rho}));
    json j;
    j["best_roots"] = complex_list(result.best_roots);
    j["best_rho"] = result.best_rho;
    j["iterations"] = result.iterations;
    j["trace"] = trace;
    return j.dump();
}

std::string sample_to_json(const std::vector<Polynomial>& sample) {
    json polys = json::array();
    for (const Polynomial& p : sample) {
        json entry;
        entry["coeffs"] = complex_list(p.coeffs());
        polys.push_back(entry);
    }
    json j;
    j["polynomials"] = polys;
    return j.dump();
}

} // namespace sendovlab
