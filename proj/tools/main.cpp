// command line front end: thin argument handling over the library, one
// subcommand per operation, machine output on stdout (or --out), exit codes
// 0 = done, 1 = a checked property failed, 2 = usage or input problem,
// 3 = numerical failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sendovlab/critgeo.hpp"
#include "sendovlab/errors.hpp"
#include "sendovlab/experiments.hpp"
#include "sendovlab/json_io.hpp"
#include "sendovlab/path.hpp"
#include "sendovlab/polynomial.hpp"
#include "sendovlab/roots.hpp"
#include "sendovlab/surface.hpp"
#include "sendovlab/tracker.hpp"

namespace {

using namespace sendovlab;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::BadInput, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

using TolMap = std::map<std::string, double>;

TolMap parse_tols(const std::vector<std::string>& entries) {
    static const std::set<std::string> known = {
        "residual",   "cluster",   "zero",           "essential",      "hull",
        "disk",       "start",     "initial-step",   "max-step",       "step-floor",
        "branch-event", "singular-floor", "simple",  "projection-floor",
        "clearance",  "closure",   "log"};
    TolMap out;
    for (const std::string& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size())
            fail(ErrorKind::BadInput, "--tol expects NAME=VALUE, got: " + entry);
        const std::string name = entry.substr(0, eq);
        if (known.count(name) == 0)
            fail(ErrorKind::BadInput, "unknown tolerance name: " + name);
        const std::string value_text = entry.substr(eq + 1);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(value_text, &used);
            if (used != value_text.size())
                throw std::invalid_argument(value_text);
        } catch (const std::logic_error&) {
            fail(ErrorKind::BadInput, "bad tolerance value in: " + entry);
        }
        if (!std::isfinite(value) || value <= 0.0)
            fail(ErrorKind::BadInput, "tolerance values must be positive and finite: " + entry);
        out[name] = value;
    }
    return out;
}

double tol_or(const TolMap& m, const char* name, double dflt) {
    const auto it = m.find(name);
    return it == m.end() ? dflt : it->second;
}

RootFindOptions make_rootfind(const TolMap& m) {
    RootFindOptions o;
    o.residual_tol = tol_or(m, "residual", o.residual_tol);
    o.cluster_tol = tol_or(m, "cluster", o.cluster_tol);
    return o;
}

CritGeoOptions make_critgeo(const TolMap& m) {
    CritGeoOptions o;
    o.rootfind = make_rootfind(m);
    o.zero_tol = tol_or(m, "zero", o.zero_tol);
    o.essential_band = tol_or(m, "essential", o.essential_band);
    o.hull_tol = tol_or(m, "hull", o.hull_tol);
    o.disk_tol = tol_or(m, "disk", o.disk_tol);
    return o;
}

TrackOptions make_track(const TolMap& m) {
    TrackOptions o;
    o.rootfind = make_rootfind(m);
    o.start_tol = tol_or(m, "start", o.start_tol);
    o.initial_step = tol_or(m, "initial-step", o.initial_step);
    o.max_step = tol_or(m, "max-step", o.max_step);
    o.step_floor = tol_or(m, "step-floor", o.step_floor);
    o.branch_event_rel = tol_or(m, "branch-event", o.branch_event_rel);
    o.singular_floor_rel = tol_or(m, "singular-floor", o.singular_floor_rel);
    o.simple_tol = tol_or(m, "simple", o.simple_tol);
    return o;
}

SurfaceOptions make_surface(const TolMap& m) {
    SurfaceOptions o;
    o.rootfind = make_rootfind(m);
    o.projection_floor = tol_or(m, "projection-floor", o.projection_floor);
    o.simple_tol = tol_or(m, "simple", o.simple_tol);
    o.disk_tol = tol_or(m, "disk", o.disk_tol);
    return o;
}

SheetOptions make_sheets(const TolMap& m) {
    SheetOptions o;
    o.rootfind = make_rootfind(m);
    o.track = make_track(m);
    return o;
}

MonodromyOptions make_monodromy(const TolMap& m) {
    MonodromyOptions o;
    o.rootfind = make_rootfind(m);
    o.track = make_track(m);
    o.clearance = tol_or(m, "clearance", o.clearance);
    o.closure_tol = tol_or(m, "closure", o.closure_tol);
    o.simple_tol = tol_or(m, "simple", o.simple_tol);
    return o;
}

QuadratureOptions make_quadrature(const TolMap& m) {
    QuadratureOptions o;
    o.track = make_track(m);
    o.log_tol = tol_or(m, "log", o.log_tol);
    return o;
}

struct OutputOptions {
    std::string out_file;
    bool want_json = false;
    bool want_csv = false;
    std::vector<std::string> tol;
};

void add_common(CLI::App* cmd, OutputOptions& oo) {
    cmd->add_option("--out", oo.out_file, "write the machine output to this file instead of stdout");
    cmd->add_flag("--json", oo.want_json, "force JSON output");
    cmd->add_flag("--csv", oo.want_csv, "force CSV output (track and blowup only)");
    cmd->add_option("--tol", oo.tol, "override a tolerance as NAME=VALUE (repeatable)");
}

// csv_default only matters when the command has a CSV form at all
bool use_csv(const OutputOptions& oo, bool csv_available, bool csv_default) {
    if (oo.want_json && oo.want_csv)
        fail(ErrorKind::BadInput, "--json and --csv are mutually exclusive");
    if (oo.want_csv && !csv_available)
        fail(ErrorKind::BadInput, "this command has no CSV form");
    if (oo.want_csv)
        return true;
    if (oo.want_json)
        return false;
    return csv_available && csv_default;
}

void emit(const OutputOptions& oo, const std::string& text) {
    std::string body = text;
    if (body.empty() || body.back() != '\n')
        body += '\n';
    if (oo.out_file.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(oo.out_file, std::ios::binary);
    if (!f)
        fail(ErrorKind::BadInput, "cannot write file: " + oo.out_file);
    f << body;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical point geometry of complex polynomials"};
    app.require_subcommand(1);

    OutputOptions oo;
    std::string poly_file, q_file, path_file, loops_file;
    std::string at_text, w0_text, basepoint_text, r_list_text;
    bool assume_disk = true;
    bool big_circle = true;
    int z1_index = 0, zeta_index = 0;
    int n = 0, count = 1;
    double radius = 100.0;
    long budget = 100000;
    std::uint64_t seed = 0;

    auto* cmd_roots = app.add_subcommand("roots", "all roots of a polynomial");
    cmd_roots->add_option("--poly", poly_file, "polynomial JSON file")->required();
    add_common(cmd_roots, oo);

    auto* cmd_crit = app.add_subcommand("critical-radius",
                                        "distance from a zero to the nearest critical point");
    cmd_crit->add_option("--poly", poly_file, "polynomial JSON file")->required();
    cmd_crit->add_option("--at", at_text, "the zero, as RE,IM")->required();
    add_common(cmd_crit, oo);

    auto* cmd_sendov = app.add_subcommand(
        "sendov", "check every zero has a critical point within unit distance");
    cmd_sendov->add_option("--poly", poly_file, "polynomial JSON file")->required();
    cmd_sendov->add_flag("--assume-disk,!--no-assume-disk", assume_disk,
                         "require all zeros inside the closed unit disk (default on)");
    add_common(cmd_sendov, oo);

    auto* cmd_grr = app.add_subcommand(
        "grr", "check for a critical point in |2z-1| <= 1 when p(1) = 0");
    cmd_grr->add_option("--poly", poly_file, "polynomial JSON file")->required();
    add_common(cmd_grr, oo);

    auto* cmd_track = app.add_subcommand("track",
                                         "continue one critical point of (z-u)q(z) along a path");
    cmd_track->add_option("--q", q_file, "q polynomial JSON file")->required();
    cmd_track->add_option("--path", path_file, "path JSON file for u")->required();
    cmd_track->add_option("--at", at_text, "starting critical point, as RE,IM")->required();
    add_common(cmd_track, oo);

    auto* cmd_locus = app.add_subcommand("branch-locus",
                                         "points where (z-u)q(z) has a degenerate critical point");
    cmd_locus->add_option("--q", q_file, "q polynomial JSON file")->required();
    add_common(cmd_locus, oo);

    auto* cmd_report = app.add_subcommand(
        "branch-report", "branch points whose projection leaves the open unit disk");
    cmd_report->add_option("--q", q_file, "q polynomial JSON file")->required();
    add_common(cmd_report, oo);

    auto* cmd_sheets = app.add_subcommand("sheets",
                                          "behaviour of the critical points as |u| grows");
    cmd_sheets->add_option("--q", q_file, "q polynomial JSON file")->required();
    cmd_sheets->add_option("--radius", radius, "starting circle |u| (default 100)");
    add_common(cmd_sheets, oo);

    auto* cmd_mono = app.add_subcommand("monodromy",
                                        "sheet permutations around the branch projections");
    cmd_mono->add_option("--q", q_file, "q polynomial JSON file")->required();
    cmd_mono->add_option("--basepoint", basepoint_text, "basepoint RE,IM (default: chosen automatically)");
    cmd_mono->add_option("--loops", loops_file, "JSON file with explicit loops (needs --basepoint)");
    cmd_mono->add_flag("--big-circle,!--no-big-circle", big_circle,
                       "include the loop around everything (default on)");
    add_common(cmd_mono, oo);

    auto* cmd_ident = app.add_subcommand(
        "verify-identity", "compare the product form and integral form of the ratio f");
    cmd_ident->add_option("--poly", poly_file, "polynomial JSON file")->required();
    cmd_ident->add_option("--path", path_file, "path JSON file for u, starting at the zero")->required();
    cmd_ident->add_option("--z1-index", z1_index, "index into the sorted zeros (default 0)");
    cmd_ident->add_option("--zeta-index", zeta_index, "index into the sorted critical points (default 0)");
    add_common(cmd_ident, oo);

    auto* cmd_blowup = app.add_subcommand("blowup",
                                          "scan |f| on every sheet as u runs out along a ray");
    cmd_blowup->add_option("--poly", poly_file, "polynomial JSON file")->required();
    cmd_blowup->add_option("--z1-index", z1_index, "index into the sorted zeros (default 0)");
    cmd_blowup->add_option("--w0", w0_text, "unit-modulus ray direction, as RE,IM")->required();
    cmd_blowup->add_option("--r-list", r_list_text, "radii as A:B:STEPS, geometric")->required();
    add_common(cmd_blowup, oo);

    auto* cmd_boundary = app.add_subcommand(
        "boundary-compare", "critical radius at a zero vs at a boundary zero added to q");
    cmd_boundary->add_option("--poly", poly_file, "polynomial JSON file")->required();
    cmd_boundary->add_option("--z1-index", z1_index, "index into the sorted zeros (default 0)");
    cmd_boundary->add_option("--w0", w0_text, "boundary point, as RE,IM")->required();
    add_common(cmd_boundary, oo);

    auto* cmd_search = app.add_subcommand("search-maximal",
                                          "search degree-n polynomials maximizing the critical radius");
    cmd_search->add_option("--n", n, "degree, 2 to 12")->required();
    cmd_search->add_option("--seed", seed, "random seed (default 0)");
    cmd_search->add_option("--budget", budget, "objective evaluation budget (default 100000)");
    add_common(cmd_search, oo);

    auto* cmd_sample = app.add_subcommand("sample",
                                          "random polynomials with all zeros in the unit disk");
    cmd_sample->add_option("--n", n, "degree")->required();
    cmd_sample->add_option("--count", count, "how many (default 1)");
    cmd_sample->add_option("--seed", seed, "random seed (default 0)");
    add_common(cmd_sample, oo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const TolMap tols = parse_tols(oo.tol);

        if (cmd_roots->parsed()) {
            const Polynomial p = polynomial_from_json_text(read_file(poly_file));
            use_csv(oo, false, false);
            emit(oo, roots_to_json(find_roots(p, make_rootfind(tols))));
            return 0;
        }
        if (cmd_crit->parsed()) {
            const Polynomial p = polynomial_from_json_text(read_file(poly_file));
            use_csv(oo, false, false);
            emit(oo, critical_radius_to_json(
                         critical_radius(p, parse_complex_pair(at_text), make_critgeo(tols))));
            return 0;
        }
        if (cmd_sendov->parsed()) {
            const Polynomial p = polynomial_from_json_text(read_file(poly_file));
            use_csv(oo, false, false);
            const SendovReport report = sendov_check(p, assume_disk, make_critgeo(tols));
            emit(oo, sendov_to_json(report));
            return report.passes ? 0 : 1;
        }
        if (cmd_grr->parsed()) {
            const Polynomial p = polynomial_from_json_text(read_file(poly_file));
            use_csv(oo, false, false);
            const GrrReport report = grr_disk_check(p, make_critgeo(tols));
            emit(oo, grr_to_json(report));
            return report.has_closed_disk_zero ? 0 : 1;
        }
        if (cmd_track->parsed()) {
            const Polynomial q = polynomial_from_json_text(read_file(q_file));
            const Path path = path_from_json_text(read_file(path_file));
            const Trajectory traj =
                track(q, path, parse_complex_pair(at_text), make_track(tols));
            emit(oo, use_csv(oo, true, true) ? trajectory_to_csv(traj) : trajectory_to_json(traj));
            return 0;
        }
        if (cmd_locus->parsed()) {
            const Polynomial q = polynomial_from_json_text(read_file(q_file));
            use_csv(oo, false, false);
            emit(oo, branch_locus_to_json(branch_locus(q, make_surface(tols))));
            return 0;
        }
        if (cmd_report->parsed()) {
            const Polynomial q = polynomial_from_json_text(read_file(q_file));
            use_csv(oo, false, false);
            emit(oo, branch_disk_report_to_json(branch_disk_report(q, make_surface(tols))));
            return 0;
        }
        if (cmd_sheets->parsed()) {
            const Polynomial q = polynomial_from_json_text(read_file(q_file));
            use_csv(oo, false, false);
            emit(oo, sheets_to_json(sheets_at_infinity(q, radius, make_sheets(tols))));
            return 0;
        }
        if (cmd_mono->parsed()) {
            const Polynomial q = polynomial_from_json_text(read_file(q_file));
            use_csv(oo, false, false);
            const MonodromyOptions mopts = make_monodromy(tols);
            MonodromyReport report;
            if (!loops_file.empty()) {
                if (basepoint_text.empty())
                    fail(ErrorKind::BadInput, "--loops needs --basepoint");
                report = monodromy(q, parse_complex_pair(basepoint_text),
                                   paths_from_json_text(read_file(loops_file)), mopts);
            } else if (!basepoint_text.empty()) {
                const cplx b = parse_complex_pair(basepoint_text);
                report = monodromy(
                    q, b, standard_monodromy_loops(q, b, make_surface(tols), big_circle), mopts);
            } else {
                report = auto_monodromy(q, mopts, big_circle);
            }
            emit(oo, monodromy_to_json(report));
            return 0;
        }
        if (cmd_ident->parsed()) {
            const Polynomial p = polynomial_from_json_text(read_file(poly_file));
            const Path path = path_from_json_text(read_file(path_file));
            use_csv(oo, false, false);
            emit(oo, identity_report_to_json(
                         verify_identity(p, z1_index, zeta_index, path, make_quadrature(tols))));
            return 0;
        }
        if (cmd_blowup->parsed()) {
            const Polynomial p = polynomial_from_json_text(read_file(poly_file));
            const BlowupScan scan =
                blowup_scan(p, z1_index, parse_complex_pair(w0_text),
                            parse_geometric_list(r_list_text), make_track(tols));
            emit(oo, use_csv(oo, true, true) ? blowup_to_csv(scan) : blowup_to_json(scan));
            return 0;
        }
        if (cmd_boundary->parsed()) {
            const Polynomial p = polynomial_from_json_text(read_file(poly_file));
            use_csv(oo, false, false);
            emit(oo, boundary_comparison_to_json(boundary_comparison(
                         p, z1_index, parse_complex_pair(w0_text), make_critgeo(tols))));
            return 0;
        }
        if (cmd_search->parsed()) {
            use_csv(oo, false, false);
            SearchOptions sopts;
            sopts.rootfind = make_rootfind(tols);
            emit(oo, search_result_to_json(maximize_rho(n, seed, budget, sopts)));
            return 0;
        }
        if (cmd_sample->parsed()) {
            use_csv(oo, false, false);
            emit(oo, sample_to_json(
                         random_pn_sample(n, count, seed, tol_or(tols, "simple", 1e-7))));
            return 0;
        }
        fail(ErrorKind::BadInput, "no subcommand given");
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::BadInput ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
