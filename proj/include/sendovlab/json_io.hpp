#pragma once

#include <string>
#include <vector>

#include "sendovlab/critgeo.hpp"
#include "sendovlab/experiments.hpp"
#include "sendovlab/path.hpp"
#include "sendovlab/polynomial.hpp"
#include "sendovlab/roots.hpp"
#include "sendovlab/surface.hpp"
#include "sendovlab/tracker.hpp"

// Serialization of every report type. Complex numbers appear as [re, im]
// pairs in JSON files and as "re,im" on the command line. All output is
// deterministic: identical values give identical bytes.

namespace sendovlab {

Polynomial polynomial_from_json_text(const std::string& text);
std::string polynomial_to_json(const Polynomial& p);

Path path_from_json_text(const std::string& text);
std::string path_to_json(const Path& path);

// {"loops": [path, path, ...]} with each path in the segments form above.
std::vector<Path> paths_from_json_text(const std::string& text);

cplx parse_complex_pair(const std::string& text);

// "a:b:steps" -> geometrically spaced radii from a to b inclusive.
std::vector<double> parse_geometric_list(const std::string& text);

std::string roots_to_json(const RootList& roots);
std::string critical_radius_to_json(const CriticalRadiusReport& report);
std::string sendov_to_json(const SendovReport& report);
std::string grr_to_json(const GrrReport& report);

std::string trajectory_to_csv(const Trajectory& traj);
std::string trajectory_to_json(const Trajectory& traj);

std::string branch_locus_to_json(const std::vector<BranchPoint>& locus);
std::string branch_disk_report_to_json(const BranchDiskReport& report);
std::string sheets_to_json(const SheetAtInfinityReport& report);
std::string monodromy_to_json(const MonodromyReport& report);

std::string identity_report_to_json(const IdentityCheckReport& report);
std::string blowup_to_csv(const BlowupScan& scan);
std::string blowup_to_json(const BlowupScan& scan);
std::string boundary_comparison_to_json(const BoundaryComparison& cmp);
std::string search_result_to_json(const MaximalSearchResult& result);
std::string sample_to_json(const std::vector<Polynomial>& sample);

} // namespace sendovlab
