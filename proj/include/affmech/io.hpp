#pragma once

// JSON encodings of the algebraic objects and scenarios, and the trajectory CSV.
//
//   SpaceDesc          {"n": 2, "frame": "A", "dual_level": false}
//   SpecialAffinePoint {"space": SpaceDesc, "v": [..], "r": 0}
//   DualPoint          {"space": SpaceDesc, "f": [..], "t": 0}
//   SpecialMorphism    {"domain": SpaceDesc, "codomain": SpaceDesc,
//                       "F": [[..], ..], "f": [..], "g": [..], "t": 0}
//   ContactPointA      {"x": [..], "y": [..], "p": [..], "pi": [..], "r": 0}
//   ContactPointADual  {"x": [..], "f": [..], "q": [..], "chi": [..], "t": 0}
//   Scenario           {"dim": 4, "metric": "minkowski" | {"components": [["1", "0"], ..]},
//                       "potential": ["0", "-0.5*x2", ..], "mass": 1, "charge": 1,
//                       "gauge": "0", "x0": [..], "v0": [..]}
//
// Objects carry explicit dimension fields where the vectors alone would not
// pin them down (n for spaces, dim for scenarios); lengths are checked.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "affmech/canonical_iso.hpp"
#include "affmech/dynamics.hpp"
#include "affmech/special_affine.hpp"

namespace affmech {

using Json = nlohmann::json;

Json to_json(const SpaceDesc& s);
Json to_json(const SpecialAffinePoint& a);
Json to_json(const DualPoint& phi);
Json to_json(const SpecialMorphism& Phi);
Json to_json(const ContactPointA& c);
Json to_json(const ContactPointADual& d);
Json to_json(const Scenario& s);

// Readers throw FormatError naming the offending JSON pointer.
SpaceDesc space_from_json(const Json& j, const std::string& where = "");
SpecialAffinePoint point_from_json(const Json& j, const std::string& where = "");
DualPoint dual_point_from_json(const Json& j, const std::string& where = "");
SpecialMorphism morphism_from_json(const Json& j, const std::string& where = "");
ContactPointA contact_point_from_json(const Json& j, const std::string& where = "");
ContactPointADual dual_contact_point_from_json(const Json& j, const std::string& where = "");
Scenario scenario_from_json(const Json& j);

/// Parses a file; syntax errors become FormatError with the byte offset.
Json load_json(const std::string& path);
Scenario load_scenario(const std::string& path);

/// tau, x0.., v0.., p0.., shell, el_residual with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  /// Index of a header name; throws if absent.
  std::size_t column(const std::string& name) const;
};
CsvTable read_csv(std::istream& in);

}  // namespace affmech
