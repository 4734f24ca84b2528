#pragma once

// Serialization. Rationals are written as "p/q" strings, never as floats;
// mesh vertices are the only rounded output (%.17g).

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heiscc/atlas.hpp"
#include "heiscc/cc_metric.hpp"
#include "heiscc/counting.hpp"
#include "heiscc/lattice.hpp"
#include "heiscc/volumes.hpp"

namespace heiscc {

using Json = nlohmann::ordered_json;
using Metadata = std::vector<std::pair<std::string, std::string>>;

Json to_json(const Vec2& v);
Json to_json(const Quadratic2& q);
Json to_json(const PathShape& s);
Json to_json(const PanelAtlas& atlas);
Json to_json(const VolumeReport& r);
Json to_json(const GeodesicFamily& f);
Json to_json(const CensusTable& t);

/// {"generators": [[x, y, w], ...], "symmetrize": bool}; w is twice the height.
GenSet gens_from_json(const Json& j);
GenSet read_gens_file(const std::string& path);

std::string format_double(double v);

/// Groups become OBJ "g" records; indices are 1-based in the file.
void write_obj(std::ostream& out, const TriangleMesh& mesh, const Metadata& meta = {});

/// '#'-prefixed metadata lines, then "n,count,prediction,ratio,residual".
void write_census_csv(std::ostream& out, const CensusTable& t, const Metadata& meta = {});

}  // namespace heiscc
