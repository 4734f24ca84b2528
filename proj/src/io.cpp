#include "heiscc/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "heiscc/errors.hpp"

namespace heiscc {

Json to_json(const Vec2& v) { return Json::array({to_string(v.x), to_string(v.y)}); }

Json to_json(const Quadratic2& q) {
  return Json{{"a1", to_string(q.a1)}, {"a2", to_string(q.a2)}, {"a3", to_string(q.a3)},
              {"b1", to_string(q.b1)}, {"b2", to_string(q.b2)}, {"c", to_string(q.c)}};
}

Json to_json(const PathShape& s) {
  Json segs = Json::array();
  for (const auto& seg : s.segments) segs.push_back({{"direction", to_json(seg.direction)}, {"length", to_string(seg.length)}});
  return Json{{"segments", segs}, {"total", to_string(s.total)}, {"endpoint", to_json(s.endpoint)}, {"balayage", to_string(s.balayage)}};
}

Json to_json(const PanelAtlas& atlas) {
  Json j;
  Json verts = Json::array();
  for (const auto& v : atlas.L().vertices()) verts.push_back(to_json(v));
  j["L"] = verts;

  Json iso = Json::array();
  for (const auto& s : atlas.iso().sides) {
    iso.push_back({{"index", s.index},
                   {"direction", to_json(s.direction)},
                   {"length", to_string(s.length)},
                   {"offset", to_string(s.offset)}});
  }
  Json iso_verts = Json::array();
  for (const auto& v : atlas.iso().polygon.vertices()) iso_verts.push_back(to_json(v));
  j["isoperimetrix"] = {{"vertices", iso_verts}, {"sides", iso}, {"area", to_string(atlas.iso().area)}};

  Json quads = Json::array();
  for (const auto& q : atlas.quads()) {
    Json qv = Json::array();
    for (const auto& v : q.vertices) qv.push_back(to_json(v));
    quads.push_back({{"i", q.id.i},
                     {"j", q.id.j},
                     {"directions", q.directions},
                     {"vertices", qv},
                     {"poly", to_json(q.poly)},
                     {"max", to_string(q.max_value)}});
  }
  j["quads"] = quads;

  Json sides = Json::array();
  for (const auto& s : atlas.sides()) {
    sides.push_back({{"k", s.k},
                     {"from", to_json(s.from)},
                     {"to", to_json(s.to)},
                     {"value_from", to_string(s.value_from)},
                     {"value_to", to_string(s.value_to)},
                     {"peak", to_string(s.peak)}});
  }
  j["side_panels"] = sides;

  Json null = Json::array();
  for (const auto& s : atlas.null_segments()) {
    null.push_back({{"i", s.i}, {"direction", to_json(s.direction)}, {"length", to_string(s.length)}, {"endpoint", to_json(s.endpoint)}});
  }
  j["null_segments"] = null;
  j["A_max"] = to_string(atlas.a_max());
  return j;
}

Json to_json(const VolumeReport& r) {
  Json per_quad = Json::array();
  for (const auto& [id, v] : r.per_quad) per_quad.push_back({{"i", id.i}, {"j", id.j}, {"volume", to_string(v)}});
  Json per_side = Json::array();
  for (const auto& [k, v] : r.per_side) per_side.push_back({{"k", k}, {"volume", to_string(v)}});
  Json by_dir = Json::object();
  for (const auto& [d, v] : r.by_directions) by_dir[std::to_string(d) + "-sided"] = to_string(v);
  return Json{{"V", to_string(r.V)},
              {"V_reg", to_string(r.V_reg)},
              {"V_uns", to_string(r.V_uns)},
              {"unique_geodesic_probability", to_string(r.unique_probability)},
              {"by_combinatorics", by_dir},
              {"per_quad_one_sign", per_quad},
              {"per_side", per_side}};
}

Json to_json(const GeodesicFamily& f) {
  Json segs = Json::array();
  for (std::size_t k = 0; k < f.directions.size(); ++k)
    segs.push_back({{"direction", to_json(f.directions[k])}, {"length", f.lengths[k].to_string()}});
  Json j{{"kind", to_string(f.kind)}, {"scale", f.scale.to_string()}, {"segments", segs}};
  if (f.representative) j["unit_representative"] = to_json(*f.representative);
  if (f.area_range) j["area_range"] = Json::array({to_string(f.area_range->first), to_string(f.area_range->second)});
  if (f.quad) j["quad"] = Json::array({f.quad->i, f.quad->j});
  if (f.side) j["side"] = *f.side;
  return j;
}

Json to_json(const CensusTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n},
                    {"count", r.count},
                    {"prediction", to_string(r.prediction)},
                    {"ratio", r.ratio},
                    {"residual", r.residual}});
  }
  return Json{{"mode", to_string(t.mode)}, {"region", t.region}, {"cone_volume", to_string(t.cone_volume)}, {"rows", rows}};
}

GenSet gens_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw InvalidInput("generator file needs a \"generators\" array");
  std::vector<HeisPoint> gens;
  for (const auto& g : j["generators"]) {
    if (!g.is_array() || g.size() != 3) throw InvalidInput("each generator must be [x, y, w] with w = 2z");
    for (const auto& c : g) {
      if (!c.is_number_integer()) throw InvalidInput("generator coordinates must be integers");
    }
    gens.push_back(HeisPoint::checked(g[0].get<std::int64_t>(), g[1].get<std::int64_t>(), g[2].get<std::int64_t>()));
  }
  bool symmetrize = false;
  if (j.contains("symmetrize")) {
    if (!j["symmetrize"].is_boolean()) throw InvalidInput("\"symmetrize\" must be a boolean");
    symmetrize = j["symmetrize"].get<bool>();
  }
  return GenSet::make(gens, symmetrize);
}

GenSet read_gens_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open generator file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed generator file " + path + ": " + e.what());
  }
  return gens_from_json(j);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_obj(std::ostream& out, const TriangleMesh& mesh, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
  for (const auto& v : mesh.vertices) {
    out << "v " << format_double(to_double(v.x)) << ' ' << format_double(to_double(v.y)) << ' ' << format_double(to_double(v.z)) << '\n';
  }
  for (const auto& g : mesh.groups) {
    out << "g " << g.name << '\n';
    for (const auto& f : g.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void write_census_csv(std::ostream& out, const CensusTable& t, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
  out << "# mode: " << to_string(t.mode) << '\n';
  out << "# region: " << t.region << '\n';
  out << "# cone_volume: " << to_string(t.cone_volume) << '\n';
  out << "n,count,prediction,ratio,residual\n";
  for (const auto& r : t.rows) {
    out << r.n << ',' << r.count << ',' << to_string(r.prediction) << ',' << format_double(r.ratio) << ',' << format_double(r.residual)
        << '\n';
  }
}

}  // namespace heiscc
