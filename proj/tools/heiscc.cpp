#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "heiscc/cc_metric.hpp"
#include "heiscc/counting.hpp"
#include "heiscc/errors.hpp"
#include "heiscc/io.hpp"
#include "heiscc/verify.hpp"
#include "heiscc/volumes.hpp"

using namespace heiscc;

namespace {

struct RunConfig {
  std::string gens_path;
  std::string format;
  std::uint64_t seed = 20240611;
  std::size_t mem_budget = 0;
  unsigned threads = 0;
};

Metadata run_meta(const RunConfig& cfg, const std::string& command) {
  return {{"command", command}, {"gens", cfg.gens_path}, {"seed", std::to_string(cfg.seed)}};
}

Json meta_json(const RunConfig& cfg, const std::string& command) {
  Json j;
  for (const auto& [k, v] : run_meta(cfg, command)) j[k] = v;
  return j;
}

void print_meta_text(std::ostream& out, const RunConfig& cfg, const std::string& command) {
  for (const auto& [k, v] : run_meta(cfg, command)) out << "# " << k << ": " << v << "\n";
}

bool is_standard(const GenSet& g) { return g.L == GenSet::standard().L && g.elements.size() == 4; }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw InvalidInput("format " + cfg.format + " not supported here (use " + list + ")");
}

// --- shape ------------------------------------------------------------------

int cmd_shape(const RunConfig& cfg, int mesh) {
  const GenSet gens = read_gens_file(cfg.gens_path);
  const PanelAtlas atlas = PanelAtlas::build(gens.L);
  const VolumeReport vol = ball_volumes(atlas);
  if (cfg.format == "obj") {
    Metadata meta = run_meta(cfg, "shape");
    meta.emplace_back("subdivisions", std::to_string(mesh > 0 ? mesh : 8));
    write_obj(std::cout, sphere_mesh(atlas, mesh > 0 ? mesh : 8), meta);
    return 0;
  }
  require_format(cfg, {"json", "text"});
  if (cfg.format == "json") {
    Json j = meta_json(cfg, "shape");
    j["atlas"] = to_json(atlas);
    j["volumes"] = to_json(vol);
    if (mesh > 0) {
      std::ostringstream obj;
      write_obj(obj, sphere_mesh(atlas, mesh), run_meta(cfg, "shape"));
      j["mesh_obj"] = obj.str();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  print_meta_text(std::cout, cfg, "shape");
  std::cout << "L vertices:";
  for (const auto& v : gens.L.vertices()) std::cout << " " << to_string(v);
  std::cout << "\nisoperimetrix corners:";
  for (const auto& v : atlas.iso().polygon.vertices()) std::cout << " " << to_string(v);
  std::cout << "\nquads: " << atlas.quads().size() << "\n";
  for (const auto& q : atlas.quads()) {
    std::cout << "  (" << q.id.i << "," << q.id.j << ") directions " << q.directions << "  A = " << to_string(q.poly.a1) << " x^2 + "
              << to_string(q.poly.a2) << " xy + " << to_string(q.poly.a3) << " y^2 + " << to_string(q.poly.b1) << " x + "
              << to_string(q.poly.b2) << " y + " << to_string(q.poly.c) << "\n";
  }
  std::cout << "A_max = " << to_string(atlas.a_max()) << "\n";
  std::cout << "V = " << to_string(vol.V) << "\nV_reg = " << to_string(vol.V_reg) << "\nV_uns = " << to_string(vol.V_uns)
            << "\nunique-geodesic probability = " << to_string(vol.unique_probability) << "\n";
  for (const auto& [k, v] : vol.by_directions) std::cout << "  " << k << "-direction panels: " << to_string(v) << "\n";
  return 0;
}

// --- dist -------------------------------------------------------------------

int cmd_dist(const RunConfig& cfg, const std::vector<std::string>& coords) {
  if (coords.size() != 3) throw InvalidInput("dist takes three coordinates x y w (w = 2z)");
  const GenSet gens = read_gens_file(cfg.gens_path);
  const PanelAtlas atlas = PanelAtlas::build(gens.L);
  const Rational x = parse_rational(coords[0]), y = parse_rational(coords[1]), w = parse_rational(coords[2]);
  const CCPoint p{x, y, w / 2};
  const AlgebraicScalar d = cc_distance(atlas, p);
  const bool origin = x == 0 && y == 0 && w == 0;
  require_format(cfg, {"json", "text"});
  if (cfg.format == "json") {
    Json j = meta_json(cfg, "dist");
    j["point"] = {{"x", to_string(x)}, {"y", to_string(y)}, {"w", to_string(w)}, {"z", to_string(p.z)}};
    j["distance"] = d.to_string();
    j["distance_float"] = d.to_double();
    if (!origin) {
      const GeodesicFamily f = geodesics(atlas, p);
      j["geodesics"] = to_json(f);
      j["cc_unique"] = is_cc_unique(atlas, p);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  print_meta_text(std::cout, cfg, "dist");
  std::cout << "d_CC(" << to_string(x) << ", " << to_string(y) << ", " << to_string(p.z) << ") = " << d.to_string() << " ~ "
            << format_double(d.to_double()) << "\n";
  if (origin) return 0;
  const GeodesicFamily f = geodesics(atlas, p);
  std::cout << "family: " << to_string(f.kind) << "\n";
  if (f.quad) std::cout << "quad: (" << f.quad->i << "," << f.quad->j << ")\n";
  if (f.side) std::cout << "side: " << *f.side << "\n";
  std::cout << "representative:";
  for (std::size_t k = 0; k < f.directions.size(); ++k)
    std::cout << " " << f.lengths[k].to_string() << " * " << to_string(f.directions[k]) << (k + 1 < f.directions.size() ? "," : "");
  std::cout << "\n";
  if (f.area_range) std::cout << "area range on the unit sphere: [" << to_string(f.area_range->first) << ", " << to_string(f.area_range->second) << "]\n";
  return 0;
}

// --- bfs --------------------------------------------------------------------

int cmd_bfs(const RunConfig& cfg, int radius, const std::string& dump) {
  const GenSet gens = read_gens_file(cfg.gens_path);
  const PanelAtlas atlas = PanelAtlas::build(gens.L);
  const WordBall ball = bfs_ball(gens, radius, cfg.mem_budget, cfg.threads);
  if (!dump.empty()) {
    std::ofstream out(dump, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + dump);
    write_wordball(out, ball);
  }
  std::optional<KratGap> gap;
  if (is_standard(gens)) gap = krat_gap_scan(ball, atlas);
  const auto& sizes = ball.sphere_sizes();
  require_format(cfg, {"json", "csv", "text"});
  if (cfg.format == "json") {
    Json j = meta_json(cfg, "bfs");
    j["radius"] = radius;
    j["ball_size"] = ball.size();
    j["sphere_sizes"] = sizes;
    if (gap) {
      j["gap"] = {{"min", gap->min_gap.to_string()}, {"argmin", to_string(gap->argmin)},
                  {"max", gap->max_gap.to_string()}, {"argmax", to_string(gap->argmax)}};
    }
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    for (const auto& [k, v] : run_meta(cfg, "bfs")) std::cout << "# " << k << ": " << v << "\n";
    std::cout << "n,sphere_size,ball_size\n";
    std::uint64_t total = 0;
    for (std::size_t n = 0; n < sizes.size(); ++n) {
      total += sizes[n];
      std::cout << n << "," << sizes[n] << "," << total << "\n";
    }
  } else {
    print_meta_text(std::cout, cfg, "bfs");
    std::cout << "|B_" << radius << "| = " << ball.size() << "\n";
    for (std::size_t n = 0; n < sizes.size(); ++n) std::cout << "|S_" << n << "| = " << sizes[n] << "\n";
    if (gap) std::cout << "word length - d_CC in [" << gap->min_gap.to_string() << ", " << gap->max_gap.to_string() << "]\n";
  }
  return 0;
}

// --- count ------------------------------------------------------------------

std::optional<Sector> pick_sector(const ConvexPolygon& L, int sectors, int index) {
  if (sectors == 0) return std::nullopt;
  const auto all = symmetric_sectors(L, sectors);
  if (index < 0 || index >= static_cast<int>(all.size())) throw InvalidInput("sector index out of range");
  return all[static_cast<std::size_t>(index)];
}

Part parse_part(const std::string& s) {
  if (s == "all") return Part::All;
  if (s == "regular") return Part::Regular;
  if (s == "unstable") return Part::Unstable;
  throw InvalidInput("unknown part: " + s);
}

int cmd_count(const RunConfig& cfg, const std::string& mode_name, std::int64_t n_max, std::vector<std::int64_t> ns, int sectors,
              int sector_index, const std::string& part) {
  const GenSet gens = read_gens_file(cfg.gens_path);
  const PanelAtlas atlas = PanelAtlas::build(gens.L);
  const CountMode mode = parse_count_mode(mode_name);
  const Region region{pick_sector(gens.L, sectors, sector_index), parse_part(part)};
  if (ns.empty()) {
    if (n_max < 1) throw InvalidInput("--n-max must be positive");
    for (std::int64_t n = 1; n <= n_max; n *= 2) ns.push_back(n);
    if (ns.back() != n_max) ns.push_back(n_max);
  }
  CensusTable t;
  if (mode == CountMode::Sphere && !is_standard(gens)) {
    // Word spheres for other generators come from a BFS table.
    std::int64_t top = 0;
    for (auto n : ns) top = std::max(top, n);
    const WordBall ball = bfs_ball(gens, static_cast<int>(top), cfg.mem_budget, cfg.threads);
    t.mode = mode;
    t.region = region.describe();
    t.cone_volume = region_cone_volume(atlas, region);
    std::sort(ns.begin(), ns.end());
    for (auto n : ns) {
      CensusRow row;
      row.n = n;
      row.count = sphere_sector_count(ball, atlas, n, region);
      row.prediction = 4 * t.cone_volume * Rational(n) * Rational(n) * Rational(n);
      const double pred = to_double(row.prediction);
      row.ratio = pred > 0 ? static_cast<double>(row.count) / pred : 0.0;
      row.residual = static_cast<double>(row.count) - pred;
      t.rows.push_back(row);
    }
  } else {
    t = convergence_table(mode, atlas, ns, region, cfg.threads);
  }
  require_format(cfg, {"json", "csv", "text"});
  if (cfg.format == "json") {
    Json j = meta_json(cfg, "count");
    j["census"] = to_json(t);
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    write_census_csv(std::cout, t, run_meta(cfg, "count"));
  } else {
    print_meta_text(std::cout, cfg, "count");
    std::cout << "# mode: " << to_string(t.mode) << "\n# region: " << t.region << "\n# cone volume: " << to_string(t.cone_volume) << "\n";
    std::cout << std::setw(8) << "n" << std::setw(16) << "count" << std::setw(20) << "prediction" << std::setw(12) << "ratio"
              << std::setw(16) << "residual" << std::setw(14) << "residual/n^2" << "\n";
    for (const auto& r : t.rows) {
      const double n2 = static_cast<double>(r.n) * static_cast<double>(r.n);
      std::cout << std::setw(8) << r.n << std::setw(16) << r.count << std::setw(20) << std::fixed << std::setprecision(2)
                << to_double(r.prediction) << std::setw(12) << std::setprecision(6) << r.ratio << std::setw(16) << std::setprecision(2)
                << r.residual << std::setw(14) << std::setprecision(5) << r.residual / n2 << "\n";
      std::cout.unsetf(std::ios::floatfield);
    }
  }
  return 0;
}

// --- measure ----------------------------------------------------------------

int cmd_measure(const RunConfig& cfg, std::int64_t n, int sectors) {
  const GenSet gens = read_gens_file(cfg.gens_path);
  const PanelAtlas atlas = PanelAtlas::build(gens.L);
  const auto secs = symmetric_sectors(gens.L, sectors);
  SectorMeasure m;
  if (is_standard(gens)) {
    m = sector_measure_std(atlas, n, secs, cfg.threads);
  } else {
    const WordBall ball = bfs_ball(gens, static_cast<int>(n), cfg.mem_budget, cfg.threads);
    m = sector_measure(ball, atlas, n, secs);
  }
  const double V = to_double(ball_volumes(atlas).V);
  const double n3 = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  require_format(cfg, {"json", "csv", "text"});
  if (cfg.format == "json") {
    Json j = meta_json(cfg, "measure");
    j["n"] = n;
    j["sphere_size"] = m.total;
    j["sphere_constant"] = static_cast<double>(m.total) / n3;
    j["four_V"] = 4 * V;
    j["max_deviation"] = m.max_deviation;
    Json rows = Json::array();
    for (std::size_t k = 0; k < secs.size(); ++k) {
      rows.push_back({{"from", to_json(secs[k].from)}, {"to", to_json(secs[k].to)}, {"expected", to_string(m.expected[k])},
                      {"count", m.counts[k]}, {"fraction", static_cast<double>(m.counts[k]) / static_cast<double>(m.total)}});
    }
    j["sectors"] = rows;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cfg.format == "csv") {
    for (const auto& [k, v] : run_meta(cfg, "measure")) std::cout << "# " << k << ": " << v << "\n";
    std::cout << "# n: " << n << "\n# sphere size: " << m.total << "\n";
    std::cout << "sector,expected,count,fraction,deviation\n";
  } else {
    print_meta_text(std::cout, cfg, "measure");
    std::cout << "|S_" << n << "| = " << m.total << "   |S_n|/n^3 = " << format_double(static_cast<double>(m.total) / n3)
              << "   4V = " << format_double(4 * V) << "\n";
  }
  for (std::size_t k = 0; k < secs.size(); ++k) {
    const double frac = static_cast<double>(m.counts[k]) / static_cast<double>(m.total);
    const double dev = frac - to_double(m.expected[k]);
    if (cfg.format == "csv") {
      std::cout << k << "," << to_string(m.expected[k]) << "," << m.counts[k] << "," << format_double(frac) << "," << format_double(dev) << "\n";
    } else {
      std::cout << "sector " << k << " [" << to_string(secs[k].from) << " -> " << to_string(secs[k].to) << "]  cone "
                << to_string(m.expected[k]) << "  count " << m.counts[k] << "  fraction " << format_double(frac) << "\n";
    }
  }
  if (cfg.format == "text") std::cout << "max deviation = " << format_double(m.max_deviation) << "\n";
  return 0;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, VerifyOptions opt) {
  const GenSet gens = read_gens_file(cfg.gens_path);
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  opt.mem_budget = cfg.mem_budget;
  require_format(cfg, {"json", "text"});
  const bool text = cfg.format == "text";
  if (text) print_meta_text(std::cout, cfg, "verify");
  const auto results = verify_all(gens, opt, [&](const CheckResult& r) {
    if (text) std::cout << (r.passed ? "PASS " : "FAIL ") << r.group << ": " << r.name << "  (" << r.detail << ")" << std::endl;
  });
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  if (text) {
    std::cout << (failed ? "FAIL" : "PASS") << ": " << results.size() - failed << "/" << results.size() << " checks passed\n";
  } else {
    Json j = meta_json(cfg, "verify");
    j["radius"] = opt.radius;
    Json rows = Json::array();
    for (const auto& r : results) rows.push_back({{"group", r.group}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    j["checks"] = rows;
    j["passed"] = failed == 0;
    std::cout << j.dump(2) << "\n";
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygonal CC metrics on the Heisenberg group: limit shapes, distances, word balls and lattice counts"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.mem_budget = default_mem_budget();
  std::string format;
  app.add_option("--gens", cfg.gens_path, "generating-set JSON file")->required();
  app.add_option("--format", format, "output format: json, csv, text or obj")->check(CLI::IsMember({"json", "csv", "text", "obj"}));
  app.add_option("--seed", cfg.seed, "random seed (recorded in every output)");
  app.add_option("--mem-budget", cfg.mem_budget, "byte budget for BFS tables (default: HEISCC_MEM_BUDGET or 4 GiB)");
  app.add_option("--threads", cfg.threads, "worker threads (0 = all available)");

  int mesh = 0;
  auto* shape = app.add_subcommand("shape", "limit shape atlas, volumes and optional OBJ mesh");
  shape->add_option("--mesh", mesh, "add a triangle mesh with this many subdivisions per panel");
  shape->add_flag("--volumes", "include the volume report (always on)");

  std::vector<std::string> coords;
  auto* dist = app.add_subcommand("dist", "CC distance and geodesic family of (x, y, w) with w = 2z");
  dist->add_option("coords", coords, "x y w")->expected(3)->required();

  int radius = 16;
  std::string dump;
  auto* bfs = app.add_subcommand("bfs", "word-metric ball by breadth-first search");
  bfs->add_option("--radius", radius, "ball radius")->check(CLI::Range(0, 100000));
  bfs->add_option("--dump", dump, "write the table in the binary HZWB format");

  std::string mode = "annulus", part = "all";
  std::int64_t n_max = 64;
  std::vector<std::int64_t> ns;
  int sectors = 0, sector_index = 0;
  auto* count = app.add_subcommand("count", "lattice counts against the cone-volume prediction");
  count->add_option("--mode", mode, "annulus, sphere or ball")->check(CLI::IsMember({"annulus", "sphere", "ball"}));
  count->add_option("--n-max", n_max, "largest radius; radii double from 1");
  count->add_option("--n", ns, "explicit radii (overrides --n-max)");
  count->add_option("--sectors", sectors, "split the footprint into this many symmetric sectors (2N or 4N)");
  count->add_option("--sector", sector_index, "sector to count when --sectors is set");
  count->add_option("--part", part, "all, regular or unstable")->check(CLI::IsMember({"all", "regular", "unstable"}));

  std::int64_t measure_n = 128;
  int measure_sectors = 8;
  auto* measure = app.add_subcommand("measure", "sector distribution of a word sphere against the cone measure");
  measure->add_option("--n", measure_n, "sphere radius")->check(CLI::PositiveNumber);
  measure->add_option("--sectors", measure_sectors, "2N or 4N sectors");

  VerifyOptions vopt;
  bool quick = false;
  auto* verify = app.add_subcommand("verify", "run every invariant check; exits nonzero on failure");
  verify->add_option("--radius", vopt.radius, "BFS radius");
  verify->add_option("--mc-samples", vopt.mc_samples, "Monte Carlo samples per panel (0 skips)");
  verify->add_flag("--quick", quick, "smaller samples, no Monte Carlo, no n = 256 measure run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*shape) {
      cfg.format = format.empty() ? "json" : format;
      return cmd_shape(cfg, mesh);
    }
    if (*dist) {
      cfg.format = format.empty() ? "text" : format;
      return cmd_dist(cfg, coords);
    }
    if (*bfs) {
      cfg.format = format.empty() ? "text" : format;
      return cmd_bfs(cfg, radius, dump);
    }
    if (*count) {
      cfg.format = format.empty() ? "csv" : format;
      return cmd_count(cfg, mode, n_max, ns, sectors, sector_index, part);
    }
    if (*measure) {
      cfg.format = format.empty() ? "text" : format;
      return cmd_measure(cfg, measure_n, measure_sectors);
    }
    if (*verify) {
      cfg.format = format.empty() ? "text" : format;
      if (quick) {
        vopt.mc_samples = 0;
        vopt.dido_paths = 100;
        vopt.measure_convergence = false;
      }
      return cmd_verify(cfg, vopt);
    }
  } catch (const MemoryBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateHull& e) {
    std::cerr << "error: degenerate hull: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
