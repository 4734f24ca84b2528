#include "heiscc/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <thread>

#include "heiscc/errors.hpp"
#include "heiscc/volumes.hpp"

namespace heiscc {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OutOfRange("Heisenberg coordinate overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OutOfRange("Heisenberg coordinate overflow");
  return r;
}

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return h;
}

std::uint64_t hash_point(const HeisPoint& p) {
  return mix(static_cast<std::uint64_t>(p.x) * 0x9e3779b97f4a7c15ull ^ mix(static_cast<std::uint64_t>(p.y)) ^
             (static_cast<std::uint64_t>(p.w) << 1));
}

template <class T>
void put_le(std::ostream& out, T v) {
  auto u = static_cast<std::make_unsigned_t<T>>(v);
  char buf[sizeof(T)];
  for (std::size_t k = 0; k < sizeof(T); ++k) buf[k] = static_cast<char>((u >> (8 * k)) & 0xff);
  out.write(buf, sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw InvalidInput("truncated word-ball dump");
  std::make_unsigned_t<T> u = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) u |= static_cast<std::make_unsigned_t<T>>(buf[k]) << (8 * k);
  return static_cast<T>(u);
}

}  // namespace

// --- HeisPoint ---------------------------------------------------------------

HeisPoint HeisPoint::checked(std::int64_t x, std::int64_t y, std::int64_t w) {
  if (((w - checked_mul(x, y)) & 1) != 0)
    throw InvalidInput("w must have the parity of x*y (w is twice the height): " + to_string(HeisPoint{x, y, w}));
  return {x, y, w};
}

CCPoint HeisPoint::to_cc() const { return {Rational(x), Rational(y), make_rational(w, 2)}; }

std::string to_string(const HeisPoint& p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.w) + ")";
}

HeisPoint mul(const HeisPoint& a, const HeisPoint& b) {
  const std::int64_t twist = checked_add(checked_mul(a.x, b.y), -checked_mul(a.y, b.x));
  return {checked_add(a.x, b.x), checked_add(a.y, b.y), checked_add(checked_add(a.w, b.w), twist)};
}

HeisPoint inv(const HeisPoint& a) { return {-a.x, -a.y, -a.w}; }

// --- GenSet ------------------------------------------------------------------

GenSet GenSet::make(const std::vector<HeisPoint>& generators, bool symmetrize) {
  if (generators.empty()) throw InvalidInput("empty generating set");
  std::vector<HeisPoint> elems;
  auto add = [&](const HeisPoint& g) {
    if (std::find(elems.begin(), elems.end(), g) == elems.end()) elems.push_back(g);
  };
  for (const auto& g : generators) {
    HeisPoint::checked(g.x, g.y, g.w);
    if (g == HeisPoint{}) throw InvalidInput("the identity is not a valid generator");
    add(g);
  }
  if (symmetrize) {
    for (const auto& g : generators) add(inv(g));
  } else {
    for (const auto& g : elems) {
      if (std::find(elems.begin(), elems.end(), inv(g)) == elems.end())
        throw InvalidInput("generating set is not symmetric: missing inverse of " + to_string(g));
    }
  }
  std::vector<Vec2> proj;
  Rational top = elems.front().to_cc().z;
  for (const auto& g : elems) {
    proj.emplace_back(g.x, g.y);
    top = std::max(top, g.to_cc().z);
  }
  return GenSet{std::move(elems), symmetric_hull(proj, false), top};
}

GenSet GenSet::standard() { return make({{1, 0, 0}, {0, 1, 0}}, true); }

AlgebraicScalar max_generator_norm(const GenSet& gens, const PanelAtlas& atlas) {
  AlgebraicScalar best(0);
  for (const auto& g : gens.elements) {
    AlgebraicScalar d = cc_distance(atlas, g.to_cc());
    if (d > best) best = std::move(d);
  }
  return best;
}

// --- WordBall ----------------------------------------------------------------

std::size_t WordBall::find_slot(const HeisPoint& p) const {
  const std::size_t mask = slots_.size() - 1;
  std::size_t k = static_cast<std::size_t>(hash_point(p)) & mask;
  while (slots_[k].len != kEmpty && !(slots_[k].x == p.x && slots_[k].y == p.y && slots_[k].w == p.w)) k = (k + 1) & mask;
  return k;
}

void WordBall::reserve(std::size_t entries) {
  std::size_t cap = 16;
  while (cap < 2 * entries) cap *= 2;
  if (cap <= slots_.size()) return;
  std::vector<Slot> old(cap);
  old.swap(slots_);
  for (const auto& s : old) {
    if (s.len != kEmpty) slots_[find_slot({s.x, s.y, s.w})] = s;
  }
}

bool WordBall::insert(const HeisPoint& p, std::uint32_t len) {
  if (2 * (count_ + 1) > slots_.size()) reserve(2 * (count_ + 1));
  const std::size_t k = find_slot(p);
  if (slots_[k].len != kEmpty) return false;
  slots_[k] = {p.x, p.y, p.w, len};
  ++count_;
  return true;
}

std::optional<std::uint32_t> WordBall::length(const HeisPoint& p) const {
  if (slots_.empty()) return std::nullopt;
  const Slot& s = slots_[find_slot(p)];
  if (s.len == kEmpty) return std::nullopt;
  return s.len;
}

std::vector<std::pair<HeisPoint, std::uint32_t>> WordBall::sorted_entries() const {
  std::vector<std::pair<HeisPoint, std::uint32_t>> out;
  out.reserve(count_);
  for_each([&](const HeisPoint& p, std::uint32_t len) { out.emplace_back(p, len); });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t default_mem_budget() {
  if (const char* env = std::getenv("HEISCC_MEM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
    throw InvalidInput(std::string("HEISCC_MEM_BUDGET is not a byte count: ") + env);
  }
  return std::size_t{4} << 30;
}

WordBall bfs_ball(const GenSet& gens, int n, std::size_t mem_budget, unsigned threads) {
  if (n < 0) throw InvalidInput("negative BFS radius");
  const Rational V = ball_volumes(PanelAtlas::build(gens.L)).V;
  const Rational n4 = Rational(n) * n * n * n;
  const double estimate = to_double(V * n4) + 1;
  const double bytes = estimate * static_cast<double>(WordBall::kBytesPerEntry);
  if (bytes > static_cast<double>(mem_budget)) {
    throw MemoryBudgetExceeded("ball of radius " + std::to_string(n) + " holds about V*n^4 = " +
                               std::to_string(static_cast<long long>(estimate)) + " points (~" +
                               std::to_string(static_cast<long long>(bytes)) + " bytes), over the budget of " +
                               std::to_string(mem_budget) + " bytes");
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  WordBall ball;
  ball.radius_ = n;
  ball.gens_ = gens.elements;
  ball.reserve(static_cast<std::size_t>(estimate * 1.1) + 16);
  ball.insert({}, 0);
  ball.sphere_sizes_.push_back(1);

  std::vector<HeisPoint> frontier{HeisPoint{}};
  for (int level = 1; level <= n; ++level) {
    const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(1, frontier.size() / 4096));
    std::vector<std::vector<HeisPoint>> found(chunks);
    auto expand = [&](std::size_t c) {
      const std::size_t lo = frontier.size() * c / chunks;
      const std::size_t hi = frontier.size() * (c + 1) / chunks;
      for (std::size_t k = lo; k < hi; ++k) {
        for (const auto& g : ball.gens_) {
          const HeisPoint q = mul(frontier[k], g);
          if (!ball.length(q)) found[c].push_back(q);
        }
      }
    };
    if (chunks == 1) {
      expand(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(expand, c);
      for (auto& t : pool) t.join();
    }
    std::vector<HeisPoint> next;
    for (const auto& part : found) {
      for (const auto& q : part) {
        if (ball.insert(q, static_cast<std::uint32_t>(level))) next.push_back(q);
      }
    }
    if (ball.slots_.size() * sizeof(WordBall::Slot) > mem_budget)
      throw MemoryBudgetExceeded("word-ball table outgrew the memory budget of " + std::to_string(mem_budget) + " bytes");
    ball.sphere_sizes_.push_back(next.size());
    frontier = std::move(next);
  }
  return ball;
}

void write_wordball(std::ostream& out, const WordBall& ball) {
  out.write("HZWB", 4);
  put_le<std::uint32_t>(out, 1);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ball.radius()));
  put_le<std::uint64_t>(out, ball.size());
  for (const auto& [p, len] : ball.sorted_entries()) {
    put_le<std::int64_t>(out, p.x);
    put_le<std::int64_t>(out, p.y);
    put_le<std::int64_t>(out, p.w);
    put_le<std::uint32_t>(out, len);
  }
}

WordBall read_wordball(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != "HZWB") throw InvalidInput("not a word-ball dump");
  if (get_le<std::uint32_t>(in) != 1) throw InvalidInput("unsupported word-ball dump version");
  WordBall ball;
  ball.radius_ = static_cast<int>(get_le<std::uint32_t>(in));
  const auto count = get_le<std::uint64_t>(in);
  ball.reserve(count);
  ball.sphere_sizes_.assign(static_cast<std::size_t>(ball.radius_) + 1, 0);
  for (std::uint64_t k = 0; k < count; ++k) {
    HeisPoint p;
    p.x = get_le<std::int64_t>(in);
    p.y = get_le<std::int64_t>(in);
    p.w = get_le<std::int64_t>(in);
    const auto len = get_le<std::uint32_t>(in);
    if (len > static_cast<std::uint32_t>(ball.radius_) || !ball.insert(p, len)) throw InvalidInput("corrupt word-ball dump");
    ++ball.sphere_sizes_[len];
  }
  return ball;
}

// --- word length and statistics ------------------------------------------------

std::int64_t word_length_std(const HeisPoint& p, const PanelAtlas& atlas) {
  const CCPoint c = p.to_cc();
  const Rational g = gauge_norm(atlas.L(), c.footprint());
  std::int64_t lo = ceil(g).get_si();
  if (!parity_check(p, lo)) ++lo;
  auto inside = [&](std::int64_t n) { return ball_compare(atlas, c, Rational(n)) != BallRelation::Outside; };
  if (inside(lo)) return lo;
  // lo is outside; grow hi until inside, then bisect over same-parity values.
  std::int64_t step = 2;
  std::int64_t hi = lo + step;
  while (!inside(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  while (hi - lo > 2) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (!parity_check(p, mid)) --mid;
    if (inside(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

bool parity_check(const HeisPoint& p, std::int64_t n) { return ((p.x + p.y + n) & 1) == 0; }

KratGap krat_gap_scan(const WordBall& ball, const PanelAtlas& atlas) {
  KratGap out;
  bool first = true;
  for (const auto& [p, len] : ball.sorted_entries()) {
    const AlgebraicScalar gap = AlgebraicScalar(static_cast<long>(len)) - cc_distance(atlas, p.to_cc());
    if (first || gap > out.max_gap) {
      out.max_gap = gap;
      out.argmax = p;
    }
    if (first || gap < out.min_gap) {
      out.min_gap = gap;
      out.argmin = p;
    }
    first = false;
    ++out.scanned;
  }
  return out;
}

std::vector<HeisPoint> geodesic_point_set(const WordBall& ball, const HeisPoint& p) {
  const auto len = ball.length(p);
  if (!len) throw OutOfRange(to_string(p) + " lies outside the word ball of radius " + std::to_string(ball.radius()));
  std::vector<HeisPoint> all{p};
  std::vector<HeisPoint> level{p};
  for (std::uint32_t m = *len; m > 0; --m) {
    std::vector<HeisPoint> prev;
    for (const auto& u : level) {
      for (const auto& g : ball.generators()) {
        const HeisPoint v = mul(u, inv(g));
        const auto lv = ball.length(v);
        if (lv && *lv == m - 1) prev.push_back(v);
      }
    }
    std::sort(prev.begin(), prev.end());
    prev.erase(std::unique(prev.begin(), prev.end()), prev.end());
    all.insert(all.end(), prev.begin(), prev.end());
    level = std::move(prev);
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<HeisPoint> canonical_geodesic(const WordBall& ball, const HeisPoint& p) {
  const auto members = geodesic_point_set(ball, p);
  const std::uint32_t len = *ball.length(p);
  std::vector<HeisPoint> path{HeisPoint{}};
  for (std::uint32_t step = 1; step <= len; ++step) {
    bool advanced = false;
    for (const auto& g : ball.generators()) {
      const HeisPoint v = mul(path.back(), g);
      const auto lv = ball.length(v);
      if (lv && *lv == step && std::binary_search(members.begin(), members.end(), v)) {
        path.push_back(v);
        advanced = true;
        break;
      }
    }
    if (!advanced) throw ConsistencyError("geodesic point set is not connected at " + to_string(path.back()));
  }
  return path;
}

std::int64_t spread(const WordBall& ball, const HeisPoint& p) {
  const auto members = geodesic_point_set(ball, p);
  const auto gamma = canonical_geodesic(ball, p);
  const std::int64_t beyond = ball.radius() + 1;
  std::int64_t worst = 0;
  for (const auto& v : members) {
    std::int64_t best = beyond;
    const HeisPoint vi = inv(v);
    for (const auto& u : gamma) {
      const auto d = ball.length(mul(vi, u));
      if (d) best = std::min<std::int64_t>(best, *d);
      if (best == 0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace heiscc
