#include "restlab/families.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace restlab {

std::uint64_t SplitMix::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix::below(std::uint64_t bound) {
  if (bound == 0) fail(Err::InvalidArgument, "below(0)");
  // Rejection keeps the draw unbiased; the retry loop terminates with
  // probability 1 and in practice within a couple of iterations.
  std::uint64_t limit = ~0ull - (~0ull % bound);
  for (;;) {
    std::uint64_t v = next();
    if (v < limit) return v % bound;
  }
}

FamilySpec parse_family(const std::string& text) {
  FamilySpec spec;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (spec.kind.empty()) fail(Err::ParseError, "family spec with empty kind");
  if (colon == std::string::npos) return spec;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(Err::ParseError, "family param must be key=value: '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      long long v = std::stoll(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      if (!spec.params.emplace(key, v).second)
        fail(Err::ParseError, "duplicate family param '" + key + "'");
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Err::ParseError, "bad integer in family param '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

std::string format_family(const FamilySpec& spec) {
  std::string out = spec.kind;
  char sep = ':';
  for (const auto& [k, v] : spec.params) {
    out += sep;
    out += k + "=" + std::to_string(v);
    sep = ',';
  }
  return out;
}

namespace {

// Pulls exactly the expected keys out of the spec; anything missing or left
// over is a spec error, so typos never silently change the family.
class ParamReader {
 public:
  ParamReader(const FamilySpec& spec, std::initializer_list<const char*> keys)
      : spec_(spec) {
    for (const char* k : keys) expected_.insert(k);
    for (const auto& [k, v] : spec.params)
      if (!expected_.count(k))
        fail(Err::InfeasibleSpec,
             "family '" + spec.kind + "' does not take param '" + k + "'");
  }

  std::int64_t get(const std::string& key) const {
    auto it = spec_.params.find(key);
    if (it == spec_.params.end())
      fail(Err::InfeasibleSpec, "family '" + spec_.kind + "' needs param '" + key + "'");
    return it->second;
  }

 private:
  const FamilySpec& spec_;
  std::set<std::string> expected_;
};

void need_range(std::int64_t v, std::int64_t lo, std::int64_t hi, const std::string& what) {
  if (v < lo || v > hi)
    fail(Err::InfeasibleSpec, what + "=" + std::to_string(v) + " outside [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

PointSet2 random_plane_set(const FieldCtx& f, std::int64_t m, std::uint64_t seed) {
  need_range(m, 0, f.q() * f.q(), "m");
  // Partial Fisher-Yates over the code space: deterministic given the seed.
  std::vector<std::uint32_t> codes(static_cast<std::size_t>(f.q() * f.q()));
  for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<std::uint32_t>(i);
  SplitMix rng(seed ^ 0x5eedULL);
  std::vector<Vec2> pts;
  for (std::int64_t i = 0; i < m; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    static_cast<std::size_t>(rng.below(codes.size() - i));
    std::swap(codes[i], codes[j]);
    pts.push_back(decode2(f, codes[i]));
  }
  return PointSet2::of(f, std::move(pts));
}

}  // namespace

bool is_set_kind(const std::string& kind) {
  return kind == "random" || kind == "single_line" || kind == "parallel_lines" ||
         kind == "grid" || kind == "few_directions" || kind == "paraboloid_subset";
}

PointSet2 generate_set(const FieldCtx& f, const FamilySpec& spec) {
  if (spec.kind == "random") {
    ParamReader p(spec, {"m", "seed"});
    return random_plane_set(f, p.get("m"), static_cast<std::uint64_t>(p.get("seed")));
  }
  if (spec.kind == "single_line") {
    ParamReader p(spec, {"n"});
    std::int64_t n = p.get("n");
    need_range(n, 0, f.q(), "n");
    std::vector<Vec2> pts;
    for (std::int64_t i = 0; i < n; ++i)
      pts.push_back({f.from_int(static_cast<long long>(i)), f.from_int(0)});
    return PointSet2::of(f, std::move(pts));
  }
  if (spec.kind == "parallel_lines") {
    ParamReader p(spec, {"lines", "per_line"});
    std::int64_t l = p.get("lines");
    std::int64_t n = p.get("per_line");
    need_range(l, 1, f.q(), "lines");
    need_range(n, 1, f.q(), "per_line");
    std::vector<Vec2> pts;
    for (std::int64_t j = 0; j < l; ++j)
      for (std::int64_t i = 0; i < n; ++i)
        pts.push_back({f.from_int(static_cast<long long>(i)),
                       f.from_int(static_cast<long long>(j))});
    return PointSet2::of(f, std::move(pts));
  }
  if (spec.kind == "grid") {
    ParamReader p(spec, {"nx", "ny"});
    std::int64_t nx = p.get("nx");
    std::int64_t ny = p.get("ny");
    need_range(nx, 1, f.q(), "nx");
    need_range(ny, 1, f.q(), "ny");
    std::vector<Vec2> pts;
    for (std::int64_t x = 0; x < nx; ++x)
      for (std::int64_t y = 0; y < ny; ++y)
        pts.push_back({f.from_int(static_cast<long long>(x)),
                       f.from_int(static_cast<long long>(y))});
    return PointSet2::of(f, std::move(pts));
  }
  if (spec.kind == "few_directions") {
    ParamReader p(spec, {"directions", "per_line"});
    std::int64_t d = p.get("directions");
    std::int64_t n = p.get("per_line");
    need_range(d, 1, f.q(), "directions");
    need_range(n, 1, f.q() - 1, "per_line");
    // d punctured lines through the origin with slopes 0..d-1; distinct since
    // the x-coordinate never vanishes.
    std::vector<Vec2> pts;
    for (std::int64_t s = 0; s < d; ++s)
      for (std::int64_t t = 1; t <= n; ++t) {
        Scalar x = f.from_int(static_cast<long long>(t));
        pts.push_back({x, f.mul(f.from_int(static_cast<long long>(s)), x)});
      }
    return PointSet2::of(f, std::move(pts));
  }
  if (spec.kind == "paraboloid_subset") {
    ParamReader p(spec, {"m"});
    std::int64_t m = p.get("m");
    need_range(m, 0, f.q(), "m");
    std::vector<Vec2> pts;
    for (std::int64_t t = 0; t < m; ++t) {
      Scalar x = f.from_int(static_cast<long long>(t));
      pts.push_back({x, f.mul(x, x)});
    }
    return PointSet2::of(f, std::move(pts));
  }
  fail(Err::InfeasibleSpec, "unknown point-set family '" + spec.kind + "'");
}

PointSet2 generate_base_set(const FieldCtx& f, const FamilySpec& spec) {
  if (spec.kind != "product_slices")
    fail(Err::InfeasibleSpec, "base set only defined for product_slices");
  ParamReader p(spec, {"slices", "per_slice", "seed"});
  return random_plane_set(f, p.get("per_slice"),
                          static_cast<std::uint64_t>(p.get("seed")));
}

FunctionF3 generate_function(const FieldCtx& f, const FamilySpec& spec) {
  if (spec.kind == "product_slices") {
    ParamReader p(spec, {"slices", "per_slice", "seed"});
    std::int64_t w = p.get("slices");
    need_range(w, 1, f.q(), "slices");
    PointSet2 base = generate_base_set(f, spec);
    FunctionF3 g(f);
    for (std::int64_t z = 0; z < w; ++z)
      for (Vec2 pt : base.points())
        g.set(f, Vec3{pt, f.from_int(static_cast<long long>(z))}, {1.0, 0.0});
    return g;
  }
  if (spec.kind == "random3d") {
    ParamReader p(spec, {"m", "seed"});
    std::int64_t m = p.get("m");
    std::int64_t space = f.q() * f.q() * f.q();
    need_range(m, 0, space, "m");
    SplitMix rng(static_cast<std::uint64_t>(p.get("seed")) ^ 0x3dULL);
    std::set<std::uint64_t> codes;
    while (static_cast<std::int64_t>(codes.size()) < m)
      codes.insert(rng.below(static_cast<std::uint64_t>(space)));
    FunctionF3 g(f);
    for (std::uint64_t c : codes) g.set(c, {1.0, 0.0});
    return g;
  }
  fail(Err::InfeasibleSpec, "unknown function family '" + spec.kind + "'");
}

}  // namespace restlab
