#include "restlab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>

#include "restlab/errors.hpp"

namespace restlab {

namespace {

std::int64_t isqrt_ceil(std::int64_t n) {
  if (n <= 0) return 0;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (s * s < n) ++s;
  while (s > 0 && (s - 1) * (s - 1) >= n) --s;
  return s;
}

int log2_floor(std::int64_t n) {
  int j = 0;
  while (n >> (j + 1)) ++j;
  return j;
}

}  // namespace

std::uint32_t line_id(const FieldCtx& f, const LineF2& l) {
  auto q = static_cast<std::uint32_t>(f.q());
  return l.vertical ? q * q + l.a.v : l.a.v * q + l.b.v;
}

LineF2 line_from_id(const FieldCtx& f, std::uint32_t id) {
  auto q = static_cast<std::uint32_t>(f.q());
  if (id >= q * q + q) fail(Err::InvalidArgument, "line id out of range");
  if (id >= q * q) return {true, {id - q * q}, {0}};
  return {false, {id / q}, {id % q}};
}

LineF2 line_through(const FieldCtx& f, Vec2 p, Vec2 q) {
  if (p == q) fail(Err::InvalidArgument, "two distinct points are needed");
  if (p.x == q.x) return {true, p.x, {0}};
  Scalar slope = f.div(f.sub(q.y, p.y), f.sub(q.x, p.x));
  Scalar intercept = f.sub(p.y, f.mul(slope, p.x));
  return {false, slope, intercept};
}

bool on_line(const FieldCtx& f, const LineF2& l, Vec2 p) {
  if (l.vertical) return p.x == l.a;
  return p.y == f.add(f.mul(l.a, p.x), l.b);
}

std::vector<Vec2> line_points(const FieldCtx& f, const LineF2& l) {
  std::vector<Vec2> pts;
  pts.reserve(f.q());
  for (std::int64_t t = 0; t < f.q(); ++t) {
    Scalar s = f.from_index(t);
    if (l.vertical)
      pts.push_back({l.a, s});
    else
      pts.push_back({s, f.add(f.mul(l.a, s), l.b)});
  }
  return pts;
}

std::vector<LineF2> all_lines(const FieldCtx& f) {
  if (f.q() > 128) fail(Err::TooLarge, "line enumeration capped at q <= 128");
  std::vector<LineF2> out;
  out.reserve(f.q() * f.q() + f.q());
  for (std::uint32_t id = 0; id < f.q() * f.q() + f.q(); ++id) out.push_back(line_from_id(f, id));
  return out;
}

std::pair<LineF2, std::int64_t> max_line_intersection(const FieldCtx& f, const PointSet2& a) {
  if (a.empty()) fail(Err::EmptySet, "no points");
  const auto& p = a.points();
  if (p.size() == 1) return {LineF2{false, {0}, p[0].y}, 1};

  // Every unordered pair votes for its line; a line holding c points collects
  // c(c-1)/2 votes, so the vote maximum identifies the richest lines.
  std::unordered_map<std::uint32_t, std::int64_t> votes;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      ++votes[line_id(f, line_through(f, p[i], p[j]))];

  std::int64_t best_votes = -1;
  std::uint32_t best_id = 0;
  for (const auto& [id, v] : votes)
    if (v > best_votes || (v == best_votes && id < best_id)) {
      best_votes = v;
      best_id = id;
    }
  LineF2 line = line_from_id(f, best_id);
  std::int64_t count = 0;
  for (const Vec2& x : p)
    if (on_line(f, line, x)) ++count;
  return {line, count};
}

RegularDecomposition decompose_k_regular(const FieldCtx& f, const PointSet2& a,
                                         ThresholdMode mode) {
  if (a.empty()) fail(Err::EmptySet, "no points");

  struct Extraction {
    LineF2 line;
    std::vector<Vec2> pts;
    std::int64_t richness;
  };
  std::vector<Extraction> pulls;

  std::vector<Vec2> residual = a.points();
  std::int64_t threshold = isqrt_ceil(static_cast<std::int64_t>(a.size()));
  while (!residual.empty()) {
    if (mode == ThresholdMode::ResidualSize)
      threshold = isqrt_ceil(static_cast<std::int64_t>(residual.size()));
    auto current = PointSet2::of(f, residual);
    auto [line, count] = max_line_intersection(f, current);
    if (count <= threshold) break;
    Extraction e{line, {}, count};
    std::vector<Vec2> rest;
    rest.reserve(residual.size() - count);
    for (const Vec2& x : residual)
      (on_line(f, line, x) ? e.pts : rest).push_back(x);
    pulls.push_back(std::move(e));
    residual = std::move(rest);
  }

  // Bucket by dyadic richness at extraction time; richness only decreases
  // during the loop, so each bucket's lines are within a factor 2 of each
  // other automatically.
  std::map<int, std::vector<const Extraction*>, std::greater<>> buckets;
  for (const Extraction& e : pulls) buckets[log2_floor(e.richness)].push_back(&e);

  RegularDecomposition dec;
  dec.threshold = threshold;
  for (auto& [cls, lines] : buckets) {
    std::sort(lines.begin(), lines.end(), [&](const Extraction* l, const Extraction* r) {
      return line_id(f, l->line) < line_id(f, r->line);
    });
    RegularPart part;
    part.richness_class = cls;
    std::vector<Vec2> pts;
    double log_sum = 0.0;
    std::int64_t total = 0;
    for (const Extraction* e : lines) {
      part.frame.push_back(e->line);
      for (const Vec2& x : e->pts) {
        pts.push_back(x);
        part.assignment.push_back(static_cast<int>(part.frame.size()) - 1);
      }
      log_sum += std::log(static_cast<double>(e->richness));
      total += e->richness;
    }
    double geomean = std::exp(log_sum / static_cast<double>(lines.size()));
    part.k = std::llround(static_cast<double>(total) / geomean);
    if (part.k < 1) part.k = 1;
    part.points = PointSet2::of(f, std::move(pts));
    dec.parts.push_back(std::move(part));
  }
  dec.remainder = PointSet2::of(f, std::move(residual));
  return dec;
}

bool validate_k_regular(const FieldCtx& f, const RegularPart& part, double slack) {
  if (part.k < 1 || part.frame.empty()) return false;
  if (part.points.size() != part.assignment.size()) return false;

  std::vector<std::int64_t> load(part.frame.size(), 0);
  const auto& pts = part.points.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int idx = part.assignment[i];
    if (idx < 0 || idx >= static_cast<int>(part.frame.size())) return false;
    if (!on_line(f, part.frame[idx], pts[i])) return false;
    ++load[idx];
  }
  for (std::size_t i = 0; i < part.frame.size(); ++i)
    for (std::size_t j = i + 1; j < part.frame.size(); ++j)
      if (line_id(f, part.frame[i]) == line_id(f, part.frame[j])) return false;

  double k = static_cast<double>(part.k);
  double frame_size = static_cast<double>(part.frame.size());
  if (frame_size < k / slack || frame_size > k * slack) return false;
  double n = static_cast<double>(part.points.size());
  for (std::int64_t c : load) {
    if (c == 0) return false;
    double cd = static_cast<double>(c);
    if (cd < n / (k * slack) || cd > n * slack / k) return false;
  }
  return true;
}

bool validate_decomposition(const FieldCtx& f, const PointSet2& input,
                            const RegularDecomposition& dec) {
  // Exact partition: the parts and remainder reassemble the input.
  std::vector<std::uint32_t> got;
  for (const RegularPart& p : dec.parts)
    for (const Vec2& x : p.points) got.push_back(encode2(f, x));
  for (const Vec2& x : dec.remainder) got.push_back(encode2(f, x));
  std::vector<std::uint32_t> want;
  for (const Vec2& x : input) want.push_back(encode2(f, x));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got != want) return false;

  double n = static_cast<double>(input.size());
  double parts = static_cast<double>(dec.parts.size());
  if (parts > 2.0 * std::log2(static_cast<double>(f.q()) * f.q()) + 2.0) return false;
  if (n >= 1.0 && parts > std::log2(n) + 2.0) return false;

  for (const RegularPart& p : dec.parts)
    if (!on_line(f, p.frame[p.assignment[0]], p.points.points()[0]) ||
        p.points.size() != p.assignment.size())
      return false;

  if (!dec.remainder.empty()) {
    auto [line, count] = max_line_intersection(f, dec.remainder);
    (void)line;
    if (count > dec.threshold) return false;
  }
  return true;
}

std::vector<LineF2> frame_exclusion_violations(const FieldCtx& f, const RegularPart& part,
                                               double c_frame) {
  std::vector<bool> in_frame(f.q() * f.q() + f.q(), false);
  for (const LineF2& l : part.frame) in_frame[line_id(f, l)] = true;
  std::vector<LineF2> bad;
  for (const LineF2& l : all_lines(f)) {
    if (in_frame[line_id(f, l)]) continue;
    std::int64_t count = 0;
    for (const Vec2& x : part.points)
      if (on_line(f, l, x)) ++count;
    if (static_cast<double>(count) > c_frame * static_cast<double>(part.k)) bad.push_back(l);
  }
  return bad;
}

nlohmann::json line_json(const FieldCtx& f, const LineF2& l) {
  if (l.vertical) return {{"vertical", scalar_json(f, l.a)}};
  return {{"slope", scalar_json(f, l.a)}, {"intercept", scalar_json(f, l.b)}};
}

nlohmann::json decomposition_json(const FieldCtx& f, const RegularDecomposition& dec) {
  nlohmann::json parts = nlohmann::json::array();
  for (const RegularPart& p : dec.parts) {
    nlohmann::json frame = nlohmann::json::array();
    for (const LineF2& l : p.frame) frame.push_back(line_json(f, l));
    parts.push_back({{"k", p.k},
                     {"richness_class", p.richness_class},
                     {"frame", frame},
                     {"points", pointset_json(f, p.points)}});
  }
  return {{"parts", parts},
          {"remainder", pointset_json(f, dec.remainder)},
          {"threshold", dec.threshold}};
}

// ============================================================================
// Function decompositions.
// ============================================================================

DyadicFunctionDecomposition dyadic_decompose_function(const FieldCtx& f, const FunctionF3& g) {
  double peak = 0.0;
  for (const auto& [k, v] : g.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) fail(Err::ZeroFunction, "dyadic decomposition of the zero function");

  DyadicFunctionDecomposition out{{}, FunctionF3(f), peak * std::pow(static_cast<double>(f.q()), -10.0)};

  std::map<int, FunctionF3, std::greater<>> bands;
  for (const auto& [k, v] : g.values()) {
    double m = std::abs(v);
    if (m <= out.cutoff) {
      out.remainder.set(k, v);
      continue;
    }
    int level = std::ilogb(m);
    // Scaling by an exact power of two keeps reconstruction bitwise exact.
    bands.try_emplace(level, f).first->second.set(k, v * std::ldexp(1.0, -level));
  }
  for (auto& [level, fn] : bands)
    out.pieces.push_back({level, std::ldexp(1.0, level), std::move(fn)});
  return out;
}

std::int64_t SlicedFunction::support_size() const {
  std::int64_t n = 0;
  for (const Slice& s : slices) n += static_cast<std::int64_t>(s.values.support_size());
  return n;
}

std::vector<SlicedFunction> regularize_function(const FieldCtx& f, const FunctionF3& g) {
  struct Candidate {
    int size_class;
    bool regular;
    int k_class;
    SlicedFunction::Slice slice;
  };
  // key: (irregular?, size_class, k_class) -> z -> stacked candidates
  std::map<std::tuple<int, int, int>, std::map<std::uint32_t, std::vector<Candidate>>> groups;

  for (auto& [z, gz] : slices_of(f, g)) {
    std::vector<Vec2> base;
    for (const auto& [code, v] : gz.values()) base.push_back(decode3(f, code).xy);
    auto support = PointSet2::of(f, std::move(base));
    std::int64_t parent_threshold = isqrt_ceil(static_cast<std::int64_t>(support.size()));
    auto dec = decompose_k_regular(f, support);

    auto restricted = [&](const PointSet2& pts) {
      FunctionF3 fn(f);
      for (const Vec2& x : pts) {
        std::uint64_t code = encode3(f, Vec3{x, z});
        fn.set(code, gz.at(code));
      }
      return fn;
    };

    for (RegularPart& part : dec.parts) {
      Candidate c{log2_floor(static_cast<std::int64_t>(part.points.size())), true,
                  log2_floor(part.k),
                  {z, restricted(part.points), part, parent_threshold}};
      groups[{0, c.size_class, c.k_class}][z.v].push_back(std::move(c));
    }
    if (!dec.remainder.empty()) {
      Candidate c{log2_floor(static_cast<std::int64_t>(dec.remainder.size())), false, 0,
                  {z, restricted(dec.remainder), std::nullopt, parent_threshold}};
      groups[{1, c.size_class, 0}][z.v].push_back(std::move(c));
    }
  }

  std::vector<SlicedFunction> out;
  for (auto& [key, by_z] : groups) {
    std::size_t layers = 0;
    for (const auto& [zv, cands] : by_z) layers = std::max(layers, cands.size());
    for (std::size_t layer = 0; layer < layers; ++layer) {
      SlicedFunction sf;
      sf.size_class = std::get<1>(key);
      sf.regular = std::get<0>(key) == 0;
      sf.k_class = std::get<2>(key);
      sf.layer = static_cast<int>(layer);
      double peak = 0.0;
      for (auto& [zv, cands] : by_z) {
        if (layer >= cands.size()) continue;
        for (const auto& [code, v] : cands[layer].slice.values.values())
          peak = std::max(peak, std::abs(v));
        sf.slices.push_back(std::move(cands[layer].slice));
      }
      sf.amplitude_class = peak > 0.0 ? std::ilogb(peak) : 0;
      out.push_back(std::move(sf));
    }
  }
  return out;
}

bool validate_regular_function(const FieldCtx& f, const SlicedFunction& sf, double slack) {
  if (sf.slices.empty()) return false;
  double eps = 1e-12;

  double min_amp = std::numeric_limits<double>::infinity(), max_amp = 0.0;
  std::int64_t min_size = std::numeric_limits<std::int64_t>::max(), max_size = 0;
  std::int64_t min_k = std::numeric_limits<std::int64_t>::max(), max_k = 0;

  std::uint32_t prev_z = 0;
  bool first = true;
  for (const SlicedFunction::Slice& s : sf.slices) {
    if (!first && s.z.v <= prev_z) return false;  // distinct, increasing heights
    prev_z = s.z.v;
    first = false;

    if (s.values.support_size() == 0) return false;
    std::vector<Vec2> base;
    for (const auto& [code, v] : s.values.values()) {
      Vec3 x = decode3(f, code);
      if (x.z != s.z) return false;  // not supported on its own plane
      base.push_back(x.xy);
      double m = std::abs(v);
      min_amp = std::min(min_amp, m);
      max_amp = std::max(max_amp, m);
    }
    auto nsz = static_cast<std::int64_t>(s.values.support_size());
    min_size = std::min(min_size, nsz);
    max_size = std::max(max_size, nsz);

    if (sf.regular) {
      if (!s.part.has_value()) return false;
      if (!validate_k_regular(f, *s.part, slack)) return false;
      if (static_cast<std::int64_t>(s.part->points.size()) != nsz) return false;
      min_k = std::min(min_k, s.part->k);
      max_k = std::max(max_k, s.part->k);
    } else {
      auto support = PointSet2::of(f, std::move(base));
      auto [line, count] = max_line_intersection(f, support);
      (void)line;
      if (count > s.irregular_threshold) return false;
    }
  }

  if (max_amp > min_amp * slack * (1 + eps)) return false;
  if (static_cast<double>(max_size) > static_cast<double>(min_size) * slack * (1 + eps))
    return false;
  if (sf.regular && static_cast<double>(max_k) > static_cast<double>(min_k) * slack * (1 + eps))
    return false;
  return true;
}

}  // namespace restlab
