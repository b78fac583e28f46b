#include "restlab/counting.hpp"

#include <cmath>
#include <unordered_map>

#include "restlab/errors.hpp"

namespace restlab {

bool is_corner(const FieldCtx& f, Vec2 x0, Vec2 x1, Vec2 x2) {
  Vec2 d1{f.sub(x1.x, x0.x), f.sub(x1.y, x0.y)};
  Vec2 d2{f.sub(x2.x, x1.x), f.sub(x2.y, x1.y)};
  return f.dot2(d1, d2).v == 0;
}

bool is_rectangle(const FieldCtx& f, Vec2 x0, Vec2 x1, Vec2 x2, Vec2 x3) {
  return is_corner(f, x0, x1, x2) && is_corner(f, x1, x2, x3) &&
         is_corner(f, x2, x3, x0) && is_corner(f, x3, x0, x1);
}

bool is_trapezoid(const FieldCtx& f, Vec2 x1, Vec2 x2, Vec2 x3, Vec2 x4, bool symmetric) {
  Vec2 u{f.sub(x1.x, x2.x), f.sub(x1.y, x2.y)};
  Vec2 v{f.sub(x3.x, x4.x), f.sub(x3.y, x4.y)};
  bool u0 = (u.x.v == 0 && u.y.v == 0);
  bool v0 = (v.x.v == 0 && v.y.v == 0);
  if (u0) return true;  // lambda = 0
  if (v0) return symmetric;
  // u = lambda v: cross product zero and the scale consistent (it always is
  // once the cross product vanishes and v != 0).
  Scalar cross = f.sub(f.mul(u.x, v.y), f.mul(u.y, v.x));
  return cross.v == 0;
}

std::int64_t count_rectangles_bruteforce(const FieldCtx& f, const PointSet2& a) {
  if (a.size() > 80) fail(Err::InputTooLarge, "rectangle brute force capped at |A| <= 80");
  const auto& p = a.points();
  std::int64_t total = 0;
  for (Vec2 x0 : p)
    for (Vec2 x1 : p)
      for (Vec2 x2 : p)
        for (Vec2 x3 : p)
          if (is_rectangle(f, x0, x1, x2, x3)) ++total;
  return total;
}

std::int64_t count_rectangles_energy(const FieldCtx& f, const PointSet2& a) {
  // Key an ordered pair (x, y) by (x + y, |x|^2 + |y|^2); rectangles biject
  // with collisions.  The key packs into 64 bits because q <= 2^16.
  std::unordered_map<std::uint64_t, std::int64_t> buckets;
  buckets.reserve(a.size() * a.size());
  const auto& p = a.points();
  for (Vec2 x : p) {
    Scalar nx = f.norm2(x);
    for (Vec2 y : p) {
      Vec2 s{f.add(x.x, y.x), f.add(x.y, y.y)};
      Scalar t = f.add(nx, f.norm2(y));
      std::uint64_t key = static_cast<std::uint64_t>(encode2(f, s)) * f.q() + t.v;
      ++buckets[key];
    }
  }
  std::int64_t total = 0;
  for (const auto& [k, c] : buckets) total += c * c;
  return total;
}

std::int64_t count_trapezoids_bruteforce(const FieldCtx& f, const PointSet2& a,
                                         const PointSet2& b, bool symmetric) {
  if (a.size() * b.size() > 3600)
    fail(Err::InputTooLarge, "trapezoid brute force capped at |A||B| <= 3600");
  std::int64_t total = 0;
  for (Vec2 x1 : a.points())
    for (Vec2 x2 : a.points())
      for (Vec2 x3 : b.points())
        for (Vec2 x4 : b.points())
          if (is_trapezoid(f, x1, x2, x3, x4, symmetric)) ++total;
  return total;
}

namespace {

// Projective direction of an ordered pair of distinct points: slope dy/dx in
// [0, q) or q for vertical.
std::uint32_t direction_of(const FieldCtx& f, Vec2 u, Vec2 v) {
  Scalar dx = f.sub(u.x, v.x);
  Scalar dy = f.sub(u.y, v.y);
  if (dx.v == 0) return static_cast<std::uint32_t>(f.q());
  return f.div(dy, dx).v;
}

std::vector<std::int64_t> direction_histogram(const FieldCtx& f, const PointSet2& s) {
  std::vector<std::int64_t> h(f.q() + 1, 0);
  const auto& p = s.points();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      ++h[direction_of(f, p[i], p[j])];
    }
  return h;
}

}  // namespace

std::int64_t count_trapezoids_directional(const FieldCtx& f, const PointSet2& a,
                                          const PointSet2& b, bool symmetric) {
  std::int64_t na = a.size();
  std::int64_t nb = b.size();
  // x1 = x2 pairs with every (x3, x4): na * nb^2 tuples.
  std::int64_t total = na * nb * nb;
  if (symmetric) total += (na * na - na) * nb;  // x3 = x4, x1 != x2
  auto ha = direction_histogram(f, a);
  auto hb = direction_histogram(f, b);
  for (std::size_t d = 0; d < ha.size(); ++d) total += ha[d] * hb[d];
  return total;
}

std::int64_t count_corners(const FieldCtx& f, const PointSet2& a) {
  if (a.size() > 400) fail(Err::InputTooLarge, "corner count capped at |A| <= 400");
  const auto& p = a.points();
  std::int64_t total = 0;
  for (Vec2 x0 : p)
    for (Vec2 x1 : p)
      for (Vec2 x2 : p)
        if (is_corner(f, x0, x1, x2)) ++total;
  return total;
}

std::int64_t additive_energy_plane(const FieldCtx& f, const PointSet2& a) {
  std::unordered_map<std::uint32_t, std::int64_t> sums;
  sums.reserve(a.size() * a.size());
  const auto& p = a.points();
  for (Vec2 x : p)
    for (Vec2 y : p) ++sums[encode2(f, Vec2{f.add(x.x, y.x), f.add(x.y, y.y)})];
  std::int64_t total = 0;
  for (const auto& [k, c] : sums) total += c * c;
  return total;
}

BQuantity b_quantity(const FieldCtx& f, const PointSet2& a, const PointSet2& b) {
  BQuantity out;
  out.trapezoids = count_trapezoids_directional(f, a, b);
  out.rect_a = count_rectangles_energy(f, a);
  out.rect_b = count_rectangles_energy(f, b);
  // T <= q sqrt(Ra Rb)  <=>  T^2 <= q^2 Ra Rb, all quantities exact.
  __int128 lhs = static_cast<__int128>(out.trapezoids) * out.trapezoids;
  __int128 rhs = static_cast<__int128>(f.q()) * f.q() * out.rect_a * out.rect_b;
  out.trapezoid_branch = lhs <= rhs;
  out.value = out.trapezoid_branch
                  ? static_cast<double>(out.trapezoids)
                  : static_cast<double>(f.q()) *
                        std::sqrt(static_cast<double>(out.rect_a) * static_cast<double>(out.rect_b));
  return out;
}

nlohmann::json count_report_json(const CountReport& r) {
  nlohmann::json j;
  j["quantity"] = r.quantity;
  j["algorithm"] = r.algorithm;
  j["value"] = r.value;
  j["size_a"] = r.size_a;
  if (r.size_b > 0) j["size_b"] = r.size_b;
  j["q"] = r.q;
  return j;
}

}  // namespace restlab
