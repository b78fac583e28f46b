#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "restlab/pointset.hpp"

namespace restlab {

// Ordered-tuple counters over subsets of F_q^2.  Degenerate tuples (repeated
// points) count.  Every fast counter has a brute-force twin with the same
// contract; the twins are independent code paths and are cross-checked in the
// test suite, so keep them that way.

// (x1 - x0) . (x2 - x1) = 0.
bool is_corner(const FieldCtx& f, Vec2 x0, Vec2 x1, Vec2 x2);

// All four cyclic corner triples of (x0, x1, x2, x3).
bool is_rectangle(const FieldCtx& f, Vec2 x0, Vec2 x1, Vec2 x2, Vec2 x3);

// x1 - x2 = lambda * (x3 - x4) for some lambda.  The definition is
// deliberately asymmetric: x1 = x2 matches with lambda = 0, but x3 = x4 with
// x1 != x2 does not.  `symmetric` switches to the symmetrized variant (either
// side a multiple of the other) for sensitivity experiments.
bool is_trapezoid(const FieldCtx& f, Vec2 x1, Vec2 x2, Vec2 x3, Vec2 x4, bool symmetric = false);

// O(|A|^4) scan; |A| <= 80 (InputTooLarge).
std::int64_t count_rectangles_bruteforce(const FieldCtx& f, const PointSet2& a);

// Hashes ordered pairs by (x + y, x.x + y.y); the rectangle count equals the
// resulting second moment, via the correspondence (x,y,z,w) <-> (z,y,w,x).
// The equality with the brute-force counter holds exactly when -1 is a
// non-square: otherwise isotropic directions make quadruples pass the
// four-corner test without being parallelograms (see the F_5 line test).
std::int64_t count_rectangles_energy(const FieldCtx& f, const PointSet2& a);

// O(|A|^2 |B|^2) scan; |A|*|B| <= 3600 (InputTooLarge).
std::int64_t count_trapezoids_bruteforce(const FieldCtx& f, const PointSet2& a,
                                         const PointSet2& b, bool symmetric = false);

// |A||B|^2 degenerate tuples plus a projective-direction histogram product.
std::int64_t count_trapezoids_directional(const FieldCtx& f, const PointSet2& a,
                                          const PointSet2& b, bool symmetric = false);

// O(|A|^3) scan; |A| <= 400 (InputTooLarge).
std::int64_t count_corners(const FieldCtx& f, const PointSet2& a);

// #{(x,y,z,w) in A^4 : x + y = z + w}, by pair-sum hashing.
std::int64_t additive_energy_plane(const FieldCtx& f, const PointSet2& a);

// min{ T(A,B), q * sqrt(R(A) R(B)) } with the branch decided exactly
// (T^2 vs q^2 R(A) R(B) in 128-bit integers).
struct BQuantity {
  std::int64_t trapezoids = 0;
  std::int64_t rect_a = 0;
  std::int64_t rect_b = 0;
  bool trapezoid_branch = true;  // true when T(A,B) attains the min
  double value = 0.0;
};
BQuantity b_quantity(const FieldCtx& f, const PointSet2& a, const PointSet2& b);

struct CountReport {
  std::string quantity;
  std::string algorithm;
  std::int64_t value = 0;
  std::int64_t size_a = 0;
  std::int64_t size_b = 0;
  std::int64_t q = 0;
};
nlohmann::json count_report_json(const CountReport& r);

}  // namespace restlab
