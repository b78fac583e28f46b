#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "restlab/regularity.hpp"

using namespace restlab;

namespace {

Vec2 pt(const FieldCtx& f, int x, int y) { return Vec2{f.from_int(x), f.from_int(y)}; }

PointSet2 subset_by_mask(const FieldCtx& f, unsigned mask) {
  std::vector<Vec2> pts;
  for (std::int64_t c = 0; c < f.q() * f.q(); ++c)
    if (mask >> c & 1u) pts.push_back(decode2(f, static_cast<std::uint32_t>(c)));
  return PointSet2::of(f, std::move(pts));
}

PointSet2 random_subset(const FieldCtx& f, std::mt19937_64& rng, int size) {
  std::vector<std::uint32_t> codes(f.q() * f.q());
  for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<std::uint32_t>(i);
  for (int i = 0; i < size; ++i) {
    std::size_t j = i + rng() % (codes.size() - i);
    std::swap(codes[i], codes[j]);
  }
  std::vector<Vec2> pts;
  for (int i = 0; i < size; ++i) pts.push_back(decode2(f, codes[i]));
  return PointSet2::of(f, std::move(pts));
}

PointSet2 vertical_line_prefix(const FieldCtx& f, int x, int count) {
  std::vector<Vec2> pts;
  for (int t = 0; t < count; ++t) pts.push_back(pt(f, x, t));
  return PointSet2::of(f, std::move(pts));
}

}  // namespace

TEST_CASE("line enumeration and incidence basics") {
  for (std::int64_t q : {3, 7}) {
    auto f = FieldCtx::make(q);
    auto lines = all_lines(f);
    CHECK(static_cast<std::int64_t>(lines.size()) == q * q + q);
    for (const LineF2& l : lines) {
      auto pts = line_points(f, l);
      CHECK(static_cast<std::int64_t>(pts.size()) == q);
      for (const Vec2& x : pts) CHECK(on_line(f, l, x));
      CHECK(line_from_id(f, line_id(f, l)) == l);
    }
  }
  auto f131 = FieldCtx::make(131);
  CHECK_THROWS_AS(all_lines(f131), Error);
}

TEST_CASE("line through two points is consistent") {
  auto f = FieldCtx::make(7);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    Vec2 p{f.from_index(rng() % 7), f.from_index(rng() % 7)};
    Vec2 q{f.from_index(rng() % 7), f.from_index(rng() % 7)};
    if (p == q) continue;
    auto l = line_through(f, p, q);
    CHECK(on_line(f, l, p));
    CHECK(on_line(f, l, q));
    CHECK(line_through(f, q, p) == l);
  }
  CHECK_THROWS_AS(line_through(f, pt(f, 1, 1), pt(f, 1, 1)), Error);
}

TEST_CASE("richest line detection") {
  auto f = FieldCtx::make(7);
  {
    std::vector<Vec2> pts;
    for (int t = 0; t < 5; ++t) pts.push_back(pt(f, t, 2 * t % 7));  // on y = 2x
    pts.push_back(pt(f, 1, 0));
    auto [line, count] = max_line_intersection(f, PointSet2::of(f, pts));
    CHECK(count == 5);
    CHECK(!line.vertical);
    CHECK(line.a == f.from_int(2));
    CHECK(line.b == f.from_int(0));
  }
  {
    auto [line, count] = max_line_intersection(f, PointSet2::of(f, {pt(f, 4, 5)}));
    CHECK(count == 1);
    CHECK(!line.vertical);
    CHECK(line.a.v == 0);  // horizontal tie-break for singletons
    CHECK(line.b == f.from_int(5));
  }
  {
    std::vector<Vec2> pts;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) pts.push_back(pt(f, x, y));
    auto [line, count] = max_line_intersection(f, PointSet2::of(f, pts));
    (void)line;
    CHECK(count == 3);
  }
  CHECK_THROWS_AS(max_line_intersection(f, PointSet2{}), Error);
}

TEST_CASE("decomposition of a single full line") {
  auto f = FieldCtx::make(7);
  auto a = vertical_line_prefix(f, 0, 7);
  auto dec = decompose_k_regular(f, a);
  REQUIRE(dec.parts.size() == 1);
  CHECK(dec.parts[0].k == 1);
  CHECK(dec.parts[0].frame.size() == 1);
  CHECK(dec.parts[0].points.size() == 7);
  CHECK(dec.remainder.empty());
  CHECK(validate_k_regular(f, dec.parts[0]));
  CHECK(validate_decomposition(f, a, dec));
  CHECK(frame_exclusion_violations(f, dec.parts[0]).empty());
}

TEST_CASE("two parallel full lines share one bucket") {
  auto f = FieldCtx::make(11);
  std::vector<Vec2> pts;
  for (int t = 0; t < 11; ++t) {
    pts.push_back(pt(f, 0, t));
    pts.push_back(pt(f, 1, t));
  }
  auto a = PointSet2::of(f, pts);
  auto dec = decompose_k_regular(f, a);
  REQUIRE(dec.parts.size() == 1);
  CHECK(dec.parts[0].k == 2);
  CHECK(dec.parts[0].frame.size() == 2);
  CHECK(dec.remainder.empty());
  CHECK(validate_decomposition(f, a, dec));
}

TEST_CASE("sets in general position are pure remainder") {
  auto f = FieldCtx::make(11);
  std::vector<Vec2> pts;
  for (int t = 0; t < 9; ++t) pts.push_back(pt(f, t, t * t % 11));  // quadratic graph
  auto a = PointSet2::of(f, pts);
  auto [line, count] = max_line_intersection(f, a);
  (void)line;
  CHECK(count == 2);  // no line meets a quadratic graph thrice
  auto dec = decompose_k_regular(f, a);
  CHECK(dec.parts.empty());
  CHECK(dec.remainder.size() == 9);
  CHECK(validate_decomposition(f, a, dec));
}

TEST_CASE("the full plane is its own remainder") {
  auto f = FieldCtx::make(3);
  auto a = subset_by_mask(f, 0x1FF);
  auto dec = decompose_k_regular(f, a);
  // Every line has exactly 3 = ceil(sqrt(9)) points: nothing is extracted.
  CHECK(dec.parts.empty());
  CHECK(dec.remainder.size() == 9);
  CHECK(validate_decomposition(f, a, dec));
}

TEST_CASE("threshold modes can genuinely differ") {
  auto f = FieldCtx::make(7);
  std::vector<Vec2> pts;
  for (int t = 0; t < 7; ++t) pts.push_back(pt(f, 0, t));
  for (int t = 0; t < 3; ++t) pts.push_back(pt(f, 1, t));
  auto a = PointSet2::of(f, pts);  // 10 points, original threshold 4

  auto dec = decompose_k_regular(f, a);
  CHECK(dec.parts.size() == 1);
  CHECK(dec.remainder.size() == 3);
  CHECK(validate_decomposition(f, a, dec));

  auto res = decompose_k_regular(f, a, ThresholdMode::ResidualSize);
  CHECK(res.parts.size() == 2);  // the 3-point line clears the shrunken bar
  CHECK(res.remainder.empty());
  CHECK(validate_decomposition(f, a, res));
}

TEST_CASE("decomposition partitions every subset of the 3x3 plane") {
  auto f = FieldCtx::make(3);
  for (unsigned mask = 1; mask < 512; ++mask) {
    auto a = subset_by_mask(f, mask);
    for (auto mode : {ThresholdMode::OriginalSize, ThresholdMode::ResidualSize}) {
      auto dec = decompose_k_regular(f, a, mode);
      CHECK(validate_decomposition(f, a, dec));
      for (const RegularPart& p : dec.parts) CHECK(validate_k_regular(f, p));
    }
  }
}

TEST_CASE("decomposition properties hold on random sets") {
  std::mt19937_64 rng(77);
  for (std::int64_t q : {7, 11, 19}) {
    auto f = FieldCtx::make(q);
    for (int trial = 0; trial < 100; ++trial) {
      int size = 1 + static_cast<int>(rng() % (q * q));
      auto a = random_subset(f, rng, size);
      auto dec = decompose_k_regular(f, a);
      CHECK(validate_decomposition(f, a, dec));
      for (const RegularPart& p : dec.parts) CHECK(validate_k_regular(f, p));
    }
  }
}

TEST_CASE("hand-built invalid labels are rejected") {
  auto f = FieldCtx::make(11);
  RegularPart part;
  part.k = 2;
  part.richness_class = 2;
  part.frame = {LineF2{false, f.from_int(0), f.from_int(0)},   // y = 0
                LineF2{false, f.from_int(0), f.from_int(1)}};  // y = 1
  std::vector<Vec2> pts;
  for (int x = 0; x < 7; ++x) {
    pts.push_back(pt(f, x, 0));
    part.assignment.push_back(0);
  }
  for (int x = 0; x < 2; ++x) {
    pts.push_back(pt(f, x, 1));
    part.assignment.push_back(1);
  }
  part.points = PointSet2::of(f, pts);
  // Loads 7 and 2 against |pts|/k = 4.5: the 2 falls below 4.5/2.
  CHECK(!validate_k_regular(f, part, 2.0));
  CHECK(validate_k_regular(f, part, 3.0));
}

TEST_CASE("dyadic split of an indicator is a single exact piece") {
  auto f = FieldCtx::make(3);
  FunctionF3 g(f);
  g.set(f, Vec3{pt(f, 0, 0), f.from_int(0)}, {1.0, 0.0});
  g.set(f, Vec3{pt(f, 1, 2), f.from_int(1)}, {1.0, 0.0});
  auto dec = dyadic_decompose_function(f, g);
  REQUIRE(dec.pieces.size() == 1);
  CHECK(dec.pieces[0].level == 0);
  CHECK(dec.pieces[0].amplitude == 1.0);
  CHECK(dec.remainder.support_size() == 0);
}

TEST_CASE("dyadic bands follow the half-open convention") {
  auto f = FieldCtx::make(3);
  FunctionF3 g(f);
  g.set(f, Vec3{pt(f, 0, 0), f.from_int(0)}, {1.0, 0.0});
  g.set(f, Vec3{pt(f, 0, 1), f.from_int(0)}, {2.0, 0.0});
  g.set(f, Vec3{pt(f, 0, 2), f.from_int(0)}, {4.0, 0.0});
  auto dec = dyadic_decompose_function(f, g);
  REQUIRE(dec.pieces.size() == 3);  // bands [1,2), [2,4), [4,8)
  CHECK(dec.pieces[0].level == 2);
  CHECK(dec.pieces[1].level == 1);
  CHECK(dec.pieces[2].level == 0);
}

TEST_CASE("dyadic reconstruction is bitwise exact") {
  auto f = FieldCtx::make(3);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    FunctionF3 g(f);
    for (std::uint64_t code = 0; code < 27; ++code) {
      if (rng() % 3 == 0) continue;
      double re = std::ldexp(static_cast<double>(1 + rng() % 1000), -5);
      double im = std::ldexp(static_cast<double>(rng() % 1000), -7);
      g.set(code, {re, im});
    }
    if (g.empty()) continue;
    auto dec = dyadic_decompose_function(f, g);
    CHECK(static_cast<double>(dec.pieces.size()) <=
          10.0 * std::log2(std::pow(3.0, 3)) + 1.0);
    FunctionF3 back(f);
    for (const auto& piece : dec.pieces) {
      for (const auto& [code, v] : piece.values.values()) {
        double mod = std::abs(v);
        CHECK(mod >= 1.0);
        CHECK(mod < 2.0);
        back.set(code, back.at(code) + piece.amplitude * v);
      }
    }
    for (const auto& [code, v] : dec.remainder.values()) {
      CHECK(std::abs(v) <= dec.cutoff);
      back.set(code, back.at(code) + v);
    }
    CHECK(back.values() == g.values());
  }
}

TEST_CASE("tiny values land in the dyadic remainder") {
  auto f = FieldCtx::make(3);
  FunctionF3 g(f);
  g.set(f, Vec3{pt(f, 0, 0), f.from_int(0)}, {1.0, 0.0});
  g.set(f, Vec3{pt(f, 1, 1), f.from_int(1)}, {1e-12, 0.0});
  auto dec = dyadic_decompose_function(f, g);
  CHECK(dec.pieces.size() == 1);
  CHECK(dec.remainder.support_size() == 1);
  CHECK_THROWS_AS(dyadic_decompose_function(f, FunctionF3(f)), Error);
}

TEST_CASE("regularizing one full plane gives one piece") {
  auto f = FieldCtx::make(3);
  FunctionF3 g(f);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) g.set(f, Vec3{pt(f, x, y), f.from_int(0)}, {1.0, 0.0});
  auto pieces = regularize_function(f, g);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].slices.size() == 1);
  CHECK(pieces[0].support_size() == 9);
  CHECK(!pieces[0].regular);  // every line has exactly ceil(sqrt(9)) points
  CHECK(validate_regular_function(f, pieces[0]));
}

TEST_CASE("slices of dyadically different sizes split") {
  auto f = FieldCtx::make(11);
  FunctionF3 g(f);
  for (int t = 0; t < 4; ++t) g.set(f, Vec3{pt(f, t, t * t % 11), f.from_int(0)}, {1.0, 0.0});
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) g.set(f, Vec3{pt(f, x, y), f.from_int(1)}, {1.0, 0.0});
  auto pieces = regularize_function(f, g);
  REQUIRE(pieces.size() >= 2);
  bool saw4 = false, saw64 = false;
  for (const auto& sf : pieces) {
    if (sf.size_class == 2) saw4 = true;
    if (sf.size_class == 6) saw64 = true;
    CHECK(validate_regular_function(f, sf));
  }
  CHECK(saw4);
  CHECK(saw64);
}

TEST_CASE("same-class fragments from one height are layered apart") {
  auto f = FieldCtx::make(19);
  FunctionF3 g(f);
  auto add_column = [&](int x, int count) {
    for (int t = 0; t < count; ++t) g.set(f, Vec3{pt(f, x, t), f.from_int(0)}, {1.0, 0.0});
  };
  // Richness buckets {17, 16} and {12, 12, 12}: totals 33 and 36 share a size
  // class, labels 2 and 3 share a k class, so the two parts collide and must
  // be split into layers rather than merged into one two-slice function.
  add_column(0, 17);
  add_column(1, 16);
  add_column(2, 12);
  add_column(3, 12);
  add_column(4, 12);
  auto pieces = regularize_function(f, g);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].layer == 0);
  CHECK(pieces[1].layer == 1);
  CHECK(pieces[0].size_class == pieces[1].size_class);
  CHECK(pieces[0].k_class == pieces[1].k_class);
  CHECK(pieces[0].support_size() + pieces[1].support_size() == 69);
  for (const auto& sf : pieces) CHECK(validate_regular_function(f, sf));
}

TEST_CASE("regularized pieces partition random functions and validate") {
  auto f = FieldCtx::make(7);
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    FunctionF3 g(f);
    int n = 1 + static_cast<int>(rng() % 120);
    for (int i = 0; i < n; ++i) {
      std::uint64_t code = rng() % (7 * 7 * 7);
      double phase = static_cast<double>(rng() % 360) * 0.0174532925;
      g.set(code, {1.5 * std::cos(phase), 1.5 * std::sin(phase)});
    }
    if (g.empty()) continue;
    auto pieces = regularize_function(f, g);
    std::int64_t total = 0;
    FunctionF3 back(f);
    for (const auto& sf : pieces) {
      CHECK(validate_regular_function(f, sf));
      total += sf.support_size();
      for (const auto& s : sf.slices)
        for (const auto& [code, v] : s.values.values()) {
          CHECK(back.at(code) == cx{0.0, 0.0});  // disjoint supports
          back.set(code, v);
        }
    }
    CHECK(total == static_cast<std::int64_t>(g.support_size()));
    CHECK(back.values() == g.values());
    double q = 7.0;
    double bound = (10.0 * std::log2(q * q * q) + 1.0) * (std::log2(q * q) + 1.0) *
                   (std::log2(q) + 2.0);
    CHECK(static_cast<double>(pieces.size()) <= bound);
  }
}
