#include <doctest.h>

#include <complex>
#include <random>
#include <sstream>
#include <vector>

#include "restlab/field.hpp"
#include "restlab/pointset.hpp"

using namespace restlab;

namespace {

// Independent oracle for the quadratic character: tabulate the nonzero
// squares directly and test membership.
std::vector<int> chi_oracle(const FieldCtx& f) {
  std::vector<bool> sq(f.q(), false);
  for (std::int64_t b = 1; b < f.q(); ++b) {
    Scalar s = f.from_index(b);
    sq[f.mul(s, s).v] = true;
  }
  std::vector<int> chi(f.q(), 0);
  for (std::int64_t a = 1; a < f.q(); ++a) chi[a] = sq[a] ? 1 : -1;
  return chi;
}

}  // namespace

TEST_CASE("field construction rejects bad parameters") {
  CHECK_THROWS_AS(FieldCtx::make(2), Error);
  CHECK_THROWS_AS(FieldCtx::make(9), Error);
  CHECK_THROWS_AS(FieldCtx::make(1), Error);
  CHECK_THROWS_AS(FieldCtx::make(-7), Error);
  CHECK_THROWS_AS(FieldCtx::make(7, 0), Error);
  CHECK_THROWS_AS(FieldCtx::make(3, 11), Error);  // 3^11 over default cap

  try {
    FieldCtx::make(2);
  } catch (const Error& e) {
    CHECK(e.code() == Err::EvenCharacteristic);
  }
  try {
    FieldCtx::make(15);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NonPrime);
  }
  try {
    FieldCtx::make(3, 11);
  } catch (const Error& e) {
    CHECK(e.code() == Err::TooLarge);
  }
}

TEST_CASE("moduli are the expected minimal irreducibles") {
  CHECK(FieldCtx::make(7).modulus() == std::vector<std::uint32_t>{0, 1});
  // Hand-checked smallest monic irreducibles (high-degree-first ordering):
  CHECK(FieldCtx::make(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});   // x^2+1
  CHECK(FieldCtx::make(5, 2).modulus() == std::vector<std::uint32_t>{2, 0, 1});   // x^2+2
  CHECK(FieldCtx::make(3, 3).modulus() == std::vector<std::uint32_t>{1, 2, 0, 1});  // x^3+2x+1
}

TEST_CASE("prime field arithmetic matches integer arithmetic") {
  auto f = FieldCtx::make(11);
  for (std::int64_t a = 0; a < 11; ++a)
    for (std::int64_t b = 0; b < 11; ++b) {
      CHECK(f.add({std::uint32_t(a)}, {std::uint32_t(b)}).v == (a + b) % 11);
      CHECK(f.sub({std::uint32_t(a)}, {std::uint32_t(b)}).v == ((a - b) % 11 + 11) % 11);
      CHECK(f.mul({std::uint32_t(a)}, {std::uint32_t(b)}).v == (a * b) % 11);
    }
}

TEST_CASE("field axioms hold in extension fields") {
  for (auto [p, n] : {std::pair<int, int>{3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    auto f = FieldCtx::make(p, n);
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
      Scalar a = f.from_index(rng() % f.q());
      Scalar b = f.from_index(rng() % f.q());
      Scalar c = f.from_index(rng() % f.q());
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)).v == 0);
      CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
    }
    // Fermat: a^q = a for every a.
    for (std::int64_t a = 0; a < f.q(); ++a) {
      Scalar s = f.from_index(a);
      CHECK(f.pow(s, f.q()) == s);
    }
  }
}

TEST_CASE("inverses agree with a brute-force scan") {
  for (auto [p, n] : {std::pair<int, int>{13, 1}, {3, 3}, {5, 2}}) {
    auto f = FieldCtx::make(p, n);
    CHECK_THROWS_AS(f.inv(f.zero()), Error);
    for (std::int64_t a = 1; a < f.q(); ++a) {
      Scalar s = f.from_index(a);
      Scalar found = f.zero();
      for (std::int64_t b = 1; b < f.q(); ++b)
        if (f.mul(s, f.from_index(b)) == f.one()) {
          found = f.from_index(b);
          break;
        }
      CHECK(f.inv(s) == found);
      CHECK(f.mul(s, f.inv(s)) == f.one());
    }
  }
}

TEST_CASE("coefficient encoding round-trips") {
  auto f = FieldCtx::make(3, 3);
  for (std::int64_t a = 0; a < 27; ++a) {
    auto c = f.coeffs(f.from_index(a));
    std::vector<std::int64_t> back(c.begin(), c.end());
    CHECK(f.from_coeffs(back).v == a);
  }
  // Negative coefficients reduce mod p.
  CHECK(f.from_coeffs({-1, 0, 0}) == f.from_int(-1));
  CHECK(f.from_int(-1).v == 2);
  CHECK_THROWS_AS(f.from_coeffs({0, 0, 0, 1}), Error);
  CHECK_THROWS_AS(f.from_index(27), Error);
}

TEST_CASE("trace is linear, Frobenius-invariant, and onto F_p") {
  for (auto [p, n] : {std::pair<int, int>{3, 3}, {5, 2}, {7, 2}}) {
    auto f = FieldCtx::make(p, n);
    // On the prime subfield the trace is multiplication by n.
    for (std::int64_t c = 0; c < p; ++c)
      CHECK(f.trace(f.from_int(c)) == std::uint32_t(c * n % p));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      Scalar a = f.from_index(rng() % f.q());
      Scalar b = f.from_index(rng() % f.q());
      CHECK(f.trace(f.add(a, b)) == (f.trace(a) + f.trace(b)) % p);
      CHECK(f.trace(f.pow(a, p)) == f.trace(a));
    }
    // Each fiber of the trace has exactly q/p elements.
    std::vector<int> fiber(p, 0);
    for (std::int64_t a = 0; a < f.q(); ++a) ++fiber[f.trace(f.from_index(a))];
    for (int t = 0; t < p; ++t) CHECK(fiber[t] == f.q() / p);
  }
}

TEST_CASE("additive character is a nontrivial homomorphism") {
  for (auto [p, n] : {std::pair<int, int>{7, 1}, {3, 3}, {5, 2}}) {
    auto f = FieldCtx::make(p, n);
    std::complex<double> total = 0;
    bool nontrivial = false;
    for (std::int64_t a = 0; a < f.q(); ++a) {
      auto e = f.additive_character(f.from_index(a));
      total += e;
      if (std::abs(e - std::complex<double>{1, 0}) > 1e-12) nontrivial = true;
    }
    CHECK(std::abs(total) < 1e-9);  // orthogonality
    CHECK(nontrivial);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      Scalar a = f.from_index(rng() % f.q());
      Scalar b = f.from_index(rng() % f.q());
      auto lhs = f.additive_character(f.add(a, b));
      auto rhs = f.additive_character(a) * f.additive_character(b);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("quadratic character matches the square-table oracle") {
  for (auto [p, n] : {std::pair<int, int>{3, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {3, 3}, {5, 2}}) {
    auto f = FieldCtx::make(p, n);
    auto oracle = chi_oracle(f);
    CHECK(f.quadratic_character(f.zero()) == 0);
    for (std::int64_t a = 1; a < f.q(); ++a)
      CHECK(f.quadratic_character(f.from_index(a)) == oracle[a]);
    // Multiplicativity on a few random pairs.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      Scalar a = f.from_index(1 + rng() % (f.q() - 1));
      Scalar b = f.from_index(1 + rng() % (f.q() - 1));
      CHECK(f.quadratic_character(f.mul(a, b)) ==
            f.quadratic_character(a) * f.quadratic_character(b));
    }
    bool want = (f.q() % 4 == 1);
    CHECK(f.minus_one_is_square() == want);
    CHECK((f.quadratic_character(f.neg(f.one())) == 1) == want);
  }
}

TEST_CASE("normalized square-sum constant is the right sign") {
  for (auto [p, n] : {std::pair<int, int>{3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1},
                      {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    auto f = FieldCtx::make(p, n);
    auto sigma = f.gauss_constant();
    CHECK(std::abs(std::abs(sigma) - 1.0) < 1e-9);
    CHECK(std::abs(sigma.imag()) < 1e-9);
    double want = (f.q() % 4 == 3) ? -1.0 : 1.0;
    CHECK(sigma.real() == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("point codes round-trip") {
  auto f = FieldCtx::make(3, 3);
  for (std::int64_t x = 0; x < 27; ++x)
    for (std::int64_t y = 0; y < 27; ++y) {
      Vec2 v{f.from_index(x), f.from_index(y)};
      CHECK(decode2(f, encode2(f, v)) == v);
      for (std::int64_t z : {0, 13, 26}) {
        Vec3 w{v, f.from_index(z)};
        Vec3 back = decode3(f, encode3(f, w));
        CHECK(back == w);
      }
    }
}

TEST_CASE("point sets reject duplicates and out-of-range points") {
  auto f = FieldCtx::make(7);
  auto pt = [&](int x, int y) { return Vec2{f.from_int(x), f.from_int(y)}; };
  auto s = PointSet2::of(f, {pt(0, 0), pt(1, 2), pt(6, 6)});
  CHECK(s.size() == 3);
  CHECK(s.contains(f, pt(1, 2)));
  CHECK(!s.contains(f, pt(2, 1)));
  CHECK_THROWS_AS(PointSet2::of(f, {pt(1, 1), pt(1, 1)}), Error);
  CHECK_THROWS_AS(PointSet2::of(f, {Vec2{{7}, {0}}}), Error);
}

TEST_CASE("pointset csv round-trips in prime and extension fields") {
  {
    auto f = FieldCtx::make(7);
    std::stringstream in("# comment\n0,0\n1,2\n\n6,5\n");
    auto s = load_pointset_csv(f, in);
    CHECK(s.size() == 3);
    std::stringstream out;
    save_pointset_csv(f, s, out);
    std::stringstream in2(out.str());
    auto s2 = load_pointset_csv(f, in2);
    CHECK(s2.points() == s.points());
  }
  {
    auto f = FieldCtx::make(3, 2);
    std::stringstream in("0;1,2\n1,2;2\n");
    auto s = load_pointset_csv(f, in);
    CHECK(s.size() == 2);
    CHECK(s.points()[0].x == f.from_coeffs({0, 1}));
    std::stringstream out;
    save_pointset_csv(f, s, out);
    std::stringstream in2(out.str());
    auto s2 = load_pointset_csv(f, in2);
    CHECK(s2.points() == s.points());
  }
  {
    auto f = FieldCtx::make(7);
    std::stringstream bad("1\n");
    CHECK_THROWS_AS(load_pointset_csv(f, bad), Error);
    std::stringstream bad2("1,zebra\n");
    CHECK_THROWS_AS(load_pointset_csv(f, bad2), Error);
  }
}

TEST_CASE("scalar json round-trips") {
  auto f = FieldCtx::make(3, 3);
  for (std::int64_t a = 0; a < 27; ++a) {
    Scalar s = f.from_index(a);
    CHECK(scalar_from_json(f, scalar_json(f, s)) == s);
  }
  auto fp = FieldCtx::make(11);
  CHECK(scalar_json(fp, fp.from_int(5)) == nlohmann::json(5));
}
