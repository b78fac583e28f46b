#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "restlab/errors.hpp"

namespace restlab {

// Element of a finite field F_q, q = p^n, stored as an index in [0, q).
// The base-p digits of the index are the coefficients of the element written
// in the polynomial basis 1, x, ..., x^(n-1); for n = 1 the index is just the
// residue mod p.  All arithmetic goes through FieldCtx.
struct Scalar {
  std::uint32_t v = 0;
  friend bool operator==(Scalar a, Scalar b) { return a.v == b.v; }
  friend bool operator!=(Scalar a, Scalar b) { return a.v != b.v; }
  friend bool operator<(Scalar a, Scalar b) { return a.v < b.v; }
};

struct Vec2 {
  Scalar x, y;
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }
};

struct Vec3 {
  Vec2 xy;
  Scalar z;
  friend bool operator==(Vec3 a, Vec3 b) { return a.xy == b.xy && a.z == b.z; }
};

// Arithmetic context for F_q with q = p^n odd, q <= max_order (default 2^14).
//
// The modulus is the lexicographically smallest monic irreducible polynomial
// of degree n over F_p, reading coefficients from the highest degree down
// (for n = 1 the modulus is x, so elements are plain residues).  The context
// precomputes, once, everything the analytic layer needs per element: the
// absolute trace to F_p, the values of the canonical additive character
//   e(a) = exp(2*pi*i * Tr(a) / p),
// and the quadratic character chi(a) = a^((q-1)/2) in {-1, 0, +1}.
//
// Fields with q = 1 mod 4 (where -1 is a square) are constructible but
// flagged; parts of the bounds layer refuse them unless overridden, since
// several of the inequalities exercised there are proved under q = 3 mod 4.
class FieldCtx {
 public:
  static constexpr std::int64_t kDefaultMaxOrder = 1 << 14;

  // Throws: NonPrime, EvenCharacteristic, TooLarge, NoIrreducibleFound,
  // InvalidArgument (n < 1).
  static FieldCtx make(std::int64_t p, std::int64_t n = 1,
                       std::int64_t max_order = kDefaultMaxOrder);

  std::int64_t p() const { return p_; }
  std::int64_t n() const { return n_; }
  std::int64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool minus_one_is_square() const { return minus_one_is_square_; }

  Scalar zero() const { return {0}; }
  Scalar one() const { return {1}; }
  // Embeds an integer into the prime subfield (value taken mod p).
  Scalar from_int(std::int64_t v) const;
  // Raw index in [0, q); the digit encoding described on Scalar.
  Scalar from_index(std::uint64_t idx) const;
  Scalar from_coeffs(const std::vector<std::int64_t>& c) const;
  std::vector<std::uint32_t> coeffs(Scalar a) const;

  Scalar add(Scalar a, Scalar b) const;
  Scalar sub(Scalar a, Scalar b) const;
  Scalar neg(Scalar a) const;
  Scalar mul(Scalar a, Scalar b) const;
  Scalar inv(Scalar a) const;  // throws DivisionByZero on 0
  Scalar div(Scalar a, Scalar b) const;
  Scalar pow(Scalar a, std::uint64_t e) const;

  Scalar dot2(Vec2 a, Vec2 b) const { return add(mul(a.x, b.x), mul(a.y, b.y)); }
  Scalar norm2(Vec2 a) const { return dot2(a, a); }

  // Absolute trace Tr_{F_q/F_p}(a), as a residue in [0, p).
  std::uint32_t trace(Scalar a) const { return trace_[a.v]; }
  std::complex<double> additive_character(Scalar a) const { return roots_[trace_[a.v]]; }
  int quadratic_character(Scalar a) const { return chi_[a.v]; }
  // q^{-1} * (sum_y e(y^2))^2; unimodular, real, and -1 exactly when q = 3 mod 4.
  std::complex<double> gauss_constant() const { return sigma_; }

  nlohmann::json to_json() const;

 private:
  FieldCtx() = default;

  std::int64_t p_ = 0, n_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  bool minus_one_is_square_ = false;
  std::vector<std::uint32_t> reduce_;  // x^(n+j) mod modulus, row-major n coeffs per j
  std::vector<std::uint16_t> trace_;
  std::vector<std::int8_t> chi_;
  std::vector<std::complex<double>> roots_;  // p-th roots of unity
  std::complex<double> sigma_;

  void build_tables();
};

std::uint32_t encode2(const FieldCtx& f, Vec2 v);
Vec2 decode2(const FieldCtx& f, std::uint32_t code);
std::uint64_t encode3(const FieldCtx& f, Vec3 v);
Vec3 decode3(const FieldCtx& f, std::uint64_t code);

}  // namespace restlab
