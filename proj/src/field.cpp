#include "restlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace restlab {

const char* err_name(Err e) {
  switch (e) {
    case Err::NonPrime: return "NonPrime";
    case Err::EvenCharacteristic: return "EvenCharacteristic";
    case Err::TooLarge: return "TooLarge";
    case Err::NoIrreducibleFound: return "NoIrreducibleFound";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::InputTooLarge: return "InputTooLarge";
    case Err::EmptySet: return "EmptySet";
    case Err::ZeroFunction: return "ZeroFunction";
    case Err::NotASlice: return "NotASlice";
    case Err::NotRegular: return "NotRegular";
    case Err::ClassMismatch: return "ClassMismatch";
    case Err::InfeasibleSpec: return "InfeasibleSpec";
    case Err::ParallelTerms: return "ParallelTerms";
    case Err::TableMismatch: return "TableMismatch";
    case Err::Infeasible: return "Infeasible";
    case Err::MinusOneSquare: return "MinusOneSquare";
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over F_p as coefficient vectors, constant term first.
using Poly = std::vector<std::uint32_t>;

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

// Remainder of a / b, b monic of positive degree.
Poly poly_mod(Poly a, const Poly& b, std::int64_t p) {
  int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) {
    std::uint64_t c = a[da];
    for (int i = 0; i <= db; ++i) {
      std::uint64_t t = a[da - db + i] + c * (p - b[i]) % p;
      a[da - db + i] = static_cast<std::uint32_t>(t % p);
    }
  }
  return a;
}

bool divides(const Poly& d, const Poly& f, std::int64_t p) {
  return degree(poly_mod(f, d, p)) < 0;
}

// Irreducibility by trial division against every monic polynomial of degree
// up to deg(f)/2.  Field construction is rare and q is capped, so the
// exhaustive scan is cheap.
bool poly_irreducible(const Poly& f, std::int64_t p) {
  int n = degree(f);
  if (n <= 0) return false;
  if (f[0] == 0) return n == 1;  // divisible by x
  for (int d = 1; 2 * d <= n; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::int64_t m = 0; m < count; ++m) {
      Poly g(d + 1, 0);
      std::int64_t t = m;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

}  // namespace

FieldCtx FieldCtx::make(std::int64_t p, std::int64_t n, std::int64_t max_order) {
  if (n < 1) fail(Err::InvalidArgument, "extension degree must be >= 1");
  if (p == 2) fail(Err::EvenCharacteristic, "characteristic 2 is not supported");
  if (!is_prime(p)) fail(Err::NonPrime, "p = " + std::to_string(p) + " is not prime");

  // Point codes pack two coordinates into 32 bits, so q^2 must fit regardless
  // of any user-supplied cap.
  constexpr std::int64_t kHardCap = 1 << 16;
  if (n > 16) fail(Err::TooLarge, "extension degree cap is 16");
  std::int64_t q = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    q *= p;
    if (q > max_order || q > kHardCap)
      fail(Err::TooLarge, "field order " + std::to_string(p) + "^" + std::to_string(n) +
                              " exceeds cap " + std::to_string(std::min(max_order, kHardCap)));
  }

  FieldCtx f;
  f.p_ = p;
  f.n_ = n;
  f.q_ = q;
  f.minus_one_is_square_ = (q % 4 == 1);

  if (n == 1) {
    f.modulus_ = {0, 1};  // x
  } else {
    // Smallest monic irreducible, coefficients compared from x^(n-1) down to
    // the constant term; m's base-p digits are read with c_0 least significant.
    bool found = false;
    std::int64_t count = 1;
    for (std::int64_t i = 0; i < n; ++i) count *= p;
    for (std::int64_t m = 0; m < count && !found; ++m) {
      Poly cand(n + 1, 0);
      std::int64_t t = m;
      for (int i = 0; i < n; ++i) {
        cand[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      cand[n] = 1;
      if (poly_irreducible(cand, p)) {
        f.modulus_ = cand;
        found = true;
      }
    }
    if (!found) fail(Err::NoIrreducibleFound, "no monic irreducible of degree " + std::to_string(n));
  }

  f.build_tables();
  return f;
}

Scalar FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % p_;
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

Scalar FieldCtx::from_index(std::uint64_t idx) const {
  if (idx >= static_cast<std::uint64_t>(q_)) fail(Err::InvalidArgument, "scalar index out of range");
  return {static_cast<std::uint32_t>(idx)};
}

Scalar FieldCtx::from_coeffs(const std::vector<std::int64_t>& c) const {
  if (c.size() > static_cast<std::size_t>(n_)) fail(Err::InvalidArgument, "too many coefficients");
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    std::int64_t r = c[i] % p_;
    if (r < 0) r += p_;
    v = v * p_ + static_cast<std::uint64_t>(r);
  }
  return {static_cast<std::uint32_t>(v)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(Scalar a) const {
  std::vector<std::uint32_t> c(n_);
  std::uint32_t v = a.v;
  for (std::int64_t i = 0; i < n_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

Scalar FieldCtx::add(Scalar a, Scalar b) const {
  if (n_ == 1) {
    std::uint32_t s = a.v + b.v;
    if (s >= p_) s -= p_;
    return {s};
  }
  std::uint32_t out = 0, mult = 1;
  std::uint32_t av = a.v, bv = b.v;
  for (std::int64_t i = 0; i < n_; ++i) {
    std::uint32_t s = av % p_ + bv % p_;
    if (s >= p_) s -= p_;
    out += s * mult;
    mult *= p_;
    av /= p_;
    bv /= p_;
  }
  return {out};
}

Scalar FieldCtx::neg(Scalar a) const {
  if (n_ == 1) return {a.v == 0 ? 0u : static_cast<std::uint32_t>(p_) - a.v};
  std::uint32_t out = 0, mult = 1;
  std::uint32_t av = a.v;
  for (std::int64_t i = 0; i < n_; ++i) {
    std::uint32_t d = av % p_;
    out += (d == 0 ? 0u : static_cast<std::uint32_t>(p_) - d) * mult;
    mult *= p_;
    av /= p_;
  }
  return {out};
}

Scalar FieldCtx::sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

Scalar FieldCtx::mul(Scalar a, Scalar b) const {
  if (n_ == 1)
    return {static_cast<std::uint32_t>(std::uint64_t(a.v) * b.v % p_)};

  // Schoolbook product, then fold degrees >= n with the precomputed
  // reduction rows for x^(n+j).
  std::uint32_t da[16], db[16];
  std::uint64_t prod[32] = {0};
  std::uint32_t av = a.v, bv = b.v;
  for (std::int64_t i = 0; i < n_; ++i) {
    da[i] = av % p_;
    db[i] = bv % p_;
    av /= p_;
    bv /= p_;
  }
  for (std::int64_t i = 0; i < n_; ++i) {
    if (da[i] == 0) continue;
    for (std::int64_t j = 0; j < n_; ++j) prod[i + j] += std::uint64_t(da[i]) * db[j];
  }
  for (std::int64_t k = 2 * n_ - 2; k >= n_; --k) {
    std::uint64_t c = prod[k] % p_;
    prod[k] = 0;
    if (c == 0) continue;
    const std::uint32_t* row = &reduce_[(k - n_) * n_];
    for (std::int64_t i = 0; i < n_; ++i) prod[i] += c * row[i];
  }
  std::uint32_t out = 0, mult = 1;
  for (std::int64_t i = 0; i < n_; ++i) {
    out += static_cast<std::uint32_t>(prod[i] % p_) * mult;
    mult *= p_;
  }
  return {out};
}

Scalar FieldCtx::pow(Scalar a, std::uint64_t e) const {
  Scalar r = one(), base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Scalar FieldCtx::inv(Scalar a) const {
  if (a.v == 0) fail(Err::DivisionByZero, "inverse of zero");
  return pow(a, static_cast<std::uint64_t>(q_ - 2));
}

Scalar FieldCtx::div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

void FieldCtx::build_tables() {
  // Reduction rows: x^(n+j) mod modulus for j in [0, n-2].
  if (n_ > 1) {
    reduce_.assign((n_ - 1) * n_, 0);
    std::vector<std::uint32_t> cur(n_);  // x^n mod modulus = -(c_0 .. c_{n-1})
    for (std::int64_t i = 0; i < n_; ++i)
      cur[i] = modulus_[i] == 0 ? 0u : static_cast<std::uint32_t>(p_) - modulus_[i];
    for (std::int64_t j = 0; j + 1 < n_; ++j) {
      std::copy(cur.begin(), cur.end(), reduce_.begin() + j * n_);
      // cur *= x, reducing the overflow coefficient with x^n's row.
      std::uint64_t top = cur[n_ - 1];
      for (std::int64_t i = n_ - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (std::int64_t i = 0; i < n_; ++i) {
          const std::uint32_t* xn = &reduce_[0];
          cur[i] = static_cast<std::uint32_t>((cur[i] + top * xn[i]) % p_);
        }
    }
  }

  // Trace is F_p-linear: tabulate it on the power basis, then extend by digits.
  std::vector<std::uint32_t> basis_trace(n_);
  for (std::int64_t i = 0; i < n_; ++i) {
    Scalar xi = one();
    if (n_ > 1) {
      Scalar x = from_index(static_cast<std::uint64_t>(p_));
      xi = pow(x, static_cast<std::uint64_t>(i));
    }
    // Tr(a) = sum of Frobenius orbits a^(p^k), k < n.
    Scalar t = zero(), f = xi;
    for (std::int64_t k = 0; k < n_; ++k) {
      t = add(t, f);
      f = pow(f, static_cast<std::uint64_t>(p_));
    }
    basis_trace[i] = t.v % p_;  // trace lands in the prime subfield
  }

  trace_.resize(q_);
  for (std::int64_t a = 0; a < q_; ++a) {
    std::uint64_t acc = 0;
    std::uint32_t av = static_cast<std::uint32_t>(a);
    for (std::int64_t i = 0; i < n_; ++i) {
      acc += std::uint64_t(av % p_) * basis_trace[i];
      av /= p_;
    }
    trace_[a] = static_cast<std::uint16_t>(acc % p_);
  }

  roots_.resize(p_);
  for (std::int64_t k = 0; k < p_; ++k) {
    double ang = 2.0 * std::numbers::pi * double(k) / double(p_);
    roots_[k] = {std::cos(ang), std::sin(ang)};
  }

  chi_.assign(q_, 0);
  std::uint64_t half = static_cast<std::uint64_t>((q_ - 1) / 2);
  for (std::int64_t a = 1; a < q_; ++a)
    chi_[a] = (pow(from_index(a), half) == one()) ? 1 : -1;

  std::complex<double> g = 0;
  for (std::int64_t y = 0; y < q_; ++y) {
    Scalar s = from_index(y);
    g += additive_character(mul(s, s));
  }
  sigma_ = g * g / double(q_);
}

nlohmann::json FieldCtx::to_json() const {
  return {{"p", p_},
          {"n", n_},
          {"q", q_},
          {"modulus", modulus_},
          {"minus_one_is_square", minus_one_is_square_}};
}

std::uint32_t encode2(const FieldCtx& f, Vec2 v) {
  return v.x.v * static_cast<std::uint32_t>(f.q()) + v.y.v;
}

Vec2 decode2(const FieldCtx& f, std::uint32_t code) {
  auto q = static_cast<std::uint32_t>(f.q());
  return {{code / q}, {code % q}};
}

std::uint64_t encode3(const FieldCtx& f, Vec3 v) {
  return std::uint64_t(encode2(f, v.xy)) * static_cast<std::uint64_t>(f.q()) + v.z.v;
}

Vec3 decode3(const FieldCtx& f, std::uint64_t code) {
  auto q = static_cast<std::uint64_t>(f.q());
  Vec3 out;
  out.z = {static_cast<std::uint32_t>(code % q)};
  out.xy = decode2(f, static_cast<std::uint32_t>(code / q));
  return out;
}

}  // namespace restlab
