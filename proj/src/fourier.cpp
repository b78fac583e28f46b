#include "restlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "restlab/errors.hpp"

namespace restlab {

cx surface_kernel(const FieldCtx& f, Vec3 x) {
  bool base_zero = (x.xy.x.v == 0 && x.xy.y.v == 0);
  if (x.z.v == 0) return base_zero ? cx{1.0, 0.0} : cx{0.0, 0.0};
  // Completing the square in the defining sum leaves a Gauss-sum constant
  // times a unimodular character of |xbar|^2 / (-4 x3).
  Scalar denom = f.neg(f.mul(f.from_int(4), x.z));
  Scalar phase = f.div(f.norm2(x.xy), denom);
  return f.gauss_constant() * (1.0 / static_cast<double>(f.q())) * f.additive_character(phase);
}

KernelTable KernelTable::make(const FieldCtx& f) {
  KernelTable kt;
  kt.q_ = f.q();
  if (f.q() <= kDenseCap) {
    std::int64_t n = f.q() * f.q() * f.q();
    kt.table_.resize(n);
    for (std::int64_t code = 0; code < n; ++code)
      kt.table_[code] = surface_kernel(f, decode3(f, static_cast<std::uint64_t>(code)));
  }
  return kt;
}

cx KernelTable::surface(const FieldCtx& f, Vec3 x) const {
  if (!table_.empty()) return table_[encode3(f, x)];
  return surface_kernel(f, x);
}

cx KernelTable::K(const FieldCtx& f, Vec3 x) const {
  cx v = surface(f, x);
  if (x.xy.x.v == 0 && x.xy.y.v == 0 && x.z.v == 0) v -= 1.0;
  return v;
}

FunctionF3 extend(const FieldCtx& f, const FunctionP& fn) {
  FunctionF3 out(f);
  double w = 1.0 / (static_cast<double>(f.q()) * static_cast<double>(f.q()));
  std::int64_t n = f.q() * f.q() * f.q();
  for (std::int64_t code = 0; code < n; ++code) {
    Vec3 x = decode3(f, static_cast<std::uint64_t>(code));
    cx acc = 0;
    for (const auto& [bcode, v] : fn.values()) {
      Vec2 b = decode2(f, bcode);
      Scalar dot = f.add(f.dot2(x.xy, b), f.mul(x.z, f.norm2(b)));
      acc += v * f.additive_character(dot);
    }
    out.set(static_cast<std::uint64_t>(code), w * acc);
  }
  return out;
}

FunctionP restrict_fourier(const FieldCtx& f, const FunctionF3& g) {
  FunctionP out(f);
  for (std::int64_t bcode = 0; bcode < f.q() * f.q(); ++bcode) {
    Vec2 b = decode2(f, static_cast<std::uint32_t>(bcode));
    Scalar nb = f.norm2(b);
    cx acc = 0;
    for (const auto& [xcode, v] : g.values()) {
      Vec3 x = decode3(f, xcode);
      Scalar dot = f.add(f.dot2(x.xy, b), f.mul(x.z, nb));
      acc += v * f.additive_character(f.neg(dot));
    }
    out.set(static_cast<std::uint32_t>(bcode), acc);
  }
  return out;
}

cx inner_f3(const FunctionF3& a, const FunctionF3& b) {
  cx acc = 0;
  for (const auto& [code, v] : a.values()) acc += v * std::conj(b.at(code));
  return acc;
}

cx inner_p(const FieldCtx& f, const FunctionP& a, const FunctionP& b) {
  double w = 1.0 / (static_cast<double>(f.q()) * static_cast<double>(f.q()));
  cx acc = 0;
  for (const auto& [code, v] : a.values()) acc += v * std::conj(b.at(code));
  return w * acc;
}

FunctionF3 convolve_K(const FieldCtx& f, const FunctionF3& g, const KernelTable& kt,
                      ConvRoute route) {
  if (route == ConvRoute::Frequency) {
    // ghat restricted to the surface, extended back, minus the identity part:
    // convolving with the surface transform multiplies by q*1_P - 1 upstairs.
    FunctionF3 out = extend(f, restrict_fourier(f, g));
    for (const auto& [code, v] : g.values()) out.set(code, out.at(code) - v);
    return out;
  }
  FunctionF3 out(f);
  std::int64_t n = f.q() * f.q() * f.q();
  for (std::int64_t code = 0; code < n; ++code) {
    Vec3 x = decode3(f, static_cast<std::uint64_t>(code));
    cx acc = 0;
    for (const auto& [ycode, v] : g.values()) {
      Vec3 y = decode3(f, ycode);
      Vec3 d{{f.sub(x.xy.x, y.xy.x), f.sub(x.xy.y, y.xy.y)}, f.sub(x.z, y.z)};
      acc += v * kt.K(f, d);
    }
    out.set(static_cast<std::uint64_t>(code), acc);
  }
  return out;
}

double check_convolution_identity(const FieldCtx& f, const FunctionF3& g, const KernelTable& kt) {
  double lhs = norm_lq_p(f, restrict_fourier(f, g), 2.0);
  FunctionF3 conv = convolve_K(f, g, kt);  // g * surface = g * K + g
  for (const auto& [code, v] : g.values()) conv.set(code, conv.at(code) + v);
  double rhs = std::sqrt(std::abs(inner_f3(g, conv)));
  return std::abs(lhs - rhs);
}

double bilinear_slice_norm(const FieldCtx& f, const FunctionF3& gz, const FunctionF3& gz2,
                           const KernelTable& kt) {
  if (!is_slice(f, gz) || !is_slice(f, gz2))
    fail(Err::NotASlice, "bilinear norm needs single-plane supports");
  if (gz.empty() || gz2.empty()) return 0.0;
  FunctionF3 c1 = convolve_K(f, gz, kt);
  FunctionF3 c2 = convolve_K(f, gz2, kt);
  double acc = 0;
  for (const auto& [code, v] : c1.values()) {
    double m = std::abs(v * c2.at(code));
    acc += m * m;
  }
  return std::sqrt(acc);
}

namespace {

FunctionF3 lift_at(const FieldCtx& f, const PointSet2& a, Scalar z) {
  FunctionF3 g(f);
  for (const Vec2& b : a.points()) g.set(f, Vec3{b, z}, cx{1.0, 0.0});
  return g;
}

double fourth_power_mass(const FunctionF3& g) {
  double acc = 0;
  for (const auto& [code, v] : g.values()) {
    double m = std::abs(v);
    acc += m * m * m * m;
  }
  return acc;
}

}  // namespace

L4Report l4_identity_check(const FieldCtx& f, const PointSet2& a, Scalar z,
                           const KernelTable& kt) {
  L4Report r;
  if (a.empty()) return r;
  r.lhs = fourth_power_mass(convolve_K(f, lift_at(f, a, z), kt));
  double q = static_cast<double>(f.q());
  auto rect = static_cast<double>(count_rectangles_energy(f, a));
  auto energy = static_cast<double>(additive_energy_plane(f, a));
  r.energy_formula = rect / q - energy / (q * q);
  r.leading_term = rect / q;
  return r;
}

double pseudoconformal_check(const FieldCtx& f, const PointSet2& a, Scalar z,
                             const KernelTable& kt) {
  if (a.empty()) return 0.0;
  double direct = fourth_power_mass(convolve_K(f, lift_at(f, a, z), kt));

  // Off the support plane the kernel phase |xbar - y|^2/(-4(x3 - z)) splits
  // into a y-independent factor and e(u.y + t|y|^2) with u = xbar/(2 s),
  // t = -1/(4 s); both substitutions are bijections, so the fourth-power mass
  // is a clean double sum over (u, t != 0).
  double q = static_cast<double>(f.q());
  double transformed = 0;
  for (std::int64_t ti = 1; ti < f.q(); ++ti) {
    Scalar t = f.from_index(ti);
    for (std::int64_t ucode = 0; ucode < f.q() * f.q(); ++ucode) {
      Vec2 u = decode2(f, static_cast<std::uint32_t>(ucode));
      cx acc = 0;
      for (const Vec2& y : a.points()) {
        Scalar phase = f.add(f.dot2(u, y), f.mul(t, f.norm2(y)));
        acc += f.additive_character(phase);
      }
      double m = std::abs(acc);
      transformed += m * m * m * m;
    }
  }
  transformed /= q * q * q * q;
  (void)kt;
  (void)z;
  return std::abs(direct - transformed);
}

ChainReport check_restriction_chain(const FieldCtx& f, const FunctionF3& g,
                                    const KernelTable& kt) {
  if (f.q() > 11) fail(Err::TooLarge, "restriction chain evaluation capped at q <= 11");
  ChainReport r;
  if (g.empty()) return r;

  // The bounds are stated for indicators; only the support of g matters.
  FunctionF3 ind(f);
  for (const auto& [code, v] : g.values()) {
    (void)v;
    ind.set(code, cx{1.0, 0.0});
  }
  auto n = static_cast<double>(ind.support_size());
  r.set_size = static_cast<std::int64_t>(ind.support_size());
  double q = static_cast<double>(f.q());

  r.lhs = norm_lq_p(f, restrict_fourier(f, ind), 2.0);
  r.bound_decay = std::sqrt(n) + n / std::sqrt(q);
  r.bound_parseval = std::sqrt(q * n);

  auto slices = slices_of(f, ind);
  double sum_quarter_rects = 0;
  std::vector<double> slice_l4sq;  // ||g_z * K||_4^2 per slice
  std::vector<FunctionF3> convs;
  for (const auto& [z, gz] : slices) {
    std::vector<Vec2> base;
    for (const auto& [code, v] : gz.values()) {
      (void)v;
      base.push_back(decode3(f, code).xy);
    }
    auto support = PointSet2::of(f, std::move(base));
    sum_quarter_rects +=
        std::pow(static_cast<double>(count_rectangles_energy(f, support)), 0.25);
    FunctionF3 conv = convolve_K(f, gz, kt);
    slice_l4sq.push_back(std::sqrt(fourth_power_mass(conv)));
    convs.push_back(std::move(conv));
  }
  r.bound_slice_rect = std::sqrt(n) + std::pow(n, 0.375) * std::pow(q, -0.125) *
                                          std::sqrt(sum_quarter_rects);

  double s = 0;
  for (double v : slice_l4sq) s += v;
  for (std::size_t i = 0; i < convs.size(); ++i)
    for (std::size_t j = i + 1; j < convs.size(); ++j) {
      double acc = 0;
      for (const auto& [code, v] : convs[i].values()) {
        double m = std::abs(v * convs[j].at(code));
        acc += m * m;
      }
      double cross = std::sqrt(acc);
      s += 2.0 * cross;  // ordered pairs (i,j) and (j,i)
      double slackless = cross * cross - slice_l4sq[i] * slice_l4sq[j];
      r.cs_residual = std::max(r.cs_residual, slackless);
    }
  r.bound_bilinear = std::sqrt(n) + std::pow(n, 0.375) * std::pow(s, 0.25);

  r.c_decay = r.lhs / r.bound_decay;
  r.c_parseval = r.lhs / r.bound_parseval;
  r.c_slice_rect = r.lhs / r.bound_slice_rect;
  r.c_bilinear = r.lhs / r.bound_bilinear;
  return r;
}

}  // namespace restlab
