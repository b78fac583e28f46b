#pragma once

#include <complex>
#include <cstdint>

#include "restlab/counting.hpp"
#include "restlab/function3.hpp"
#include "restlab/pointset.hpp"

namespace restlab {

// The analytic layer: surface measure on the paraboloid {(u, u.u)}, its
// inverse transform, extension/restriction operators, and the identities the
// test suite leans on.  Sign conventions are fixed once here — extension uses
// e(+x.xi), restriction e(-x.xi) — and the adjointness test
//   <extend(fn), g>_{F^3} = <fn, restrict_fourier(g)>_{P}
// is the normative check that they stay consistent.

// Closed form of the measure's inverse transform: 1 at the origin, 0
// elsewhere on the plane x3 = 0, and a modulus-1/q oscillation
// gauss_constant * q^-1 * e(|xbar|^2 / (-4 x3)) off it.
cx surface_kernel(const FieldCtx& f, Vec3 x);

// Kernel values with the point mass at 0 removed: K = surface - delta.
// Dense q^3 table at small q, closed-form evaluation above the cap; the two
// modes are interchangeable and never throw.
class KernelTable {
 public:
  static constexpr std::int64_t kDenseCap = 11;
  static KernelTable make(const FieldCtx& f);

  cx surface(const FieldCtx& f, Vec3 x) const;
  cx K(const FieldCtx& f, Vec3 x) const;
  bool dense() const { return !table_.empty(); }

 private:
  std::int64_t q_ = 0;
  std::vector<cx> table_;  // surface values indexed by encode3
};

// (fn dsigma)^inv(x) = q^-2 sum over bases b of fn(b) e(x . (b, b.b)).
// Output is evaluated at every point of F^3.
FunctionF3 extend(const FieldCtx& f, const FunctionP& fn);

// ghat(xi) = sum_x g(x) e(-x . xi) at every paraboloid point xi = (b, b.b).
FunctionP restrict_fourier(const FieldCtx& f, const FunctionF3& g);

// Plain inner products; second argument conjugated.  The P-side pairing
// carries the q^-2 normalization.
cx inner_f3(const FunctionF3& a, const FunctionF3& b);
cx inner_p(const FieldCtx& f, const FunctionP& a, const FunctionP& b);

// (g*K)(x) = sum_y g(y) K(x-y).  Direct summation over the support, or the
// frequency route extend(restrict_fourier(g)) - g; the two agree to 1e-9 and
// the tests hold them to it.
enum class ConvRoute { Direct, Frequency };
FunctionF3 convolve_K(const FieldCtx& f, const FunctionF3& g, const KernelTable& kt,
                      ConvRoute route = ConvRoute::Direct);

// | ||ghat||_{L2(P)} - |<g, g*(surface)>|^{1/2} |, which vanishes identically
// in exact arithmetic.
double check_convolution_identity(const FieldCtx& f, const FunctionF3& g, const KernelTable& kt);

// L2 norm of (gz*K)(gz2*K); both inputs must live on single horizontal
// planes (NotASlice).
double bilinear_slice_norm(const FieldCtx& f, const FunctionF3& gz, const FunctionF3& gz2,
                           const KernelTable& kt);

// ||G*K||_4^4 for G the indicator of A x {z}: the exact combinatorial value
// q^-1 R(A) - q^-2 E(A) and its leading term q^-1 R(A).
struct L4Report {
  double lhs = 0.0;            // direct fourth-power sum
  double energy_formula = 0.0;  // q^-1 R(A) - q^-2 E_plane(A)
  double leading_term = 0.0;   // q^-1 R(A)
};
L4Report l4_identity_check(const FieldCtx& f, const PointSet2& a, Scalar z,
                           const KernelTable& kt);

// Same fourth-power sum put through the substitution u = xbar/(2 x3),
// t = -1/(4 x3): returns |direct - transformed|, which is pure roundoff.
double pseudoconformal_check(const FieldCtx& f, const PointSet2& a, Scalar z,
                             const KernelTable& kt);

// The four upper bounds for ||ghat||_{L2(P)} with g the indicator of a set
// E in F^3 (the support of the argument), each with its observed constant
// lhs/bound:
//   decay:       sqrt|E| + q^-1/2 |E|
//   parseval:    sqrt(q |E|)
//   slice_rect:  sqrt|E| + |E|^{3/8} q^{-1/8} (sum_z R(E_z)^{1/4})^{1/2}
//   bilinear:    sqrt|E| + |E|^{3/8} (sum_z ||g_z*K||_4^2
//                                     + sum_{z != z'} ||g_z*K . g_z'*K||_2)^{1/4}
// cs_residual is the worst violation of the per-pair Cauchy-Schwarz step
// ||g_z*K . g_z'*K||_2^2 <= ||g_z*K||_4^2 ||g_z'*K||_4^2 (0 up to roundoff).
struct ChainReport {
  std::int64_t set_size = 0;
  double lhs = 0.0;
  double bound_decay = 0.0, bound_parseval = 0.0, bound_slice_rect = 0.0, bound_bilinear = 0.0;
  double c_decay = 0.0, c_parseval = 0.0, c_slice_rect = 0.0, c_bilinear = 0.0;
  double cs_residual = 0.0;
};
// q <= 11 (TooLarge): the bilinear leg is quartic in q.
ChainReport check_restriction_chain(const FieldCtx& f, const FunctionF3& g, const KernelTable& kt);

}  // namespace restlab
