#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "restlab/counting.hpp"
#include "restlab/families.hpp"
#include "restlab/fourier.hpp"
#include "restlab/regularity.hpp"

namespace restlab {

// One evaluated inequality instance.  `ratio` is lhs/rhs (0 when rhs == 0 and
// lhs == 0; an instance with rhs == 0 < lhs is a hard failure upstream).
struct SweepInstance {
  std::string check;
  std::int64_t q = 0;
  std::string family;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct SweepReport {
  std::vector<SweepInstance> instances;
  std::vector<std::string> errors;      // per-instance failures, non-fatal
  std::vector<std::string> exact_failures;  // violated per-instance identities
  // check -> q -> worst ratio seen.
  std::map<std::string, std::map<std::int64_t, double>> max_ratio;

  void add(SweepInstance inst);
};

// ---------------------------------------------------------------------------
// Individual checks.  Each returns the evaluated instance; family/params are
// filled by the caller (the suite) for reporting.
// ---------------------------------------------------------------------------

// Trapezoid count of a regular pair against the three-term frame bound
//   |A1|^2|A2| k2 + |A1||A2|^2 k1 + |A1|^2 |A2|^2 / (k1 k2).
// Parts must pass validate_k_regular (NotRegular otherwise).
SweepInstance check_trapezoid_lemma(const FieldCtx& f, const RegularPart& a1,
                                    const RegularPart& a2);

// Irregular variant: both sets must have max line richness at most
// ceil(sqrt(size)); bound min{|A1|^{3/2}|A2|^2, |A2|^{3/2}|A1|^2}.
SweepInstance check_trapezoid_irregular(const FieldCtx& f, const PointSet2& a1,
                                        const PointSet2& a2);

// Rectangle count of a regular part against |A|^2 k.  Uses the collision
// counter, so the field must have -1 a non-square (MinusOneSquare) unless
// allow_isotropic overrides the refusal.
SweepInstance check_kregular_rectangles(const FieldCtx& f, const RegularPart& a,
                                        bool allow_isotropic = false);

// min{ q sqrt(R(A) R(B)), T(A,B) } against m^{8/3} q^{2/3} + m^{7/2} with
// m = sqrt(|A||B|).  Sizes must agree within a factor 2 and the two sets
// must classify alike (both irregular, or regular with equal dyadic k class);
// otherwise ClassMismatch.
SweepInstance check_prop_min(const FieldCtx& f, const PointSet2& a, const PointSet2& b,
                             bool allow_isotropic = false);

// R(A) against the power bound |A|^{5/2} and the incidence bound
// q^{-1}|A|^3 + |A|^2 sqrt(q).  Returns the two instances in that order.
std::pair<SweepInstance, SweepInstance> check_energy_bounds(const FieldCtx& f,
                                                            const PointSet2& a,
                                                            bool allow_isotropic = false);

// q * ||G*K||_4^4 / R(A) for the indicator of A x {z}: the sandwich in
// [1/4, 1] holds for sparse sets (|A| of order q); the caller keeps dense
// families away from this check.
SweepInstance check_l4_envelope(const FieldCtx& f, const PointSet2& a, Scalar z,
                                const KernelTable& kt, bool allow_isotropic = false);

// Per-instance Cauchy-Schwarz: bilinear_slice_norm(gz, gz2)^2 against
// ||gz*K||_4^2 ||gz2*K||_4^2.  Exact up to roundoff; the suite treats a
// violation beyond tolerance as a hard failure.
SweepInstance check_bilinear_cs(const FieldCtx& f, const FunctionF3& gz,
                                const FunctionF3& gz2, const KernelTable& kt);

// Restricted L2 mass of an indicator g against the five-range piecewise
// table (plus the universal additive term).  Appends the slice profile
// (w, m and the four bracket values) to the params string.
SweepInstance check_final_table(const FieldCtx& f, const FunctionF3& g);

// Assembles a part from explicit frame lines: each point must lie on some
// frame line (InvalidArgument otherwise); k is the caller's label.
RegularPart assemble_part(const FieldCtx& f, std::vector<LineF2> frame,
                          const PointSet2& points, std::int64_t k);

// ---------------------------------------------------------------------------
// Suite harness.
// ---------------------------------------------------------------------------

struct RunConfig {
  std::vector<std::int64_t> qs{3, 7, 11};   // desk preset
  std::uint64_t seed = 1;
  std::string preset = "desk";
  std::map<std::string, double> ceilings;   // check -> max allowed ratio
  double stability_slack = 1.25;             // growth allowance beyond q = 7
  double exact_tolerance = 1e-9;             // roundoff allowance on exact identities
  bool corrupt_trapezoids = false;           // self-test hook: breaks an exact check
  bool allow_isotropic = false;
};

RunConfig desk_preset();
RunConfig extended_preset();      // adds q = 19, 23 for the counting checks
std::map<std::string, double> default_ceilings();

// Runs every check over the preset's families and fields.  Per-instance
// errors are collected, not fatal; exact-identity violations are recorded in
// exact_failures.
SweepReport run_suite(const RunConfig& cfg);

// True iff no exact failure, every max ratio is within its ceiling (checks
// without a configured ceiling use ceiling 16), and ratios are stable in q:
// beyond q = 7 the per-check max may not grow by more than the slack factor
// between consecutive fields (ratios at roundoff scale, <= 1e-3, are exempt
// from the growth rule).
bool report_ok(const SweepReport& report, const RunConfig& cfg);
std::vector<std::string> report_violations(const SweepReport& report, const RunConfig& cfg);

// CSV: '#'-prefixed header lines echoing version, seed, preset, ceilings,
// then one "check,q,family,params,lhs,rhs,ratio" row per instance with
// twelve-significant-digit numbers; reruns with equal config are
// byte-identical.
void write_csv(const SweepReport& report, const RunConfig& cfg, std::ostream& out);
nlohmann::json summary_json(const SweepReport& report, const RunConfig& cfg);

}  // namespace restlab
