#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "restlab/function3.hpp"
#include "restlab/pointset.hpp"

namespace restlab {

// A reproducible instance generator: `kind` names the construction, `params`
// carries integer knobs (sizes, counts, seed).  Two specs with equal kind and
// params generate identical objects in the same field, on any platform: all
// randomness flows through our own splitmix-fed uniform sampler, never
// through distribution classes with unspecified implementations.
struct FamilySpec {
  std::string kind;
  std::map<std::string, std::int64_t> params;  // sorted keys = canonical order
};

// Text form "kind:key=value,key=value" (keys sorted; bare "kind" means no
// params).  parse accepts what format emits.
FamilySpec parse_family(const std::string& text);
std::string format_family(const FamilySpec& spec);

// Point-set constructions over F^2:
//   random            m points, uniform without replacement     (m, seed)
//   single_line       n points on the line y = 0                (n)
//   parallel_lines    l horizontal lines with n points each     (lines, per_line)
//   grid              {0..nx-1} x {0..ny-1}                     (nx, ny)
//   few_directions    d slopes through the origin, n points on
//                     each punctured line                       (directions, per_line)
//   paraboloid_subset m points (t, t^2)                         (m)
// Unknown kinds, missing/extra params, or sizes that do not fit the field
// raise InfeasibleSpec.
PointSet2 generate_set(const FieldCtx& f, const FamilySpec& spec);

// Function constructions over F^3:
//   product_slices    one random plane set of size m, lifted to
//                     w consecutive heights                     (slices, per_slice, seed)
//   random3d          m support points, uniform, unit values    (m, seed)
PointSet2 generate_base_set(const FieldCtx& f, const FamilySpec& spec);
FunctionF3 generate_function(const FieldCtx& f, const FamilySpec& spec);

// True for kinds handled by generate_set.
bool is_set_kind(const std::string& kind);

// Deterministic 64-bit stream: splitmix64 over a counter.  Used for seeding
// and sampling so reruns are byte-identical across standard libraries.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Unbiased value in [0, bound) via rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace restlab
