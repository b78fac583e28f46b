#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include <json.hpp>

#include "restlab/pointset.hpp"

namespace restlab {

using cx = std::complex<double>;

// Sparse complex function on F_q^3, keyed by encode3.  std::map keeps
// iteration order deterministic, which the byte-identical-rerun guarantee
// relies on; don't swap in an unordered container.
class FunctionF3 {
 public:
  explicit FunctionF3(const FieldCtx& f) : q_(f.q()) {}

  std::int64_t q() const { return q_; }
  const std::map<std::uint64_t, cx>& values() const { return v_; }
  bool empty() const { return v_.empty(); }
  std::size_t support_size() const { return v_.size(); }

  cx at(std::uint64_t code) const {
    auto it = v_.find(code);
    return it == v_.end() ? cx{0.0, 0.0} : it->second;
  }
  cx at(const FieldCtx& f, Vec3 x) const { return at(encode3(f, x)); }

  // Zero values are dropped so support_size() means what it says.
  void set(std::uint64_t code, cx value) {
    if (value == cx{0.0, 0.0})
      v_.erase(code);
    else
      v_[code] = value;
  }
  void set(const FieldCtx& f, Vec3 x, cx value) { set(encode3(f, x), value); }

 private:
  std::int64_t q_;
  std::map<std::uint64_t, cx> v_;
};

// Function on the paraboloid, indexed by its base point (the (xy, |xy|^2)
// lift is implicit).
class FunctionP {
 public:
  explicit FunctionP(const FieldCtx& f) : q_(f.q()) {}

  std::int64_t q() const { return q_; }
  const std::map<std::uint32_t, cx>& values() const { return v_; }
  std::size_t support_size() const { return v_.size(); }

  cx at(std::uint32_t code) const {
    auto it = v_.find(code);
    return it == v_.end() ? cx{0.0, 0.0} : it->second;
  }
  cx at(const FieldCtx& f, Vec2 base) const { return at(encode2(f, base)); }

  void set(std::uint32_t code, cx value) {
    if (value == cx{0.0, 0.0})
      v_.erase(code);
    else
      v_[code] = value;
  }
  void set(const FieldCtx& f, Vec2 base, cx value) { set(encode2(f, base), value); }

 private:
  std::int64_t q_;
  std::map<std::uint32_t, cx> v_;
};

// Counting-measure L^r norm on F_q^3: (sum |g|^r)^(1/r); r = inf -> max.
double norm_lr(const FunctionF3& g, double r);

// Normalized L^r norm on the paraboloid: (q^-2 sum |f|^r)^(1/r).
double norm_lq_p(const FieldCtx& f, const FunctionP& fn, double r);

// Indicator of the lifted point set (value 1 on each lift).
FunctionF3 lift_indicator(const FieldCtx& f, const PointSet2& base);
FunctionP restrict_indicator(const FieldCtx& f, const PointSet2& base);

// g restricted to the plane {x3 = z}, kept as a function on F_q^3.
FunctionF3 slice_at(const FieldCtx& f, const FunctionF3& g, Scalar z);

// All nonempty slices, in increasing z order; second member is z.
std::vector<std::pair<Scalar, FunctionF3>> slices_of(const FieldCtx& f, const FunctionF3& g);

// True when the support lies in a single plane {x3 = z}.
bool is_slice(const FieldCtx& f, const FunctionF3& g);

// JSONL: one object {"x":[a,b,c],"re":...,"im":...} per support point, in
// key order.  Coordinates follow the scalar_json convention.
void save_function_jsonl(const FieldCtx& f, const FunctionF3& g, std::ostream& os);
FunctionF3 load_function_jsonl(const FieldCtx& f, std::istream& is);

}  // namespace restlab
