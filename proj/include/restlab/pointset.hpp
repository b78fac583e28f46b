#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "restlab/field.hpp"

namespace restlab {

// Finite subset of F_q^2.  Order of insertion is preserved (generators and
// file loaders are deterministic, so downstream iteration is too); duplicates
// are rejected at construction.
class PointSet2 {
 public:
  PointSet2() = default;

  // Throws InvalidArgument on duplicate points.
  static PointSet2 of(const FieldCtx& f, std::vector<Vec2> pts);

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const std::vector<Vec2>& points() const { return pts_; }
  bool contains(const FieldCtx& f, Vec2 v) const;

  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

 private:
  std::vector<Vec2> pts_;
  std::vector<std::uint32_t> sorted_codes_;
};

// CSV exchange format: one point per line, two fields separated by a comma.
// For prime fields each field is an integer; for extension fields it is the
// semicolon-joined coefficient vector (constant term first).  Blank lines and
// lines starting with '#' are skipped.
PointSet2 load_pointset_csv(const FieldCtx& f, std::istream& in);
void save_pointset_csv(const FieldCtx& f, const PointSet2& s, std::ostream& out);

nlohmann::json scalar_json(const FieldCtx& f, Scalar a);
Scalar scalar_from_json(const FieldCtx& f, const nlohmann::json& j);
nlohmann::json pointset_json(const FieldCtx& f, const PointSet2& s);

}  // namespace restlab
