#include "restlab/pointset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace restlab {

PointSet2 PointSet2::of(const FieldCtx& f, std::vector<Vec2> pts) {
  PointSet2 s;
  s.sorted_codes_.reserve(pts.size());
  for (const Vec2& v : pts) {
    if (v.x.v >= f.q() || v.y.v >= f.q()) fail(Err::InvalidArgument, "point outside the field");
    s.sorted_codes_.push_back(encode2(f, v));
  }
  std::sort(s.sorted_codes_.begin(), s.sorted_codes_.end());
  if (std::adjacent_find(s.sorted_codes_.begin(), s.sorted_codes_.end()) != s.sorted_codes_.end())
    fail(Err::InvalidArgument, "duplicate point in set");
  s.pts_ = std::move(pts);
  return s;
}

bool PointSet2::contains(const FieldCtx& f, Vec2 v) const {
  return std::binary_search(sorted_codes_.begin(), sorted_codes_.end(), encode2(f, v));
}

namespace {

Scalar parse_scalar_field(const FieldCtx& f, const std::string& text, int line_no) {
  std::vector<std::int64_t> coeffs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    try {
      coeffs.push_back(std::stoll(part));
    } catch (const std::exception&) {
      fail(Err::ParseError, "bad coordinate '" + part + "' on line " + std::to_string(line_no));
    }
  }
  if (coeffs.empty()) fail(Err::ParseError, "empty coordinate on line " + std::to_string(line_no));
  if (static_cast<std::int64_t>(coeffs.size()) > f.n())
    fail(Err::ParseError, "too many coefficients on line " + std::to_string(line_no));
  return f.from_coeffs(coeffs);
}

std::string format_scalar(const FieldCtx& f, Scalar a) {
  if (f.n() == 1) return std::to_string(a.v);
  auto c = f.coeffs(a);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(c[i]);
  }
  return out;
}

}  // namespace

PointSet2 load_pointset_csv(const FieldCtx& f, std::istream& in) {
  std::vector<Vec2> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      fail(Err::ParseError, "expected 'x,y' on line " + std::to_string(line_no));
    Vec2 v{parse_scalar_field(f, line.substr(0, comma), line_no),
           parse_scalar_field(f, line.substr(comma + 1), line_no)};
    pts.push_back(v);
  }
  return PointSet2::of(f, std::move(pts));
}

void save_pointset_csv(const FieldCtx& f, const PointSet2& s, std::ostream& out) {
  for (const Vec2& v : s) out << format_scalar(f, v.x) << ',' << format_scalar(f, v.y) << '\n';
}

nlohmann::json scalar_json(const FieldCtx& f, Scalar a) {
  if (f.n() == 1) return a.v;
  return f.coeffs(a);
}

Scalar scalar_from_json(const FieldCtx& f, const nlohmann::json& j) {
  if (j.is_number()) return f.from_int(j.get<std::int64_t>());
  std::vector<std::int64_t> c = j.get<std::vector<std::int64_t>>();
  return f.from_coeffs(c);
}

nlohmann::json pointset_json(const FieldCtx& f, const PointSet2& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Vec2& v : s) arr.push_back({scalar_json(f, v.x), scalar_json(f, v.y)});
  return arr;
}

}  // namespace restlab
