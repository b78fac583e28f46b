#include "restlab/function3.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "restlab/errors.hpp"

namespace restlab {

double norm_lr(const FunctionF3& g, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (const auto& [k, v] : g.values()) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (const auto& [k, v] : g.values()) s += std::pow(std::abs(v), r);
  return std::pow(s, 1.0 / r);
}

double norm_lq_p(const FieldCtx& f, const FunctionP& fn, double r) {
  double w = 1.0 / (static_cast<double>(f.q()) * static_cast<double>(f.q()));
  if (std::isinf(r)) {
    double m = 0.0;
    for (const auto& [k, v] : fn.values()) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (const auto& [k, v] : fn.values()) s += w * std::pow(std::abs(v), r);
  return std::pow(s, 1.0 / r);
}

FunctionF3 lift_indicator(const FieldCtx& f, const PointSet2& base) {
  FunctionF3 g(f);
  for (Vec2 b : base.points()) g.set(f, Vec3{b, f.norm2(b)}, cx{1.0, 0.0});
  return g;
}

FunctionP restrict_indicator(const FieldCtx& f, const PointSet2& base) {
  FunctionP fn(f);
  for (Vec2 b : base.points()) fn.set(f, b, cx{1.0, 0.0});
  return fn;
}

FunctionF3 slice_at(const FieldCtx& f, const FunctionF3& g, Scalar z) {
  FunctionF3 out(f);
  for (const auto& [k, v] : g.values())
    if (decode3(f, k).z == z) out.set(k, v);
  return out;
}

std::vector<std::pair<Scalar, FunctionF3>> slices_of(const FieldCtx& f, const FunctionF3& g) {
  std::map<std::uint32_t, FunctionF3> by_z;
  for (const auto& [k, v] : g.values()) {
    Scalar z = decode3(f, k).z;
    by_z.try_emplace(z.v, f).first->second.set(k, v);
  }
  std::vector<std::pair<Scalar, FunctionF3>> out;
  out.reserve(by_z.size());
  for (auto& [zv, fn] : by_z) out.emplace_back(Scalar{zv}, std::move(fn));
  return out;
}

bool is_slice(const FieldCtx& f, const FunctionF3& g) {
  bool first = true;
  std::uint32_t z0 = 0;
  for (const auto& [k, v] : g.values()) {
    std::uint32_t z = decode3(f, k).z.v;
    if (first) {
      z0 = z;
      first = false;
    } else if (z != z0) {
      return false;
    }
  }
  return true;
}

void save_function_jsonl(const FieldCtx& f, const FunctionF3& g, std::ostream& os) {
  for (const auto& [k, v] : g.values()) {
    Vec3 x = decode3(f, k);
    nlohmann::json j;
    j["x"] = nlohmann::json::array(
        {scalar_json(f, x.xy.x), scalar_json(f, x.xy.y), scalar_json(f, x.z)});
    j["re"] = v.real();
    j["im"] = v.imag();
    os << j.dump() << "\n";
  }
}

FunctionF3 load_function_jsonl(const FieldCtx& f, std::istream& is) {
  FunctionF3 g(f);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(Err::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.contains("x") || !j["x"].is_array() || j["x"].size() != 3)
      fail(Err::ParseError, "line " + std::to_string(lineno) + ": need \"x\":[a,b,c]");
    Vec3 x{{scalar_from_json(f, j["x"][0]), scalar_from_json(f, j["x"][1])},
           scalar_from_json(f, j["x"][2])};
    double re = j.value("re", 0.0);
    double im = j.value("im", 0.0);
    g.set(f, x, cx{re, im});
  }
  return g;
}

}  // namespace restlab
