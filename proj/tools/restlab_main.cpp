// restlab — field inspection, counting, decomposition, inequality sweeps, and
// the exponent calculus, from one binary.
//
// Exit codes: 0 success, 1 inequality/ceiling violation, 2 usage or config
// error, 3 internal validation failure (oracle mismatch, invalid partition).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "restlab/bounds.hpp"
#include "restlab/counting.hpp"
#include "restlab/errors.hpp"
#include "restlab/exponents.hpp"
#include "restlab/families.hpp"
#include "restlab/pointset.hpp"
#include "restlab/regularity.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using namespace restlab;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json config_echo(const FieldCtx* f) {
  nlohmann::json j;
  j["version"] = kVersion;
  if (f) {
    j["q"] = f->q();
    j["p"] = f->p();
    j["degree"] = f->n();
  }
  return j;
}

PointSet2 load_input_set(const FieldCtx& f, const std::string& family,
                         const std::string& file) {
  if (family.empty() == file.empty())
    throw UsageError("provide exactly one of --family or --set");
  if (!family.empty()) {
    FamilySpec spec = parse_family(family);
    if (!is_set_kind(spec.kind))
      throw UsageError("family '" + spec.kind + "' does not generate a plane set");
    return generate_set(f, spec);
  }
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open set file '" + file + "'");
  return load_pointset_csv(f, in);
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot open output file '" + out_path + "'");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// field-info
// ---------------------------------------------------------------------------

int cmd_field_info(std::int64_t p, std::int64_t n, const std::string& out_path) {
  FieldCtx f = FieldCtx::make(p, n);
  nlohmann::json j = config_echo(&f);
  std::string mod;
  {
    // Coefficients run constant-first and include the leading 1, so the
    // degree is size - 1.  Print low degree first, zeros skipped.
    const auto& m = f.modulus();
    std::size_t deg = m.size() - 1;
    for (std::size_t i = 0; i < deg; ++i) {
      if (m[i] == 0) continue;
      if (!mod.empty()) mod += " + ";
      mod += std::to_string(m[i]);
      if (i == 1) mod += "*x";
      if (i > 1) mod += "*x^" + std::to_string(i);
    }
    if (!mod.empty()) mod += " + ";
    mod += deg == 1 ? "x" : "x^" + std::to_string(deg);
  }
  j["modulus"] = mod;
  j["minus_one_is_square"] = f.minus_one_is_square();
  j["gauss_constant"] = {{"re", f.gauss_constant().real()}, {"im", f.gauss_constant().imag()}};
  if (f.minus_one_is_square())
    j["warning"] =
        "-1 is a square: collision-based rectangle counting diverges from brute force";
  emit(j, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

// Independent cubic scan for the additive energy, used only as the --oracle
// cross-check for the pair-sum hash.
std::int64_t additive_energy_scan(const FieldCtx& f, const PointSet2& a) {
  if (a.size() > 400) fail(Err::InputTooLarge, "additive_energy_scan: |A| > 400");
  std::int64_t e = 0;
  for (Vec2 x : a)
    for (Vec2 y : a)
      for (Vec2 z : a) {
        Vec2 w{f.sub(f.add(x.x, y.x), z.x), f.sub(f.add(x.y, y.y), z.y)};
        if (a.contains(f, w)) ++e;
      }
  return e;
}

int cmd_count(std::int64_t p, std::int64_t n, const std::string& quantity,
              const std::string& family, const std::string& file,
              const std::string& family_b, bool oracle, const std::string& out_path) {
  FieldCtx f = FieldCtx::make(p, n);
  PointSet2 a = load_input_set(f, family, file);
  PointSet2 b = family_b.empty() ? a : generate_set(f, parse_family(family_b));

  CountReport r;
  r.quantity = quantity;
  r.q = f.q();
  r.size_a = static_cast<std::int64_t>(a.size());
  r.size_b = static_cast<std::int64_t>(b.size());
  std::optional<std::int64_t> oracle_value;

  if (quantity == "rect") {
    r.size_b = r.size_a;
    // The collision counter only matches brute force when -1 is a non-square;
    // on isotropic fields the honest answer is the quadratic scan.
    if (f.minus_one_is_square()) {
      r.algorithm = "bruteforce";
      r.value = count_rectangles_bruteforce(f, a);
    } else {
      r.algorithm = "energy";
      r.value = count_rectangles_energy(f, a);
    }
    if (oracle) oracle_value = count_rectangles_bruteforce(f, a);
  } else if (quantity == "trap") {
    r.algorithm = "directional";
    r.value = count_trapezoids_directional(f, a, b);
    if (oracle) oracle_value = count_trapezoids_bruteforce(f, a, b);
  } else if (quantity == "corners") {
    r.size_b = r.size_a;
    r.algorithm = "scan";
    r.value = count_corners(f, a);
    if (oracle) oracle_value = r.value;  // the scan is the reference algorithm
  } else if (quantity == "energy") {
    r.size_b = r.size_a;
    r.algorithm = "pair_hash";
    r.value = additive_energy_plane(f, a);
    if (oracle) oracle_value = additive_energy_scan(f, a);
  } else if (quantity == "b") {
    BQuantity bq = b_quantity(f, a, b);
    r.algorithm = bq.trapezoid_branch ? "min:trapezoid" : "min:rectangle";
    r.value = std::llround(bq.value);
    if (oracle) {
      double t = static_cast<double>(count_trapezoids_bruteforce(f, a, b));
      double ra = static_cast<double>(count_rectangles_bruteforce(f, a));
      double rb = static_cast<double>(count_rectangles_bruteforce(f, b));
      oracle_value = std::llround(std::min(t, static_cast<double>(f.q()) * std::sqrt(ra * rb)));
    }
  } else {
    throw UsageError("unknown quantity '" + quantity +
                     "' (expected rect|trap|corners|energy|b)");
  }

  nlohmann::json j = count_report_json(r);
  j["config"] = config_echo(&f);
  if (oracle_value) {
    j["oracle"] = *oracle_value;
    if (*oracle_value != r.value)
      throw ValidationError("oracle mismatch for '" + quantity + "': fast=" +
                            std::to_string(r.value) +
                            " brute=" + std::to_string(*oracle_value));
  }
  emit(j, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

int cmd_decompose(std::int64_t p, std::int64_t n, const std::string& family,
                  const std::string& file, const std::string& out_path) {
  FieldCtx f = FieldCtx::make(p, n);
  PointSet2 a = load_input_set(f, family, file);
  RegularDecomposition dec = decompose_k_regular(f, a);
  if (!validate_decomposition(f, a, dec))
    throw ValidationError("decomposition failed validation against its input");
  nlohmann::json j = decomposition_json(f, dec);
  j["config"] = config_echo(&f);
  emit(j, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const std::string& preset, std::uint64_t seed,
              const std::vector<std::string>& ceiling_specs, double tolerance,
              const std::vector<std::int64_t>& qs, bool corrupt, bool allow_isotropic,
              const std::string& out_path) {
  RunConfig cfg;
  if (preset == "desk")
    cfg = desk_preset();
  else if (preset == "extended")
    cfg = extended_preset();
  else
    throw UsageError("unknown preset '" + preset + "' (expected desk|extended)");
  cfg.seed = seed;
  if (tolerance > 0) cfg.exact_tolerance = tolerance;
  if (!qs.empty()) cfg.qs = qs;
  cfg.corrupt_trapezoids = corrupt;
  cfg.allow_isotropic = allow_isotropic;
  for (const std::string& spec : ceiling_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--ceiling expects <check>=<value>, got '" + spec + "'");
    try {
      std::size_t used = 0;
      double v = std::stod(spec.substr(eq + 1), &used);
      if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing");
      cfg.ceilings[spec.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw UsageError("--ceiling expects <check>=<value>, got '" + spec + "'");
    }
  }

  SweepReport rep = run_suite(cfg);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot open output file '" + out_path + "'");
    write_csv(rep, cfg, out);
  } else {
    write_csv(rep, cfg, std::cout);
  }
  nlohmann::json j = summary_json(rep, cfg);
  j["config"] = config_echo(nullptr);
  std::cout << j.dump(2) << "\n";
  return report_ok(rep, cfg) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// exponents
// ---------------------------------------------------------------------------

int cmd_exponents(const std::string& table_id, const std::string& file,
                  const std::string& out_path) {
  if (table_id.empty() == file.empty())
    throw UsageError("provide exactly one of --table or --file");
  PiecewiseBound table;
  std::string source;
  if (!table_id.empty()) {
    if (table_id == "mt")
      table = table_mt();
    else if (table_id == "prime")
      table = table_prime();
    else if (table_id == "new")
      table = table_new();
    else
      throw UsageError("unknown table '" + table_id + "' (expected mt|prime|new)");
    source = table_id;
  } else {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open table file '" + file + "'");
    nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw UsageError("table file is not valid JSON");
    table = table_from_json(j);
    source = file;
  }
  validate_table(table);
  RestrictionExponent ex = implied_restriction_exponent(with_universal(table));

  nlohmann::json j;
  j["config"] = config_echo(nullptr);
  j["source"] = source;
  j["rows"] = nlohmann::json::array();
  for (const BoundRow& row : table.rows)
    j["rows"].push_back({{"a", rat_string(row.term.a)},
                         {"b", rat_string(row.term.b)},
                         {"lo", rat_string(row.lo)},
                         {"hi", rat_string(row.hi)}});
  std::vector<Exponent> terms;
  for (const BoundRow& row : table.rows) terms.push_back(row.term);
  std::vector<Rat> cuts = crossover_points(terms);
  j["crossovers"] = nlohmann::json::array();
  for (const Rat& c : cuts) j["crossovers"].push_back(rat_string(c));
  j["r_prime"] = rat_string(ex.r_prime);
  j["r"] = rat_string(ex.r);
  j["r_approx"] = rat_double(ex.r);
  emit(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-field restriction laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::int64_t p = 0, degree = 1;
  std::string quantity, family, set_file, family_b, out_path, preset = "desk";
  std::string table_id, table_file;
  std::uint64_t seed = 1;
  double tolerance = 0;
  std::vector<std::string> ceiling_specs;
  std::vector<std::int64_t> qs;
  bool oracle = false, corrupt = false, allow_isotropic = false;

  CLI::App* fi = app.add_subcommand("field-info", "print field parameters");
  fi->add_option("-p,--prime", p, "field characteristic")->required();
  fi->add_option("-n,--degree", degree, "extension degree");
  fi->add_option("--out", out_path, "write JSON here instead of stdout");

  CLI::App* ct = app.add_subcommand("count", "count rectangles/trapezoids/corners/energy/b");
  ct->add_option("quantity", quantity, "rect|trap|corners|energy|b")->required();
  ct->add_option("-p,--prime", p, "field characteristic")->required();
  ct->add_option("-n,--degree", degree, "extension degree");
  ct->add_option("--family", family, "family spec, e.g. grid:nx=3,ny=3");
  ct->add_option("--set", set_file, "point-set CSV file");
  ct->add_option("--family-b", family_b, "second set for trap/b (defaults to the first)");
  ct->add_flag("--oracle", oracle, "cross-check against the brute-force counter");
  ct->add_option("--out", out_path, "write JSON here instead of stdout");

  CLI::App* dc = app.add_subcommand("decompose", "k-regular decomposition of a plane set");
  dc->add_option("-p,--prime", p, "field characteristic")->required();
  dc->add_option("-n,--degree", degree, "extension degree");
  dc->add_option("--family", family, "family spec");
  dc->add_option("--set", set_file, "point-set CSV file");
  dc->add_option("--out", out_path, "write JSON here instead of stdout");

  CLI::App* sw = app.add_subcommand("sweep", "run the inequality suite");
  sw->add_option("--preset", preset, "desk|extended");
  sw->add_option("--seed", seed, "suite seed");
  sw->add_option("--ceiling", ceiling_specs, "<check>=<value>, repeatable");
  sw->add_option("--tolerance", tolerance, "roundoff allowance for exact identities");
  sw->add_option("--qs", qs, "override the preset's field list")->group("");
  sw->add_flag("--self-test-corrupt", corrupt, "corrupt a counter to test the gate")
      ->group("");
  sw->add_flag("--allow-isotropic", allow_isotropic,
               "run collision counters even when -1 is a square");
  sw->add_option("--out", out_path, "write the CSV here (summary JSON goes to stdout)");

  CLI::App* ex = app.add_subcommand("exponents", "evaluate a piecewise bound table");
  ex->add_option("--table", table_id, "mt|prime|new");
  ex->add_option("--file", table_file, "table JSON file");
  ex->add_option("--out", out_path, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, every parse error is usage
  }

  try {
    if (fi->parsed()) return cmd_field_info(p, degree, out_path);
    if (ct->parsed())
      return cmd_count(p, degree, quantity, family, set_file, family_b, oracle, out_path);
    if (dc->parsed()) return cmd_decompose(p, degree, family, set_file, out_path);
    if (sw->parsed())
      return cmd_sweep(preset, seed, ceiling_specs, tolerance, qs, corrupt,
                       allow_isotropic, out_path);
    if (ex->parsed()) return cmd_exponents(table_id, table_file, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
