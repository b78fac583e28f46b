#include "restlab/exponents.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

namespace restlab {

namespace mp = boost::multiprecision;

Rat parse_rat(const std::string& s) {
  auto parse_int = [&](const std::string& part) -> Rat {
    if (part.empty()) fail(Err::ParseError, "empty integer in rational '" + s + "'");
    std::size_t start = (part[0] == '+' || part[0] == '-') ? 1 : 0;
    if (start == part.size()) fail(Err::ParseError, "sign without digits in '" + s + "'");
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        fail(Err::ParseError, "bad character in rational '" + s + "'");
    return Rat(mp::cpp_int(part));
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_int(s);
  Rat num = parse_int(s.substr(0, slash));
  Rat den = parse_int(s.substr(slash + 1));
  if (den == 0) fail(Err::ParseError, "zero denominator in '" + s + "'");
  return num / den;
}

std::string rat_string(const Rat& r) {
  mp::cpp_int num = mp::numerator(r);
  mp::cpp_int den = mp::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double rat_double(const Rat& r) { return static_cast<double>(r); }

bool operator==(const Exponent& x, const Exponent& y) { return x.a == y.a && x.b == y.b; }
bool operator!=(const Exponent& x, const Exponent& y) { return !(x == y); }

namespace {

// Value of the affine form a*g + b at gamma = g.
Rat eval(const Exponent& t, const Rat& g) { return t.a * g + t.b; }

bool lex_less(const Exponent& x, const Exponent& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

}  // namespace

void validate_table(const PiecewiseBound& table) {
  if (table.rows.empty()) fail(Err::InvalidArgument, "piecewise bound with no rows");
  std::vector<std::pair<Rat, Rat>> ranges;
  for (const auto& row : table.rows) {
    if (row.lo > row.hi) fail(Err::InvalidArgument, "row range with lo > hi");
    if (row.lo < 0 || row.hi > 3)
      fail(Err::InvalidArgument, "row range escapes [0, 3]");
    ranges.emplace_back(row.lo, row.hi);
  }
  std::sort(ranges.begin(), ranges.end());
  if (ranges.front().first != 0) fail(Err::InvalidArgument, "ranges do not start at 0");
  Rat covered = ranges.front().second;
  for (const auto& [lo, hi] : ranges) {
    if (lo > covered) fail(Err::InvalidArgument, "gap in range cover at " + rat_string(lo));
    covered = std::max(covered, hi);
  }
  if (covered != 3) fail(Err::InvalidArgument, "ranges stop before 3");
}

bool dominates(const Exponent& term, const Rat& lo, const Rat& hi, const Exponent& target) {
  if (lo > hi) fail(Err::InvalidArgument, "dominates with lo > hi");
  // Both sides are affine in gamma, so the inequality holds on the whole
  // interval iff it holds at the two endpoints.
  return eval(term, lo) <= eval(target, lo) && eval(term, hi) <= eval(target, hi);
}

Rat crossover(const Exponent& x, const Exponent& y) {
  if (x.a == y.a)
    fail(Err::ParallelTerms, x.b == y.b ? "identical terms meet everywhere"
                                        : "parallel terms never meet");
  return (y.b - x.b) / (x.a - y.a);
}

std::vector<Rat> crossover_points(const std::vector<Exponent>& terms) {
  if (terms.size() < 2) fail(Err::InvalidArgument, "need at least two terms");
  std::vector<Rat> out;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    out.push_back(crossover(terms[i], terms[i + 1]));
  return out;
}

PiecewiseBound lower_envelope(const std::vector<Exponent>& terms, const Rat& lo,
                              const Rat& hi) {
  if (terms.empty()) fail(Err::InvalidArgument, "envelope of no terms");
  if (lo >= hi) fail(Err::InvalidArgument, "envelope on empty interval");
  // Candidate breakpoints: the interval ends plus every pairwise crossover
  // that lands strictly inside.  Between consecutive breakpoints the winner
  // cannot change, so one midpoint evaluation per cell is exact.
  std::vector<Rat> cuts{lo, hi};
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (terms[i].a == terms[j].a) continue;
      Rat g = crossover(terms[i], terms[j]);
      if (lo < g && g < hi) cuts.push_back(g);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  PiecewiseBound out;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    Rat mid = (cuts[c] + cuts[c + 1]) / 2;
    const Exponent* best = &terms[0];
    for (const auto& t : terms) {
      Rat v = eval(t, mid);
      Rat bv = eval(*best, mid);
      if (v < bv || (v == bv && lex_less(t, *best))) best = &t;
    }
    if (!out.rows.empty() && out.rows.back().term == *best) {
      out.rows.back().hi = cuts[c + 1];  // same winner: extend, keep canonical
    } else {
      out.rows.push_back({*best, cuts[c], cuts[c + 1]});
    }
  }
  return out;
}

RestrictionExponent implied_restriction_exponent(const PiecewiseBound& table) {
  validate_table(table);
  bool have = false;
  Rat best;
  for (const auto& row : table.rows) {
    for (const Rat& g : {row.lo, row.hi}) {
      Rat v;
      if (g == 0) {
        // gamma -> 0: a + b/gamma diverges unless b <= 0; for b < 0 the row
        // contributes nothing at this end.
        if (row.term.b > 0)
          fail(Err::Infeasible, "positive field power at vanishing support");
        if (row.term.b < 0) continue;
        v = row.term.a;
      } else {
        v = row.term.a + row.term.b / g;
      }
      if (!have || v > best) {
        best = v;
        have = true;
      }
    }
  }
  if (!have || best <= 0 || best >= 1)
    fail(Err::Infeasible, "critical exponent outside (0, 1)");
  RestrictionExponent out;
  out.r_prime = 1 / best;
  out.r = out.r_prime / (out.r_prime - 1);
  return out;
}

std::vector<Exponent> reduce_bracket(const std::vector<BracketTerm>& bracket) {
  std::vector<Exponent> out;
  for (const auto& t : bracket) {
    if (t.w < 0)
      fail(Err::Infeasible, "negative w-power: maximisation at w = |F| invalid");
    // Collapse w at its ceiling, take the fourth root, apply the prefactor.
    out.push_back({t.g / 4 + rat(3, 8), (t.f + t.w) / 4 - rat(1, 8)});
  }
  return out;
}

std::vector<BracketTerm> bilinear_bracket() {
  // Bracket entries after m = |G| w^{-1}:
  //   slice-mass sum   sum_z |G_z|^{5/4} <= |G|^{5/4}
  //   quadruple count  |F|^{-1/2} w^{1/4} |G|^{7/4}
  //   incidence count  |F|^{-1/6} w^{2/3} |G|^{4/3}
  //   trivial pairs    |F| |G|
  return {
      {rat(5, 4), rat(0), rat(0)},
      {rat(7, 4), rat(-1, 2), rat(1, 4)},
      {rat(4, 3), rat(-1, 6), rat(2, 3)},
      {rat(1), rat(1), rat(0)},
  };
}

std::vector<Exponent> derive_bilinear_table() {
  std::vector<Exponent> got = reduce_bracket(bilinear_bracket());
  const std::vector<Exponent> want{
      {rat(11, 16), rat(-1, 8)},
      {rat(13, 16), rat(-3, 16)},
      {rat(17, 24), rat(0)},
      {rat(5, 8), rat(1, 8)},
  };
  if (got.size() != want.size()) fail(Err::TableMismatch, "unexpected term count");
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i] != want[i])
      fail(Err::TableMismatch, "derived term " + std::to_string(i) + " is |G|^" +
                                   rat_string(got[i].a) + "|F|^" + rat_string(got[i].b));
  return got;
}

std::vector<Exponent> derive_bilinear_table_cubic() {
  // Hypothetical best case: the quadruple-count leading term weakened from
  // m^{7/2} to m^3, i.e. the square-rooted bracket entry |F|^{-1/2} w^2 m^{3/2}
  // becomes |F|^{-1/2} w^{1/2} |G|^{3/2} after the m-substitution.
  auto bracket = bilinear_bracket();
  bracket[1] = {rat(3, 2), rat(-1, 2), rat(1, 2)};
  return reduce_bracket(bracket);
}

PiecewiseBound table_mt() {
  return {{
      {{rat(1), rat(-1, 2)}, rat(0), rat(9, 5)},
      {{rat(11, 16), rat(1, 16)}, rat(9, 5), rat(2)},
      {{rat(5, 8), rat(3, 16)}, rat(2), rat(5, 2)},
      {{rat(1, 2), rat(1, 2)}, rat(5, 2), rat(3)},
  }};
}

PiecewiseBound table_prime() {
  // The middle row drops a +epsilon from its source; the exponent computed
  // from this table is the epsilon -> 0 limit.
  return {{
      {{rat(1), rat(-1, 2)}, rat(0), rat(94, 53)},
      {{rat(111, 164), rat(3, 41)}, rat(94, 53), rat(75, 34)},
      {{rat(5, 8), rat(3, 16)}, rat(75, 34), rat(5, 2)},
      {{rat(1, 2), rat(1, 2)}, rat(5, 2), rat(3)},
  }};
}

PiecewiseBound table_new() {
  return {{
      {{rat(1), rat(-1, 2)}, rat(0), rat(5, 3)},
      {{rat(13, 16), rat(-3, 16)}, rat(5, 3), rat(9, 5)},
      {{rat(17, 24), rat(0)}, rat(9, 5), rat(9, 4)},
      {{rat(5, 8), rat(3, 16)}, rat(9, 4), rat(5, 2)},
      {{rat(1, 2), rat(1, 2)}, rat(5, 2), rat(3)},
  }};
}

BoundRow universal_row() { return {{rat(1, 2), rat(0)}, rat(0), rat(3)}; }

PiecewiseBound with_universal(PiecewiseBound table) {
  table.rows.push_back(universal_row());
  return table;
}

PiecewiseBound table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    fail(Err::ParseError, "table JSON must be an object with a 'rows' array");
  PiecewiseBound out;
  for (const auto& row : j.at("rows")) {
    for (const char* key : {"a", "b", "lo", "hi"})
      if (!row.contains(key) || !row.at(key).is_string())
        fail(Err::ParseError, std::string("table row missing string field '") + key + "'");
    out.rows.push_back({{parse_rat(row.at("a").get<std::string>()),
                         parse_rat(row.at("b").get<std::string>())},
                        parse_rat(row.at("lo").get<std::string>()),
                        parse_rat(row.at("hi").get<std::string>())});
  }
  validate_table(out);
  return out;
}

nlohmann::json table_to_json(const PiecewiseBound& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"a", rat_string(row.term.a)},
                    {"b", rat_string(row.term.b)},
                    {"lo", rat_string(row.lo)},
                    {"hi", rat_string(row.hi)}});
  return {{"version", 1}, {"rows", rows}};
}

}  // namespace restlab
