#pragma once

#include <json.hpp>

#include <vector>

#include "restlab/rational.hpp"

namespace restlab {

// ============================================================================
// Exact exponent bookkeeping.
//
// Everything in this module lives on the exponent scale: a bound of the shape
// |G|^a |F|^b is the pair (a, b), and a support-size regime |F|^lo <= |G| <=
// |F|^hi is the closed interval [lo, hi] in the variable gamma = log_|F| |G|
// (so gamma ranges over [0, 3] for subsets of the 3-dimensional ambient
// space).  On that scale products become sums and comparisons become affine
// comparisons in gamma, which is what makes the whole calculus exact.
// ============================================================================

struct Exponent {
  Rat a;  // power of the support size |G|
  Rat b;  // power of the field size |F|
};

bool operator==(const Exponent& x, const Exponent& y);
bool operator!=(const Exponent& x, const Exponent& y);

// One row of a piecewise bound: `term` applies when gamma is in [lo, hi].
struct BoundRow {
  Exponent term;
  Rat lo;
  Rat hi;
};

struct PiecewiseBound {
  std::vector<BoundRow> rows;
};

// Requires every row to satisfy lo <= hi and the union of the ranges to be
// exactly [0, 3].  Overlapping rows are fine (a globally valid term overlaps
// everything); gaps are not.
void validate_table(const PiecewiseBound& table);

// True iff a*g + b <= target.a*g + target.b for every gamma in [lo, hi].
// Both sides are affine in gamma, so checking the endpoints is exact.
bool dominates(const Exponent& term, const Rat& lo, const Rat& hi, const Exponent& target);

// The gamma at which the two affine forms meet.  Throws ParallelTerms when
// the |G|-exponents are equal (distinct parallel lines never cross; identical
// lines cross everywhere, and neither has a useful single answer).
Rat crossover(const Exponent& x, const Exponent& y);

// Crossovers of each adjacent pair, in order: the stated range boundaries of
// a published piecewise table must equal exactly these intersections.
std::vector<Rat> crossover_points(const std::vector<Exponent>& terms);

// Pointwise minimum of globally valid terms over [lo, hi], returned as a
// contiguous piecewise table.  Ties are broken toward the lexicographically
// smallest (a, b) and equal-winner neighbours are merged, so the output is
// canonical.
PiecewiseBound lower_envelope(const std::vector<Exponent>& terms, const Rat& lo,
                              const Rat& hi);

struct RestrictionExponent {
  Rat r_prime;  // dual Lebesgue exponent
  Rat r;        // r = r' / (r' - 1)
};

// The critical exponent implied by a piecewise bound: 1/r' is the maximum of
// a + b/gamma over all rows and their range endpoints.  Each row's expression
// is monotone in gamma, so endpoints suffice.  A row reaching gamma = 0 must
// have b <= 0 (a positive |F|-power blows up against a bounded support);
// otherwise, and whenever the resulting 1/r' falls outside (0, 1), the table
// is rejected with Infeasible.
RestrictionExponent implied_restriction_exponent(const PiecewiseBound& table);

// ============================================================================
// The bilinear-argument term derivation.
//
// The slice argument bounds the restricted L2 norm by |G|^{1/2} plus
// |G|^{3/8} |F|^{-1/8} times the fourth root of a four-term bracket in the
// support size |G|, the number of nonempty slices w, and the slice size
// m = |G| / w.  After the m-substitution each bracket entry is a monomial
// |G|^g |F|^f w^u with u >= 0, so it is maximised at w = |F|; collapsing w,
// taking the fourth root and applying the prefactor turns each entry into an
// Exponent pair.  The four resulting terms, in bracket order, are
//   (11/16, -1/8), (13/16, -3/16), (17/24, 0), (5/8, 1/8).
// ============================================================================

// One bracket entry after substituting m = |G| w^{-1}.
struct BracketTerm {
  Rat g;  // power of |G|
  Rat f;  // power of |F|
  Rat w;  // power of w; must be >= 0 for the w = |F| maximisation step
};

// Collapses w, applies the 1/4 power and the |G|^{3/8}|F|^{-1/8} prefactor.
// Throws Infeasible if some w-power is negative (the maximisation step would
// be invalid).
std::vector<Exponent> reduce_bracket(const std::vector<BracketTerm>& bracket);

// The four bracket terms of the bilinear argument, and the reduction result.
// The derivation is checked against the hard-coded expected terms above;
// a discrepancy throws TableMismatch.
std::vector<BracketTerm> bilinear_bracket();
std::vector<Exponent> derive_bilinear_table();

// Same pipeline with the quadruple-count leading term weakened from m^{7/2}
// to m^3 (the best conceivable incidence input).  Feeding the result through
// the envelope and implied-exponent steps yields exactly r = 10/3, which is
// why chasing that improvement is not worthwhile below 10/3.
std::vector<Exponent> derive_bilinear_table_cubic();

// ============================================================================
// Published tables.  Rows are transcribed bounds; each carries the range on
// which the source states it.  The additive universal term |G|^{1/2} is
// modeled as an extra row valid on all of [0, 3] and must be appended before
// computing implied exponents.
// ============================================================================

PiecewiseBound table_mt();      // the L^{18/13} dual chain      -> r = 18/5
PiecewiseBound table_prime();   // the prime-field refinement    -> r = 188/53
PiecewiseBound table_new();     // the bilinear-argument update  -> r = 24/7

BoundRow universal_row();       // (1/2, 0) on [0, 3]
PiecewiseBound with_universal(PiecewiseBound table);

// JSON fixture schema: {"version": 1, "rows": [{"a": "p/q", "b": "p/q",
// "lo": "p/q", "hi": "p/q"}]}.  Parsing validates the table.
PiecewiseBound table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const PiecewiseBound& table);

}  // namespace restlab
