#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "restlab/function3.hpp"
#include "restlab/pointset.hpp"

namespace restlab {

// ============================================================================
// Lines in F_q^2 and the greedy line-extraction decomposition.
// ============================================================================

// Canonical line: y = slope*x + intercept, or x = xcoord for verticals.
// The id orders lines deterministically (all non-verticals by (slope,
// intercept), then verticals by x); every tie-break in this module uses it.
struct LineF2 {
  bool vertical = false;
  Scalar a;  // slope, or the x-coordinate when vertical
  Scalar b;  // intercept; unused (zero) when vertical

  friend bool operator==(const LineF2& l, const LineF2& r) {
    return l.vertical == r.vertical && l.a == r.a && l.b == r.b;
  }
};

std::uint32_t line_id(const FieldCtx& f, const LineF2& l);
LineF2 line_from_id(const FieldCtx& f, std::uint32_t id);
LineF2 line_through(const FieldCtx& f, Vec2 p, Vec2 q);  // p != q (InvalidArgument)
bool on_line(const FieldCtx& f, const LineF2& l, Vec2 p);
std::vector<Vec2> line_points(const FieldCtx& f, const LineF2& l);

// All q^2 + q lines, ordered by id; q <= 128 (TooLarge).
std::vector<LineF2> all_lines(const FieldCtx& f);

// A line meeting A in the most points; ties broken by smallest id.
// For a singleton the horizontal line through the point wins.
// Throws EmptySet.
std::pair<LineF2, std::int64_t> max_line_intersection(const FieldCtx& f, const PointSet2& a);

// One bucket of the greedy decomposition: points drawn from ~k distinct
// lines, each line carrying ~|points|/k of them.
struct RegularPart {
  std::int64_t k = 0;       // regularity class label, round(points / geomean richness)
  int richness_class = 0;   // floor(log2 of per-line richness at extraction)
  std::vector<LineF2> frame;
  PointSet2 points;
  std::vector<int> assignment;  // points[i] lies on frame[assignment[i]]
};

struct RegularDecomposition {
  std::vector<RegularPart> parts;  // distinct richness classes, descending
  PointSet2 remainder;
  std::int64_t threshold = 0;  // richness at or below which extraction stopped
};

// Stopping rule: by default the extraction threshold is ceil(sqrt(|A|)) of
// the ORIGINAL set; ResidualSize recomputes it against the shrinking
// residual at every step (offered for comparison, not the default).
enum class ThresholdMode { OriginalSize, ResidualSize };

// Greedily strips the richest line (richness strictly above the threshold),
// buckets stripped lines by dyadic richness, and leaves the rest — a set no
// line meets in more than threshold points — as the remainder.
// Throws EmptySet.
RegularDecomposition decompose_k_regular(const FieldCtx& f, const PointSet2& a,
                                         ThresholdMode mode = ThresholdMode::OriginalSize);

// Structural check of one part against its label: frame size within
// [k/slack, k*slack], per-line load within [|pts|/(k*slack), |pts|*slack/k].
bool validate_k_regular(const FieldCtx& f, const RegularPart& part, double slack = 2.0);

// Partition property, part-count bounds, remainder irregularity.  Returns
// false (never throws) so sweeps can tally failures.
bool validate_decomposition(const FieldCtx& f, const PointSet2& input,
                            const RegularDecomposition& dec);

// Lines outside the part's frame that still meet it in more than
// c_frame * k points.  The greedy construction keeps this empty in practice
// but does not guarantee it, so callers log violations instead of asserting.
std::vector<LineF2> frame_exclusion_violations(const FieldCtx& f, const RegularPart& part,
                                               double c_frame = 2.0);

nlohmann::json line_json(const FieldCtx& f, const LineF2& l);
nlohmann::json decomposition_json(const FieldCtx& f, const RegularDecomposition& dec);

// ============================================================================
// Dyadic and regular decompositions of functions on F_q^3.
// ============================================================================

// One amplitude band: values of g with |g(x)| in [2^level, 2^(level+1)),
// stored as values/2^level so the stored moduli sit in [1, 2).
struct DyadicPiece {
  int level = 0;
  double amplitude = 0.0;  // 2^level
  FunctionF3 values;
};

struct DyadicFunctionDecomposition {
  std::vector<DyadicPiece> pieces;  // descending level
  FunctionF3 remainder;             // sup-norm <= cutoff
  double cutoff = 0.0;              // q^-10 * max |g|
};

// Splits g by dyadic modulus with a q^-10 relative floor.  Amplitudes are
// exact powers of two, so amplitude * piece + remainder reconstructs g
// bitwise.  Throws ZeroFunction.
DyadicFunctionDecomposition dyadic_decompose_function(const FieldCtx& f, const FunctionF3& g);

// A function whose slices share (up to factor 2) an amplitude, a support
// size, and a line-structure class: either every slice is k-regular for a
// common dyadic k (with the witnessing part kept), or every slice is
// irregular relative to its parent slice's threshold.
struct SlicedFunction {
  int amplitude_class = 0;  // floor(log2 max modulus)
  int size_class = 0;       // floor(log2 slice support size)
  bool regular = false;
  int k_class = 0;  // floor(log2 k) when regular
  int layer = 0;    // splits same-class siblings originating from one height

  struct Slice {
    Scalar z;
    FunctionF3 values;                 // supported on the plane x3 = z
    std::optional<RegularPart> part;   // witness when regular
    std::int64_t irregular_threshold = 0;  // ceil(sqrt(parent slice size))
  };
  std::vector<Slice> slices;  // increasing z, one per height

  std::int64_t support_size() const;
};

// Slices an amplitude-band piece by height, decomposes every slice's support
// with decompose_k_regular, and regroups the resulting fragments by
// (fragment size class, regularity class): the outputs partition the input
// support and each passes validate_regular_function.
std::vector<SlicedFunction> regularize_function(const FieldCtx& f, const FunctionF3& g);

bool validate_regular_function(const FieldCtx& f, const SlicedFunction& sf, double slack = 2.0);

}  // namespace restlab
