// Acceptance gate: eight pass/fail criteria, one line each, exit 0 iff all
// pass.  Each criterion carries a wall-clock budget; exceeding it fails the
// criterion even when the mathematics checks out.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "restlab/bounds.hpp"
#include "restlab/counting.hpp"
#include "restlab/exponents.hpp"
#include "restlab/fourier.hpp"
#include "restlab/function3.hpp"
#include "restlab/regularity.hpp"

using namespace restlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

Vec2 pt(const FieldCtx& f, std::int64_t x, std::int64_t y) {
  return {f.from_int(x), f.from_int(y)};
}

PointSet2 random_subset(const FieldCtx& f, std::mt19937_64& rng, int size) {
  std::vector<std::uint32_t> codes(static_cast<std::size_t>(f.q() * f.q()));
  for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<std::uint32_t>(i);
  for (int i = 0; i < size; ++i)
    std::swap(codes[i], codes[i + static_cast<int>(rng() % (codes.size() - i))]);
  std::vector<Vec2> pts;
  for (int i = 0; i < size; ++i)
    pts.push_back(pt(f, codes[i] % f.q(), codes[i] / f.q()));
  return PointSet2::of(f, pts);
}

FunctionF3 random_function3(const FieldCtx& f, std::mt19937_64& rng, int support) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FunctionF3 g(f);
  while (static_cast<int>(g.support_size()) < support) {
    std::uint64_t code = rng() % static_cast<std::uint64_t>(f.q() * f.q() * f.q());
    g.set(code, cx{u(rng), u(rng)});
  }
  return g;
}

// --- 1: kernel closed form ---------------------------------------------------

Outcome kernel_closed_form() {
  Outcome o;
  for (std::int64_t q : {3, 7, 11}) {
    FieldCtx f = FieldCtx::make(q);
    o.require(std::abs(f.gauss_constant() - cx{-1.0, 0.0}) < 1e-9,
              "gauss constant != -1 at q=" + std::to_string(q));
    double worst = 0.0;
    for (std::int64_t code = 0; code < q * q * q; ++code) {
      Vec3 x{{f.from_int(code % q), f.from_int((code / q) % q)}, f.from_int(code / (q * q))};
      cx direct{0.0, 0.0};
      for (std::int64_t bc = 0; bc < q * q; ++bc) {
        Vec2 b = pt(f, bc % q, bc / q);
        Scalar phase = f.add(f.dot2(x.xy, b), f.mul(x.z, f.norm2(b)));
        direct += f.additive_character(phase);
      }
      direct /= static_cast<double>(q * q);
      worst = std::max(worst, std::abs(direct - surface_kernel(f, x)));
    }
    o.require(worst < 1e-9, "kernel residual " + std::to_string(worst) +
                                " at q=" + std::to_string(q));
  }
  o.detail = "q in {3,7,11}, all q^3 points";
  return o;
}

// --- 2: counter oracle equivalence -------------------------------------------

Outcome counter_equivalence() {
  Outcome o;
  FieldCtx f3 = FieldCtx::make(3);
  std::vector<Vec2> base{pt(f3, 0, 0), pt(f3, 1, 0), pt(f3, 2, 0),
                         pt(f3, 0, 1), pt(f3, 1, 1), pt(f3, 0, 2)};
  std::vector<PointSet2> subsets;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 6; ++i)
      if (mask >> i & 1u) pts.push_back(base[i]);
    subsets.push_back(PointSet2::of(f3, pts));
  }
  for (const PointSet2& s : subsets)
    o.require(count_rectangles_energy(f3, s) == count_rectangles_bruteforce(f3, s),
              "rectangle counters disagree on a 6-point subset");
  for (const PointSet2& a : subsets)
    for (const PointSet2& b : subsets)
      o.require(count_trapezoids_directional(f3, a, b) ==
                    count_trapezoids_bruteforce(f3, a, b),
                "trapezoid counters disagree on a 6-point subset pair");

  std::mt19937_64 rng(101);
  for (std::int64_t q : {7, 11}) {
    FieldCtx f = FieldCtx::make(q);
    for (int trial = 0; trial < 500; ++trial) {
      PointSet2 a = random_subset(f, rng, 1 + static_cast<int>(rng() % 30));
      o.require(count_rectangles_energy(f, a) == count_rectangles_bruteforce(f, a),
                "rectangle counters disagree at q=" + std::to_string(q));
    }
    for (int trial = 0; trial < 500; ++trial) {
      PointSet2 a = random_subset(f, rng, 1 + static_cast<int>(rng() % 30));
      PointSet2 b = random_subset(f, rng, 1 + static_cast<int>(rng() % 30));
      o.require(count_trapezoids_directional(f, a, b) ==
                    count_trapezoids_bruteforce(f, a, b),
                "trapezoid counters disagree at q=" + std::to_string(q));
    }
  }
  o.detail = "64 subsets exhaustive + 500 random instances per counter per field";
  return o;
}

// --- 3: fourth-power identity and envelope -----------------------------------

Outcome l4_identity() {
  Outcome o;
  FieldCtx f3 = FieldCtx::make(3);
  KernelTable kt3 = KernelTable::make(f3);
  std::vector<Vec2> quad{pt(f3, 0, 0), pt(f3, 1, 0), pt(f3, 0, 1), pt(f3, 1, 1)};
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1u) pts.push_back(quad[i]);
    L4Report rep = l4_identity_check(f3, PointSet2::of(f3, pts), f3.zero(), kt3);
    o.require(std::abs(rep.lhs - rep.energy_formula) <= 1e-9 * (1.0 + rep.lhs),
              "identity residual on a quad subset");
  }

  FieldCtx f = FieldCtx::make(7);
  KernelTable kt = KernelTable::make(f);
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    PointSet2 a = random_subset(f, rng, 1 + static_cast<int>(rng() % 20));
    Scalar z = f.from_int(static_cast<std::int64_t>(rng() % 7));
    L4Report rep = l4_identity_check(f, a, z, kt);
    o.require(std::abs(rep.lhs - rep.energy_formula) <= 1e-8 * (1.0 + rep.lhs),
              "identity residual on a random F_7 set");
    double envelope = 7.0 * rep.lhs / static_cast<double>(count_rectangles_energy(f, a));
    o.require(envelope >= 0.25 - 1e-9 && envelope <= 1.0 + 1e-9,
              "envelope " + std::to_string(envelope) + " escapes [1/4, 1]");
  }
  o.detail = "16 quad subsets + 100 random F_7 sets, envelope in [1/4, 1]";
  return o;
}

// --- 4: convolution identity and adjointness ---------------------------------

Outcome convolution_adjointness() {
  Outcome o;
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto [q, trials] : {std::pair<std::int64_t, int>{3, 100}, {7, 20}}) {
    FieldCtx f = FieldCtx::make(q);
    KernelTable kt = KernelTable::make(f);
    for (int trial = 0; trial < trials; ++trial) {
      FunctionF3 g =
          random_function3(f, rng, 1 + static_cast<int>(rng() % (q * q)));
      double norm = norm_lq_p(f, restrict_fourier(f, g), 2.0);
      o.require(check_convolution_identity(f, g, kt) <= 1e-8 * (1.0 + norm),
                "convolution identity residual at q=" + std::to_string(q));

      FunctionP fn(f);
      for (std::int64_t bc = 0; bc < q * q; ++bc)
        fn.set(static_cast<std::uint32_t>(bc), cx{u(rng), u(rng)});
      cx lhs = inner_f3(extend(f, fn), g);
      cx rhs = inner_p(f, fn, restrict_fourier(f, g));
      o.require(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(lhs)),
                "adjointness residual at q=" + std::to_string(q));
    }
  }
  o.detail = "100 random g over F_3 + 20 over F_7, both identities";
  return o;
}

// --- 5: bilinear slice bound and its chain -----------------------------------

Outcome bilinear_bound() {
  Outcome o;
  FieldCtx f = FieldCtx::make(7);
  KernelTable kt = KernelTable::make(f);
  std::mt19937_64 rng(105);
  double worst_c = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    PointSet2 a = random_subset(f, rng, 1 + static_cast<int>(rng() % 12));
    PointSet2 b = random_subset(f, rng, 1 + static_cast<int>(rng() % 12));
    std::int64_t z1 = static_cast<std::int64_t>(rng() % 7);
    std::int64_t z2 = (z1 + 1 + static_cast<std::int64_t>(rng() % 6)) % 7;
    FunctionF3 g1(f), g2(f);
    for (Vec2 p : a) g1.set(f, Vec3{p, f.from_int(z1)}, cx{1.0, 0.0});
    for (Vec2 p : b) g2.set(f, Vec3{p, f.from_int(z2)}, cx{1.0, 0.0});

    double cross = bilinear_slice_norm(f, g1, g2, kt);
    double t = static_cast<double>(count_trapezoids_directional(f, a, b));
    double bound = double(a.size()) * double(b.size()) / 7.0 + t / 49.0;
    worst_c = std::max(worst_c, cross * cross / bound);

    auto fourth = [&](const FunctionF3& g) {
      FunctionF3 conv = convolve_K(f, g, kt);
      double s = 0.0;
      for (const auto& [code, v] : conv.values()) {
        double m2 = std::norm(v);
        s += m2 * m2;
      }
      return std::sqrt(s);  // ||g*K||_4^2
    };
    o.require(cross * cross <= fourth(g1) * fourth(g2) * (1.0 + 1e-9),
              "Cauchy-Schwarz step fails on a slice pair");
  }
  o.require(worst_c <= 8.0, "bilinear constant " + std::to_string(worst_c) + " > 8");
  std::ostringstream d;
  d << "100 slice pairs over F_7, max constant " << worst_c;
  o.detail = d.str();
  return o;
}

// --- 6: decomposition structure ----------------------------------------------

Outcome decomposition_structure() {
  Outcome o;
  FieldCtx f3 = FieldCtx::make(3);
  for (unsigned mask = 1; mask < 512; ++mask) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 9; ++i)
      if (mask >> i & 1u) pts.push_back(pt(f3, i % 3, i / 3));
    PointSet2 a = PointSet2::of(f3, pts);
    o.require(validate_decomposition(f3, a, decompose_k_regular(f3, a)),
              "decomposition invalid on an F_3 subset");
  }
  std::mt19937_64 rng(106);
  for (std::int64_t q : {7, 11, 13, 17, 19}) {
    FieldCtx f = FieldCtx::make(q);
    for (int trial = 0; trial < 100; ++trial) {
      int cap = static_cast<int>(std::min<std::int64_t>(q * q, 60));
      PointSet2 a = random_subset(f, rng, 1 + static_cast<int>(rng() % cap));
      o.require(validate_decomposition(f, a, decompose_k_regular(f, a)),
                "decomposition invalid at q=" + std::to_string(q));
    }
  }
  o.detail = "511 subsets of F_3^2 exhaustive + 100 random sets per field, F_7..F_19";
  return o;
}

// --- 7: exponent reproduction ------------------------------------------------

Outcome exponent_reproduction() {
  Outcome o;
  auto implied = [](const PiecewiseBound& t) {
    return implied_restriction_exponent(with_universal(t));
  };
  o.require(implied(table_new()).r == rat(24, 7), "updated table r != 24/7");
  o.require(implied(table_new()).r_prime == rat(24, 17), "updated table r' != 24/17");
  o.require(implied(table_mt()).r == rat(18, 5), "baseline table r != 18/5");
  o.require(implied(table_prime()).r == rat(188, 53), "prime-field table r != 188/53");

  std::vector<Exponent> terms;
  for (const BoundRow& row : table_new().rows) terms.push_back(row.term);
  std::vector<Rat> cuts = crossover_points(terms);
  std::vector<Rat> expected{rat(5, 3), rat(9, 5), rat(9, 4), rat(5, 2)};
  o.require(cuts == expected, "updated table crossovers are off");

  std::vector<Exponent> derived = derive_bilinear_table();
  PiecewiseBound env = lower_envelope(
      {Exponent{rat(1), rat(-1, 2)}, derived[1], derived[2],
       Exponent{rat(5, 8), rat(3, 16)}, Exponent{rat(1, 2), rat(1, 2)}},
      rat(0), rat(3));
  bool same = env.rows.size() == table_new().rows.size();
  for (std::size_t i = 0; same && i < env.rows.size(); ++i)
    same = env.rows[i].term == table_new().rows[i].term &&
           env.rows[i].lo == table_new().rows[i].lo &&
           env.rows[i].hi == table_new().rows[i].hi;
  o.require(same, "derived envelope differs from the published table");

  std::vector<Exponent> cubic = derive_bilinear_table_cubic();
  PiecewiseBound cubic_env = lower_envelope(
      {Exponent{rat(1), rat(-1, 2)}, cubic[1], cubic[2],
       Exponent{rat(5, 8), rat(3, 16)}, Exponent{rat(1, 2), rat(1, 2)}},
      rat(0), rat(3));
  o.require(implied(cubic_env).r == rat(10, 3), "cubic variant r != 10/3");

  o.detail = "24/7, 18/5, 188/53, crossovers {5/3, 9/5, 9/4, 5/2}, cubic 10/3";
  return o;
}

// --- 8: sweep stability ------------------------------------------------------

Outcome sweep_stability() {
  Outcome o;
  RunConfig cfg = desk_preset();
  SweepReport rep = run_suite(cfg);
  o.require(rep.errors.empty(), "suite recorded per-instance errors");
  o.require(rep.exact_failures.empty(), "suite recorded exact-identity failures");
  o.require(report_ok(rep, cfg), "ratios escape their ceilings or stability");

  std::ostringstream csv1, csv2;
  write_csv(rep, cfg, csv1);
  write_csv(run_suite(cfg), cfg, csv2);
  o.require(csv1.str() == csv2.str(), "rerun CSV is not byte-identical");

  std::ostringstream d;
  d << rep.instances.size() << " instances, rerun byte-identical";
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"kernel closed form", 10, kernel_closed_form},
      {"counter oracle equivalence", 120, counter_equivalence},
      {"fourth-power identity + envelope", 300, l4_identity},
      {"convolution identity + adjointness", 180, convolution_adjointness},
      {"bilinear slice bound + chain", 300, bilinear_bound},
      {"decomposition structure", 120, decomposition_structure},
      {"exponent reproduction", 1, exponent_reproduction},
      {"sweep stability", 900, sweep_stability},
  };

  int failed = 0, index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail = "over budget (" + std::to_string(c.budget_s) + " s)";
    }
    std::printf("[%d/8] %s  %-36s (%.2f s)  %s\n", index, o.pass ? "PASS" : "FAIL",
                c.name, secs, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  if (failed) {
    std::printf("acceptance: %d criteria failed\n", failed);
    return 1;
  }
  std::printf("acceptance: all 8 criteria passed\n");
  return 0;
}
