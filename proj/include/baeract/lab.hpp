#pragma once
// =============================================================================
// lab.hpp — desk-scale verification of the counting machinery behind the
// common-neighbor lower bound: exact pair-intersection bookkeeping (involution
// products, incidence triples, cell counts over the suborbit taxonomy), the
// inclusion–exclusion excess that forces a common regular neighbor, the
// polynomial frame systems whose zero loci bound the bad cells, point counts
// on hyperelliptic-type curves, and cubic discriminant classification.
//
// Everything here is exact: enumerations over F_q or over the orbit Ω, and
// integer/rational formula evaluation.  Asymptotic series bounds are evaluated
// for side-by-side reporting but never asserted at desk scale, where their
// hypotheses do not hold.
// =============================================================================

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "baeract/census.hpp"
#include "baeract/field.hpp"
#include "baeract/geometry.hpp"

namespace baeract {

// --- exact rational / series values --------------------------------------------------

struct Rational {
  long long num = 0;
  long long den = 1;  // > 0, reduced

  [[nodiscard]] double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

[[nodiscard]] Rational make_rational(long long num, long long den);

/// A bound of the shape c₅·q⁵ + c₄·q⁴ + s₄·q⁴·√q with exact rational
/// coefficients, evaluated numerically on demand.
struct SeriesBound {
  Rational c5{}, c4{}, s4{};

  [[nodiscard]] double value(unsigned q) const;
};

/// The closed-form lower bound for the number of common non-neighbors of two
/// members (valid only under the hypothesis √q ≥ 15·gcd(3,q+1)).
[[nodiscard]] SeriesBound common_non_neighbor_series_bound(unsigned q);

/// The four summands of that bound's decomposition (one lower bound, three
/// upper bounds), for side-by-side regression reporting.
struct DecompositionBounds {
  SeriesBound a_lower{}, b_upper{}, c_upper{}, d_upper{};
};
[[nodiscard]] DecompositionBounds decomposition_series_bounds(unsigned q);

/// Upper bound on the number of base-stabilizer-regular suborbits fixed by a
/// prime-order element outside the socle point stabilizer: r = 2 gives
/// q + 5/2 (d = 1) or q/2 + 1/3 (d = 3); odd r | m gives p^{2m/r}/d + 3/(2d).
/// Throws std::invalid_argument unless r is prime (and r | m when r is odd).
[[nodiscard]] Rational fixed_regular_suborbits_bound(unsigned q, unsigned p,
                                                     unsigned m, unsigned r);

// --- pair-intersection survey ---------------------------------------------------------

/// Product-order tally of one involution t of the base stabilizer against all
/// involutions of the companion stabilizer that are not shared: buckets by the
/// projective order of the product (2, the characteristic, a divisor of q+1,
/// a divisor of q−1, or none of these).
///
/// The dihedral closure ⟨t, t′⟩ fixes a member count determined by the bucket:
/// (q+1)²/d for order-2 products, (q+1)/d for orders > 2 dividing q±1, and 0
/// for the rest — except order-p closures, which fix either q members or none.
/// When gcd(3,q+1) = 1 the order-p count is always q; when gcd(3,q+1) = 3 the
/// order-p elements split into classes and only some closures land inside
/// two-member stabilizers (the enumeration measures which).
struct ProductTally {
  unsigned order2 = 0;
  unsigned orderp = 0;
  unsigned orderp_nonfixing = 0;  // order-p closures fixing no member
  unsigned div_qp1 = 0;           // order > 2 dividing q+1
  unsigned div_qm1 = 0;           // order > 2 dividing q−1
  unsigned other = 0;             // closure fixes no member (coefficient 0)
};

/// Exhaustive intersection bookkeeping for the pair (base member, rep):
/// involution sets of the two stabilizers, product-order tallies, the set of
/// members meeting both stabilizers in fresh involutions, the incidence-triple
/// count obtained two independent ways, the taxonomy cells, and the exact
/// A − B − C − D decomposition.
struct PairSurvey {
  std::uint32_t rep = 0;
  std::string pair_class;              // census label of the two-member stabilizer
  std::size_t side_involutions = 0;    // involutions of either stabilizer (q²)
  std::size_t common_involutions = 0;  // shared involutions of the pair
  std::vector<ProductTally> tallies;   // one per unshared base-side involution
  bool involution_product_laws_ok = true;  // ≤1 order-2 product; ≤3q−1 order-p

  std::uint64_t triples = 0;    // incidence triples (t, member, t′)
  std::uint64_t w_size = 0;     // members carrying fresh involutions from both sides
  std::uint64_t nr_common = 0;  // common non-neighbors of the pair
  bool w_inside_nr_common = true;

  bool two_way_count_equal = true;     // Σ_t per-t triples == Σ_member triples
  bool pairwise_fix_ok = true;         // every closure fixes its law's count
  bool coefficient_identity_ok = true; // per-t scan == containment-count formula
  unsigned chain_overcounts = 0;       // #t where the telescoped form overcounts
  std::uint64_t other_products = 0;    // Σ_t other-bucket products
  std::uint64_t orderp_nonfixing = 0;  // Σ_t order-p closures fixing nothing
  bool chain_gap_explained = true;     // telescoped − scan ==
                                       //   (q+1)/d·other + q·orderp_nonfixing, ∀t

  // (base class, companion class, triple-intersection order) → member count
  std::map<std::array<std::string, 3>, std::uint64_t> cells;
  bool vanishing_cells_ok = true;  // incompatible subline cells are empty
  std::uint64_t part_a = 0, part_b = 0, part_c = 0, part_d = 0;
  bool decomposition_identity_ok = true;  // w_size == A − B − C − D
};

/// Runs the exhaustive survey for the pair (base member, rep).  Cost is one
/// pass over Ω with constant-size probes; intended for q = 7 exhaustively.
[[nodiscard]] PairSurvey pair_survey(const Action& A, const Census& C,
                                     std::uint32_t rep);

/// |Γ_nr(base) ∩ Γ_nr(rep)| alone (one transport pass, no probes).
[[nodiscard]] std::uint64_t pair_nonregular_common(const Action& A,
                                                   const Census& C,
                                                   std::uint32_t rep);

// --- the common-neighbor excess criterion ----------------------------------------------

/// Inclusion–exclusion excess: if min over companions of the common
/// non-neighbor count minus |Ω| plus twice the regular-neighbor count is
/// positive, every pair of members has a common regular neighbor.
struct CommonNeighborExcess {
  std::uint64_t omega = 0;
  std::uint64_t gamma_r = 0;
  std::uint64_t nonregular = 0;            // |Γ_nr(base)| = |Ω| − 1 − γ_r
  std::uint64_t min_pair_nonregular = 0;   // min over suborbit reps ≠ base
  std::uint32_t argmin_rep = 0;
  long long excess = 0;                    // min − |Ω| + 2γ_r
  bool positive = false;
  SeriesBound series{};                    // asymptotic expression (report only)
  double series_value = 0.0;
};

[[nodiscard]] CommonNeighborExcess common_neighbor_excess(const Action& A,
                                                          const Census& C);

// --- polynomial frame systems -----------------------------------------------------------

/// The two parameterized families of companion frames.  Both carry a 2×2 side
/// condition on (m₁,n₁,m₂,n₂): the unit-determinant family pins
/// m₂n₁ − m₁n₂ = 1 with a free nonzero row scale t, the scaled-determinant
/// family pins m₂n₁ − m₁n₂ = s for a free nonzero scale s.
enum class FrameFamily : std::uint8_t { unit_det, scaled_det };

struct FrameSystem {
  FrameFamily family = FrameFamily::unit_det;
  Fel e = 0, t = 0;  // unit_det parameters (e free, t ≠ 0)
  Fel s = 0;         // scaled_det parameter (s ≠ 0)
  Fel m1 = 0, n1 = 0, m2 = 0, n2 = 0;
};

/// Validates the family's side conditions; throws std::invalid_argument on
/// violation (t/s zero, wrong 2×2 determinant, (m₁,n₁) = (0,0), or a
/// parameter outside F_q).
[[nodiscard]] FrameSystem make_frame_system(const Field& F, FrameSystem sys);

/// Deterministic seeded sampler of admissible parameters.
[[nodiscard]] FrameSystem sample_frame_system(const Field& F, FrameFamily fam,
                                              std::mt19937_64& rng);

/// The coefficient pair (f, g) with pair determinant h(a,b,c) = f(a,c)·b − g(a,c).
struct CoeffPair {
  Fel f = 0, g = 0;
};
[[nodiscard]] CoeffPair determinant_coefficients(const Field& F,
                                                 const FrameSystem& sys, Fel a,
                                                 Fel c);

/// The literal 3×3 pair determinant (for verifying h = f·b − g by expansion).
[[nodiscard]] Fel pair_determinant(const Field& F, const FrameSystem& sys,
                                   Fel a, Fel b, Fel c);

/// The cube-substitution resolvent h′(a,c,z) = F·(z³+3zθ) + G·(3z²+θ) with
/// F = g + f·c and G = g·c + f·θ.
[[nodiscard]] Fel cube_resolvent(const Field& F, const FrameSystem& sys, Fel a,
                                 Fel c, Fel z);

/// Exact zero-locus counts over F_q: triples where the determinant vanishes
/// with f ≠ 0 (solvable locus, split by b = −c), triples where f = g = 0
/// (degenerate locus), and the resolvent's zero count.  Both loci carry the
/// cube-class side condition on (−b+i)(−c+i).
struct LocusCounts {
  std::uint64_t solvable = 0;               // h = 0, f ≠ 0, cube condition
  std::uint64_t solvable_diagonal = 0;      // … with b = −c
  std::uint64_t solvable_off_diagonal = 0;  // … with b ≠ −c
  std::uint64_t degenerate = 0;             // f = g = 0, cube condition
  std::uint64_t resolvent = 0;              // h′ = 0 over (a,c,z)
  bool degenerate_centered = true;     // every degenerate triple has a = −e
  bool coprime_off_center = true;      // f(a₀,·) ⟂ g(a₀,·) away from the center
  std::uint64_t cube_rejections = 0;   // solvable-locus candidates cut by the
                                       // cube condition (0 when it is vacuous)
};
[[nodiscard]] LocusCounts count_loci(const Field& F, const FrameSystem& sys);

// --- curve point counts and cubic classification -----------------------------------------

/// Exact number of (x, y) ∈ F_q² with y² = g(x), plus the square-root point
/// bound check.  The bound is asserted only when y² − g(x) is absolutely
/// irreducible, i.e. the square-free part of g is non-constant.
struct CurvePointCount {
  unsigned degree = 0;
  std::uint64_t points = 0;
  bool absolutely_irreducible = false;
  bool bound_holds = false;  // (N − q)² ≤ (deg − 1)²·q; false when reducible
};

/// coeffs holds g low-to-high over the subfield; the leading coefficient must
/// be nonzero.  Throws std::invalid_argument on an empty or zero polynomial or
/// coefficients outside F_q.
[[nodiscard]] CurvePointCount count_curve_points(const Field& F,
                                                 const std::vector<Fel>& coeffs);

enum class CubicRootClass : std::uint8_t {
  multiple_root,        // discriminant 0
  single_root,          // discriminant a nonsquare
  zero_or_three_roots,  // discriminant a nonzero square
};

/// Discriminant of the monic cubic x³ + a₂x² + a₁x + a₀ over F_q.
[[nodiscard]] Fel cubic_discriminant(const Field& F, Fel a2, Fel a1, Fel a0);

/// Classification of the monic cubic by the quadratic character of its
/// discriminant.
[[nodiscard]] CubicRootClass classify_cubic(const Field& F, Fel a2, Fel a1,
                                            Fel a0);

/// Number of distinct roots of the monic cubic in F_q, with a flag for a
/// repeated root (brute force; the classification oracle).
struct CubicRoots {
  unsigned distinct = 0;
  bool repeated = false;
};
[[nodiscard]] CubicRoots cubic_roots(const Field& F, Fel a2, Fel a1, Fel a0);

/// Verifies, for every μ ∈ F_q, that the resolvent cubic
/// z³ − 3μz² + 3θz − μθ has discriminant −108·θ·(μ²−θ)² and that this value
/// is a nonzero square (true exactly when q ≡ 2 mod 3).
[[nodiscard]] bool resolvent_discriminant_square_for_all(const Field& F);

}  // namespace baeract
