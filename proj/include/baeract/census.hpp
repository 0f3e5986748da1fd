#pragma once
// =============================================================================
// census.hpp — the suborbit census of the base-subplane stabilizer M acting on
// the orbit Ω, together with its closed-form expectations.
//
// For each M-suborbit the engine records the representative (smallest index),
// the length, the point-pair stabilizer K = M ∩ Stab(member), its order,
// involution count, normalizer order inside M, the intersection profile of the
// representative with the base member, the structural class label, and
// |Fix_Ω(K)|.  The census doubles as the foundation for the common-neighbor
// verification: a pair of members is a base pair exactly when it lies in a
// regular suborbit, and every non-base pair must admit a common neighbor that
// forms a base pair with both members.
// =============================================================================

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "baeract/group.hpp"
#include "baeract/involution.hpp"

namespace baeract {

struct SuborbitInfo {
  std::uint32_t rep = 0;            // smallest member index in the suborbit
  std::uint64_t length = 0;         // suborbit size
  std::uint64_t stab_order = 0;     // |K|, K = two-member stabilizer in M
  unsigned involutions = 0;         // involutions of K
  std::uint64_t normalizer = 0;     // |N_M(K)|
  std::string label;                // structural class of K
  MeetProfile profile{};            // base member ∩ representative
  bool regular = false;             // K trivial
  std::uint64_t fix_count = 0;      // |Fix_Ω(K)|
};

struct Census {
  std::vector<std::uint32_t> suborbit_of;  // member index → suborbit id
  std::vector<SuborbitInfo> suborbits;     // id order; id 0 is {base member}
  std::vector<bool> regular_mask;          // member lies in a regular suborbit
  std::uint64_t gamma_r = 0;               // #members in regular suborbits
};

/// Full suborbit census of the action (exact, deterministic).
[[nodiscard]] Census compute_census(const Action& A);

// --- closed-form expectations -------------------------------------------------------

struct OracleRow {
  std::string label;
  std::uint64_t stab_order = 0;  // |K| for the class
  std::uint64_t length = 0;      // common suborbit length
  std::uint64_t count = 0;       // number of suborbits in the class
  std::uint64_t fix = 0;         // |Fix_Ω(K)| for the class
};

struct CensusOracle {
  unsigned q = 0;
  unsigned d = 0;                  // gcd(3, q+1)
  int eps = 0;                     // +1 if q ≡ 1 (mod 4), else −1
  std::uint64_t omega = 0;         // orbit size q²(q³+1)/d
  std::uint64_t m_order = 0;       // |M| = q(q²−1)
  std::uint64_t gamma_r = 0;       // #members in regular suborbits
  std::uint64_t regular_count = 0; // number of regular suborbits
  std::vector<OracleRow> rows;     // nontrivial classes with count > 0,
                                   // regular row last (fix = omega)
  // The Z2a/Z2b suborbit counts in rows follow the law keyed by the
  // normalizer of the order-2 stabilizer ((q+1)(q−2)/2d suborbits normalized
  // by D_{2(q+1)}, (q²+3q−2−(d²−1))/2d by D_{2(q−1)}), which enumeration
  // confirms at q = 7, 9, 11, 13.  A commonly stated alternative keys the
  // split on q mod 4; it disagrees with the enumeration when q ≡ 1 (mod 4),
  // so the engine records that pair and whether it agrees.
  std::array<std::uint64_t, 2> z2_congruence_split{};  // ordered (Z2a, Z2b)
  bool z2_split_agrees = true;
};

/// Exact census predictions from q alone (q an odd prime power ≥ 7).  All
/// divisions are checked; a remainder throws.
[[nodiscard]] CensusOracle census_oracle(unsigned q);

/// Lower bound (q⁵−q⁴)/(3d) for the regular-point count.
[[nodiscard]] std::uint64_t regular_points_lower_bound(unsigned q);

// --- aggregation ---------------------------------------------------------------------

struct ClassCount {
  std::string label;
  std::uint64_t stab_order = 0;
  std::uint64_t length = 0;
  std::uint64_t count = 0;
  std::uint64_t fix = 0;
};

/// Census rows aggregated by class label in canonical order (trivial suborbit
/// omitted, regular row last).  Throws if suborbits sharing a label disagree
/// on order, length or fix count.
[[nodiscard]] std::vector<ClassCount> aggregate_census(const Census& C);

// --- common neighbors ------------------------------------------------------------------

struct NeighborWitness {
  std::uint32_t rep = 0;       // representative of a nontrivial suborbit
  std::uint32_t neighbor = 0;  // member forming a base pair with both ends
};

struct NeighborReport {
  bool verified = false;  // every nontrivial suborbit representative has one
  std::vector<NeighborWitness> witnesses;
};

/// For every nontrivial suborbit representative r, the smallest member γ that
/// forms a base pair with both the base member and r.  By transitivity this
/// verifies the common-neighbor property for every pair of distinct members.
[[nodiscard]] NeighborReport verify_common_neighbors(const Action& A,
                                                     const Census& C);

// --- base-pair predicates ---------------------------------------------------------------

/// Geometric test: the two members share no point, or exactly one point which
/// is isotropic.
[[nodiscard]] bool is_base_pair_geometric(const Action& A, std::uint32_t a,
                                          std::uint32_t b);

/// Group-theoretic test: the pair stabilizer (conjugated so one member is the
/// base member) is trivial.
[[nodiscard]] bool is_base_pair_stabilizer(const Action& A, std::uint32_t a,
                                           std::uint32_t b);

// --- constructive common neighbor --------------------------------------------------------

struct ConstructResult {
  bool found = false;
  std::uint32_t witness = 0;  // member forming a base pair with both inputs
  Vec3 center{};              // reflection center used (transported frame)
  unsigned tried = 0;         // candidate (point, parameter) pairs examined
};

/// Constructs a common neighbor of two distinct members by reflecting the base
/// member in a point chosen on a tangent line, entirely without search over Ω.
/// Requires the antidiagonal Gram.
[[nodiscard]] ConstructResult construct_common_neighbor(const Action& A,
                                                        std::uint32_t a,
                                                        std::uint32_t b);

}  // namespace baeract
