#pragma once
// =============================================================================
// group.hpp — the special unitary group of degree 3 over F_{q²} (antidiagonal
// Gram), its projective action on the orbit Ω of the base Baer subplane, and
// the stabilizer of the base subplane.
//
// The orbit is enumerated once by breadth-first closure; the transversal
// element T[i] doubles as a basis of orbit member i (member i is the base
// subplane's image under T[i], whose rows are the images of the standard
// basis).  The base-subplane stabilizer M (order q(q²−1) projectively) is
// recovered from Schreier generators T[i]·g·T[j]⁻¹ and closed under
// multiplication.  Everything is exact and deterministic.
// =============================================================================

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "baeract/geometry.hpp"

namespace baeract {

// --- generators ------------------------------------------------------------------

/// The admissible upper-triangular shift: b = −a·conj(a)/2 + t·i_unit, t ∈ F_q,
/// satisfying trace(b) + norm(a) = 0.
[[nodiscard]] Fel unipotent_shift(const Field& F, Fel a, Fel t);

/// [[1,a,b],[0,1,−conj(a)],[0,0,1]]; requires trace(b) + norm(a) = 0.
[[nodiscard]] Mat3 unipotent(const Field& F, Fel a, Fel b);

/// diag(k^{−q}, k^{q−1}, k), k ≠ 0.
[[nodiscard]] Mat3 torus(const Field& F, Fel k);

/// [[0,0,1],[0,−1,0],[1,0,0]] — the order-2 monomial isometry.
[[nodiscard]] Mat3 weyl(const Field& F);

/// Five-element generating set of the special unitary group.
[[nodiscard]] std::vector<Mat3> special_unitary_generators(const Field& F);

/// Same generating set conjugated into the coordinates of the requested Gram
/// (the antidiagonal set itself, or its image under the Gram converter).
[[nodiscard]] std::vector<Mat3> special_unitary_generators(const Field& F,
                                                           Gram gram);

// --- subgroup utilities ------------------------------------------------------------

/// Multiplicative closure of the projectively normalized generators; throws if
/// the closure exceeds cap elements.  Returns normalized matrices.
[[nodiscard]] std::set<Mat3> projective_closure(const Field& F,
                                                const std::vector<Mat3>& gens,
                                                std::size_t cap);

/// A generating sublist of at most three elements for a subgroup given by its
/// full (normalized) element list.  The trivial group yields an empty list.
[[nodiscard]] std::vector<Mat3> subgroup_generators(const Field& F,
                                                    const std::vector<Mat3>& elems);

// --- the primitive action ----------------------------------------------------------

class Action {
public:
  /// Enumerates the orbit and recovers the base-subplane stabilizer (slow:
  /// seconds up to q=11, tens of seconds at q=13).
  explicit Action(const Field& F, Gram gram = Gram::antidiag);
  /// Same, but loads an exact cache file when present and valid, writing one
  /// (atomically) after a fresh build otherwise.
  Action(const Field& F, const std::string& cache_file,
         Gram gram = Gram::antidiag);

  [[nodiscard]] const Field& field() const { return *F_; }
  [[nodiscard]] const Plane& plane() const { return plane_; }
  [[nodiscard]] std::uint32_t size() const {
    return static_cast<std::uint32_t>(T_.size());
  }

  /// Transversal element and simultaneous basis of orbit member i.
  [[nodiscard]] const Mat3& transversal(std::uint32_t i) const { return T_[i]; }
  [[nodiscard]] std::uint32_t index_of(const SubplaneKey& k) const {
    return index_.at(k);
  }
  /// Index of member i's image under g (g must map Ω into itself).
  [[nodiscard]] std::uint32_t act(std::uint32_t i, const Mat3& g) const {
    return index_.at(subplane_key(*F_, mat_mul(*F_, T_[i], g)));
  }

  /// The stabilizer of member 0: q(q²−1) projectively normalized matrices,
  /// sorted, closed under multiplication.
  [[nodiscard]] const std::vector<Mat3>& point_stabilizer() const { return M_; }
  /// A two-element generating set of the stabilizer.
  [[nodiscard]] const std::vector<Mat3>& stabilizer_generators() const {
    return mgens_;
  }

  /// The q²+q+1 points of member i, sorted by pack().
  [[nodiscard]] std::vector<Vec3> member_points(std::uint32_t i) const {
    return subplane_points(*F_, T_[i]);
  }

  // --- constant-size stabilization probe -------------------------------------
  // g stabilizes member i iff the images of the five seed vectors (the three
  // basis rows and two pairwise sums) all land inside the member's point set.
  struct Probe {
    std::array<Vec3, 5> seeds;
    std::vector<std::uint64_t> packs;  // member's packed point set, sorted
  };
  [[nodiscard]] Probe probe(std::uint32_t i) const;
  [[nodiscard]] bool stabilizes(const Probe& pr, const Mat3& g) const;

  /// Group element carrying member i back to member 0.
  [[nodiscard]] Mat3 to_base(std::uint32_t i) const { return mat_inv(*F_, T_[i]); }

  /// First isotropic point of member 0 in pack order (⟨e₁⟩ for the
  /// antidiagonal Gram).
  [[nodiscard]] const Vec3& anchor() const { return anchor_; }

  /// The stabilizer element sending the given isotropic point of member 0 to
  /// the anchor (the stabilizer is transitive on the member's q+1 isotropic
  /// points).  pt must be normalized.
  [[nodiscard]] const Mat3& move_iso_to_anchor(const Vec3& pt) const;

private:
  void build();
  bool load_cache(const std::string& path);
  void save_cache(const std::string& path) const;
  void finish_tables();

  const Field* F_;
  Plane plane_;
  std::vector<Mat3> gens_;
  std::vector<Mat3> T_;
  std::unordered_map<SubplaneKey, std::uint32_t, SubplaneKeyHash> index_;
  std::vector<Mat3> M_;
  std::vector<Mat3> mgens_;
  Vec3 anchor_{};
  std::unordered_map<std::uint64_t, Mat3> iso_to_anchor_;
};

}  // namespace baeract
