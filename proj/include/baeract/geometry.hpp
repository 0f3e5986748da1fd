#pragma once
// =============================================================================
// geometry.hpp — the projective plane PG(2,q²) with a nondegenerate Hermitian
// form, and Baer subplanes (PG(2,q) subgeometries) inside it.
//
// Conventions: vectors are rows, matrices act on the right (v ↦ v·g).  A
// projective point is a normalized row (first nonzero coordinate 1); a line is
// a coefficient row ℓ with incidence x·ℓᵀ = 0.  The Hermitian form is
// herm(x,y) = x·J·conj(y)ᵀ for a Gram matrix J; both the identity Gram and the
// antidiagonal Gram are supported, with an exact change-of-coordinates between
// them.
//
// A Baer subplane is the projective image of an F_q-span of three independent
// rows.  Scaling the span by any λ ∈ F_{q²}^* gives the same point set, so the
// canonical key minimizes the F_q-reduced row echelon form of the 3×6
// coordinate matrix over the q+1 scaling cosets — an exact, collision-free
// invariant used as the orbit dictionary key.
// =============================================================================

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "baeract/field.hpp"

namespace baeract {

using Vec3 = std::array<Fel, 3>;
using Mat3 = std::array<Fel, 9>;  // row-major

// --- exact 3×3 linear algebra -------------------------------------------------

[[nodiscard]] Mat3 mat_identity();
[[nodiscard]] Mat3 mat_mul(const Field& F, const Mat3& a, const Mat3& b);
[[nodiscard]] Vec3 vec_mat(const Field& F, const Vec3& v, const Mat3& g);
[[nodiscard]] Fel mat_det(const Field& F, const Mat3& g);
[[nodiscard]] Mat3 mat_inv(const Field& F, const Mat3& g);  // throws on det 0
[[nodiscard]] Mat3 mat_conj_transpose(const Field& F, const Mat3& g);
[[nodiscard]] Mat3 mat_scale(const Field& F, Fel c, const Mat3& g);

/// Projective representative: first nonzero coordinate scaled to 1.
[[nodiscard]] Vec3 normalize(const Field& F, Vec3 v);
/// Projective matrix representative: first nonzero entry scaled to 1.
[[nodiscard]] Mat3 normalize_mat(const Field& F, Mat3 g);
/// Cross product; line_through(a,b) = cross(a,b) satisfies a·ℓᵀ = b·ℓᵀ = 0.
[[nodiscard]] Vec3 cross(const Field& F, const Vec3& a, const Vec3& b);

/// Dense integer encoding of a (normalized) point for sorting and hashing.
[[nodiscard]] inline std::uint64_t pack(const Vec3& v) {
  return static_cast<std::uint64_t>(v[0]) |
         (static_cast<std::uint64_t>(v[1]) << 16) |
         (static_cast<std::uint64_t>(v[2]) << 32);
}

[[nodiscard]] std::vector<std::uint64_t> packed_points(const std::vector<Vec3>& pts);

[[nodiscard]] inline bool sorted_contains(const std::vector<std::uint64_t>& sorted,
                                          std::uint64_t key) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
  return it != sorted.end() && *it == key;
}

// --- the Hermitian plane -------------------------------------------------------

enum class Gram { identity, antidiag };

class Plane {
public:
  Plane(const Field& F, Gram gram);

  [[nodiscard]] const Field& field() const { return *F_; }
  [[nodiscard]] Gram gram() const { return gram_; }
  [[nodiscard]] const Mat3& gram_matrix() const { return J_; }

  /// herm(x,y) = x·J·conj(y)ᵀ; linear in x, conjugate-linear in y.
  [[nodiscard]] Fel herm(const Vec3& x, const Vec3& y) const {
    const Field& F = *F_;
    Fel acc = 0;
    for (int r = 0; r < 3; ++r) {
      if (x[r] == 0) continue;
      Fel row = 0;
      for (int c = 0; c < 3; ++c) {
        Fel j = J_[3 * r + c];
        if (j != 0 && y[c] != 0) row = F.add(row, F.mul(j, F.conj(y[c])));
      }
      acc = F.add(acc, F.mul(x[r], row));
    }
    return acc;
  }
  [[nodiscard]] bool isotropic(const Vec3& v) const { return herm(v, v) == 0; }

  /// All q⁴+q²+1 normalized points, sorted by pack().
  [[nodiscard]] const std::vector<Vec3>& points() const { return points_; }
  /// The q³+1 isotropic points, sorted by pack().
  [[nodiscard]] const std::vector<Vec3>& isotropic_points() const { return iso_; }

  /// Coefficient row of the polar line y^⊥ = {x : herm(x,y) = 0}.
  [[nodiscard]] Vec3 perp_coords(const Vec3& y) const;
  [[nodiscard]] Vec3 line_through(const Vec3& a, const Vec3& b) const;
  [[nodiscard]] bool on_line(const Vec3& x, const Vec3& line) const {
    const Field& F = *F_;
    Fel s = F.add(F.add(F.mul(x[0], line[0]), F.mul(x[1], line[1])),
                  F.mul(x[2], line[2]));
    return s == 0;
  }
  /// The q²+1 points of a line, sorted by pack().
  [[nodiscard]] std::vector<Vec3> points_on_line(const Vec3& line) const;

  /// c with g·J·conj(g)ᵀ = c·J, or 0 if g is not a similitude of the form.
  [[nodiscard]] Fel isometry_factor(const Mat3& g) const;

private:
  const Field* F_;
  Gram gram_;
  Mat3 J_;
  std::vector<Vec3> points_, iso_;
};

/// Change of coordinates C with herm_identity(x·C, y·C) = herm_antidiag(x, y),
/// i.e. C·conj(C)ᵀ equals the antidiagonal Gram matrix.  Deterministic.
/// Matrices transport by g_identity = C⁻¹·g_antidiag·C.
[[nodiscard]] Mat3 gram_converter(const Field& F);

// --- Baer subplanes --------------------------------------------------------------

/// Canonical key: 18 base-q digits (3×6 reduced echelon matrix over F_q,
/// minimized over scalings).  Equal keys ⟺ equal subplane point sets.
struct SubplaneKey {
  std::array<std::uint8_t, 18> digits{};
  friend auto operator<=>(const SubplaneKey&, const SubplaneKey&) = default;
};

struct SubplaneKeyHash {
  std::size_t operator()(const SubplaneKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto d : k.digits) {
      h ^= d;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

[[nodiscard]] SubplaneKey subplane_key(const Field& F, const Mat3& basis);

/// The q²+q+1 points of the subplane spanned over F_q by the rows of basis,
/// normalized and sorted by pack().
[[nodiscard]] std::vector<Vec3> subplane_points(const Field& F, const Mat3& basis);

/// Membership via the precomputed basis inverse: pt·basis⁻¹ must be
/// F_q-proportional.
[[nodiscard]] bool subplane_contains(const Field& F, const Mat3& basis_inv,
                                     const Vec3& pt);

// --- intersection profiles --------------------------------------------------------

enum class MeetShape {
  empty,
  single_isotropic,
  single_nonisotropic,
  pole_and_isotropic,  // 2 points, exactly 1 isotropic
  triangle,            // 3 nonisotropic points, no line through all 3
  tangent_subline,     // q+1 collinear points, exactly 1 isotropic
  subline_plus_pole,   // q+1 collinear points plus 1 off the line
  other,
};

[[nodiscard]] const char* to_string(MeetShape s);

struct MeetProfile {
  unsigned points = 0;
  unsigned isotropic = 0;
  unsigned max_collinear = 0;
  MeetShape shape = MeetShape::empty;
};

/// Intersection of two point sets given sorted by pack().
[[nodiscard]] std::vector<Vec3> intersect_point_sets(const std::vector<Vec3>& a,
                                                     const std::vector<Vec3>& b);

[[nodiscard]] MeetProfile meet_profile(const Plane& P, const std::vector<Vec3>& a,
                                       const std::vector<Vec3>& b);

}  // namespace baeract
