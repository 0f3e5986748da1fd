#pragma once
// =============================================================================
// involution.hpp — reflections of the Hermitian plane.
//
// Every nonisotropic point ⟨y⟩ determines the unique involutory isometry
// fixing ⟨y⟩ and its polar line: x ↦ −x + (2·herm(x,y)/herm(y,y))·y.  The
// involutions of a subplane stabilizer are exactly the reflections whose
// center lies in the subplane off the unital, giving q² of them per member.
// =============================================================================

#include "baeract/geometry.hpp"

namespace baeract {

/// The reflection with center ⟨y⟩ (y nonisotropic) and axis y^⊥.
[[nodiscard]] Mat3 reflection(const Plane& P, const Vec3& y);

struct Reflection {
  Vec3 center;  // normalized
  Mat3 mat;
};

/// The q² reflections stabilizing the subplane with the given (sorted) point
/// list — one per nonisotropic point, in point order.
[[nodiscard]] std::vector<Reflection> subplane_reflections(
    const Plane& P, const std::vector<Vec3>& pts);

[[nodiscard]] bool is_projective_identity(const Mat3& g);
[[nodiscard]] bool projectively_equal(const Field& F, const Mat3& a, const Mat3& b);

/// Order of g's image in the projective group; throws past the cap.
[[nodiscard]] unsigned projective_order(const Field& F, const Mat3& g, unsigned cap);

/// Number of points of the unital (isotropic points) fixed by g.
[[nodiscard]] unsigned unital_fixed_points(const Plane& P, const Mat3& g);

}  // namespace baeract
