#include "baeract/involution.hpp"

#include <stdexcept>

namespace baeract {

Mat3 reflection(const Plane& P, const Vec3& y) {
  const Field& F = P.field();
  Fel yy = P.herm(y, y);
  if (yy == 0) throw std::invalid_argument("reflection center must be nonisotropic");
  Fel s = F.div(F.from_int(2), yy);
  Vec3 l = P.perp_coords(y);
  Mat3 t;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Fel v = F.mul(s, F.mul(l[r], y[c]));
      if (r == c) v = F.sub(v, 1);
      t[3 * r + c] = v;
    }
  return t;
}

std::vector<Reflection> subplane_reflections(const Plane& P,
                                             const std::vector<Vec3>& pts) {
  std::vector<Reflection> out;
  out.reserve(pts.size());
  for (const auto& y : pts)
    if (!P.isotropic(y)) out.push_back({y, reflection(P, y)});
  return out;
}

bool is_projective_identity(const Mat3& g) {
  return g[1] == 0 && g[2] == 0 && g[3] == 0 && g[5] == 0 && g[6] == 0 &&
         g[7] == 0 && g[0] != 0 && g[0] == g[4] && g[4] == g[8];
}

bool projectively_equal(const Field& F, const Mat3& a, const Mat3& b) {
  return normalize_mat(F, a) == normalize_mat(F, b);
}

unsigned projective_order(const Field& F, const Mat3& g, unsigned cap) {
  Mat3 acc = g;
  for (unsigned n = 1; n <= cap; ++n) {
    if (is_projective_identity(acc)) return n;
    acc = mat_mul(F, acc, g);
  }
  throw std::domain_error("projective order exceeds cap");
}

unsigned unital_fixed_points(const Plane& P, const Mat3& g) {
  const Field& F = P.field();
  unsigned n = 0;
  for (const auto& x : P.isotropic_points())
    if (normalize(F, vec_mat(F, x, g)) == x) ++n;
  return n;
}

}  // namespace baeract
