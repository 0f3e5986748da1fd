// Unit tests for reflections.
//
// The reflection laws (involutority, isometry, fixed structure) are checked
// directly; the set of reflections with center in the base subplane is proven
// exhaustively (at q=7) to coincide with the involutions of the recovered
// stabilizer; commuting is matched against orthogonality of centers; the
// unipotent-product criterion is matched against isotropy of the axis
// intersection; and the explicit image of the base subplane under a sheared
// reflection is compared coordinate by coordinate with an independent
// closed-form enumeration.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "baeract/group.hpp"
#include "baeract/involution.hpp"

using namespace baeract;

namespace {

const Field& field_for(unsigned q) {
  static std::map<unsigned, Field> cache;
  auto it = cache.find(q);
  if (it == cache.end()) {
    unsigned p = q, m = 1;
    if (q == 9) p = 3, m = 2;
    it = cache.emplace(q, Field(p, m)).first;
  }
  return it->second;
}

const Plane& plane_for(unsigned q) {
  static std::map<unsigned, Plane> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, Plane(field_for(q), Gram::antidiag)).first;
  return it->second;
}

Vec3 random_nonisotropic(const Plane& P, std::mt19937_64& rng) {
  const Field& F = P.field();
  for (;;) {
    Vec3 v{static_cast<Fel>(rng() % F.qq()), static_cast<Fel>(rng() % F.qq()),
           static_cast<Fel>(rng() % F.qq())};
    if ((v[0] || v[1] || v[2]) && !P.isotropic(v)) return normalize(F, v);
  }
}

Fel random_outside_subfield(const Field& F, std::mt19937_64& rng) {
  for (;;) {
    Fel a = static_cast<Fel>(rng() % F.qq());
    if (!F.in_subfield(a)) return a;
  }
}

std::vector<std::uint64_t> image_packs(const Field& F, const std::vector<Vec3>& pts,
                                       const Mat3& g) {
  std::vector<std::uint64_t> out;
  out.reserve(pts.size());
  for (const auto& x : pts) out.push_back(pack(normalize(F, vec_mat(F, x, g))));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("reflection laws: involutory special isometry fixing center and axis") {
  for (unsigned q : {7u, 9u, 11u, 13u}) {
    const Plane& P = plane_for(q);
    const Field& F = P.field();
    std::mt19937_64 rng(q);
    for (int t = 0; t < 40; ++t) {
      Vec3 y = random_nonisotropic(P, rng);
      Mat3 r = reflection(P, y);
      CHECK(mat_mul(F, r, r) == mat_identity());  // exactly, not just projectively
      CHECK(mat_det(F, r) == 1);
      CHECK(P.isometry_factor(r) == 1);
      CHECK(projective_order(F, r, 4) == 2);
      CHECK(normalize(F, vec_mat(F, y, r)) == y);
      // a point of the axis is projectively fixed
      auto axis_pts = P.points_on_line(P.perp_coords(y));
      for (int s = 0; s < 5; ++s) {
        const Vec3& x = axis_pts[rng() % axis_pts.size()];
        CHECK(normalize(F, vec_mat(F, x, r)) == x);
      }
      CHECK(unital_fixed_points(P, r) == q + 1);
    }
  }
}

TEST_CASE("fixed points in the whole plane are the center plus its axis") {
  const Plane& P = plane_for(7);
  const Field& F = P.field();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 4; ++t) {
    Vec3 y = random_nonisotropic(P, rng);
    Mat3 r = reflection(P, y);
    Vec3 axis = P.perp_coords(y);
    unsigned fixed = 0;
    for (const auto& x : P.points()) {
      bool fx = normalize(F, vec_mat(F, x, r)) == x;
      CHECK(fx == (x == y || P.on_line(x, axis)));
      if (fx) ++fixed;
    }
    CHECK(fixed == 1 + 49 + 1);  // the center plus the q²+1 axis points
  }
}

TEST_CASE("base-member reflections are exactly the stabilizer involutions (q=7)") {
  const Field& F = field_for(7);
  Action A(F);
  const Plane& P = A.plane();

  auto refl = subplane_reflections(P, A.member_points(0));
  CHECK(refl.size() == 49);  // q²: one per nonisotropic subplane point

  std::set<Mat3> from_centers;
  for (const auto& rf : refl) {
    CHECK(A.act(0, rf.mat) == 0);  // each stabilizes the member
    from_centers.insert(normalize_mat(F, rf.mat));
  }
  CHECK(from_centers.size() == 49);

  std::set<Mat3> from_group;
  for (const auto& m : A.point_stabilizer())
    if (!is_projective_identity(m) && is_projective_identity(mat_mul(F, m, m)))
      from_group.insert(m);
  CHECK(from_group == from_centers);
}

TEST_CASE("commuting reflections have orthogonal centers (exhaustive, q=7)") {
  const Field& F = field_for(7);
  const Plane& P = plane_for(7);
  auto pts0 = subplane_points(F, mat_identity());
  auto refl = subplane_reflections(P, pts0);
  for (std::size_t i = 0; i < refl.size(); ++i)
    for (std::size_t j = i + 1; j < refl.size(); ++j) {
      Mat3 ab = mat_mul(F, refl[i].mat, refl[j].mat);
      Mat3 ba = mat_mul(F, refl[j].mat, refl[i].mat);
      bool commute = projectively_equal(F, ab, ba);
      CHECK(commute == (P.herm(refl[i].center, refl[j].center) == 0));
      if (commute) CHECK(projective_order(F, ab, 4) == 2);
    }
}

TEST_CASE("product of two reflections: unipotent iff the axes meet on the unital") {
  for (unsigned q : {7u, 9u}) {
    const Plane& P = plane_for(q);
    const Field& F = P.field();
    std::mt19937_64 rng(q + 9);
    for (int t = 0; t < 150; ++t) {
      Vec3 y = random_nonisotropic(P, rng);
      Vec3 z = random_nonisotropic(P, rng);
      if (y == z) continue;
      Mat3 prod = mat_mul(F, reflection(P, y), reflection(P, z));
      unsigned n = projective_order(F, prod, 2 * (q + 1) + 1);
      Vec3 meet = cross(F, P.perp_coords(y), P.perp_coords(z));
      CHECK((n == F.p()) == P.isotropic(meet));
      // the order menu: 2, the characteristic, or a divisor of q±1
      bool ok = n == 2 || n == F.p() || (q - 1) % n == 0 || (q + 1) % n == 0;
      CHECK(ok);
    }
  }
}

TEST_CASE("sheared reflection: explicit image of the base subplane") {
  for (unsigned q : {7u, 9u, 11u}) {
    const Plane& P = plane_for(q);
    const Field& F = P.field();
    auto pts0 = subplane_points(F, mat_identity());
    auto packs0 = packed_points(pts0);
    std::mt19937_64 rng(q + 21);

    for (int t = 0; t < 8; ++t) {
      Fel alpha = random_outside_subfield(F, rng);
      Vec3 y{alpha, 1, 0};
      CHECK(P.herm(y, y) == 1);
      Mat3 r = reflection(P, y);

      // image of the subplane touches it exactly in the anchor point
      auto img = image_packs(F, pts0, r);
      std::vector<std::uint64_t> common;
      std::set_intersection(img.begin(), img.end(), packs0.begin(), packs0.end(),
                            std::back_inserter(common));
      REQUIRE(common.size() == 1);
      CHECK(common[0] == pack(Vec3{1, 0, 0}));

      // closed-form image, enumerated independently from (a,b,c) ∈ F_q³:
      // (a,b,c) ↦ (−a + 2bα + 2cα^{q+1}, b + 2cα^q, −c)
      std::vector<std::uint64_t> formula;
      Fel two = F.from_int(2);
      Fel aq = F.conj(alpha), anorm = F.norm(alpha);
      for (Fel a : F.subfield())
        for (Fel b : F.subfield())
          for (Fel c : F.subfield()) {
            if (a == 0 && b == 0 && c == 0) continue;
            Vec3 v{F.add(F.neg(a), F.mul(two, F.add(F.mul(b, alpha),
                                                    F.mul(c, anorm)))),
                   F.add(b, F.mul(two, F.mul(c, aq))), F.neg(c)};
            formula.push_back(pack(normalize(F, v)));
          }
      std::sort(formula.begin(), formula.end());
      formula.erase(std::unique(formula.begin(), formula.end()), formula.end());
      CHECK(formula == img);
    }
  }
}

TEST_CASE("two sheared images meet in q+1 or 1 points by parameter difference") {
  const Plane& P = plane_for(7);
  const Field& F = P.field();
  auto pts0 = subplane_points(F, mat_identity());
  std::mt19937_64 rng(77);

  for (int t = 0; t < 12; ++t) {
    Fel alpha = random_outside_subfield(F, rng);
    // same F_q-coset: large meet
    Fel beta_near = F.add(alpha, F.subfield()[1 + rng() % (F.q() - 1)]);
    // different coset (rejection-sampled): small meet
    Fel beta_far;
    do {
      beta_far = random_outside_subfield(F, rng);
    } while (F.in_subfield(F.sub(alpha, beta_far)));

    auto img_a = image_packs(F, pts0, reflection(P, Vec3{alpha, 1, 0}));
    for (auto [beta, expected] :
         {std::make_pair(beta_near, 8u), std::make_pair(beta_far, 1u)}) {
      auto img_b = image_packs(F, pts0, reflection(P, Vec3{beta, 1, 0}));
      std::vector<std::uint64_t> common;
      std::set_intersection(img_a.begin(), img_a.end(), img_b.begin(),
                            img_b.end(), std::back_inserter(common));
      CHECK(common.size() == expected);
    }
  }
}

TEST_CASE("projective identity and order edge cases") {
  const Field& F = field_for(7);
  CHECK(is_projective_identity(mat_identity()));
  CHECK(is_projective_identity(mat_scale(F, F.xi(), mat_identity())));
  Mat3 bad = mat_identity();
  bad[8] = F.xi();
  CHECK(!is_projective_identity(bad));
  CHECK(projective_order(F, mat_identity(), 1) == 1);
  CHECK_THROWS_AS((void)projective_order(F, torus(F, F.xi()), 2), std::domain_error);
}
