// Unit tests for the special unitary generators and the orbit machinery.
//
// Generator laws (isometry, determinant, multiplication/conjugation rules)
// are checked symbolically over random parameters; the orbit is pinned to its
// closed-form size; the recovered stabilizer is verified element by element
// against the definition; the constant-size stabilization probe is
// cross-checked against exact orbit recomputation; the cache roundtrips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <map>
#include <random>

#include "baeract/group.hpp"

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

Fel rnd_el(const Field& F, std::mt19937_64& rng) {
  return static_cast<Fel>(rng() % F.qq());
}

Fel rnd_sub(const Field& F, std::mt19937_64& rng) {
  return F.subfield()[rng() % F.q()];
}

Mat3 random_word(const std::vector<Mat3>& gens, const Field& F,
                 std::mt19937_64& rng) {
  Mat3 g = mat_identity();
  unsigned len = 1 + rng() % 8;
  for (unsigned k = 0; k < len; ++k) g = mat_mul(F, g, gens[rng() % gens.size()]);
  return g;
}

}  // namespace

TEST_CASE("generators are special isometries of the antidiagonal form") {
  for (unsigned q : {7u, 9u, 11u, 13u}) {
    const Field& F = field_for(q);
    Plane P(F, Gram::antidiag);
    for (const auto& g : special_unitary_generators(F)) {
      CHECK(P.isometry_factor(g) == 1);
      CHECK(mat_det(F, g) == 1);
    }
  }
}

TEST_CASE("unipotent multiplication, inversion, torus conjugation, weyl flip") {
  for (unsigned q : {7u, 9u, 13u}) {
    const Field& F = field_for(q);
    const auto lq = static_cast<long long>(q);
    std::mt19937_64 rng(q);
    for (int t = 0; t < 200; ++t) {
      Fel a = rnd_el(F, rng), a2 = rnd_el(F, rng);
      Fel b = unipotent_shift(F, a, rnd_sub(F, rng));
      Fel b2 = unipotent_shift(F, a2, rnd_sub(F, rng));
      Mat3 u = unipotent(F, a, b), u2 = unipotent(F, a2, b2);

      // product law: shifts compose with a Hermitian correction term
      Mat3 lhs = mat_mul(F, u, u2);
      Mat3 rhs = unipotent(F, F.add(a, a2),
                           F.sub(F.add(b, b2), F.mul(a, F.conj(a2))));
      CHECK(lhs == rhs);

      // inverse law
      CHECK(mat_inv(F, u) == unipotent(F, F.neg(a), F.conj(b)));

      // torus conjugation rescales the parameters by k^{2q−1} and k^{q+1}
      Fel k = 0;
      while (k == 0) k = rnd_el(F, rng);
      Mat3 h = torus(F, k);
      Mat3 conj_u = mat_mul(F, mat_mul(F, mat_inv(F, h), u), h);
      CHECK(conj_u == unipotent(F, F.mul(F.pow(k, 2 * lq - 1), a),
                                F.mul(F.pow(k, lq + 1), b)));

      // weyl element: involutory, inverts the torus through x ↦ x^{−q}
      Mat3 w = weyl(F);
      CHECK(mat_mul(F, w, w) == mat_identity());
      CHECK(mat_mul(F, mat_mul(F, w, h), w) == torus(F, F.pow(k, -lq)));
    }
  }
}

TEST_CASE("orbit size matches the closed form q²(q³+1)/gcd(3,q+1)") {
  {
    Action A(field_for(7));
    CHECK(A.size() == 16856);
  }
  {
    Action A(field_for(9));
    CHECK(A.size() == 59130);
  }
}

TEST_CASE("stabilizer of the base member: order, membership, generation") {
  const Field& F = field_for(7);
  Action A(F);
  const auto& M = A.point_stabilizer();
  CHECK(M.size() == 336);  // q(q²−1)
  CHECK(std::is_sorted(M.begin(), M.end()));

  // every element fixes member 0 (exact point-set recomputation)
  auto base_pts = A.member_points(0);
  auto base_packs = packed_points(base_pts);
  for (const auto& m : M) {
    bool fixes = true;
    for (const auto& x : base_pts)
      if (!sorted_contains(base_packs, pack(normalize(F, vec_mat(F, x, m))))) {
        fixes = false;
        break;
      }
    CHECK(fixes);
  }

  // closed under multiplication (sampled) and inverse-closed
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    const Mat3& x = M[rng() % M.size()];
    const Mat3& y = M[rng() % M.size()];
    Mat3 xy = normalize_mat(F, mat_mul(F, x, y));
    CHECK(std::binary_search(M.begin(), M.end(), xy));
    Mat3 xinv = normalize_mat(F, mat_inv(F, x));
    CHECK(std::binary_search(M.begin(), M.end(), xinv));
  }

  // the stored two-element basis regenerates the whole stabilizer
  const auto& gens = A.stabilizer_generators();
  REQUIRE(gens.size() == 2);
  std::set<Mat3> S{mat_identity()};
  std::vector<Mat3> queue{mat_identity()};
  while (!queue.empty()) {
    Mat3 x = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      Mat3 y = normalize_mat(F, mat_mul(F, x, g));
      if (S.insert(y).second) queue.push_back(y);
    }
  }
  CHECK(S.size() == M.size());
}

TEST_CASE("transversal, action, transport, probe equivalence") {
  const Field& F = field_for(7);
  Action A(F);
  std::mt19937_64 rng(2);
  auto gens = special_unitary_generators(F);

  for (int t = 0; t < 60; ++t) {
    std::uint32_t i = static_cast<std::uint32_t>(rng() % A.size());
    // the transversal element reaches member i from member 0
    CHECK(A.act(0, A.transversal(i)) == i);
    // and its inverse returns home
    CHECK(A.act(i, A.to_base(i)) == 0);
    // action is a right action: (w·g)·g' = w·(gg')
    Mat3 g = random_word(gens, F, rng), g2 = random_word(gens, F, rng);
    CHECK(A.act(A.act(i, g), g2) == A.act(i, mat_mul(F, g, g2)));
  }

  // probe agrees with the exact "does g fix member i" predicate
  for (int t = 0; t < 250; ++t) {
    std::uint32_t i = static_cast<std::uint32_t>(rng() % A.size());
    auto pr = A.probe(i);
    Mat3 g = random_word(gens, F, rng);
    CHECK(A.stabilizes(pr, g) == (A.act(i, g) == i));
  }
  // including across the whole stabilizer at the base member
  auto pr0 = A.probe(0);
  for (const auto& m : A.point_stabilizer()) CHECK(A.stabilizes(pr0, m));
}

TEST_CASE("isotropic-point transport to the anchor") {
  const Field& F = field_for(7);
  Action A(F);
  const Plane& P = A.plane();
  const Vec3 anchor{1, 0, 0};
  unsigned count = 0;
  for (const auto& pt : A.member_points(0)) {
    if (!P.isotropic(pt)) continue;
    ++count;
    const Mat3& m = A.move_iso_to_anchor(pt);
    CHECK(normalize(F, vec_mat(F, pt, m)) == anchor);
    CHECK(A.act(0, m) == 0);
  }
  CHECK(count == 8);  // q+1
  CHECK_THROWS([&] { (void)A.move_iso_to_anchor(Vec3{0, 1, 0}); }());  // not isotropic
}

TEST_CASE("cache roundtrip and corruption rejection") {
  const Field& F = field_for(7);
  const std::string path = "test_cache_q7.orbit";
  std::remove(path.c_str());

  Action a1(F, path);  // builds and saves
  Action a2(F, path);  // loads
  CHECK(a1.size() == a2.size());
  CHECK(a2.point_stabilizer() == a1.point_stabilizer());
  CHECK(a2.stabilizer_generators() == a1.stabilizer_generators());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    auto i = static_cast<std::uint32_t>(rng() % a1.size());
    CHECK(a1.transversal(i) == a2.transversal(i));
  }

  // flip one byte in the middle: the loader must reject and rebuild
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40 + 9 * 2 * 1000);
    char c;
    f.seekg(40 + 9 * 2 * 1000);
    f.get(c);
    f.seekp(40 + 9 * 2 * 1000);
    f.put(static_cast<char>(c ^ 0x5));
  }
  Action a3(F, path);
  CHECK(a3.size() == a1.size());
  CHECK(a3.point_stabilizer() == a1.point_stabilizer());
  std::remove(path.c_str());
}
