#include "baeract/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace baeract {

Mat3 mat_identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Mat3 mat_mul(const Field& F, const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      Fel aik = a[3 * i + k];
      if (aik == 0) continue;
      for (int j = 0; j < 3; ++j)
        if (b[3 * k + j] != 0)
          r[3 * i + j] = F.add(r[3 * i + j], F.mul(aik, b[3 * k + j]));
    }
  return r;
}

Vec3 vec_mat(const Field& F, const Vec3& v, const Mat3& g) {
  Vec3 r{};
  for (int k = 0; k < 3; ++k) {
    if (v[k] == 0) continue;
    for (int j = 0; j < 3; ++j)
      if (g[3 * k + j] != 0) r[j] = F.add(r[j], F.mul(v[k], g[3 * k + j]));
  }
  return r;
}

Fel mat_det(const Field& F, const Mat3& g) {
  Fel t0 = F.mul(g[0], F.sub(F.mul(g[4], g[8]), F.mul(g[5], g[7])));
  Fel t1 = F.mul(g[1], F.sub(F.mul(g[3], g[8]), F.mul(g[5], g[6])));
  Fel t2 = F.mul(g[2], F.sub(F.mul(g[3], g[7]), F.mul(g[4], g[6])));
  return F.add(F.sub(t0, t1), t2);
}

Mat3 mat_inv(const Field& F, const Mat3& g) {
  Fel det = mat_det(F, g);
  if (det == 0) throw std::domain_error("singular matrix");
  Fel s = F.inv(det);
  auto cof = [&](int r0, int r1, int c0, int c1) {
    return F.sub(F.mul(g[3 * r0 + c0], g[3 * r1 + c1]),
                 F.mul(g[3 * r0 + c1], g[3 * r1 + c0]));
  };
  Mat3 inv;
  // adjugate: inv[c][r] = (−1)^{r+c} · minor(r, c)
  inv[0] = F.mul(s, cof(1, 2, 1, 2));
  inv[3] = F.mul(s, F.neg(cof(1, 2, 0, 2)));
  inv[6] = F.mul(s, cof(1, 2, 0, 1));
  inv[1] = F.mul(s, F.neg(cof(0, 2, 1, 2)));
  inv[4] = F.mul(s, cof(0, 2, 0, 2));
  inv[7] = F.mul(s, F.neg(cof(0, 2, 0, 1)));
  inv[2] = F.mul(s, cof(0, 1, 1, 2));
  inv[5] = F.mul(s, F.neg(cof(0, 1, 0, 2)));
  inv[8] = F.mul(s, cof(0, 1, 0, 1));
  return inv;
}

Mat3 mat_conj_transpose(const Field& F, const Mat3& g) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[3 * i + j] = F.conj(g[3 * j + i]);
  return r;
}

Mat3 mat_scale(const Field& F, Fel c, const Mat3& g) {
  Mat3 r;
  for (int k = 0; k < 9; ++k) r[k] = F.mul(c, g[k]);
  return r;
}

Vec3 normalize(const Field& F, Vec3 v) {
  for (int k = 0; k < 3; ++k)
    if (v[k] != 0) {
      if (v[k] != 1) {
        Fel s = F.inv(v[k]);
        for (int j = k; j < 3; ++j) v[j] = F.mul(v[j], s);
      }
      return v;
    }
  throw std::domain_error("zero vector has no projective representative");
}

Mat3 normalize_mat(const Field& F, Mat3 g) {
  for (int k = 0; k < 9; ++k)
    if (g[k] != 0) {
      if (g[k] != 1) {
        Fel s = F.inv(g[k]);
        for (int j = k; j < 9; ++j) g[j] = F.mul(g[j], s);
      }
      return g;
    }
  throw std::domain_error("zero matrix has no projective representative");
}

Vec3 cross(const Field& F, const Vec3& a, const Vec3& b) {
  return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
          F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
          F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}

std::vector<std::uint64_t> packed_points(const std::vector<Vec3>& pts) {
  std::vector<std::uint64_t> out;
  out.reserve(pts.size());
  for (const auto& v : pts) out.push_back(pack(v));
  return out;
}

// --- Plane ----------------------------------------------------------------------

Plane::Plane(const Field& F, Gram gram) : F_(&F), gram_(gram) {
  J_ = (gram == Gram::identity) ? Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1}
                                : Mat3{0, 0, 1, 0, 1, 0, 1, 0, 0};
  const unsigned qq = F.qq();
  points_.reserve(static_cast<std::size_t>(qq) * qq + qq + 1);
  for (unsigned b = 0; b < qq; ++b)
    for (unsigned c = 0; c < qq; ++c)
      points_.push_back({1, static_cast<Fel>(b), static_cast<Fel>(c)});
  for (unsigned c = 0; c < qq; ++c) points_.push_back({0, 1, static_cast<Fel>(c)});
  points_.push_back({0, 0, 1});
  std::sort(points_.begin(), points_.end(),
            [](const Vec3& a, const Vec3& b) { return pack(a) < pack(b); });
  for (const auto& v : points_)
    if (isotropic(v)) iso_.push_back(v);
}

Vec3 Plane::perp_coords(const Vec3& y) const {
  const Field& F = *F_;
  Vec3 l{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Fel j = J_[3 * r + c];
      if (j != 0 && y[c] != 0) l[r] = F.add(l[r], F.mul(j, F.conj(y[c])));
    }
  return l;
}

Vec3 Plane::line_through(const Vec3& a, const Vec3& b) const {
  return cross(*F_, a, b);
}

std::vector<Vec3> Plane::points_on_line(const Vec3& line) const {
  const Field& F = *F_;
  // Two independent solutions of x·ℓᵀ = 0, then the full projective pencil.
  int k = 0;
  while (line[k] == 0) ++k;
  int u = (k + 1) % 3, v = (k + 2) % 3;
  Vec3 a{}, b{};
  a[u] = 1;
  a[k] = F.neg(F.div(line[u], line[k]));
  b[v] = 1;
  b[k] = F.neg(F.div(line[v], line[k]));
  std::vector<Vec3> out;
  out.reserve(F.qq() + 1);
  out.push_back(normalize(F, b));
  for (unsigned t = 0; t < F.qq(); ++t) {
    Vec3 x;
    for (int j = 0; j < 3; ++j)
      x[j] = F.add(a[j], F.mul(static_cast<Fel>(t), b[j]));
    out.push_back(normalize(F, x));
  }
  std::sort(out.begin(), out.end(),
            [](const Vec3& p, const Vec3& r) { return pack(p) < pack(r); });
  return out;
}

Fel Plane::isometry_factor(const Mat3& g) const {
  const Field& F = *F_;
  Mat3 G = mat_mul(F, mat_mul(F, g, J_), mat_conj_transpose(F, g));
  int ref = 0;
  while (J_[ref] == 0) ++ref;
  if (G[ref] == 0) return 0;
  Fel c = F.div(G[ref], J_[ref]);
  if (!F.in_subfield(c)) return 0;
  for (int k = 0; k < 9; ++k)
    if (G[k] != F.mul(c, J_[k])) return 0;
  return c;
}

Mat3 gram_converter(const Field& F) {
  Plane P(F, Gram::identity);
  const auto& iso = P.isotropic_points();
  Vec3 v1 = iso.front();
  Vec3 v3{};
  bool found = false;
  for (const auto& w : iso) {
    Fel h = P.herm(v1, w);
    if (h != 0) {
      Fel lam = F.conj(F.inv(h));  // herm(v1, lam·w) = conj(lam)·h = 1
      for (int j = 0; j < 3; ++j) v3[j] = F.mul(lam, w[j]);
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("no hyperbolic pair found");
  Vec3 cv1{F.conj(v1[0]), F.conj(v1[1]), F.conj(v1[2])};
  Vec3 cv3{F.conj(v3[0]), F.conj(v3[1]), F.conj(v3[2])};
  Vec3 v2 = cross(F, cv1, cv3);
  Fel s = P.herm(v2, v2);
  if (s == 0 || !F.in_subfield(s)) throw std::logic_error("degenerate middle vector");
  Fel target = F.inv(s);
  Fel mu = 0;
  for (unsigned c = 1; c < F.qq(); ++c)
    if (F.norm(static_cast<Fel>(c)) == target) {
      mu = static_cast<Fel>(c);
      break;
    }
  if (mu == 0) throw std::logic_error("norm equation unsolvable");
  for (int j = 0; j < 3; ++j) v2[j] = F.mul(mu, v2[j]);

  Mat3 C{v1[0], v1[1], v1[2], v2[0], v2[1], v2[2], v3[0], v3[1], v3[2]};
  // C·conj(C)ᵀ must equal the antidiagonal Gram exactly.
  Mat3 G = mat_mul(F, C, mat_conj_transpose(F, C));
  Mat3 JA{0, 0, 1, 0, 1, 0, 1, 0, 0};
  if (G != JA) throw std::logic_error("coordinate change failed verification");
  return C;
}

// --- Baer subplanes ----------------------------------------------------------------

namespace {

/// In-place reduced row echelon form of a 3×6 matrix with entries in F_q.
void rref36(const Field& F, std::array<Fel, 18>& m) {
  int row = 0;
  for (int col = 0; col < 6 && row < 3; ++col) {
    int piv = -1;
    for (int r = row; r < 3; ++r)
      if (m[6 * r + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = col; c < 6; ++c) std::swap(m[6 * piv + c], m[6 * row + c]);
    Fel s = F.inv(m[6 * row + col]);
    if (s != 1)
      for (int c = col; c < 6; ++c) m[6 * row + c] = F.mul(m[6 * row + c], s);
    for (int r = 0; r < 3; ++r) {
      Fel f = m[6 * r + col];
      if (r == row || f == 0) continue;
      for (int c = col; c < 6; ++c)
        m[6 * r + c] = F.sub(m[6 * r + c], F.mul(f, m[6 * row + c]));
    }
    ++row;
  }
}

}  // namespace

SubplaneKey subplane_key(const Field& F, const Mat3& basis) {
  SubplaneKey best;
  bool first = true;
  Fel lam = 1;
  for (unsigned j = 0; j <= F.q(); ++j) {  // coset representatives of F_q^* scalings
    std::array<Fel, 18> m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        Fel e = F.mul(lam, basis[3 * r + c]);
        m[6 * r + 2 * c] = F.real_part(e);
        m[6 * r + 2 * c + 1] = F.i_part(e);
      }
    rref36(F, m);
    SubplaneKey k;
    for (int t = 0; t < 18; ++t)
      k.digits[t] = static_cast<std::uint8_t>(F.subfield_index(m[t]));
    if (first || k < best) {
      best = k;
      first = false;
    }
    lam = F.mul(lam, F.xi());
  }
  return best;
}

std::vector<Vec3> subplane_points(const Field& F, const Mat3& basis) {
  const Vec3 a1{basis[0], basis[1], basis[2]};
  const Vec3 a2{basis[3], basis[4], basis[5]};
  const Vec3 a3{basis[6], basis[7], basis[8]};
  std::vector<Vec3> out;
  out.reserve(F.q() * F.q() + F.q() + 1);
  for (Fel b : F.subfield())
    for (Fel c : F.subfield()) {
      Vec3 v;
      for (int j = 0; j < 3; ++j)
        v[j] = F.add(a1[j], F.add(F.mul(b, a2[j]), F.mul(c, a3[j])));
      out.push_back(normalize(F, v));
    }
  for (Fel c : F.subfield()) {
    Vec3 v;
    for (int j = 0; j < 3; ++j) v[j] = F.add(a2[j], F.mul(c, a3[j]));
    out.push_back(normalize(F, v));
  }
  out.push_back(normalize(F, a3));
  std::sort(out.begin(), out.end(),
            [](const Vec3& x, const Vec3& y) { return pack(x) < pack(y); });
  return out;
}

bool subplane_contains(const Field& F, const Mat3& basis_inv, const Vec3& pt) {
  Vec3 x = vec_mat(F, pt, basis_inv);
  int j0 = 0;
  while (x[j0] == 0) ++j0;
  Fel s = F.inv(x[j0]);
  for (int k = j0; k < 3; ++k)
    if (!F.in_subfield(F.mul(x[k], s))) return false;
  return true;
}

// --- intersection profiles -----------------------------------------------------------

const char* to_string(MeetShape s) {
  switch (s) {
    case MeetShape::empty: return "empty";
    case MeetShape::single_isotropic: return "single_isotropic";
    case MeetShape::single_nonisotropic: return "single_nonisotropic";
    case MeetShape::pole_and_isotropic: return "pole_and_isotropic";
    case MeetShape::triangle: return "triangle";
    case MeetShape::tangent_subline: return "tangent_subline";
    case MeetShape::subline_plus_pole: return "subline_plus_pole";
    case MeetShape::other: return "other";
  }
  return "other";
}

std::vector<Vec3> intersect_point_sets(const std::vector<Vec3>& a,
                                       const std::vector<Vec3>& b) {
  std::vector<Vec3> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    std::uint64_t pa = pack(a[i]), pb = pack(b[j]);
    if (pa < pb)
      ++i;
    else if (pb < pa)
      ++j;
    else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

MeetProfile meet_profile(const Plane& P, const std::vector<Vec3>& a,
                         const std::vector<Vec3>& b) {
  const Field& F = P.field();
  auto pts = intersect_point_sets(a, b);
  MeetProfile prof;
  prof.points = static_cast<unsigned>(pts.size());
  for (const auto& v : pts)
    if (P.isotropic(v)) ++prof.isotropic;
  if (pts.size() <= 2) {
    prof.max_collinear = prof.points;
  } else {
    unsigned best = 2;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        Vec3 line = cross(F, pts[i], pts[j]);
        unsigned n = 0;
        for (const auto& x : pts)
          if (P.on_line(x, line)) ++n;
        best = std::max(best, n);
      }
    prof.max_collinear = best;
  }

  const unsigned q = F.q();
  const unsigned n = prof.points, iso = prof.isotropic, mc = prof.max_collinear;
  if (n == 0)
    prof.shape = MeetShape::empty;
  else if (n == 1)
    prof.shape = iso ? MeetShape::single_isotropic : MeetShape::single_nonisotropic;
  else if (n == 2 && iso == 1)
    prof.shape = MeetShape::pole_and_isotropic;
  else if (n == 3 && iso == 0 && mc == 2)
    prof.shape = MeetShape::triangle;
  else if (n == q + 1 && iso == 1 && mc == q + 1)
    prof.shape = MeetShape::tangent_subline;
  else if (n == q + 2 && mc == q + 1)
    prof.shape = MeetShape::subline_plus_pole;
  else
    prof.shape = MeetShape::other;
  return prof;
}

}  // namespace baeract
