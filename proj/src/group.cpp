#include "baeract/group.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace baeract {

Fel unipotent_shift(const Field& F, Fel a, Fel t) {
  if (!F.in_subfield(t))
    throw std::invalid_argument("shift parameter must lie in F_q");
  Fel half = F.inv(F.from_int(2));
  return F.add(F.mul(F.neg(F.norm(a)), half), F.mul(t, F.i_unit()));
}

Mat3 unipotent(const Field& F, Fel a, Fel b) {
  if (F.add(F.trace(b), F.norm(a)) != 0)
    throw std::invalid_argument("unipotent parameters violate trace(b)+norm(a)=0");
  return {1, a, b, 0, 1, F.neg(F.conj(a)), 0, 0, 1};
}

Mat3 torus(const Field& F, Fel k) {
  if (k == 0) throw std::invalid_argument("torus parameter must be nonzero");
  const auto q = static_cast<long long>(F.q());
  return {F.pow(k, -q), 0, 0, 0, F.pow(k, q - 1), 0, 0, 0, k};
}

Mat3 weyl(const Field& F) { return {0, 0, 1, 0, F.neg(1), 0, 1, 0, 0}; }

std::vector<Mat3> special_unitary_generators(const Field& F) {
  const Fel i = F.i_unit();
  return {unipotent(F, 1, unipotent_shift(F, 1, 0)),
          unipotent(F, i, unipotent_shift(F, i, 0)),
          unipotent(F, 0, i),
          torus(F, F.xi()),
          weyl(F)};
}

std::vector<Mat3> special_unitary_generators(const Field& F, Gram gram) {
  auto gens = special_unitary_generators(F);
  if (gram == Gram::identity) {
    const Mat3 C = gram_converter(F);
    const Mat3 Cinv = mat_inv(F, C);
    for (auto& g : gens) g = mat_mul(F, mat_mul(F, Cinv, g), C);
  }
  return gens;
}

std::set<Mat3> projective_closure(const Field& F, const std::vector<Mat3>& gens,
                                  std::size_t cap) {
  std::set<Mat3> S{mat_identity()};
  std::vector<Mat3> queue{mat_identity()};
  while (!queue.empty()) {
    Mat3 x = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      Mat3 y = normalize_mat(F, mat_mul(F, x, g));
      if (S.insert(y).second) {
        if (S.size() > cap)
          throw std::length_error("projective closure exceeds cap");
        queue.push_back(y);
      }
    }
  }
  return S;
}

std::vector<Mat3> subgroup_generators(const Field& F,
                                      const std::vector<Mat3>& elems) {
  const std::size_t n = elems.size();
  const Mat3 id = mat_identity();
  if (n <= 1) return {};
  auto spans = [&](const std::vector<Mat3>& gens) {
    return projective_closure(F, gens, n).size() == n;
  };
  for (const auto& a : elems)
    if (a != id && spans({a})) return {a};
  for (std::size_t a = 0; a < n; ++a) {
    if (elems[a] == id) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (elems[b] == id) continue;
      if (spans({elems[a], elems[b]})) return {elems[a], elems[b]};
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (elems[a] == id) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (elems[b] == id) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (elems[c] == id) continue;
        if (spans({elems[a], elems[b], elems[c]}))
          return {elems[a], elems[b], elems[c]};
      }
    }
  }
  throw std::logic_error("subgroup needs more than three generators");
}

// --- Action ------------------------------------------------------------------------

Action::Action(const Field& F, Gram gram) : F_(&F), plane_(F, gram) { build(); }

Action::Action(const Field& F, const std::string& cache_file, Gram gram)
    : F_(&F), plane_(F, gram) {
  if (!load_cache(cache_file)) {
    build();
    save_cache(cache_file);
  }
}

void Action::build() {
  const Field& F = *F_;
  gens_ = special_unitary_generators(F, plane_.gram());

  const auto q = static_cast<std::uint64_t>(F.q());
  const std::uint64_t expected = q * q * (q * q * q + 1) / F.d();

  T_.clear();
  index_.clear();
  T_.reserve(expected);
  index_.reserve(2 * expected);
  T_.push_back(mat_identity());
  index_.emplace(subplane_key(F, T_[0]), 0);
  for (std::uint32_t head = 0; head < T_.size(); ++head) {
    const Mat3 cur = T_[head];  // copy: T_ may reallocate while we push
    for (const auto& g : gens_) {
      Mat3 B = mat_mul(F, cur, g);
      auto [it, fresh] =
          index_.emplace(subplane_key(F, B), static_cast<std::uint32_t>(T_.size()));
      (void)it;
      if (fresh) T_.push_back(B);
    }
  }
  if (T_.size() != expected) throw std::logic_error("orbit size mismatch");

  // Stabilizer of member 0 from Schreier elements T[i]·g·T[j]⁻¹, closed under
  // multiplication until the full projective order q(q²−1) is reached.
  const std::size_t target = static_cast<std::size_t>(q) * (q * q - 1);
  std::vector<Mat3> seeds;
  std::set<Mat3> closure{mat_identity()};
  bool done = false;
  for (std::uint32_t i = 0; i < T_.size() && !done; ++i)
    for (const auto& g : gens_) {
      Mat3 Bg = mat_mul(F, T_[i], g);
      std::uint32_t j = index_.at(subplane_key(F, Bg));
      Mat3 h = normalize_mat(F, mat_mul(F, Bg, mat_inv(F, T_[j])));
      if (closure.count(h)) continue;
      seeds.push_back(h);
      closure = projective_closure(F, seeds, target);
      if (closure.size() == target) {
        done = true;
        break;
      }
    }
  if (!done) throw std::logic_error("stabilizer not fully recovered");
  M_.assign(closure.begin(), closure.end());

  // A two-element generating set (the stabilizer is 2-generated).
  mgens_.clear();
  const Mat3 id = mat_identity();
  for (std::size_t a = 0; a < M_.size() && mgens_.empty(); ++a) {
    if (M_[a] == id) continue;
    for (std::size_t b = a + 1; b < M_.size(); ++b) {
      if (M_[b] == id) continue;
      if (projective_closure(F, {M_[a], M_[b]}, target).size() == target) {
        mgens_ = {M_[a], M_[b]};
        break;
      }
    }
  }
  if (mgens_.empty()) throw std::logic_error("no two-element stabilizer basis");

  finish_tables();
}

void Action::finish_tables() {
  const Field& F = *F_;
  std::vector<Vec3> iso;
  for (const auto& P : subplane_points(F, mat_identity()))
    if (plane_.isotropic(P)) iso.push_back(P);
  if (iso.size() != F.q() + 1)
    throw std::logic_error("base member must carry q+1 isotropic points");
  anchor_ = iso.front();  // smallest in pack order
  iso_to_anchor_.clear();
  for (const auto& P : iso)
    for (const auto& m : M_)
      if (normalize(F, vec_mat(F, P, m)) == anchor_) {
        iso_to_anchor_.emplace(pack(P), m);
        break;
      }
  if (iso_to_anchor_.size() != iso.size())
    throw std::logic_error("anchor transport incomplete");
}

Action::Probe Action::probe(std::uint32_t i) const {
  const Field& F = *F_;
  const Mat3& B = T_[i];
  Probe pr;
  pr.seeds[0] = {B[0], B[1], B[2]};
  pr.seeds[1] = {B[3], B[4], B[5]};
  pr.seeds[2] = {B[6], B[7], B[8]};
  for (int j = 0; j < 3; ++j) {
    pr.seeds[3][j] = F.add(pr.seeds[0][j], pr.seeds[1][j]);
    pr.seeds[4][j] = F.add(pr.seeds[0][j], pr.seeds[2][j]);
  }
  pr.packs = packed_points(member_points(i));
  return pr;
}

bool Action::stabilizes(const Probe& pr, const Mat3& g) const {
  const Field& F = *F_;
  for (const auto& s : pr.seeds)
    if (!sorted_contains(pr.packs, pack(normalize(F, vec_mat(F, s, g)))))
      return false;
  return true;
}

const Mat3& Action::move_iso_to_anchor(const Vec3& pt) const {
  auto it = iso_to_anchor_.find(pack(pt));
  if (it == iso_to_anchor_.end())
    throw std::invalid_argument("not an isotropic point of the base member");
  return it->second;
}

// --- cache ---------------------------------------------------------------------------

namespace {
constexpr char kMagic[8] = {'B', 'A', 'E', 'R', 'A', 'C', 'T', '\x01'};

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <typename T>
bool get(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return static_cast<bool>(in);
}
}  // namespace

bool Action::load_cache(const std::string& path) {
  const Field& F = *F_;
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  in.read(magic, 8);
  if (!in || !std::equal(magic, magic + 8, kMagic)) return false;
  std::uint32_t p = 0, m = 0;
  std::uint8_t gram = 0;
  std::uint64_t count = 0, msize = 0, gcount = 0;
  if (!get(in, p) || !get(in, m) || !get(in, gram) || !get(in, count) ||
      !get(in, msize) || !get(in, gcount))
    return false;
  if (p != F.p() || m != F.m()) return false;
  if (gram != static_cast<std::uint8_t>(plane_.gram())) return false;

  const auto q = static_cast<std::uint64_t>(F.q());
  if (count != q * q * (q * q * q + 1) / F.d()) return false;
  if (msize != q * (q * q - 1) || gcount != 2) return false;

  std::vector<Mat3> T(count);
  in.read(reinterpret_cast<char*>(T.data()),
          static_cast<std::streamsize>(count * sizeof(Mat3)));
  std::vector<SubplaneKey> keys(count);
  in.read(reinterpret_cast<char*>(keys.data()),
          static_cast<std::streamsize>(count * sizeof(SubplaneKey)));
  std::vector<Mat3> M(msize), mg(gcount);
  in.read(reinterpret_cast<char*>(M.data()),
          static_cast<std::streamsize>(msize * sizeof(Mat3)));
  in.read(reinterpret_cast<char*>(mg.data()),
          static_cast<std::streamsize>(gcount * sizeof(Mat3)));
  if (!in) return false;
  in.get();
  if (!in.eof()) return false;

  // safety: every code must be a valid field element before any table lookup
  const Fel qq = static_cast<Fel>(F.qq() - 1);
  auto in_range = [qq](const Mat3& g) {
    for (Fel e : g)
      if (e > qq) return false;
    return true;
  };
  for (const auto& g : T)
    if (!in_range(g)) return false;
  for (const auto& g : M)
    if (!in_range(g)) return false;
  for (const auto& g : mg)
    if (!in_range(g)) return false;
  for (const auto& k : keys)
    for (auto d : k.digits)
      if (d >= F.q()) return false;

  if (T[0] != mat_identity()) return false;
  // full integrity: every transversal element must be a similitude of the
  // form and must reproduce its stored canonical key exactly
  for (std::uint64_t i = 0; i < count; ++i) {
    if (plane_.isometry_factor(T[i]) == 0) return false;
    if (subplane_key(F, T[i]) != keys[i]) return false;
  }

  T_ = std::move(T);
  index_.clear();
  index_.reserve(2 * count);
  for (std::uint64_t i = 0; i < count; ++i)
    if (!index_.emplace(keys[i], static_cast<std::uint32_t>(i)).second)
      return false;  // duplicate key: corrupt
  M_ = std::move(M);
  mgens_ = std::move(mg);
  gens_ = special_unitary_generators(F, plane_.gram());

  // every stored stabilizer element must stabilize member 0, and the stored
  // two-element basis must regenerate the whole stabilizer
  Probe pr = probe(0);
  for (const auto& m0 : M_)
    if (!stabilizes(pr, m0)) return false;
  if (!std::is_sorted(M_.begin(), M_.end())) return false;
  try {
    if (projective_closure(F, mgens_, M_.size()).size() != M_.size())
      return false;
  } catch (const std::length_error&) {
    return false;
  }

  finish_tables();
  return true;
}

void Action::save_cache(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(kMagic, 8);
    put(out, static_cast<std::uint32_t>(F_->p()));
    put(out, static_cast<std::uint32_t>(F_->m()));
    put(out, static_cast<std::uint8_t>(plane_.gram()));
    put(out, static_cast<std::uint64_t>(T_.size()));
    put(out, static_cast<std::uint64_t>(M_.size()));
    put(out, static_cast<std::uint64_t>(mgens_.size()));
    out.write(reinterpret_cast<const char*>(T_.data()),
              static_cast<std::streamsize>(T_.size() * sizeof(Mat3)));
    std::vector<SubplaneKey> keys(T_.size());
    for (const auto& [k, i] : index_) keys[i] = k;
    out.write(reinterpret_cast<const char*>(keys.data()),
              static_cast<std::streamsize>(keys.size() * sizeof(SubplaneKey)));
    out.write(reinterpret_cast<const char*>(M_.data()),
              static_cast<std::streamsize>(M_.size() * sizeof(Mat3)));
    out.write(reinterpret_cast<const char*>(mgens_.data()),
              static_cast<std::streamsize>(mgens_.size() * sizeof(Mat3)));
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      return;
    }
  }
  std::rename(tmp.c_str(), path.c_str());
}

}  // namespace baeract
