#include "baeract/field.hpp"

#include <algorithm>
#include <numeric>

namespace baeract {
namespace {

// --- small dense polynomials over F_p (coefficient vectors, c[k] = x^k) -----

using Poly = std::vector<std::uint8_t>;

void trim(Poly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  // Fermat: a^{p-2} mod p (p prime, a ≠ 0)
  unsigned r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Remainder of a modulo b (b monic-led after normalization), in place on a copy.
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  unsigned led = inv_mod(b.back(), p);
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
    unsigned c = a.back() * led % p;
    if (c != 0) {
      std::size_t off = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) {
        unsigned t = a[off + k] + p - c * b[k] % p;
        a[off + k] = static_cast<std::uint8_t>(t % p);
      }
    }
    a.pop_back();
    trim(a);
    if (a.size() < b.size()) break;
  }
  trim(a);
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, unsigned p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint8_t>((r[i + j] + a[i] * b[j]) % p);
  }
  trim(r);
  return poly_mod(std::move(r), mod, p);
}

bool is_zero(const Poly& a) { return a.size() == 1 && a[0] == 0; }

/// Irreducibility of a monic polynomial by trial division with every monic
/// polynomial of degree 1..deg/2.  Fine at the degrees used here (≤ 4).
bool irreducible(const Poly& f, unsigned p) {
  unsigned deg = static_cast<unsigned>(f.size()) - 1;
  for (unsigned t = 1; t <= deg / 2; ++t) {
    unsigned count = 1;
    for (unsigned k = 0; k < t; ++k) count *= p;
    for (unsigned code = 0; code < count; ++code) {
      Poly g(t + 1, 0);
      unsigned c = code;
      for (unsigned k = 0; k < t; ++k) {
        g[k] = static_cast<std::uint8_t>(c % p);
        c /= p;
      }
      g[t] = 1;
      if (is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Field::Field(unsigned p, unsigned m) : p_(p), m_(m) {
  if (p < 3 || p > 127) throw std::invalid_argument("p must be an odd prime in [3,127]");
  for (unsigned f = 2; f * f <= p; ++f)
    if (p % f == 0) throw std::invalid_argument("p must be prime");
  if (m < 1 || m > 2) throw std::invalid_argument("extension degree m must be 1 or 2");

  q_ = 1;
  for (unsigned k = 0; k < m; ++k) q_ *= p;
  qq_ = q_ * q_;
  if (qq_ > 0xFFFFu) throw std::invalid_argument("q too large for 16-bit codes");
  d_ = std::gcd(3u, q_ + 1);
  ord_ = qq_ - 1;
  cube_index_ = std::gcd(3u, ord_);
  wrap_ = (128u - p_) * 0x01010101u;

  const unsigned deg = 2 * m;

  // Deterministic modulus: smallest packed non-leading coefficient vector.
  mod_.assign(deg, 0);
  {
    unsigned long long total = 1;
    for (unsigned k = 0; k < deg; ++k) total *= p;
    bool found = false;
    for (unsigned long long code = 0; code < total && !found; ++code) {
      Poly f(deg + 1, 0);
      unsigned long long c = code;
      for (unsigned k = 0; k < deg; ++k) {
        f[k] = static_cast<std::uint8_t>(c % p);
        c /= p;
      }
      f[deg] = 1;
      if (irreducible(f, p)) {
        for (unsigned k = 0; k < deg; ++k) mod_[k] = f[k];
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");
  }

  Poly modulus(deg + 1, 0);
  for (unsigned k = 0; k < deg; ++k) modulus[k] = mod_[k];
  modulus[deg] = 1;

  auto code_of = [&](const Poly& a) {
    std::uint32_t c = 0, mul = 1;
    for (std::size_t k = 0; k < a.size(); ++k) {
      c += a[k] * mul;
      mul *= p_;
    }
    return static_cast<Fel>(c);
  };
  auto poly_of = [&](Fel code) {
    Poly a(deg, 0);
    unsigned c = code;
    for (unsigned k = 0; k < deg; ++k) {
      a[k] = static_cast<std::uint8_t>(c % p_);
      c /= p_;
    }
    trim(a);
    return a;
  };

  // Smallest-code generator of F_{q²}^*.
  const auto facs = prime_factors(ord_);
  auto slow_pow = [&](const Poly& a, std::uint32_t e) {
    Poly r{1}, b = a;
    while (e) {
      if (e & 1) r = poly_mul_mod(r, b, modulus, p_);
      b = poly_mul_mod(b, b, modulus, p_);
      e >>= 1;
    }
    return r;
  };
  xi_ = 0;
  for (Fel c = 2; c < qq_; ++c) {
    Poly a = poly_of(c);
    bool gen = true;
    for (auto r : facs) {
      Poly t = slow_pow(a, ord_ / r);
      if (t.size() == 1 && t[0] == 1) {
        gen = false;
        break;
      }
    }
    if (gen) {
      xi_ = c;
      break;
    }
  }
  if (xi_ == 0) throw std::logic_error("no multiplicative generator found");

  // Discrete log / antilog tables.
  exp_.assign(2 * ord_ - 1, 0);
  log_.assign(qq_, 0);
  {
    Poly acc{1};
    const Poly gen = poly_of(xi_);
    for (std::uint32_t k = 0; k < ord_; ++k) {
      Fel c = code_of(acc);
      exp_[k] = c;
      log_[c] = k;
      acc = poly_mul_mod(acc, gen, modulus, p_);
    }
    if (!(acc.size() == 1 && acc[0] == 1))
      throw std::logic_error("generator order mismatch");
    for (std::uint32_t k = ord_; k < 2 * ord_ - 1; ++k) exp_[k] = exp_[k - ord_];
  }

  // Digit expansion and negation.
  expand_.assign(qq_, 0);
  neg_.assign(qq_, 0);
  for (std::uint32_t c = 0; c < qq_; ++c) {
    std::uint32_t e = 0, x = c, nc = 0, mul = 1;
    for (unsigned k = 0; k < 4; ++k) {
      unsigned dgt = x % p_;
      x /= p_;
      e |= dgt << (8 * k);
      nc += ((p_ - dgt) % p_) * mul;
      mul *= p_;
    }
    expand_[c] = e;
    neg_[c] = static_cast<Fel>(nc);
  }

  // Frobenius x ↦ x^q.
  frob_.assign(qq_, 0);
  for (std::uint32_t k = 0; k < ord_; ++k)
    frob_[exp_[k]] = exp_[static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(k) * q_) % ord_)];

  // Middle field and membership index.
  subfield_.clear();
  sidx_.assign(qq_, 0xFFFFu);
  for (std::uint32_t c = 0; c < qq_; ++c)
    if (frob_[c] == c) {
      sidx_[c] = static_cast<std::uint16_t>(subfield_.size());
      subfield_.push_back(static_cast<Fel>(c));
    }
  if (subfield_.size() != q_) throw std::logic_error("subfield size mismatch");

  theta_ = exp_[q_ + 1];

  // i with i² = theta (theta has even discrete log q+1, so a root exists).
  i_unit_ = 0;
  for (Fel c = 1; c < qq_; ++c)
    if (mul(c, c) == theta_) {
      i_unit_ = c;
      break;
    }
  if (i_unit_ == 0 || in_subfield(i_unit_))
    throw std::logic_error("no valid square root of theta");
  if (trace(i_unit_) != 0) throw std::logic_error("i must have zero trace");

  // Decomposition x = u + v·i over the basis {1, i}.
  re_.assign(qq_, 0);
  im_.assign(qq_, 0);
  for (Fel u : subfield_)
    for (Fel v : subfield_) {
      Fel c = add(u, mul(v, i_unit_));
      re_[c] = u;
      im_[c] = v;
    }

  // Structural sanity: theta generates F_q^*.
  {
    Fel t = theta_;
    unsigned ord = 1;
    while (t != 1) {
      t = mul(t, theta_);
      ++ord;
      if (ord > q_) throw std::logic_error("theta order overflow");
    }
    if (ord != q_ - 1) throw std::logic_error("theta must generate the subfield units");
  }
}

}  // namespace baeract
