#pragma once
// =============================================================================
// field.hpp — exact arithmetic for the tower F_p ⊆ F_q ⊆ F_{q²}, q = p^m.
//
// Elements of F_{q²} are represented as polynomial residues over F_p modulo a
// deterministic irreducible polynomial of degree 2m, encoded as packed base-p
// integer codes (coefficient of x^k is digit k).  The middle field F_q is not
// a separate type: it is the fixed set of the q-power Frobenius, and every
// operation stays inside one code space.  All arithmetic is table driven and
// allocation free after construction.
// =============================================================================

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace baeract {

/// Element code: packed base-p coefficient vector, digit k = coeff of x^k.
using Fel = std::uint16_t;

/// Arithmetic context for one (p, m).  Immutable after construction; cheap to
/// pass by const reference, expensive to build (tables of size O(q²)).
class Field {
public:
  /// Builds the tower for an odd prime p and extension degree m ≥ 1.
  /// The modulus is the monic irreducible polynomial of degree 2m over F_p
  /// whose non-leading coefficient vector, packed as Σ c_k p^k, is smallest —
  /// a deterministic choice, so codes mean the same thing across runs.
  Field(unsigned p, unsigned m);

  // --- parameters -----------------------------------------------------------
  [[nodiscard]] unsigned p() const { return p_; }
  [[nodiscard]] unsigned m() const { return m_; }
  [[nodiscard]] unsigned q() const { return q_; }
  [[nodiscard]] unsigned qq() const { return qq_; }
  /// gcd(3, q+1): the index of the derived subgroup situation that splits all
  /// counting formulas downstream.
  [[nodiscard]] unsigned d() const { return d_; }
  /// Non-leading modulus coefficients c_0..c_{2m-1}.
  [[nodiscard]] const std::vector<std::uint8_t>& modulus() const { return mod_; }

  // --- distinguished elements ------------------------------------------------
  /// Smallest-code generator of the cyclic group F_{q²}^*.
  [[nodiscard]] Fel xi() const { return xi_; }
  /// theta = xi^{q+1}: a generator of F_q^*, a nonsquare in F_q.
  [[nodiscard]] Fel theta() const { return theta_; }
  /// Smallest-code square root of theta; i² = theta, i^q = −i, trace(i) = 0.
  [[nodiscard]] Fel i_unit() const { return i_unit_; }
  [[nodiscard]] Fel one() const { return 1; }

  // --- ring operations (hot; inline) -----------------------------------------
  [[nodiscard]] Fel add(Fel a, Fel b) const {
    std::uint32_t s = expand_[a] + expand_[b];
    std::uint32_t t = (s + wrap_) & 0x80808080u;
    return compress(s - (t >> 7) * p_);
  }
  [[nodiscard]] Fel neg(Fel a) const { return neg_[a]; }
  [[nodiscard]] Fel sub(Fel a, Fel b) const { return add(a, neg_[b]); }
  [[nodiscard]] Fel mul(Fel a, Fel b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  [[nodiscard]] Fel inv(Fel a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[ord_ - log_[a]];
  }
  [[nodiscard]] Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
  /// a^e for any signed exponent (a ≠ 0 when e < 0).
  [[nodiscard]] Fel pow(Fel a, long long e) const {
    if (a == 0) {
      if (e <= 0) throw std::domain_error("0^nonpositive");
      return 0;
    }
    long long r = static_cast<long long>(log_[a]) * (e % ord_) % ord_;
    if (r < 0) r += ord_;
    return exp_[static_cast<std::uint32_t>(r)];
  }

  // --- tower structure --------------------------------------------------------
  /// Conjugation x ↦ x^q (the involutory automorphism fixing F_q).
  [[nodiscard]] Fel conj(Fel a) const { return frob_[a]; }
  /// Norm to the middle field: x^{q+1} ∈ F_q.
  [[nodiscard]] Fel norm(Fel a) const { return mul(a, frob_[a]); }
  /// Trace to the middle field: x + x^q ∈ F_q.
  [[nodiscard]] Fel trace(Fel a) const { return add(a, frob_[a]); }
  [[nodiscard]] bool in_subfield(Fel a) const { return frob_[a] == a; }
  /// The q elements of F_q, sorted by code.
  [[nodiscard]] const std::vector<Fel>& subfield() const { return subfield_; }
  /// Index of a in subfield(), or throws if a ∉ F_q.
  [[nodiscard]] unsigned subfield_index(Fel a) const {
    unsigned i = sidx_[a];
    if (i == 0xFFFFu) throw std::domain_error("not a subfield element");
    return i;
  }
  /// Decomposition x = u + v·i with u, v ∈ F_q (basis {1, i_unit}).
  [[nodiscard]] Fel real_part(Fel a) const { return re_[a]; }
  [[nodiscard]] Fel i_part(Fel a) const { return im_[a]; }

  // --- multiplicative classifiers ---------------------------------------------
  /// Whether nonzero a lies in (F_{q²}^*)^3.  Cubes have index gcd(3, q²−1):
  /// 3 for p ≠ 3, and 1 for p = 3 (then every element is a cube).
  [[nodiscard]] bool is_cube(Fel a) const {
    if (a == 0) throw std::domain_error("cube test of zero");
    return log_[a] % cube_index_ == 0;
  }
  /// Quadratic character within F_q: +1 square, −1 nonsquare, 0 zero.
  /// The argument must lie in F_q.
  [[nodiscard]] int quadratic_character(Fel a) const {
    if (a == 0) return 0;
    if (!in_subfield(a)) throw std::domain_error("character argument outside F_q");
    // a = theta^k with theta a generator of F_q^*: square in F_q iff k even;
    // log(a) is a multiple of q+1 since a ∈ ⟨theta⟩ = ⟨xi^{q+1}⟩.
    return (log_[a] / (q_ + 1)) % 2 == 0 ? 1 : -1;
  }

  /// Lift of a small integer into the prime field.
  [[nodiscard]] Fel from_int(unsigned long long n) const {
    return static_cast<Fel>(n % p_);
  }

  /// Discrete log with respect to xi (a ≠ 0).
  [[nodiscard]] std::uint32_t dlog(Fel a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
  }

private:
  [[nodiscard]] Fel compress(std::uint32_t e) const {
    std::uint32_t b0 = e & 0xFF, b1 = (e >> 8) & 0xFF, b2 = (e >> 16) & 0xFF,
                  b3 = (e >> 24) & 0xFF;
    return static_cast<Fel>(b0 + p_ * (b1 + p_ * (b2 + p_ * b3)));
  }

  unsigned p_, m_, q_, qq_, d_;
  std::uint32_t ord_;         // q² − 1
  std::uint32_t wrap_;        // SWAR constant (128−p) replicated per byte
  unsigned cube_index_;       // gcd(3, q²−1)
  Fel xi_, theta_, i_unit_;
  std::vector<std::uint8_t> mod_;
  std::vector<std::uint32_t> expand_;  // code -> digit bytes
  std::vector<std::uint32_t> log_;     // code -> discrete log (xi base)
  std::vector<Fel> exp_;               // length 2·ord_: exp_[k] = xi^k, unreduced index
  std::vector<Fel> neg_, frob_, re_, im_;
  std::vector<Fel> subfield_;
  std::vector<std::uint16_t> sidx_;
};

}  // namespace baeract
