#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spslab {

/// GF(q) for primes q < 64 and q in {4, 8, 9}. Elements are 0..q-1; for
/// prime powers an element encodes its polynomial coefficients in base p.
class GaloisField {
 public:
  explicit GaloisField(unsigned q) : q_(q) {
    unsigned modulus = 0;  // reduction polynomial x^k = -(low terms), coefficients base p
    if (q == 4) {
      p_ = 2, k_ = 2, modulus = 0b11;  // x^2 = x + 1
    } else if (q == 8) {
      p_ = 2, k_ = 3, modulus = 0b011;  // x^3 = x + 1
    } else if (q == 9) {
      p_ = 3, k_ = 2, modulus = 2;  // x^2 = -1 = 2
    } else if (is_prime(q) && q < 64) {
      p_ = q, k_ = 1;
    } else {
      throw std::invalid_argument("unsupported field order " + std::to_string(q) +
                                  " (primes below 64 and 4, 8, 9 are supported)");
    }
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        add_[a * q + b] = poly_add(a, b);
        mul_[a * q + b] = k_ == 1 ? (a * b) % q : poly_mul(a, b, modulus);
      }
    inv_.assign(q, 0);
    for (unsigned a = 1; a < q; ++a)
      for (unsigned b = 1; b < q; ++b)
        if (mul(a, b) == 1) inv_[a] = b;
  }

  unsigned order() const { return q_; }
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const {
    for (unsigned b = 0; b < q_; ++b)
      if (add(a, b) == 0) return b;
    return 0;
  }
  unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
  /// Multiplicative inverse; inv(0) is 0.
  unsigned inv(unsigned a) const { return inv_[a]; }
  unsigned pow(unsigned a, unsigned e) const {
    unsigned r = 1;
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  /// x -> x^p.
  unsigned frobenius(unsigned a) const { return pow(a, p_); }

  static bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  unsigned poly_add(unsigned a, unsigned b) const {
    unsigned r = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i, place *= p_) r += ((a / place % p_ + b / place % p_) % p_) * place;
    return r;
  }
  unsigned poly_mul(unsigned a, unsigned b, unsigned modulus) const {
    std::vector<unsigned> ca(k_), cb(k_), prod(2 * k_, 0), red(k_);
    for (unsigned i = 0, place = 1; i < k_; ++i, place *= p_) {
      ca[i] = a / place % p_;
      cb[i] = b / place % p_;
      red[i] = modulus / place % p_;
    }
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    for (unsigned d = 2 * k_ - 1; d >= k_; --d) {
      const unsigned c = prod[d];
      prod[d] = 0;
      for (unsigned i = 0; i < k_; ++i) prod[d - k_ + i] = (prod[d - k_ + i] + c * red[i]) % p_;
    }
    unsigned r = 0;
    for (unsigned i = 0, place = 1; i < k_; ++i, place *= p_) r += prod[i] * place;
    return r;
  }

  unsigned q_ = 2, p_ = 2, k_ = 1;
  std::vector<unsigned> add_, mul_, inv_;
};

}  // namespace spslab
