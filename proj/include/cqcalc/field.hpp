#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace cqcalc {

using Scalar = mpq_class;

/// Ground field: either the rationals or a prime field F_p with p < 2^31.
///
/// Scalars are always carried as `mpq_class`.  Over F_p every scalar handed
/// out by the field is an integer in [0, p).
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) {
      throw std::invalid_argument("prime field characteristic out of range: " + std::to_string(p));
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw std::invalid_argument("not a prime: " + std::to_string(p));
    }
    Field f;
    f.kind_ = Kind::PrimeField;
    f.p_ = p;
    return f;
  }

  Kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == Kind::Rationals; }
  std::uint64_t characteristic() const { return kind_ == Kind::Rationals ? 0 : p_; }

  Scalar reduce(const Scalar& x) const {
    if (kind_ == Kind::Rationals) return x;
    return Scalar(residue(x));
  }

  /// Residue of an arbitrary rational in [0, p); throws if the denominator is divisible by p.
  std::uint64_t residue(const Scalar& x) const {
    const mpz_class P(static_cast<unsigned long>(p_));
    mpz_class num = x.get_num() % P;
    if (num < 0) num += P;
    mpz_class den = x.get_den() % P;
    if (den == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p_));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    mpz_class r = (num * inv) % P;
    return r.get_ui();
  }

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }

  Scalar inv(const Scalar& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (kind_ == Kind::Rationals) return 1 / a;
    const mpz_class P(static_cast<unsigned long>(p_));
    mpz_class r;
    mpz_class v(static_cast<unsigned long>(residue(a)));
    mpz_invert(r.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
    return Scalar(r);
  }

  bool is_zero(const Scalar& a) const {
    if (kind_ == Kind::Rationals) return sgn(a) == 0;
    return residue(a) == 0;
  }

  std::string name() const {
    return kind_ == Kind::Rationals ? std::string("Q") : "Fp:" + std::to_string(p_);
  }

  /// Parses "Q" or "Fp:<p>".
  static Field parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s.rfind("Fp:", 0) == 0) return prime(std::stoull(s.substr(3)));
    throw std::invalid_argument("unknown field '" + s + "' (expected Q or Fp:<p>)");
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  Kind kind_ = Kind::Rationals;
  std::uint64_t p_ = 0;
};

inline std::string scalar_to_string(const Scalar& s) { return s.get_str(); }

}  // namespace cqcalc
