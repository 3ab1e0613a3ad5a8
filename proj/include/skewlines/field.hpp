// Exact field arithmetic: rationals, prime fields GF(p), and univariate
// quotient extensions K[x]/(f). Elements carry a shared context handle and
// have canonical representations, so equality is plain comparison.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace skewlines {

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

enum class FieldKind { rationals, prime_field, extension };

enum class ArithOp { add, sub, mul, div };

// A field element. Exactly one representation is active, chosen by the
// context kind: a reduced fraction (rationals), a residue in [0,p)
// (prime field), or a fixed-length coefficient vector over the base field
// (extension, reduced mod the modulus).
class Fel {
public:
  Fel() = default;

  const FieldCtxPtr& ctx() const { return ctx_; }
  bool valid() const { return ctx_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  // Total order used for canonical sorting and map keys; compares
  // representations lexicographically within one field.
  friend int cmp(const Fel& a, const Fel& b);
  friend bool operator==(const Fel& a, const Fel& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Fel& a, const Fel& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Fel& a, const Fel& b) { return cmp(a, b) < 0; }

  Fel operator-() const;
  friend Fel operator+(const Fel& a, const Fel& b);
  friend Fel operator-(const Fel& a, const Fel& b);
  friend Fel operator*(const Fel& a, const Fel& b);
  friend Fel operator/(const Fel& a, const Fel& b);
  Fel& operator+=(const Fel& b) { return *this = *this + b; }
  Fel& operator-=(const Fel& b) { return *this = *this - b; }
  Fel& operator*=(const Fel& b) { return *this = *this * b; }
  Fel& operator/=(const Fel& b) { return *this = *this / b; }

  Fel inv() const;
  Fel pow(const mpz_class& e) const;  // negative exponents invert first

  std::string str() const;

  // Representation accessors (valid only for the matching context kind).
  const mpq_class& rational() const { return rat_; }
  long residue() const { return res_; }
  const std::vector<Fel>& coeffs() const { return coef_; }

private:
  friend class FieldCtx;
  FieldCtxPtr ctx_;
  mpq_class rat_;
  long res_ = 0;
  std::vector<Fel> coef_;
};

// Shared, immutable description of a field. All element operations live here;
// Fel operators forward to their context.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
  static FieldCtxPtr rationals();
  static FieldCtxPtr prime_field(long p);
  // modulus: coefficients c0..cd over `base`, monic (cd = 1), d >= 2.
  // `irreducible_hint`: pass true when the caller has already proven
  // irreducibility (e.g. cyclotomic over Q, or a verified quadratic).
  static FieldCtxPtr extension(const FieldCtxPtr& base, std::vector<Fel> modulus,
                               std::optional<bool> irreducible_hint = std::nullopt);

  FieldKind kind() const { return kind_; }
  long characteristic() const { return char_; }
  long prime() const { return p_; }  // prime_field only
  const FieldCtxPtr& base() const { return base_; }
  const std::vector<Fel>& modulus() const { return modulus_; }
  int degree() const { return degree_; }           // over the base field
  int absolute_degree() const { return abs_degree_; }  // over Q or GF(p)
  // True when the modulus passed a real irreducibility proof; false means the
  // screen was inconclusive and the context is flagged unchecked.
  bool modulus_verified() const { return modulus_verified_; }

  bool finite() const { return char_ > 0; }
  const mpz_class& size() const { return size_; }  // finite fields only

  // Element constructors.
  Fel zero() const;
  Fel one() const;
  Fel from_int(long n) const;
  Fel from_mpz(const mpz_class& n) const;
  Fel from_mpq(const mpq_class& q) const;  // reduces mod p in finite char
  Fel from_coeffs(std::vector<Fel> cs) const;  // extension: base coeffs, len <= d
  Fel embed(const Fel& base_elem) const;       // base field -> this
  Fel gen() const;                             // class of x (extension only)
  // Enumeration by index for finite fields: base-p (resp. base-|K|) digits.
  Fel element_at(const mpz_class& index) const;
  // Seeded random element; rationals draw num/den within the height bound.
  Fel random_element(std::mt19937_64& rng, long height = 10000) const;

  bool same_field(const FieldCtx& other) const;

private:
  FieldCtx() = default;

  FieldKind kind_ = FieldKind::rationals;
  long char_ = 0;
  long p_ = 0;
  FieldCtxPtr base_;
  std::vector<Fel> modulus_;
  int degree_ = 1;
  int abs_degree_ = 1;
  bool modulus_verified_ = true;
  mpz_class size_;  // 0 for infinite fields

  friend Fel operator+(const Fel&, const Fel&);
  friend Fel operator-(const Fel&, const Fel&);
  friend Fel operator*(const Fel&, const Fel&);
  friend Fel operator/(const Fel&, const Fel&);
  friend class Fel;

  Fel make_rat(mpq_class q) const;
  Fel make_res(long r) const;
  Fel make_coef(std::vector<Fel> cs) const;
  Fel add(const Fel& a, const Fel& b) const;
  Fel sub(const Fel& a, const Fel& b) const;
  Fel mul(const Fel& a, const Fel& b) const;
  Fel div(const Fel& a, const Fel& b) const;
  Fel neg(const Fel& a) const;
  Fel inv(const Fel& a) const;
};

// Named entry point mirroring the module operation list; the operators above
// are sugar for this.
Fel field_arith(const Fel& a, const Fel& b, ArithOp op);

// Least n in [1, cap] with a^n = 1. In finite fields the exact order is
// always returned (group order is factored), ignoring the cap. In
// characteristic 0 the answer is exact as well: a root of unity of order m
// inside a field of absolute degree d over Q forces phi(m) | d, so only
// finitely many candidates exist; nullopt therefore means "not a root of
// unity" (or, beyond the cap, "exceeds cap").
std::optional<long> multiplicative_order(const Fel& a, long cap = 1000000);

// Order of a inside the multiplicative group of a finite field (exact).
mpz_class finite_multiplicative_order(const Fel& a);

// Element of multiplicative order exactly m. Over the rationals (m > 2) this
// builds Q[x]/(Phi_m) and returns the class of x; over finite fields it
// searches the field, or constructs GF(p^k) with k minimal such that
// m | p^k - 1. Over an extension context it powers down a generator (finite)
// or the class of x (cyclotomic char 0).
Fel primitive_root_of_unity(long m, const FieldCtxPtr& ctx);

// Deterministic primality test (Miller-Rabin with a base set exact for all
// 64-bit inputs).
bool is_prime_long(long n);

// Factor n > 0 into prime -> exponent, smallest primes first (trial division
// plus Pollard rho for large cofactors).
std::vector<std::pair<mpz_class, unsigned>> factor_mpz(const mpz_class& n);

// Euler phi.
long euler_phi(long m);

}  // namespace skewlines
