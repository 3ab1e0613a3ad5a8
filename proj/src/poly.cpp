#include "skewlines/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace skewlines::poly {

namespace {
const FieldCtxPtr& ctx_of(const Poly& f) {
  for (const auto& c : f)
    if (c.valid()) return c.ctx();
  throw std::invalid_argument("polynomial has no usable context");
}
}  // namespace

Poly normalize(Poly f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  return f;
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

bool is_zero(const Poly& f) {
  return std::all_of(f.begin(), f.end(), [](const Fel& c) { return c.is_zero(); });
}

Poly from_ints(const FieldCtxPtr& ctx, const std::vector<long>& cs) {
  Poly f;
  f.reserve(cs.size());
  for (long c : cs) f.push_back(ctx->from_int(c));
  return normalize(std::move(f));
}

Poly constant(const Fel& c) {
  if (c.is_zero()) return {};
  return {c};
}

Poly x_power(const FieldCtxPtr& ctx, int n) {
  Poly f(n + 1, ctx->zero());
  f[n] = ctx->one();
  return f;
}

Poly add(const Poly& f, const Poly& g) {
  const Poly& lo = f.size() < g.size() ? f : g;
  Poly r = f.size() < g.size() ? g : f;
  for (size_t i = 0; i < lo.size(); ++i) r[i] = r[i] + lo[i];
  return normalize(std::move(r));
}

Poly neg(const Poly& f) {
  Poly r = f;
  for (auto& c : r) c = -c;
  return r;
}

Poly sub(const Poly& f, const Poly& g) { return add(f, neg(g)); }

Poly mul(const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  const auto& ctx = ctx_of(f);
  Poly r(f.size() + g.size() - 1, ctx->zero());
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (size_t j = 0; j < g.size(); ++j) r[i + j] = r[i + j] + f[i] * g[j];
  }
  return normalize(std::move(r));
}

Poly scale(const Fel& c, const Poly& f) {
  if (c.is_zero()) return {};
  Poly r = f;
  for (auto& x : r) x = c * x;
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  if (g.empty()) throw std::domain_error("polynomial division by zero");
  Poly r = f;
  if (deg(r) < deg(g)) return {{}, std::move(r)};
  const auto& ctx = ctx_of(g);
  Fel lead_inv = g.back().inv();
  Poly q(deg(r) - deg(g) + 1, ctx->zero());
  for (int i = deg(r); i >= deg(g); --i) {
    if (r[i].is_zero()) continue;
    Fel c = r[i] * lead_inv;
    q[i - deg(g)] = c;
    for (int j = 0; j <= deg(g); ++j) r[i - deg(g) + j] = r[i - deg(g) + j] - c * g[j];
  }
  return {normalize(std::move(q)), normalize(std::move(r))};
}

Poly div_exact(const Poly& f, const Poly& g) {
  auto [q, r] = divmod(f, g);
  if (!r.empty()) throw std::domain_error("polynomial division was not exact");
  return q;
}

Poly mod(const Poly& f, const Poly& g) { return divmod(f, g).second; }

Poly monic(const Poly& f) {
  if (f.empty()) return f;
  return scale(f.back().inv(), f);
}

Poly gcd_monic(Poly f, Poly g) {
  f = normalize(std::move(f));
  g = normalize(std::move(g));
  while (!g.empty()) {
    Poly r = mod(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  if (f.empty()) return f;
  return monic(f);
}

Egcd extended_gcd(Poly f, Poly h) {
  // Invariants: s*f0 + t*h0 = r for each row (r, s, t).
  const auto& ctx = ctx_of(f.empty() ? h : f);
  Poly r0 = normalize(std::move(f)), r1 = normalize(std::move(h));
  Poly s0 = {ctx->one()}, s1 = {};
  Poly t0 = {}, t1 = {ctx->one()};
  while (!r1.empty()) {
    auto [q, r2] = divmod(r0, r1);
    Poly s2 = sub(s0, mul(q, s1));
    Poly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  Fel c = r0.back().inv();
  return {scale(c, r0), scale(c, s0), scale(c, t0)};
}

Poly powmod(Poly base, mpz_class e, const Poly& modulus) {
  if (e < 0) throw std::invalid_argument("powmod: negative exponent");
  const auto& ctx = ctx_of(modulus);
  Poly r = {ctx->one()};
  base = mod(std::move(base), modulus);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, base), modulus);
    base = mod(mul(base, base), modulus);
    e >>= 1;
  }
  return r;
}

Fel eval(const Poly& f, const Fel& x) {
  Fel r = x.ctx()->zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
  return r;
}

Poly derivative(const Poly& f) {
  if (f.size() < 2) return {};
  const auto& ctx = ctx_of(f);
  Poly r(f.size() - 1, ctx->zero());
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = ctx->from_int(static_cast<long>(i)) * f[i];
  return normalize(std::move(r));
}

bool irreducible_over_finite(const Poly& f_in) {
  Poly f = monic(normalize(f_in));
  int d = deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  const auto& ctx = ctx_of(f);
  if (!ctx->finite()) throw std::invalid_argument("irreducible_over_finite: needs a finite field");
  const mpz_class& q = ctx->size();
  Poly x = x_power(ctx, 1);

  // x^(q^d) must reduce to x mod f.
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
  if (powmod(x, qd, f) != mod(x, f)) return false;
  // gcd(x^(q^(d/r)) - x, f) must be 1 for every prime r | d.
  for (long r = 2; r <= d; ++r) {
    if (!is_prime_long(r) || d % r != 0) continue;
    mpz_class qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), d / r);
    Poly frob = sub(powmod(x, qk, f), x);
    if (deg(gcd_monic(frob, f)) != 0) return false;
  }
  return true;
}

std::optional<Fel> sqrt_in_field(const Fel& a) {
  const auto& ctx = a.ctx();
  if (a.is_zero()) return ctx->zero();
  long p = ctx->characteristic();

  if (p == 2) {
    // Frobenius is bijective: sqrt(a) = a^(2^(K-1)) with |field| = 2^K.
    mpz_class e = ctx->size() / 2;
    Fel r = a.pow(e);
    return (r * r == a) ? std::optional<Fel>(r) : std::nullopt;
  }

  if (ctx->finite()) {
    // Tonelli-Shanks over any odd finite field.
    mpz_class q = ctx->size();
    Fel legendre = a.pow((q - 1) / 2);
    if (!legendre.is_one()) return std::nullopt;
    mpz_class s = q - 1;
    unsigned e = 0;
    while (mpz_even_p(s.get_mpz_t())) {
      s /= 2;
      ++e;
    }
    if (e == 1) {
      Fel r = a.pow((q + 1) / 4);
      return (r * r == a) ? std::optional<Fel>(r) : std::nullopt;
    }
    // Find a non-residue deterministically by enumeration order.
    Fel n = ctx->zero();
    for (mpz_class i = 2; i < q; ++i) {
      Fel c = ctx->element_at(i);
      if (c.is_zero()) continue;
      if (!c.pow((q - 1) / 2).is_one()) {
        n = c;
        break;
      }
    }
    Fel z = n.pow(s);
    Fel r = a.pow((s + 1) / 2);
    Fel t = a.pow(s);
    unsigned m = e;
    while (!t.is_one()) {
      Fel tt = t;
      unsigned i = 0;
      while (!tt.is_one()) {
        tt = tt * tt;
        ++i;
        if (i == m) return std::nullopt;
      }
      Fel b = z;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b;
      r = r * b;
      z = b * b;
      t = t * z;
      m = i;
    }
    return (r * r == a) ? std::optional<Fel>(r) : std::nullopt;
  }

  if (ctx->kind() == FieldKind::rationals) {
    const mpq_class& v = a.rational();
    if (v < 0) return std::nullopt;
    mpz_class num = v.get_num(), den = v.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
      return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return ctx->from_mpq(mpq_class(rn, rd));
  }

  // Characteristic-0 quadratic extension of Q: decide via the norm form.
  if (ctx->kind() == FieldKind::extension && ctx->degree() == 2 &&
      ctx->base()->kind() == FieldKind::rationals) {
    const auto& base = ctx->base();
    // theta^2 = -b*theta - c for modulus x^2 + b x + c.
    Fel b = ctx->modulus()[1], c = ctx->modulus()[0];
    Fel z0 = a.coeffs()[0], z1 = a.coeffs()[1];
    auto embed2 = [&](const Fel& lo, const Fel& hi) { return ctx->from_coeffs({lo, hi}); };
    auto rational_sqrt = [&](const Fel& v) -> std::optional<Fel> {
      const mpq_class& q = v.rational();
      if (q < 0) return std::nullopt;
      mpz_class num = q.get_num(), den = q.get_den();
      if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
      mpz_class rn, rd;
      mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
      return base->from_mpq(mpq_class(rn, rd));
    };
    if (z1.is_zero()) {
      // Either sqrt(z0) is rational, or w = w0 + w1*theta with the mixed
      // coefficient vanishing: w1*(2*w0 - b*w1) = 0.
      if (auto r = rational_sqrt(z0)) return embed2(*r, base->zero());
      Fel denom = b * b / base->from_int(4) - c;
      if (!denom.is_zero()) {
        if (auto w1 = rational_sqrt(z0 / denom)) {
          Fel w0 = b * *w1 / base->from_int(2);
          Fel w = embed2(w0, *w1);
          if (w * w == a) return w;
        }
      }
      return std::nullopt;
    }
    // Norm N(z) = z * conj(z) must be a rational square, and then
    // (w + conj(w))^2 = Tr(z) +- 2*sqrt(N(z)) must be one as well.
    Fel conj = embed2(z0 - b * z1, -z1);
    Fel norm_el = a * conj;
    if (!norm_el.coeffs()[1].is_zero()) throw std::logic_error("norm not rational");
    Fel tr_el = a + conj;
    if (!tr_el.coeffs()[1].is_zero()) throw std::logic_error("trace not rational");
    auto msq = rational_sqrt(norm_el.coeffs()[0]);
    if (!msq) return std::nullopt;
    for (int sign : {1, -1}) {
      Fel mm = base->from_int(sign) * *msq;
      Fel tt2 = tr_el.coeffs()[0] + base->from_int(2) * mm;
      auto tau = rational_sqrt(tt2);
      if (!tau || tau->is_zero()) continue;
      Fel w = (a + ctx->embed(mm)) / ctx->embed(*tau);
      if (w * w == a) return w;
    }
    return std::nullopt;
  }

  throw std::domain_error("square decision not supported over this field");
}

std::vector<Fel> roots_deg2(const Poly& f_in) {
  Poly f = normalize(f_in);
  const auto& ctx = ctx_of(f);
  int d = deg(f);
  if (d < 1 || d > 2) throw std::invalid_argument("roots_deg2: degree must be 1 or 2");
  if (d == 1) return {-f[0] / f[1]};
  Fel a = f[2], b = f[1], c = f[0];
  long p = ctx->characteristic();
  if (p != 2) {
    Fel disc = b * b - ctx->from_int(4) * a * c;
    auto r = sqrt_in_field(disc);
    if (!r) return {};
    Fel inv2a = (ctx->from_int(2) * a).inv();
    Fel x1 = (-b + *r) * inv2a;
    Fel x2 = (-b - *r) * inv2a;
    if (x1 == x2) return {x1};
    std::vector<Fel> out{x1, x2};
    std::sort(out.begin(), out.end());
    return out;
  }
  // char 2: a x^2 + b x + c.
  if (b.is_zero()) {
    auto r = sqrt_in_field(c / a);
    if (!r) return {};
    return {*r};  // double root
  }
  // Substitute x = (b/a) v: v^2 + v + ac/b^2 = 0 (Artin-Schreier form).
  Fel w = a * c / (b * b);
  // Absolute trace to GF(2).
  Fel tr = ctx->zero();
  Fel t = w;
  long k = ctx->absolute_degree();
  for (long i = 0; i < k; ++i) {
    tr = tr + t;
    t = t * t;
  }
  if (!tr.is_zero()) return {};
  Fel v = ctx->zero();
  if (k % 2 == 1) {
    // Half-trace: v = sum_{i=0}^{(k-1)/2} w^(4^i) solves v^2 + v = w
    // whenever the absolute trace of w vanishes and the degree is odd.
    Fel cur = w;
    for (long i = 0; i <= (k - 1) / 2; ++i) {
      v = v + cur;
      cur = cur * cur;
      cur = cur * cur;
    }
  } else {
    // Even degree: exhaustive search (fields used here are small).
    if (ctx->size() > 1 << 20) return {};
    bool found = false;
    for (mpz_class i = 0; i < ctx->size(); ++i) {
      Fel cand = ctx->element_at(i);
      if (cand * cand + cand == w) {
        v = cand;
        found = true;
        break;
      }
    }
    if (!found) return {};
  }
  if (!(v * v + v == w)) return {};
  Fel scale_ba = b / a;
  std::vector<Fel> out{scale_ba * v, scale_ba * (v + ctx->one())};
  std::sort(out.begin(), out.end());
  return out;
}

Poly cyclotomic(long m, const FieldCtxPtr& rationals_ctx) {
  if (m < 1) throw std::invalid_argument("cyclotomic: m must be positive");
  if (rationals_ctx->kind() != FieldKind::rationals)
    throw std::invalid_argument("cyclotomic: context must be the rationals");
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact division.
  Poly xm = sub(x_power(rationals_ctx, m), {rationals_ctx->one()});
  Poly denom = {rationals_ctx->one()};
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    denom = mul(denom, cyclotomic(d, rationals_ctx));
  }
  return div_exact(xm, denom);
}

Poly find_irreducible(const FieldCtxPtr& finite_ctx, int d) {
  if (!finite_ctx->finite()) throw std::invalid_argument("find_irreducible: needs a finite field");
  if (d < 2) throw std::invalid_argument("find_irreducible: degree must be >= 2");
  // Scan monic polynomials x^d + (lower part) in enumeration order.
  mpz_class total;
  mpz_pow_ui(total.get_mpz_t(), finite_ctx->size().get_mpz_t(), d);
  for (mpz_class idx = 0; idx < total; ++idx) {
    Poly f = x_power(finite_ctx, d);
    mpz_class rest = idx;
    for (int i = 0; i < d; ++i) {
      f[i] = finite_ctx->element_at(rest % finite_ctx->size());
      rest /= finite_ctx->size();
    }
    if (irreducible_over_finite(f)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace skewlines::poly
