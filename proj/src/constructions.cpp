#include "skewlines/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

#include "skewlines/poly.hpp"

namespace skewlines {

namespace {

NamedConfig assemble(std::vector<ProjLine> lines, std::vector<PointEntry> entries,
                     std::string label, Expectation expected) {
  SkewConfig cfg(std::move(lines));
  PointSet z(cfg, std::move(entries));
  return NamedConfig{std::move(cfg), std::move(z), std::move(label), std::move(expected)};
}

// Primitive m-th root inside the handed field. Unlike the construction
// entry points that may enlarge the field, the named examples treat a
// missing root over a finite field as an input error.
Fel contained_root_of_unity(long m, const FieldCtxPtr& ctx, const char* who) {
  long p = ctx->characteristic();
  if (p > 0 && m % p == 0)
    throw std::invalid_argument(std::string(who) + ": the characteristic divides " +
                                std::to_string(m));
  if (ctx->finite() && (ctx->size() - 1) % m != 0)
    throw std::invalid_argument(std::string(who) + ": the field has no primitive " +
                                std::to_string(m) + "th root of unity");
  return primitive_root_of_unity(m, ctx);
}

std::string variant_str(MultVariant v) {
  switch (v) {
    case MultVariant::z0: return "Z0";
    case MultVariant::zinf: return "Zinf";
    case MultVariant::z0inf: return "Z0inf";
  }
  return "?";
}

}  // namespace

StandardFrame StandardFrame::standard(const FieldCtxPtr& ctx) {
  return StandardFrame{
      ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, 0}),    // {y, z}
      ProjLine::from_forms_ints(ctx, {1, -1, 0, 0}, {0, 0, 1, -1}),  // {x-y, z-w}
      ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 0, 0, 1}),    // {x, w}
      ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 1, 0, 0}),    // {x, y}
      ProjLine::from_forms_ints(ctx, {0, 0, 1, 0}, {0, 0, 0, 1})};   // {z, w}
}

ProjLine l4_from_lt(const StandardFrame& frame, const Fel& t, const Fel& l) {
  const FieldCtxPtr& ctx = t.ctx();
  if (!ctx->same_field(*l.ctx()) || !ctx->same_field(*frame.l1.ctx()))
    throw std::invalid_argument("l4_from_lt: t, l and the frame must share one field");
  if (t.is_zero()) throw std::invalid_argument("l4_from_lt: t = 0, the line would meet L1");
  if (t.is_one()) throw std::invalid_argument("l4_from_lt: t = 1, the line would meet L2");
  if (l.is_zero()) throw std::invalid_argument("l4_from_lt: l = 0, the line would meet L3");
  if (l.is_one()) throw std::invalid_argument("l4_from_lt: l = 1, the line would meet L2");
  if ((l * t).is_one())
    throw std::invalid_argument(
        "l4_from_lt: lt = 1, the line would lie on the quadric through L1, L2, L3");
  const Fel zero = ctx->zero(), one = ctx->one();
  return ProjLine::from_forms({zero, zero, one, -t}, {one, -l, zero, zero});
}

std::pair<Fel, Fel> tl_from_roots(const Fel& alpha, const Fel& beta) {
  if (alpha.is_zero()) throw std::invalid_argument("tl_from_roots: alpha must not be 0");
  if (beta.is_zero()) throw std::invalid_argument("tl_from_roots: beta must not be 0");
  if (alpha.is_one()) throw std::invalid_argument("tl_from_roots: alpha must not be 1");
  if (beta.is_one()) throw std::invalid_argument("tl_from_roots: beta must not be 1");
  const Fel ab = alpha * beta;
  if (ab.is_one()) throw std::invalid_argument("tl_from_roots: alpha * beta must not be 1");
  const Fel one = alpha.ctx()->one();
  Fel t = (ab - one) / (ab - alpha);  // denominator alpha(beta - 1) is nonzero
  Fel l = (beta - one) / (ab - one);
  return {std::move(t), std::move(l)};
}

ProjLine l4_from_roots(const StandardFrame& frame, const Fel& alpha, const Fel& beta) {
  auto [t, l] = tl_from_roots(alpha, beta);
  return l4_from_lt(frame, t, l);
}

NamedConfig standard_construction_mult(long m, const FieldCtxPtr& ctx, MultVariant variant) {
  if (m < 3) throw std::invalid_argument("standard_construction_mult: m must be at least 3");
  long p = ctx->characteristic();
  if (p > 0 && m % p == 0)
    throw std::invalid_argument(
        "standard_construction_mult: the characteristic must not divide m");
  Fel u = primitive_root_of_unity(m, ctx);
  const FieldCtxPtr& k = u.ctx();  // possibly an extension of ctx
  if (variant == MultVariant::z0inf && !k->from_int(-1).pow(m).is_one())
    throw std::invalid_argument(
        "standard_construction_mult: variant Z0inf needs (-1)^m = 1 in the field");

  const Fel zero = k->zero(), one = k->one();
  std::vector<Fel> upow(m);
  Fel ui = one;
  for (long i = 0; i < m; ++i) {
    upow[i] = ui;
    ui *= u;
  }

  std::vector<ProjLine> lines;
  if (variant != MultVariant::zinf)
    lines.push_back(ProjLine::from_forms_ints(k, {1, 0, 0, 0}, {0, 0, 1, 0}));  // lambda_0
  if (variant != MultVariant::z0)
    lines.push_back(ProjLine::from_forms_ints(k, {0, 1, 0, 0}, {0, 0, 0, 1}));  // lambda_inf
  int voff = static_cast<int>(lines.size());
  for (long i = 0; i < m; ++i)
    lines.push_back(ProjLine::from_forms({upow[i], -one, zero, zero}, {zero, zero, -one, upow[i]}));

  std::vector<PointEntry> entries;
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      entries.push_back(PointEntry{voff + static_cast<int>(i),
                                   ProjPoint({one, upow[i], upow[(i + j) % m], upow[j]})});
  if (variant != MultVariant::zinf)
    for (long i = 0; i < m; ++i)
      entries.push_back(PointEntry{0, ProjPoint({zero, one, zero, -upow[i]})});
  if (variant != MultVariant::z0) {
    int lam_inf = (variant == MultVariant::z0inf) ? 1 : 0;
    for (long i = 0; i < m; ++i)
      entries.push_back(PointEntry{lam_inf, ProjPoint({one, zero, -upow[i], zero})});
  }

  Expectation exp;
  exp.orbits = 1;
  exp.per_line = m;
  exp.group_order = m;
  exp.group_shape = "cyclic";
  long b = (variant == MultVariant::z0inf) ? m + 2 : m + 1;
  exp.geproci_type = {{m, b}};
  exp.half_grid = true;
  return assemble(std::move(lines), std::move(entries),
                  "std-mult(m=" + std::to_string(m) + "," + variant_str(variant) + ")", exp);
}

NamedConfig standard_construction_add(const std::vector<Fel>& A, const FieldCtxPtr& ctx) {
  if (ctx->characteristic() == 0)
    throw std::invalid_argument(
        "standard_construction_add: needs a field of positive characteristic");
  std::vector<Fel> a = A;
  for (const Fel& x : a)
    if (!x.ctx()->same_field(*ctx))
      throw std::invalid_argument("standard_construction_add: A must live in the given field");
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (a.size() != A.size())
    throw std::invalid_argument("standard_construction_add: A has repeated elements");
  if (a.size() < 3)
    throw std::invalid_argument("standard_construction_add: A must have at least 3 elements");
  auto member = [&a](const Fel& x) { return std::binary_search(a.begin(), a.end(), x); };
  if (!member(ctx->zero()))
    throw std::invalid_argument("standard_construction_add: A must contain 0");
  for (const Fel& x : a)
    for (const Fel& y : a)
      if (!member(x - y))
        throw std::invalid_argument(
            "standard_construction_add: A must be closed under subtraction");

  const Fel zero = ctx->zero(), one = ctx->one();
  std::vector<ProjLine> lines;
  lines.push_back(ProjLine::from_forms_ints(ctx, {0, 0, 0, 1}, {1, 0, -1, 0}));  // lambda
  for (const Fel& i : a)
    lines.push_back(ProjLine::from_forms({i, -one, zero, zero}, {zero, zero, -one, i}));

  std::vector<PointEntry> entries;
  for (size_t idx = 0; idx < a.size(); ++idx)
    for (const Fel& j : a)
      entries.push_back(
          PointEntry{static_cast<int>(1 + idx), ProjPoint({j, a[idx] * j, a[idx], one})});
  for (const Fel& i : a) entries.push_back(PointEntry{0, ProjPoint({one, i, one, zero})});

  Expectation exp;
  exp.orbits = 1;
  exp.per_line = static_cast<long>(a.size());
  exp.group_order = static_cast<long>(a.size());
  exp.group_shape = "elementary abelian";
  exp.geproci_type = {{static_cast<long>(a.size()), static_cast<long>(a.size()) + 1}};
  exp.half_grid = true;
  return assemble(std::move(lines), std::move(entries),
                  "std-add(|A|=" + std::to_string(a.size()) + ")", exp);
}

std::vector<Fel> additive_group_of_field(const FieldCtxPtr& ctx) {
  if (!ctx->finite())
    throw std::invalid_argument("additive_group_of_field: the field must be finite");
  std::vector<Fel> a;
  for (mpz_class i = 0; i < ctx->size(); ++i) a.push_back(ctx->element_at(i));
  return a;
}

NamedConfig hopf_spread(long q) {
  if (q < 3) throw std::invalid_argument("hopf_spread: q must be at least 3");
  if (q % 2 == 0)
    throw std::invalid_argument("hopf_spread: even q is not supported, q must be odd");
  auto fac = factor_mpz(q);
  if (fac.size() != 1) throw std::invalid_argument("hopf_spread: q must be a prime power");
  long p = fac[0].first.get_si();
  unsigned e = fac[0].second;
  FieldCtxPtr k = FieldCtx::prime_field(p);
  if (e > 1) k = FieldCtx::extension(k, poly::find_irreducible(k, static_cast<int>(e)));

  // Least quadratic non-residue in enumeration order; exists since q is odd.
  mpz_class half = (k->size() - 1) / 2;
  Fel n = k->zero();
  for (mpz_class i = 1; i < k->size(); ++i) {
    Fel c = k->element_at(i);
    if (!c.is_zero() && !c.pow(half).is_one()) {
      n = c;
      break;
    }
  }
  if (n.is_zero()) throw std::logic_error("hopf_spread: no non-residue found");

  const Fel zero = k->zero(), one = k->one();
  std::vector<ProjLine> lines;
  // The fiber over infinity, then one fiber per (u0, u1) in K^2: the line
  // through (u0 : u1 : 1 : 0) and (n u1 : u0 : 0 : 1).
  lines.emplace_back(ProjPoint({one, zero, zero, zero}), ProjPoint({zero, one, zero, zero}));
  for (mpz_class i0 = 0; i0 < k->size(); ++i0)
    for (mpz_class i1 = 0; i1 < k->size(); ++i1) {
      Fel u0 = k->element_at(i0), u1 = k->element_at(i1);
      lines.emplace_back(ProjPoint({u0, u1, one, zero}), ProjPoint({n * u1, u0, zero, one}));
    }

  std::vector<PointEntry> entries;
  for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
    entries.push_back(PointEntry{li, lines[li].point_at(zero, one)});
    for (mpz_class t = 0; t < k->size(); ++t)
      entries.push_back(PointEntry{li, lines[li].point_at(one, k->element_at(t))});
  }

  Expectation exp;
  exp.orbits = 1;
  exp.per_line = q + 1;
  exp.group_order = q + 1;
  exp.group_shape = "cyclic";
  exp.geproci_type = {{q + 1, q * q + 1}};
  exp.half_grid = true;
  return assemble(std::move(lines), std::move(entries), "hopf(q=" + std::to_string(q) + ")",
                  exp);
}

NamedConfig grid_config(long a, long b, const FieldCtxPtr& ctx) {
  if (a < 1) throw std::invalid_argument("grid_config: a must be at least 1");
  if (b < 3)
    throw std::invalid_argument("grid_config: the configuration side needs b >= 3 lines");
  auto ruling_params = [&ctx](long count) {
    // One parameter per ruling line; nullopt stands for the infinity line.
    if (ctx->finite() && count > ctx->size() + 1)
      throw std::invalid_argument(
          "grid_config: a ruling of the quadric over GF(q) has only q+1 lines");
    std::vector<std::optional<Fel>> ps;
    for (long i = 0; i < count; ++i) {
      if (ctx->finite() && i == ctx->size()) {
        ps.push_back(std::nullopt);
      } else {
        ps.push_back(ctx->finite() ? ctx->element_at(i) : ctx->from_int(i));
      }
    }
    return ps;
  };

  const Fel zero = ctx->zero(), one = ctx->one();
  std::vector<ProjLine> vlines;  // the configuration: V_c = {cx - y, cw - z}
  for (const auto& c : ruling_params(b))
    vlines.push_back(c ? ProjLine::from_forms({*c, -one, zero, zero}, {zero, zero, -one, *c})
                       : ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 0, 0, 1}));
  std::vector<ProjLine> hlines;  // the partner ruling: H_d = {x - dw, y - dz}
  for (const auto& d : ruling_params(a))
    hlines.push_back(d ? ProjLine::from_forms({one, zero, zero, -*d}, {zero, one, -*d, zero})
                       : ProjLine::from_forms_ints(ctx, {0, 0, 1, 0}, {0, 0, 0, 1}));

  std::vector<PointEntry> entries;
  for (int i = 0; i < static_cast<int>(vlines.size()); ++i)
    for (const ProjLine& h : hlines) {
      auto pt = intersect_lines(vlines[i], h);
      if (!pt) throw std::logic_error("grid_config: ruling lines failed to meet");
      entries.push_back(PointEntry{i, *pt});
    }

  Expectation exp;
  exp.orbits = a;
  exp.per_line = a;
  exp.group_order = 1;
  exp.group_shape = "trivial";
  exp.geproci_type = {{a, b}};
  exp.half_grid = false;
  return assemble(std::move(vlines), std::move(entries),
                  "grid(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")", exp);
}

namespace {

NamedConfig d4_example(const FieldCtxPtr& ctx) {
  std::vector<ProjLine> lines{
      ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 1, 0, -1}),   // {x, y-w}
      ProjLine::from_forms_ints(ctx, {0, 0, 1, 0}, {1, 0, 0, -1}),   // {z, x-w}
      ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, -1}),   // {y, z-w}
      ProjLine::from_forms_ints(ctx, {1, -1, 0, 0}, {0, 1, -1, 0})}; // {x-y, y-z}
  const std::vector<std::pair<int, std::vector<long>>> raw{
      {0, {0, 0, 1, 0}}, {0, {0, 1, 0, 1}}, {0, {0, 1, 1, 1}},
      {1, {0, 1, 0, 0}}, {1, {1, 0, 0, 1}}, {1, {1, 1, 0, 1}},
      {2, {1, 0, 0, 0}}, {2, {0, 0, 1, 1}}, {2, {1, 0, 1, 1}},
      {3, {0, 0, 0, 1}}, {3, {1, 1, 1, 1}}, {3, {1, 1, 1, 2}}};
  std::vector<PointEntry> entries;
  for (const auto& [li, cs] : raw)
    entries.push_back(PointEntry{li, ProjPoint::from_ints(ctx, cs)});
  Expectation exp;
  exp.orbits = 1;
  exp.per_line = 3;
  exp.group_order = 3;
  exp.group_shape = "cyclic";
  exp.geproci_type = {{3, 4}};
  exp.half_grid = true;
  return assemble(std::move(lines), std::move(entries), "D4", exp);
}

// Shared shape of the h4/f4 families: m ruling lines of xw - yz, m ruling
// lines of eta^2 xw - yz, and the two coordinate lines {y,z}, {x,w}.
NamedConfig biquadric_example(long m, const FieldCtxPtr& ctx, const std::string& label,
                              long orbit_size) {
  Fel eps = contained_root_of_unity(m, ctx, label.c_str());
  const FieldCtxPtr& k = eps.ctx();
  const Fel zero = k->zero(), one = k->one();
  Fel eta = eps.pow(m - 1) + eps - one;

  std::vector<ProjLine> lines;
  Fel ej = one;
  for (long j = 0; j < m; ++j) {
    lines.push_back(ProjLine::from_forms({ej, -one, zero, zero}, {zero, zero, ej, -one}));
    ej *= eps;
  }
  ej = one;
  for (long j = 0; j < m; ++j) {
    lines.push_back(
        ProjLine::from_forms({ej * eta, -one, zero, zero}, {zero, zero, ej, -eta}));
    ej *= eps;
  }
  lines.push_back(ProjLine::from_forms_ints(k, {0, 1, 0, 0}, {0, 0, 1, 0}));  // {y, z}
  lines.push_back(ProjLine::from_forms_ints(k, {1, 0, 0, 0}, {0, 0, 0, 1}));  // {x, w}

  SkewConfig cfg(std::move(lines));
  PointEntry seed{static_cast<int>(2 * m), ProjPoint::from_ints(k, {1, 0, 0, -1})};
  auto z = orbit(cfg, seed, 4 * orbit_size);
  if (!z || z->size() != orbit_size)
    throw std::logic_error(label + ": seed orbit did not close at the documented size");

  Expectation exp;
  exp.orbits = 1;
  exp.per_line = orbit_size / (2 * m + 2);
  exp.group_order = orbit_size / (2 * m + 2);
  exp.group_shape = "cyclic";
  exp.geproci_type = {{orbit_size / (2 * m + 2), 2 * m + 2}};
  exp.half_grid = true;
  return NamedConfig{std::move(cfg), std::move(*z), label, std::move(exp)};
}

NamedConfig penrose_example(const FieldCtxPtr& ctx) {
  auto quadratic = poly::from_ints(ctx, {1, -1, 1});
  auto roots = poly::roots_deg2(quadratic);
  Fel eps = ctx->zero();
  if (!roots.empty()) {
    eps = roots[0];
    for (const Fel& r : roots)
      if (r < eps) eps = r;
  } else if (ctx->kind() == FieldKind::rationals) {
    eps = FieldCtx::extension(ctx, quadratic, true)->gen();
  } else {
    throw std::invalid_argument("penrose80: the field has no root of t^2 - t + 1");
  }
  const FieldCtxPtr& k = eps.ctx();
  const Fel zero = k->zero(), one = k->one();
  const Fel e2 = eps * eps;

  auto L = [&](std::vector<Fel> f0, std::vector<Fel> f1) {
    return ProjLine::from_forms(std::move(f0), std::move(f1));
  };
  std::vector<ProjLine> lines{
      L({zero, zero, zero, one}, {zero, one, e2, zero}),     // {w, y + e^2 z}
      L({zero, one, one, -e2}, {one, zero, -e2, -e2}),       // {y+z-e^2 w, x-e^2 z-e^2 w}
      L({one, zero, zero, zero}, {zero, one, -e2, zero}),    // {x, y - e^2 z}
      L({zero, one, -eps, -one}, {one, zero, -e2, -one}),    // {y-e z-w, x-e^2 z-w}
      L({zero, one, -eps, -e2}, {one, zero, -one, -one}),    // {y-e z-e^2 w, x-z-w}
      L({zero, zero, one, zero}, {one, zero, zero, eps}),    // {z, x + e w}
      L({zero, one, -eps, eps}, {one, zero, eps, -one}),     // {y-e z+e w, x+e z-w}
      L({zero, one, zero, zero}, {one, zero, zero, -eps}),   // {y, x - e w}
      L({zero, one, one, eps}, {one, zero, -one, -e2}),      // {y+z+e w, x-z-e^2 w}
      L({zero, one, one, -one}, {one, zero, eps, -e2})};     // {y+z-w, x+e z-e^2 w}
  SkewConfig cfg(std::move(lines));

  // No seed is documented for this configuration; scan small chart points of
  // the first line until an orbit closes at 80 points.
  std::optional<PointSet> z;
  const long small[] = {0, 1, -1, 2, -2, 3, -3};
  auto try_seed = [&](const ProjPoint& pt) {
    auto o = orbit(cfg, PointEntry{0, pt}, 200);
    if (o && o->size() == 80) z = std::move(o);
    return z.has_value();
  };
  if (!try_seed(cfg.line(0).point_at(zero, one))) {
    for (long c1 : small) {
      for (long c0 : small) {
        Fel t = k->from_int(c0) + k->from_int(c1) * eps;
        if (try_seed(cfg.line(0).point_at(one, t))) break;
      }
      if (z) break;
    }
  }
  if (!z) throw std::logic_error("penrose80: no seed with an 80-point orbit was found");

  Expectation exp;
  exp.orbits = 1;
  exp.per_line = 8;
  exp.group_order = std::nullopt;  // nonabelian; established by analysis, not declared
  exp.group_shape = "";
  exp.geproci_type = {{8, 10}};
  exp.half_grid = true;
  return NamedConfig{std::move(cfg), std::move(*z), "Penrose80", std::move(exp)};
}

}  // namespace

NamedConfig named_example(ExampleLabel label, const FieldCtxPtr& ctx) {
  switch (label) {
    case ExampleLabel::d4: return d4_example(ctx);
    case ExampleLabel::h4: return biquadric_example(5, ctx, "H4", 120);
    case ExampleLabel::f4: return biquadric_example(3, ctx, "F4", 48);
    case ExampleLabel::penrose80: return penrose_example(ctx);
  }
  throw std::invalid_argument("named_example: unknown label");
}

std::string example_label_str(ExampleLabel label) {
  switch (label) {
    case ExampleLabel::d4: return "D4";
    case ExampleLabel::h4: return "H4";
    case ExampleLabel::f4: return "F4";
    case ExampleLabel::penrose80: return "Penrose80";
  }
  return "?";
}

std::optional<ExampleLabel> parse_example_label(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "d4") return ExampleLabel::d4;
  if (t == "h4") return ExampleLabel::h4;
  if (t == "f4") return ExampleLabel::f4;
  if (t == "penrose80") return ExampleLabel::penrose80;
  return std::nullopt;
}

}  // namespace skewlines
