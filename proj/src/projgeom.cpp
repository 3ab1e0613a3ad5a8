#include "skewlines/projgeom.hpp"

#include <sstream>
#include <stdexcept>

namespace skewlines {

namespace {

linalg::Vec add_vecs(const linalg::Vec& a, const linalg::Vec& b) {
  linalg::Vec out;
  out.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

linalg::Vec scaled(const linalg::Vec& a, const Fel& c) {
  linalg::Vec out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x * c);
  return out;
}

Fel dot(const linalg::Vec& a, const linalg::Vec& b) {
  Fel acc = a[0].ctx()->zero();
  for (size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

linalg::Vec embed_vec(const linalg::Vec& v, const FieldCtxPtr& ext) {
  linalg::Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(ext->embed(x));
  return out;
}

// Index of the monomial x_i x_j (i <= j) in the lex coefficient order
// x2, xy, xz, xw, y2, yz, yw, z2, zw, w2.
size_t monomial_index(size_t i, size_t j) {
  static constexpr size_t row_start[4] = {0, 4, 7, 9};
  return row_start[i] + (j - i);
}

}  // namespace

ProjPoint::ProjPoint(std::vector<Fel> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2 || coords_.size() > 4)
    throw std::invalid_argument("projective point needs 2 to 4 coordinates");
  coords_ = linalg::scale_canonical(std::move(coords_));
}

ProjPoint ProjPoint::from_ints(const FieldCtxPtr& ctx, const std::vector<long>& coords) {
  std::vector<Fel> c;
  c.reserve(coords.size());
  for (long x : coords) c.push_back(ctx->from_int(x));
  return ProjPoint(std::move(c));
}

ProjPoint ProjPoint::embed(const FieldCtxPtr& ext) const {
  return ProjPoint(embed_vec(coords_, ext));
}

bool ProjPoint::operator<(const ProjPoint& o) const {
  if (coords_.size() != o.coords_.size())
    throw std::invalid_argument("comparing points of different dimensions");
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != o.coords_[i]) return coords_[i] < o.coords_[i];
  }
  return false;
}

std::string ProjPoint::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ":";
    os << coords_[i].str();
  }
  os << ")";
  return os.str();
}

Plane::Plane(std::vector<Fel> form) : form_(std::move(form)) {
  if (form_.size() != 4) throw std::invalid_argument("plane form needs 4 coefficients");
  form_ = linalg::scale_canonical(std::move(form_));
}

Fel Plane::eval(const ProjPoint& p) const {
  if (p.size() != 4) throw std::invalid_argument("plane evaluation needs a point of P^3");
  return dot(form_, p.coords());
}

ProjLine::ProjLine(const ProjPoint& p, const ProjPoint& q) : span_{p, q} {
  if (p.size() != 4 || q.size() != 4)
    throw std::invalid_argument("lines live in P^3");
  if (p == q) throw std::invalid_argument("coincident points do not span a line");
  linalg::Mat rows = {p.coords(), q.coords()};
  auto forms = linalg::kernel_basis(rows, 4, p.ctx());
  if (forms.size() != 2) throw std::logic_error("line must have a 2-dimensional dual");
  forms_[0] = linalg::scale_canonical(std::move(forms[0]));
  forms_[1] = linalg::scale_canonical(std::move(forms[1]));
}

ProjLine ProjLine::from_forms(std::vector<Fel> f0, std::vector<Fel> f1) {
  if (f0.size() != 4 || f1.size() != 4)
    throw std::invalid_argument("line forms need 4 coefficients");
  FieldCtxPtr ctx = f0[0].ctx();  // strong copy: f0 is moved away next
  linalg::Mat rows = {std::move(f0), std::move(f1)};
  auto span = linalg::kernel_basis(rows, 4, ctx);
  if (span.size() != 2)
    throw std::invalid_argument("line forms must be linearly independent");
  return ProjLine(ProjPoint(std::move(span[0])), ProjPoint(std::move(span[1])));
}

ProjLine ProjLine::from_forms_ints(const FieldCtxPtr& ctx, const std::vector<long>& f0,
                                   const std::vector<long>& f1) {
  std::vector<Fel> a, b;
  for (long x : f0) a.push_back(ctx->from_int(x));
  for (long x : f1) b.push_back(ctx->from_int(x));
  return from_forms(std::move(a), std::move(b));
}

bool ProjLine::contains(const ProjPoint& p) const {
  if (p.size() != 4) return false;
  return dot(forms_[0], p.coords()).is_zero() && dot(forms_[1], p.coords()).is_zero();
}

ProjPoint ProjLine::point_at(const Fel& s, const Fel& t) const {
  return ProjPoint(add_vecs(scaled(span_[0].coords(), s), scaled(span_[1].coords(), t)));
}

ProjPoint ProjLine::point_at(const ProjPoint& chart_pt) const {
  if (chart_pt.size() != 2) throw std::invalid_argument("chart point must be in P^1");
  return point_at(chart_pt[0], chart_pt[1]);
}

std::optional<ProjPoint> ProjLine::chart_coords(const ProjPoint& p) const {
  if (!contains(p)) return std::nullopt;
  // Solve s*chart0 + t*chart1 = lambda*p via the kernel of [chart0 chart1 -p].
  linalg::Mat m(4, linalg::Vec{});
  for (size_t i = 0; i < 4; ++i)
    m[i] = {span_[0][i], span_[1][i], -p[i]};
  auto ker = linalg::kernel_basis(m, 3, p.ctx());
  if (ker.size() != 1) throw std::logic_error("chart solve must have a unique ray");
  return ProjPoint({ker[0][0], ker[0][1]});
}

bool ProjLine::same_line(const ProjLine& o) const {
  return contains(o.chart0()) && contains(o.chart1());
}

ProjLine ProjLine::embed(const FieldCtxPtr& ext) const {
  return ProjLine(span_[0].embed(ext), span_[1].embed(ext));
}

Quadric::Quadric(std::vector<Fel> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != 10) throw std::invalid_argument("quadric needs 10 coefficients");
  coeffs_ = linalg::scale_canonical(std::move(coeffs_));
}

Fel Quadric::eval(const linalg::Vec& v) const {
  if (v.size() != 4) throw std::invalid_argument("quadric evaluation needs P^3 coordinates");
  Fel acc = coeffs_[0].ctx()->zero();
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i; j < 4; ++j) acc = acc + coeffs_[monomial_index(i, j)] * v[i] * v[j];
  return acc;
}

Fel Quadric::eval(const ProjPoint& p) const { return eval(p.coords()); }

bool Quadric::contains_line(const ProjLine& l) const {
  // A binary quadratic vanishing at three distinct chart points is zero.
  return eval(l.chart0()).is_zero() && eval(l.chart1()).is_zero() &&
         eval(add_vecs(l.chart0().coords(), l.chart1().coords())).is_zero();
}

bool Quadric::is_smooth() const {
  const auto& ctx = coeffs_[0].ctx();
  bool char2 = ctx->characteristic() == 2;
  linalg::Mat m = linalg::zeros(ctx, 4, 4);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      if (i == j) {
        // In characteristic 2 the polar form is alternating: the diagonal
        // 2*c_ii vanishes and smoothness reduces to the polar being
        // nonsingular (a singular point is a radical vector on the quadric,
        // and for 4 variables a nonzero radical forces one over the closure).
        m[i][i] = char2 ? ctx->zero() : coeffs_[monomial_index(i, i)] + coeffs_[monomial_index(i, i)];
      } else {
        m[i][j] = coeffs_[monomial_index(std::min(i, j), std::max(i, j))];
      }
    }
  return !linalg::det(std::move(m)).is_zero();
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) { return ProjLine(p, q); }

Plane plane_span(const ProjPoint& p, const ProjLine& l) {
  if (l.contains(p)) throw std::invalid_argument("point lies on the line; span is not a plane");
  linalg::Mat rows = {p.coords(), l.chart0().coords(), l.chart1().coords()};
  auto ker = linalg::kernel_basis(rows, 4, p.ctx());
  if (ker.size() != 1) throw std::logic_error("span of a point and a line must be a plane");
  return Plane(std::move(ker[0]));
}

ProjPoint meet_line_plane(const ProjLine& l, const Plane& h) {
  Fel a = h.eval(l.chart0());
  Fel b = h.eval(l.chart1());
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("line lies in the plane");
  // b*p0 - a*p1 is the unique zero of the restriction of h to the line.
  return l.point_at(b, -a);
}

bool are_skew(const ProjLine& a, const ProjLine& b) {
  linalg::Mat m = {a.chart0().coords(), a.chart1().coords(), b.chart0().coords(),
                   b.chart1().coords()};
  return !linalg::det(std::move(m)).is_zero();
}

std::optional<ProjPoint> intersect_lines(const ProjLine& a, const ProjLine& b) {
  if (a.same_line(b)) throw std::invalid_argument("lines coincide");
  linalg::Mat rows = {a.forms()[0], a.forms()[1], b.forms()[0], b.forms()[1]};
  auto ker = linalg::kernel_basis(rows, 4, a.ctx());
  if (ker.empty()) return std::nullopt;
  return ProjPoint(std::move(ker[0]));
}

Quadric quadric_through_skew_triple(const ProjLine& l1, const ProjLine& l2,
                                    const ProjLine& l3) {
  const auto& ctx = l1.ctx();
  linalg::Mat rows;
  rows.reserve(9);
  for (const ProjLine* l : {&l1, &l2, &l3}) {
    std::array<linalg::Vec, 3> samples = {
        l->chart0().coords(), l->chart1().coords(),
        add_vecs(l->chart0().coords(), l->chart1().coords())};
    for (const auto& v : samples) {
      linalg::Vec row;
      row.reserve(10);
      for (size_t i = 0; i < 4; ++i)
        for (size_t j = i; j < 4; ++j) row.push_back(v[i] * v[j]);
      rows.push_back(std::move(row));
    }
  }
  auto ker = linalg::kernel_basis(rows, 10, ctx);
  if (ker.size() != 1)
    throw std::invalid_argument("no unique quadric: the lines are not pairwise skew");
  Quadric q(std::move(ker[0]));
  if (!q.is_smooth())
    throw std::logic_error("quadric through a skew triple must be smooth");
  return q;
}

namespace {

// Line through a point p of the quadric spanned by three pairwise skew lines,
// meeting all three (the ruling transverse to them). Requires p off l2, l3.
ProjLine transversal_through_point(const ProjLine& l1, const ProjLine& l2,
                                   const ProjLine& l3, const ProjPoint& p) {
  Plane h = plane_span(p, l3);
  ProjPoint q2 = meet_line_plane(l2, h);
  ProjLine t = line_through(p, q2);
  if (!t.same_line(l3) && !intersect_lines(t, l3).has_value())
    throw std::logic_error("constructed transversal misses the third line");
  if (!l1.contains(p) && !t.same_line(l1) && !intersect_lines(t, l1).has_value())
    throw std::logic_error("constructed transversal misses the first line");
  return t;
}

}  // namespace

ProjLine ruling_transversal_through(const Quadric& q, const ProjLine& l1,
                                    const ProjLine& l2, const ProjLine& l3,
                                    const ProjPoint& p) {
  if (!q.contains(p))
    throw std::invalid_argument("point is not on the quadric");
  ProjLine t = transversal_through_point(l1, l2, l3, p);
  if (!q.contains_line(t))
    throw std::logic_error("transversal through a quadric point must be a ruling line");
  return t;
}

TransversalResult transversals_of_quadruple(const ProjLine& l1, const ProjLine& l2,
                                            const ProjLine& l3, const ProjLine& l4,
                                            bool auto_extend) {
  const auto& ctx = l1.ctx();
  Quadric q = quadric_through_skew_triple(l1, l2, l3);

  // Restrict the quadric to the fourth line's chart: a binary quadratic
  // c20 s^2 + c11 st + c02 t^2. The mixed term comes from the polarization
  // identity, which is valid in every characteristic.
  Fel c20 = q.eval(l4.chart0());
  Fel c02 = q.eval(l4.chart1());
  Fel c11 = q.eval(add_vecs(l4.chart0().coords(), l4.chart1().coords())) - c20 - c02;

  TransversalResult res;
  if (c20.is_zero() && c02.is_zero() && c11.is_zero()) {
    res.kind = TransversalKind::infinite_many;
    return res;
  }

  std::vector<ProjPoint> roots;  // chart points of l4 on the quadric
  bool double_root = false;
  if (c20.is_zero()) {
    // The form factors as t*(c11 s + c02 t); the root (1:0) is rational.
    if (c11.is_zero()) {
      roots.emplace_back(std::vector<Fel>{ctx->one(), ctx->zero()});
      double_root = true;
    } else {
      roots.emplace_back(std::vector<Fel>{ctx->one(), ctx->zero()});
      roots.emplace_back(std::vector<Fel>{-c02, c11});
    }
  } else {
    poly::Poly f = {c02, c11, c20};  // c20 x^2 + c11 x + c02, roots at (x:1)
    std::vector<Fel> xs = poly::roots_deg2(f);
    if (xs.size() == 1) {
      roots.emplace_back(std::vector<Fel>{xs[0], ctx->one()});
      double_root = true;
    } else if (xs.size() == 2) {
      roots.emplace_back(std::vector<Fel>{xs[0], ctx->one()});
      roots.emplace_back(std::vector<Fel>{xs[1], ctx->one()});
    } else {
      // Conjugate roots over a quadratic extension.
      res.kind = TransversalKind::two;
      res.needs_extension = true;
      Fel b = c11 / c20, c = c02 / c20;
      res.ext_modulus = poly::Poly{c, b, ctx->one()};
      if (!auto_extend) return res;
      FieldCtxPtr ext = FieldCtx::extension(ctx, *res.ext_modulus);
      res.ext_ctx = ext;
      ProjLine e1 = l1.embed(ext), e2 = l2.embed(ext), e3 = l3.embed(ext),
               e4 = l4.embed(ext);
      // The generator is one root of the modulus; the other is -b - gen.
      Fel r1 = ext->gen();
      Fel r2 = -ext->embed(b) - r1;
      for (const Fel& r : {r1, r2}) {
        ProjPoint pt = e4.point_at(r, ext->one());
        res.lines.push_back(transversal_through_point(e1, e2, e3, pt));
      }
      return res;
    }
  }

  for (const auto& chart_pt : roots)
    res.lines.push_back(transversal_through_point(l1, l2, l3, l4.point_at(chart_pt)));
  res.kind = double_root ? TransversalKind::one_double : TransversalKind::two;
  return res;
}

Fel cross_ratio(const std::array<ProjPoint, 4>& pts) {
  for (size_t i = 0; i < 4; ++i) {
    if (pts[i].size() != 2) throw std::invalid_argument("cross ratio needs points of P^1");
    for (size_t j = i + 1; j < 4; ++j)
      if (pts[i] == pts[j]) throw std::invalid_argument("cross ratio needs distinct points");
  }
  auto mixed = [&](size_t i, size_t j) { return pts[i][0] * pts[j][1] - pts[j][0] * pts[i][1]; };
  return (mixed(2, 0) * mixed(3, 1)) / (mixed(2, 1) * mixed(3, 0));
}

Fel cross_ratio(const ProjLine& l, const std::array<ProjPoint, 4>& pts) {
  std::array<ProjPoint, 4> charts = {ProjPoint({l.ctx()->one(), l.ctx()->zero()}),
                                     ProjPoint({l.ctx()->one(), l.ctx()->zero()}),
                                     ProjPoint({l.ctx()->one(), l.ctx()->zero()}),
                                     ProjPoint({l.ctx()->one(), l.ctx()->zero()})};
  for (size_t i = 0; i < 4; ++i) {
    auto c = l.chart_coords(pts[i]);
    if (!c) throw std::invalid_argument("cross ratio input point is off the line");
    charts[i] = *c;
  }
  return cross_ratio(charts);
}

std::vector<ProjPoint> project_from_point(const ProjPoint& center, const Plane& h,
                                          const std::vector<ProjPoint>& pts) {
  Fel hc = h.eval(center);
  if (hc.is_zero()) throw std::invalid_argument("projection center lies in the plane");
  const auto& ctx = center.ctx();
  auto basis = linalg::kernel_basis({h.form()}, 4, ctx);  // fixed P^2 chart of h
  std::vector<ProjPoint> images;
  images.reserve(pts.size());
  for (const auto& p : pts) {
    if (p == center) throw std::invalid_argument("cannot project the center itself");
    linalg::Vec y = add_vecs(scaled(p.coords(), hc), scaled(center.coords(), -h.eval(p)));
    // Express y in the chart basis: solve the consistent 4x3 system.
    linalg::Mat m(4, linalg::Vec{});
    for (size_t i = 0; i < 4; ++i) m[i] = {basis[0][i], basis[1][i], basis[2][i]};
    auto sol = linalg::solve(std::move(m), std::move(y));
    if (!sol) throw std::logic_error("projected point must lie in the target plane");
    images.emplace_back(std::move(*sol));
  }
  return images;
}

}  // namespace skewlines
