#include "subint/function.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "subint/errors.hpp"
#include "subint/linprog.hpp"

namespace subint {

struct PolyhedralConvexFunction::ConjugateCache {
  std::once_flag once;
  std::shared_ptr<const PolyhedralConvexFunction> value;
};

struct PolyhedralConvexFunction::EpigraphCache {
  std::once_flag once;
  std::optional<Polyhedron> value;
};

PolyhedralConvexFunction::PolyhedralConvexFunction(
    std::vector<AffinePiece> pieces, Polyhedron domain)
    : pieces_(std::move(pieces)),
      domain_(std::move(domain)),
      conj_(std::make_shared<ConjugateCache>()),
      epi_(std::make_shared<EpigraphCache>()) {
  if (pieces_.empty()) throw SubintError("function needs at least one piece");
  for (const auto& p : pieces_)
    if (static_cast<int>(p.a.size()) != domain_.dim())
      throw DimensionMismatch("piece dimension mismatch");
  if (domain_.is_empty())
    throw ImproperSum("improper function: empty effective domain");
}

Polyhedron PolyhedralConvexFunction::epigraph() const {
  std::call_once(epi_->once, [this] {
    const int d = dim();
    std::vector<HalfSpace> rows;
    for (const auto& p : pieces_) {
      QVec n = p.a;
      n.push_back(-1);
      rows.push_back({std::move(n), -p.b});
    }
    for (const auto& h : domain_.hrep()) {
      QVec n = h.normal;
      n.push_back(0);
      rows.push_back({std::move(n), h.offset});
    }
    epi_->value = Polyhedron::from_hrep(d + 1, std::move(rows));
  });
  return *epi_->value;
}

const PolyhedralConvexFunction& PolyhedralConvexFunction::conjugate() const {
  std::call_once(conj_->once, [this] {
    conj_->value = std::make_shared<const PolyhedralConvexFunction>(
        conjugate_from_epigraph(epigraph()));
  });
  return *conj_->value;
}

std::string PolyhedralConvexFunction::str() const {
  std::ostringstream os;
  os << "max{";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) os << ", ";
    os << to_string(pieces_[i].a) << ".y+" << pieces_[i].b;
  }
  os << "} on " << domain_.str();
  return os.str();
}

PolyhedralConvexFunction PolyhedralConvexFunction::abs_value() {
  return abs_shifted(0);
}

PolyhedralConvexFunction PolyhedralConvexFunction::abs_shifted(
    const Rational& c) {
  return PolyhedralConvexFunction({{QVec{1}, -c}, {QVec{-1}, c}},
                                  Polyhedron::whole_space(1));
}

PolyhedralConvexFunction PolyhedralConvexFunction::affine(QVec a, Rational b) {
  const int d = static_cast<int>(a.size());
  return PolyhedralConvexFunction({{std::move(a), std::move(b)}},
                                  Polyhedron::whole_space(d));
}

PolyhedralConvexFunction PolyhedralConvexFunction::indicator(
    Polyhedron domain) {
  const int d = domain.dim();
  return PolyhedralConvexFunction({{zero_vec(d), 0}}, std::move(domain));
}

PolyhedralConvexFunction PolyhedralConvexFunction::max_of(
    std::vector<AffinePiece> pieces) {
  const int d = static_cast<int>(pieces.at(0).a.size());
  return PolyhedralConvexFunction(std::move(pieces),
                                  Polyhedron::whole_space(d));
}

ExtRat value(const PolyhedralConvexFunction& f, const QVec& y) {
  if (static_cast<int>(y.size()) != f.dim())
    throw DimensionMismatch("value: dimension mismatch");
  if (!f.domain().contains(y)) return ExtRat::plus_inf();
  const auto& ps = f.pieces();
  Rational best = dot(ps[0].a, y) + ps[0].b;
  for (const auto& p : ps)
    best = std::max(best, Rational(dot(p.a, y) + p.b));
  return ExtRat(best);
}

ExtRat conjugate_value(const PolyhedralConvexFunction& f, const QVec& xstar) {
  // sup_y <xstar,y> - f(y) as an exact LP over the epigraph, kept
  // independent of the conjugate-epigraph construction so the two can be
  // checked against each other.
  const int d = f.dim();
  if (static_cast<int>(xstar.size()) != d)
    throw DimensionMismatch("conjugate_value: dimension mismatch");
  LinearProgram lp;
  for (int i = 0; i < d; ++i) lp.add_var(-xstar[i], /*is_free=*/true);
  lp.add_var(1, /*is_free=*/true);  // r
  for (const auto& p : f.pieces()) {
    QVec row = p.a;
    row.push_back(-1);
    lp.add_row(std::move(row), RowKind::LessEq, -p.b);
  }
  for (const auto& h : f.domain().hrep()) {
    QVec row = h.normal;
    row.push_back(0);
    lp.add_row(std::move(row), RowKind::LessEq, h.offset);
  }
  const LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Unbounded) return ExtRat::plus_inf();
  assert(r.status == LpStatus::Optimal);  // dom f nonempty by construction
  return ExtRat(-r.objective);
}

PolyhedralConvexFunction conjugate_from_epigraph(const Polyhedron& epi) {
  const int d = epi.dim() - 1;
  if (epi.is_empty())
    throw ImproperSum("conjugate of an empty epigraph");
  const VRep& v = epi.vrep();
  std::vector<AffinePiece> pieces;
  pieces.reserve(v.vertices.size());
  for (const auto& vert : v.vertices) {
    AffinePiece p;
    p.a = QVec(vert.begin(), vert.begin() + d);
    p.b = -vert[d];
    pieces.push_back(std::move(p));
  }
  // sup over the epigraph is finite exactly where every recession
  // direction (w, rho) prices nonpositively: <s, w> <= rho.
  std::vector<HalfSpace> dom_rows;
  for (const auto& r : v.rays) {
    HalfSpace h;
    h.normal = QVec(r.begin(), r.begin() + d);
    h.offset = r[d];
    dom_rows.push_back(std::move(h));
  }
  return PolyhedralConvexFunction(
      std::move(pieces), Polyhedron::from_hrep(d, std::move(dom_rows)));
}

PolyhedralConvexFunction conjugate_function(
    const PolyhedralConvexFunction& f) {
  return f.conjugate();
}

ExtRat fenchel_gap(const PolyhedralConvexFunction& f, const QVec& x,
                   const QVec& s) {
  // Evaluates through the memoized conjugate (cheap); conjugate_value is
  // the LP route and the two are property-tested equal.
  const ExtRat fx = value(f, x);
  const ExtRat fs = value(f.conjugate(), s);
  if (fx.is_plus_inf() || fs.is_plus_inf()) return ExtRat::plus_inf();
  return ExtRat(fx.value() + fs.value() - dot(s, x));
}

EpsSubdiffSet eps_subdifferential(const PolyhedralConvexFunction& f,
                                  const QVec& x, const Rational& eps) {
  if (eps < 0) throw SubintError("eps_subdifferential: negative eps");
  EpsSubdiffSet out{Polyhedron::empty(f.dim()), x, eps,
                    std::make_shared<const PolyhedralConvexFunction>(f)};
  const ExtRat fx = value(f, x);
  if (!fx.is_finite()) return out;
  // {s : f*(s) <= eps - f(x) + <s,x>}: substitute the affine level into
  // the conjugate's epigraph constraints.
  const PolyhedralConvexFunction& conj = f.conjugate();
  const Rational level = eps - fx.value();
  std::vector<HalfSpace> rows;
  for (const auto& p : conj.pieces()) {
    // <p.a, s> + p.b <= level + <s, x>
    rows.push_back({vsub(p.a, x), level - p.b});
  }
  for (const auto& h : conj.domain().hrep()) rows.push_back(h);
  out.set = Polyhedron::from_hrep(f.dim(), std::move(rows));
  return out;
}

Polyhedron eps_normal(const Polyhedron& dom, const QVec& x,
                      const Rational& eps) {
  if (eps < 0) throw SubintError("eps_normal: negative eps");
  if (!dom.contains(x)) throw PointNotInSet("eps_normal: x outside the set");
  const VRep& v = dom.vrep();
  std::vector<HalfSpace> rows;
  for (const auto& vert : v.vertices) rows.push_back({vsub(vert, x), eps});
  for (const auto& r : v.rays) rows.push_back({r, 0});
  return Polyhedron::from_hrep(dom.dim(), std::move(rows));
}

ExtRat support_via_quotient(const PolyhedralConvexFunction& f, const QVec& x,
                            const Rational& ell, const QVec& u) {
  const ExtRat fx = value(f, x);
  if (!fx.is_finite())
    throw SubintError("support_via_quotient: f(x) not finite");
  if (ell < 0) throw SubintError("support_via_quotient: negative ell");
  if (is_zero(u)) {
    // sup of <0,.> over a nonempty eps-subdifferential; emptiness cannot
    // occur for polyhedral f at points of finiteness.
    return ExtRat(Rational(0));
  }

  // Feasible range of lambda: x + lambda u in dom f.
  bool lambda_bounded = false;
  Rational lambda_max = 0;
  bool first = true;
  for (const auto& h : f.domain().hrep()) {
    const Rational du = dot(h.normal, u);
    if (du <= 0) continue;
    const Rational bound = (h.offset - dot(h.normal, x)) / du;
    if (first || bound < lambda_max) lambda_max = bound;
    first = false;
    lambda_bounded = true;
  }
  if (lambda_bounded && lambda_max <= 0) return ExtRat::plus_inf();

  // Section g(lambda) = max_i (c_i + lambda s_i); candidate lambdas are
  // the breakpoints (pairwise piece crossings) plus lambda_max, plus the
  // two one-sided limits.
  std::vector<Rational> cs, ss;
  for (const auto& p : f.pieces()) {
    cs.push_back(dot(p.a, x) + p.b);
    ss.push_back(dot(p.a, u));
  }
  auto g = [&](const Rational& lam) {
    Rational best = cs[0] + lam * ss[0];
    for (std::size_t i = 1; i < cs.size(); ++i)
      best = std::max(best, Rational(cs[i] + lam * ss[i]));
    return best;
  };
  std::vector<Rational> candidates;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (ss[i] == ss[j]) continue;
      const Rational lam = (cs[j] - cs[i]) / (ss[i] - ss[j]);
      if (lam > 0 && (!lambda_bounded || lam <= lambda_max))
        candidates.push_back(lam);
    }
  if (lambda_bounded) candidates.push_back(lambda_max);

  std::optional<Rational> best;
  auto consider = [&](const Rational& v) {
    if (!best || v < *best) best = v;
  };
  for (const auto& lam : candidates)
    consider((g(lam) - fx.value() + ell) / lam);
  if (!lambda_bounded) {
    // lambda -> inf limit: the eventually-active slope.
    Rational slope = ss[0];
    for (const auto& s : ss) slope = std::max(slope, s);
    consider(slope);
  }
  if (ell == 0) {
    // lambda -> 0+ limit: the right derivative (active-piece max slope).
    Rational right_slope;
    bool init = false;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i] != fx.value()) continue;  // piece inactive at x
      if (!init || ss[i] > right_slope) {
        right_slope = ss[i];
        init = true;
      }
    }
    if (init) consider(right_slope);
  }
  assert(best);
  return ExtRat(*best);
}

ExtRat directional_derivative(const PolyhedralConvexFunction& f,
                              const QVec& x, const QVec& u) {
  return support_via_quotient(f, x, 0, u);
}

Differentiability is_differentiable_at(const PolyhedralConvexFunction& f,
                                       const QVec& x) {
  Differentiability out;
  const EpsSubdiffSet sub = eps_subdifferential(f, x, 0);
  const VRep& v = sub.set.vrep();
  if (v.vertices.size() == 1 && v.rays.empty()) {
    out.differentiable = true;
    out.gradient = v.vertices[0];
  }
  return out;
}

}  // namespace subint
