#include "subint/polyhedron.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "subint/errors.hpp"

namespace subint {

namespace {

using Mask = std::vector<std::uint64_t>;

Mask empty_mask(int nbits) { return Mask((nbits + 63) / 64, 0); }

void mask_set(Mask& m, int i) { m[i / 64] |= (std::uint64_t(1) << (i % 64)); }

Mask mask_and(const Mask& a, const Mask& b) {
  Mask r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

bool mask_subset(const Mask& a, const Mask& b) {  // a subseteq b
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

struct TaggedRay {
  QVec v;
  Mask tight;
};

}  // namespace

ConeGenerators dd_cone(const std::vector<QVec>& rows, int dim) {
  const int m = static_cast<int>(rows.size());
  std::vector<QVec> lineality;
  lineality.reserve(dim);
  for (int i = 0; i < dim; ++i) lineality.push_back(unit_vec(dim, i));
  std::vector<TaggedRay> rays;

  for (int k = 0; k < m; ++k) {
    const QVec& a = rows[k];
    if (is_zero(a)) continue;

    // Constraint consumes one lineality direction if any is non-orthogonal.
    int pivot = -1;
    for (std::size_t i = 0; i < lineality.size(); ++i) {
      if (dot(a, lineality[i]) != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    }
    if (pivot >= 0) {
      QVec l0 = lineality[pivot];
      Rational al0 = dot(a, l0);
      if (al0 > 0) {
        l0 = vneg(l0);
        al0 = -al0;
      }
      std::vector<QVec> new_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        const Rational ali = dot(a, lineality[i]);
        new_lin.push_back(
            primitive(vsub(lineality[i], vscale(ali / al0, l0))));
      }
      for (auto& r : rays) {
        const Rational ar = dot(a, r.v);
        r.v = primitive(vsub(r.v, vscale(ar / al0, l0)));
        mask_set(r.tight, k);
      }
      TaggedRay born;
      born.v = primitive(l0);
      born.tight = empty_mask(m);
      for (int j = 0; j < k; ++j) mask_set(born.tight, j);
      rays.push_back(std::move(born));
      lineality = std::move(new_lin);
      continue;
    }

    std::vector<int> pos, zero, neg;
    std::vector<Rational> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0)
        pos.push_back(static_cast<int>(i));
      else if (val[i] < 0)
        neg.push_back(static_cast<int>(i));
      else
        zero.push_back(static_cast<int>(i));
    }
    if (pos.empty()) {
      for (int i : zero) mask_set(rays[i].tight, k);
      continue;
    }

    auto adjacent = [&](int p, int n) {
      Mask t = mask_and(rays[p].tight, rays[n].tight);
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (static_cast<int>(i) == p || static_cast<int>(i) == n) continue;
        if (mask_subset(t, rays[i].tight)) return false;
      }
      return true;
    };

    std::vector<TaggedRay> next;
    for (int i : neg) next.push_back(rays[i]);
    for (int i : zero) {
      next.push_back(rays[i]);
      mask_set(next.back().tight, k);
    }
    for (int p : pos) {
      for (int n : neg) {
        if (!adjacent(p, n)) continue;
        TaggedRay w;
        w.v = primitive(
            vsub(vscale(val[p], rays[n].v), vscale(val[n], rays[p].v)));
        w.tight = mask_and(rays[p].tight, rays[n].tight);
        mask_set(w.tight, k);
        next.push_back(std::move(w));
      }
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lineality);
  out.rays.reserve(rays.size());
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

HalfSpace normalize_halfspace(HalfSpace h) {
  // Unique positive scale making all written coefficients integer coprime.
  mpz_class den = 1;
  for (const auto& c : h.normal) den = lcm(den, c.get_den());
  den = lcm(den, h.offset.get_den());
  mpz_class g = 0;
  for (const auto& c : h.normal) g = gcd(g, mpz_class(c.get_num() * (den / c.get_den())));
  g = gcd(g, mpz_class(h.offset.get_num() * (den / h.offset.get_den())));
  if (g == 0) g = 1;
  Rational s(den, g);
  s.canonicalize();
  for (auto& c : h.normal) c *= s;
  h.offset *= s;
  return h;
}

namespace {

bool halfspace_less(const HalfSpace& a, const HalfSpace& b) {
  if (a.normal != b.normal) return lex_less(a.normal, b.normal);
  return a.offset < b.offset;
}

bool halfspace_eq(const HalfSpace& a, const HalfSpace& b) {
  return a.normal == b.normal && a.offset == b.offset;
}

std::vector<HalfSpace> canonical_hrep(std::vector<HalfSpace> hs) {
  for (auto& h : hs) h = normalize_halfspace(std::move(h));
  // Drop trivial rows 0.y <= b with b >= 0.
  std::vector<HalfSpace> out;
  for (auto& h : hs) {
    if (is_zero(h.normal) && h.offset >= 0) continue;
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), halfspace_less);
  out.erase(std::unique(out.begin(), out.end(), halfspace_eq), out.end());
  return out;
}

void canonical_generators(VRep& v) {
  std::sort(v.vertices.begin(), v.vertices.end(), lex_less);
  v.vertices.erase(std::unique(v.vertices.begin(), v.vertices.end()),
                   v.vertices.end());
  for (auto& r : v.rays) r = primitive(r);
  std::sort(v.rays.begin(), v.rays.end(), lex_less);
  v.rays.erase(std::unique(v.rays.begin(), v.rays.end()), v.rays.end());
}

VRep vrep_from_hrep(int dim, const std::vector<HalfSpace>& hs) {
  // Homogenize: P = {y : Ay <= b}  ->  cone {(y,t) : Ay - bt <= 0, -t <= 0}.
  std::vector<QVec> rows;
  rows.reserve(hs.size() + 1);
  for (const auto& h : hs) {
    QVec row = h.normal;
    row.push_back(-h.offset);
    rows.push_back(std::move(row));
  }
  QVec tneg = zero_vec(dim + 1);
  tneg[dim] = -1;
  rows.push_back(std::move(tneg));

  ConeGenerators cg = dd_cone(rows, dim + 1);
  VRep out;
  for (const auto& g : cg.rays) {
    const Rational& t = g[dim];
    assert(t >= 0);
    if (t > 0) {
      QVec v(g.begin(), g.begin() + dim);
      for (auto& c : v) c /= t;
      out.vertices.push_back(std::move(v));
    } else {
      QVec r(g.begin(), g.begin() + dim);
      if (!is_zero(r)) out.rays.push_back(std::move(r));
    }
  }
  for (const auto& l : cg.lineality) {
    assert(l[dim] == 0);
    QVec r(l.begin(), l.begin() + dim);
    if (is_zero(r)) continue;
    out.rays.push_back(r);
    out.rays.push_back(vneg(r));
  }
  if (out.vertices.empty()) out.rays.clear();  // empty set
  canonical_generators(out);
  return out;
}

std::vector<HalfSpace> hrep_from_vrep(int dim, const VRep& v) {
  if (v.vertices.empty()) {
    HalfSpace inf;
    inf.normal = zero_vec(dim);
    inf.offset = -1;
    return {inf};
  }
  // Facet normals (a,c) of the homogenization cone satisfy
  // a.vert + c <= 0 and a.ray <= 0: run dd on those rows.
  std::vector<QVec> rows;
  rows.reserve(v.vertices.size() + v.rays.size());
  for (const auto& p : v.vertices) {
    QVec row = p;
    row.push_back(1);
    rows.push_back(std::move(row));
  }
  for (const auto& r : v.rays) {
    QVec row = r;
    row.push_back(0);
    rows.push_back(std::move(row));
  }
  ConeGenerators cg = dd_cone(rows, dim + 1);
  std::vector<HalfSpace> hs;
  auto add = [&](const QVec& g) {
    HalfSpace h;
    h.normal = QVec(g.begin(), g.begin() + dim);
    h.offset = -g[dim];
    if (is_zero(h.normal) && h.offset >= 0) return;  // trivial
    hs.push_back(std::move(h));
  };
  for (const auto& g : cg.rays) add(g);
  for (const auto& l : cg.lineality) {
    add(l);
    add(vneg(l));
  }
  return canonical_hrep(std::move(hs));
}

}  // namespace

struct Polyhedron::Cache {
  mutable std::mutex mu;
  std::optional<std::vector<HalfSpace>> hrep;
  std::optional<VRep> vrep;
};

Polyhedron Polyhedron::from_hrep(int dim, std::vector<HalfSpace> halfspaces) {
  for (const auto& h : halfspaces)
    if (static_cast<int>(h.normal.size()) != dim)
      throw DimensionMismatch("halfspace dimension mismatch");
  Polyhedron p;
  p.dim_ = dim;
  p.cache_ = std::make_shared<Cache>();
  p.cache_->hrep = canonical_hrep(std::move(halfspaces));
  return p;
}

Polyhedron Polyhedron::from_generators(int dim, std::vector<QVec> vertices,
                                       std::vector<QVec> rays) {
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != dim)
      throw DimensionMismatch("vertex dimension mismatch");
  for (const auto& r : rays)
    if (static_cast<int>(r.size()) != dim)
      throw DimensionMismatch("ray dimension mismatch");
  Polyhedron p;
  p.dim_ = dim;
  p.cache_ = std::make_shared<Cache>();
  VRep v;
  v.vertices = std::move(vertices);
  v.rays = std::move(rays);
  if (v.vertices.empty()) v.rays.clear();
  canonical_generators(v);
  p.cache_->vrep = std::move(v);
  return p;
}

Polyhedron Polyhedron::empty(int dim) {
  return from_generators(dim, {}, {});
}

Polyhedron Polyhedron::whole_space(int dim) {
  return from_hrep(dim, {});
}

Polyhedron Polyhedron::point(const QVec& p) {
  return from_generators(static_cast<int>(p.size()), {p}, {});
}

Polyhedron Polyhedron::box(const QVec& lo, const QVec& hi) {
  const int d = static_cast<int>(lo.size());
  std::vector<HalfSpace> hs;
  for (int i = 0; i < d; ++i) {
    HalfSpace up{zero_vec(d), hi[i]};
    up.normal[i] = 1;
    HalfSpace down{zero_vec(d), -lo[i]};
    down.normal[i] = -1;
    hs.push_back(std::move(up));
    hs.push_back(std::move(down));
  }
  return from_hrep(d, std::move(hs));
}

Polyhedron Polyhedron::subspace(int dim, const std::vector<QVec>& basis) {
  std::vector<QVec> rays;
  for (const auto& b : basis) {
    if (is_zero(b)) continue;
    rays.push_back(b);
    rays.push_back(vneg(b));
  }
  return from_generators(dim, {zero_vec(dim)}, std::move(rays));
}

const std::vector<HalfSpace>& Polyhedron::hrep() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->hrep) {
    assert(cache_->vrep);
    cache_->hrep = hrep_from_vrep(dim_, *cache_->vrep);
  }
  return *cache_->hrep;
}

const VRep& Polyhedron::vrep() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->vrep) {
    assert(cache_->hrep);
    cache_->vrep = vrep_from_hrep(dim_, *cache_->hrep);
  }
  return *cache_->vrep;
}

bool Polyhedron::is_empty() const { return vrep().vertices.empty(); }

bool Polyhedron::is_bounded() const {
  return is_empty() || vrep().rays.empty();
}

Polyhedron Polyhedron::canonicalized() const {
  // Full round trip prunes redundant generators and redundant constraints.
  const std::vector<HalfSpace> hs = hrep_from_vrep(dim_, vrep());
  Polyhedron p;
  p.dim_ = dim_;
  p.cache_ = std::make_shared<Cache>();
  p.cache_->hrep = hs;
  p.cache_->vrep = vrep_from_hrep(dim_, hs);
  return p;
}

bool Polyhedron::contains(const QVec& y) const {
  if (static_cast<int>(y.size()) != dim_)
    throw DimensionMismatch("contains: point dimension mismatch");
  for (const auto& h : hrep())
    if (dot(h.normal, y) > h.offset) return false;
  return true;
}

bool Polyhedron::contains_direction(const QVec& u) const {
  if (static_cast<int>(u.size()) != dim_)
    throw DimensionMismatch("contains_direction: dimension mismatch");
  if (is_empty()) return false;
  for (const auto& h : hrep())
    if (dot(h.normal, u) > 0) return false;
  return true;
}

std::string Polyhedron::str() const {
  std::ostringstream os;
  const VRep& v = vrep();
  os << "{dim " << dim_ << "; vertices";
  for (const auto& p : v.vertices) os << " " << to_string(p);
  os << "; rays";
  for (const auto& r : v.rays) os << " " << to_string(r);
  os << "}";
  return os.str();
}

ExtRat support(const Polyhedron& p, const QVec& u) {
  if (static_cast<int>(u.size()) != p.dim())
    throw DimensionMismatch("support: dimension mismatch");
  const VRep& v = p.vrep();
  if (v.vertices.empty()) return ExtRat::minus_inf();
  for (const auto& r : v.rays)
    if (dot(u, r) > 0) return ExtRat::plus_inf();
  Rational best = dot(u, v.vertices.front());
  for (const auto& vert : v.vertices) best = std::max(best, dot(u, vert));
  return ExtRat(best);
}

Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim())
    throw DimensionMismatch("minkowski_sum: dimension mismatch");
  if (p.is_empty() || q.is_empty())
    throw EmptyPolyhedronError("minkowski_sum: empty operand");
  const VRep& vp = p.vrep();
  const VRep& vq = q.vrep();
  std::vector<QVec> verts;
  verts.reserve(vp.vertices.size() * vq.vertices.size());
  for (const auto& a : vp.vertices)
    for (const auto& b : vq.vertices) verts.push_back(vadd(a, b));
  std::vector<QVec> rays = vp.rays;
  rays.insert(rays.end(), vq.rays.begin(), vq.rays.end());
  return Polyhedron::from_generators(p.dim(), std::move(verts),
                                     std::move(rays))
      .canonicalized();
}

Polyhedron recession_cone(const Polyhedron& p) {
  if (p.is_empty())
    throw EmptyPolyhedronError("recession_cone: empty input");
  std::vector<HalfSpace> hs;
  for (const auto& h : p.hrep()) hs.push_back({h.normal, 0});
  return Polyhedron::from_hrep(p.dim(), std::move(hs));
}

Polyhedron polar(const Polyhedron& p) {
  if (p.is_empty()) throw EmptyPolyhedronError("polar: empty input");
  const VRep& v = p.vrep();
  std::vector<HalfSpace> hs;
  for (const auto& vert : v.vertices) hs.push_back({vert, 1});
  for (const auto& r : v.rays) hs.push_back({r, 0});
  return Polyhedron::from_hrep(p.dim(), std::move(hs));
}

bool subset_of(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim())
    throw DimensionMismatch("subset_of: dimension mismatch");
  if (p.is_empty()) return true;
  if (q.is_empty()) return false;
  const VRep& v = p.vrep();
  const auto& hq = q.hrep();
  for (const auto& vert : v.vertices)
    for (const auto& h : hq)
      if (dot(h.normal, vert) > h.offset) return false;
  for (const auto& r : v.rays)
    for (const auto& h : hq)
      if (dot(h.normal, r) > 0) return false;
  return true;
}

bool equals(const Polyhedron& p, const Polyhedron& q) {
  return subset_of(p, q) && subset_of(q, p);
}

bool contains(const Polyhedron& p, const QVec& y) { return p.contains(y); }

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim())
    throw DimensionMismatch("intersect: dimension mismatch");
  std::vector<HalfSpace> hs = p.hrep();
  const auto& hq = q.hrep();
  hs.insert(hs.end(), hq.begin(), hq.end());
  return Polyhedron::from_hrep(p.dim(), std::move(hs));
}

Polyhedron scale(const Polyhedron& p, const Rational& c) {
  if (c < 0) throw SubintError("scale: negative factor");
  if (p.is_empty()) return p;
  if (c == 0) return Polyhedron::point(zero_vec(p.dim()));  // 0 * inf = 0
  const VRep& v = p.vrep();
  std::vector<QVec> verts;
  verts.reserve(v.vertices.size());
  for (const auto& vert : v.vertices) verts.push_back(vscale(c, vert));
  return Polyhedron::from_generators(p.dim(), std::move(verts), v.rays);
}

bool is_linear_subspace(const Polyhedron& p) {
  if (p.is_empty()) return false;
  if (!p.contains(zero_vec(p.dim()))) return false;
  const VRep& v = p.vrep();
  std::vector<QVec> neg_verts;
  for (const auto& vert : v.vertices) neg_verts.push_back(vneg(vert));
  std::vector<QVec> neg_rays;
  for (const auto& r : v.rays) neg_rays.push_back(vneg(r));
  Polyhedron minus =
      Polyhedron::from_generators(p.dim(), neg_verts, neg_rays);
  if (!equals(p, minus)) return false;
  // Closed under doubling plus symmetric plus 0 forces a subspace.
  return equals(p, scale(p, 2));
}

std::vector<bool> implicit_equalities(const Polyhedron& p) {
  const auto& hs = p.hrep();
  const VRep& v = p.vrep();
  std::vector<bool> eq(hs.size(), false);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    bool tight = true;
    for (const auto& vert : v.vertices)
      if (dot(hs[i].normal, vert) != hs[i].offset) {
        tight = false;
        break;
      }
    if (tight)
      for (const auto& r : v.rays)
        if (dot(hs[i].normal, r) != 0) {
          tight = false;
          break;
        }
    eq[i] = tight;
  }
  return eq;
}

bool in_relative_interior(const Polyhedron& p, const QVec& y) {
  if (p.is_empty()) return false;
  const auto& hs = p.hrep();
  const std::vector<bool> eq = implicit_equalities(p);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const Rational lhs = dot(hs[i].normal, y);
    if (eq[i]) {
      if (lhs != hs[i].offset) return false;
    } else {
      if (lhs >= hs[i].offset) return false;
    }
  }
  return true;
}

}  // namespace subint
