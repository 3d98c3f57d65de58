#include "subint/calculus.hpp"

#include <cassert>
#include <sstream>

#include "subint/errors.hpp"
#include "subint/linprog.hpp"

namespace subint {

namespace {

std::string describe_point(const QVec& v) { return to_string(v); }

}  // namespace

Polyhedron substitute_epi_level(const Polyhedron& q, const QVec& x,
                                const Rational& level) {
  const int d = static_cast<int>(x.size());
  if (q.dim() != d + 1)
    throw DimensionMismatch("substitute_epi_level: dimension mismatch");
  std::vector<HalfSpace> rows;
  for (const auto& h : q.hrep()) {
    const Rational c = h.normal[d];
    QVec n(h.normal.begin(), h.normal.begin() + d);
    // <a, s> + c (<s,x> + level) <= b
    rows.push_back({vadd(n, vscale(c, x)), h.offset - c * level});
  }
  return Polyhedron::from_hrep(d, std::move(rows));
}

Polyhedron lhs_eps_subdifferential(const IntegralInstance& inst,
                                   const QVec& x, const Rational& eps) {
  if (eps < 0) throw SubintError("lhs_eps_subdifferential: negative eps");
  const ExtRat fx = integral_value(inst, x);
  if (!fx.is_finite()) return Polyhedron::empty(inst.dim());
  return substitute_epi_level(inst.conjugate_epigraph_sum(), x,
                              eps - fx.value());
}

QVec sample_point(const Polyhedron& p, SplitMix& rng, bool use_rays) {
  const VRep& v = p.vrep();
  if (v.vertices.empty()) throw EmptyPolyhedronError("sample_point: empty");
  const int nv = static_cast<int>(v.vertices.size());
  QVec weights(nv, Rational(0));
  Rational total = 0;
  const int picks = rng.uniform(1, std::min(3, nv));
  for (int i = 0; i < picks; ++i) {
    const int j = rng.uniform(0, nv - 1);
    const Rational w = rng.rational(1, 4, 1);
    weights[j] += w;
    total += w;
  }
  QVec point = zero_vec(p.dim());
  for (int j = 0; j < nv; ++j) {
    if (weights[j] == 0) continue;
    point = vadd(point, vscale(weights[j] / total, v.vertices[j]));
  }
  if (use_rays && !v.rays.empty() && rng.uniform(0, 1) == 0) {
    const int picks_r = rng.uniform(1, 2);
    for (int i = 0; i < picks_r; ++i) {
      const int j = rng.uniform(0, static_cast<int>(v.rays.size()) - 1);
      point = vadd(point, vscale(rng.rational(0, 2, 4), v.rays[j]));
    }
  }
  return point;
}

namespace {

// Shared V-parametrized master program.  Variables (all nonnegative):
// per-atom convex weights over epi f_t^* generators, per-atom budgets
// ell_t, and cone weights for the (lambda*, eps2) normal-set cone.
struct MasterLp {
  LinearProgram lp;
  std::vector<Polyhedron> epi;          // conjugate epigraph per atom
  std::vector<std::vector<int>> theta;  // per atom, per epi vertex
  std::vector<std::vector<int>> rho;    // per atom, per epi ray
  std::vector<int> ell;                 // per atom
  std::vector<int> alpha;               // normal-cone generators
  std::vector<QVec> ncone_gens;         // (s, e) generators, aligned with alpha
};

MasterLp build_master(const IntegralInstance& inst, const QVec& x,
                      const QVec& xstar, const Rational& eps,
                      bool with_normal_part) {
  const int d = inst.dim();
  const int T = inst.num_atoms();
  MasterLp m;
  m.theta.resize(T);
  m.rho.resize(T);

  std::vector<const VRep*> epi(T);
  for (int t = 0; t < T; ++t) {
    m.epi.push_back(inst.integrand(t).conjugate().epigraph());
    epi[t] = &m.epi.back().vrep();
    for (std::size_t j = 0; j < epi[t]->vertices.size(); ++j)
      m.theta[t].push_back(m.lp.add_var(0));
    for (std::size_t k = 0; k < epi[t]->rays.size(); ++k)
      m.rho[t].push_back(m.lp.add_var(0));
    m.ell.push_back(m.lp.add_var(inst.weight(t)));  // objective: min eps1
  }
  if (with_normal_part) {
    // Cone {(s,e) : <s, v-x> <= e, <s, w> <= 0, e >= 0} over the domain
    // generators; lambda* = sum alpha g_s, eps2 = sum alpha g_e.
    const VRep& domv = inst.dom().vrep();
    std::vector<HalfSpace> rows;
    for (const auto& v : domv.vertices) {
      QVec n = vsub(v, x);
      n.push_back(-1);
      rows.push_back({std::move(n), 0});
    }
    for (const auto& r : domv.rays) {
      QVec n = r;
      n.push_back(0);
      rows.push_back({std::move(n), 0});
    }
    QVec epos = zero_vec(d + 1);
    epos[d] = -1;
    rows.push_back({std::move(epos), 0});
    Polyhedron ncone = Polyhedron::from_hrep(d + 1, std::move(rows));
    for (const auto& g : ncone.vrep().rays) {
      m.ncone_gens.push_back(g);
      m.alpha.push_back(m.lp.add_var(0));
    }
  }

  // Convexity rows.
  for (int t = 0; t < T; ++t) {
    QVec row(m.lp.num_vars, Rational(0));
    for (int idx : m.theta[t]) row[idx] = 1;
    m.lp.add_row(std::move(row), RowKind::Eq, 1);
  }
  // Gap rows: r_t - <y*_t, x> - ell_t <= -f_t(x).
  for (int t = 0; t < T; ++t) {
    const ExtRat ft = value(inst.integrand(t), x);
    assert(ft.is_finite());
    QVec row(m.lp.num_vars, Rational(0));
    for (std::size_t j = 0; j < m.theta[t].size(); ++j) {
      const QVec& v = epi[t]->vertices[j];
      row[m.theta[t][j]] =
          v[d] - dot(QVec(v.begin(), v.begin() + d), x);
    }
    for (std::size_t k = 0; k < m.rho[t].size(); ++k) {
      const QVec& w = epi[t]->rays[k];
      row[m.rho[t][k]] =
          w[d] - dot(QVec(w.begin(), w.begin() + d), x);
    }
    row[m.ell[t]] = -1;
    m.lp.add_row(std::move(row), RowKind::LessEq, -ft.value());
  }
  // Split row: sum_t mu_t ell_t + eps2 <= eps.
  {
    QVec row(m.lp.num_vars, Rational(0));
    for (int t = 0; t < T; ++t) row[m.ell[t]] = inst.weight(t);
    for (std::size_t g = 0; g < m.alpha.size(); ++g)
      row[m.alpha[g]] = m.ncone_gens[g][d];
    m.lp.add_row(std::move(row), RowKind::LessEq, eps);
  }
  // Sum rows: sum_t mu_t y*_t + lambda* = xstar.
  for (int i = 0; i < d; ++i) {
    QVec row(m.lp.num_vars, Rational(0));
    for (int t = 0; t < T; ++t) {
      for (std::size_t j = 0; j < m.theta[t].size(); ++j)
        row[m.theta[t][j]] = inst.weight(t) * epi[t]->vertices[j][i];
      for (std::size_t k = 0; k < m.rho[t].size(); ++k)
        row[m.rho[t][k]] = inst.weight(t) * epi[t]->rays[k][i];
    }
    for (std::size_t g = 0; g < m.alpha.size(); ++g)
      row[m.alpha[g]] = m.ncone_gens[g][i];
    m.lp.add_row(std::move(row), RowKind::Eq, xstar[i]);
  }
  return m;
}

}  // namespace

DecompositionCertificate decompose(const IntegralInstance& inst,
                                   const QVec& x, const QVec& xstar,
                                   const Rational& eps) {
  if (eps < 0) throw SubintError("decompose: negative eps");
  const ExtRat fx = integral_value(inst, x);
  if (!fx.is_finite())
    throw NotInSubdifferential("decompose: I_f(x) not finite");

  const int d = inst.dim();
  const int T = inst.num_atoms();
  MasterLp m = build_master(inst, x, xstar, eps, /*with_normal_part=*/true);
  const LpResult r = solve_lp(m.lp);
  if (r.status != LpStatus::Optimal) {
    if (contains(lhs_eps_subdifferential(inst, x, eps), xstar))
      throw TheoremViolation(
          "decompose: membership holds but the certificate program is "
          "infeasible at x=" +
          describe_point(x) + ", x*=" + describe_point(xstar));
    throw NotInSubdifferential("decompose: x* outside the eps-subdifferential");
  }

  DecompositionCertificate cert;
  cert.selections.assign(T, zero_vec(d));
  cert.alloc.ell.assign(T, Rational(0));
  for (int t = 0; t < T; ++t) {
    const VRep& v = m.epi[t].vrep();
    QVec y = zero_vec(d);
    for (std::size_t j = 0; j < m.theta[t].size(); ++j) {
      const Rational& w = r.x[m.theta[t][j]];
      if (w == 0) continue;
      y = vadd(y, vscale(w, QVec(v.vertices[j].begin(),
                                 v.vertices[j].begin() + d)));
    }
    for (std::size_t k = 0; k < m.rho[t].size(); ++k) {
      const Rational& w = r.x[m.rho[t][k]];
      if (w == 0) continue;
      y = vadd(y, vscale(w, QVec(v.rays[k].begin(), v.rays[k].begin() + d)));
    }
    cert.selections[t] = std::move(y);
    cert.alloc.ell[t] = r.x[m.ell[t]];
  }
  cert.normal = zero_vec(d);
  cert.eps2 = 0;
  for (std::size_t g = 0; g < m.alpha.size(); ++g) {
    const Rational& w = r.x[m.alpha[g]];
    if (w == 0) continue;
    cert.normal = vadd(cert.normal,
                       vscale(w, QVec(m.ncone_gens[g].begin(),
                                      m.ncone_gens[g].begin() + d)));
    cert.eps2 += w * m.ncone_gens[g][d];
  }
  cert.eps1 = r.objective;
  cert.alloc.budget = cert.eps1;
  return cert;
}

bool verify_certificate(const IntegralInstance& inst, const QVec& x,
                        const QVec& xstar, const Rational& eps,
                        const DecompositionCertificate& cert) {
  const int T = inst.num_atoms();
  if (static_cast<int>(cert.selections.size()) != T ||
      static_cast<int>(cert.alloc.ell.size()) != T)
    return false;
  if (cert.eps1 < 0 || cert.eps2 < 0 || cert.eps1 + cert.eps2 > eps)
    return false;
  if (cert.alloc.budget != cert.eps1) return false;

  Rational total = 0;
  for (int t = 0; t < T; ++t) {
    if (cert.alloc.ell[t] < 0) return false;
    total += inst.weight(t) * cert.alloc.ell[t];
  }
  if (total > cert.eps1) return false;

  for (int t = 0; t < T; ++t) {
    const ExtRat gap = fenchel_gap(inst.integrand(t), x, cert.selections[t]);
    if (!gap.is_finite() || gap.value() > cert.alloc.ell[t]) return false;
  }

  if (!inst.dom().contains(x)) return false;
  if (!eps_normal(inst.dom(), x, cert.eps2).contains(cert.normal))
    return false;

  QVec sum = cert.normal;
  for (int t = 0; t < T; ++t)
    sum = vadd(sum, vscale(inst.weight(t), cert.selections[t]));
  return sum == xstar;
}

CheckReport check_sum_rule(const IntegralInstance& inst, const QVec& x,
                           const Rational& eps, std::uint64_t seed,
                           int samples) {
  CheckReport rep;
  rep.theorem = "eps-subdifferential sum rule";
  rep.notes.push_back(
      "weak-* closures collapse to identity over polyhedral data in "
      "finite dimension; the gamma-limit form coincides with gamma = 0");
  rep.notes.push_back(
      "strong and weak integrals of the selection maps coincide over "
      "finitely many atoms, so the selection-regularity distinctions are "
      "vacuous here");
  SplitMix rng(seed);
  const int T = inst.num_atoms();
  const Polyhedron lhs = lhs_eps_subdifferential(inst, x, eps);

  // Right-to-left: randomly assembled certificates must land inside.
  for (int i = 0; i < samples; ++i) {
    const Rational eps1 = eps * rng.rational(0, 1, 4);
    const Rational eps2 = eps - eps1;
    QVec raw(T);
    Rational mass = 0;
    for (int t = 0; t < T; ++t) {
      raw[t] = rng.rational(0, 3, 2);
      mass += inst.weight(t) * raw[t];
    }
    QVec ell(T, Rational(0));
    if (mass > 0)
      for (int t = 0; t < T; ++t) ell[t] = raw[t] * (eps1 / mass);
    QVec point = zero_vec(inst.dim());
    for (int t = 0; t < T; ++t) {
      const Polyhedron part =
          eps_subdifferential(inst.integrand(t), x, ell[t]).set;
      point = vadd(point,
                   vscale(inst.weight(t), sample_point(part, rng)));
    }
    point = vadd(point, sample_point(eps_normal(inst.dom(), x, eps2), rng));
    const bool inside = contains(lhs, point);
    const ExtRat gap = fenchel_gap(inst.integral_function(), x, point);
    const bool gap_ok = gap.is_finite() && gap.value() <= eps;
    if (!inside || !gap_ok) {
      rep.pass = false;
      rep.counterexample = "assembled point escapes the left side: " +
                           describe_point(point);
      return rep;
    }
  }
  rep.witnesses.push_back(std::to_string(samples) +
                          " sampled assemblies contained in the left side");

  // Left-to-right: certify every vertex, match every ray.
  const VRep& v = lhs.vrep();
  for (const auto& vert : v.vertices) {
    try {
      const DecompositionCertificate cert = decompose(inst, x, vert, eps);
      if (!verify_certificate(inst, x, vert, eps, cert)) {
        rep.pass = false;
        rep.counterexample =
            "certificate for vertex " + describe_point(vert) +
            " fails verification";
        return rep;
      }
    } catch (const SubintError& e) {
      rep.pass = false;
      rep.counterexample = "vertex " + describe_point(vert) +
                           " received no certificate: " + e.what();
      return rep;
    }
  }
  const Polyhedron ncone = eps_normal(inst.dom(), x, 0);
  for (const auto& ray : v.rays) {
    if (!ncone.contains(ray)) {
      rep.pass = false;
      rep.counterexample = "unbounded direction " + describe_point(ray) +
                           " missing from the normal cone";
      return rep;
    }
  }
  rep.witnesses.push_back(std::to_string(v.vertices.size()) +
                          " vertices certified, " +
                          std::to_string(v.rays.size()) + " rays matched");
  return rep;
}

ExtRat inf_convolution_value(const IntegralInstance& inst,
                             const QVec& xstar) {
  const int d = inst.dim();
  const int T = inst.num_atoms();
  LinearProgram lp;
  std::vector<std::vector<int>> theta(T), rho(T);
  std::vector<Polyhedron> epi_polys;
  std::vector<const VRep*> epi(T);
  for (int t = 0; t < T; ++t) {
    epi_polys.push_back(inst.integrand(t).conjugate().epigraph());
    epi[t] = &epi_polys.back().vrep();
    for (const auto& v : epi[t]->vertices)
      theta[t].push_back(lp.add_var(inst.weight(t) * v[d]));
    for (const auto& w : epi[t]->rays)
      rho[t].push_back(lp.add_var(inst.weight(t) * w[d]));
  }
  for (int t = 0; t < T; ++t) {
    QVec row(lp.num_vars, Rational(0));
    for (int idx : theta[t]) row[idx] = 1;
    lp.add_row(std::move(row), RowKind::Eq, 1);
  }
  for (int i = 0; i < d; ++i) {
    QVec row(lp.num_vars, Rational(0));
    for (int t = 0; t < T; ++t) {
      for (std::size_t j = 0; j < theta[t].size(); ++j)
        row[theta[t][j]] = inst.weight(t) * epi[t]->vertices[j][i];
      for (std::size_t k = 0; k < rho[t].size(); ++k)
        row[rho[t][k]] = inst.weight(t) * epi[t]->rays[k][i];
    }
    lp.add_row(std::move(row), RowKind::Eq, xstar[i]);
  }
  const LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Infeasible) return ExtRat::plus_inf();
  assert(r.status == LpStatus::Optimal);
  return ExtRat(r.objective);
}

EpigraphSumSet build_epigraph_sets(const IntegralInstance& inst) {
  const int d = inst.dim();
  std::optional<Polyhedron> g_sum;
  for (int t = 0; t < inst.num_atoms(); ++t) {
    const PolyhedralConvexFunction& conj = inst.integrand(t).conjugate();
    const Polyhedron epi = conj.epigraph();
    const VRep& v = epi.vrep();
    // Graph generators: epigraph vertices dropped onto the graph, rays
    // lifted by the minimal (recession-slope) amount, vertical removed.
    std::vector<QVec> verts;
    for (const auto& vert : v.vertices) {
      QVec s(vert.begin(), vert.begin() + d);
      const ExtRat val = value(conj, s);
      assert(val.is_finite());
      QVec lifted = s;
      lifted.push_back(val.value());
      verts.push_back(std::move(lifted));
    }
    std::vector<QVec> rays;
    for (const auto& r : v.rays) {
      QVec w(r.begin(), r.begin() + d);
      if (is_zero(w)) continue;  // vertical direction
      // Minimal rho with (w, rho) in the epigraph recession cone.
      std::optional<Rational> rho_min;
      for (const auto& h : epi.hrep()) {
        const Rational c = h.normal[d];
        if (c >= 0) continue;
        const Rational bound =
            dot(QVec(h.normal.begin(), h.normal.begin() + d), w) / (-c);
        if (!rho_min || bound > *rho_min) rho_min = bound;
      }
      assert(rho_min);  // a proper function has a piece row with c < 0
      QVec lifted = w;
      lifted.push_back(*rho_min);
      rays.push_back(std::move(lifted));
    }
    Polyhedron graph_t =
        scale(Polyhedron::from_generators(d + 1, verts, rays),
              inst.weight(t));
    g_sum = g_sum ? minkowski_sum(*g_sum, graph_t) : graph_t;
  }
  EpigraphSumSet out{inst.conjugate_epigraph_sum(), g_sum->canonicalized()};
  return out;
}

namespace {

Polyhedron vertical_ray(int d) {
  QVec up = zero_vec(d + 1);
  up[d] = 1;
  return Polyhedron::from_generators(d + 1, {zero_vec(d + 1)}, {up});
}

}  // namespace

CheckReport normal_set_four_ways(const IntegralInstance& inst, const QVec& x,
                                 const Rational& eps) {
  CheckReport rep;
  rep.theorem = "eps-normal set characterizations";
  rep.notes.push_back(
      "closed convex hulls are exact polyhedral objects here; the "
      "Dieudonne closedness hypothesis holds automatically");
  if (!inst.dom().contains(x))
    throw PointNotInSet("normal_set_four_ways: x outside dom I_f");
  const int d = inst.dim();

  // (1) directly from the domain generators.
  const Polyhedron n1 = eps_normal_dom(inst, x, eps);
  // (2) through the epigraph of the support function of the domain.
  const PolyhedralConvexFunction sigma_dom =
      conjugate_function(PolyhedralConvexFunction::indicator(inst.dom()));
  const Polyhedron n2 = substitute_epi_level(sigma_dom.epigraph(), x, eps);
  // (3) recession of the epigraph of (I_f)^* built by direct conjugation.
  const Polyhedron epi_conj_direct =
      conjugate_function(inst.integral_function()).epigraph();
  const Polyhedron n3 =
      substitute_epi_level(recession_cone(epi_conj_direct), x, eps);
  // (4) recession of the epigraph sum E, and (5) recession of the graph
  // sum with the [0, eps] vertical slack.
  const EpigraphSumSet sets = build_epigraph_sets(inst);
  const Polyhedron n4 = substitute_epi_level(recession_cone(sets.E), x, eps);
  Polyhedron slack =
      eps == 0 ? Polyhedron::point(zero_vec(d + 1))
               : Polyhedron::from_generators(
                     d + 1, {zero_vec(d + 1), [&] {
                               QVec v = zero_vec(d + 1);
                               v[d] = eps;
                               return v;
                             }()},
                     {});
  const Polyhedron n5 = substitute_epi_level(
      minkowski_sum(recession_cone(sets.G), slack), x, eps);

  const Polyhedron* forms[] = {&n1, &n2, &n3, &n4, &n5};
  const char* names[] = {"domain-generators", "support-epigraph",
                         "conjugate-recession", "epigraph-sum-recession",
                         "graph-sum-recession-with-slack"};
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      if (!equals(*forms[i], *forms[j])) {
        rep.pass = false;
        std::ostringstream os;
        os << "forms '" << names[i] << "' and '" << names[j]
           << "' differ at x=" << describe_point(x) << ", eps=" << eps
           << ": " << forms[i]->str() << " vs " << forms[j]->str();
        rep.counterexample = os.str();
        return rep;
      }
    }
  }
  rep.witnesses.push_back("five computation routes agree: " + n1.str());
  return rep;
}

CheckReport check_restricted_formula(const IntegralInstance& inst,
                                     const SubspaceRestriction& L,
                                     const QVec& x, const Rational& eps,
                                     std::uint64_t seed) {
  CheckReport rep;
  rep.theorem = "restricted eps-normal formula via the indicator atom";
  if (!L.set.contains(x))
    throw PointNotInSet("check_restricted_formula: x outside L");
  if (!inst.dom().contains(x))
    throw PointNotInSet("check_restricted_formula: x outside dom I_f");

  const IntegralInstance aug = augment_with_indicator(inst, L);

  CheckReport sum = check_sum_rule(aug, x, eps, seed);
  CheckReport four = normal_set_four_ways(aug, x, eps);
  if (!sum.pass || !four.pass) {
    rep.pass = false;
    rep.counterexample = !sum.pass ? sum.counterexample : four.counterexample;
    return rep;
  }

  // Direct computation on the intersected set against the augmented
  // recession characterizations (the A/B sets of the restricted formula).
  const Polyhedron restricted_dom =
      intersect(inst.dom(), L.set).canonicalized();
  const Polyhedron direct = eps_normal(restricted_dom, x, eps);
  const EpigraphSumSet aug_sets = build_epigraph_sets(aug);
  const Polyhedron a_form =
      substitute_epi_level(recession_cone(aug_sets.E), x, eps);
  Polyhedron slack =
      eps == 0
          ? Polyhedron::point(zero_vec(inst.dim() + 1))
          : Polyhedron::from_generators(inst.dim() + 1,
                                        {zero_vec(inst.dim() + 1), [&] {
                                           QVec v = zero_vec(inst.dim() + 1);
                                           v[inst.dim()] = eps;
                                           return v;
                                         }()},
                                        {});
  const Polyhedron b_form = substitute_epi_level(
      minkowski_sum(recession_cone(aug_sets.G), slack), x, eps);
  if (!equals(direct, a_form) || !equals(direct, b_form)) {
    rep.pass = false;
    rep.counterexample =
        "restricted normal set differs from the augmented recession form "
        "at x=" + describe_point(x);
    return rep;
  }
  rep.witnesses.push_back("restricted normal set: " + direct.str());
  rep.notes = four.notes;
  return rep;
}

}  // namespace subint
