#include "subint/sequential.hpp"

#include <cassert>

#include "subint/errors.hpp"
#include "subint/linprog.hpp"

namespace subint {

ApproxPair br_step(const PolyhedralConvexFunction& f, const QVec& x0,
                   const QVec& zstar, const Rational& ell,
                   const Rational& lambda) {
  if (lambda <= 0) throw SubintError("br_step: lambda must be positive");
  const ExtRat gap0 = fenchel_gap(f, x0, zstar);
  if (!gap0.is_finite() || gap0.value() > ell)
    throw NotEpsSubgradient("br_step: zstar outside the ell-subdifferential");
  const ExtRat fx0 = value(f, x0);

  if (ell == 0) {
    // Exact input passes through untouched.
    return ApproxPair{x0, zstar, 0, 0};
  }

  const int d = f.dim();
  const Rational shift = ell / lambda;

  // min f(y) - <zstar, y> + shift * max-norm(y - x0).
  LinearProgram lp;
  std::vector<int> yv;
  for (int i = 0; i < d; ++i) yv.push_back(lp.add_var(-zstar[i], true));
  const int rv = lp.add_var(1, true);
  const int sv = lp.add_var(shift);
  for (const auto& p : f.pieces()) {
    QVec row(lp.num_vars, Rational(0));
    for (int i = 0; i < d; ++i) row[yv[i]] = p.a[i];
    row[rv] = -1;
    lp.add_row(std::move(row), RowKind::LessEq, -p.b);
  }
  for (const auto& h : f.domain().hrep()) {
    QVec row(lp.num_vars, Rational(0));
    for (int i = 0; i < d; ++i) row[yv[i]] = h.normal[i];
    lp.add_row(std::move(row), RowKind::LessEq, h.offset);
  }
  for (int i = 0; i < d; ++i) {
    QVec up(lp.num_vars, Rational(0));
    up[yv[i]] = 1;
    up[sv] = -1;
    lp.add_row(std::move(up), RowKind::LessEq, x0[i]);
    QVec down(lp.num_vars, Rational(0));
    down[yv[i]] = -1;
    down[sv] = -1;
    lp.add_row(std::move(down), RowKind::LessEq, -x0[i]);
  }
  const LpResult reg = solve_lp(lp);
  assert(reg.status == LpStatus::Optimal);  // bounded below via zstar in dom f*

  QVec xt(d);
  for (int i = 0; i < d; ++i) xt[i] = reg.x[yv[i]];

  // Nearest exact subgradient at x_t in the 1-norm.
  const Polyhedron sub = eps_subdifferential(f, xt, 0).set;
  LinearProgram near;
  std::vector<int> gv, uv;
  for (int i = 0; i < d; ++i) gv.push_back(near.add_var(0, true));
  for (int i = 0; i < d; ++i) uv.push_back(near.add_var(1));
  for (const auto& h : sub.hrep()) {
    QVec row(near.num_vars, Rational(0));
    for (int i = 0; i < d; ++i) row[gv[i]] = h.normal[i];
    near.add_row(std::move(row), RowKind::LessEq, h.offset);
  }
  for (int i = 0; i < d; ++i) {
    QVec up(near.num_vars, Rational(0));
    up[gv[i]] = 1;
    up[uv[i]] = -1;
    near.add_row(std::move(up), RowKind::LessEq, zstar[i]);
    QVec down(near.num_vars, Rational(0));
    down[gv[i]] = -1;
    down[uv[i]] = -1;
    near.add_row(std::move(down), RowKind::LessEq, -zstar[i]);
  }
  const LpResult dual = solve_lp(near);
  assert(dual.status == LpStatus::Optimal);
  QVec xstar_t(d);
  for (int i = 0; i < d; ++i) xstar_t[i] = dual.x[gv[i]];

  ApproxPair out;
  out.x_t = std::move(xt);
  out.xstar_t = std::move(xstar_t);
  out.displacement = linf_norm(vsub(out.x_t, x0));
  const ExtRat fxt = value(f, out.x_t);
  assert(fxt.is_finite());
  const Rational raw =
      fxt.value() - dot(out.xstar_t, vsub(out.x_t, x0)) - fx0.value();
  out.residual = raw < 0 ? Rational(-raw) : raw;

  // The four-way contract is exact; a failure would falsify the
  // construction, not the input.
  const ExtRat exact_gap = fenchel_gap(f, out.x_t, out.xstar_t);
  if (!(exact_gap == ExtRat(Rational(0))) || out.displacement > lambda ||
      l1_norm(vsub(out.xstar_t, zstar)) > shift || out.residual > 2 * ell)
    throw TheoremViolation("br_step: contract bounds violated");
  return out;
}

ApproxRun br_decompose_run(
    const IntegralInstance& inst, const QVec& x, const QVec& xstar,
    const std::vector<std::pair<Rational, Rational>>& schedule) {
  if (schedule.empty()) throw SubintError("br_decompose_run: empty schedule");
  ApproxRun run;
  run.schedule = schedule;
  if (!contains(lhs_eps_subdifferential(inst, x, schedule.front().first),
                xstar))
    throw NotInSubdifferential(
        "br_decompose_run: xstar is not an eps_1-subgradient at x");

  const int d = inst.dim();
  const int T = inst.num_atoms();
  for (const auto& [eps_k, lambda_k] : schedule) {
    const Polyhedron lhs = lhs_eps_subdifferential(inst, x, eps_k);
    QVec target = xstar;
    if (!contains(lhs, xstar)) {
      // Nearest point of the shrunk set in the max-norm.
      LinearProgram proj;
      std::vector<int> pv;
      for (int i = 0; i < d; ++i) pv.push_back(proj.add_var(0, true));
      const int sv = proj.add_var(1);
      for (const auto& h : lhs.hrep()) {
        QVec row(proj.num_vars, Rational(0));
        for (int i = 0; i < d; ++i) row[pv[i]] = h.normal[i];
        proj.add_row(std::move(row), RowKind::LessEq, h.offset);
      }
      for (int i = 0; i < d; ++i) {
        QVec up(proj.num_vars, Rational(0));
        up[pv[i]] = 1;
        up[sv] = -1;
        proj.add_row(std::move(up), RowKind::LessEq, xstar[i]);
        QVec down(proj.num_vars, Rational(0));
        down[pv[i]] = -1;
        down[sv] = -1;
        proj.add_row(std::move(down), RowKind::LessEq, -xstar[i]);
      }
      const LpResult pr = solve_lp(proj);
      assert(pr.status == LpStatus::Optimal);
      for (int i = 0; i < d; ++i) target[i] = pr.x[pv[i]];
    }

    const DecompositionCertificate cert = decompose(inst, x, target, eps_k);
    ApproxStep step;
    step.eps = eps_k;
    step.lambda = lambda_k;
    step.target = target;
    step.normal = cert.normal;
    QVec resum = cert.normal;
    step.condition_c = 0;
    step.displacement = 0;
    for (int t = 0; t < T; ++t) {
      ApproxPair pair = br_step(inst.integrand(t), x, cert.selections[t],
                                cert.alloc.ell[t], lambda_k);
      step.condition_c += inst.weight(t) * pair.residual;
      step.displacement = std::max(step.displacement, pair.displacement);
      resum = vadd(resum, vscale(inst.weight(t), pair.xstar_t));
      step.pairs.push_back(std::move(pair));
    }
    step.aggregate_gap = linf_norm(vsub(resum, xstar));
    run.steps.push_back(std::move(step));
  }
  return run;
}

std::pair<QVec, Rational> interior_shift(const PolyhedralConvexFunction& f,
                                         const QVec& x, const QVec& zstar,
                                         const QVec& x0star,
                                         const Rational& lambda) {
  if (lambda <= 0 || lambda >= 1)
    throw SubintError("interior_shift: lambda must lie in (0,1)");
  if (!value(f, x).is_finite())
    throw SubintError("interior_shift: f(x) not finite");
  const Polyhedron& dual_dom = f.conjugate().domain();
  if (!dual_dom.contains(zstar))
    throw SubintError("interior_shift: zstar outside dom f*");
  if (!in_relative_interior(dual_dom, x0star))
    throw NotInteriorPoint(
        "interior_shift: anchor is not relative-interior to dom f*");

  const QVec shifted =
      vadd(vscale(1 - lambda, zstar), vscale(lambda, x0star));
  assert(in_relative_interior(dual_dom, shifted));
  const ExtRat gap = fenchel_gap(f, x, shifted);
  assert(gap.is_finite());
  assert(gap.value() >= 0);
  return {shifted, gap.value()};
}

}  // namespace subint
