#include "subint/examples.hpp"

#include <cmath>
#include <sstream>

#include "subint/errors.hpp"

namespace subint {

namespace {

double pow2(int n) { return std::ldexp(1.0, n); }

}  // namespace

L2Report l2_example(int dim, const std::vector<double>& point) {
  if (dim < 1) throw SubintError("l2_example: dim must be >= 1");
  if (static_cast<int>(point.size()) != dim)
    throw SubintError("l2_example: point size mismatch");
  L2Report rep;
  rep.dim = dim;
  rep.point = point;
  // Atom n carries weight 2^{-n} and the integrand 2^n <e_n, x>^2, so the
  // weighted sum telescopes to the squared norm and the weighted gradient
  // sum to 2x.
  double norm2 = 0;
  double grad_err = 0;
  double surrogate = 0;
  double direct = 0;
  for (int n = 1; n <= dim; ++n) {
    const double xn = point[n - 1];
    direct += (1.0 / pow2(n)) * pow2(n) * xn * xn;
    norm2 += xn * xn;
    const double grad_n = pow2(n + 1) * xn;  // d/dx of 2^n x^2
    const double assembled = (1.0 / pow2(n)) * grad_n;
    grad_err = std::max(grad_err, std::abs(assembled - 2.0 * xn));
    surrogate += (1.0 / pow2(n)) * std::abs(grad_n);
  }
  rep.value_direct = direct;
  rep.value_norm = norm2;
  rep.gradient_error = grad_err;
  rep.l1_surrogate = surrogate;
  const double scale = std::max(1.0, std::abs(norm2));
  rep.pass = std::abs(direct - norm2) <= 1e-12 * scale && grad_err < 1e-12;
  return rep;
}

std::vector<double> l2_divergence_surrogates(const std::vector<int>& dims) {
  std::vector<double> out;
  for (int d : dims) {
    double s = 0;
    for (int n = 1; n <= d; ++n) s += 2.0 * (1.0 / n);  // 2 sum |x_n|
    out.push_back(s);
  }
  return out;
}

L1Report l1_example(int n_max) {
  if (n_max < 1) throw SubintError("l1_example: n_max must be >= 1");
  L1Report rep;
  rep.n_max = n_max;
  rep.gradient_at_zero_norm = 0;  // every atom has vanishing gradient at 0

  // Difference quotient along e_n with step 1/n; the integrand family is
  // f_m(x) = |x_m|^{1 + 1/m} with unit weights, so only atom n
  // contributes at the probe point.
  auto integral_at = [&](int n, double h) {
    double s = 0;
    for (int m = 1; m <= n_max; ++m) {
      const double xm = (m == n) ? h : 0.0;
      if (xm != 0.0) s += std::pow(std::abs(xm), 1.0 + 1.0 / m);
    }
    return s;
  };

  double max_err = 0;
  for (int n = 1; n <= n_max; ++n) {
    const double h = 1.0 / n;
    const double quotient = (integral_at(n, h) - integral_at(n, 0.0)) / h;
    const double closed_form = std::pow(n, -1.0 / n);
    rep.frechet_quotients.push_back(quotient);
    max_err = std::max(max_err, std::abs(quotient - closed_form));
  }
  rep.max_abs_error = max_err;
  rep.at_n_max = rep.frechet_quotients.back();
  rep.eventually_increasing = true;
  for (std::size_t i = 3; i + 1 < rep.frechet_quotients.size(); ++i)
    if (rep.frechet_quotients[i + 1] < rep.frechet_quotients[i])
      rep.eventually_increasing = false;

  // Directional quotients vanish with the step; below 1e-3 needs
  // |h| < 1e-3n, which stays inside double range only for n <= 100.
  const int n_gateaux = std::min(n_max, 100);
  for (int n = 1; n <= n_gateaux; ++n) {
    L1GateauxTrace trace;
    trace.n = n;
    trace.monotone = true;
    double h = 1e-9;
    for (int j = 0; j < 120 && h > 0; ++j) {
      const double q = (integral_at(n, h) - integral_at(n, 0.0)) / h;
      if (!trace.quotients.empty() && q > trace.quotients.back())
        trace.monotone = false;
      trace.steps.push_back(h);
      trace.quotients.push_back(q);
      if (q < 1e-3) {
        trace.reached_threshold = true;
        break;
      }
      h *= 1e-3;
    }
    rep.gateaux.push_back(std::move(trace));
  }

  bool gateaux_ok = true;
  for (const auto& t : rep.gateaux)
    gateaux_ok = gateaux_ok && t.reached_threshold && t.monotone;
  rep.pass = max_err <= 1e-12 &&
             (n_max < 1000 || rep.at_n_max > 0.99) && gateaux_ok;
  return rep;
}

GateauxReport gateaux_correspondence(const IntegralInstance& inst,
                                     const QVec& x) {
  GateauxReport rep;
  // Interior test: strict on every domain constraint.
  for (const auto& h : inst.dom().hrep())
    if (dot(h.normal, x) >= h.offset)
      throw PointNotInSet(
          "gateaux_correspondence: x is not interior to dom I_f");

  const Differentiability whole =
      is_differentiable_at(inst.integral_function(), x);
  rep.integral_differentiable = whole.differentiable;
  bool all_atoms = true;
  QVec weighted_sum = zero_vec(inst.dim());
  for (int t = 0; t < inst.num_atoms(); ++t) {
    const Differentiability dt = is_differentiable_at(inst.integrand(t), x);
    rep.atom_differentiable.push_back(dt.differentiable);
    all_atoms = all_atoms && dt.differentiable;
    if (dt.differentiable)
      weighted_sum =
          vadd(weighted_sum, vscale(inst.weight(t), *dt.gradient));
  }
  rep.equivalence_holds = (whole.differentiable == all_atoms);
  if (whole.differentiable && all_atoms)
    rep.gradient_additivity = (*whole.gradient == weighted_sum);
  else
    rep.gradient_additivity = true;  // nothing to compare
  std::ostringstream os;
  os << "I_f " << (whole.differentiable ? "" : "not ")
     << "differentiable at " << to_string(x);
  rep.detail = os.str();
  return rep;
}

}  // namespace subint
