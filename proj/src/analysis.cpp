#include "barnes_zeta/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "barnes_zeta/complex_math.hpp"
#include "barnes_zeta/errors.hpp"
#include "barnes_zeta/parallel.hpp"

namespace barnes {
namespace {

ExponentFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientSpan("fit: abscissae do not vary");
  ExponentFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    sse += e * e;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  f.windows = static_cast<int>(x.size());
  return f;
}

double relative(cplx a, cplx b) {
  const double scale = std::max(std::abs(b), std::numeric_limits<double>::min());
  return std::abs(a - b) / scale;
}

// Nodes 2 = t_0 < ... covering every T, each [T_j, T_{j+1}] split evenly.
// index_of[j] is the node index of T_values[j].
std::vector<double> moment_nodes(const std::vector<double>& T_values, int per_unit, std::vector<std::size_t>& index_of) {
  std::vector<double> nodes{2.0};
  double prev = 2.0;
  index_of.clear();
  for (double T : T_values) {
    const auto steps = static_cast<std::int64_t>(std::ceil((T - prev) * per_unit - 1e-9));
    for (std::int64_t i = 1; i <= steps; ++i)
      nodes.push_back(i == steps ? T : prev + (T - prev) * static_cast<double>(i) / static_cast<double>(steps));
    index_of.push_back(nodes.size() - 1);
    prev = T;
  }
  return nodes;
}

void check_moment_args(double sigma, int k, const std::vector<double>& T_values, int per_unit) {
  if (!(sigma >= 0.5 && sigma <= 2.0)) throw DomainError("moment_integral: sigma must lie in [1/2, 2]");
  if (k < 1) throw DomainError("moment_integral: k must be positive");
  if (per_unit < 1) throw DomainError("moment_integral: quad_points_per_unit must be positive");
  double prev = 2.0;
  for (double T : T_values) {
    if (!(T >= prev) || !std::isfinite(T)) throw DomainError("moment_integral: T values must be increasing and >= 2");
    prev = T;
  }
}

std::vector<double> integrand(double sigma, int k, const std::vector<double>& nodes, const BarnesParams& params,
                              const DispatchPolicy& policy) {
  std::vector<double> f(nodes.size());
  parallel_for(static_cast<std::int64_t>(nodes.size()), [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    const double mag = std::abs(evaluate(cplx(sigma, nodes[idx]), params, policy).value);
    f[idx] = std::pow(mag, 2.0 * k);
  });
  return f;
}

MomentCurve integrate(double sigma, int k, const std::vector<double>& nodes, const std::vector<double>& f,
                      const std::vector<std::size_t>& index_of, const std::vector<double>& T_values,
                      std::size_t stride) {
  MomentCurve c;
  c.k = k;
  c.sigma = sigma;
  double acc = 0.0;
  std::size_t pos = 0;
  for (std::size_t j = 0; j < T_values.size(); ++j) {
    while (pos + stride <= index_of[j]) {
      acc += 0.5 * (nodes[pos + stride] - nodes[pos]) * (f[pos] + f[pos + stride]);
      pos += stride;
    }
    c.points.push_back({T_values[j], acc});
  }
  return c;
}

}  // namespace

IdentityReport verify_identity_vw11(cplx alpha, const std::vector<cplx>& s_grid, double tol,
                                    const DispatchPolicy& policy) {
  IdentityReport rep;
  rep.tol = tol;
  rep.points.resize(s_grid.size());
  const BarnesParams params = make_params(alpha, 1.0, 1.0);
  parallel_for(static_cast<std::int64_t>(s_grid.size()), [&](std::int64_t i) {
    IdentityPoint& pt = rep.points[static_cast<std::size_t>(i)];
    pt.s = s_grid[static_cast<std::size_t>(i)];
    try {
      const EvalResult lhs = evaluate(pt.s, params, policy);
      pt.lhs = lhs.value;
      pt.method = lhs.method;
      pt.rhs = (1.0 - alpha) * hurwitz_zeta(pt.s, alpha).value + hurwitz_zeta(pt.s - 1.0, alpha).value;
      pt.rel_dev = relative(pt.lhs, pt.rhs);
      pt.ok = pt.rel_dev < tol;
    } catch (const Error& e) {
      pt.error = e.what();
      pt.ok = false;
    }
  });
  for (const auto& pt : rep.points) {
    if (pt.error.empty()) rep.max_rel_dev = std::max(rep.max_rel_dev, pt.rel_dev);
    if (!pt.ok) rep.failing.push_back(pt.s);
  }
  return rep;
}

bool CrossCheckReport::passed() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairCheck& p) { return p.ok; });
}

CrossCheckReport cross_check(cplx s, const BarnesParams& params, const std::vector<MethodTag>& methods,
                             double tol_mult, const DispatchPolicy& policy) {
  CrossCheckReport rep;
  rep.s = s;
  for (MethodTag m : methods) {
    MethodOutcome o{m, false, {}, {}};
    try {
      o.result = evaluate_with(m, s, params, policy);
      o.applicable = true;
    } catch (const Error& e) {
      o.error = e.what();
    }
    rep.outcomes.push_back(o);
  }
  std::vector<const MethodOutcome*> ok;
  for (const auto& o : rep.outcomes)
    if (o.applicable) ok.push_back(&o);
  if (ok.size() < 2) throw NotEnoughMethods("cross_check: fewer than two methods apply at this s");
  for (std::size_t i = 0; i < ok.size(); ++i) {
    for (std::size_t j = i + 1; j < ok.size(); ++j) {
      const EvalResult& a = ok[i]->result;
      const EvalResult& b = ok[j]->result;
      PairCheck p{ok[i]->method, ok[j]->method, std::abs(a.value - b.value), 0.0, false};
      p.tolerance = tol_mult * (a.abs_err_est + b.abs_err_est) +
                    64.0 * kEps * std::max(std::abs(a.value), std::abs(b.value));
      p.ok = p.deviation <= p.tolerance;
      rep.pairs.push_back(p);
    }
  }
  return rep;
}

std::vector<ScanRecord> growth_scan(double sigma, double t_min, double t_max, int samples_per_decade,
                                    const BarnesParams& params, const DispatchPolicy& policy) {
  if (!std::isfinite(sigma)) throw DomainError("growth_scan: sigma must be finite");
  if (!(t_min >= 2.0 && t_max > t_min && std::isfinite(t_max)))
    throw DomainError("growth_scan: need 2 <= t_min < t_max");
  if (samples_per_decade < 1) throw DomainError("growth_scan: samples_per_decade must be positive");
  const double decades = std::log10(t_max / t_min);
  const auto n = static_cast<std::int64_t>(std::ceil(decades * samples_per_decade)) + 1;
  std::vector<ScanRecord> out(static_cast<std::size_t>(n));
  parallel_for(n, [&](std::int64_t i) {
    ScanRecord& rec = out[static_cast<std::size_t>(i)];
    rec.t = i == n - 1 ? t_max : t_min * std::pow(t_max / t_min, static_cast<double>(i) / static_cast<double>(n - 1));
    try {
      const EvalResult r = evaluate(cplx(sigma, rec.t), params, policy);
      rec.magnitude = std::abs(r.value);
      rec.method = r.method;
      rec.err = r.abs_err_est;
    } catch (const Error& e) {
      rec.ok = false;
      rec.error = e.what();
    }
  });
  return out;
}

ExponentFit fit_exponent(const std::vector<ScanRecord>& records, int windows) {
  if (windows < 4) throw InsufficientSpan("fit_exponent: need at least 4 windows");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : records) {
    if (!r.ok || !(r.magnitude > 0.0) || !(r.t > 0.0)) continue;
    lo = std::min(lo, r.t);
    hi = std::max(hi, r.t);
  }
  if (!(hi >= 10.0 * lo)) throw InsufficientSpan("fit_exponent: records must span at least one decade in t");
  const double llo = std::log(lo), lhi = std::log(hi);
  const double width = (lhi - llo) / windows;
  std::vector<std::optional<std::pair<double, double>>> best(static_cast<std::size_t>(windows));
  for (const auto& r : records) {
    if (!r.ok || !(r.magnitude > 0.0) || !(r.t > 0.0)) continue;
    const int w = std::min(windows - 1, static_cast<int>((std::log(r.t) - llo) / width));
    auto& b = best[static_cast<std::size_t>(w)];
    if (!b || r.magnitude > b->second) b = std::make_pair(r.t, r.magnitude);
  }
  std::vector<double> x, y;
  for (const auto& b : best) {
    if (!b) continue;
    x.push_back(std::log(b->first));
    y.push_back(std::log(b->second));
  }
  if (x.size() < 4) throw InsufficientSpan("fit_exponent: fewer than 4 windows contain samples");
  return least_squares(x, y);
}

MomentCurve moment_integral(double sigma, int k, const std::vector<double>& T_values, const BarnesParams& params,
                            int quad_points_per_unit, const DispatchPolicy& policy) {
  check_moment_args(sigma, k, T_values, quad_points_per_unit);
  std::vector<std::size_t> index_of;
  const std::vector<double> nodes = moment_nodes(T_values, quad_points_per_unit, index_of);
  const std::vector<double> f = integrand(sigma, k, nodes, params, policy);
  return integrate(sigma, k, nodes, f, index_of, T_values, 1);
}

MomentStudy moment_step_halving(double sigma, int k, const std::vector<double>& T_values,
                                const BarnesParams& params, int quad_points_per_unit,
                                const DispatchPolicy& policy) {
  check_moment_args(sigma, k, T_values, quad_points_per_unit);
  // Segment step counts at density d are rounded up, so the fine grid uses
  // exactly twice as many steps per segment to keep the coarse nodes.
  std::vector<std::size_t> coarse_index;
  const std::vector<double> coarse_nodes = moment_nodes(T_values, quad_points_per_unit, coarse_index);
  std::vector<double> nodes{coarse_nodes.front()};
  for (std::size_t i = 1; i < coarse_nodes.size(); ++i) {
    nodes.push_back(0.5 * (coarse_nodes[i - 1] + coarse_nodes[i]));
    nodes.push_back(coarse_nodes[i]);
  }
  std::vector<std::size_t> index_of;
  for (std::size_t j : coarse_index) index_of.push_back(2 * j);
  const std::vector<double> f = integrand(sigma, k, nodes, params, policy);

  MomentStudy st;
  st.fine = integrate(sigma, k, nodes, f, index_of, T_values, 1);
  st.coarse = integrate(sigma, k, nodes, f, index_of, T_values, 2);
  for (std::size_t j = 0; j < T_values.size(); ++j) {
    const double c = st.coarse.points[j].value, fv = st.fine.points[j].value;
    if (fv > 0.0) st.max_rel_change = std::max(st.max_rel_change, std::abs(c - fv) / fv);
  }
  return st;
}

ExponentFit fit_moment_growth(const MomentCurve& curve) {
  std::vector<double> x, y;
  for (const auto& p : curve.points) {
    if (!(p.value > 0.0)) continue;
    x.push_back(std::log(p.T));
    y.push_back(std::log(p.value));
  }
  if (x.size() < 4) throw InsufficientSpan("fit_moment_growth: need at least 4 positive points");
  return least_squares(x, y);
}

}  // namespace barnes
