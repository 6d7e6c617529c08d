#include "smc/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "smc/errors.hpp"

namespace smc {

double BasisTerm::eval(const FeatureRow& x) const {
  switch (kind) {
    case BasisKind::NSquared:
      return x.n * x.n;
    case BasisKind::N:
      return x.n;
    case BasisKind::NLogN:
      return x.n * std::log(x.n);
    case BasisKind::TlrFeature:
      return std::pow(x.k + shift, exponent) * x.max_runtime;
    case BasisKind::K:
      return x.k;
    case BasisKind::Constant:
      return 1.0;
  }
  return 0.0;
}

std::string BasisTerm::name() const {
  switch (kind) {
    case BasisKind::NSquared:
      return "N^2";
    case BasisKind::N:
      return "N";
    case BasisKind::NLogN:
      return "N*ln(N)";
    case BasisKind::TlrFeature: {
      std::ostringstream os;
      os << "(K+" << shift << ")^" << exponent << "*MaxRuntime";
      return os.str();
    }
    case BasisKind::K:
      return "K";
    case BasisKind::Constant:
      return "1";
  }
  return "?";
}

double LinearModel::predict(const FeatureRow& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) s += coefficients[j] * basis[j].eval(x);
  return s;
}

LinearModel ols_fit(const std::vector<FeatureRow>& x, const std::vector<double>& y,
                    std::vector<BasisTerm> basis) {
  if (x.size() != y.size()) throw DomainError("ols_fit: feature and target counts differ");
  if (basis.empty()) throw FitError("ols_fit: empty basis");
  const auto m = static_cast<Eigen::Index>(x.size());
  const auto p = static_cast<Eigen::Index>(basis.size());
  if (m < p)
    throw FitError("ols_fit: " + std::to_string(m) + " points for " + std::to_string(p) +
                   " basis functions");

  Eigen::MatrixXd design(m, p);
  Eigen::VectorXd target(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) design(i, j) = basis[static_cast<std::size_t>(j)].eval(x[static_cast<std::size_t>(i)]);
    target(i) = y[static_cast<std::size_t>(i)];
  }
  if (!design.allFinite() || !target.allFinite()) throw FitError("ols_fit: non-finite design or target");

  // Unit max-norm columns keep N^2 and 1 on the same footing.
  Eigen::VectorXd scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    scale(j) = design.col(j).cwiseAbs().maxCoeff();
    if (scale(j) == 0.0)
      throw FitError("ols_fit: rank-deficient design (column " + basis[static_cast<std::size_t>(j)].name() +
                     " is zero, condition estimate inf)");
    design.col(j) /= scale(j);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
  const double cond = diag.minCoeff() > 0.0 ? diag.maxCoeff() / diag.minCoeff()
                                            : std::numeric_limits<double>::infinity();
  if (qr.rank() < p) {
    std::ostringstream os;
    os << "ols_fit: rank-deficient design (rank " << qr.rank() << " of " << p
       << ", condition estimate " << cond << ")";
    throw FitError(os.str());
  }
  const Eigen::VectorXd beta = qr.solve(target);

  LinearModel model;
  model.basis = std::move(basis);
  model.coefficients.resize(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) model.coefficients[static_cast<std::size_t>(j)] = beta(j) / scale(j);
  for (double c : model.coefficients)
    if (!std::isfinite(c)) throw FitError("ols_fit: non-finite coefficient");
  return model;
}

std::vector<double> lm_predict(const LinearModel& model, const std::vector<FeatureRow>& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(model.predict(row));
  return out;
}

double curve_value(const CurveParams& p, double k, double n) {
  return p.a * std::pow(k / n + p.c, p.b) + p.d;
}

std::array<double, 4> curve_jacobian(const CurveParams& p, double k, double n) {
  const double x = k / n + p.c;
  const double xb = std::pow(x, p.b);
  return {xb, p.a * xb * std::log(x), p.a * p.b * std::pow(x, p.b - 1.0), 1.0};
}

double CurveModel::operator()(double k) const { return curve_value(p, k, n_context); }

namespace {

struct Problem {
  const std::vector<CurvePoint>& pts;
  double n;
  std::optional<double> fixed_c;
  double floor;

  int dim() const { return fixed_c ? 3 : 4; }

  CurveParams unpack(const Eigen::VectorXd& t) const {
    if (fixed_c) return {t(0), t(1), *fixed_c, t(2)};
    return {t(0), t(1), t(2), t(3)};
  }
  Eigen::VectorXd pack(const CurveParams& q) const {
    Eigen::VectorXd t(dim());
    if (fixed_c)
      t << q.a, q.b, q.d;
    else
      t << q.a, q.b, q.c, q.d;
    return t;
  }
  bool in_domain(const CurveParams& q) const {
    if (!std::isfinite(q.a) || !std::isfinite(q.b) || !std::isfinite(q.c) || !std::isfinite(q.d)) return false;
    return std::all_of(pts.begin(), pts.end(), [&](const CurvePoint& pt) { return pt.k / n + q.c > floor; });
  }
  // Residuals f - y; NaN rss when anything is non-finite.
  double rss(const CurveParams& q, Eigen::VectorXd* r = nullptr) const {
    double s = 0.0;
    if (r) r->resize(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double e = curve_value(q, pts[i].k, n) - pts[i].sc;
      if (r) (*r)(static_cast<Eigen::Index>(i)) = e;
      s += e * e;
    }
    return std::isfinite(s) ? s : std::numeric_limits<double>::quiet_NaN();
  }
  Eigen::MatrixXd jacobian(const CurveParams& q) const {
    Eigen::MatrixXd j(static_cast<Eigen::Index>(pts.size()), dim());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto g = curve_jacobian(q, pts[i].k, n);
      const auto row = static_cast<Eigen::Index>(i);
      if (fixed_c) {
        j(row, 0) = g[0];
        j(row, 1) = g[1];
        j(row, 2) = g[3];
      } else {
        for (int c = 0; c < 4; ++c) j(row, c) = g[static_cast<std::size_t>(c)];
      }
    }
    return j;
  }
};

struct RunResult {
  CurveParams p;
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
};

// a and d enter linearly; solve them exactly for the start's (b, c).
void seed_linear_part(const Problem& prob, CurveParams& q) {
  const auto m = static_cast<Eigen::Index>(prob.pts.size());
  Eigen::MatrixXd x(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& pt = prob.pts[static_cast<std::size_t>(i)];
    x(i, 0) = std::pow(pt.k / prob.n + q.c, q.b);
    x(i, 1) = 1.0;
    y(i) = pt.sc;
  }
  if (!x.allFinite()) return;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < 2) return;
  const Eigen::VectorXd ad = qr.solve(y);
  if (ad.allFinite()) {
    q.a = ad(0);
    q.d = ad(1);
  }
}

std::optional<RunResult> levenberg_marquardt(const Problem& prob, CurveParams start, const NlsOptions& opts) {
  if (prob.fixed_c) start.c = *prob.fixed_c;
  if (!prob.in_domain(start)) return std::nullopt;
  seed_linear_part(prob, start);
  Eigen::VectorXd theta = prob.pack(start);
  Eigen::VectorXd r;
  double rss = prob.rss(start, &r);
  if (!std::isfinite(rss)) return std::nullopt;

  double y_scale = 0.0;
  for (const auto& pt : prob.pts) y_scale += pt.sc * pt.sc;
  const double exact_floor = 1e-30 * (1.0 + y_scale);

  RunResult out{start, rss, 0, false};
  double lambda = 1e-3;
  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it + 1;
    if (rss <= exact_floor) {
      out.converged = true;
      break;
    }
    const CurveParams cur = prob.unpack(theta);
    const Eigen::MatrixXd j = prob.jacobian(cur);
    const Eigen::MatrixXd a = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    if (!g.allFinite()) break;
    if (g.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd dscale = a.diagonal();
    const double dmax = std::max(dscale.maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < dscale.size(); ++i) dscale(i) = std::max(dscale(i), 1e-12 * dmax);

    bool accepted = false;
    bool done = false;
    while (lambda < 1e20) {
      Eigen::MatrixXd lhs = a;
      lhs.diagonal() += lambda * dscale;
      const Eigen::VectorXd step = lhs.ldlt().solve(-g);
      const Eigen::VectorXd cand = theta + step;
      const CurveParams q = prob.unpack(cand);
      Eigen::VectorXd rc;
      const double rss_c = step.allFinite() && prob.in_domain(q) ? prob.rss(q, &rc)
                                                                 : std::numeric_limits<double>::quiet_NaN();
      if (std::isfinite(rss_c) && rss_c < rss) {
        const double rel = (rss - rss_c) / std::max(rss, 1e-300);
        theta = cand;
        r = rc;
        rss = rss_c;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
        if (rel < opts.rss_tolerance) done = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No descent direction left at working precision.
      out.converged = true;
      break;
    }
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.p = prob.unpack(theta);
  out.rss = rss;
  return out;
}

}  // namespace

CurveModel nls_fit(const std::vector<CurvePoint>& points, int n_context, const NlsOptions& opts) {
  const std::size_t need = opts.fixed_c ? 3 : 4;
  if (points.size() < need)
    throw FitError("nls_fit: too few points (" + std::to_string(points.size()) + " < " +
                   std::to_string(need) + ")");
  if (n_context < 1) throw DomainError("nls_fit: N must be positive");
  for (const auto& pt : points) {
    if (pt.k < 1 || pt.k > n_context)
      throw DomainError("nls_fit: K=" + std::to_string(pt.k) + " outside [1, " + std::to_string(n_context) + "]");
    if (!std::isfinite(pt.sc)) throw DomainError("nls_fit: non-finite target");
  }

  const Problem prob{points, static_cast<double>(n_context), opts.fixed_c, opts.domain_floor};

  const auto lo = std::min_element(points.begin(), points.end(),
                                   [](const CurvePoint& x, const CurvePoint& y) { return x.k < y.k; });
  const auto hi = std::max_element(points.begin(), points.end(),
                                   [](const CurvePoint& x, const CurvePoint& y) { return x.k < y.k; });
  const double a0 = lo->sc - hi->sc;
  const double d0 = hi->sc;
  const double c0 = std::clamp(2.2 / n_context, 1e-3, 1.0);

  std::vector<CurveParams> starts;
  starts.push_back(opts.init.value_or(CurveParams{a0, -0.7, c0, d0}));
  for (double b : {-0.5, -0.7, -1.0})
    for (double c : {0.01, 0.1}) starts.push_back({a0, b, c, d0});

  std::optional<RunResult> best;
  int best_index = -1;
  int tried = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const auto run = levenberg_marquardt(prob, starts[s], opts);
    if (!run) continue;
    ++tried;
    const bool better = !best || (run->converged && !best->converged) ||
                        (run->converged == best->converged && run->rss < best->rss);
    if (better) {
      best = run;
      best_index = static_cast<int>(s);
    }
  }
  if (!best) throw FitError("nls_fit: every start violates K/N + c > 0");

  CurveModel m;
  m.p = best->p;
  m.n_context = n_context;
  m.diagnostics = {best->iterations, best->rss, best->converged, best_index, tried};
  return m;
}

std::vector<double> curve_predict(const CurveModel& model, const std::vector<int>& ks) {
  std::vector<double> out;
  out.reserve(ks.size());
  for (int k : ks) {
    if (static_cast<double>(k) / model.n_context + model.p.c <= 0.0)
      throw DomainError("curve_predict: K/N + c <= 0 at K=" + std::to_string(k));
    out.push_back(model(k));
  }
  return out;
}

ErrorReport error_report(const std::vector<double>& pred, const std::vector<double>& truth) {
  if (pred.size() != truth.size()) throw DomainError("error_report: length mismatch");
  if (pred.empty()) throw DomainError("error_report: no pairs");
  ErrorReport rep;
  rep.n = pred.size();
  double abs_sum = 0.0, sq_sum = 0.0, pct_sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (truth[i] == 0.0) throw DomainError("error_report: zero truth value, MAPE undefined");
    const double e = std::abs(pred[i] - truth[i]);
    abs_sum += e;
    sq_sum += e * e;
    pct_sum += e / std::abs(truth[i]);
  }
  const double n = static_cast<double>(rep.n);
  rep.mae = abs_sum / n;
  // Equal errors can round RMSE one ulp below MAE.
  rep.rmse = std::max(std::sqrt(sq_sum / n), rep.mae);
  rep.mape_percent = 100.0 * pct_sum / n;
  return rep;
}

}  // namespace smc
