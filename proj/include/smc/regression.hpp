#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace smc {

// Inputs a basis function may read.
struct FeatureRow {
  double n = 0.0;
  double k = 0.0;
  double max_runtime = 0.0;
};

enum class BasisKind { NSquared, N, NLogN, TlrFeature, K, Constant };

struct BasisTerm {
  BasisKind kind = BasisKind::Constant;
  // TlrFeature only: (K + shift)^exponent * MaxRuntime.
  double shift = 0.0;
  double exponent = 0.0;

  static BasisTerm n_squared() { return {BasisKind::NSquared}; }
  static BasisTerm n() { return {BasisKind::N}; }
  static BasisTerm n_log_n() { return {BasisKind::NLogN}; }  // natural log
  static BasisTerm k() { return {BasisKind::K}; }
  static BasisTerm constant() { return {BasisKind::Constant}; }
  static BasisTerm tlr(double shift, double exponent) {
    return {BasisKind::TlrFeature, shift, exponent};
  }

  double eval(const FeatureRow& x) const;
  std::string name() const;
};

struct LinearModel {
  std::vector<BasisTerm> basis;
  std::vector<double> coefficients;

  double predict(const FeatureRow& x) const;
};

// Least squares through a column-pivoted QR of the column-scaled design.
// Throws FitError with fewer points than basis terms or a rank-deficient
// design (the message carries a condition estimate).
LinearModel ols_fit(const std::vector<FeatureRow>& x, const std::vector<double>& y,
                    std::vector<BasisTerm> basis);

std::vector<double> lm_predict(const LinearModel& model, const std::vector<FeatureRow>& x);

// a (K/N + c)^b + d
struct CurveParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

struct CurveDiagnostics {
  int iterations = 0;
  double rss = 0.0;
  bool converged = false;
  int start = 0;   // index of the winning start, 0 = primary
  int starts_tried = 0;
};

struct CurveModel {
  CurveParams p;
  int n_context = 0;
  CurveDiagnostics diagnostics;

  double operator()(double k) const;
};

double curve_value(const CurveParams& p, double k, double n);
// d/d(a, b, c, d) at one K.
std::array<double, 4> curve_jacobian(const CurveParams& p, double k, double n);

struct CurvePoint {
  double k;
  double sc;
};

struct NlsOptions {
  std::optional<CurveParams> init;
  // Hold c at this value and fit (a, b, d) only.
  std::optional<double> fixed_c;
  int max_iterations = 200;
  double rss_tolerance = 1e-10;       // relative change
  double gradient_tolerance = 1e-10;  // infinity norm
  double domain_floor = 1e-9;         // K/N + c must stay above this
};

// Levenberg-Marquardt on the curve with Marquardt diagonal scaling. Runs the
// primary start and the grid b in {-0.5,-0.7,-1}, c in {0.01,0.1}, keeping the
// lowest residual. Returns converged = false when no start converged.
// Throws FitError with too few points or K outside [1, N].
CurveModel nls_fit(const std::vector<CurvePoint>& points, int n_context,
                   const NlsOptions& opts = {});

// Throws DomainError when K/N + c <= 0 for a requested K.
std::vector<double> curve_predict(const CurveModel& model, const std::vector<int>& ks);

struct ErrorReport {
  double mae = 0.0;
  double rmse = 0.0;
  double mape_percent = 0.0;
  std::size_t n = 0;
};

// Throws DomainError on empty or unequal inputs, or on a zero truth value.
ErrorReport error_report(const std::vector<double>& pred, const std::vector<double>& truth);

}  // namespace smc
