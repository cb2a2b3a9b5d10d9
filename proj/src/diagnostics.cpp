#include "mjpslice/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mjps {

EssResult effective_sample_size(const std::vector<double>& trace) {
  const std::size_t n = trace.size();
  if (n < 10) throw std::invalid_argument("effective_sample_size: need at least 10 points");

  double mean = 0.0;
  for (double v : trace) mean += v;
  mean /= static_cast<double>(n);

  double var = 0.0;
  for (double v : trace) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  if (var <= 0.0) return {static_cast<double>(n), true};

  auto autocov = [&](std::size_t lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) c += (trace[i] - mean) * (trace[i + lag] - mean);
    return c / static_cast<double>(n);
  };

  // Geyer: sum paired autocorrelations Gamma_k = rho_{2k} + rho_{2k+1} while
  // positive, enforcing monotone non-increase.
  double rho_sum = 0.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0;; ++k) {
    const std::size_t t0 = 2 * k, t1 = 2 * k + 1;
    if (t1 >= n) break;
    const double r0 = autocov(t0) / var;
    const double r1 = autocov(t1) / var;
    double pair = r0 + r1;
    if (pair <= 0.0) break;
    pair = std::min(pair, prev_pair);
    prev_pair = pair;
    rho_sum += pair;
  }
  // rho_sum includes rho_0 = 1; tau = 2 * rho_sum - 1 = 1 + 2 sum_{t>=1} rho_t.
  const double tau = std::max(1.0, 2.0 * rho_sum - 1.0);
  double ess = static_cast<double>(n) / tau;
  ess = std::min(ess, static_cast<double>(n));
  ess = std::max(ess, 1e-12);
  return {ess, false};
}

std::optional<double> trace_correlation(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("trace_correlation: need equal lengths >= 2");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double va = 0.0, vb = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
    cov += (a[i] - ma) * (b[i] - mb);
  }
  if (va <= 0.0 || vb <= 0.0) return std::nullopt;
  return cov / std::sqrt(va * vb);
}

TraceSummary summarize_trace(const std::vector<double>& trace) {
  TraceSummary s;
  const double n = static_cast<double>(trace.size());
  for (double v : trace) s.mean += v / n;
  for (double v : trace) s.sd += (v - s.mean) * (v - s.mean) / n;
  s.sd = std::sqrt(s.sd);
  s.ess = effective_sample_size(trace).ess;
  s.mc_standard_error = s.sd / std::sqrt(std::max(1.0, s.ess));
  return s;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace mjps
