#ifndef MJPSLICE_DIAGNOSTICS_HPP
#define MJPSLICE_DIAGNOSTICS_HPP

#include <optional>
#include <vector>

namespace mjps {

struct EssResult {
  double ess = 0.0;
  bool zero_variance = false;  // constant trace: ESS = N by convention, flagged
};

// Effective sample size N / (1 + 2 sum rho_t) with the autocorrelation sum
// truncated by the initial monotone positive sequence rule; clipped to (0, N].
EssResult effective_sample_size(const std::vector<double>& trace);

// Pearson correlation; nullopt when either trace has zero variance.
std::optional<double> trace_correlation(const std::vector<double>& a,
                                        const std::vector<double>& b);

// Mean and the Monte Carlo standard error mean +- sd/sqrt(ESS).
struct TraceSummary {
  double mean = 0.0;
  double sd = 0.0;
  double ess = 0.0;
  double mc_standard_error = 0.0;
};
TraceSummary summarize_trace(const std::vector<double>& trace);

double quantile(std::vector<double> values, double q);

}  // namespace mjps

#endif
