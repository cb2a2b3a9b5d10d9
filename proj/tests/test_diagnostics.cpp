#include <doctest.h>

#include <cmath>

#include "mjpslice/diagnostics.hpp"
#include "mjpslice/rng.hpp"

using namespace mjps;

namespace {

std::vector<double> ar1(double coeff, std::size_t n, Rng& rng) {
  std::vector<double> out;
  out.reserve(n);
  double x = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x = coeff * x + rng.normal();
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("ess of an iid trace is close to its length") {
  Rng rng(193);
  std::vector<double> trace;
  for (int i = 0; i < 10000; ++i) trace.push_back(rng.normal());
  const auto result = effective_sample_size(trace);
  CHECK(!result.zero_variance);
  CHECK(result.ess >= 0.8 * 10000.0);
  CHECK(result.ess <= 1.2 * 10000.0);
}

TEST_CASE("ess of an ar1 trace matches the analytic ratio") {
  // integrated autocorrelation of AR(1) with coefficient 0.9: ESS/N ~ 1/19
  Rng rng(197);
  const auto trace = ar1(0.9, 100000, rng);
  const auto result = effective_sample_size(trace);
  const double expected = (1.0 - 0.9) / (1.0 + 0.9);
  CHECK(result.ess / 100000.0 == doctest::Approx(expected).epsilon(0.2));
}

TEST_CASE("constant traces are flagged with ess = n") {
  const std::vector<double> trace(100, 3.25);
  const auto result = effective_sample_size(trace);
  CHECK(result.zero_variance);
  CHECK(result.ess == 100.0);
}

TEST_CASE("ess never exceeds the trace length") {
  Rng rng(199);
  for (int rep = 0; rep < 20; ++rep) {
    const auto trace = ar1(0.2, 2000, rng);
    CHECK(effective_sample_size(trace).ess <= 2000.0);
  }
}

TEST_CASE("subsampling an ar1 trace increases ess per sample") {
  Rng rng(211);
  const auto trace = ar1(0.95, 100000, rng);
  std::vector<double> thinned;
  for (std::size_t i = 0; i < trace.size(); i += 10) thinned.push_back(trace[i]);
  const double full_ratio = effective_sample_size(trace).ess / static_cast<double>(trace.size());
  const double thin_ratio =
      effective_sample_size(thinned).ess / static_cast<double>(thinned.size());
  CHECK(thin_ratio > full_ratio);
}

TEST_CASE("trace correlation on frozen cases") {
  Rng rng(223);
  std::vector<double> a;
  for (int i = 0; i < 10000; ++i) a.push_back(rng.normal());

  SUBCASE("identical traces") { CHECK(*trace_correlation(a, a) == doctest::Approx(1.0)); }
  SUBCASE("negated traces") {
    std::vector<double> neg;
    for (double v : a) neg.push_back(-v);
    CHECK(*trace_correlation(a, neg) == doctest::Approx(-1.0));
  }
  SUBCASE("independent traces") {
    std::vector<double> b;
    for (int i = 0; i < 10000; ++i) b.push_back(rng.normal());
    CHECK(std::abs(*trace_correlation(a, b)) < 0.03);
  }
  SUBCASE("zero variance is reported as undefined") {
    const std::vector<double> flat(a.size(), 1.0);
    CHECK(!trace_correlation(a, flat).has_value());
  }
}

TEST_CASE("quantiles interpolate") {
  const std::vector<double> values{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(quantile(values, 0.0) == 1.0);
  CHECK(quantile(values, 0.5) == 3.0);
  CHECK(quantile(values, 1.0) == 5.0);
  CHECK(quantile(values, 0.25) == doctest::Approx(2.0));
}
