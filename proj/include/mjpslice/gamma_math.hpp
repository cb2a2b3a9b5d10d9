#ifndef MJPSLICE_GAMMA_MATH_HPP
#define MJPSLICE_GAMMA_MATH_HPP

namespace mjps {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_lower_gamma(double a, double x);

// Inverse of P(a, .) for u in (0, 1): the x with P(a, x) = u.
double inv_reg_lower_gamma(double a, double u);

// Gamma(shape, rate) CDF and quantile.
double gamma_cdf(double x, double shape, double rate);
double gamma_quantile(double u, double shape, double rate);

// Chi-square upper tail probability with k degrees of freedom.
double chi_square_sf(double x, double k);

}  // namespace mjps

#endif
