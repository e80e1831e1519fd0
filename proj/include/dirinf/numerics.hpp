#ifndef DIRINF_NUMERICS_HPP
#define DIRINF_NUMERICS_HPP

namespace dirinf {

/// Clamp to [0,1]; NaN maps to 1.
double clamp_probability(double x) noexcept;

/// Standard normal CDF. Absolute error well below 1e-10 for |x| <= 8; +-inf map to 1 and 0.
double std_normal_cdf(double x) noexcept;

/// Upper tail 1 - Phi(x), accurate in the far right tail.
double std_normal_sf(double x) noexcept;

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);

/// P(chi^2_df >= x). Throws std::invalid_argument on x < 0 or df == 0.
double chi_square_sf(double x, unsigned df);

}  // namespace dirinf

#endif  // DIRINF_NUMERICS_HPP
