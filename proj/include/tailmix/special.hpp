#ifndef TAILMIX_SPECIAL_HPP
#define TAILMIX_SPECIAL_HPP

namespace tailmix::special {

// log of the regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a).
// Series/continued-fraction split at the standard pivot x = a+1; stays
// accurate far past the point where Q itself underflows a double.
double log_gamma_q(double a, double x);
double gamma_q(double a, double x);

// log of the standard normal survival function.  erfc branch up to t=25,
// Mills-ratio continued fraction beyond (erfc underflows near t=26.5).
double log_normal_sf(double t);
double normal_sf(double t);

// Inverse of the standard normal survival on log scale: t with
// log_normal_sf(t) = log_p. Bisection plus Newton polish.
double normal_sf_inv_log(double log_p);

// Regularized incomplete beta I_x(a,b).
double reg_inc_beta(double a, double b, double x);
// Inverse of I_x(a,b) in x.
double reg_inc_beta_inv(double a, double b, double p);

}  // namespace tailmix::special

#endif
