#pragma once

namespace pwave::specfun {

// Zero-order Bessel function of the first kind.
// Power series for |x| <= 8, Taylor stepping on the Bessel ODE up to 1024,
// two-term asymptotic expansion beyond. Relative error <= 1e-10 on |x| <= 50.
double bessel_j0(double x);

// d/dx J0(x) = -J1(x). Same accuracy regime; used by tests and diagnostics.
double bessel_j0_prime(double x);

// Regularized incomplete beta I_x(a,b), absolute error <= 1e-12.
double reg_inc_beta(double x, double a, double b);

// Two-sided t critical value: q with P(|T_df| > q) = alpha.
double t_critical(double alpha_two_sided, int df);

// Upper-tail F critical value: q with P(F_{df1,df2} > q) = alpha.
double f_critical(double alpha, int df1, int df2);

}  // namespace pwave::specfun
