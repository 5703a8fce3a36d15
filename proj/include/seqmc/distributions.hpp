#pragma once

namespace seqmc {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
// Series expansion below x = a + 1, Lentz continued fraction above.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-square distribution, P(X >= t) for X ~ chi2(df).
double chisq_pvalue(double t, double df);

// t with P(X <= t) = prob for X ~ chi2(df).
double chisq_quantile(double prob, double df);

double normal_cdf(double x);

}  // namespace seqmc
