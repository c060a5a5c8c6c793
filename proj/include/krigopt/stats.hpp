#pragma once

#include <cstddef>
#include <vector>

namespace krigopt {

// Standard normal density.
double normal_pdf(double x);

// Standard normal CDF via erfc; absolute error well below 1e-12.
double normal_cdf(double x);

// Two-sided Student-t quantile t_{1-alpha/2, df}, e.g. alpha = 0.05.
// Evaluated through the regularized incomplete beta function (Lentz
// continued fraction) and bisection on the CDF.
double student_t_quantile(double prob, int df);

// Student-t CDF, df >= 1.
double student_t_cdf(double x, int df);

double mean(const std::vector<double>& v);

// Unbiased sample variance; 0 for n < 2.
double sample_variance(const std::vector<double>& v);

}  // namespace krigopt
