#pragma once

namespace rbgk {

// Upper incomplete gamma function of fixed first argument 3/2:
//   gamma_32(x) = integral over [x, inf) of sqrt(t) * exp(-t) dt.
// Evaluated through the closed form (sqrt(pi)/2) * erfc(sqrt(x)) + sqrt(x) * exp(-x).
// Throws ConfigError for negative input.
double incomplete_gamma_32(double x);

// The ratio x^{3/2} e^{-x} / gamma_32(x) that enters the reactive temperature
// exchange. Rearranged so numerator and denominator never underflow; behaves
// like x for large x and vanishes at x = 0.
double incomplete_gamma_32_ratio(double x);

}  // namespace rbgk
