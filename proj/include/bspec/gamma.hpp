#ifndef BSPEC_GAMMA_HPP
#define BSPEC_GAMMA_HPP

#include <complex>

namespace bspec {

// Gamma on the complex plane: Lanczos (g = 607/128, 15 terms) with reflection for Re z < 1/2.
// Throws AtPole at non-positive integers.
std::complex<double> complex_gamma(std::complex<double> z);

// log Gamma for Re z >= 1/2 (principal branch of the Lanczos form).
std::complex<double> log_gamma_right(std::complex<double> z);

} // namespace bspec

#endif
