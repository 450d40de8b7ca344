#include "bspec/gamma.hpp"

#include <cmath>

#include "bspec/error.hpp"

namespace bspec {

namespace {

constexpr double kG = 607.0 / 128.0;
constexpr double kCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

} // namespace

std::complex<double> log_gamma_right(std::complex<double> z) {
    z -= 1.0;
    std::complex<double> x = kCoef[0];
    for (int i = 1; i < 15; ++i) x += kCoef[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + kG + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> complex_gamma(std::complex<double> z) {
    if (z.real() <= 0.0 && z.imag() == 0.0 && z.real() == std::round(z.real()))
        throw Error(ErrorCode::AtPole, "Gamma has a pole at non-positive integers");
    if (z.real() < 0.5) {
        std::complex<double> s = std::sin(M_PI * z);
        return M_PI / (s * std::exp(log_gamma_right(1.0 - z)));
    }
    return std::exp(log_gamma_right(z));
}

} // namespace bspec
