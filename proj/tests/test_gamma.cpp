#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

#include "bspec/error.hpp"
#include "bspec/gamma.hpp"

using namespace bspec;
using C = std::complex<double>;

TEST(Gamma, RealAxisMatchesBoost) {
    for (double x = -4.75; x <= 20.0; x += 0.37) {
        if (std::fabs(x - std::round(x)) < 1e-9 && x <= 0) continue;
        double ref = boost::math::tgamma(x);
        C g = complex_gamma(C(x, 0));
        EXPECT_NEAR(g.real() / ref, 1.0, 1e-12) << x;
        EXPECT_NEAR(g.imag(), 0.0, 1e-12 * std::fabs(ref));
    }
}

TEST(Gamma, HalfIsSqrtPi) {
    EXPECT_NEAR(complex_gamma(C(0.5, 0)).real(), std::sqrt(M_PI), 1e-14);
}

TEST(Gamma, RecurrenceOffAxis) {
    for (double x : {-2.3, -0.4, 0.2, 1.7, 5.1})
        for (double y : {-7.0, -1.3, 0.6, 3.0, 12.5}) {
            C z(x, y);
            C lhs = complex_gamma(z + 1.0);
            C rhs = z * complex_gamma(z);
            EXPECT_NEAR(std::abs(lhs - rhs) / std::abs(rhs), 0.0, 1e-12) << z;
        }
}

TEST(Gamma, ImaginaryAxisModulus) {
    // |Gamma(iy)|^2 = pi / (y sinh(pi y))
    for (double y : {0.1, 0.5, 1.0, 2.5, 6.0}) {
        double ref = M_PI / (y * std::sinh(M_PI * y));
        EXPECT_NEAR(std::norm(complex_gamma(C(0, y))) / ref, 1.0, 1e-12) << y;
    }
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    for (double y : {0.3, 2.0, 9.0}) {
        double ref = M_PI / std::cosh(M_PI * y);
        EXPECT_NEAR(std::norm(complex_gamma(C(0.5, y))) / ref, 1.0, 1e-11) << y;
    }
}

TEST(Gamma, ConjugateSymmetry) {
    C z(1.3, 2.2);
    EXPECT_NEAR(std::abs(complex_gamma(std::conj(z)) - std::conj(complex_gamma(z))), 0.0, 1e-14);
}

TEST(Gamma, LogGammaMatchesBoost) {
    for (double x = 0.5; x < 60; x += 3.3)
        EXPECT_NEAR(log_gamma_right(C(x, 0)).real(), boost::math::lgamma(x), 1e-11 * std::max(1.0, x));
    C z(2.0, 3.0);
    EXPECT_NEAR(std::abs(std::exp(log_gamma_right(z)) - complex_gamma(z)), 0.0, 1e-12);
}

TEST(Gamma, PolesThrow) {
    for (int n : {0, -1, -5}) {
        try {
            complex_gamma(C(n, 0));
            FAIL() << "expected AtPole at " << n;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::AtPole);
        }
    }
}
