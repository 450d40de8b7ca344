#ifndef BSPEC_POLY_HPP
#define BSPEC_POLY_HPP

#include <gmpxx.h>

#include <complex>
#include <utility>
#include <vector>

#include "bspec/graph.hpp"

namespace bspec {

// Coefficient i multiplies x^i. The zero polynomial is the empty vector.
using IntPoly = std::vector<mpz_class>;
using RatPoly = std::vector<mpq_class>;

// det(xI - A), computed exactly (Faddeev-LeVerrier with exact division).
IntPoly charpoly(const IntMatrix& a);

RatPoly to_rat(const IntPoly& p);
// Scales to a primitive integer polynomial with positive leading coefficient.
IntPoly to_primitive_int(const RatPoly& p);

void trim(RatPoly& p);
int degree(const RatPoly& p);
RatPoly rp_add(const RatPoly& a, const RatPoly& b);
RatPoly rp_sub(const RatPoly& a, const RatPoly& b);
RatPoly rp_mul(const RatPoly& a, const RatPoly& b);
std::pair<RatPoly, RatPoly> rp_divmod(const RatPoly& a, const RatPoly& b);
RatPoly rp_monic(const RatPoly& a);
RatPoly rp_gcd(const RatPoly& a, const RatPoly& b);
RatPoly rp_derivative(const RatPoly& a);

// Yun's algorithm: monic square-free factors paired with their multiplicity.
std::vector<std::pair<RatPoly, int>> squarefree(const RatPoly& p);

// All complex roots of a square-free polynomial (Aberth iteration, Newton polish).
// Real roots are returned with zero imaginary part; complex roots in conjugate pairs.
std::vector<std::complex<double>> poly_roots(const RatPoly& p);

std::complex<long double> poly_eval(const RatPoly& p, std::complex<long double> z);

} // namespace bspec

#endif
