#ifndef BSPEC_NUMBERFIELD_HPP
#define BSPEC_NUMBERFIELD_HPP

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "bspec/graph.hpp"
#include "bspec/poly.hpp"

namespace bspec {

struct MinPoly {
    IntPoly coeffs;  // monic, coeffs[i] multiplies x^i
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Minimal polynomial of theta where pf = theta^d.
MinPoly minimal_polynomial_of_pf(const IntMatrix& a, int d = 1);

struct PisotData {
    MinPoly mp;
    double theta = 0;
    // theta first, then the other conjugates by descending modulus, ascending argument.
    std::vector<std::complex<double>> conjugates;
    int J = 0;
    int L = 0;  // conjugates 2..L share the modulus |theta_2|
    bool pisot = false;
    bool unimodular = false;
    std::vector<double> phases;  // arg theta_j for 2 <= j <= L
};

PisotData pisot_analyze(const MinPoly& mp, double tie_tol = 1e-9);

// Q(theta) with its embeddings; shared by every element.
struct NumberField {
    MinPoly mp;
    std::vector<std::complex<double>> conjugates;  // ordered as in PisotData
    std::vector<mpz_class> power_traces;           // Tr(theta^i), 0 <= i < J
    static std::shared_ptr<const NumberField> make(const PisotData& pd);
    int degree() const { return mp.degree(); }
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const NumberField> f, std::vector<mpq_class> q);
    static FieldElement from_rational(std::shared_ptr<const NumberField> f, const mpq_class& c);
    static FieldElement theta(std::shared_ptr<const NumberField> f);

    const std::vector<mpq_class>& coeffs() const { return q_; }
    const std::shared_ptr<const NumberField>& field() const { return f_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator*(const mpq_class& c) const;
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
    FieldElement pow(long n) const;
    bool operator==(const FieldElement& o) const { return q_ == o.q_; }
    bool is_zero() const;

    // Value at the j-th conjugate (0-based: j = 0 is theta itself).
    std::complex<double> embed(int j) const;
    double value() const { return embed(0).real(); }
    // Sum of all embeddings, exact.
    mpq_class trace() const;

private:
    void reduce();
    std::shared_ptr<const NumberField> f_;
    std::vector<mpq_class> q_;
};

struct StarValues {
    std::complex<double> full;     // sum_{j=2}^{J} p(theta_j)
    std::complex<double> reduced;  // sum_{j=2}^{L} p(theta_j)
};

StarValues star_values(const FieldElement& p, const PisotData& pd);

} // namespace bspec

#endif
