#ifndef DBAR_FORMS_HPP
#define DBAR_FORMS_HPP

#include "dbar/model.hpp"
#include "dbar/multiindex.hpp"

#include <complex>
#include <map>
#include <tuple>

namespace dbar {

/// Identifies one coefficient of a holomorphic (p,0)-form with monomial
/// coefficients: the monomial exponent J plus the component slot(s).
/// Components are 0-based: p=0 has a=b=-1; p=1 has a in [0,n), b=-1;
/// p=2 has 0 <= a < b < n (the coefficient of dz^a ^ dz^b, with the
/// antisymmetric partner implied).
struct FormKey {
    MultiIndex J;
    int a = -1;
    int b = -1;
    bool operator<(const FormKey& o) const {
        return std::tie(J, a, b) < std::tie(o.J, o.a, o.b);
    }
    bool operator==(const FormKey& o) const = default;
};

/// A holomorphic (p,0)-form with finitely many monomial coefficients.
class FormCoefficients {
public:
    using Table = std::map<FormKey, std::complex<double>>;

    FormCoefficients(ModelSpec model, int p);

    const ModelSpec& model() const { return model_; }
    int degree_p() const { return p_; }
    const Table& table() const { return table_; }
    bool empty() const { return table_.empty(); }

    /// Accumulate a coefficient; entries that cancel to (near) zero are kept
    /// unless exactly zero.  Component indices are validated against p.
    void add(const MultiIndex& j, int a, int b, std::complex<double> c);
    void add_scalar(const MultiIndex& j, std::complex<double> c);       // p=0
    void add_one_form(const MultiIndex& j, int k, std::complex<double> c); // p=1

    std::complex<double> coefficient(const FormKey& key) const;
    /// Drop entries with |c| <= tol * max|c|.
    FormCoefficients pruned(double tol = 0.0) const;
    /// Max |coefficient|.
    double max_abs_coefficient() const;
    /// Highest monomial degree present (-1 if empty).
    int max_order() const;

    friend FormCoefficients operator+(const FormCoefficients& x, const FormCoefficients& y);
    friend FormCoefficients operator-(const FormCoefficients& x, const FormCoefficients& y);
    FormCoefficients scaled(std::complex<double> s) const;

private:
    ModelSpec model_;
    int p_;
    Table table_;
};

/// The holomorphic differential, (p,0) -> (p+1,0), p in {0,1}.
/// Exact symbolic differentiation of the monomial coefficients.
FormCoefficients dbar(const FormCoefficients& u);

/// The Bergman-space adjoint of the differential, (p,0) -> (p-1,0),
/// p in {1,2}: a multiplication operator in all four models.  The output
/// is already holomorphic, so no projection is involved.
FormCoefficients dbar_adjoint(const FormCoefficients& u);

/// The degree-(1,0) complex Laplacian applied via its first-order closed
/// form for the model at hand.
FormCoefficients box1_apply(const FormCoefficients& u);

/// The degree-(0,0) Laplacian (adjoint of dbar composed with dbar).
FormCoefficients box0_apply(const FormCoefficients& f);

} // namespace dbar

#endif
