#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grpkit/rational.hpp"

namespace grpkit {

/// Ordered list of unique variable names. Copies share storage; two spaces
/// are equal when their name lists are equal.
class VarSpace {
public:
    VarSpace();
    explicit VarSpace(std::vector<std::string> names);

    [[nodiscard]] std::size_t size() const { return names_->size(); }
    [[nodiscard]] const std::string& name(std::size_t index) const { return (*names_)[index]; }
    [[nodiscard]] const std::vector<std::string>& names() const { return *names_; }
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;
    /// Index of `name`; throws UnknownVariable when absent.
    [[nodiscard]] std::size_t require(const std::string& name) const;
    [[nodiscard]] bool contains(const std::string& name) const { return index_of(name).has_value(); }

    [[nodiscard]] VarSpace extended(const std::vector<std::string>& more) const;

    friend bool operator==(const VarSpace& a, const VarSpace& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Sparse power product: (variable index, exponent) pairs sorted by index,
/// exponents strictly positive.
class Monomial {
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    static Monomial variable(std::size_t index, std::uint32_t exponent = 1);
    /// Builds from a dense exponent vector, dropping zeros.
    static Monomial from_dense(std::span<const std::uint32_t> exponents);

    [[nodiscard]] std::uint32_t exponent(std::size_t index) const;
    [[nodiscard]] std::uint32_t degree() const { return degree_; }
    [[nodiscard]] bool is_one() const { return factors_.empty(); }
    [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }

    [[nodiscard]] bool divides(const Monomial& other) const;
    /// other / *this; requires divides(other).
    [[nodiscard]] Monomial quotient_of(const Monomial& other) const;
    [[nodiscard]] Monomial without(std::size_t index) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) = default;
    friend auto operator<=>(const Monomial& a, const Monomial& b) {
        return a.factors_ <=> b.factors_;
    }

private:
    std::vector<Factor> factors_;
    std::uint32_t degree_ = 0;
};

/// Graded lexicographic comparison by variable index: higher total degree is
/// greater; ties broken by the first differing exponent (larger wins).
int compare_grlex(const Monomial& a, const Monomial& b);

/// Exact multivariate polynomial over the rationals in canonical form: no
/// zero coefficients are stored, so equality is equality of term maps.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(VarSpace space) : space_(std::move(space)) {}

    static Polynomial constant(const VarSpace& space, const Rational& value);
    static Polynomial variable(const VarSpace& space, const std::string& name);
    static Polynomial variable(const VarSpace& space, std::size_t index);
    static Polynomial term(const VarSpace& space, const Monomial& monomial, const Rational& coefficient);

    [[nodiscard]] const VarSpace& space() const { return space_; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
    /// Total degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] int degree_in(std::size_t index) const;
    [[nodiscard]] Rational coefficient(const Monomial& monomial) const;
    [[nodiscard]] Rational constant_term() const { return coefficient(Monomial{}); }
    [[nodiscard]] bool is_constant() const;
    /// Leading monomial and coefficient in graded lex order. Requires !is_zero().
    [[nodiscard]] std::pair<Monomial, Rational> leading_term() const;

    /// Adds coefficient*monomial in place, keeping the term map canonical.
    void add_term(const Monomial& monomial, const Rational& coefficient);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(const Polynomial& a);

    [[nodiscard]] Polynomial pow(unsigned exponent) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

private:
    void require_same_space(const Polynomial& other) const;

    VarSpace space_;
    TermMap terms_;
};

enum class ArithOp { Add, Sub, Mul };

/// Exact a op b. Throws SpaceMismatch when the spaces differ.
Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op);

/// Simultaneous substitution of named variables by polynomials over
/// `target`. Unbound variables of p are carried over by name and must exist
/// in `target`.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings,
                      const VarSpace& target);
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings);

/// Re-expresses p over another space by variable name.
Polynomial rebase(const Polynomial& p, const VarSpace& target);

/// Drops every term of total degree > degree.
Polynomial truncate_jet(const Polynomial& p, unsigned degree);

/// Drops every term whose weighted degree (weights per variable index)
/// exceeds max_weight.
Polynomial truncate_weighted(const Polynomial& p, std::span<const unsigned> weights, unsigned max_weight);

/// Returns q with q*den == num exactly, by leading-term elimination.
/// Throws InexactDivision when den does not divide num.
Polynomial exact_div(const Polynomial& num, const Polynomial& den);

/// Complete homogeneous symmetric polynomial: sum of every degree-j
/// monomial in `vars` with coefficient one.
Polynomial complete_symmetric(unsigned j, const std::vector<std::string>& vars, const VarSpace& space);

/// Coefficient of var^power in p, as a polynomial free of var.
Polynomial coefficient_of(const Polynomial& p, std::size_t var, std::uint32_t power);

/// Symmetric rational matrix on an ordered list of variables.
struct QuadraticForm {
    std::vector<std::string> variables;
    std::vector<std::vector<Rational>> matrix;

    [[nodiscard]] std::size_t dimension() const { return variables.size(); }
    /// Restriction to a sublist of the variables (in the given order).
    [[nodiscard]] QuadraticForm restricted(const std::vector<std::string>& vars) const;
    [[nodiscard]] Polynomial to_polynomial(const VarSpace& space) const;

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

struct Signature {
    std::size_t plus = 0;
    std::size_t minus = 0;
    std::size_t zero = 0;

    [[nodiscard]] std::size_t rank() const { return plus + minus; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of Q by exact congruence diagonalization over the rationals.
Signature signature(const QuadraticForm& q);

/// Splits p into constant + linear + quadratic + rest (rest has degree >= 3).
struct PolynomialParts {
    Rational constant;
    std::vector<Rational> linear;  // indexed like p.space()
    QuadraticForm quadratic;       // over every variable of p.space()
    Polynomial rest;
};

PolynomialParts parts(const Polynomial& p);

/// Human-readable form: terms in ascending total degree, descending lex
/// within a degree, e.g. "x^2*z + z^5". The zero polynomial prints as "0".
std::string to_string(const Polynomial& p);

/// As to_string, printing at most max_terms terms followed by a
/// " + ... [N more terms]" marker.
std::string to_string(const Polynomial& p, std::size_t max_terms);

}  // namespace grpkit
