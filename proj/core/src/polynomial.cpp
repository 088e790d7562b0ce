#include "grpkit/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "grpkit/error.hpp"

namespace grpkit {

// ---------------------------------------------------------------- VarSpace

VarSpace::VarSpace() : names_(std::make_shared<const std::vector<std::string>>()) {}

VarSpace::VarSpace(std::vector<std::string> names) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) {
            throw Error("empty variable name");
        }
        if (!seen.insert(n).second) {
            throw Error("duplicate variable name '" + n + "'");
        }
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarSpace::index_of(const std::string& name) const {
    auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_->begin());
}

std::size_t VarSpace::require(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) {
        throw UnknownVariable(name);
    }
    return *idx;
}

VarSpace VarSpace::extended(const std::vector<std::string>& more) const {
    std::vector<std::string> all = *names_;
    all.insert(all.end(), more.begin(), more.end());
    return VarSpace(std::move(all));
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t index, std::uint32_t exponent) {
    Monomial m;
    if (exponent != 0) {
        m.factors_.emplace_back(static_cast<std::uint32_t>(index), exponent);
        m.degree_ = exponent;
    }
    return m;
}

Monomial Monomial::from_dense(std::span<const std::uint32_t> exponents) {
    Monomial m;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] != 0) {
            m.factors_.emplace_back(static_cast<std::uint32_t>(i), exponents[i]);
            m.degree_ += exponents[i];
        }
    }
    return m;
}

std::uint32_t Monomial::exponent(std::size_t index) const {
    for (const auto& [var, exp] : factors_) {
        if (var == index) {
            return exp;
        }
        if (var > index) {
            break;
        }
    }
    return 0;
}

bool Monomial::divides(const Monomial& other) const {
    auto it = other.factors_.begin();
    for (const auto& [var, exp] : factors_) {
        while (it != other.factors_.end() && it->first < var) {
            ++it;
        }
        if (it == other.factors_.end() || it->first != var || it->second < exp) {
            return false;
        }
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
    Monomial q;
    auto it = factors_.begin();
    for (const auto& [var, exp] : other.factors_) {
        std::uint32_t sub = 0;
        if (it != factors_.end() && it->first == var) {
            sub = it->second;
            ++it;
        }
        if (exp > sub) {
            q.factors_.emplace_back(var, exp - sub);
            q.degree_ += exp - sub;
        }
    }
    return q;
}

Monomial Monomial::without(std::size_t index) const {
    Monomial m;
    for (const auto& f : factors_) {
        if (f.first != index) {
            m.factors_.push_back(f);
            m.degree_ += f.second;
        }
    }
    return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto ia = a.factors_.begin();
    auto ib = b.factors_.begin();
    while (ia != a.factors_.end() || ib != b.factors_.end()) {
        if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
            m.factors_.push_back(*ia++);
        } else if (ia == a.factors_.end() || ib->first < ia->first) {
            m.factors_.push_back(*ib++);
        } else {
            m.factors_.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    m.degree_ = a.degree_ + b.degree_;
    return m;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) {
        return a.degree() < b.degree() ? -1 : 1;
    }
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0;
    for (; i < fa.size() && i < fb.size(); ++i) {
        if (fa[i] == fb[i]) {
            continue;
        }
        // The monomial whose first differing variable comes earlier has a
        // positive exponent where the other has zero.
        if (fa[i].first != fb[i].first) {
            return fa[i].first < fb[i].first ? 1 : -1;
        }
        return fa[i].second > fb[i].second ? 1 : -1;
    }
    if (fa.size() == fb.size()) {
        return 0;
    }
    return fa.size() > fb.size() ? 1 : -1;
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const VarSpace& space, const Rational& value) {
    Polynomial p(space);
    p.add_term(Monomial{}, value);
    return p;
}

Polynomial Polynomial::variable(const VarSpace& space, const std::string& name) {
    return variable(space, space.require(name));
}

Polynomial Polynomial::variable(const VarSpace& space, std::size_t index) {
    Polynomial p(space);
    p.add_term(Monomial::variable(index), Rational(1));
    return p;
}

Polynomial Polynomial::term(const VarSpace& space, const Monomial& monomial, const Rational& coefficient) {
    Polynomial p(space);
    p.add_term(monomial, coefficient);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, static_cast<int>(m.degree()));
    }
    return d;
}

int Polynomial::degree_in(std::size_t index) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, static_cast<int>(m.exponent(index)));
    }
    return d;
}

Rational Polynomial::coefficient(const Monomial& monomial) const {
    auto it = terms_.find(monomial);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::pair<Monomial, Rational> Polynomial::leading_term() const {
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (compare_grlex(it->first, best->first) > 0) {
            best = it;
        }
    }
    return *best;
}

void Polynomial::add_term(const Monomial& monomial, const Rational& coefficient) {
    if (coefficient.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void Polynomial::require_same_space(const Polynomial& other) const {
    if (!(space_ == other.space_)) {
        throw SpaceMismatch("polynomials live over different variable spaces");
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    require_same_space(other);
    for (const auto& [m, c] : other.terms_) {
        add_term(m, c);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    require_same_space(other);
    for (const auto& [m, c] : other.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_space(b);
    Polynomial result(a.space_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            result.add_term(ma * mb, ca * cb);
        }
    }
    return result;
}

Polynomial operator-(const Polynomial& a) {
    Polynomial r = a;
    for (auto& [m, c] : r.terms_) {
        c = -c;
    }
    return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result = constant(space_, Rational(1));
    Polynomial base = *this;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            base = base * base;
        }
    }
    return result;
}

// -------------------------------------------------------------- operations

Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add:
            return a + b;
        case ArithOp::Sub:
            return a - b;
        case ArithOp::Mul:
            return a * b;
    }
    return a;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings,
                      const VarSpace& target) {
    const VarSpace& source = p.space();
    std::vector<std::optional<Polynomial>> image(source.size());
    for (const auto& [name, value] : bindings) {
        auto idx = source.index_of(name);
        if (!idx) {
            throw UnknownVariable(name);
        }
        if (!(value.space() == target)) {
            throw SpaceMismatch("replacement for '" + name + "' is not over the target space");
        }
        image[*idx] = value;
    }
    // Unbound variables map to themselves by name.
    std::vector<std::optional<std::size_t>> carried(source.size());
    std::vector<std::vector<Polynomial>> powers(source.size());

    Polynomial result(target);
    for (const auto& [mono, coef] : p.terms()) {
        Polynomial acc = Polynomial::constant(target, coef);
        Monomial carried_part;
        for (const auto& [var, exp] : mono.factors()) {
            if (image[var]) {
                auto& cache = powers[var];
                if (cache.empty()) {
                    cache.push_back(Polynomial::constant(target, Rational(1)));
                }
                while (cache.size() <= exp) {
                    cache.push_back(cache.back() * *image[var]);
                }
                acc = acc * cache[exp];
            } else {
                if (!carried[var]) {
                    carried[var] = target.require(source.name(var));
                }
                carried_part = carried_part * Monomial::variable(*carried[var], exp);
            }
        }
        if (!carried_part.is_one()) {
            Polynomial shifted(target);
            for (const auto& [m, c] : acc.terms()) {
                shifted.add_term(m * carried_part, c);
            }
            acc = std::move(shifted);
        }
        result += acc;
    }
    return result;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
    if (bindings.empty()) {
        return p;
    }
    return substitute(p, bindings, p.space());
}

Polynomial rebase(const Polynomial& p, const VarSpace& target) {
    if (p.space() == target) {
        return p;
    }
    std::vector<std::optional<std::size_t>> map(p.space().size());
    Polynomial result(target);
    for (const auto& [mono, coef] : p.terms()) {
        Monomial m;
        for (const auto& [var, exp] : mono.factors()) {
            if (!map[var]) {
                map[var] = target.require(p.space().name(var));
            }
            m = m * Monomial::variable(*map[var], exp);
        }
        result.add_term(m, coef);
    }
    return result;
}

Polynomial truncate_jet(const Polynomial& p, unsigned degree) {
    Polynomial result(p.space());
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() <= degree) {
            result.add_term(m, c);
        }
    }
    return result;
}

Polynomial truncate_weighted(const Polynomial& p, std::span<const unsigned> weights, unsigned max_weight) {
    Polynomial result(p.space());
    for (const auto& [m, c] : p.terms()) {
        unsigned w = 0;
        for (const auto& [var, exp] : m.factors()) {
            w += weights[var] * exp;
        }
        if (w <= max_weight) {
            result.add_term(m, c);
        }
    }
    return result;
}

Polynomial exact_div(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) {
        throw std::domain_error("exact_div by the zero polynomial");
    }
    if (!(num.space() == den.space())) {
        throw SpaceMismatch("exact_div operands live over different variable spaces");
    }
    const auto [den_mono, den_coef] = den.leading_term();
    Polynomial quotient(num.space());
    Polynomial remainder = num;
    while (!remainder.is_zero()) {
        const auto [lead_mono, lead_coef] = remainder.leading_term();
        if (!den_mono.divides(lead_mono)) {
            throw InexactDivision("divisor " + to_string(den) + " does not divide " + to_string(num));
        }
        const Monomial q_mono = den_mono.quotient_of(lead_mono);
        const Rational q_coef = lead_coef / den_coef;
        quotient.add_term(q_mono, q_coef);
        for (const auto& [m, c] : den.terms()) {
            remainder.add_term(m * q_mono, -(c * q_coef));
        }
    }
    return quotient;
}

namespace {

void enumerate_degree(unsigned remaining, std::size_t pos, std::vector<std::uint32_t>& exps,
                      const std::vector<std::size_t>& indices, std::size_t space_size, Polynomial& out) {
    if (pos + 1 == indices.size()) {
        exps[indices[pos]] = remaining;
        out.add_term(Monomial::from_dense(exps), Rational(1));
        exps[indices[pos]] = 0;
        return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
        exps[indices[pos]] = e;
        enumerate_degree(remaining - e, pos + 1, exps, indices, space_size, out);
    }
    exps[indices[pos]] = 0;
}

}  // namespace

Polynomial complete_symmetric(unsigned j, const std::vector<std::string>& vars, const VarSpace& space) {
    if (j == 0) {
        return Polynomial::constant(space, Rational(1));
    }
    Polynomial out(space);
    if (vars.empty()) {
        return out;
    }
    std::vector<std::size_t> indices;
    indices.reserve(vars.size());
    for (const auto& v : vars) {
        indices.push_back(space.require(v));
    }
    std::vector<std::uint32_t> exps(space.size(), 0);
    enumerate_degree(j, 0, exps, indices, space.size(), out);
    return out;
}

Polynomial coefficient_of(const Polynomial& p, std::size_t var, std::uint32_t power) {
    Polynomial out(p.space());
    for (const auto& [m, c] : p.terms()) {
        if (m.exponent(var) == power) {
            out.add_term(m.without(var), c);
        }
    }
    return out;
}

// ------------------------------------------------------- quadratic forms

QuadraticForm QuadraticForm::restricted(const std::vector<std::string>& vars) const {
    std::vector<std::size_t> idx;
    for (const auto& v : vars) {
        auto it = std::find(variables.begin(), variables.end(), v);
        if (it == variables.end()) {
            throw UnknownVariable(v);
        }
        idx.push_back(static_cast<std::size_t>(it - variables.begin()));
    }
    QuadraticForm out;
    out.variables = vars;
    out.matrix.assign(vars.size(), std::vector<Rational>(vars.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            out.matrix[i][j] = matrix[idx[i]][idx[j]];
        }
    }
    return out;
}

Polynomial QuadraticForm::to_polynomial(const VarSpace& space) const {
    Polynomial out(space);
    for (std::size_t i = 0; i < variables.size(); ++i) {
        const std::size_t vi = space.require(variables[i]);
        out.add_term(Monomial::variable(vi, 2), matrix[i][i]);
        for (std::size_t j = i + 1; j < variables.size(); ++j) {
            const std::size_t vj = space.require(variables[j]);
            out.add_term(Monomial::variable(vi) * Monomial::variable(vj), matrix[i][j] * Rational(2));
        }
    }
    return out;
}

Signature signature(const QuadraticForm& q) {
    auto a = q.matrix;
    const std::size_t n = a.size();
    Signature sig;
    // Congruence A -> E A E^T keeps A symmetric; each step zeroes row/column k
    // outside the diagonal.
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t swap_with = n;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (!a[j][j].is_zero()) {
                    swap_with = j;
                    break;
                }
            }
            if (swap_with != n) {
                std::swap(a[k], a[swap_with]);
                for (auto& row : a) {
                    std::swap(row[k], row[swap_with]);
                }
            } else {
                std::size_t partner = n;
                for (std::size_t j = k + 1; j < n; ++j) {
                    if (!a[k][j].is_zero()) {
                        partner = j;
                        break;
                    }
                }
                if (partner == n) {
                    ++sig.zero;
                    continue;
                }
                // Add row/column `partner` to k: new a[k][k] = 2 a[k][p] + a[p][p] = 2 a[k][p].
                for (std::size_t j = 0; j < n; ++j) {
                    a[k][j] += a[partner][j];
                }
                for (std::size_t j = 0; j < n; ++j) {
                    a[j][k] += a[j][partner];
                }
            }
        }
        const Rational pivot = a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k].is_zero()) {
                continue;
            }
            const Rational factor = a[i][k] / pivot;
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= factor * a[k][j];
            }
            for (std::size_t j = 0; j < n; ++j) {
                a[j][i] -= factor * a[j][k];
            }
        }
        if (pivot.sign() > 0) {
            ++sig.plus;
        } else {
            ++sig.minus;
        }
    }
    return sig;
}

PolynomialParts parts(const Polynomial& p) {
    const VarSpace& space = p.space();
    PolynomialParts out;
    out.linear.assign(space.size(), Rational(0));
    out.quadratic.variables = space.names();
    out.quadratic.matrix.assign(space.size(), std::vector<Rational>(space.size()));
    out.rest = Polynomial(space);
    const Rational half(1, 2);
    for (const auto& [m, c] : p.terms()) {
        switch (m.degree()) {
            case 0:
                out.constant = c;
                break;
            case 1:
                out.linear[m.factors().front().first] = c;
                break;
            case 2:
                if (m.factors().size() == 1) {
                    const auto i = m.factors().front().first;
                    out.quadratic.matrix[i][i] = c;
                } else {
                    const auto i = m.factors()[0].first;
                    const auto j = m.factors()[1].first;
                    out.quadratic.matrix[i][j] = c * half;
                    out.quadratic.matrix[j][i] = c * half;
                }
                break;
            default:
                out.rest.add_term(m, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------- display

namespace {

std::string monomial_text(const Monomial& m, const VarSpace& space) {
    std::string s;
    for (const auto& [var, exp] : m.factors()) {
        if (!s.empty()) {
            s += '*';
        }
        s += space.name(var);
        if (exp > 1) {
            s += '^';
            s += std::to_string(exp);
        }
    }
    return s;
}

}  // namespace

std::string to_string(const Polynomial& p) { return to_string(p, p.term_count()); }

std::string to_string(const Polynomial& p, std::size_t max_terms) {
    if (p.is_zero()) {
        return "0";
    }
    std::vector<std::pair<Monomial, Rational>> ordered(p.terms().begin(), p.terms().end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) {
            return a.first.degree() < b.first.degree();
        }
        return compare_grlex(a.first, b.first) > 0;
    });
    std::ostringstream os;
    bool first = true;
    std::size_t printed = 0;
    for (const auto& [m, c] : ordered) {
        if (printed++ == max_terms) {
            os << " + ... [" << (ordered.size() - max_terms) << " more terms]";
            break;
        }
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) {
                os << '-';
            }
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const Rational mag = c.abs();
        if (m.is_one()) {
            os << mag;
        } else if (mag.is_one()) {
            os << monomial_text(m, p.space());
        } else {
            os << mag << '*' << monomial_text(m, p.space());
        }
    }
    return os.str();
}

}  // namespace grpkit
