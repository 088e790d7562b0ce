#include "grpkit/divdiff.hpp"

#include <algorithm>
#include <stdexcept>

#include "grpkit/error.hpp"

namespace grpkit {

std::string z_name(int i) { return "z" + std::to_string(i); }

VarSpace multiple_point_vars(const MapGerm& f, int k) {
    std::vector<std::string> names = f.x_block();
    for (int i = 1; i <= k; ++i) {
        names.push_back(z_name(i));
    }
    names.insert(names.end(), f.parameters.begin(), f.parameters.end());
    return VarSpace(std::move(names));
}

namespace {

Polynomial swap_vars(const Polynomial& g, const std::string& a, const std::string& b) {
    const VarSpace& s = g.space();
    return substitute(g, {{a, Polynomial::variable(s, b)}, {b, Polynomial::variable(s, a)}});
}

}  // namespace

Polynomial dd_step(const Polynomial& g, int i, const VarSpace& target) {
    if (i < 1) {
        throw std::invalid_argument("dd_step needs i >= 1");
    }
    for (int a = 1; a < i; ++a) {
        if (!(swap_vars(g, z_name(a), z_name(a + 1)) == g)) {
            throw Error("dd_step input is not symmetric in z1..z" + std::to_string(i));
        }
    }
    const std::string last = z_name(i);
    const std::string fresh = z_name(i + 1);
    const Polynomial lifted = rebase(g, target);
    const Polynomial moved = substitute(lifted, {{last, Polynomial::variable(target, fresh)}}, target);
    const Polynomial den = Polynomial::variable(target, last) - Polynomial::variable(target, fresh);
    return exact_div(lifted - moved, den);
}

DividedDifferences::DividedDifferences(MapGerm germ) : germ_(std::move(germ)) {
    spaces_.push_back(multiple_point_vars(germ_, 1));
    const VarSpace& s1 = spaces_.front();
    const std::map<std::string, Polynomial> rename{{germ_.z_name(), Polynomial::variable(s1, z_name(1))}};
    first_.push_back(substitute(germ_.f1, rename, s1));
    second_.push_back(substitute(germ_.f2, rename, s1));
}

void DividedDifferences::extend(int i) {
    while (static_cast<int>(first_.size()) < i) {
        const int have = static_cast<int>(first_.size());
        spaces_.push_back(multiple_point_vars(germ_, have + 1));
        const VarSpace& next = spaces_.back();
        first_.push_back(dd_step(first_.back(), have, next));
        second_.push_back(dd_step(second_.back(), have, next));
    }
}

const Polynomial& DividedDifferences::level(int j, int i) {
    if (i < 1 || (j != 1 && j != 2)) {
        throw std::invalid_argument("divided difference level out of range");
    }
    extend(i);
    return j == 1 ? first_[static_cast<std::size_t>(i - 1)] : second_[static_cast<std::size_t>(i - 1)];
}

MultiplePointSpace DividedDifferences::space(int k) {
    if (k < 2) {
        throw std::invalid_argument("multiple point spaces start at k = 2");
    }
    extend(k);
    MultiplePointSpace d;
    d.k = k;
    d.n = germ_.n;
    d.ambient = spaces_[static_cast<std::size_t>(k - 1)];
    d.expected_dim = germ_.n + 1 - k;
    for (int i = 2; i <= k; ++i) {
        d.equations.push_back(rebase(first_[static_cast<std::size_t>(i - 1)], d.ambient));
    }
    for (int i = 2; i <= k; ++i) {
        d.equations.push_back(rebase(second_[static_cast<std::size_t>(i - 1)], d.ambient));
    }
    return d;
}

MultiplePointSpace multiple_point_space(const MapGerm& f, int k) { return DividedDifferences(f).space(k); }

std::vector<Polynomial> restrict_to_partition(const MultiplePointSpace& d, const Partition& p) {
    if (p.total() != d.k) {
        throw std::invalid_argument("partition does not sum to k");
    }
    std::map<std::string, Polynomial> bindings;
    int next = 1;
    for (int part : p.parts) {
        const int head = next;
        for (int j = 1; j < part; ++j) {
            bindings.emplace(z_name(head + j), Polynomial::variable(d.ambient, z_name(head)));
        }
        next += part;
    }
    std::vector<Polynomial> out;
    for (const auto& eq : d.equations) {
        Polynomial r = substitute(eq, bindings);
        if (r.is_zero() || std::find(out.begin(), out.end(), r) != out.end()) {
            continue;
        }
        out.push_back(std::move(r));
    }
    return out;
}

MapGerm perturb(const MapGerm& f, int K, int sign, int component) {
    if (K < 1 || (sign != 1 && sign != -1) || (component != 0 && component != 1)) {
        throw std::invalid_argument("perturb needs K >= 1, sign = +-1, component 0 or 1");
    }
    std::vector<std::string> params = f.parameters;
    if (std::find(params.begin(), params.end(), "t") == params.end()) {
        params.emplace_back("t");
    }
    std::vector<std::string> all = f.source_vars;
    all.insert(all.end(), params.begin(), params.end());
    const VarSpace space(all);
    Polynomial f1 = rebase(f.f1, space);
    Polynomial f2 = rebase(f.f2, space);
    const Polynomial shift = Polynomial::variable(space, "t") *
                             Polynomial::variable(space, f.z_name()).pow(static_cast<unsigned>(K)) *
                             Rational(sign);
    (component == 0 ? f1 : f2) += shift;
    return MapGerm(f.source_vars, std::move(f1), std::move(f2), f.label, std::move(params));
}

}  // namespace grpkit
