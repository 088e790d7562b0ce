#include "grpkit/grp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "grpkit/divdiff.hpp"
#include "grpkit/error.hpp"

namespace grpkit {

std::string to_string(Family family) { return family == Family::One ? "One" : "Two"; }

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::Yes: return "Yes";
        case VerdictKind::No: return "No";
        case VerdictKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

BlockAssignment parse_blocks(const std::string& text) {
    BlockAssignment out;
    std::vector<std::string>* current = nullptr;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), [](char c) { return c == ' '; }), token.end());
        if (auto eq = token.find('='); eq != std::string::npos) {
            const std::string key = token.substr(0, eq);
            if (key == "u") {
                current = &out.u;
            } else if (key == "v") {
                current = &out.v;
            } else if (key == "x") {
                current = &out.x;
            } else {
                throw Error("unknown block '" + key + "' (expected u, v or x)");
            }
            token = token.substr(eq + 1);
        }
        if (current == nullptr) {
            throw Error("block list must start with u=, v= or x=");
        }
        if (!token.empty()) {
            current->push_back(token);
        }
    }
    return out;
}

std::string JetNormalForm::distinguished_v() const {
    if (family == Family::One) {
        return K >= 2 ? v.back() : std::string{};
    }
    return v.back();
}

// ---------------------------------------------------------------- matching

namespace {

struct SingleVar {
    std::string name;
    Rational coefficient;
};

std::optional<SingleVar> single_variable(const Polynomial& p) {
    if (p.term_count() != 1) {
        return std::nullopt;
    }
    const auto& [m, c] = *p.terms().begin();
    if (m.degree() != 1) {
        return std::nullopt;
    }
    return SingleVar{p.space().name(m.factors().front().first), c};
}

Rational linear_coefficient(const Polynomial& p, const std::string& var) {
    return p.coefficient(Monomial::variable(p.space().require(var)));
}

std::string zpow(int i) { return i == 1 ? "z" : "z^" + std::to_string(i); }

struct Attempt {
    std::optional<JetNormalForm> form;
    std::string obstruction;
};

Attempt try_family(const MapGerm& f, int component, int K, Family family,
                   const std::optional<BlockAssignment>& blocks) {
    const int n = f.n;
    const std::string tag = "K=" + std::to_string(K) + " family " + to_string(family) + " (f" +
                            std::to_string(component + 1) + " leading)";
    auto fail = [&](const std::string& why) { return Attempt{std::nullopt, tag + ": " + why}; };

    if (family == Family::One ? n < 2 * K - 1 : n < 2 * K + 1) {
        return fail("too few variables");
    }
    const std::size_t zi = f.space.require(f.z_name());
    const unsigned top = static_cast<unsigned>(K + 2);
    const Polynomial lead = truncate_jet(f.component(component), top);
    const Polynomial other = truncate_jet(f.component(1 - component), top);
    auto coef = [&](const Polynomial& p, int i) { return coefficient_of(p, zi, static_cast<std::uint32_t>(i)); };

    JetNormalForm nf;
    nf.family = family;
    nf.K = K;
    nf.n = n;
    nf.component = component;

    std::vector<Rational> a;
    std::vector<Rational> b;
    for (int i = 1; i < K; ++i) {
        auto sv = single_variable(coef(lead, i));
        if (!sv) {
            return fail("coefficient of " + zpow(i) + " in the leading entry is not a single variable");
        }
        nf.u.push_back(sv->name);
        a.push_back(sv->coefficient);
    }
    const Polynomial c_k = coef(lead, K);
    if (!c_k.constant_term().is_zero()) {
        return fail("coefficient of " + zpow(K) + " has a constant term");
    }
    if (!coef(lead, K + 1).is_zero()) {
        return fail(zpow(K + 1) + " term in the leading entry");
    }
    const Rational c = coef(lead, K + 2).constant_term();
    if (c.is_zero()) {
        return fail("no " + zpow(K + 2) + " term in the leading entry");
    }

    const int v_len = family == Family::One ? K - 1 : K;
    for (int i = 1; i <= v_len; ++i) {
        auto sv = single_variable(coef(other, i));
        if (!sv) {
            return fail("coefficient of " + zpow(i) + " in the second entry is not a single variable");
        }
        nf.v.push_back(sv->name);
        b.push_back(sv->coefficient);
    }
    Rational d;
    std::string x1;
    if (family == Family::One) {
        if (!coef(other, K).is_zero()) {
            return fail(zpow(K) + " term in the second entry");
        }
        const Polynomial c_k1 = coef(other, K + 1);
        if (!c_k1.is_constant() || c_k1.is_zero()) {
            return fail("coefficient of " + zpow(K + 1) + " in the second entry is not a nonzero constant");
        }
        d = c_k1.constant_term();
    } else {
        auto sv = single_variable(coef(other, K + 1));
        if (!sv) {
            return fail("coefficient of " + zpow(K + 1) + " in the second entry is not a single variable");
        }
        x1 = sv->name;
        d = sv->coefficient;
    }
    if (!coef(other, K + 2).is_zero()) {
        return fail(zpow(K + 2) + " term in the second entry");
    }

    std::set<std::string> used(nf.u.begin(), nf.u.end());
    used.insert(nf.v.begin(), nf.v.end());
    if (!x1.empty()) {
        used.insert(x1);
    }
    if (used.size() != nf.u.size() + nf.v.size() + (x1.empty() ? 0 : 1) || used.count(f.z_name()) != 0) {
        return fail("structural variables are not distinct source variables");
    }
    if (!x1.empty()) {
        nf.x.push_back(x1);
    }
    for (const auto& name : f.x_block()) {
        if (used.count(name) == 0) {
            nf.x.push_back(name);
        }
    }
    if (blocks) {
        if (blocks->u != nf.u || blocks->v != nf.v) {
            return fail("u/v blocks differ from the requested assignment");
        }
        std::vector<std::string> want = blocks->x;
        std::vector<std::string> have = nf.x;
        std::sort(want.begin(), want.end());
        std::sort(have.begin(), have.end());
        if (want != have || (!x1.empty() && (blocks->x.empty() || blocks->x.front() != x1))) {
            return fail("x block differs from the requested assignment");
        }
        nf.x = blocks->x;
    }

    for (const auto& name : nf.x) {
        if (!linear_coefficient(c_k, name).is_zero()) {
            return fail("q has a linear term in " + name);
        }
    }
    Polynomial q_raw = c_k;
    Rational beta;
    if (family == Family::One && K >= 2) {
        beta = linear_coefficient(c_k, nf.v.back());
        q_raw -= Polynomial::variable(f.space, nf.v.back()) * beta;
    }
    if (family == Family::Two && !linear_coefficient(c_k, nf.v.back()).is_zero()) {
        return fail("q has a linear term in " + nf.v.back());
    }

    // Target rescaling puts the structural coefficients at 1; the matching
    // source rescaling of u, v (and x_1) is applied to q.
    std::map<std::string, Polynomial> rescale;
    for (std::size_t i = 0; i < nf.u.size(); ++i) {
        rescale.emplace(nf.u[i], Polynomial::variable(f.space, nf.u[i]) * (c / a[i]));
    }
    for (std::size_t i = 0; i < nf.v.size(); ++i) {
        const Rational s = family == Family::One ? d / b[i] : b[i].inverse();
        rescale.emplace(nf.v[i], Polynomial::variable(f.space, nf.v[i]) * s);
    }
    if (family == Family::Two) {
        rescale.emplace(x1, Polynomial::variable(f.space, x1) * d.inverse());
    }
    nf.q = substitute(q_raw, rescale) * c.inverse();
    if (family == Family::One && K >= 2) {
        nf.alpha = beta * d / (c * b.back());
    }
    return Attempt{std::move(nf), {}};
}

}  // namespace

std::vector<JetNormalForm> match_all(const MapGerm& f, const std::optional<BlockAssignment>& blocks,
                                     std::vector<std::string>* obstructions) {
    std::vector<JetNormalForm> out;
    if (!f.parameters.empty()) {
        throw Error("normal-form matching expects a germ without parameters");
    }
    const int k_top = (f.n + 1) / 2;
    for (int K = 1; K <= k_top; ++K) {
        for (Family family : {Family::One, Family::Two}) {
            for (int component : {0, 1}) {
                Attempt at = try_family(f, component, K, family, blocks);
                if (at.form) {
                    out.push_back(std::move(*at.form));
                } else if (obstructions != nullptr) {
                    obstructions->push_back(std::move(at.obstruction));
                }
            }
        }
    }
    return out;
}

MatchResult match_normal_form(const MapGerm& f, const std::optional<BlockAssignment>& blocks) {
    std::vector<std::string> obstructions;
    auto all = match_all(f, blocks, &obstructions);
    MatchResult r;
    if (!all.empty()) {
        r.form = std::move(all.front());
    } else {
        r.obstruction = obstructions.empty() ? "no admissible K for n = " + std::to_string(f.n)
                                             : obstructions.front();
    }
    return r;
}

// ------------------------------------------------------------- sufficiency

CheckResult check_sufficient(const JetNormalForm& nf) {
    if (nf.alpha && *nf.alpha >= Rational(1)) {
        return {false, "alpha not < 1 (alpha = " + nf.alpha->to_string() + ")"};
    }
    const std::string dv = nf.distinguished_v();
    if (!dv.empty() && !linear_coefficient(nf.q, dv).is_zero()) {
        return {false, "q has a linear term in " + dv};
    }
    std::map<std::string, Polynomial> zero;
    for (const auto& name : nf.u) {
        zero.emplace(name, Polynomial(nf.q.space()));
    }
    for (const auto& name : nf.v) {
        zero.emplace(name, Polynomial(nf.q.space()));
    }
    const Polynomial q0 = truncate_jet(substitute(nf.q, zero), 2);
    const PolynomialParts qp = parts(q0);
    if (!qp.constant.is_zero()) {
        return {false, "q has a constant term"};
    }
    for (const auto& r : qp.linear) {
        if (!r.is_zero()) {
            return {false, "q(0,0,x) has a linear term"};
        }
    }
    if (nf.x.empty()) {
        return {true, {}};
    }
    const Signature sig = signature(qp.quadratic.restricted(nf.x));
    if (sig.plus == nf.x.size()) {
        return {true, {}};
    }
    std::ostringstream os;
    os << (sig.plus > 0 && sig.minus > 0 ? "q indefinite" : "q(0,0,x) not positive definite") << ": signature ("
       << sig.plus << "," << sig.minus << "," << sig.zero << ")";
    return {false, os.str()};
}

// ------------------------------------------------------------ perturbation

namespace {

struct ResidualSphere {
    bool ok = false;
    std::string reason;
    Polynomial residual;
    QuadraticForm form;
    Signature sig;
    Rational c;
};

ResidualSphere residual_sphere(const std::vector<Polynomial>& equations, const VarSpace& ambient) {
    ResidualSphere rs;
    const Elimination e = eliminate(equations, ambient, {{"t"}, nullptr});
    if (e.unit) {
        rs.reason = "space is empty";
        return rs;
    }
    if (e.residuals.size() != 1) {
        rs.reason = std::to_string(e.residuals.size()) + " residual equations after elimination (expected 1)";
        return rs;
    }
    rs.residual = e.residuals.front();
    rs.form = e.residual_form();
    rs.sig = signature(rs.form);
    rs.c = rs.residual.coefficient(Monomial::variable(ambient.require("t")));
    if (e.free_vars.empty() || rs.sig.zero != 0 || (rs.sig.plus != 0 && rs.sig.minus != 0)) {
        std::ostringstream os;
        os << "residual form is not definite: signature (" << rs.sig.plus << "," << rs.sig.minus << ","
           << rs.sig.zero << ")";
        rs.reason = os.str();
        return rs;
    }
    if (rs.c.is_zero()) {
        rs.reason = "perturbation does not deform the residual equation";
        return rs;
    }
    rs.ok = true;
    return rs;
}

/// form + c t = 0 has real points for t > 0 iff -c has the sign of the form.
bool real_sphere_nonempty(const ResidualSphere& rs) {
    const int form_sign = rs.sig.minus == 0 ? 1 : -1;
    return -rs.c.sign() == form_sign;
}

}  // namespace

int choose_t_sign(const MapGerm& f, const JetNormalForm& nf) {
    const MapGerm ft = perturb(f, nf.K, 1, nf.component);
    const MultiplePointSpace d = multiple_point_space(ft, nf.K + 1);
    const ResidualSphere rs = residual_sphere(d.equations, d.ambient);
    if (!rs.ok) {
        return 0;
    }
    return real_sphere_nonempty(rs) ? 1 : -1;
}

PerturbationReport verify_perturbation(const MapGerm& f, const JetNormalForm& nf, int sign) {
    PerturbationReport report;
    const MapGerm ft = perturb(f, nf.K, sign, nf.component);
    DividedDifferences dd(ft);
    const MultiplePointSpace d1 = dd.space(nf.K + 1);
    const ResidualSphere rs = residual_sphere(d1.equations, d1.ambient);
    report.residual = rs.residual;
    report.form = rs.form;
    report.form_signature = rs.sig;
    report.t_coefficient = rs.c;
    const std::string where = "D^" + std::to_string(nf.K + 1) + ": ";
    if (!rs.ok) {
        report.reason = where + rs.reason;
        return report;
    }
    if (!real_sphere_nonempty(rs)) {
        report.reason = where + "empty real sphere";
        return report;
    }

    const int k2 = nf.K + 2;
    if (nf.family == Family::One) {
        const MultiplePointSpace d2 = multiple_point_space(f, k2);
        const bool unit = std::any_of(d2.equations.begin(), d2.equations.end(),
                                      [](const Polynomial& p) { return !p.constant_term().is_zero(); });
        if (!unit) {
            report.reason = "D^" + std::to_string(k2) + " has no unit equation";
            return report;
        }
    } else {
        const MultiplePointSpace d2 = dd.space(k2);
        const std::size_t x1 = d2.ambient.require(nf.x.front());
        const bool x1_present = std::any_of(d2.equations.begin(), d2.equations.end(), [&](const Polynomial& p) {
            return !p.coefficient(Monomial::variable(x1)).is_zero();
        });
        if (!x1_present) {
            report.reason = "D^" + std::to_string(k2) + " has no equation linear in " + nf.x.front();
            return report;
        }
        const SingularityClass cls = classify_origin(d2.equations, d2.ambient, {{"t"}, nullptr});
        if (cls.kind == SingularityKind::MorseA1) {
            const ResidualSphere rs2 = residual_sphere(d2.equations, d2.ambient);
            if (!rs2.ok || !real_sphere_nonempty(rs2)) {
                report.reason = "D^" + std::to_string(k2) + ": " + (rs2.ok ? "empty real sphere" : rs2.reason);
                return report;
            }
        } else if (!cls.is_empty()) {
            report.reason = "D^" + std::to_string(k2) + " is " + cls.describe();
            return report;
        }
    }
    report.pass = true;
    return report;
}

// ----------------------------------------------------------------- verdict

GrpVerdict classify_grp(const MapGerm& f, const std::optional<BlockAssignment>& blocks) {
    GrpVerdict verdict;
    verdict.table = analyze(f);
    const Screens& s = verdict.table.screens;
    if (!s.necessary || !s.empty_bound) {
        verdict.kind = VerdictKind::No;
        std::string joined;
        for (const auto& v : s.violations) {
            joined += (joined.empty() ? "" : "; ") + v;
        }
        verdict.reason = joined;
        return verdict;
    }
    if (f.n <= 2) {
        verdict.kind = VerdictKind::Unknown;
        verdict.reason = "n>2 required for the jet characterization (n = " + std::to_string(f.n) + ")";
        return verdict;
    }

    std::vector<std::string> obstructions;
    const auto forms = match_all(f, blocks, &obstructions);
    std::vector<std::string> failures;
    for (const auto& nf : forms) {
        const std::string tag = "K=" + std::to_string(nf.K) + " family " + to_string(nf.family) + ": ";
        const CheckResult check = check_sufficient(nf);
        if (!check.pass) {
            failures.push_back(tag + check.reason);
            continue;
        }
        const int sign = choose_t_sign(f, nf);
        if (sign == 0) {
            failures.push_back(tag + "no sign of t yields a real sphere");
            continue;
        }
        const PerturbationReport report = verify_perturbation(f, nf, sign);
        if (!report.pass) {
            failures.push_back(tag + report.reason);
            continue;
        }
        verdict.kind = VerdictKind::Yes;
        verdict.t_sign = sign;
        verdict.perturbed = perturb(f, nf.K, sign, nf.component);
        verdict.form = nf;
        return verdict;
    }
    verdict.kind = VerdictKind::Unknown;
    if (!failures.empty()) {
        verdict.reason = "matched but not sufficient: " + failures.front();
        verdict.form = forms.front();
    } else {
        verdict.reason = "no jet normal form matched in the given coordinates; first obstruction: " +
                         (obstructions.empty() ? std::string("none") : obstructions.front());
    }
    return verdict;
}

}  // namespace grpkit
