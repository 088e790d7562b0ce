#include "grpkit/mps.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "grpkit/error.hpp"

namespace grpkit {

std::string SingularityClass::kind_name() const {
    switch (kind) {
        case SingularityKind::Empty: return "Empty";
        case SingularityKind::Smooth: return "Smooth";
        case SingularityKind::MorseA1: return "MorseA1";
        case SingularityKind::Degenerate: return "Degenerate";
        case SingularityKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string SingularityClass::describe() const {
    switch (kind) {
        case SingularityKind::Smooth:
            return "Smooth(" + std::to_string(dim) + ")";
        case SingularityKind::MorseA1:
            return "MorseA1(index " + std::to_string(index) + ", rank " + std::to_string(rank) + ")";
        default:
            return kind_name();
    }
}

ExpectedDims expected_dims(int n, int k) {
    if (n < 1 || k < 2) {
        throw std::invalid_argument("expected_dims needs n >= 1 and k >= 2");
    }
    ExpectedDims out;
    out.d_k = n + 1 - k;
    for (auto& p : partitions(k)) {
        const int d = n + 1 - 2 * k + p.sigma_sharp();
        out.per_partition.emplace_back(std::move(p), d);
    }
    return out;
}

// ------------------------------------------------------------ elimination

namespace {

constexpr unsigned kJetWeight = 2;

struct WeightedSpace {
    std::vector<unsigned> weights;
    std::vector<bool> is_param;
};

WeightedSpace weigh(const VarSpace& space, const std::vector<std::string>& parameters) {
    WeightedSpace w;
    w.weights.assign(space.size(), 1);
    w.is_param.assign(space.size(), false);
    for (const auto& p : parameters) {
        if (auto idx = space.index_of(p)) {
            w.weights[*idx] = 2;
            w.is_param[*idx] = true;
        }
    }
    return w;
}

/// (variable index, coefficient) of each linear term in a non-parameter variable.
std::vector<std::pair<std::size_t, Rational>> linear_terms(const Polynomial& p, const WeightedSpace& w) {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() == 1 && !w.is_param[m.factors().front().first]) {
            out.emplace_back(m.factors().front().first, c);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace

QuadraticForm Elimination::residual_form(std::size_t i) const {
    return parts(residuals.at(i)).quadratic.restricted(free_vars);
}

Elimination eliminate(const std::vector<Polynomial>& equations, const VarSpace& ambient,
                      const EliminationOptions& options) {
    const WeightedSpace w = weigh(ambient, options.parameters);
    const auto truncate = [&](const Polynomial& p) { return truncate_weighted(p, w.weights, kJetWeight); };

    Elimination out;
    out.equation_count = equations.size();
    out.variable_count = static_cast<std::size_t>(std::count(w.is_param.begin(), w.is_param.end(), false));

    std::vector<Polynomial> pending;
    pending.reserve(equations.size());
    for (const auto& eq : equations) {
        Polynomial e = rebase(eq, ambient);
        if (!e.constant_term().is_zero()) {
            out.unit = true;
        }
        pending.push_back(truncate(e));
    }

    std::vector<std::pair<std::string, Polynomial>> raw_solutions;
    while (!out.unit) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (!linear_terms(pending[i], w).empty()) {
                candidates.push_back(i);
            }
        }
        if (candidates.empty()) {
            break;
        }
        std::size_t eq_index = candidates.front();
        auto lin = linear_terms(pending[eq_index], w);
        std::size_t choice = 0;
        if (options.shuffle != nullptr) {
            std::uniform_int_distribution<std::size_t> pick_eq(0, candidates.size() - 1);
            eq_index = candidates[pick_eq(*options.shuffle)];
            lin = linear_terms(pending[eq_index], w);
            std::uniform_int_distribution<std::size_t> pick_var(0, lin.size() - 1);
            choice = pick_var(*options.shuffle);
        }
        const auto [pivot, coef] = lin[choice];
        const std::string name = ambient.name(pivot);

        // eq = coef*pivot + rest  =>  pivot = -rest/coef, iterated until pivot-free.
        Polynomial eq = std::move(pending[eq_index]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(eq_index));
        Polynomial rest = eq - Polynomial::term(ambient, Monomial::variable(pivot), coef);
        Polynomial solution = rest * (-coef.inverse());
        for (int iter = 0; solution.degree_in(pivot) > 0; ++iter) {
            if (iter > 8) {
                throw Error("pivot solution for '" + name + "' did not stabilise");
            }
            solution = truncate(substitute(solution, {{name, solution}}));
        }
        for (auto& other : pending) {
            other = truncate(substitute(other, {{name, solution}}));
            if (!other.constant_term().is_zero()) {
                out.unit = true;
            }
        }
        out.pivots.push_back(name);
        raw_solutions.emplace_back(name, std::move(solution));
    }

    // Back-substitution, last pivot first.
    std::map<std::string, Polynomial> resolved;
    for (auto it = raw_solutions.rbegin(); it != raw_solutions.rend(); ++it) {
        resolved.emplace(it->first, truncate(substitute(it->second, resolved)));
    }
    out.solutions = std::move(resolved);
    out.residuals = std::move(pending);
    for (std::size_t i = 0; i < ambient.size(); ++i) {
        if (!w.is_param[i] && out.solutions.find(ambient.name(i)) == out.solutions.end()) {
            out.free_vars.push_back(ambient.name(i));
        }
    }
    return out;
}

SingularityClass classify_elimination(const Elimination& e) {
    if (e.unit) {
        return SingularityClass::empty();
    }
    if (e.residuals.empty()) {
        return SingularityClass::smooth(static_cast<int>(e.variable_count) - static_cast<int>(e.equation_count));
    }
    if (e.residuals.size() > 1 || e.free_vars.empty()) {
        return SingularityClass::degenerate();
    }
    const Signature sig = signature(e.residual_form());
    if (sig.zero != 0) {
        return SingularityClass::degenerate();
    }
    return SingularityClass::morse(static_cast<int>(std::min(sig.plus, sig.minus)), static_cast<int>(sig.rank()));
}

SingularityClass classify_origin(const std::vector<Polynomial>& equations, const VarSpace& ambient,
                                 const EliminationOptions& options) {
    return classify_elimination(eliminate(equations, ambient, options));
}

// --------------------------------------------------------------- analysis

int emptiness_bound(int n) { return (n + 4) / 2; }

const AnalysisRow* AnalysisTable::row(int k) const {
    for (const auto& r : rows) {
        if (r.k == k) {
            return &r;
        }
    }
    return nullptr;
}

AnalysisTable analyze(const MapGerm& f) {
    AnalysisTable table;
    table.label = f.label;
    table.n = f.n;
    table.bound = emptiness_bound(f.n);
    table.k_max = table.bound + 1;

    const EliminationOptions options{f.parameters, nullptr};
    DividedDifferences dd(f);
    for (int k = 2; k <= table.k_max; ++k) {
        const MultiplePointSpace d = dd.space(k);
        AnalysisRow row;
        row.k = k;
        row.d_k = d.expected_dim;
        row.cls = classify_origin(d.equations, d.ambient, options);
        for (auto& [partition, d_sigma] : expected_dims(f.n, k).per_partition) {
            PartitionRow pr;
            pr.d_sigma = d_sigma;
            pr.nonempty = !classify_origin(restrict_to_partition(d, partition), d.ambient, options).is_empty();
            pr.partition = std::move(partition);
            row.partitions.push_back(std::move(pr));
        }
        const bool stop = row.cls.is_empty();
        table.rows.push_back(std::move(row));
        if (stop) {
            break;
        }
    }

    Screens& s = table.screens;
    bool all_tame = true;
    for (const auto& row : table.rows) {
        const bool tame = row.cls.kind == SingularityKind::Empty || row.cls.kind == SingularityKind::Smooth ||
                          row.cls.kind == SingularityKind::MorseA1;
        all_tame = all_tame && tame;
        if (row.d_k > 0 && !tame) {
            s.necessary = false;
            s.violations.push_back("D^" + std::to_string(row.k) + " is " + row.cls.kind_name() +
                                   " at expected dimension " + std::to_string(row.d_k));
        }
        if (row.k > table.bound && !row.cls.is_empty()) {
            s.empty_bound = false;
            s.violations.push_back("D^" + std::to_string(row.k) + " is nonempty (" + row.cls.describe() +
                                   ") beyond the emptiness bound k > " + std::to_string(table.bound));
        }
    }
    s.a_finite = all_tame ? AFinite::Yes : AFinite::Unknown;
    return table;
}

std::vector<Violation> consistency_check(const AnalysisTable& table) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (!table.rows[i].cls.is_singular()) {
            continue;
        }
        for (std::size_t j = i + 1; j < table.rows.size(); ++j) {
            if (table.rows[j].cls.kind == SingularityKind::Smooth) {
                const int k = table.rows[i].k;
                const int kp = table.rows[j].k;
                out.push_back({k, kp,
                               "D^" + std::to_string(k) + " is " + table.rows[i].cls.kind_name() + " but D^" +
                                   std::to_string(kp) + " is Smooth"});
            }
        }
    }
    return out;
}

std::string to_string(AFinite value) {
    switch (value) {
        case AFinite::Yes: return "yes";
        case AFinite::Unknown: return "unknown";
        case AFinite::No: return "no";
    }
    return "unknown";
}

}  // namespace grpkit
