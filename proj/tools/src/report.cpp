#include "grpkit_cli/report.hpp"

#include <iomanip>
#include <sstream>

#include "grpkit/parser.hpp"

namespace grpkit::cli {

using nlohmann::json;

std::string version() { return GRPKIT_VERSION; }

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? sep : "") + items[i];
    }
    return out;
}

std::string parts_string(const Partition& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        s += (i ? "," : "") + std::to_string(p.parts[i]);
    }
    return s + ")";
}

json class_index(const SingularityClass& c) {
    return c.kind == SingularityKind::MorseA1 ? json(c.index) : json(nullptr);
}

json verdict_json(const GrpVerdict& v) {
    json out;
    out["kind"] = to_string(v.kind);
    out["reason"] = v.reason;
    if (v.form) {
        out["K"] = v.form->K;
        out["family"] = to_string(v.form->family);
    } else {
        out["K"] = nullptr;
        out["family"] = nullptr;
    }
    if (v.perturbed) {
        out["perturbation"] = {{"f1", serialize(v.perturbed->f1)},
                               {"f2", serialize(v.perturbed->f2)},
                               {"parameter", "t"}};
        out["t_sign"] = v.t_sign;
    } else {
        out["perturbation"] = nullptr;
        out["t_sign"] = nullptr;
    }
    return out;
}

}  // namespace

json germ_json(const MapGerm& germ) {
    return {{"n", germ.n},
            {"vars", germ.source_vars},
            {"f1", serialize(germ.f1)},
            {"f2", serialize(germ.f2)},
            {"label", germ.label}};
}

json to_json(const Report& r) {
    json out;
    out["germ"] = germ_json(r.germ);
    json rows = json::array();
    for (const auto& row : r.table.rows) {
        json parts = json::array();
        for (const auto& p : row.partitions) {
            parts.push_back({{"parts", p.partition.parts},
                             {"sigma_sharp", p.partition.sigma_sharp()},
                             {"d_sigma", p.d_sigma},
                             {"nonempty", p.nonempty}});
        }
        rows.push_back({{"k", row.k},
                        {"class", row.cls.kind_name()},
                        {"detail", row.cls.describe()},
                        {"index", class_index(row.cls)},
                        {"d_k", row.d_k},
                        {"partitions", parts}});
    }
    out["analysis"] = rows;
    const Screens& s = r.table.screens;
    out["screens"] = {{"necessary", s.necessary},
                      {"empty_bound", s.empty_bound},
                      {"a_finite", to_string(s.a_finite)},
                      {"violations", s.violations}};
    if (r.verdict) {
        out["verdict"] = verdict_json(*r.verdict);
    }
    if (!r.equations.empty()) {
        json eqs = json::array();
        for (const auto& d : r.equations) {
            std::vector<std::string> polys;
            for (const auto& e : d.equations) {
                polys.push_back(to_string(e, kMaxPrintedTerms));
            }
            eqs.push_back({{"k", d.k}, {"equations", polys}});
        }
        out["equations"] = eqs;
    }
    out["version"] = version();
    if (r.elapsed_ms) {
        out["timing"] = {{"ms", *r.elapsed_ms}};
    }
    return out;
}

std::string render_equations(const MultiplePointSpace& d) {
    std::ostringstream os;
    for (int j = 0; j < 2; ++j) {
        for (int i = 2; i <= d.k; ++i) {
            const Polynomial& p = j == 0 ? d.f1_level(i) : d.f2_level(i);
            os << "f" << (j + 1) << "^" << i << " = " << to_string(p, kMaxPrintedTerms) << "\n";
        }
    }
    return os.str();
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "germ: " << (r.germ.label.empty() ? "(unlabelled)" : r.germ.label) << " (n = " << r.germ.n << ")\n";
    os << "  vars = " << join(r.germ.source_vars, ",") << "\n";
    os << "  f1 = " << serialize(r.germ.f1) << "\n";
    os << "  f2 = " << serialize(r.germ.f2) << "\n";
    os << "multiple point spaces (emptiness bound " << r.table.bound << "):\n";
    for (const auto& row : r.table.rows) {
        os << "  D^" << row.k << "  d_k = " << std::setw(2) << row.d_k << "  " << row.cls.describe() << "\n";
        std::vector<std::string> cells;
        for (const auto& p : row.partitions) {
            cells.push_back(parts_string(p.partition) + " d=" + std::to_string(p.d_sigma) +
                            (p.nonempty ? " nonempty" : " empty"));
        }
        os << "      partitions: " << join(cells, "; ") << "\n";
    }
    for (const auto& d : r.equations) {
        os << "equations of D^" << d.k << ":\n" << render_equations(d);
    }
    const Screens& s = r.table.screens;
    os << "screens: necessary " << (s.necessary ? "pass" : "FAIL") << ", empty_bound "
       << (s.empty_bound ? "pass" : "FAIL") << ", a_finite " << to_string(s.a_finite) << "\n";
    for (const auto& v : s.violations) {
        os << "  violation: " << v << "\n";
    }
    if (r.verdict) {
        const GrpVerdict& v = *r.verdict;
        os << "verdict: " << to_string(v.kind) << "\n";
        if (v.form) {
            os << "  family: " << to_string(v.form->family) << ", K = " << v.form->K << "\n";
        }
        if (v.perturbed) {
            os << "  t_sign: " << (v.t_sign > 0 ? "+1" : "-1") << "\n";
            os << "  perturbation: f1 = " << serialize(v.perturbed->f1) << "\n";
            os << "                f2 = " << serialize(v.perturbed->f2) << "\n";
        }
        if (!v.reason.empty()) {
            os << "  reason: " << v.reason << "\n";
        }
    }
    if (r.elapsed_ms) {
        os << "time: " << std::fixed << std::setprecision(3) << *r.elapsed_ms << " ms\n";
    }
    os << "version: " << version() << "\n";
    return os.str();
}

}  // namespace grpkit::cli
