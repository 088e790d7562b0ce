#pragma once

#include <string>
#include <vector>

#include "grpkit/polynomial.hpp"

namespace grpkit {

/// Corank-one germ (x, f1(x,z), f2(x,z)) from n-space to (n+1)-space.
///
/// The source variables are x_1..x_{n-1} followed by z. Deformation
/// parameters (such as t) are appended to the space after z and are not
/// source coordinates.
struct MapGerm {
    int n = 0;
    std::vector<std::string> source_vars;  // n names, last is the z variable
    std::vector<std::string> parameters;
    VarSpace space;                        // source_vars + parameters
    Polynomial f1;
    Polynomial f2;
    std::string label;

    MapGerm() = default;
    /// Validates arity and that f1, f2 vanish at the origin.
    MapGerm(std::vector<std::string> source_vars, Polynomial f1, Polynomial f2, std::string label = {},
            std::vector<std::string> parameters = {});

    [[nodiscard]] const std::string& z_name() const { return source_vars.back(); }
    [[nodiscard]] std::vector<std::string> x_block() const {
        return {source_vars.begin(), source_vars.end() - 1};
    }
    [[nodiscard]] const Polynomial& component(int which) const { return which == 0 ? f1 : f2; }

    friend bool operator==(const MapGerm& a, const MapGerm& b) {
        return a.n == b.n && a.source_vars == b.source_vars && a.parameters == b.parameters &&
               a.f1 == b.f1 && a.f2 == b.f2 && a.label == b.label;
    }
};

/// Names reserved for generated variables: z1, z2, ... and the parameter t.
bool is_reserved_name(const std::string& name);

}  // namespace grpkit
