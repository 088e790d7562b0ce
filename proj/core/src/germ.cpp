#include "grpkit/germ.hpp"

#include "grpkit/error.hpp"

namespace grpkit {

bool is_reserved_name(const std::string& name) {
    if (name == "t") {
        return true;
    }
    if (name.size() < 2 || name.front() != 'z') {
        return false;
    }
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') {
            return false;
        }
    }
    return true;
}

MapGerm::MapGerm(std::vector<std::string> source, Polynomial first, Polynomial second, std::string name,
                 std::vector<std::string> params)
    : n(static_cast<int>(source.size())),
      source_vars(std::move(source)),
      parameters(std::move(params)),
      label(std::move(name)) {
    if (source_vars.empty()) {
        throw ArityMismatch("a germ needs at least the z variable");
    }
    std::vector<std::string> all = source_vars;
    all.insert(all.end(), parameters.begin(), parameters.end());
    space = VarSpace(std::move(all));
    f1 = rebase(first, space);
    f2 = rebase(second, space);
    if (!f1.constant_term().is_zero() || !f2.constant_term().is_zero()) {
        throw NonOriginGerm("germ components must vanish at the origin");
    }
}

}  // namespace grpkit
