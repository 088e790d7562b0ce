#pragma once

#include <string>
#include <vector>

#include "grpkit/germ.hpp"
#include "grpkit/partition.hpp"
#include "grpkit/polynomial.hpp"

namespace grpkit {

/// Name of the i-th generated multiple-point variable ("z1", "z2", ...).
std::string z_name(int i);

/// Ambient space of D^k(f): the x-block, then z1..zk, then the germ's
/// parameters.
VarSpace multiple_point_vars(const MapGerm& f, int k);

/// Divided difference with respect to a fresh variable:
///   (g(.., z_i) - g(.., z_{i+1})) / (z_i - z_{i+1})
/// where g lives over a space containing z1..zi and `target` additionally
/// contains z_{i+1}. g must be symmetric in z1..zi.
Polynomial dd_step(const Polynomial& g, int i, const VarSpace& target);

/// k-th multiple point space cut out by divided differences.
struct MultiplePointSpace {
    int k = 0;
    int n = 0;
    VarSpace ambient;
    /// f1^2, ..., f1^k, f2^2, ..., f2^k over `ambient`.
    std::vector<Polynomial> equations;
    int expected_dim = 0;

    [[nodiscard]] const Polynomial& f1_level(int i) const { return equations[static_cast<std::size_t>(i - 2)]; }
    [[nodiscard]] const Polynomial& f2_level(int i) const {
        return equations[static_cast<std::size_t>(k - 1 + i - 2)];
    }
};

/// Incremental divided differences f_j^1, f_j^2, ... of both components.
class DividedDifferences {
public:
    explicit DividedDifferences(MapGerm germ);

    /// f_j^i for j in {1,2}, over the space with z1..zi.
    const Polynomial& level(int j, int i);
    MultiplePointSpace space(int k);
    [[nodiscard]] const MapGerm& germ() const { return germ_; }

private:
    void extend(int i);

    MapGerm germ_;
    std::vector<VarSpace> spaces_;          // spaces_[i-1] holds z1..zi
    std::vector<Polynomial> first_;         // first_[i-1] = f1^i
    std::vector<Polynomial> second_;        // second_[i-1] = f2^i
};

MultiplePointSpace multiple_point_space(const MapGerm& f, int k);

/// Equations of D with the z-variables of each cycle identified, one cycle
/// per part over consecutive indices. This is the set-theoretic model of the
/// fixed-point space of any permutation with that cycle type, not its scheme
/// structure. Zero and duplicate equations are dropped.
std::vector<Polynomial> restrict_to_partition(const MultiplePointSpace& d, const Partition& p);

/// f with `component` (0 = f1, 1 = f2) replaced by component + sign*t*z^K.
/// The result carries the extra parameter t.
MapGerm perturb(const MapGerm& f, int K, int sign, int component = 0);

}  // namespace grpkit
