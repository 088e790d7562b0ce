#pragma once

#include <vector>

namespace grpkit {

/// Integer partition of k: weakly decreasing positive parts. It is the cycle
/// type of a permutation in the symmetric group on k letters; sigma_sharp is
/// the number of cycles.
struct Partition {
    std::vector<int> parts;

    [[nodiscard]] int total() const;
    [[nodiscard]] int sigma_sharp() const { return static_cast<int>(parts.size()); }

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Every partition of k in reverse lexicographic order: (k), (k-1,1), ...
std::vector<Partition> partitions(int k);

}  // namespace grpkit
