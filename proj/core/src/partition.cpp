#include "grpkit/partition.hpp"

#include <numeric>
#include <stdexcept>

namespace grpkit {

int Partition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {

void generate(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition{current});
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        generate(remaining - part, part, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions(int k) {
    if (k < 1) {
        throw std::invalid_argument("partitions need k >= 1");
    }
    std::vector<Partition> out;
    std::vector<int> current;
    generate(k, k, current, out);
    return out;
}

}  // namespace grpkit
