#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grpkit/divdiff.hpp"
#include "grpkit/germ.hpp"
#include "grpkit/partition.hpp"
#include "grpkit/polynomial.hpp"

namespace grpkit {

enum class SingularityKind { Empty, Smooth, MorseA1, Degenerate, Unknown };

/// Germ of a variety at the origin, up to what its 2-jet after elimination
/// can tell: empty, smooth, an A1 (Morse) point, or worse.
struct SingularityClass {
    SingularityKind kind = SingularityKind::Unknown;
    int dim = 0;    // Smooth only
    int index = 0;  // MorseA1 only: min(n+, n-) of the residual form
    int rank = 0;   // MorseA1 only: number of free variables

    static SingularityClass empty() { return {SingularityKind::Empty}; }
    static SingularityClass smooth(int d) { return {SingularityKind::Smooth, d}; }
    static SingularityClass morse(int index, int rank) { return {SingularityKind::MorseA1, 0, index, rank}; }
    static SingularityClass degenerate() { return {SingularityKind::Degenerate}; }
    static SingularityClass unknown() { return {SingularityKind::Unknown}; }

    [[nodiscard]] bool is_empty() const { return kind == SingularityKind::Empty; }
    [[nodiscard]] bool is_singular() const {
        return kind == SingularityKind::MorseA1 || kind == SingularityKind::Degenerate;
    }
    /// "Empty", "Smooth", "MorseA1", "Degenerate" or "Unknown".
    [[nodiscard]] std::string kind_name() const;
    /// kind_name() plus payload, e.g. "Smooth(1)" or "MorseA1(index 0, rank 3)".
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const SingularityClass&, const SingularityClass&) = default;
};

struct ExpectedDims {
    int d_k = 0;
    std::vector<std::pair<Partition, int>> per_partition;  // (cycle type, d_k^sigma)
};

/// For target dimension n+1: d_k = n+1-k and d_k^sigma = n+1-2k+sigma#.
ExpectedDims expected_dims(int n, int k);

// ------------------------------------------------------------ elimination

struct EliminationOptions {
    /// Deformation parameters: weight 2 in every truncation (c*t is kept,
    /// t*x and t^2 are dropped); never pivots.
    std::vector<std::string> parameters;
    /// When set, pivots are drawn at random instead of the deterministic rule.
    std::mt19937* shuffle = nullptr;
};

/// Linear elimination on the 2-jets of a system of equations.
struct Elimination {
    bool unit = false;                          // some equation is a nonzero constant
    std::vector<std::string> pivots;            // in elimination order
    std::map<std::string, Polynomial> solutions;  // pivot -> expression in free variables
    std::vector<Polynomial> residuals;          // equations left without linear part
    std::vector<std::string> free_vars;         // non-pivot, non-parameter variables
    std::size_t equation_count = 0;
    std::size_t variable_count = 0;             // parameters excluded

    /// Quadratic part of residuals[i] on the free variables.
    [[nodiscard]] QuadraticForm residual_form(std::size_t i = 0) const;
};

/// Runs the elimination. Raw constants are checked before truncating to
/// weighted degree 2; pivots are then solved one at a time, each solution
/// iterated to a fixed point modulo degree 3 and substituted everywhere.
/// Default pivot rule: first equation with a linear part, lowest-index
/// variable within it.
Elimination eliminate(const std::vector<Polynomial>& equations, const VarSpace& ambient,
                      const EliminationOptions& options = {});

SingularityClass classify_elimination(const Elimination& e);

/// Classifies the zero set of `equations` at the origin.
SingularityClass classify_origin(const std::vector<Polynomial>& equations, const VarSpace& ambient,
                                 const EliminationOptions& options = {});

// --------------------------------------------------------------- analysis

struct PartitionRow {
    Partition partition;
    int d_sigma = 0;
    bool nonempty = false;
};

struct AnalysisRow {
    int k = 0;
    int d_k = 0;
    SingularityClass cls;
    std::vector<PartitionRow> partitions;
};

enum class AFinite { Yes, Unknown, No };

struct Screens {
    bool necessary = true;    // every positive-dimensional D^k is empty, smooth or A1
    bool empty_bound = true;  // every examined k > ceil((n+3)/2) is empty
    AFinite a_finite = AFinite::Unknown;
    std::vector<std::string> violations;
};

struct AnalysisTable {
    std::string label;
    int n = 0;
    int bound = 0;  // ceil((n+3)/2)
    int k_max = 0;  // bound + 1
    std::vector<AnalysisRow> rows;
    Screens screens;

    [[nodiscard]] const AnalysisRow* row(int k) const;
};

/// ceil((n+3)/2); every D^k beyond it must be empty for a germ with a good
/// real perturbation.
int emptiness_bound(int n);

/// Classifies D^2, D^3, ... up to the first empty space or up to
/// emptiness_bound(n) + 1, and fills the screening flags.
AnalysisTable analyze(const MapGerm& f);

struct Violation {
    int k = 0;
    int k_prime = 0;
    std::string message;
};

/// Singularity propagation: once some D^k is singular, no later D^k' may be
/// smooth.
std::vector<Violation> consistency_check(const AnalysisTable& table);

std::string to_string(AFinite value);

}  // namespace grpkit
