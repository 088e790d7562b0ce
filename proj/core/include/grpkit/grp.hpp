#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpkit/germ.hpp"
#include "grpkit/mps.hpp"
#include "grpkit/polynomial.hpp"

namespace grpkit {

/// The two (K+2)-jet normal families of corank-one germs with a good real
/// perturbation:
///
///   One: (u; v; x; sum_{i<K} z^i u_i + z^K (q + alpha v_{K-1}) + z^{K+2};
///                  sum_{i<K} z^i v_i + z^{K+1})
///   Two: (u; v; x; sum_{i<K} z^i u_i + z^K q + z^{K+2};
///                  sum_{i<=K} z^i v_i + z^{K+1} x_1)
///
/// with |u| = K-1, |v| = K-1 (One) or K (Two).
enum class Family { One, Two };

std::string to_string(Family family);

/// Explicit u/v/x block assignment, overriding inference.
struct BlockAssignment {
    std::vector<std::string> u;
    std::vector<std::string> v;
    std::vector<std::string> x;
};

/// Parses "u=a,b,v=c,x=d,e": a token containing '=' opens a block.
BlockAssignment parse_blocks(const std::string& text);

struct JetNormalForm {
    Family family = Family::One;
    int K = 1;
    int n = 0;
    std::optional<Rational> alpha;  // family One with K >= 2
    Polynomial q;                   // over the germ's space, normalized coordinates
    std::vector<std::string> u;
    std::vector<std::string> v;
    std::vector<std::string> x;     // family Two: x.front() is x_1
    int component = 0;              // germ component playing the role of the first jet entry

    /// v_{K-1} for family One (empty when K = 1), v_K for family Two.
    [[nodiscard]] std::string distinguished_v() const;
};

struct MatchResult {
    std::optional<JetNormalForm> form;
    std::string obstruction;  // first structural obstruction when no form matched
};

/// Every syntactic match of the germ's (K+2)-jets against the two families,
/// for K = 1..floor((n+1)/2), either component order. Blocks are read off
/// the jet: u_i is the variable multiplying z^i in the first entry, v_i the
/// one multiplying z^i in the second, x_1 the one multiplying z^{K+1}
/// (family Two); the remaining source variables form the x-block in declared
/// order. z-free terms are ignored. The result is rescaled so that the
/// structural coefficients are 1.
std::vector<JetNormalForm> match_all(const MapGerm& f, const std::optional<BlockAssignment>& blocks,
                                     std::vector<std::string>* obstructions = nullptr);

MatchResult match_normal_form(const MapGerm& f, const std::optional<BlockAssignment>& blocks = std::nullopt);

struct CheckResult {
    bool pass = false;
    std::string reason;
};

/// alpha < 1, q(0,0,x) positive definite on the x-block (or no x-block),
/// and no linear term of q in the distinguished v variable.
CheckResult check_sufficient(const JetNormalForm& nf);

struct PerturbationReport {
    bool pass = false;
    std::string reason;
    Polynomial residual;          // residual equation of D^{K+1}(f_t), weighted 2-jet
    QuadraticForm form;           // its quadratic part on the free variables
    Signature form_signature;
    Rational t_coefficient;       // c in residual = form + c*t
};

/// Sign s for which the residual sphere form = -c*t of D^{K+1}(f + s t z^K)
/// has real points for t > 0; 0 if the residual is not a definite form
/// deformed by t.
int choose_t_sign(const MapGerm& f, const JetNormalForm& nf);

/// Checks that f + sign*t*z^K deforms D^{K+1} into a nonempty real sphere
/// and that D^{K+2} behaves as the family requires.
PerturbationReport verify_perturbation(const MapGerm& f, const JetNormalForm& nf, int sign);

enum class VerdictKind { Yes, No, Unknown };

std::string to_string(VerdictKind kind);

struct GrpVerdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<JetNormalForm> form;
    std::optional<MapGerm> perturbed;
    int t_sign = 0;
    std::string reason;
    AnalysisTable table;
};

/// Screens with the multiple point spaces, then matches the jet families.
/// The screen applies for every n; matching needs n > 2. No is reserved for a violated necessary condition; a germ that passes the
/// screens but matches no family in its given coordinates is Unknown.
GrpVerdict classify_grp(const MapGerm& f, const std::optional<BlockAssignment>& blocks = std::nullopt);

}  // namespace grpkit
