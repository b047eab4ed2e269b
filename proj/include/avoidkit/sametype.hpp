#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avoidkit/avoidance.hpp"
#include "avoidkit/fractional.hpp"
#include "avoidkit/geometry.hpp"

namespace avoidkit {

/// The order type of a point sequence: the orientation of every
/// (d+1)-subset, stored by the lexicographic rank of the sorted tuple.
class OrderType {
public:
    OrderType(std::size_t dim, std::size_t n, std::vector<Orientation> signs);

    std::size_t dim() const { return dim_; }
    std::size_t n() const { return n_; }
    const std::vector<Orientation>& signs() const { return signs_; }

    Orientation sign_of(const std::vector<std::size_t>& tuple) const;

    bool operator==(const OrderType&) const = default;

private:
    std::size_t dim_;
    std::size_t n_;
    std::vector<Orientation> signs_; // rank-indexed over sorted (d+1)-tuples
};

/// chi: the orientation of every (d+1)-tuple of P. Throws input_error
/// naming the first degenerate tuple when P is not in general position.
OrderType order_type(const PointSeq& P);

struct PartitionParts {
    std::vector<IndexSet> parts;

    std::size_t size() const { return parts.size(); }
};

enum class DecisionMethod { exhaustive, separation, sampled };

std::string to_string(DecisionMethod m);

struct SameTypeConfig {
    std::size_t exhaustive_cap = 200000; // orientation evaluations
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    bool force_exhaustive = false;
};

struct SameTypeReport {
    bool same_type = false;
    DecisionMethod method = DecisionMethod::exhaustive;
    std::size_t evaluations = 0;
};

/// Do all transversals of the parts share one order type? Decided
/// exhaustively when the total orientation-evaluation count fits the
/// cap; otherwise by the hull-separation sufficient condition (every
/// bipartition of every (d+1)-tuple of parts strictly separable) with
/// seeded sampling as a falsifier. Fewer than d+1 parts are same-type
/// by definition.
SameTypeReport same_type_transversals_report(const PointSeq& P, const PartitionParts& parts,
                                             const SameTypeConfig& cfg = {});

bool same_type_transversals(const PointSeq& P, const PartitionParts& parts,
                            const SameTypeConfig& cfg = {});

struct PartitionResult {
    PartitionParts parts;
    Rational epsilon_hat;          // min part size / n
    bool singleton_fallback = false;
    DecisionMethod method = DecisionMethod::exhaustive;
    std::size_t shrink_rounds = 0;
};

/// Orders P by first coordinate, cuts it into k contiguous blocks, and
/// shrinks each block toward its centroid until every (d+1)-tuple of
/// parts has verified same-type transversals. Singleton parts always
/// verify, so the search terminates; reaching them sets the fallback flag.
PartitionResult same_type_partition(const PointSeq& P, std::size_t k,
                                    const SameTypeConfig& cfg = {});

struct FractionalRdConfig {
    std::size_t parts_override = 0; // k' (0 = max(2k^2, (d+2)k))
    SameTypeConfig sametype;
    SearchConfig search;
    VerifyConfig verify;
};

struct FractionalRdResult {
    FractionalFamily family;
    PartitionResult partition;
    std::vector<std::size_t> representatives; // one per partition part
    AvoidingPair rep_pair;                    // avoiding pair among representatives
};

/// Positive-fraction pipeline in R^d: same-type partition into k' parts,
/// one representative per part, an avoiding pair among representatives,
/// and the parts behind the chosen representatives as the 2k subsets.
/// The output is verified by transversal mutual-avoidance checks.
FractionalRdResult fractional_rd(const PointSeq& P, std::size_t k,
                                 const FractionalRdConfig& cfg = {});

/// The member of `indices` closest to the centroid of those members
/// (exact squared distance, ties to the smallest index).
std::size_t nearest_to_centroid(const PointSeq& P, const std::vector<std::size_t>& indices);

} // namespace avoidkit
