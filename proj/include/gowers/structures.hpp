#pragma once

#include <cstdint>
#include <vector>

#include "gowers/ktuple.hpp"

namespace gowers {

/// An ordered family of generators {n_i}. Values may repeat unless
/// distinct_values is set; both policies are first-class because the
/// resulting finite thresholds differ.
struct GeneratorSet {
    int dim = 1;
    std::vector<KTuple> members;
    bool distinct_values = false;

    /// Checks the dimension, the pairwise-distinctness policy and membership
    /// of every member in the given space. Throws std::invalid_argument with
    /// the offending member in the message.
    void validate(Space space) const;
};

/// Entry i holds the part of generator i: 0 for "unused", 1..k for B_1..B_k.
/// Legal assignments have at least one entry equal to 1 (B_1 nonempty); the
/// encoding makes B_1..B_k disjoint by construction.
using PartAssignment = std::vector<int>;

bool assignment_is_legal(const PartAssignment& a, int k);

/// Number of legal part assignments for m generators in dimension k:
/// (k+1)^m - k^m. Throws std::overflow_error when the count exceeds 2^64-1.
std::uint64_t expression_count(int k, int m);

struct SubspaceElement {
    PartAssignment assignment;
    KTuple value;
};

/// All (assignment, value) pairs of the sum structure generated by g:
/// value = sum over j of sum over i in B_j of T^{j-1} n_i. Assignments are
/// enumerated in lexicographic order over the assignment vector. Generators
/// must lie in X_k.
std::vector<SubspaceElement> gowers_sum_expressions(const GeneratorSet& g);

/// The multiplicative analogue: value = prod over j, i in B_j of S^{j-1} m_i.
/// Generators must lie in Y_k.
std::vector<SubspaceElement> gowers_product_expressions(const GeneratorSet& g);

/// Deduplicated value sets of the two structures, sorted lexicographically.
std::vector<KTuple> gowers_sum_values(const GeneratorSet& g);
std::vector<KTuple> gowers_product_values(const GeneratorSet& g);

/// All componentwise sums over nonempty subsets of xs, sorted and deduplicated.
std::vector<KTuple> finite_sums(const std::vector<KTuple>& xs);

/// All componentwise products over nonempty subsets of ys (every coordinate
/// of every input must be >= 1), sorted and deduplicated.
std::vector<KTuple> finite_products(const std::vector<KTuple>& ys);

}  // namespace gowers
