#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gowers/coloring.hpp"
#include "gowers/structures.hpp"

namespace gowers {

/// What to look for inside one color class.
///   SumSubspace     — a Gowers sum structure (m_sum generators from Xk-in-box)
///   ProductSubspace — a Gowers product structure (m_prod generators from Yk-in-box)
///   FiniteSums      — FS of m_sum generators from Xk-in-box
///   FiniteProducts  — FP of m_prod generators from Yk-in-box
///   SumFpPair       — a sum structure and an FP set sharing one color; the
///                     FP generators come from the positive cells (N^k) of a
///                     sum-world box
///   SumProductPair  — a sum structure and a product structure sharing one
///                     color; product generators come from the Yk cells of a
///                     sum-world box
enum class StructureKind {
    SumSubspace,
    ProductSubspace,
    FiniteSums,
    FiniteProducts,
    SumFpPair,
    SumProductPair,
};

const char* kind_name(StructureKind k);
StructureKind parse_kind(const std::string& name);   // throws std::invalid_argument
bool kind_is_pair(StructureKind k);
bool kind_is_product_world(StructureKind k);          // needs a Yk box

/// Search target. m_sum counts sum-side generators, m_prod product-side ones
/// (pair kinds use both, sum kinds only m_sum, product kinds only m_prod).
/// closure requires every generated value to be a box cell; with closure off
/// a candidate is restricted to its in-box values and kept when any remain.
/// positive_sum_generators restricts pair-kind sum generators to N^k-in-box
/// instead of Xk-in-box.
struct StructureSpec {
    StructureKind kind = StructureKind::SumSubspace;
    int m_sum = 2;
    int m_prod = 2;
    bool distinct_values = false;
    bool closure = true;
    bool positive_sum_generators = false;

    int sum_count() const { return kind_is_pair(kind) || !kind_is_product_world(kind) ? m_sum : 0; }
    int prod_count() const { return kind_is_pair(kind) || kind_is_product_world(kind) ? m_prod : 0; }

    void validate() const;   // throws std::invalid_argument
    std::string fingerprint() const;   // stable `key=value` list for files and logs
};

/// One candidate structure over a box: the generators (as cell indices) and
/// the generated values (as sorted, deduplicated cell indices). For pair
/// kinds both sides are present and `cells` is their union; monochromaticity
/// of `cells` is exactly "one color class contains both structures".
struct Candidate {
    std::vector<std::uint32_t> sum_generators;
    std::vector<std::uint32_t> prod_generators;
    std::vector<std::uint32_t> sum_cells;
    std::vector<std::uint32_t> prod_cells;
    std::vector<std::uint32_t> cells;
};

class CandidateCapError : public std::runtime_error {
public:
    CandidateCapError(std::size_t cap, std::size_t count)
        : std::runtime_error("candidate table exceeds the cap: " + std::to_string(count) +
                             " candidates, cap " + std::to_string(cap)),
          cap_(cap), count_(count) {}
    std::size_t cap() const { return cap_; }
    std::size_t count() const { return count_; }

private:
    std::size_t cap_;
    std::size_t count_;
};

/// The shared candidate table. Candidates appear in lexicographic order over
/// generator index tuples (pair kinds: sum side outer, product side inner),
/// which is the tie-breaking order for every "first witness" answer.
/// distinct_sets holds the indices of the first occurrence of each distinct
/// value-cell set; the avoidance search and the SAT encoding both consume
/// exactly that list, so the two paths cannot drift.
struct CandidateTable {
    Box box;
    StructureSpec spec;
    std::vector<Candidate> candidates;
    std::vector<std::uint32_t> distinct_sets;

    static constexpr std::size_t kDefaultCap = 5'000'000;
};

/// Enumerates the table. Throws CandidateCapError past `cap` candidates and
/// std::invalid_argument when the box space does not fit the kind.
CandidateTable build_candidate_table(const CellIndex& index, const StructureSpec& spec,
                                     std::size_t cap = CandidateTable::kDefaultCap);

}  // namespace gowers
