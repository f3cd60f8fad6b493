#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gowers/candidates.hpp"
#include "gowers/coloring.hpp"

namespace gowers {

/// A monochromatic structure found inside a coloring. generated_cells is the
/// value set of the stated generators (the union of both sides for pair
/// kinds), each cell carrying the witness color.
struct Witness {
    int color = 0;
    std::optional<GeneratorSet> sum_generators;
    std::optional<GeneratorSet> prod_generators;
    std::vector<KTuple> generated_cells;
};

/// Lexicographically first monochromatic candidate, or nullopt. The order is
/// the candidate-table order: generator tuples compared lexicographically.
std::optional<Witness> find_witness(const Coloring& coloring, const StructureSpec& spec);
std::optional<Witness> find_witness(const Coloring& coloring, const CandidateTable& table,
                                    const CellIndex& index);

/// Independent re-validation: recomputes the generated set from the witness
/// generators and re-reads every color. Returns false on any mismatch.
bool validate_witness(const Coloring& coloring, const StructureSpec& spec, const Witness& w);

struct Budget {
    std::uint64_t max_nodes = UINT64_MAX;
    std::int64_t wall_ms = -1;   // < 0 means unlimited
};

enum class AvoidanceStatus { Found, None, BudgetExceeded };

struct AvoidanceResult {
    AvoidanceStatus status = AvoidanceStatus::None;
    std::optional<Coloring> coloring;   // set iff status == Found
    std::uint64_t nodes = 0;            // DFS assignments explored
};

/// Does an r-coloring of the box avoid every candidate structure? DFS over
/// cells in canonical order with incremental pruning (a branch dies as soon
/// as a fully colored candidate is monochromatic) and canonical-form color
/// symmetry breaking: color c may appear only after colors 0..c-1. The
/// returned coloring is the lexicographically first canonical avoiding
/// coloring, identical for any jobs count. jobs > 1 fans independent
/// subtrees out to worker threads.
AvoidanceResult exists_avoiding_coloring(const Box& box, int r, const StructureSpec& spec,
                                         const Budget& budget = {}, int jobs = 1);
AvoidanceResult exists_avoiding_coloring(const CandidateTable& table, const CellIndex& index,
                                         int r, const Budget& budget = {}, int jobs = 1);

enum class ThresholdStatus { Resolved, Unresolved };

/// Outcome of a threshold scan. Resolved: `threshold` is the least N whose
/// box admits no avoiding coloring, and `largest_avoidable` = threshold-1
/// (or lo-1 when even the smallest box is unavoidable). Unresolved: the scan
/// ran out of N or budget; `largest_avoidable` is the best certified lower
/// bound and `last_coloring` its certificate.
struct ThresholdResult {
    ThresholdStatus status = ThresholdStatus::Unresolved;
    std::optional<Coord> threshold;
    Coord largest_avoidable = 0;
    std::optional<Coloring> last_coloring;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
};

/// Scans N upward from the smallest nonempty box to n_max. Monotone: stops
/// at the first unavoidable N.
ThresholdResult minimal_box_threshold(int k, int r, const StructureSpec& spec, Coord n_max,
                                      const Budget& budget = {}, int jobs = 1);

/// Smallest max_coord giving a nonempty box for this dimension and world.
Coord smallest_box(int k, Space space);

}  // namespace gowers
