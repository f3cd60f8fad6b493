#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gowers/candidates.hpp"
#include "gowers/coloring.hpp"

namespace gowers {

/// Bijection (cell index, color) <-> positive DIMACS variable, cell-major in
/// canonical cell order: var(c, i) = c*r + i + 1.
struct VarMap {
    int r = 1;
    std::uint32_t num_cells = 0;

    int var(std::uint32_t cell, int color) const {
        return static_cast<int>(cell) * r + color + 1;
    }
    std::pair<std::uint32_t, int> cell_color(int var) const {
        const int zero_based = var - 1;
        return {static_cast<std::uint32_t>(zero_based / r), zero_based % r};
    }
    int num_vars() const { return static_cast<int>(num_cells) * r; }
};

enum class ClauseGroup { AtLeastOne, AtMostOne, Avoidance };

/// CNF with one provenance tag per clause. Clause literals follow the DIMACS
/// convention (nonzero, sign = polarity).
struct CnfFormula {
    VarMap vars;
    std::vector<std::string> comments;             // fingerprint lines, without the "c "
    std::vector<std::vector<int>> clauses;
    std::vector<ClauseGroup> groups;               // parallel to clauses

    std::size_t count(ClauseGroup g) const;
    void append(std::vector<int> clause, ClauseGroup g);   // validates literals
};

/// CNF that is satisfiable iff an r-coloring of the box avoids every
/// candidate structure: exactly-one color per cell (pairwise at-most-one)
/// plus, per distinct candidate value set and color, one all-negative clause.
/// The candidate table is the same one the oracle searches, so the two
/// decision paths agree by construction.
CnfFormula encode_avoidance(const CandidateTable& table, const CellIndex& index, int r);
CnfFormula encode_avoidance(const Box& box, int r, const StructureSpec& spec,
                            std::size_t cap = CandidateTable::kDefaultCap);

/// Deterministic DIMACS text: fingerprint comments, `p cnf`, clauses in
/// construction order, each zero-terminated. Byte-identical for equal input.
std::string write_dimacs(const CnfFormula& f);

class ModelDecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rebuilds the coloring from a solver model (list of DIMACS literals;
/// unmentioned variables count as false). Enforces exactly one color per
/// cell; a violation means the encoder or the solver is broken, and raises
/// ModelDecodeError.
Coloring decode_model(const std::vector<int>& literals, const Box& box, int r);

struct SolverOutcome {
    enum class Status { Sat, Unsat, Error };
    Status status = Status::Error;
    std::vector<int> model;      // literals; populated when Sat
    std::string diagnostic;      // populated when Error
};

/// Runs `command <cnf-file>` through /bin/sh, parses SAT-competition output
/// ("s SATISFIABLE" / "s UNSATISFIABLE" and "v" literal lines). A negative
/// wall_ms means no timeout; on timeout the child is killed and the outcome
/// is an Error carrying partial diagnostics. scratch_dir defaults to the
/// system temp directory.
SolverOutcome run_external_solver(const CnfFormula& f, const std::string& command,
                                  std::int64_t wall_ms = -1, std::string scratch_dir = {});

}  // namespace gowers
