#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gowers/oracle.hpp"
#include "gowers/sat.hpp"

namespace gowers {

enum class Engine { Oracle, Sat, Both };

const char* engine_name(Engine e);
Engine parse_engine(const std::string& name);   // throws std::invalid_argument

/// A grid of threshold or avoidance instances plus execution policy. The m
/// axis feeds the sum side for sum and pair kinds and the product side for
/// product kinds; m_prod pins the pair product side to a fixed count
/// (0 = same as m).
struct Campaign {
    std::vector<int> ks{1};
    std::vector<int> rs{2};
    std::vector<int> ms{2};
    int m_prod = 0;
    StructureKind kind = StructureKind::SumSubspace;
    bool distinct_values = false;
    bool closure = true;
    bool positive_sum_generators = false;
    Coord n_max = 8;
    Engine engine = Engine::Oracle;
    Budget budget;
    std::string solver_command;
    std::size_t candidate_cap = CandidateTable::kDefaultCap;
    int jobs = 1;                  // parallelism across grid points
    bool parallel_dfs = false;     // opt-in: route jobs into a single DFS
    bool record_timings = false;   // off: wall_ms written as 0 so outputs are byte-stable

    void validate() const;
    StructureSpec spec_for(int m) const;
};

/// One certified verdict. Threshold rows describe a whole N scan; ladder
/// rows (hunt) carry the single N they speak about. The evidence coloring is
/// the avoiding coloring backing the stated lower bound.
struct Certificate {
    int k = 1;
    int r = 2;
    StructureSpec spec;
    Coord n_max = 0;
    Engine engine = Engine::Oracle;
    std::optional<Coord> n;                  // ladder rows only
    std::string verdict;                     // threshold | unresolved | avoiding | unavoidable
    std::optional<Coord> threshold;
    Coord largest_avoidable = 0;
    std::optional<Coloring> evidence_coloring;
    std::optional<bool> agreement;           // both-engine runs only
    std::uint64_t wall_ms = 0;

    std::string instance_name() const;
    std::string to_json() const;
};

/// Engine verdicts disagree: the most important error the workbench can
/// raise, since it means the oracle or the encoder is wrong.
class EngineDiscrepancy : public std::runtime_error {
public:
    EngineDiscrepancy(std::string instance, const std::string& detail)
        : std::runtime_error("engine discrepancy on " + instance + ": " + detail),
          instance_(std::move(instance)) {}
    const std::string& instance() const { return instance_; }

private:
    std::string instance_;
};

/// Thrown when an external solver invocation fails (missing command,
/// timeout, garbage output). Configuration faults abort the campaign
/// instead of silently degrading every cell to unresolved.
class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One certificate per grid point: the least unavoidable N, or an
/// unresolved verdict with the best certified bounds. Deterministic for any
/// jobs value. Throws EngineDiscrepancy when engine=both disagrees.
std::vector<Certificate> run_threshold_table(const Campaign& c);

/// Lower-bound ladder for the pair kinds: per N, an avoiding coloring, an
/// "unavoidable" row (scan stops there) or an unresolved row.
std::vector<Certificate> hunt_pair_lower_bounds(const Campaign& c);

/// Re-validates every certificate (evidence colorings must admit no witness)
/// and writes one JSON file per certificate plus summary.csv. Deterministic:
/// equal results yield byte-identical files. Throws std::runtime_error
/// naming the instance when re-validation fails.
void emit_certificates(const std::vector<Certificate>& certs, const std::string& out_dir);

std::string summary_csv(const std::vector<Certificate>& certs);

}  // namespace gowers
