#include "gowers/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace gowers {

namespace {

using Clock = std::chrono::steady_clock;

Space world_of(const StructureSpec& spec) {
    return kind_is_product_world(spec.kind) ? Space::Yk : Space::Xk;
}

GeneratorSet generators_from(const CellIndex& index, const std::vector<std::uint32_t>& gen_cells,
                             bool distinct) {
    std::vector<KTuple> members;
    members.reserve(gen_cells.size());
    for (std::uint32_t g : gen_cells) members.push_back(index.cell(g));
    return GeneratorSet{index.box().dim, std::move(members), distinct};
}

bool monochromatic(const std::vector<int>& colors, const std::vector<std::uint32_t>& cells) {
    const int c = colors[cells.front()];
    for (std::uint32_t e : cells)
        if (colors[e] != c) return false;
    return true;
}

}  // namespace

Coord smallest_box(int k, Space space) {
    (void)k;
    return space == Space::Yk || space == Space::FullNk ? 2 : 1;
}

std::optional<Witness> find_witness(const Coloring& coloring, const CandidateTable& table,
                                    const CellIndex& index) {
    for (const Candidate& cand : table.candidates) {
        if (!monochromatic(coloring.colors, cand.cells)) continue;
        Witness w;
        w.color = coloring.colors[cand.cells.front()];
        if (!cand.sum_generators.empty())
            w.sum_generators = generators_from(index, cand.sum_generators, table.spec.distinct_values);
        if (!cand.prod_generators.empty())
            w.prod_generators = generators_from(index, cand.prod_generators, table.spec.distinct_values);
        w.generated_cells.reserve(cand.cells.size());
        for (std::uint32_t e : cand.cells) w.generated_cells.push_back(index.cell(e));
        return w;
    }
    return std::nullopt;
}

std::optional<Witness> find_witness(const Coloring& coloring, const StructureSpec& spec) {
    CellIndex index(coloring.box);
    auto table = build_candidate_table(index, spec);
    return find_witness(coloring, table, index);
}

bool validate_witness(const Coloring& coloring, const StructureSpec& spec, const Witness& w) {
    CellIndex index(coloring.box);
    std::vector<KTuple> regenerated;
    try {
        auto add_values = [&](const std::vector<KTuple>& values) {
            regenerated.insert(regenerated.end(), values.begin(), values.end());
        };
        switch (spec.kind) {
            case StructureKind::SumSubspace:
                if (!w.sum_generators) return false;
                add_values(gowers_sum_values(*w.sum_generators));
                break;
            case StructureKind::FiniteSums:
                if (!w.sum_generators) return false;
                add_values(finite_sums(w.sum_generators->members));
                break;
            case StructureKind::ProductSubspace:
                if (!w.prod_generators) return false;
                add_values(gowers_product_values(*w.prod_generators));
                break;
            case StructureKind::FiniteProducts:
                if (!w.prod_generators) return false;
                add_values(finite_products(w.prod_generators->members));
                break;
            case StructureKind::SumFpPair:
                if (!w.sum_generators || !w.prod_generators) return false;
                add_values(gowers_sum_values(*w.sum_generators));
                add_values(finite_products(w.prod_generators->members));
                break;
            case StructureKind::SumProductPair:
                if (!w.sum_generators || !w.prod_generators) return false;
                add_values(gowers_sum_values(*w.sum_generators));
                add_values(gowers_product_values(*w.prod_generators));
                break;
        }
    } catch (const std::exception&) {
        return false;
    }
    std::sort(regenerated.begin(), regenerated.end());
    regenerated.erase(std::unique(regenerated.begin(), regenerated.end()), regenerated.end());

    if (spec.closure) {
        if (regenerated != w.generated_cells) return false;
    } else {
        // with closure off the witness holds the in-box subset
        std::vector<KTuple> in_box;
        for (const KTuple& v : regenerated)
            if (index.try_index(v)) in_box.push_back(v);
        if (in_box != w.generated_cells) return false;
    }
    for (const KTuple& v : w.generated_cells) {
        auto idx = index.try_index(v);
        if (!idx || coloring.colors[*idx] != w.color) return false;
    }
    return !w.generated_cells.empty();
}

namespace {

// Shared read-only search data plus the cross-thread coordination state.
struct SearchShared {
    const CellIndex& index;
    int r;
    std::vector<std::vector<const std::vector<std::uint32_t>*>> completing;   // by last cell
    std::uint64_t max_nodes;
    Clock::time_point deadline;
    bool has_deadline;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exceeded{false};

    SearchShared(const CandidateTable& table, const CellIndex& idx, int colors, const Budget& budget)
        : index(idx), r(colors), max_nodes(budget.max_nodes) {
        completing.resize(idx.size());
        for (std::uint32_t id : table.distinct_sets) {
            const auto& cells = table.candidates[id].cells;
            completing[cells.back()].push_back(&cells);
        }
        has_deadline = budget.wall_ms >= 0;
        if (has_deadline) deadline = Clock::now() + std::chrono::milliseconds(budget.wall_ms);
    }

    // one DFS assignment; false when the budget is gone
    bool charge_node() {
        if (exceeded.load(std::memory_order_relaxed)) return false;
        const std::uint64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > max_nodes || (has_deadline && (n & 0x3FF) == 0 && Clock::now() > deadline)) {
            exceeded.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }

    bool mono_completed_at(const std::vector<int>& colors, std::uint32_t cell) const {
        for (const auto* cells : completing[cell])
            if (monochromatic(colors, *cells)) return true;
        return false;
    }
};

// Serial continuation from `depth`; colors[0..depth) is an unpruned canonical
// partial coloring. Returns true when a completion was found.
bool dfs_from(SearchShared& shared, std::vector<int>& colors, std::uint32_t depth, int max_used) {
    const std::uint32_t total = shared.index.size();
    if (depth == total) return true;
    const int top = std::min(max_used + 1, shared.r - 1);
    for (int c = 0; c <= top; ++c) {
        if (!shared.charge_node()) return false;
        colors[depth] = c;
        if (!shared.mono_completed_at(colors, depth) &&
            dfs_from(shared, colors, depth + 1, std::max(max_used, c)))
            return true;
        if (shared.exceeded.load(std::memory_order_relaxed)) return false;
    }
    colors[depth] = -1;
    return false;
}

struct Prefix {
    std::vector<int> colors;   // entries [0, depth) assigned, rest -1
    int max_used;
};

// All unpruned canonical prefixes of the given depth, in lexicographic order.
std::vector<Prefix> expand_prefixes(SearchShared& shared, std::uint32_t depth) {
    std::vector<Prefix> out;
    std::vector<int> colors(shared.index.size(), -1);
    std::function<void(std::uint32_t, int)> rec = [&](std::uint32_t i, int max_used) {
        if (shared.exceeded.load(std::memory_order_relaxed)) return;
        if (i == depth) {
            out.push_back(Prefix{colors, max_used});
            return;
        }
        const int top = std::min(max_used + 1, shared.r - 1);
        for (int c = 0; c <= top; ++c) {
            if (!shared.charge_node()) return;
            colors[i] = c;
            if (!shared.mono_completed_at(colors, i)) rec(i + 1, std::max(max_used, c));
        }
        colors[i] = -1;
    };
    rec(0, -1);
    return out;
}

}  // namespace

AvoidanceResult exists_avoiding_coloring(const CandidateTable& table, const CellIndex& index,
                                         int r, const Budget& budget, int jobs) {
    if (r < 1) throw std::invalid_argument("need at least one color");
    SearchShared shared(table, index, r, budget);
    const std::uint32_t total = index.size();

    AvoidanceResult result;
    auto finish = [&](std::optional<std::vector<int>> colors) {
        if (colors) {
            result.status = AvoidanceStatus::Found;
            result.coloring = Coloring{index.box(), r, std::move(*colors)};
        } else {
            result.status = shared.exceeded.load() ? AvoidanceStatus::BudgetExceeded
                                                   : AvoidanceStatus::None;
        }
        result.nodes = shared.nodes.load();
        return result;
    };

    if (jobs <= 1) {
        std::vector<int> colors(total, -1);
        if (dfs_from(shared, colors, 0, -1)) return finish(std::move(colors));
        return finish(std::nullopt);
    }

    // Parallel fan-out: expand a lexicographic frontier, let workers finish
    // the subtrees; the winner is the lowest-index prefix with a completion,
    // which matches the serial answer.
    const std::size_t want = static_cast<std::size_t>(jobs) * 4;
    std::uint32_t depth = 1;
    std::vector<Prefix> prefixes;
    for (;;) {
        prefixes = expand_prefixes(shared, depth);
        if (shared.exceeded.load()) return finish(std::nullopt);
        if (prefixes.empty()) return finish(std::nullopt);   // everything pruned: no coloring
        if (prefixes.size() >= want || depth >= total || depth >= 16) break;
        ++depth;
    }
    if (depth == total)   // prefixes are complete colorings already
        return finish(std::move(prefixes.front().colors));

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best_found{prefixes.size()};
    std::vector<std::optional<std::vector<int>>> completions(prefixes.size());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(static_cast<std::size_t>(jobs), prefixes.size()));

    auto worker = [&]() {
        for (;;) {
            const std::size_t p = next.fetch_add(1);
            if (p >= prefixes.size()) break;
            if (p > best_found.load(std::memory_order_relaxed)) continue;
            if (shared.exceeded.load(std::memory_order_relaxed)) break;
            std::vector<int> colors = prefixes[p].colors;
            if (dfs_from(shared, colors, depth, prefixes[p].max_used)) {
                completions[p] = std::move(colors);
                std::size_t seen = best_found.load();
                while (p < seen && !best_found.compare_exchange_weak(seen, p)) {
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (auto& c : completions)
        if (c) return finish(std::move(*c));
    return finish(std::nullopt);
}

AvoidanceResult exists_avoiding_coloring(const Box& box, int r, const StructureSpec& spec,
                                         const Budget& budget, int jobs) {
    CellIndex index(box);
    auto table = build_candidate_table(index, spec);
    return exists_avoiding_coloring(table, index, r, budget, jobs);
}

ThresholdResult minimal_box_threshold(int k, int r, const StructureSpec& spec, Coord n_max,
                                      const Budget& budget, int jobs) {
    const Space space = world_of(spec);
    ThresholdResult out;
    out.largest_avoidable = smallest_box(k, space) - 1;
    for (Coord n = smallest_box(k, space); n <= n_max; ++n) {
        Box box{k, n, space};
        auto res = exists_avoiding_coloring(box, r, spec, budget, jobs);
        out.nodes += res.nodes;
        switch (res.status) {
            case AvoidanceStatus::Found:
                out.largest_avoidable = n;
                out.last_coloring = std::move(res.coloring);
                break;
            case AvoidanceStatus::None:
                out.status = ThresholdStatus::Resolved;
                out.threshold = n;
                return out;
            case AvoidanceStatus::BudgetExceeded:
                out.budget_hit = true;
                return out;   // unresolved; the lower bound stands
        }
    }
    return out;   // unresolved: avoidance still possible at n_max
}

}  // namespace gowers
