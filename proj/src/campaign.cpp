#include "gowers/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace gowers {

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::Oracle: return "oracle";
        case Engine::Sat: return "sat";
        case Engine::Both: return "both";
    }
    return "?";
}

Engine parse_engine(const std::string& name) {
    if (name == "oracle") return Engine::Oracle;
    if (name == "sat") return Engine::Sat;
    if (name == "both") return Engine::Both;
    throw std::invalid_argument("unknown engine: " + name + " (expected oracle|sat|both)");
}

void Campaign::validate() const {
    if (ks.empty() || rs.empty() || ms.empty())
        throw std::invalid_argument("campaign grid is empty");
    for (int k : ks)
        if (k < 1) throw std::invalid_argument("k must be positive");
    for (int r : rs)
        if (r < 1) throw std::invalid_argument("r must be positive");
    for (int m : ms)
        if (m < 1) throw std::invalid_argument("m must be positive");
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    if (budget.max_nodes == 0) throw std::invalid_argument("node budget must be positive");
    if (jobs < 1) throw std::invalid_argument("jobs must be positive");
    if (engine != Engine::Oracle && solver_command.empty())
        throw std::invalid_argument("engine " + std::string(engine_name(engine)) +
                                    " needs a solver command");
}

StructureSpec Campaign::spec_for(int m) const {
    StructureSpec spec;
    spec.kind = kind;
    spec.distinct_values = distinct_values;
    spec.closure = closure;
    spec.positive_sum_generators = positive_sum_generators;
    if (kind_is_product_world(kind)) {
        spec.m_sum = 0;
        spec.m_prod = m;
    } else if (kind_is_pair(kind)) {
        spec.m_sum = m;
        spec.m_prod = m_prod > 0 ? m_prod : m;
    } else {
        spec.m_sum = m;
        spec.m_prod = 0;
    }
    return spec;
}

std::string Certificate::instance_name() const {
    std::ostringstream os;
    os << kind_name(spec.kind) << "_k" << k << "_r" << r << "_m" << std::max(spec.m_sum, 0);
    if (kind_is_pair(spec.kind)) os << 'x' << spec.m_prod;
    if (kind_is_product_world(spec.kind)) {
        // product kinds carry their count in m_prod
        os.str("");
        os << kind_name(spec.kind) << "_k" << k << "_r" << r << "_m" << spec.m_prod;
    }
    os << (spec.distinct_values ? "_dist" : "_rep");
    if (!spec.closure) os << "_nocl";
    if (spec.positive_sum_generators) os << "_pos";
    os << '_' << engine_name(engine);
    if (n) os << "_N" << *n;
    return os.str();
}

std::string Certificate::to_json() const {
    nlohmann::ordered_json j;
    auto& fp = j["fingerprint"];
    fp["k"] = k;
    fp["r"] = r;
    fp["kind"] = kind_name(spec.kind);
    fp["m_sum"] = spec.sum_count();
    fp["m_prod"] = spec.prod_count();
    fp["distinct"] = spec.distinct_values;
    fp["closure"] = spec.closure;
    fp["positive_sum_gens"] = spec.positive_sum_generators;
    fp["n_max"] = n_max;
    if (n) fp["n"] = *n;

    auto& v = j["verdict"];
    v["status"] = verdict;
    if (threshold)
        v["threshold"] = *threshold;
    else
        v["threshold"] = nullptr;
    v["largest_avoidable"] = largest_avoidable;

    if (evidence_coloring) {
        auto& e = j["evidence"];
        e["type"] = "avoiding_coloring";
        e["N"] = evidence_coloring->box.max_coord;
        e["coloring"] = serialize_coloring(*evidence_coloring);
    } else {
        j["evidence"] = nullptr;
    }

    j["engines"] = engine == Engine::Both
                       ? std::vector<std::string>{"oracle", "sat"}
                       : std::vector<std::string>{engine_name(engine)};
    if (agreement)
        j["agreement"] = *agreement;
    else
        j["agreement"] = nullptr;
    j["wall_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

namespace {

enum class InstanceVerdict { Avoidable, Unavoidable, Unresolved };

struct InstanceOutcome {
    InstanceVerdict verdict = InstanceVerdict::Unresolved;
    std::optional<Coloring> coloring;
    bool compared = false;   // both engines completed and agreed
};

std::string instance_label(const Box& box, int r, const StructureSpec& spec) {
    std::ostringstream os;
    os << "k=" << box.dim << " N=" << box.max_coord << " r=" << r << " " << spec.fingerprint();
    return os.str();
}

// Decides one (box, r) instance with the configured engine(s). Both paths
// consume the same candidate table.
InstanceOutcome decide_instance(const Campaign& c, const CandidateTable& table,
                                const CellIndex& index, int r) {
    InstanceOutcome out;
    const int dfs_jobs = c.parallel_dfs ? c.jobs : 1;

    std::optional<InstanceVerdict> oracle_verdict;
    std::optional<Coloring> oracle_coloring;
    if (c.engine == Engine::Oracle || c.engine == Engine::Both) {
        auto res = exists_avoiding_coloring(table, index, r, c.budget, dfs_jobs);
        switch (res.status) {
            case AvoidanceStatus::Found:
                oracle_verdict = InstanceVerdict::Avoidable;
                oracle_coloring = std::move(res.coloring);
                break;
            case AvoidanceStatus::None:
                oracle_verdict = InstanceVerdict::Unavoidable;
                break;
            case AvoidanceStatus::BudgetExceeded:
                break;
        }
    }

    std::optional<InstanceVerdict> sat_verdict;
    std::optional<Coloring> sat_coloring;
    if (c.engine == Engine::Sat || c.engine == Engine::Both) {
        auto formula = encode_avoidance(table, index, r);
        auto res = run_external_solver(formula, c.solver_command, c.budget.wall_ms);
        switch (res.status) {
            case SolverOutcome::Status::Sat: {
                Coloring decoded = decode_model(res.model, index.box(), r);
                if (auto witness = find_witness(decoded, table, index))
                    throw EngineDiscrepancy(instance_label(index.box(), r, table.spec),
                                            "solver model contains a monochromatic structure; "
                                            "the encoding or the solver is faulty");
                sat_verdict = InstanceVerdict::Avoidable;
                sat_coloring = std::move(decoded);
                break;
            }
            case SolverOutcome::Status::Unsat:
                sat_verdict = InstanceVerdict::Unavoidable;
                break;
            case SolverOutcome::Status::Error:
                throw SolverFailure("solver failed on " + instance_label(index.box(), r, table.spec) +
                                    ": " + res.diagnostic);
        }
    }

    if (oracle_verdict && sat_verdict) {
        if (*oracle_verdict != *sat_verdict)
            throw EngineDiscrepancy(
                instance_label(index.box(), r, table.spec),
                std::string("oracle says ") +
                    (*oracle_verdict == InstanceVerdict::Avoidable ? "avoidable" : "unavoidable") +
                    ", sat says " +
                    (*sat_verdict == InstanceVerdict::Avoidable ? "avoidable" : "unavoidable"));
        out.compared = true;
    }

    if (oracle_verdict) {
        out.verdict = *oracle_verdict;
        out.coloring = std::move(oracle_coloring);
    } else if (sat_verdict) {
        out.verdict = *sat_verdict;
        out.coloring = std::move(sat_coloring);
    }
    return out;
}

struct GridPoint {
    int k;
    int r;
    int m;
};

std::vector<GridPoint> grid_of(const Campaign& c) {
    std::vector<GridPoint> grid;
    for (int k : c.ks)
        for (int r : c.rs)
            for (int m : c.ms) grid.push_back(GridPoint{k, r, m});
    return grid;
}

Certificate base_certificate(const Campaign& c, const GridPoint& g) {
    Certificate cert;
    cert.k = g.k;
    cert.r = g.r;
    cert.spec = c.spec_for(g.m);
    cert.n_max = c.n_max;
    cert.engine = c.engine;
    return cert;
}

std::uint64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
}

// Threshold scan for one grid point.
Certificate scan_grid_point(const Campaign& c, const GridPoint& g) {
    const auto start = std::chrono::steady_clock::now();
    Certificate cert = base_certificate(c, g);
    const Space space = kind_is_product_world(cert.spec.kind) ? Space::Yk : Space::Xk;
    const Coord lowest = smallest_box(g.k, space);
    cert.largest_avoidable = lowest - 1;
    cert.verdict = "unresolved";
    bool all_compared = true;
    bool any_instance = false;

    for (Coord n = lowest; n <= c.n_max; ++n) {
        Box box{g.k, n, space};
        CellIndex index(box);
        auto table = build_candidate_table(index, cert.spec, c.candidate_cap);
        auto outcome = decide_instance(c, table, index, g.r);
        any_instance = true;
        all_compared = all_compared && (c.engine != Engine::Both || outcome.compared);
        if (outcome.verdict == InstanceVerdict::Avoidable) {
            cert.largest_avoidable = n;
            cert.evidence_coloring = std::move(outcome.coloring);
        } else if (outcome.verdict == InstanceVerdict::Unavoidable) {
            cert.verdict = "threshold";
            cert.threshold = n;
            break;
        } else {
            break;   // unresolved: keep the bounds collected so far
        }
    }
    if (c.engine == Engine::Both && any_instance) cert.agreement = all_compared;
    if (c.record_timings) cert.wall_ms = elapsed_ms(start);
    return cert;
}

std::vector<Certificate> ladder_grid_point(const Campaign& c, const GridPoint& g) {
    Certificate proto = base_certificate(c, g);
    const Space space = kind_is_product_world(proto.spec.kind) ? Space::Yk : Space::Xk;
    std::vector<Certificate> rows;

    for (Coord n = smallest_box(g.k, space); n <= c.n_max; ++n) {
        const auto start = std::chrono::steady_clock::now();
        Certificate cert = proto;
        cert.n = n;
        Box box{g.k, n, space};
        CellIndex index(box);
        auto table = build_candidate_table(index, cert.spec, c.candidate_cap);
        auto outcome = decide_instance(c, table, index, g.r);
        if (c.engine == Engine::Both) cert.agreement = outcome.compared;
        switch (outcome.verdict) {
            case InstanceVerdict::Avoidable:
                cert.verdict = "avoiding";
                cert.largest_avoidable = n;
                cert.evidence_coloring = std::move(outcome.coloring);
                break;
            case InstanceVerdict::Unavoidable:
                cert.verdict = "unavoidable";
                cert.threshold = n;
                cert.largest_avoidable = n - 1;
                break;
            case InstanceVerdict::Unresolved:
                cert.verdict = "unresolved";
                cert.largest_avoidable = n - 1;
                break;
        }
        if (c.record_timings) cert.wall_ms = elapsed_ms(start);
        const bool stop = cert.verdict != "avoiding";
        rows.push_back(std::move(cert));
        if (stop) break;   // monotone: larger boxes stay unavoidable
    }
    return rows;
}

template <typename Fn>
void for_grid_parallel(const Campaign& c, std::size_t count, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(static_cast<std::size_t>(c.jobs), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(count);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<Certificate> run_threshold_table(const Campaign& c) {
    c.validate();
    const auto grid = grid_of(c);
    std::vector<Certificate> certs(grid.size());
    for_grid_parallel(c, grid.size(),
                      [&](std::size_t i) { certs[i] = scan_grid_point(c, grid[i]); });
    return certs;
}

std::vector<Certificate> hunt_pair_lower_bounds(const Campaign& c) {
    c.validate();
    if (!kind_is_pair(c.kind))
        throw std::invalid_argument("hunt needs a pair kind (sum-fp or sum-product)");
    const auto grid = grid_of(c);
    std::vector<std::vector<Certificate>> rows(grid.size());
    for_grid_parallel(c, grid.size(),
                      [&](std::size_t i) { rows[i] = ladder_grid_point(c, grid[i]); });
    std::vector<Certificate> flat;
    for (auto& r : rows)
        for (auto& cert : r) flat.push_back(std::move(cert));
    return flat;
}

namespace {

void validate_certificate(const Certificate& cert) {
    if (!cert.evidence_coloring) return;
    const Coloring& coloring = *cert.evidence_coloring;
    if (coloring.num_colors != cert.r)
        throw std::runtime_error("certificate validation failed for " + cert.instance_name() +
                                 ": color count mismatch");
    if (auto w = find_witness(coloring, cert.spec))
        throw std::runtime_error("certificate validation failed for " + cert.instance_name() +
                                 ": evidence coloring contains a monochromatic structure");
}

}  // namespace

std::string summary_csv(const std::vector<Certificate>& certs) {
    std::ostringstream os;
    os << "k,r,m_sum,m_prod,kind,distinct,closure,engine,n,status,threshold,largest_avoidable,"
          "agreement,wall_ms\n";
    for (const auto& c : certs) {
        os << c.k << ',' << c.r << ',' << c.spec.sum_count() << ',' << c.spec.prod_count() << ','
           << kind_name(c.spec.kind) << ',' << (c.spec.distinct_values ? 1 : 0) << ','
           << (c.spec.closure ? 1 : 0) << ',' << engine_name(c.engine) << ',';
        if (c.n) os << *c.n;
        os << ',' << c.verdict << ',';
        if (c.threshold) os << *c.threshold;
        os << ',' << c.largest_avoidable << ',';
        if (c.agreement) os << (*c.agreement ? "true" : "false");
        os << ',' << c.wall_ms << '\n';
    }
    return os.str();
}

void emit_certificates(const std::vector<Certificate>& certs, const std::string& out_dir) {
    namespace fs = std::filesystem;
    for (const auto& cert : certs) validate_certificate(cert);

    fs::create_directories(out_dir);
    for (const auto& cert : certs) {
        const fs::path path = fs::path(out_dir) / ("cert_" + cert.instance_name() + ".json");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << cert.to_json();
    }
    const fs::path csv_path = fs::path(out_dir) / "summary.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    csv << summary_csv(certs);
}

}  // namespace gowers
