// gowers: command line front end for the finite sum/product structure
// workbench. Exit codes: 0 success or witness found, 1 clean negative,
// 2 usage/format error, 3 engine discrepancy.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gowers/campaign.hpp"

namespace {

using namespace gowers;

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiscrepancy = 3;

std::vector<KTuple> parse_generator_list(const std::string& text, int k) {
    std::vector<KTuple> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        item = item.substr(first, last - first + 1);
        std::vector<Coord> coords;
        if (item.front() == '(') {
            if (item.back() != ')')
                throw std::invalid_argument("generator `" + item + "` is missing `)`");
            std::stringstream tuple(item.substr(1, item.size() - 2));
            std::string field;
            while (std::getline(tuple, field, ',')) coords.push_back(std::stoll(field));
        } else {
            coords.push_back(std::stoll(item));
        }
        if (static_cast<int>(coords.size()) != k)
            throw std::invalid_argument("generator `" + item + "` has " +
                                        std::to_string(coords.size()) + " coordinates, expected " +
                                        std::to_string(k));
        out.push_back(KTuple{coords});
    }
    if (out.empty()) throw std::invalid_argument("no generators given");
    return out;
}

std::string assignment_to_string(const PartAssignment& a) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ',';
        if (a[i] == 0)
            os << '-';
        else
            os << 'B' << a[i];
    }
    os << ']';
    return os.str();
}

int cmd_generate(int k, const std::string& kind_name_arg, const std::string& gens_text,
                 bool distinct, bool expressions) {
    const StructureKind kind = parse_kind(kind_name_arg);
    if (kind != StructureKind::SumSubspace && kind != StructureKind::ProductSubspace &&
        kind != StructureKind::FiniteSums && kind != StructureKind::FiniteProducts)
        throw std::invalid_argument("generate supports kinds sum|product|fs|fp");
    GeneratorSet gens{k, parse_generator_list(gens_text, k), distinct};

    const bool product = kind_is_product_world(kind);
    if (kind == StructureKind::FiniteSums || kind == StructureKind::FiniteProducts) {
        gens.validate(product ? Space::Yk : Space::Xk);
        auto values = product ? finite_products(gens.members) : finite_sums(gens.members);
        for (const auto& v : values) std::cout << v.to_string() << '\n';
        return kExitSuccess;
    }
    if (expressions) {
        auto exprs = product ? gowers_product_expressions(gens) : gowers_sum_expressions(gens);
        for (const auto& e : exprs)
            std::cout << assignment_to_string(e.assignment) << " -> " << e.value.to_string() << '\n';
        std::cout << "# expressions: " << exprs.size() << '\n';
    } else {
        auto values = product ? gowers_product_values(gens) : gowers_sum_values(gens);
        for (const auto& v : values) std::cout << v.to_string() << '\n';
    }
    return kExitSuccess;
}

void print_witness(const Witness& w, bool json) {
    if (json) {
        nlohmann::ordered_json j;
        j["color"] = w.color;
        auto gens_json = [](const GeneratorSet& g) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& t : g.members) arr.push_back(t.coords());
            return arr;
        };
        if (w.sum_generators) j["sum_generators"] = gens_json(*w.sum_generators);
        if (w.prod_generators) j["prod_generators"] = gens_json(*w.prod_generators);
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (const auto& t : w.generated_cells) cells.push_back(t.coords());
        j["generated_cells"] = cells;
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << "witness color=" << w.color;
    auto print_gens = [](const char* label, const GeneratorSet& g) {
        std::cout << ' ' << label << '=';
        for (std::size_t i = 0; i < g.members.size(); ++i) {
            if (i) std::cout << ';';
            std::cout << g.members[i].to_string();
        }
    };
    if (w.sum_generators) print_gens("sum_gens", *w.sum_generators);
    if (w.prod_generators) print_gens("prod_gens", *w.prod_generators);
    std::cout << " cells=";
    for (std::size_t i = 0; i < w.generated_cells.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << w.generated_cells[i].to_string();
    }
    std::cout << '\n';
}

int cmd_verify(const std::string& path, const StructureSpec& spec, bool json) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open " << path << '\n';
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Coloring coloring = parse_coloring(buffer.str());
    if (auto w = find_witness(coloring, spec)) {
        print_witness(*w, json);
        return kExitSuccess;
    }
    std::cout << "none\n";
    return kExitNegative;
}

void print_table_text(const std::vector<Certificate>& certs) {
    std::cout << "k\tr\tm_sum\tm_prod\tstatus\tthreshold\tlargest_avoidable\tagreement\n";
    for (const auto& c : certs) {
        std::cout << c.k << '\t' << c.r << '\t' << c.spec.sum_count() << '\t' << c.spec.prod_count()
                  << '\t' << c.verdict << '\t';
        if (c.threshold)
            std::cout << *c.threshold;
        else
            std::cout << '-';
        std::cout << '\t' << c.largest_avoidable << '\t';
        if (c.agreement)
            std::cout << (*c.agreement ? "true" : "false");
        else
            std::cout << '-';
        std::cout << '\n';
    }
}

void print_certs(const std::vector<Certificate>& certs, const std::string& format) {
    if (format == "json") {
        std::cout << '[';
        for (std::size_t i = 0; i < certs.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << '\n' << certs[i].to_json();
        }
        std::cout << "]\n";
    } else if (format == "csv") {
        std::cout << summary_csv(certs);
    } else {
        print_table_text(certs);
    }
}

int cmd_search(const Campaign& campaign, const std::string& out_dir, const std::string& format) {
    auto certs = run_threshold_table(campaign);
    print_certs(certs, format);
    if (!out_dir.empty()) emit_certificates(certs, out_dir);
    return kExitSuccess;
}

int cmd_hunt(const Campaign& campaign, const std::string& out_dir, const std::string& format) {
    auto certs = hunt_pair_lower_bounds(campaign);
    if (format == "text") {
        Coord best = -1;
        for (const auto& c : certs) {
            std::cout << "N=" << *c.n << ' ' << c.verdict << '\n';
            if (c.verdict == "avoiding") best = *c.n;
        }
        if (best >= 0)
            std::cout << "largest avoidable N: " << best << '\n';
        else
            std::cout << "no avoiding coloring found\n";
    } else {
        print_certs(certs, format);
    }
    if (!out_dir.empty()) emit_certificates(certs, out_dir);
    return kExitSuccess;
}

int cmd_encode(int k, Coord n, int r, const StructureSpec& spec, const std::string& out_path,
               std::size_t cap) {
    const Space space = kind_is_product_world(spec.kind) ? Space::Yk : Space::Xk;
    const Box box{k, n, space};
    const CnfFormula f = encode_avoidance(box, r, spec, cap);
    const std::string text = write_dimacs(f);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << '\n';
            return kExitUsage;
        }
        out << text;
        std::cout << "p cnf " << f.vars.num_vars() << ' ' << f.clauses.size() << '\n'
                  << "at-least-one=" << f.count(ClauseGroup::AtLeastOne)
                  << " at-most-one=" << f.count(ClauseGroup::AtMostOne)
                  << " avoidance=" << f.count(ClauseGroup::Avoidance) << '\n';
    }
    return kExitSuccess;
}

int cmd_check_algebra(int k, Coord max_coord, int fixed_shift) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (max_coord < 1) throw std::invalid_argument("max must be positive");
    if (fixed_shift >= k)
        throw std::invalid_argument("j must be below k");

    // odometer over [lo..max]^k
    auto sweep = [&](Coord lo, auto&& visit) {
        std::vector<Coord> cur(static_cast<std::size_t>(k), lo);
        for (;;) {
            visit(KTuple{cur});
            int pos = k - 1;
            while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == max_coord) {
                cur[static_cast<std::size_t>(pos)] = lo;
                --pos;
            }
            if (pos < 0) break;
            ++cur[static_cast<std::size_t>(pos)];
        }
    };

    std::uint64_t checked = 0, failed = 0;
    sweep(1, [&](const KTuple& nbar) {
        sweep(0, [&](const KTuple& x) {
            if (!in_space(x, Space::Xk)) return;
            sweep(0, [&](const KTuple& z) {
                if (!in_space(z, Space::Xk)) return;
                for (int j = 0; j < k; ++j) {
                    if (fixed_shift >= 0 && j != fixed_shift) continue;
                    const auto res = check_scaling_identity(nbar, x, z, j);
                    ++checked;
                    if (!res.pass) {
                        ++failed;
                        std::cout << "counterexample nbar=" << nbar.to_string()
                                  << " x=" << x.to_string() << " z=" << z.to_string() << " j=" << j
                                  << " lhs=" << res.lhs.to_string() << " rhs=" << res.rhs.to_string()
                                  << '\n';
                    }
                }
            });
        });
    });
    std::cout << "checked=" << checked << " passed=" << (checked - failed) << " failed=" << failed
              << '\n';
    return failed == 0 ? kExitSuccess : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite search workbench for Gowers-style sum and product structures"};
    app.require_subcommand(1);

    // shared option storage
    int k = 1, r = 2, m = 2, m_prod = 0, jobs = 0, fixed_shift = -1;
    Coord n = 5, n_max = 8, max_coord = 2;
    bool distinct = false, no_closure = false, positive_sum_gens = false;
    bool expressions = false, json_out = false, parallel_dfs = false, timings = false;
    std::string kind_arg = "sum", gens_text, file_path, out_path, format = "text", solver;
    std::uint64_t budget_nodes = 0;
    std::int64_t budget_ms = -1;
    std::size_t cap = CandidateTable::kDefaultCap;

    auto add_spec_flags = [&](CLI::App* sub, bool with_mprod = true) {
        sub->add_flag("--distinct", distinct, "require pairwise distinct generator values");
        sub->add_flag("--no-closure", no_closure,
                      "keep candidates whose generated values leave the box (in-box part only)");
        sub->add_flag("--positive-sum-gens", positive_sum_gens,
                      "pair kinds: draw sum generators from the positive cells only");
        if (with_mprod)
            sub->add_option("--m-prod", m_prod, "pair kinds: product-side generator count (0 = same as --m)");
    };

    auto* generate = app.add_subcommand("generate", "enumerate one generated structure");
    generate->add_option("--k", k, "dimension")->required();
    generate->add_option("--kind", kind_arg, "sum|product|fs|fp")->required();
    generate->add_option("--gens", gens_text, "generators, e.g. \"(1,0);(2,5)\" or \"3;5\"")->required();
    generate->add_flag("--expressions", expressions, "print every assignment, not the value set");
    generate->add_flag("--distinct", distinct, "require pairwise distinct generator values");

    auto* verify = app.add_subcommand("verify", "search one coloring file for a witness");
    verify->add_option("--file", file_path, "coloring file")->required();
    verify->add_option("--kind", kind_arg, "sum|product|fs|fp|sum-fp|sum-product");
    verify->add_option("--m", m, "generator count (sum side for pair kinds)");
    verify->add_flag("--json", json_out, "print the witness as JSON");
    add_spec_flags(verify);

    auto* search = app.add_subcommand("search", "threshold scan over a parameter grid");
    std::vector<int> ks{1}, rs{2}, ms{2};
    std::string engine_arg = "oracle";
    search->add_option("--k", ks, "dimension(s)")->delimiter(',');
    search->add_option("--r", rs, "color count(s)")->delimiter(',');
    search->add_option("--m", ms, "generator count(s)")->delimiter(',');
    search->add_option("--kind", kind_arg, "sum|product|fs|fp|sum-fp|sum-product");
    search->add_option("--nmax", n_max, "largest box to scan");
    search->add_option("--engine", engine_arg, "oracle|sat|both");
    search->add_option("--solver", solver, "external SAT solver command")->envname("GOWERS_SOLVER");
    search->add_option("--budget-nodes", budget_nodes, "DFS node cap per instance (0 = unlimited)");
    search->add_option("--budget-ms", budget_ms, "wall clock cap per instance in ms (-1 = unlimited)");
    search->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    search->add_flag("--parallel-dfs", parallel_dfs, "parallelize inside each instance too");
    search->add_option("--out", out_path, "directory for certificate files");
    search->add_option("--format", format, "text|json|csv");
    search->add_option("--cap", cap, "candidate table cap");
    search->add_flag("--timings", timings, "record wall_ms (makes outputs nondeterministic)");
    add_spec_flags(search);

    auto* hunt = app.add_subcommand("hunt", "lower-bound ladder for the pair structures");
    hunt->add_option("--k", ks, "dimension(s)")->delimiter(',');
    hunt->add_option("--r", rs, "color count(s)")->delimiter(',');
    hunt->add_option("--m", ms, "sum-side generator count(s)")->delimiter(',');
    hunt->add_option("--kind", kind_arg, "sum-fp|sum-product");
    hunt->add_option("--nmax", n_max, "largest box to scan");
    std::string hunt_engine = "oracle";
    hunt->add_option("--engine", hunt_engine, "oracle|sat|both");
    hunt->add_option("--solver", solver, "external SAT solver command")->envname("GOWERS_SOLVER");
    hunt->add_option("--budget-nodes", budget_nodes, "DFS node cap per instance (0 = unlimited)");
    hunt->add_option("--budget-ms", budget_ms, "wall clock cap per instance in ms (-1 = unlimited)");
    hunt->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    hunt->add_flag("--parallel-dfs", parallel_dfs, "parallelize inside each instance too");
    hunt->add_option("--out", out_path, "directory for certificate files");
    hunt->add_option("--format", format, "text|json|csv");
    hunt->add_option("--cap", cap, "candidate table cap");
    hunt->add_flag("--timings", timings, "record wall_ms (makes outputs nondeterministic)");
    add_spec_flags(hunt);

    auto* encode = app.add_subcommand("encode", "emit the avoidance CNF for one instance");
    encode->add_option("--k", k, "dimension")->required();
    encode->add_option("--n", n, "box bound")->required();
    encode->add_option("--r", r, "color count")->required();
    encode->add_option("--m", m, "generator count");
    encode->add_option("--kind", kind_arg, "sum|product|fs|fp|sum-fp|sum-product");
    encode->add_option("--out", out_path, "DIMACS output file (default: stdout)");
    encode->add_option("--cap", cap, "candidate table cap");
    add_spec_flags(encode);

    auto* algebra = app.add_subcommand("check-algebra",
                                       "sweep the shift scaling identity over a coordinate grid");
    algebra->add_option("--k", k, "dimension")->required();
    algebra->add_option("--max", max_coord, "coordinate bound")->required();
    algebra->add_option("--j", fixed_shift, "check one shift count only (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        auto make_spec = [&](int m_sum_value) {
            StructureSpec spec;
            spec.kind = parse_kind(kind_arg);
            spec.distinct_values = distinct;
            spec.closure = !no_closure;
            spec.positive_sum_generators = positive_sum_gens;
            if (kind_is_product_world(spec.kind)) {
                spec.m_sum = 0;
                spec.m_prod = m_sum_value;
            } else {
                spec.m_sum = m_sum_value;
                spec.m_prod = kind_is_pair(spec.kind) ? (m_prod > 0 ? m_prod : m_sum_value) : 0;
            }
            return spec;
        };
        auto make_campaign = [&](const std::string& engine_name_arg) {
            Campaign c;
            c.ks = ks;
            c.rs = rs;
            c.ms = ms;
            c.m_prod = m_prod;
            c.kind = parse_kind(kind_arg);
            c.distinct_values = distinct;
            c.closure = !no_closure;
            c.positive_sum_generators = positive_sum_gens;
            c.n_max = n_max;
            c.engine = parse_engine(engine_name_arg);
            if (budget_nodes > 0) c.budget.max_nodes = budget_nodes;
            c.budget.wall_ms = budget_ms;
            c.solver_command = solver;
            c.candidate_cap = cap;
            c.jobs = jobs > 0 ? jobs
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
            c.parallel_dfs = parallel_dfs;
            c.record_timings = timings;
            return c;
        };

        if (generate->parsed()) return cmd_generate(k, kind_arg, gens_text, distinct, expressions);
        if (verify->parsed()) return cmd_verify(file_path, make_spec(m), json_out);
        if (search->parsed()) return cmd_search(make_campaign(engine_arg), out_path, format);
        if (hunt->parsed()) return cmd_hunt(make_campaign(hunt_engine), out_path, format);
        if (encode->parsed()) return cmd_encode(k, n, r, make_spec(m), out_path, cap);
        if (algebra->parsed()) return cmd_check_algebra(k, max_coord, fixed_shift);
    } catch (const EngineDiscrepancy& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDiscrepancy;
    } catch (const ColoringParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
