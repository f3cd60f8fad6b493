#include <doctest.h>

#include <random>
#include <string>

#include "gowers/oracle.hpp"
#include "gowers/sat.hpp"

using namespace gowers;

namespace {

const std::string kSolver = std::string("python3 ") + GOWERS_SOLVER_SCRIPT;

StructureSpec sum_spec(int m, bool distinct = false) {
    StructureSpec spec;
    spec.kind = StructureKind::SumSubspace;
    spec.m_sum = m;
    spec.distinct_values = distinct;
    return spec;
}

std::vector<int> model_of(const Coloring& c) {
    CellIndex index(c.box);
    const VarMap vars{c.num_colors, index.size()};
    std::vector<int> literals;
    for (std::uint32_t cell = 0; cell < index.size(); ++cell)
        for (int i = 0; i < c.num_colors; ++i)
            literals.push_back(c.colors[cell] == i ? vars.var(cell, i) : -vars.var(cell, i));
    return literals;
}

}  // namespace

TEST_CASE("variable numbering is cell-major") {
    const VarMap vars{3, 4};
    CHECK(vars.num_vars() == 12);
    CHECK(vars.var(0, 0) == 1);
    CHECK(vars.var(0, 2) == 3);
    CHECK(vars.var(2, 1) == 8);
    for (std::uint32_t c = 0; c < 4; ++c)
        for (int i = 0; i < 3; ++i) {
            const auto [cell, color] = vars.cell_color(vars.var(c, i));
            CHECK(cell == c);
            CHECK(color == i);
        }
}

TEST_CASE("encoding the small Schur instance") {
    const auto f = encode_avoidance(Box{1, 5, Space::Xk}, 2, sum_spec(2));
    CHECK(f.vars.num_vars() == 10);
    CHECK(f.count(ClauseGroup::AtLeastOne) == 5);
    CHECK(f.count(ClauseGroup::AtMostOne) == 5);
    CHECK(f.count(ClauseGroup::Avoidance) == 12);   // 6 candidate sets, 2 colors

    const std::string dimacs = write_dimacs(f);
    CHECK(dimacs.find("p cnf 10 22\n") != std::string::npos);
    CHECK(dimacs.find("c k=1 N=5 r=2 space=Xk") != std::string::npos);
    CHECK(dimacs.find("kind=sum") != std::string::npos);
    CHECK(write_dimacs(encode_avoidance(Box{1, 5, Space::Xk}, 2, sum_spec(2))) == dimacs);
}

TEST_CASE("clause construction guards") {
    CnfFormula f;
    f.vars = VarMap{2, 2};
    CHECK_THROWS_AS(f.append({}, ClauseGroup::Avoidance), std::invalid_argument);
    CHECK_THROWS_AS(f.append({5}, ClauseGroup::Avoidance), std::invalid_argument);
    CHECK_THROWS_AS(f.append({0}, ClauseGroup::Avoidance), std::invalid_argument);
    CHECK_NOTHROW(f.append({-4, 1}, ClauseGroup::Avoidance));
}

TEST_CASE("model decoding") {
    const Box box{1, 3, Space::Xk};
    const Coloring c{box, 2, {0, 1, 0}};
    CHECK(decode_model(model_of(c), box, 2) == c);

    // constant coloring from an all-color-0 model
    std::vector<int> zeros;
    const VarMap vars{2, 3};
    for (std::uint32_t cell = 0; cell < 3; ++cell) {
        zeros.push_back(vars.var(cell, 0));
        zeros.push_back(-vars.var(cell, 1));
    }
    CHECK(decode_model(zeros, box, 2) == Coloring{box, 2, {0, 0, 0}});

    // two colors on one cell violates at-most-one
    auto bad = model_of(c);
    bad[1] = -bad[1];
    CHECK_THROWS_AS(decode_model(bad, box, 2), ModelDecodeError);

    // no color on a cell violates at-least-one
    auto missing = model_of(c);
    missing[0] = -missing[0];
    CHECK_THROWS_AS(decode_model(missing, box, 2), ModelDecodeError);
}

TEST_CASE("external solver adapter") {
    const auto sat_instance = encode_avoidance(Box{1, 4, Space::Xk}, 2, sum_spec(2));
    const auto unsat_instance = encode_avoidance(Box{1, 5, Space::Xk}, 2, sum_spec(2));

    SUBCASE("satisfiable instance decodes to a real avoiding coloring") {
        const auto outcome = run_external_solver(sat_instance, kSolver);
        REQUIRE(outcome.status == SolverOutcome::Status::Sat);
        const Coloring decoded = decode_model(outcome.model, Box{1, 4, Space::Xk}, 2);
        CHECK_FALSE(find_witness(decoded, sum_spec(2)).has_value());
    }
    SUBCASE("unsatisfiable instance") {
        const auto outcome = run_external_solver(unsat_instance, kSolver);
        CHECK(outcome.status == SolverOutcome::Status::Unsat);
    }
    SUBCASE("missing executable") {
        const auto outcome = run_external_solver(sat_instance, "/nonexistent/solver-binary");
        CHECK(outcome.status == SolverOutcome::Status::Error);
        CHECK(outcome.diagnostic.find("command not found") != std::string::npos);
    }
    SUBCASE("timeout is reported") {
        const auto outcome = run_external_solver(sat_instance, "sleep 5 ;", 150);
        CHECK(outcome.status == SolverOutcome::Status::Error);
        CHECK(outcome.diagnostic.find("timed out") != std::string::npos);
    }
    SUBCASE("status without model") {
        const auto outcome = run_external_solver(sat_instance, "echo s SATISFIABLE #");
        CHECK(outcome.status == SolverOutcome::Status::Error);
        CHECK(outcome.diagnostic.find("without a model") != std::string::npos);
    }
    SUBCASE("malformed value line") {
        const auto outcome = run_external_solver(
            sat_instance, "printf 's SATISFIABLE\\nv 1 q 0\\n' #");
        CHECK(outcome.status == SolverOutcome::Status::Error);
        CHECK(outcome.diagnostic.find("malformed value line") != std::string::npos);
    }
    SUBCASE("empty command") {
        const auto outcome = run_external_solver(sat_instance, "");
        CHECK(outcome.status == SolverOutcome::Status::Error);
    }
}

TEST_CASE("encoder satisfiability equals oracle avoidance on small boxes") {
    for (StructureKind kind : {StructureKind::SumSubspace, StructureKind::FiniteSums}) {
        for (int r = 1; r <= 2; ++r) {
            for (int m = 1; m <= 2; ++m) {
                for (bool distinct : {false, true}) {
                    for (Coord n = 1; n <= 8; ++n) {
                        StructureSpec spec;
                        spec.kind = kind;
                        spec.m_sum = m;
                        spec.distinct_values = distinct;
                        const Box box{1, n, Space::Xk};
                        CellIndex index(box);
                        const auto table = build_candidate_table(index, spec);
                        const auto oracle = exists_avoiding_coloring(table, index, r);
                        const auto sat =
                            run_external_solver(encode_avoidance(table, index, r), kSolver);
                        REQUIRE(sat.status != SolverOutcome::Status::Error);
                        CHECK((oracle.status == AvoidanceStatus::Found) ==
                              (sat.status == SolverOutcome::Status::Sat));
                    }
                }
            }
        }
    }
}
