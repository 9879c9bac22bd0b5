#include "doctest.h"

#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "kcoal/bench.hpp"
#include "kcoal/datagen.hpp"
#include "kcoal/io.hpp"

using namespace kcoal;

namespace {

ExperimentPlan tiny_plan() {
    ExperimentPlan plan;
    plan.source = ExperimentPlan::Source::Uniform;
    plan.sizes = {10, 12};
    plan.d = 2;
    plan.weighted = true;
    plan.k = 2;
    plan.arms = {arm_from_string("greedy"), arm_from_string("lex:greedy")};
    plan.repetitions = 3;
    plan.master_seed = 71;
    plan.solver.restarts = 1;
    return plan;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("arm strings parse into pipelines") {
    const Arm greedy = arm_from_string("greedy");
    CHECK(greedy.algorithm == Algorithm::None);
    CHECK(greedy.init == InitKind::Greedy);
    CHECK(greedy.label == "greedy");
    const Arm rnd = arm_from_string("random");
    CHECK(rnd.algorithm == Algorithm::None);
    CHECK(rnd.init == InitKind::Random);
    const Arm sa = arm_from_string("sa:random");
    CHECK(sa.algorithm == Algorithm::SimulatedAnnealing);
    CHECK(sa.init == InitKind::Random);
    const Arm lex = arm_from_string("lex:greedy");
    CHECK(lex.algorithm == Algorithm::LexiClimb);
    CHECK(lex.init == InitKind::Greedy);
    CHECK_THROWS_AS(arm_from_string("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(arm_from_string("sa:file"), std::invalid_argument);
    CHECK_THROWS_AS(arm_from_string(""), std::invalid_argument);
}

TEST_CASE("bench runs the full grid and reports one record per cell") {
    const auto result = run_bench(tiny_plan(), 2);
    CHECK(result.records.size() == 2 * 2 * 3); // sizes * arms * reps
    for (const auto& r : result.records) {
        CHECK(!r.failed);
        CHECK(r.error.empty());
        CHECK((r.n == 10 || r.n == 12));
    }
    const auto per_run = split_lines(result.per_run_csv);
    REQUIRE(per_run.size() == 13); // header + 12 rows
    CHECK(per_run[0] == "source,n,k,arm,rep,seed,min,avg,total,gini,min_count,error");
    const auto summary = split_lines(result.summary_csv);
    REQUIRE(summary.size() == 5); // header + (2 sizes x 2 arms)
    CHECK(summary[0] ==
          "source,n,k,d,weighted,arm,reps,errors,min_mean,min_std,avg_mean,avg_std,total_mean,total_std,"
          "gini_mean,gini_std");
    // summary rows look like uniform,10,2,2,1,greedy,3,0,...
    CHECK(summary[1].rfind("uniform,10,2,2,1,greedy,3,0,", 0) == 0);
    CHECK(summary[2].rfind("uniform,10,2,2,1,lex:greedy,3,0,", 0) == 0);
    CHECK(summary[3].rfind("uniform,12,2,2,1,greedy,3,0,", 0) == 0);
    CHECK(summary[4].rfind("uniform,12,2,2,1,lex:greedy,3,0,", 0) == 0);
}

TEST_CASE("bench output is identical across thread counts and reruns") {
    const auto a = run_bench(tiny_plan(), 1);
    const auto b = run_bench(tiny_plan(), 4);
    const auto c = run_bench(tiny_plan());
    CHECK(a.summary_csv == b.summary_csv);
    CHECK(a.per_run_csv == b.per_run_csv);
    CHECK(a.summary_csv == c.summary_csv);
    CHECK(a.per_run_csv == c.per_run_csv);
}

TEST_CASE("summary means equal the exact mean of the per-run records") {
    const auto result = run_bench(tiny_plan(), 0);
    // recompute the egalitarian mean of (n=10, arm=0) from the records
    Rational sum = 0;
    int count = 0;
    for (const auto& r : result.records) {
        if (r.n != 10 || r.arm_index != 0) continue;
        sum += Rational(r.report.egalitarian);
        ++count;
    }
    REQUIRE(count == 3);
    const auto rows = split_lines(result.summary_csv);
    std::istringstream row(rows[1]);
    std::string cell;
    for (int i = 0; i < 9; ++i) std::getline(row, cell, ','); // 9th field is min_mean
    CHECK(cell == decimal_string(sum / count, 6));
}

TEST_CASE("both arms of a cell share the same instance") {
    // with zero search on both arms, identical init kinds give identical rows
    ExperimentPlan plan = tiny_plan();
    plan.arms = {arm_from_string("greedy"), arm_from_string("greedy")};
    const auto result = run_bench(plan, 2);
    for (std::size_t i = 0; i + 1 < result.records.size(); ++i) {
        const auto& a = result.records[i];
        for (std::size_t j = i + 1; j < result.records.size(); ++j) {
            const auto& b = result.records[j];
            if (a.size_index == b.size_index && a.rep == b.rep) {
                CHECK(a.report.egalitarian == b.report.egalitarian);
                CHECK(a.report.total == b.report.total);
                CHECK(a.report.gini == b.report.gini);
            }
        }
    }
}

TEST_CASE("per-run failures are recorded, not thrown") {
    ExperimentPlan plan = tiny_plan();
    plan.sizes = {4};
    plan.k = 5; // five coalitions cannot partition four players
    const auto result = run_bench(plan, 1);
    REQUIRE(result.records.size() == 6);
    for (const auto& r : result.records) {
        CHECK(r.failed);
        CHECK(!r.error.empty());
    }
    const auto summary = split_lines(result.summary_csv);
    REQUIRE(summary.size() == 3);
    // reps column counts successes (0 here), errors column the 3 failures
    CHECK(summary[1].find(",0,3,") != std::string::npos);
    const auto per_run = split_lines(result.per_run_csv);
    REQUIRE(per_run.size() == 7);
    for (std::size_t i = 1; i < per_run.size(); ++i) {
        CHECK(per_run[i].find(",,,,,") != std::string::npos); // blank metric columns
        CHECK(per_run[i].find("fewer players") != std::string::npos);
    }
}

TEST_CASE("file sourced plans run against the stored instance") {
    const auto path = helpers::temp_path("bench-instance.edges");
    write_edge_list_file(path, gen_circulant(8, 2), 2);
    ExperimentPlan plan;
    plan.source = ExperimentPlan::Source::File;
    plan.instance_path = path;
    plan.k = 2;
    plan.arms = {arm_from_string("lex:random")};
    plan.repetitions = 2;
    plan.master_seed = 9;
    const auto result = run_bench(plan, 1);
    REQUIRE(result.records.size() == 2);
    for (const auto& r : result.records) {
        CHECK(!r.failed);
        CHECK(r.n == 8);
    }
    CHECK(split_lines(result.summary_csv)[1].rfind("file:" + path + ",8,2,", 0) == 0);
}

TEST_CASE("circulant sourced plans honour the divisibility rule") {
    ExperimentPlan plan;
    plan.source = ExperimentPlan::Source::Circulant;
    plan.sizes = {12};
    plan.k = 3;
    plan.arms = {arm_from_string("random")};
    plan.repetitions = 2;
    plan.master_seed = 4;
    const auto ok = run_bench(plan, 1);
    CHECK(ok.records.size() == 2);
    CHECK(!ok.records[0].failed);
    // an incompatible size is a malformed plan, rejected before any runs
    plan.sizes = {10}; // 3 does not divide 10
    CHECK_THROWS_AS(run_bench(plan, 1), std::invalid_argument);
}

TEST_CASE("bench plans validate their shape") {
    ExperimentPlan empty_arms = tiny_plan();
    empty_arms.arms.clear();
    CHECK_THROWS_AS(run_bench(empty_arms), std::invalid_argument);
    ExperimentPlan no_sizes = tiny_plan();
    no_sizes.sizes.clear();
    CHECK_THROWS_AS(run_bench(no_sizes), std::invalid_argument);
    ExperimentPlan no_reps = tiny_plan();
    no_reps.repetitions = 0;
    CHECK_THROWS_AS(run_bench(no_reps), std::invalid_argument);
    ExperimentPlan no_k = tiny_plan();
    no_k.k = 0;
    CHECK_THROWS_AS(run_bench(no_k), std::invalid_argument);
}
