#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "antdisk/workload.hpp"

using namespace antdisk;

namespace {
const DiskGeometry kGeom{};
} // namespace

TEST_CASE("builtin specs") {
    const WorkloadSpec tc1 = builtin_spec("tc1");
    CHECK(tc1.n_tasks == 20);
    CHECK(tc1.ready_max_ms == 160.0);
    CHECK(tc1.n_problems == 1000);
    CHECK(tc1.size_bytes == 36864);

    CHECK(builtin_spec("tc2").n_tasks == 30);
    CHECK(builtin_spec("tc2").ready_max_ms == 240.0);
    CHECK(builtin_spec("tc3").n_tasks == 50);
    CHECK(builtin_spec("tc3").ready_max_ms == 400.0);

    CHECK_THROWS_AS(builtin_spec("tc4"), std::invalid_argument);
}

TEST_CASE("generation cardinality and determinism") {
    WorkloadSpec spec;
    spec.n_tasks = 3;
    spec.n_problems = 2;
    spec.seed = 17;
    const auto a = generate(spec, kGeom);
    REQUIRE(a.size() == 2);
    CHECK(a[0].tasks.size() == 3);
    CHECK(a[1].tasks.size() == 3);

    const auto b = generate(spec, kGeom);
    CHECK(a == b);

    // A single problem is reproducible on its own.
    CHECK(generate_problem(spec, kGeom, 1) == a[1]);

    spec.seed = 18;
    CHECK(generate(spec, kGeom) != a);
}

TEST_CASE("generated tasks satisfy the task invariants and spec bounds") {
    WorkloadSpec spec = builtin_spec("tc1");
    spec.n_problems = 500; // 10^4 tasks
    spec.seed = 3;
    for (const Problem& p : generate(spec, kGeom)) {
        for (const Task& t : p.tasks) {
            CHECK(t.ready_ms >= 0.0);
            CHECK(t.ready_ms <= spec.ready_max_ms);
            CHECK(t.deadline_ms > t.ready_ms);
            const double period = t.deadline_ms - t.ready_ms;
            CHECK(period >= spec.period_min_ms);
            CHECK(period <= spec.period_max_ms);
            CHECK(t.cylinder >= 0);
            CHECK(t.cylinder < kGeom.cylinders);
            CHECK(t.sector >= 0);
            CHECK(t.sector < kGeom.sectors_per_track);
            CHECK(t.size_bytes == spec.size_bytes);
        }
    }
}

TEST_CASE("ready times are uniform: empirical mean near ready_max/2") {
    WorkloadSpec spec;
    spec.n_tasks = 100;
    spec.n_problems = 1000; // 10^5 samples
    spec.ready_max_ms = 160.0;
    spec.seed = 11;
    double total = 0.0;
    std::size_t count = 0;
    for (const Problem& p : generate(spec, kGeom)) {
        for (const Task& t : p.tasks) {
            total += t.ready_ms;
            ++count;
        }
    }
    const double mean = total / static_cast<double>(count);
    CHECK(std::abs(mean - 80.0) / 80.0 < 0.02);
}

TEST_CASE("serialization round trip") {
    SECTION("empty list") {
        std::stringstream ss;
        save(std::vector<Problem>{}, ss);
        CHECK(ss.str().empty());
        CHECK(load(ss).empty());
    }

    SECTION("single task schema") {
        Problem p{.id = 0, .tasks = {Task{.id = 0, .ready_ms = 1.5, .deadline_ms = 100.25,
                                          .cylinder = 7, .sector = 3, .size_bytes = 36864}}};
        std::stringstream ss;
        save({p}, ss);
        const auto j = nlohmann::json::parse(ss.str());
        CHECK(j.at("tasks").at(0).size() == 6);
        CHECK(j.at("tasks").at(0).at("ready_ms") == 1.5);
        const auto back = load(ss);
        REQUIRE(back.size() == 1);
        CHECK(back[0] == p);
    }

    SECTION("full TC1 generation is lossless") {
        WorkloadSpec spec = builtin_spec("tc1");
        spec.n_problems = 25;
        spec.seed = 5;
        const auto problems = generate(spec, kGeom);
        std::stringstream ss;
        save(problems, ss);
        CHECK(load(ss) == problems);
    }
}

TEST_CASE("load reports the offending line") {
    std::stringstream ss;
    ss << R"({"id":0,"tasks":[]})" << '\n' << "{broken" << '\n';
    CHECK_THROWS_WITH(load(ss), Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("spec validation") {
    WorkloadSpec spec;
    spec.period_min_ms = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = WorkloadSpec{};
    spec.period_min_ms = 400.0; // > period_max
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = WorkloadSpec{};
    spec.n_tasks = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
