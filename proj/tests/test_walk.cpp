#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "sharkswim/forest.hpp"
#include "sharkswim/stats.hpp"
#include "sharkswim/walk.hpp"
#include "support/walk_oracles.hpp"

using namespace sharkswim;

TEST_CASE("first step is always fresh") {
    RngStream rng(1, 0);
    ModelParams params{WalkMode::P_MODE, 2.0, 0.5, 1, 1};
    auto traj = simulate_p_mode(params, rng);
    CHECK(traj.size() == 1);
    CHECK(traj.provenance[0].tag == StepTag::FRESH);
    CHECK(traj.position(1)[0] == traj.step(1)[0]);
}

TEST_CASE("repeat probability at n=2 is p") {
    RngStream rng(2, 0);
    const double p = 0.35;
    const int64_t R = 100000;
    int64_t repeated = 0;
    ModelParams params{WalkMode::P_MODE, 2.0, p, 1, 2};
    for (int64_t r = 0; r < R; ++r) {
        auto traj = simulate_p_mode(params, rng);
        if (traj.provenance[1].tag == StepTag::REPEATED) {
            ++repeated;
            CHECK(traj.step(2)[0] == traj.step(1)[0]);
        }
    }
    double freq = double(repeated) / double(R);
    CHECK(std::abs(freq - p) < 3.0 * std::sqrt(p * (1.0 - p) / double(R)));
}

TEST_CASE("provenance reconstructs steps and positions") {
    RngStream rng(3, 0);
    ModelParams params{WalkMode::P_MODE, 1.5, 0.6, 2, 300};
    auto traj = simulate_p_mode(params, rng);
    std::vector<double> pos(2, 0.0);
    for (int64_t k = 1; k <= traj.size(); ++k) {
        const auto& prov = traj.provenance[std::size_t(k - 1)];
        if (prov.tag == StepTag::REPEATED) {
            CHECK(traj.step(k)[0] == traj.step(prov.source)[0]);
            CHECK(traj.step(k)[1] == traj.step(prov.source)[1]);
        }
        pos[0] += traj.step(k)[0];
        pos[1] += traj.step(k)[1];
        CHECK(traj.position(k)[0] == pos[0]);
        CHECK(traj.position(k)[1] == pos[1]);
    }
}

TEST_CASE("p-mode engine stores one vector per fresh step only") {
    RngStream rng(4, 0);
    PModeEngine engine(2.0, 0.8, 3);
    engine.run_to(2000, rng);
    int64_t fresh_tags = 0;
    for (const auto& prov : engine.provenance())
        if (prov.tag == StepTag::FRESH) ++fresh_tags;
    CHECK(engine.fresh_count() == fresh_tags);
    CHECK(fresh_tags < 2000 / 2); // p = 0.8: most steps repeat
    // multiplicities partition the steps
    auto mult = engine.ancestor_multiplicities();
    int64_t total = 0;
    for (int64_t m : mult) total += m;
    CHECK(total == 2000);
    // position equals the multiplicity-weighted fresh sum
    for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t f = 0; f < mult.size(); ++f)
            s += double(mult[f]) * engine.fresh_value(int32_t(f))[std::size_t(j)];
        CHECK(engine.position()[std::size_t(j)] == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("p-mode cluster sizes match the percolated-tree law at n=3") {
    RngStream rng(5, 0);
    const int64_t R = 100000;
    // multisets of ancestor multiplicities, keyed by sorted sizes
    std::map<std::vector<int64_t>, int64_t> observed;
    for (int64_t r = 0; r < R; ++r) {
        PModeEngine engine(2.0, 0.5, 1);
        engine.run_to(3, rng);
        auto mult = engine.ancestor_multiplicities();
        std::sort(mult.begin(), mult.end(), std::greater<>());
        ++observed[mult];
    }
    auto expected = enumerate_exact(3, 1, 2).size_multiset_pmf();
    std::vector<int64_t> counts;
    std::vector<double> probs;
    for (const auto& [key, prob] : expected) {
        probs.push_back(prob);
        counts.push_back(observed.count(key) ? observed[key] : 0);
    }
    auto res = chi_square_test(counts, probs);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("fast final position agrees with the trajectory in law and memory") {
    RngStream rng_a(6, 1);
    ModelParams params{WalkMode::P_MODE, 2.0, 0.5, 1, 50};
    auto traj = simulate_p_mode(params, rng_a);
    RngStream rng_b(6, 1);
    auto pos = p_mode_final_position(params, rng_b);
    CHECK(pos[0] == traj.position(50)[0]); // same stream, same path
}

TEST_CASE("q-mode: every step is a signed copy of the first") {
    RngStream rng(7, 0);
    ModelParams params{WalkMode::Q_MODE, 1.2, 0.7, 1, 40};
    auto traj = simulate_q_mode(params, rng);
    double xi = traj.step(1)[0];
    int64_t sum = 0;
    for (int64_t k = 1; k <= traj.size(); ++k) {
        CHECK((traj.step(k)[0] == xi || traj.step(k)[0] == -xi));
        sum += traj.step(k)[0] == xi ? 1 : -1;
    }
    int64_t disp = q_mode_displacement(traj);
    CHECK(disp == sum);
    CHECK(std::abs(disp) <= traj.size());
    CHECK((disp - traj.size()) % 2 == 0);
    CHECK(traj.position(40)[0] ==
          doctest::Approx(double(disp) * xi).epsilon(1e-12));
    CHECK(std::abs(traj.position(40)[0]) <= double(traj.size()) * std::abs(xi) * (1 + 1e-12));
}

TEST_CASE("q-mode n=2: repeat probability") {
    RngStream rng(8, 0);
    const double q = 0.75;
    const int64_t R = 100000;
    int64_t doubled = 0;
    ModelParams params{WalkMode::Q_MODE, 2.0, q, 1, 2};
    for (int64_t r = 0; r < R; ++r) {
        auto traj = simulate_q_mode(params, rng);
        if (q_mode_displacement(traj) == 2) ++doubled;
    }
    double freq = double(doubled) / double(R);
    CHECK(std::abs(freq - q) < 3.0 * std::sqrt(q * (1.0 - q) / double(R)));
}

TEST_CASE("q-mode n=4 displacement law matches enumeration") {
    RngStream rng(9, 0);
    const double q = 0.5;
    const int64_t R = 100000;
    auto law = oracles::q_mode_coefficient_law(4, q);
    std::map<int64_t, int64_t> observed;
    ModelParams params{WalkMode::Q_MODE, 2.0, q, 1, 4};
    for (int64_t r = 0; r < R; ++r)
        ++observed[q_mode_displacement(simulate_q_mode(params, rng))];
    std::vector<int64_t> counts;
    std::vector<double> probs;
    for (const auto& [disp, prob] : law) {
        probs.push_back(prob);
        counts.push_back(observed.count(disp) ? observed[disp] : 0);
    }
    auto res = chi_square_test(counts, probs);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("ERW first step is a fair coin by default, pinnable for coupling") {
    RngStream rng(10, 0);
    const int64_t R = 100000;
    int64_t plus = 0;
    for (int64_t r = 0; r < R; ++r) {
        auto traj = simulate_erw(0.5, 1, rng);
        double s = traj.step(1)[0];
        REQUIRE((s == 1.0 || s == -1.0));
        if (s == 1.0) ++plus;
    }
    CHECK(std::abs(double(plus) / double(R) - 0.5) < 3.0 * std::sqrt(0.25 / double(R)));
    auto pinned = simulate_erw(0.5, 3, rng, +1);
    CHECK(pinned.step(1)[0] == 1.0);
    auto pinned_minus = simulate_erw(0.5, 3, rng, -1);
    CHECK(pinned_minus.step(1)[0] == -1.0);
}

TEST_CASE("ERW n=3 law matches enumeration with the fair first step") {
    RngStream rng(11, 0);
    const double q = 0.5;
    const int64_t R = 100000;
    auto law = oracles::erw_displacement_law(3, q, 0);
    std::map<int64_t, int64_t> observed;
    for (int64_t r = 0; r < R; ++r) {
        auto traj = simulate_erw(q, 3, rng);
        ++observed[int64_t(std::llround(traj.position(3)[0]))];
    }
    std::vector<int64_t> counts;
    std::vector<double> probs;
    for (const auto& [disp, prob] : law) {
        probs.push_back(prob);
        counts.push_back(observed.count(disp) ? observed[disp] : 0);
    }
    auto res = chi_square_test(counts, probs);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("q-mode law equals xi_1 times the ERW started at +1, exactly") {
    for (int64_t n : {1, 2, 3, 4, 5}) {
        for (double q : {0.3, 0.5, 0.75}) {
            auto qlaw = oracles::q_mode_coefficient_law(n, q);
            auto elaw = oracles::erw_displacement_law(n, q, +1);
            REQUIRE(qlaw.size() == elaw.size());
            for (const auto& [disp, prob] : qlaw) {
                INFO("n = ", n, " q = ", q, " disp = ", disp);
                REQUIRE(elaw.count(disp) == 1);
                CHECK(std::abs(elaw[disp] - prob) < 1e-12);
            }
        }
    }
}

TEST_CASE("q = 0 always reverses the remembered step") {
    RngStream rng(12, 0);
    ModelParams params{WalkMode::Q_MODE, 2.0, 0.0, 1, 30};
    auto traj = simulate_q_mode(params, rng);
    for (int64_t k = 2; k <= traj.size(); ++k) {
        const auto& prov = traj.provenance[std::size_t(k - 1)];
        CHECK(prov.tag == StepTag::FLIPPED);
        CHECK(traj.step(k)[0] == -traj.step(prov.source)[0]);
    }
    // exact law still matches the enumerator at q = 0
    auto law = oracles::q_mode_coefficient_law(4, 0.0);
    double total = 0.0;
    for (const auto& [disp, prob] : law) total += prob;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    ModelParams bad_p{WalkMode::P_MODE, 2.0, 0.0, 1, 5};
    CHECK_THROWS_AS(bad_p.validate(), std::invalid_argument);
    ModelParams bad_q{WalkMode::Q_MODE, 2.0, 1.0, 1, 5};
    CHECK_THROWS_AS(bad_q.validate(), std::invalid_argument);
    ModelParams bad_erw{WalkMode::ERW, 2.0, 0.5, 2, 5};
    CHECK_THROWS_AS(bad_erw.validate(), std::invalid_argument);
    ModelParams bad_n{WalkMode::P_MODE, 2.0, 0.5, 1, 0};
    CHECK_THROWS_AS(bad_n.validate(), std::invalid_argument);
}
