#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "symdyn/arith.hpp"
#include "symdyn/experiment.hpp"
#include "symdyn/subst.hpp"

using namespace symdyn;
using namespace symdyn::experiment;
using spectral::make_block_indicator;
using spectral::make_constant;
using spectral::make_symbol_table;
using spectral::make_walsh;

namespace {

SourcePtr thue_morse() {
    return subst::fixed_point_source(subst::Substitution::from_strings("01", {"01", "10"}, '0'));
}

std::vector<std::int8_t> oracle_moebius(std::uint32_t limit) {
    std::vector<std::int8_t> w(limit + 1, 0);
    for (std::uint32_t n = 1; n <= limit; ++n) w[n] = static_cast<std::int8_t>(oracle::moebius_from(oracle::trial_factor(n)));
    return w;
}

}  // namespace

TEST_CASE("checkpoints") {
    CHECK(pow2_checkpoints(16) == std::vector<std::uint64_t>{1, 2, 4, 8, 16});
    CHECK(pow2_checkpoints(20) == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 20});
    CHECK(pow2_checkpoints(1) == std::vector<std::uint64_t>{1});
    const std::vector<std::uint64_t> bad{1, 5, 3};
    CHECK_THROWS_AS(validate_checkpoints(bad), std::invalid_argument);
    const std::vector<std::uint64_t> zero{0, 1};
    CHECK_THROWS_AS(validate_checkpoints(zero), std::invalid_argument);
    CHECK_THROWS_AS(validate_checkpoints(std::vector<std::uint64_t>{}), std::invalid_argument);
}

TEST_CASE("sarnak series") {
    const auto tm = thue_morse();
    const std::vector<std::uint64_t> cps{10};
    const auto mu = arith::build_weight_table(arith::WeightKind::moebius, 100);
    const auto r = sarnak_series(*tm, make_constant(1.0), mu, cps);
    CHECK(r.values[0] == Complex(-0.1));
    CHECK(r.metadata.weight == "moebius");

    const std::vector<std::int8_t> zeros(101, 0);
    const auto z = sarnak_series(*tm, make_walsh({0}), zeros, pow2_checkpoints(64));
    for (auto v : z.values) CHECK(v == Complex(0.0));

    CHECK_THROWS_AS(sarnak_series(*tm, make_walsh({0}), zeros, std::vector<std::uint64_t>{101}), std::invalid_argument);

    // direct sums against trial-division Moebius values
    const std::uint32_t n = 5000;
    const auto w = oracle_moebius(n);
    const auto rep = sarnak_series(*tm, make_walsh({0}), w, pow2_checkpoints(n));
    for (std::size_t i = 0; i < rep.checkpoints.size(); ++i) {
        long sum = 0;
        for (std::uint64_t k = 1; k <= rep.checkpoints[i]; ++k) sum += (oracle::thue_morse(k) ? -1 : 1) * w[k];
        CHECK(rep.values[i] == Complex(static_cast<double>(sum) / static_cast<double>(rep.checkpoints[i])));
    }
}

TEST_CASE("sarnak series is linear and partitions exactly") {
    const auto tm = thue_morse();
    const auto mu = arith::build_weight_table(arith::WeightKind::moebius, 1 << 16);
    const auto cps = pow2_checkpoints(1 << 16);
    const auto f = sarnak_series(*tm, make_symbol_table({{0, 1.0}, {1, -1.0}}, 2), mu, cps);
    const auto g = sarnak_series(*tm, make_symbol_table({{0, 0.0}, {1, 1.0}}, 2), mu, cps);
    const auto h = sarnak_series(*tm, make_symbol_table({{0, 2.0}, {1, 1.0}}, 2), mu, cps);  // 2f + 3g
    for (std::size_t i = 0; i < cps.size(); ++i) CHECK(h.values[i] == 2.0 * f.values[i] + 3.0 * g.values[i]);

    const auto a = sarnak_series(*tm, make_block_indicator({0}), mu, cps);
    const auto b = sarnak_series(*tm, make_block_indicator({1}), mu, cps);
    const auto one = sarnak_series(*tm, make_constant(1.0), mu, cps);
    for (std::size_t i = 0; i < cps.size(); ++i) CHECK(a.values[i] + b.values[i] == one.values[i]);
}

TEST_CASE("thread count does not change reports") {
    const auto tm = thue_morse();
    const auto mu = arith::build_weight_table(arith::WeightKind::moebius, 300000);
    const auto cps = pow2_checkpoints(300000);
    const auto one = sarnak_series(*tm, make_walsh({0}), mu, cps, 1);
    const auto four = sarnak_series(*tm, make_walsh({0}), mu, cps, 4);
    CHECK(one == four);
    CHECK(to_csv(one) == to_csv(four));
    CHECK(kbsz_series(*tm, make_walsh({0}), 3, 5, cps, 1) == kbsz_series(*tm, make_walsh({0}), 3, 5, cps, 3));
}

TEST_CASE("kbsz series") {
    const PeriodicSource alt(Word{0, 1}, 2);
    const auto cps = pow2_checkpoints(1 << 12);
    for (auto v : kbsz_series(alt, make_walsh({0}), 3, 5, cps).values) CHECK(v == Complex(1.0));
    const auto tm = thue_morse();
    for (auto v : kbsz_series(*tm, make_walsh({0}), 7, 7, cps).values) CHECK(v == Complex(1.0));

    const auto rep = kbsz_series(*tm, make_walsh({0}), 3, 5, cps);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        long sum = 0;
        for (std::uint64_t k = 1; k <= cps[i]; ++k)
            sum += (oracle::thue_morse(3 * k) ^ oracle::thue_morse(5 * k)) ? -1 : 1;
        CHECK(rep.values[i] == Complex(static_cast<double>(sum) / static_cast<double>(cps[i])));
    }
    CHECK(rep.metadata.r == 3u);
    CHECK_THROWS_AS(kbsz_series(*tm, make_walsh({0}), 1, 5, cps), std::invalid_argument);
}

TEST_CASE("block sweeps") {
    const auto tm = thue_morse();
    const auto mu = arith::build_weight_table(arith::WeightKind::moebius, 1 << 12);
    const auto cps = pow2_checkpoints(1 << 12);
    const auto sweep = block_sweep(*tm, 2, mu.values(), cps);
    REQUIRE(sweep.size() == 4);
    CHECK(sweep[0].block == Word{0, 0});
    CHECK(sweep[3].block == Word{1, 1});

    const PeriodicSource zero(Word{0}, 2);
    CHECK(block_sweep(zero, 2, mu.values(), cps).size() == 1);

    const auto singles = block_sweep(*tm, 1, mu.values(), cps);
    REQUIRE(singles.size() == 2);
    const auto one = sarnak_series(*tm, make_constant(1.0), mu, cps);
    for (std::size_t i = 0; i < cps.size(); ++i)
        CHECK(singles[0].report.values[i] + singles[1].report.values[i] == one.values[i]);
}

TEST_CASE("run_experiment and serialization") {
    ExperimentConfig cfg;
    cfg.system = thue_morse();
    cfg.system_name = "tm";
    cfg.observable = make_walsh({0});
    cfg.observable_name = "sign";
    cfg.weight = arith::WeightKind::moebius;
    cfg.sample_size = 1 << 20;
    const auto rep = run_experiment(cfg);
    CHECK(to_csv(rep) == oracle::read_file(SYMDYN_FIXTURES "/golden_tm_moebius.csv"));

    const auto j = nlohmann::json::parse(oracle::read_file(SYMDYN_FIXTURES "/oracle_sums.json"));
    CHECK(std::abs(rep.values.back()) <= 2.0 * j["sarnak"]["abs_value"].get<double>());
    CHECK(rep.values.back() == Complex(j["sarnak"]["sum"].get<double>() / (1 << 20)));

    ExperimentConfig small = cfg;
    small.sample_size = 20;
    small.checkpoints = {3, 7};
    const auto csv = to_csv(run_experiment(small));
    CHECK(csv.rfind("N,real,imag\n3,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header, 3, 7, 20
    CHECK(csv.find('\r') == std::string::npos);

    const auto js = nlohmann::ordered_json::parse(to_json(run_experiment(small)));
    CHECK(js.begin().key() == "metadata");
    CHECK(js["metadata"]["weight"] == "moebius");
    CHECK(js["rows"].size() == 3);
    CHECK(js["N"] == 20);

    ExperimentConfig k = cfg;
    k.weight.reset();
    k.sample_size = 1 << 18;
    k.kbsz = std::pair<std::uint32_t, std::uint32_t>{3, 5};
    const auto kr = run_experiment(k);
    CHECK(std::abs(kr.values.back()) <= 2.0 * j["kbsz"]["abs_value"].get<double>());
    k.kbsz = std::pair<std::uint32_t, std::uint32_t>{4, 5};
    CHECK_THROWS_AS(run_experiment(k), std::invalid_argument);
    k.kbsz = std::pair<std::uint32_t, std::uint32_t>{5, 5};
    CHECK_THROWS_AS(run_experiment(k), std::invalid_argument);

    ExperimentConfig bad = small;
    bad.checkpoints = {30};
    CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);

    // negative zero never reaches the output
    ConvergenceReport neg;
    neg.checkpoints = {1};
    neg.values = {Complex(-0.0, -0.0)};
    neg.sample_size = 1;
    CHECK(to_csv(neg) == "N,real,imag\n1,0,0\n");

    const auto dir = std::filesystem::temp_directory_path() / "symdyn_test_experiment";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "r.csv").string();
    save_report(neg, path, "csv");
    CHECK(oracle::read_file(path) == to_csv(neg));
    try {
        save_report(neg, (dir / "missing" / "x.csv").string(), "csv");
        FAIL("expected an I/O error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }
    CHECK_THROWS(save_report(neg, path, "xml"));
}
