#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <gpbtheta/experiment.hpp>

using namespace gpbtheta;

namespace {

const PrimeField F10007(10007);

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.gen.seed = 7;
    c.gen.field = FieldSpec::parse("p:10007");
    c.gen.genus = {2, 3};
    c.gen.rank = {1, 2};
    c.gen.count = 12;
    c.lambda_grid = 2;
    c.stability_samples = 100;
    return c;
}

std::string run_with_workers(const ExperimentConfig& c, const char* workers) {
    ::setenv("GPBTHETA_WORKERS", workers, 1);
    std::ostringstream report;
    const auto res = run_experiment(F10007, c, &report);
    ::unsetenv("GPBTHETA_WORKERS");
    return report.str() + res.summary.dump();
}

}  // namespace

TEST(Generator, ReproducibleAndValid) {
    GenConfig c;
    c.field = FieldSpec::parse("p:10007");
    c.genus = {2, 4};
    c.rank = {1, 3};
    for (std::uint64_t id = 0; id < 100; ++id) {
        const auto v = generate_instance(F10007, c, id);
        EXPECT_EQ(v, generate_instance(F10007, c, id));
        EXPECT_EQ(classify_type(v), GpbType::B);
        EXPECT_EQ(v.bundle().degree(), 0);
        EXPECT_GE(v.genus(), 2u);
        EXPECT_LE(v.genus(), 4u);
        EXPECT_LE(v.bundle()[0], c.params.max_twist);
    }
    GenConfig other = c;
    other.seed = 2;
    EXPECT_FALSE(generate_instance(F10007, c, 0) == generate_instance(F10007, other, 0));
}

TEST(Generator, SpectrumFamilyHasSmallEigenvalues) {
    GenConfig c;
    c.params.spectrum = 3;
    c.rank = {1, 3};
    for (std::uint64_t id = 0; id < 30; ++id) {
        const auto v = generate_instance(F10007, c, id);
        const auto f = product_theta(v).factors[0];
        bool root = false;
        for (int x = 1; x <= 3; ++x) root |= F10007.is_zero(f.eval(F10007.from_int(x)));
        EXPECT_TRUE(root);
    }
}

TEST(IntRange, Parse) {
    EXPECT_EQ(IntRange::parse("3").lo, 3);
    EXPECT_EQ(IntRange::parse("2-4").hi, 4);
    EXPECT_EQ(IntRange::parse("2-4").str(), "2-4");
    EXPECT_THROW(IntRange::parse("4-2"), std::invalid_argument);
    EXPECT_THROW(IntRange::parse("a"), std::invalid_argument);
    EXPECT_THROW(IntRange::parse("2-"), std::invalid_argument);
}

TEST(Experiment, ConfigErrors) {
    const PrimeField f3(3);
    ExperimentConfig c = small_config();
    c.gen.genus = {2, 2};
    EXPECT_THROW(check_gen_config(f3, c.gen), std::invalid_argument);
    c.gen.genus = {1, 2};
    EXPECT_THROW(check_experiment_config(F10007, c), std::invalid_argument);
    c = small_config();
    c.gen.count = 0;
    EXPECT_THROW(check_experiment_config(F10007, c), std::invalid_argument);
    c = small_config();
    c.gen.rank = {1, 3};
    EXPECT_THROW(check_experiment_config(PrimeField(7), c), std::invalid_argument);
    c = small_config();
    c.gen.params.spectrum = -1;
    EXPECT_THROW(check_experiment_config(F10007, c), std::invalid_argument);
}

TEST(Experiment, DeterministicAcrossRunsAndWorkerCounts) {
    const auto c = small_config();
    const std::string one = run_with_workers(c, "1");
    EXPECT_EQ(one, run_with_workers(c, "1"));
    EXPECT_EQ(one, run_with_workers(c, "4"));
}

TEST(Experiment, RecordsInIdOrderWithSummaryCounts) {
    auto c = small_config();
    std::ostringstream report;
    const auto res = run_experiment(F10007, c, &report);
    std::istringstream in(report.str());
    std::string line;
    std::uint64_t id = 0;
    for (; std::getline(in, line); ++id) {
        const json r = json::parse(line);
        EXPECT_EQ(r.at("id"), id);
        EXPECT_TRUE(r.contains("stability"));
        EXPECT_EQ(r.at("chi").at("agree"), true);
    }
    EXPECT_EQ(id, c.gen.count);
    const auto& inv = res.summary.at("invariants");
    EXPECT_EQ(inv.at("chi_agreement").at("checked"), c.gen.count);
    std::size_t total = 0;
    for (const auto& [k, n] : res.summary.at("stability").items()) total += n.get<std::size_t>();
    EXPECT_EQ(total, c.gen.count);
    EXPECT_FALSE(res.errored);
}

TEST(Experiment, WorkerCountFromEnvironment) {
    ::setenv("GPBTHETA_WORKERS", "3", 1);
    EXPECT_EQ(worker_count(), 3u);
    ::setenv("GPBTHETA_WORKERS", "zero", 1);
    EXPECT_THROW(worker_count(), std::invalid_argument);
    ::unsetenv("GPBTHETA_WORKERS");
    EXPECT_GE(worker_count(), 1u);
}

TEST(LambdaGrid, EnumeratesCube) {
    const auto g = lambda_grid(F10007, 3, 2);
    EXPECT_EQ(g.size(), 8u);
    EXPECT_EQ(g.front(), std::vector<Residue>(3, F10007.one()));
    EXPECT_EQ(g.back(), std::vector<Residue>(3, F10007.from_int(2)));
    EXPECT_TRUE(lambda_grid(F10007, 2, 0).empty());
}
