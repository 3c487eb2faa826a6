#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <adaptkw/adapter_io.hpp>
#include <adaptkw/hash_embedder.hpp>
#include <adaptkw/trainer.hpp>

namespace {

using adaptkw::Document;
using adaptkw::NgramRange;
using adaptkw::TrainConfig;
using adaptkw::TrainingPair;

std::vector<TrainingPair> demo_pairs() {
    return {
        TrainingPair{Document{"d1", "solar panels convert sunlight into power"},
                     {"solar", "power"}},
        TrainingPair{Document{"d2", "wind turbines harvest kinetic energy"},
                     {"wind", "energy"}},
        TrainingPair{Document{"d3", "hydro dams store renewable energy"},
                     {"hydro", "energy"}},
    };
}

TEST(Trainer, DeterministicGivenSeed) {
    adaptkw::HashEmbedder e1(32, 9), e2(32, 9);
    TrainConfig cfg;
    cfg.epochs = 5;
    cfg.rng_seed = 123;
    auto r1 = adaptkw::train_adapter(demo_pairs(), e1, NgramRange{1, 1}, {}, cfg);
    auto r2 = adaptkw::train_adapter(demo_pairs(), e2, NgramRange{1, 1}, {}, cfg);
    EXPECT_EQ(r1.weights, r2.weights);
    EXPECT_EQ(r1.epoch_mean_loss, r2.epoch_mean_loss);

    cfg.rng_seed = 124;
    auto r3 = adaptkw::train_adapter(demo_pairs(), e1, NgramRange{1, 1}, {}, cfg);
    EXPECT_NE(r1.weights, r3.weights);
}

TEST(Trainer, LossDropsOverTraining) {
    adaptkw::HashEmbedder e(32, 9);
    TrainConfig cfg;
    cfg.epochs = 40;
    cfg.rng_seed = 5;
    auto r = adaptkw::train_adapter(demo_pairs(), e, NgramRange{1, 1}, {}, cfg);
    ASSERT_EQ(r.epoch_mean_loss.size(), 40u);
    EXPECT_LT(r.epoch_mean_loss.back(), r.epoch_mean_loss.front());
    for (double l : r.epoch_mean_loss) EXPECT_TRUE(std::isfinite(l));
}

TEST(Trainer, InjectsGoldPhrasesMissingFromText) {
    adaptkw::HashEmbedder e(32, 9);
    TrainConfig cfg;
    cfg.epochs = 2;
    std::vector<TrainingPair> pairs{
        TrainingPair{Document{"d1", "completely unrelated words here"},
                     {"quantum flux"}}};
    auto r = adaptkw::train_adapter(pairs, e, NgramRange{1, 1}, {}, cfg);
    EXPECT_TRUE(std::isfinite(r.epoch_mean_loss.back()));
}

TEST(Trainer, ValidatesInputs) {
    adaptkw::HashEmbedder e(16, 1);
    TrainConfig cfg;
    EXPECT_THROW(adaptkw::train_adapter({}, e, NgramRange{1, 1}, {}, cfg),
                 adaptkw::NoTrainingPairs);

    std::vector<TrainingPair> no_relevant{
        TrainingPair{Document{"d1", "some text"}, {}}};
    EXPECT_THROW(
        adaptkw::train_adapter(no_relevant, e, NgramRange{1, 1}, {}, cfg),
        adaptkw::NoRelevantCandidates);

    TrainConfig bad = cfg;
    bad.learning_rate = 0.0;
    EXPECT_THROW(
        adaptkw::train_adapter(demo_pairs(), e, NgramRange{1, 1}, {}, bad),
        adaptkw::ConfigError);
    bad = cfg;
    bad.epochs = 0;
    EXPECT_THROW(
        adaptkw::train_adapter(demo_pairs(), e, NgramRange{1, 1}, {}, bad),
        adaptkw::ConfigError);
    bad = cfg;
    bad.lambda_relevant = bad.lambda_anchor = 0.0;
    EXPECT_THROW(
        adaptkw::train_adapter(demo_pairs(), e, NgramRange{1, 1}, {}, bad),
        adaptkw::ConfigError);
}

TEST(AdapterIo, RoundTripsBitExactly) {
    adaptkw::HashEmbedder e(24, 2);
    TrainConfig cfg;
    cfg.epochs = 3;
    auto r = adaptkw::train_adapter(demo_pairs(), e, NgramRange{1, 1}, {}, cfg);

    std::string path = ::testing::TempDir() + "adapter_roundtrip.json";
    adaptkw::save_adapter(r.weights, path, e.model_name());
    auto loaded = adaptkw::load_adapter(path);
    EXPECT_EQ(loaded.weights, r.weights);
    EXPECT_EQ(loaded.model_name, "deterministic-test");

    // a second save of the loaded weights must produce identical bytes
    std::string path2 = ::testing::TempDir() + "adapter_roundtrip2.json";
    adaptkw::save_adapter(loaded.weights, path2, loaded.model_name);
    std::ifstream f1(path), f2(path2);
    std::string s1((std::istreambuf_iterator<char>(f1)),
                   std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)),
                   std::istreambuf_iterator<char>());
    EXPECT_EQ(s1, s2);
}

TEST(AdapterIo, RejectsBadFiles) {
    std::string path = ::testing::TempDir() + "adapter_bad.json";

    auto write = [&](const std::string& content) {
        std::ofstream f(path);
        f << content;
    };

    write("{ not json");
    EXPECT_THROW(adaptkw::load_adapter(path), adaptkw::ParseError);

    write(R"({"version": 2, "dimension": 1, "model_name": "m",
           "w_q": [[0]], "w_k": [[0]], "w_v": [[0]], "w_o": [[0]]})");
    EXPECT_THROW(adaptkw::load_adapter(path), adaptkw::VersionMismatch);

    write(R"({"version": 1, "dimension": 2, "model_name": "m",
           "w_q": [[0, 0]], "w_k": [[0, 0], [0, 0]],
           "w_v": [[0, 0], [0, 0]], "w_o": [[0, 0], [0, 0]]})");
    EXPECT_THROW(adaptkw::load_adapter(path), adaptkw::ParseError);

    write(R"({"version": 1, "dimension": 1, "model_name": "m",
           "w_q": [[0]], "w_k": [[0]], "w_v": [[0]]})");
    EXPECT_THROW(adaptkw::load_adapter(path), adaptkw::ParseError);

    EXPECT_THROW(adaptkw::load_adapter("/nonexistent/adapter.json"),
                 adaptkw::ConfigError);
}

TEST(AdapterIo, PreservesExtremeDoubles) {
    adaptkw::AdapterWeights w;
    w.d = 2;
    w.w_q = w.w_k = w.w_v = w.w_o = adaptkw::Matrix(2, 2);
    w.w_q.at(0, 0) = 0.1;                      // not exactly representable
    w.w_q.at(0, 1) = 1.0 / 3.0;
    w.w_q.at(1, 0) = 1e-300;
    w.w_q.at(1, 1) = -123456.78901234567;
    std::string path = ::testing::TempDir() + "adapter_extreme.json";
    adaptkw::save_adapter(w, path, "m");
    auto loaded = adaptkw::load_adapter(path);
    EXPECT_EQ(loaded.weights.w_q.data(), w.w_q.data());
}

}  // namespace
