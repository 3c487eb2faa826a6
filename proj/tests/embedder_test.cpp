#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include <adaptkw/embedding.hpp>
#include <adaptkw/hash_embedder.hpp>
#include <adaptkw/http_embedder.hpp>
#include <adaptkw/store_embedder.hpp>

namespace {

using adaptkw::cosine_similarity;
using adaptkw::HashEmbedder;
using adaptkw::Vec;

TEST(Cosine, MatchesHandValues) {
    EXPECT_DOUBLE_EQ(cosine_similarity({1.0, 0.0}, {1.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(cosine_similarity({1.0, 0.0}, {0.0, 1.0}), 0.0);
    EXPECT_DOUBLE_EQ(cosine_similarity({1.0, 0.0}, {-1.0, 0.0}), -1.0);
    EXPECT_NEAR(cosine_similarity({1.0, 1.0}, {1.0, 0.0}),
                0.7071067811865475, 1e-15);
}

TEST(Cosine, RejectsBadInputs) {
    EXPECT_THROW(cosine_similarity({1.0}, {1.0, 0.0}),
                 adaptkw::DimensionMismatch);
    EXPECT_THROW(cosine_similarity({0.0, 0.0}, {1.0, 0.0}),
                 adaptkw::ZeroVector);
}

TEST(Cosine, StaysInRangeOnRandomVectors) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        Vec a(8), b(8);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng);
        double c = cosine_similarity(a, b);
        EXPECT_GE(c, -1.0);
        EXPECT_LE(c, 1.0);
    }
}

TEST(HashEmbedderTest, DeterministicAcrossInstances) {
    HashEmbedder a(64, 7), b(64, 7);
    auto va = a.embed({"solar power", "wind"});
    auto vb = b.embed({"solar power", "wind"});
    EXPECT_EQ(va, vb);
}

TEST(HashEmbedderTest, SeedAndDimensionMatter) {
    HashEmbedder a(64, 7), b(64, 8), c(32, 7);
    EXPECT_NE(a.embed_one("solar"), b.embed_one("solar"));
    EXPECT_EQ(c.embed_one("solar").size(), 32u);
    EXPECT_EQ(a.embed_one("solar").size(), 64u);
}

TEST(HashEmbedderTest, VectorsAreUnitNorm) {
    HashEmbedder e(48, 3);
    for (const char* t : {"a", "ab", "abc", "abcd", "solar power plant",
                          "x y z w", "café étude"}) {
        double n = adaptkw::norm2(e.embed_one(t));
        EXPECT_NEAR(n, 1.0, 1e-12) << t;
    }
}

TEST(HashEmbedderTest, NormalizationInvariance) {
    HashEmbedder e(64, 11);
    EXPECT_EQ(e.embed_one("Solar  POWER"), e.embed_one("solar power"));
    EXPECT_EQ(e.embed_one("café"), e.embed_one("café"));
}

TEST(HashEmbedderTest, MultiWordIsNormalizedMeanOfWords) {
    HashEmbedder e(96, 13);
    Vec solar = e.embed_one("solar");
    Vec power = e.embed_one("power");
    Vec mean(96);
    for (size_t i = 0; i < mean.size(); ++i)
        mean[i] = 0.5 * (solar[i] + power[i]);
    double n = adaptkw::norm2(mean);
    for (double& x : mean) x /= n;
    Vec both = e.embed_one("solar power");
    for (size_t i = 0; i < mean.size(); ++i)
        EXPECT_NEAR(both[i], mean[i], 1e-12);
}

TEST(HashEmbedderTest, RelatedWordsOverlapMoreThanUnrelated) {
    // shared trigrams ("fish") should beat disjoint alphabets
    HashEmbedder e(256, 17);
    double related = cosine_similarity(e.embed_one("fishery"),
                                       e.embed_one("fisheries"));
    double unrelated = cosine_similarity(e.embed_one("fishery"),
                                         e.embed_one("quantum"));
    EXPECT_GT(related, unrelated);
}

TEST(StoreEmbedderTest, LoadsAndLooksUpNormalized) {
    std::string path = ::testing::TempDir() + "store_ok.jsonl";
    {
        std::ofstream f(path);
        f << R"({"text": "Solar Power", "vector": [1.0, 0.0]})" << "\n";
        f << "\n";
        f << R"({"text": "wind", "vector": [0.0, 1.0]})" << "\n";
    }
    auto store = adaptkw::PrecomputedStore::load(path);
    EXPECT_EQ(store.dimension(), 2u);
    EXPECT_EQ(store.size(), 2u);
    EXPECT_EQ(store.lookup("solar  power"), (Vec{1.0, 0.0}));
    EXPECT_THROW(store.lookup("hydro"), adaptkw::MissingEmbedding);

    adaptkw::StoreEmbedder embedder(store);
    auto vecs = embedder.embed({"wind", "Solar Power"});
    EXPECT_EQ(vecs[0], (Vec{0.0, 1.0}));
    EXPECT_EQ(vecs[1], (Vec{1.0, 0.0}));
}

TEST(StoreEmbedderTest, ReportsErrorsWithLineNumbers) {
    std::string path = ::testing::TempDir() + "store_bad.jsonl";
    {
        std::ofstream f(path);
        f << R"({"text": "a", "vector": [1.0]})" << "\n";
        f << "not json\n";
    }
    try {
        adaptkw::PrecomputedStore::load(path);
        FAIL() << "expected ParseError";
    } catch (const adaptkw::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }

    std::string mixed = ::testing::TempDir() + "store_mixed.jsonl";
    {
        std::ofstream f(mixed);
        f << R"({"text": "a", "vector": [1.0, 2.0]})" << "\n";
        f << R"({"text": "b", "vector": [1.0]})" << "\n";
    }
    EXPECT_THROW(adaptkw::PrecomputedStore::load(mixed),
                 adaptkw::DimensionMismatch);

    std::string empty = ::testing::TempDir() + "store_empty.jsonl";
    { std::ofstream f(empty); }
    EXPECT_THROW(adaptkw::PrecomputedStore::load(empty), adaptkw::ParseError);
}

// Local embedding service used by the HTTP client tests. Returns a
// deterministic 3-vector derived from the text length so order is checkable.
class LocalService {
public:
    LocalService() {
        server_.Post("/embed", [this](const httplib::Request& req,
                                      httplib::Response& res) {
            ++requests_;
            auto body = nlohmann::json::parse(req.body);
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& t : body["texts"]) {
                texts_served_ += 1;
                double len = static_cast<double>(t.get<std::string>().size());
                rows.push_back({len, 1.0, 0.0});
            }
            res.set_content(nlohmann::json{{"embeddings", rows}}.dump(),
                            "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~LocalService() {
        server_.stop();
        thread_.join();
    }

    std::string endpoint() const {
        return "http://127.0.0.1:" + std::to_string(port_);
    }
    int requests() const { return requests_; }
    int texts_served() const { return texts_served_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
    std::atomic<int> texts_served_{0};
};

TEST(HttpEmbedderTest, PreservesOrderAndCaches) {
    LocalService service;
    adaptkw::HttpEmbedder e(service.endpoint(), 3);
    auto vecs = e.embed({"aa", "bbbb", "aa", "c"});
    ASSERT_EQ(vecs.size(), 4u);
    EXPECT_EQ(vecs[0][0], 2.0);
    EXPECT_EQ(vecs[1][0], 4.0);
    EXPECT_EQ(vecs[2][0], 2.0);
    EXPECT_EQ(vecs[3][0], 1.0);
    EXPECT_EQ(service.texts_served(), 3);  // duplicate "aa" served once

    auto again = e.embed({"bbbb", "aa"});
    EXPECT_EQ(again[0][0], 4.0);
    EXPECT_EQ(service.texts_served(), 3);  // fully cached, no new texts
}

TEST(HttpEmbedderTest, WrongDimensionIsDimensionMismatch) {
    LocalService service;
    adaptkw::HttpEmbedder e(service.endpoint(), 5);
    EXPECT_THROW(e.embed({"abc"}), adaptkw::DimensionMismatch);
}

TEST(HttpEmbedderTest, UnreachableHostIsBackendUnavailable) {
    adaptkw::HttpEmbedder e("http://127.0.0.1:1", 3);
    EXPECT_THROW(e.embed({"abc"}), adaptkw::BackendUnavailable);
}

TEST(HttpEmbedderTest, ErrorStatusIsBackendUnavailable) {
    httplib::Server server;
    server.Post("/embed", [](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    adaptkw::HttpEmbedder e("http://127.0.0.1:" + std::to_string(port), 3);
    EXPECT_THROW(e.embed({"abc"}), adaptkw::BackendUnavailable);
    server.stop();
    t.join();
}

TEST(HttpEmbedderTest, MalformedBodyIsBackendUnavailable) {
    httplib::Server server;
    server.Post("/embed", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("not json", "text/plain");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    adaptkw::HttpEmbedder e("http://127.0.0.1:" + std::to_string(port), 3);
    EXPECT_THROW(e.embed({"abc"}), adaptkw::BackendUnavailable);
    server.stop();
    t.join();
}

}  // namespace
