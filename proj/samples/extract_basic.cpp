// Minimal library usage: rank keywords for one document with the
// deterministic hash backend, then again with seed-word blending.

#include <cstdio>

#include <adaptkw/adaptkw.hpp>

int main() {
    adaptkw::HashEmbedder embedder(/*dimension=*/128, /*seed=*/7);

    adaptkw::Document doc{
        "sample-1",
        "Sustainable fisheries management balances aquaculture output with "
        "wild fish stocks. Quota policies and habitat protection keep "
        "coastal fisheries productive for future harvests."};

    adaptkw::PipelineConfig cfg;
    cfg.ngrams = adaptkw::NgramRange{1, 2};
    cfg.stopwords = {"and", "with", "for", "the"};
    cfg.top_k = 5;

    std::puts("plain ranking:");
    for (const auto& kw : adaptkw::extract_keywords(doc, embedder, cfg,
                                                    adaptkw::Mode::kBenchmark))
        std::printf("  %-28s %.4f\n", kw.phrase.c_str(), kw.score);

    auto seeds = adaptkw::make_seed_set({"fishery", "aquaculture"}, embedder);
    cfg.alpha = 0.4;
    std::puts("with seed-word blending:");
    for (const auto& kw : adaptkw::extract_keywords(
             doc, embedder, cfg, adaptkw::Mode::kZeroShot, nullptr, &seeds))
        std::printf("  %-28s %.4f\n", kw.phrase.c_str(), kw.score);
    return 0;
}
