// Command-line front end: extract keywords from one document, mine popular
// keywords, train an adapter on a labeled corpus, or run the mode
// comparison. stdout carries only data; diagnostics go to stderr.
//
// Exit codes: 0 success, 2 configuration/input error, 3 embedding backend
// error, 4 no candidates in the document, 5 no usable training pairs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <adaptkw/adaptkw.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBackend = 3;
constexpr int kExitNoCandidates = 4;
constexpr int kExitNoTrainingPairs = 5;

struct CommonOptions {
    std::string backend = "test";
    std::string store_path;
    std::string endpoint;
    size_t dim = 384;
    uint64_t seed = 0;
    size_t ngram_min = 1;
    size_t ngram_max = 1;
    std::string stopwords_path;
    size_t top_k = 10;
    double alpha = 0.3;
    double diversity = 0.0;
    std::vector<std::string> seed_words;
    std::string seed_words_file;
    std::string adapter_path;
    double p = 0.10;
    size_t epochs = 50;
    double lr = 1e-3;
    std::string modes = "benchmark,zero-shot,few-shot,zero+few-shot";
    bool eval_on_train = false;
    bool stem = false;
};

void add_backend_flags(CLI::App& cmd, CommonOptions& opt) {
    cmd.add_option("--backend", opt.backend, "Embedding backend")
        ->check(CLI::IsMember({"test", "file", "http"}))
        ->capture_default_str();
    cmd.add_option("--store", opt.store_path,
                   "Precomputed embedding store (JSONL) for --backend file");
    cmd.add_option("--endpoint", opt.endpoint,
                   "Service base URL for --backend http");
    cmd.add_option("--dim", opt.dim, "Embedding dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--seed", opt.seed, "RNG seed (test backend and training)")
        ->capture_default_str();
}

void add_extraction_flags(CLI::App& cmd, CommonOptions& opt) {
    cmd.add_option("--ngram-min", opt.ngram_min, "Minimum candidate n-gram length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--ngram-max", opt.ngram_max, "Maximum candidate n-gram length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--stopwords", opt.stopwords_path,
                   "Stopword file, one word per line");
    cmd.add_option("--top-k", opt.top_k, "Keywords to return per document")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--diversity", opt.diversity,
                   "MMR diversity trade-off; 0 disables MMR")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

void add_adaptation_flags(CLI::App& cmd, CommonOptions& opt) {
    cmd.add_option("--alpha", opt.alpha, "Seed-word blend strength")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--seed-words", opt.seed_words, "Domain seed words");
    cmd.add_option("--seed-words-file", opt.seed_words_file,
                   "File of seed words, one per line");
    cmd.add_option("--adapter", opt.adapter_path, "Adapter weights file");
}

void add_protocol_flags(CLI::App& cmd, CommonOptions& opt) {
    cmd.add_option("--p", opt.p, "Popularity threshold / few-shot budget fraction")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
        ->capture_default_str();
}

void add_training_flags(CLI::App& cmd, CommonOptions& opt) {
    cmd.add_option("--epochs", opt.epochs, "Training epochs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--lr", opt.lr, "Learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

std::unique_ptr<adaptkw::Embedder> make_embedder(const CommonOptions& opt) {
    if (opt.backend == "test")
        return std::make_unique<adaptkw::HashEmbedder>(opt.dim, opt.seed);
    if (opt.backend == "file") {
        if (opt.store_path.empty())
            throw adaptkw::ConfigError("--backend file requires --store");
        return std::make_unique<adaptkw::StoreEmbedder>(
            adaptkw::PrecomputedStore::load(opt.store_path));
    }
    if (opt.endpoint.empty())
        throw adaptkw::ConfigError("--backend http requires --endpoint");
    return std::make_unique<adaptkw::HttpEmbedder>(opt.endpoint, opt.dim);
}

adaptkw::PipelineConfig make_pipeline_config(const CommonOptions& opt) {
    adaptkw::PipelineConfig cfg;
    cfg.ngrams = adaptkw::NgramRange{opt.ngram_min, opt.ngram_max};
    if (!opt.stopwords_path.empty())
        cfg.stopwords = adaptkw::load_stopwords(opt.stopwords_path);
    cfg.top_k = opt.top_k;
    cfg.alpha = opt.alpha;
    cfg.diversity = opt.diversity;
    cfg.stem = opt.stem;
    cfg.validate();
    return cfg;
}

std::vector<std::string> collect_seed_words(const CommonOptions& opt) {
    std::vector<std::string> words = opt.seed_words;
    if (!opt.seed_words_file.empty()) {
        auto from_file = adaptkw::load_seed_words(opt.seed_words_file);
        words.insert(words.end(), from_file.begin(), from_file.end());
    }
    return words;
}

std::string read_document_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw adaptkw::ConfigError("cannot open document file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_extract(const CommonOptions& opt, const std::string& doc_path) {
    auto embedder = make_embedder(opt);
    auto cfg = make_pipeline_config(opt);

    std::optional<adaptkw::AdapterWeights> adapter;
    if (!opt.adapter_path.empty())
        adapter = adaptkw::load_adapter(opt.adapter_path).weights;

    std::optional<adaptkw::SeedSet> seeds;
    auto seed_words = collect_seed_words(opt);
    if (!seed_words.empty())
        seeds = adaptkw::make_seed_set(seed_words, *embedder);

    adaptkw::Mode mode = adaptkw::Mode::kBenchmark;
    if (adapter && seeds)
        mode = adaptkw::Mode::kZeroFewShot;
    else if (adapter)
        mode = adaptkw::Mode::kFewShot;
    else if (seeds)
        mode = adaptkw::Mode::kZeroShot;

    adaptkw::Document doc{doc_path == "-" ? "stdin" : doc_path,
                          read_document_text(doc_path)};
    auto ranked = adaptkw::extract_keywords(
        doc, *embedder, cfg, mode, adapter ? &*adapter : nullptr,
        seeds ? &*seeds : nullptr);
    for (size_t i = 0; i < ranked.size(); ++i)
        std::printf("%zu\t%s\t%.4f\n", i + 1, ranked[i].phrase.c_str(),
                    ranked[i].score);
    return kExitOk;
}

int cmd_popular(const CommonOptions& opt, const std::string& corpus_path) {
    auto corpus = adaptkw::load_corpus(corpus_path);
    adaptkw::ProtocolConfig cfg{opt.p};
    for (const auto& pk : adaptkw::popular_keywords(corpus, cfg))
        std::printf("%s\t%zu\n", pk.keyword.c_str(), pk.doc_frequency);
    return kExitOk;
}

int cmd_adapt(const CommonOptions& opt, const std::string& corpus_path) {
    if (opt.adapter_path.empty())
        throw adaptkw::ConfigError("adapt requires --adapter (output path)");
    auto corpus = adaptkw::load_corpus(corpus_path);
    adaptkw::ProtocolConfig protocol{opt.p};

    auto popular = adaptkw::popular_keywords(corpus, protocol);
    std::vector<std::string> popular_words;
    popular_words.reserve(popular.size());
    for (const auto& pk : popular) popular_words.push_back(pk.keyword);
    std::fprintf(stderr, "%zu popular keyword%s above threshold\n",
                 popular_words.size(), popular_words.size() == 1 ? "" : "s");

    auto selection =
        adaptkw::select_fewshot_documents(corpus, popular_words, protocol);
    std::fprintf(stderr, "%zu training pair%s selected\n",
                 selection.pairs.size(),
                 selection.pairs.size() == 1 ? "" : "s");
    if (selection.pairs.empty())
        throw adaptkw::NoTrainingPairs("selection produced no training pairs");

    auto embedder = make_embedder(opt);
    adaptkw::StopwordSet stopwords;
    if (!opt.stopwords_path.empty())
        stopwords = adaptkw::load_stopwords(opt.stopwords_path);
    adaptkw::TrainConfig train_cfg;
    train_cfg.learning_rate = opt.lr;
    train_cfg.epochs = opt.epochs;
    train_cfg.rng_seed = opt.seed;
    auto result = adaptkw::train_adapter(
        selection.pairs, *embedder,
        adaptkw::NgramRange{opt.ngram_min, opt.ngram_max}, stopwords,
        train_cfg);
    for (size_t e = 0; e < result.epoch_mean_loss.size(); ++e)
        std::printf("%zu\t%.10g\n", e + 1, result.epoch_mean_loss[e]);

    adaptkw::save_adapter(result.weights, opt.adapter_path,
                          embedder->model_name());
    std::fprintf(stderr, "adapter written to %s\n", opt.adapter_path.c_str());
    return kExitOk;
}

int cmd_eval(const CommonOptions& opt, const std::string& corpus_path) {
    auto corpus = adaptkw::load_corpus(corpus_path);
    adaptkw::ProtocolConfig protocol{opt.p};
    auto cfg = make_pipeline_config(opt);
    auto embedder = make_embedder(opt);

    std::vector<adaptkw::Mode> modes;
    {
        std::stringstream ss(opt.modes);
        std::string token;
        while (std::getline(ss, token, ','))
            if (!token.empty()) modes.push_back(adaptkw::parse_mode(token));
        if (modes.empty())
            throw adaptkw::ConfigError("--modes must name at least one mode");
    }
    const bool needs_adapter =
        std::any_of(modes.begin(), modes.end(), [](adaptkw::Mode m) {
            return m == adaptkw::Mode::kFewShot ||
                   m == adaptkw::Mode::kZeroFewShot;
        });
    const bool needs_seeds =
        std::any_of(modes.begin(), modes.end(), [](adaptkw::Mode m) {
            return m == adaptkw::Mode::kZeroShot ||
                   m == adaptkw::Mode::kZeroFewShot;
        });

    auto popular = adaptkw::popular_keywords(corpus, protocol);
    std::vector<std::string> popular_words;
    popular_words.reserve(popular.size());
    for (const auto& pk : popular) popular_words.push_back(pk.keyword);
    auto selection =
        adaptkw::select_fewshot_documents(corpus, popular_words, protocol);

    std::vector<size_t> split;
    if (opt.eval_on_train) {
        split.resize(corpus.entries.size());
        for (size_t i = 0; i < split.size(); ++i) split[i] = i;
    } else {
        split = adaptkw::heldout_split(corpus, selection.selected);
    }

    std::optional<adaptkw::SeedSet> seeds;
    if (needs_seeds) {
        auto words = collect_seed_words(opt);
        if (words.empty()) {
            if (popular_words.empty())
                throw adaptkw::EmptySeedSet(
                    "zero-shot modes need seed words, and no gold keyword "
                    "clears the popularity threshold for auto-seeding");
            words = popular_words;
            std::fprintf(stderr, "auto-seeding with %zu popular keyword%s\n",
                         words.size(), words.size() == 1 ? "" : "s");
        }
        seeds = adaptkw::make_seed_set(words, *embedder);
    }

    std::optional<adaptkw::AdapterWeights> adapter;
    if (needs_adapter) {
        if (!opt.adapter_path.empty()) {
            adapter = adaptkw::load_adapter(opt.adapter_path).weights;
        } else {
            std::fprintf(stderr, "training adapter on %zu pair%s\n",
                         selection.pairs.size(),
                         selection.pairs.size() == 1 ? "" : "s");
            if (selection.pairs.empty())
                throw adaptkw::NoTrainingPairs(
                    "selection produced no training pairs");
            adaptkw::TrainConfig train_cfg;
            train_cfg.learning_rate = opt.lr;
            train_cfg.epochs = opt.epochs;
            train_cfg.rng_seed = opt.seed;
            adapter = adaptkw::train_adapter(
                          selection.pairs, *embedder, cfg.ngrams,
                          cfg.stopwords, train_cfg)
                          .weights;
        }
    }

    std::vector<adaptkw::EvalReport> reports;
    reports.reserve(modes.size());
    for (adaptkw::Mode mode : modes)
        reports.push_back(adaptkw::evaluate_corpus(
            corpus, split, *embedder, cfg, mode,
            adapter ? &*adapter : nullptr, seeds ? &*seeds : nullptr));

    std::fputs(adaptkw::render_table(reports).c_str(), stdout);
    std::fputs(adaptkw::render_machine_lines(reports).c_str(), stdout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Domain-adaptive keyword extraction"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string input_path;

    CLI::App* extract = app.add_subcommand(
        "extract", "Extract ranked keywords from one document ('-' = stdin)");
    extract->add_option("document", input_path, "Document file or '-'")
        ->required();
    add_backend_flags(*extract, opt);
    add_extraction_flags(*extract, opt);
    add_adaptation_flags(*extract, opt);

    CLI::App* popular = app.add_subcommand(
        "popular", "List gold keywords above the popularity threshold");
    popular->add_option("corpus", input_path, "Corpus JSONL file")->required();
    add_protocol_flags(*popular, opt);

    CLI::App* adapt = app.add_subcommand(
        "adapt", "Train adapter weights on the corpus' few-shot selection");
    adapt->add_option("corpus", input_path, "Corpus JSONL file")->required();
    add_backend_flags(*adapt, opt);
    add_extraction_flags(*adapt, opt);
    add_protocol_flags(*adapt, opt);
    add_training_flags(*adapt, opt);
    adapt->add_option("--adapter", opt.adapter_path,
                      "Output path for trained weights")
        ->required();

    CLI::App* eval = app.add_subcommand(
        "eval", "Compare extraction modes on the held-out split");
    eval->add_option("corpus", input_path, "Corpus JSONL file")->required();
    add_backend_flags(*eval, opt);
    add_extraction_flags(*eval, opt);
    add_adaptation_flags(*eval, opt);
    add_protocol_flags(*eval, opt);
    add_training_flags(*eval, opt);
    eval->add_option("--modes", opt.modes, "Comma-separated mode list")
        ->capture_default_str();
    eval->add_flag("--eval-on-train", opt.eval_on_train,
                   "Keep training documents in the evaluation split");
    eval->add_flag("--stem", opt.stem, "Plural-folded keyword matching");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    }

    try {
        if (extract->parsed()) return cmd_extract(opt, input_path);
        if (popular->parsed()) return cmd_popular(opt, input_path);
        if (adapt->parsed()) return cmd_adapt(opt, input_path);
        return cmd_eval(opt, input_path);
    } catch (const adaptkw::EmptyCandidateSet& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoCandidates;
    } catch (const adaptkw::NoTrainingPairs& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoTrainingPairs;
    } catch (const adaptkw::NoRelevantCandidates& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoTrainingPairs;
    } catch (const adaptkw::BackendUnavailable& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBackend;
    } catch (const adaptkw::MissingEmbedding& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBackend;
    } catch (const adaptkw::ZeroVector& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBackend;
    } catch (const adaptkw::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
