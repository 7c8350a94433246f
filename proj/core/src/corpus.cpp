#include "xdat/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "xdat/common.hpp"
#include "xdat/text.hpp"

namespace fs = std::filesystem;

namespace xdat {

PreprocessConfig PreprocessConfig::defaults() {
    PreprocessConfig config;
    config.stopwords = default_stopwords();
    return config;
}

RawCorpus ingest_corpus(const std::string& path, const std::string& domain_id,
                        const IngestOptions& options) {
    if (domain_id.empty()) throw Error("empty domain id");
    if (!fs::exists(path)) throw Error("corpus directory not found: " + path);
    if (!fs::is_directory(path)) throw Error("not a directory: " + path);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return a.filename().string() < b.filename().string();
    });

    RawCorpus raw;
    raw.domain_id = domain_id;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw Error("cannot read corpus file: " + file.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        if (!valid_utf8(text)) {
            if (options.skip_invalid_utf8) {
                raw.skipped_files.push_back(file.filename().string());
                continue;
            }
            throw Error("not valid UTF-8: " + file.filename().string());
        }
        raw.documents.emplace_back(file.filename().string(), std::move(text));
    }
    if (raw.documents.empty() && raw.skipped_files.empty())
        throw Error("empty corpus: " + path);
    if (raw.documents.empty())
        throw Error("empty corpus after skipping invalid files: " + path);
    return raw;
}

namespace {

struct DocumentResult {
    std::vector<std::string> tokens;
    std::vector<SentenceRange> sentences;
};

DocumentResult preprocess_document(const std::string& text,
                                   const PreprocessConfig& config) {
    DocumentResult out;
    for (const auto& sentence : split_sentences(text)) {
        const std::size_t begin = out.tokens.size();
        for (const auto& token : split_whitespace(sentence)) {
            std::string lower = to_lower(token);
            if (!is_alnum_word(lower)) continue;
            if (config.stopwords.count(lower)) continue;
            std::string lemma = config.lemmatizer_mode == LemmatizerMode::rule_based
                                    ? lemmatize_rule_based(lower)
                                    : std::move(lower);
            if (lemma.size() < config.min_token_length) continue;
            out.tokens.push_back(std::move(lemma));
        }
        if (out.tokens.size() > begin)
            out.sentences.push_back({begin, out.tokens.size()});
    }
    return out;
}

} // namespace

Corpus preprocess(const RawCorpus& raw, const PreprocessConfig& config) {
    if (config.min_token_length < 1) throw Error("min_token_length must be >= 1");
    for (const auto& word : config.stopwords) {
        if (word != to_lower(word))
            throw Error("stop-word list entry not lowercase: " + word);
    }

    const std::size_t n_docs = raw.documents.size();
    std::vector<DocumentResult> results(n_docs);
    const unsigned workers =
        std::max<unsigned>(1, std::min<unsigned>(config.workers, n_docs ? n_docs : 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n_docs; ++i)
            results[i] = preprocess_document(raw.documents[i].second, config);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n_docs; i += workers)
                    results[i] = preprocess_document(raw.documents[i].second, config);
            });
        }
        for (auto& t : pool) t.join();
    }

    Corpus corpus;
    corpus.domain_id = raw.domain_id;
    corpus.tokens.resize(n_docs);
    corpus.sentences.resize(n_docs);
    // Merging in document order keeps the result independent of worker count.
    for (std::size_t i = 0; i < n_docs; ++i) {
        corpus.tokens[i] = std::move(results[i].tokens);
        corpus.sentences[i] = std::move(results[i].sentences);
        std::set<std::string> seen;
        for (const auto& lemma : corpus.tokens[i]) {
            ++corpus.counts[lemma];
            ++corpus.total_tokens;
            seen.insert(lemma);
        }
        for (const auto& lemma : seen) ++corpus.doc_freq[lemma];
    }
    return corpus;
}

std::vector<std::vector<std::string>> sentence_contexts(const Corpus& corpus,
                                                        const std::string& lemma) {
    std::vector<std::vector<std::string>> contexts;
    for (std::size_t doc = 0; doc < corpus.tokens.size(); ++doc) {
        const auto& tokens = corpus.tokens[doc];
        for (const auto& range : corpus.sentences[doc]) {
            bool contains = false;
            for (std::size_t i = range.begin; i < range.end; ++i) {
                if (tokens[i] == lemma) {
                    contains = true;
                    break;
                }
            }
            if (contains)
                contexts.emplace_back(tokens.begin() + range.begin,
                                      tokens.begin() + range.end);
        }
    }
    return contexts;
}

void save_corpus_cache(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write corpus cache: " + path);
    for (std::size_t doc = 0; doc < corpus.tokens.size(); ++doc) {
        const auto& tokens = corpus.tokens[doc];
        bool first = true;
        for (const auto& range : corpus.sentences[doc]) {
            for (std::size_t i = range.begin; i < range.end; ++i) {
                if (!first) out << ' ';
                out << tokens[i];
                first = false;
            }
            if (!first) out << ' ';
            out << "</s>";
            first = false;
        }
        out << '\n';
    }
    if (!out) throw Error("failed writing corpus cache: " + path);
}

Corpus load_corpus_cache(const std::string& path, const std::string& domain_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open corpus cache: " + path);
    Corpus corpus;
    corpus.domain_id = domain_id;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> tokens;
        std::vector<SentenceRange> sentences;
        std::size_t begin = 0;
        for (auto& tok : split_whitespace(line)) {
            if (tok == "</s>") {
                if (tokens.size() > begin) sentences.push_back({begin, tokens.size()});
                begin = tokens.size();
            } else {
                tokens.push_back(std::move(tok));
            }
        }
        if (tokens.size() > begin)  // trailing sentence without a marker
            sentences.push_back({begin, tokens.size()});
        std::set<std::string> seen;
        for (const auto& lemma : tokens) {
            ++corpus.counts[lemma];
            ++corpus.total_tokens;
            seen.insert(lemma);
        }
        for (const auto& lemma : seen) ++corpus.doc_freq[lemma];
        corpus.tokens.push_back(std::move(tokens));
        corpus.sentences.push_back(std::move(sentences));
    }
    return corpus;
}

std::uint64_t corpus_content_hash(const RawCorpus& raw) {
    std::uint64_t h = fnv1a64(raw.domain_id);
    for (const auto& [doc_id, text] : raw.documents) {
        h = fnv1a64(doc_id, h);
        h = fnv1a64(text, h);
    }
    return h;
}

} // namespace xdat
