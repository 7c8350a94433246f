#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace xdat {

struct RawCorpus {
    std::string domain_id;
    // (doc_id, text), ordered lexicographically by doc_id.
    std::vector<std::pair<std::string, std::string>> documents;
    // Files rejected by UTF-8 validation in skip mode.
    std::vector<std::string> skipped_files;
};

struct IngestOptions {
    // When true, non-UTF-8 files are recorded in skipped_files instead of
    // aborting the ingest.
    bool skip_invalid_utf8 = false;
};

enum class LemmatizerMode { rule_based, passthrough };

struct PreprocessConfig {
    std::set<std::string> stopwords;  // lowercase surface forms
    LemmatizerMode lemmatizer_mode = LemmatizerMode::rule_based;
    std::size_t min_token_length = 2;
    // Number of documents preprocessed concurrently; merged statistics are
    // independent of the worker count.
    unsigned workers = 1;

    static PreprocessConfig defaults();
};

// Token index range [begin, end) into one document's lemma stream.
struct SentenceRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct Corpus {
    std::string domain_id;
    std::vector<std::vector<std::string>> tokens;          // per document
    std::vector<std::vector<SentenceRange>> sentences;     // per document
    std::map<std::string, std::uint64_t> counts;           // lemma -> occurrences
    std::map<std::string, std::uint64_t> doc_freq;         // lemma -> documents
    std::uint64_t total_tokens = 0;

    std::size_t document_count() const { return tokens.size(); }
    std::uint64_t count(const std::string& lemma) const {
        auto it = counts.find(lemma);
        return it == counts.end() ? 0 : it->second;
    }
};

// Reads a directory of UTF-8 .txt files, one document per file;
// doc_id = file name. Throws on a missing directory, an empty corpus, or
// (in strict mode) a non-UTF-8 file.
RawCorpus ingest_corpus(const std::string& path, const std::string& domain_id,
                        const IngestOptions& options = {});

// Per document: sentence-split, whitespace-tokenize, lowercase, drop tokens
// with non-alphanumeric characters, drop stop words, lemmatize, drop tokens
// shorter than min_token_length. Counts and document frequencies are taken
// on the resulting lemma stream.
Corpus preprocess(const RawCorpus& raw, const PreprocessConfig& config);

// One multiset (token list) per sentence containing `lemma`, covering all
// tokens of that sentence including `lemma` itself.
std::vector<std::vector<std::string>> sentence_contexts(const Corpus& corpus,
                                                        const std::string& lemma);

// Cache format: one line per document of space-separated lemmas, each
// sentence terminated by a reserved "</s>" token.
void save_corpus_cache(const Corpus& corpus, const std::string& path);
Corpus load_corpus_cache(const std::string& path, const std::string& domain_id);

// FNV-1a over file names and contents; used to skip unchanged inputs.
std::uint64_t corpus_content_hash(const RawCorpus& raw);

} // namespace xdat
