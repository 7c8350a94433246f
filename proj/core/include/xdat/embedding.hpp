#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "xdat/common.hpp"
#include "xdat/corpus.hpp"

namespace xdat {

struct TrainingConfig {
    int dimension = 50;            // d
    int window = 10;               // L
    int negatives = 5;             // eta
    std::uint64_t min_freq = 10;   // f_min
    int epochs = 5;
    double initial_learning_rate = 0.025;
    double noise_exponent = 0.75;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    void validate() const;
};

struct EmbeddingSpace {
    std::string domain_id;
    std::vector<std::string> vocab;  // row i holds the vector of vocab[i]
    Eigen::MatrixXd matrix;          // |vocab| x d, input vectors

    int dimension() const { return static_cast<int>(matrix.cols()); }
    bool contains(const std::string& word) const { return index_.count(word) != 0; }
    Eigen::Index row_of(const std::string& word) const;
    Eigen::RowVectorXd vector_of(const std::string& word) const;

    // Rebuilds the word -> row lookup; call after mutating vocab directly.
    void rebuild_index();

private:
    std::unordered_map<std::string, Eigen::Index> index_;
};

EmbeddingSpace make_space(std::string domain_id, std::vector<std::string> vocab,
                          Eigen::MatrixXd matrix);

struct VocabBuild {
    std::vector<std::string> words;        // descending count, ties lexicographic
    std::vector<std::uint64_t> counts;     // aligned with words
    std::unordered_map<std::string, std::size_t> index;
};

// All lemmas with count >= min_freq. Throws "empty vocabulary" when nothing
// survives the filter.
VocabBuild build_vocab(const Corpus& corpus, std::uint64_t min_freq);

// Cumulative table over the vocabulary with probabilities proportional to
// weight^exponent.
class NoiseDistribution {
public:
    NoiseDistribution(const std::vector<std::uint64_t>& counts, double exponent);
    NoiseDistribution(const std::vector<double>& weights, double exponent);

    std::size_t size() const { return cumulative_.size(); }
    double probability(std::size_t i) const;
    const std::vector<double>& cumulative() const { return cumulative_; }

private:
    std::vector<double> cumulative_;
};

std::size_t sample_negative(const NoiseDistribution& dist, Rng& rng);

// 1 / (1 + exp(-x)); the argument is clamped to +/-30 so extreme inputs
// saturate instead of overflowing.
double sigmoid(double x);

// Uniform in [-0.5/d, 0.5/d], seeded; the trainer starts from exactly this.
Eigen::MatrixXd init_input_vectors(std::size_t vocab_size, int dimension,
                                   std::uint64_t seed);

struct TrainingStats {
    // Mean per-example negative-sampling objective, one entry per epoch.
    std::vector<double> epoch_objective;
    std::uint64_t pair_count = 0;  // positive pairs per epoch
};

// Skip-gram with negative sampling over the min_freq-filtered token stream.
// Windows span [-L, L] around each centre position within document bounds.
// Deterministic when workers == 1.
EmbeddingSpace train_sgns(const Corpus& corpus, const TrainingConfig& config,
                          TrainingStats* stats = nullptr);

// Unit-normalises rows, removes the per-dimension mean, and re-normalises,
// iterating the last two steps to a joint fixed point. Throws naming the
// word when a row collapses to zero norm.
EmbeddingSpace normalize_space(const EmbeddingSpace& space);

double cosine_similarity(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b);

// Text format: "<vocab_size> <d>" header, then one word and d reals per
// line, written with round-trip precision.
void write_embeddings(const EmbeddingSpace& space, const std::string& path);
EmbeddingSpace read_embeddings(const std::string& path, const std::string& domain_id);

} // namespace xdat
