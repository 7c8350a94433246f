#include "xdat/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xdat {

void TrainingConfig::validate() const {
    if (dimension < 2) throw Error("dimension must be >= 2");
    if (window < 1) throw Error("window must be >= 1");
    if (negatives < 1) throw Error("negatives must be >= 1");
    if (min_freq < 1) throw Error("min_freq must be >= 1");
    if (epochs < 1) throw Error("epochs must be >= 1");
    if (initial_learning_rate <= 0.0 || initial_learning_rate > 1.0)
        throw Error("initial_learning_rate must be in (0, 1]");
}

Eigen::Index EmbeddingSpace::row_of(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) throw Error("word not in vocabulary: " + word);
    return it->second;
}

Eigen::RowVectorXd EmbeddingSpace::vector_of(const std::string& word) const {
    return matrix.row(row_of(word));
}

void EmbeddingSpace::rebuild_index() {
    index_.clear();
    index_.reserve(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i)
        index_.emplace(vocab[i], static_cast<Eigen::Index>(i));
}

EmbeddingSpace make_space(std::string domain_id, std::vector<std::string> vocab,
                          Eigen::MatrixXd matrix) {
    if (static_cast<std::size_t>(matrix.rows()) != vocab.size())
        throw Error("vocab size does not match matrix rows");
    EmbeddingSpace space;
    space.domain_id = std::move(domain_id);
    space.vocab = std::move(vocab);
    space.matrix = std::move(matrix);
    space.rebuild_index();
    return space;
}

VocabBuild build_vocab(const Corpus& corpus, std::uint64_t min_freq) {
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (const auto& [word, count] : corpus.counts) {
        if (count >= min_freq) kept.emplace_back(word, count);
    }
    if (kept.empty()) throw Error("empty vocabulary after min_freq filter");
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    VocabBuild build;
    build.words.reserve(kept.size());
    build.counts.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        build.words.push_back(kept[i].first);
        build.counts.push_back(kept[i].second);
        build.index.emplace(kept[i].first, i);
    }
    return build;
}

NoiseDistribution::NoiseDistribution(const std::vector<std::uint64_t>& counts,
                                     double exponent)
    : NoiseDistribution(std::vector<double>(counts.begin(), counts.end()), exponent) {}

NoiseDistribution::NoiseDistribution(const std::vector<double>& weights,
                                     double exponent) {
    if (weights.empty()) throw Error("noise distribution over empty vocabulary");
    cumulative_.resize(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) throw Error("noise weight must be positive");
        total += std::pow(weights[i], exponent);
        cumulative_[i] = total;
    }
    for (auto& c : cumulative_) c /= total;
    cumulative_.back() = 1.0;
}

double NoiseDistribution::probability(std::size_t i) const {
    if (i >= cumulative_.size()) throw Error("noise index out of range");
    return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
}

std::size_t sample_negative(const NoiseDistribution& dist, Rng& rng) {
    const double u = next_double(rng);
    const auto& cum = dist.cumulative();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return static_cast<std::size_t>(it - cum.begin());
}

double sigmoid(double x) {
    const double clamped = std::clamp(x, -30.0, 30.0);
    return 1.0 / (1.0 + std::exp(-clamped));
}

Eigen::MatrixXd init_input_vectors(std::size_t vocab_size, int dimension,
                                   std::uint64_t seed) {
    Rng rng(splitmix64(seed));
    Eigen::MatrixXd m(vocab_size, dimension);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = (next_double(rng) - 0.5) / dimension;
    return m;
}

EmbeddingSpace normalize_space(const EmbeddingSpace& space) {
    Eigen::MatrixXd m = space.matrix;
    const auto unit_rows = [&](Eigen::MatrixXd& x) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const double norm = x.row(i).norm();
            if (norm < 1e-12)
                throw Error("zero-norm row: " + space.vocab[static_cast<std::size_t>(i)]);
            x.row(i) /= norm;
        }
    };
    unit_rows(m);
    // Alternate mean centering with row normalization until both hold at
    // once; a single pass leaves a residual mean of order |mean|/d.
    for (int iter = 0; iter < 100; ++iter) {
        const Eigen::RowVectorXd mean = m.colwise().mean();
        if (mean.norm() < 1e-13) break;
        m.rowwise() -= mean;
        unit_rows(m);
    }
    return make_space(space.domain_id, space.vocab, std::move(m));
}

double cosine_similarity(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw Error("cosine of zero vector");
    return a.dot(b) / (na * nb);
}

void write_embeddings(const EmbeddingSpace& space, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write embedding file: " + path);
    out << space.vocab.size() << ' ' << space.dimension() << '\n';
    for (std::size_t i = 0; i < space.vocab.size(); ++i) {
        out << space.vocab[i];
        for (Eigen::Index j = 0; j < space.matrix.cols(); ++j)
            out << ' ' << format_double(space.matrix(static_cast<Eigen::Index>(i), j));
        out << '\n';
    }
    if (!out) throw Error("failed writing embedding file: " + path);
}

EmbeddingSpace read_embeddings(const std::string& path, const std::string& domain_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open embedding file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw Error("empty embedding file: " + path);
    std::istringstream hs(header);
    std::size_t vocab_size = 0;
    int dim = 0;
    if (!(hs >> vocab_size >> dim) || dim <= 0)
        throw Error("bad embedding header in " + path);

    std::vector<std::string> vocab;
    vocab.reserve(vocab_size);
    Eigen::MatrixXd matrix(vocab_size, dim);
    std::string line;
    std::size_t row = 0;
    while (row < vocab_size && std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t pos = line.find(' ');
        if (pos == std::string::npos)
            throw Error("bad embedding line in " + path);
        vocab.push_back(line.substr(0, pos));
        std::string_view rest(line);
        rest.remove_prefix(pos);
        for (int j = 0; j < dim; ++j) {
            while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
            std::size_t end = rest.find(' ');
            const std::string_view field =
                end == std::string_view::npos ? rest : rest.substr(0, end);
            if (field.empty())
                throw Error("truncated embedding line in " + path);
            matrix(static_cast<Eigen::Index>(row), j) = parse_double(field);
            rest.remove_prefix(field.size());
        }
        ++row;
    }
    if (row != vocab_size)
        throw Error("embedding file shorter than its header claims: " + path);
    if (!matrix.allFinite()) throw Error("non-finite embedding entries in " + path);
    return make_space(domain_id, std::move(vocab), std::move(matrix));
}

} // namespace xdat
