#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "xdat/embedding.hpp"

namespace xdat {

namespace {

struct TrainerState {
    std::size_t vocab_size = 0;
    int dim = 0;
    std::vector<double> input;    // u, vocab_size x dim
    std::vector<double> output;   // v, vocab_size x dim, discarded after training
    std::vector<std::vector<std::size_t>> streams;  // per-document vocab ids
    std::vector<std::uint64_t> doc_hashes;
    std::uint64_t total_positions = 0;
};

// Processes one positive pair plus its negatives. Returns the Eq.-style
// objective (log sigma(u.v) + sum log sigma(-u.v_neg)) when wanted.
double train_pair(TrainerState& st, std::size_t center, std::size_t context,
                  const NoiseDistribution& noise, Rng& rng, int negatives,
                  double lr, bool want_objective) {
    const int dim = st.dim;
    double* u = st.input.data() + center * dim;
    double grad_u_stack[256];
    std::vector<double> grad_u_heap;
    double* grad_u = grad_u_stack;
    if (dim > 256) {
        grad_u_heap.assign(dim, 0.0);
        grad_u = grad_u_heap.data();
    } else {
        std::fill(grad_u, grad_u + dim, 0.0);
    }

    double objective = 0.0;
    for (int k = 0; k <= negatives; ++k) {
        std::size_t target;
        double label;
        if (k == 0) {
            target = context;
            label = 1.0;
        } else {
            target = sample_negative(noise, rng);
            if (target == context) continue;
            label = 0.0;
        }
        double* v = st.output.data() + target * dim;
        double dot = 0.0;
        for (int j = 0; j < dim; ++j) dot += u[j] * v[j];
        const double sig = sigmoid(dot);
        if (want_objective)
            objective += label == 1.0 ? std::log(std::max(sig, 1e-300))
                                      : std::log(std::max(1.0 - sig, 1e-300));
        const double g = (label - sig) * lr;
        for (int j = 0; j < dim; ++j) grad_u[j] += g * v[j];
        for (int j = 0; j < dim; ++j) v[j] += g * u[j];
    }
    for (int j = 0; j < dim; ++j) u[j] += grad_u[j];
    return objective;
}

struct EpochTotals {
    double objective = 0.0;
    std::uint64_t pairs = 0;
};

// One pass over one document. `step` is the global epoch-position counter
// driving the linear learning-rate decay down to 5% of the initial rate.
EpochTotals train_document(TrainerState& st, std::size_t doc,
                           const TrainingConfig& config,
                           const NoiseDistribution& noise, int epoch,
                           std::atomic<std::uint64_t>& step,
                           std::uint64_t total_steps, bool want_objective) {
    const auto& stream = st.streams[doc];
    // Seed depends on document content and epoch, not on document order.
    Rng rng(splitmix64(config.seed ^ st.doc_hashes[doc] ^
                       splitmix64(static_cast<std::uint64_t>(epoch) + 1)));
    EpochTotals totals;
    const auto n = static_cast<std::ptrdiff_t>(stream.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        const std::uint64_t s = step.fetch_add(1, std::memory_order_relaxed);
        const double lr = config.initial_learning_rate *
                          (1.0 - 0.95 * static_cast<double>(s) /
                                     static_cast<double>(total_steps));
        for (std::ptrdiff_t off = -config.window; off <= config.window; ++off) {
            if (off == 0) continue;
            const std::ptrdiff_t c = t + off;
            if (c < 0 || c >= n) continue;
            totals.objective += train_pair(st, stream[t], stream[c], noise, rng,
                                           config.negatives, lr, want_objective);
            ++totals.pairs;
        }
    }
    return totals;
}

} // namespace

EmbeddingSpace train_sgns(const Corpus& corpus, const TrainingConfig& config,
                          TrainingStats* stats) {
    config.validate();
    const VocabBuild vocab = build_vocab(corpus, config.min_freq);

    TrainerState st;
    st.vocab_size = vocab.words.size();
    st.dim = config.dimension;
    {
        const Eigen::MatrixXd init =
            init_input_vectors(st.vocab_size, st.dim, config.seed);
        st.input.resize(st.vocab_size * st.dim);
        for (std::size_t i = 0; i < st.vocab_size; ++i)
            for (int j = 0; j < st.dim; ++j)
                st.input[i * st.dim + j] = init(static_cast<Eigen::Index>(i), j);
    }
    st.output.assign(st.vocab_size * st.dim, 0.0);

    st.streams.reserve(corpus.tokens.size());
    st.doc_hashes.reserve(corpus.tokens.size());
    for (const auto& doc : corpus.tokens) {
        std::vector<std::size_t> stream;
        stream.reserve(doc.size());
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& token : doc) {
            auto it = vocab.index.find(token);
            if (it == vocab.index.end()) continue;  // out-of-vocabulary: skipped
            stream.push_back(it->second);
            h = fnv1a64(token, h);
            h = fnv1a64(" ", h);
        }
        st.total_positions += stream.size();
        st.streams.push_back(std::move(stream));
        st.doc_hashes.push_back(h);
    }

    const NoiseDistribution noise(vocab.counts, config.noise_exponent);
    const std::uint64_t total_steps =
        std::max<std::uint64_t>(1, st.total_positions * config.epochs);
    std::atomic<std::uint64_t> step{0};

    const bool want_objective = stats != nullptr && config.workers <= 1;
    if (stats) {
        stats->epoch_objective.clear();
        stats->pair_count = 0;
    }

    if (config.workers <= 1) {
        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            EpochTotals totals;
            for (std::size_t doc = 0; doc < st.streams.size(); ++doc) {
                const EpochTotals t = train_document(st, doc, config, noise, epoch,
                                                     step, total_steps, want_objective);
                totals.objective += t.objective;
                totals.pairs += t.pairs;
            }
            if (stats) {
                stats->epoch_objective.push_back(
                    totals.pairs ? totals.objective / totals.pairs : 0.0);
                stats->pair_count = totals.pairs;
            }
        }
    } else {
        // Hogwild: workers share the weight arrays without locks, so runs
        // are not reproducible. Each worker owns a fixed document shard.
        std::vector<std::thread> pool;
        const unsigned workers = config.workers;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int epoch = 0; epoch < config.epochs; ++epoch)
                    for (std::size_t doc = w; doc < st.streams.size(); doc += workers)
                        train_document(st, doc, config, noise, epoch, step,
                                       total_steps, false);
            });
        }
        for (auto& t : pool) t.join();
    }

    Eigen::MatrixXd matrix(st.vocab_size, st.dim);
    for (std::size_t i = 0; i < st.vocab_size; ++i)
        for (int j = 0; j < st.dim; ++j)
            matrix(static_cast<Eigen::Index>(i), j) = st.input[i * st.dim + j];
    if (!matrix.allFinite()) throw Error("training produced non-finite vectors");
    return make_space(corpus.domain_id, vocab.words, std::move(matrix));
}

} // namespace xdat
