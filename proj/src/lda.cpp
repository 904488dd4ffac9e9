#include "confrec/lda.hpp"

#include <string>

namespace confrec {

namespace {

double next_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from unnormalized weights.
int sample_discrete(const std::vector<double>& weights, std::mt19937_64& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_double(rng) * total;
    double acc = 0.0;
    for (std::size_t t = 0; t < weights.size(); ++t) {
        acc += weights[t];
        if (u < acc) return static_cast<int>(t);
    }
    return static_cast<int>(weights.size()) - 1;
}

}  // namespace

void LdaConfig::validate() const {
    if (n_topics < 2) throw InvalidParam("n_topics must be >= 2");
    if (alpha <= 0.0) throw InvalidParam("alpha must be positive");
    if (beta <= 0.0) throw InvalidParam("beta must be positive");
    if (n_iterations < 1) throw InvalidParam("n_iterations must be >= 1");
}

LdaModel lda_init(const std::vector<std::vector<int>>& corpus_tokens,
                  const LdaConfig& config, int vocab_size) {
    config.validate();
    bool any_token = false;
    for (const auto& doc : corpus_tokens) {
        for (int id : doc) {
            if (id < 0 || id >= vocab_size) {
                throw InvalidParam("token id " + std::to_string(id) +
                                   " outside vocabulary of size " +
                                   std::to_string(vocab_size));
            }
            any_token = true;
        }
    }
    if (!any_token) throw EmptyCorpus("no document has a token");

    LdaModel model;
    model.config = config;
    model.vocab_size = vocab_size;
    model.tokens = corpus_tokens;
    model.rng.seed(config.seed);
    int k = config.n_topics;
    model.topic_word = Eigen::MatrixXi::Zero(k, vocab_size);
    model.doc_topic = Eigen::MatrixXi::Zero(
        static_cast<Eigen::Index>(corpus_tokens.size()), k);
    model.topic_totals = Eigen::VectorXi::Zero(k);
    model.assignments.resize(corpus_tokens.size());

    for (std::size_t d = 0; d < corpus_tokens.size(); ++d) {
        model.assignments[d].resize(corpus_tokens[d].size());
        for (std::size_t n = 0; n < corpus_tokens[d].size(); ++n) {
            int topic = static_cast<int>(model.rng() % static_cast<std::uint64_t>(k));
            model.assignments[d][n] = topic;
            model.doc_topic(static_cast<Eigen::Index>(d), topic) += 1;
            model.topic_word(topic, corpus_tokens[d][n]) += 1;
            model.topic_totals(topic) += 1;
        }
    }
    return model;
}

void gibbs_sweep(LdaModel& model) {
    int k = model.config.n_topics;
    double alpha = model.config.alpha;
    double beta = model.config.beta;
    double v_beta = static_cast<double>(model.vocab_size) * beta;
    std::vector<double> weights(static_cast<std::size_t>(k));

    for (std::size_t d = 0; d < model.tokens.size(); ++d) {
        Eigen::Index di = static_cast<Eigen::Index>(d);
        const auto& doc = model.tokens[d];
        if (doc.empty()) continue;
        double doc_norm = static_cast<double>(doc.size()) - 1.0 +
                          static_cast<double>(k) * alpha;
        for (std::size_t n = 0; n < doc.size(); ++n) {
            int w = doc[n];
            int old_topic = model.assignments[d][n];
            model.doc_topic(di, old_topic) -= 1;
            model.topic_word(old_topic, w) -= 1;
            model.topic_totals(old_topic) -= 1;

            for (int t = 0; t < k; ++t) {
                weights[static_cast<std::size_t>(t)] =
                    (static_cast<double>(model.doc_topic(di, t)) + alpha) / doc_norm *
                    (static_cast<double>(model.topic_word(t, w)) + beta) /
                    (static_cast<double>(model.topic_totals(t)) + v_beta);
            }
            int topic = sample_discrete(weights, model.rng);
            model.assignments[d][n] = topic;
            model.doc_topic(di, topic) += 1;
            model.topic_word(topic, w) += 1;
            model.topic_totals(topic) += 1;
        }
    }
}

LdaModel lda_fit(const std::vector<std::vector<int>>& corpus_tokens,
                 const LdaConfig& config, int vocab_size) {
    LdaModel model = lda_init(corpus_tokens, config, vocab_size);
    for (int it = 0; it < config.n_iterations; ++it) {
        gibbs_sweep(model);
    }
    return model;
}

DocTermMatrix doc_topic_matrix(const LdaModel& model,
                               const std::vector<std::string>& doc_ids) {
    if (doc_ids.size() != model.tokens.size()) {
        throw InvalidParam("doc id count does not match model documents");
    }
    int k = model.config.n_topics;
    double alpha = model.config.alpha;
    DocTermMatrix m;
    m.weighting = Weighting::proportions;
    m.rows = doc_ids;
    for (int t = 0; t < k; ++t) {
        m.cols.push_back("topic" + std::to_string(t));
    }
    m.values.resize(model.n_docs(), k);
    for (Eigen::Index d = 0; d < model.n_docs(); ++d) {
        double len = static_cast<double>(model.tokens[static_cast<std::size_t>(d)].size());
        double norm = len + static_cast<double>(k) * alpha;
        for (int t = 0; t < k; ++t) {
            m.values(d, t) =
                (static_cast<double>(model.doc_topic(d, t)) + alpha) / norm;
        }
    }
    return m;
}

Eigen::VectorXd infer_document(const LdaModel& model,
                               const std::vector<int>& tokens,
                               int n_fold_iterations, std::uint64_t seed) {
    int k = model.config.n_topics;
    std::vector<int> known;
    for (int id : tokens) {
        if (id >= 0 && id < model.vocab_size) known.push_back(id);
    }
    if (known.empty()) {
        throw AllTokensUnknown("document has no in-vocabulary token");
    }

    double alpha = model.config.alpha;
    double beta = model.config.beta;
    double v_beta = static_cast<double>(model.vocab_size) * beta;
    std::mt19937_64 rng(seed);

    std::vector<int> assignment(known.size());
    Eigen::VectorXi local_counts = Eigen::VectorXi::Zero(k);
    for (std::size_t n = 0; n < known.size(); ++n) {
        int topic = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
        assignment[n] = topic;
        local_counts(topic) += 1;
    }

    // Training counts stay frozen; only the new document moves.
    std::vector<double> weights(static_cast<std::size_t>(k));
    for (int it = 0; it < n_fold_iterations; ++it) {
        for (std::size_t n = 0; n < known.size(); ++n) {
            int w = known[n];
            local_counts(assignment[n]) -= 1;
            for (int t = 0; t < k; ++t) {
                weights[static_cast<std::size_t>(t)] =
                    (static_cast<double>(local_counts(t)) + alpha) *
                    (static_cast<double>(model.topic_word(t, w)) + beta) /
                    (static_cast<double>(model.topic_totals(t)) + v_beta);
            }
            int topic = sample_discrete(weights, rng);
            assignment[n] = topic;
            local_counts(topic) += 1;
        }
    }

    double norm = static_cast<double>(known.size()) +
                  static_cast<double>(k) * alpha;
    Eigen::VectorXd proportions(k);
    for (int t = 0; t < k; ++t) {
        proportions(t) = (static_cast<double>(local_counts(t)) + alpha) / norm;
    }
    return proportions;
}

}  // namespace confrec
