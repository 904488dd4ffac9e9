#ifndef CONFREC_LDA_HPP
#define CONFREC_LDA_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "confrec/text_features.hpp"
#include "confrec/types.hpp"

namespace confrec {

struct LdaConfig {
    int n_topics = 400;
    double alpha = 0.5;
    double beta = 0.01;
    int n_iterations = 1000;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Collapsed Gibbs state: count tables plus the per-token assignments they
/// tally. The RNG stream lives in the model so consecutive sweeps continue
/// deterministically from the seed.
struct LdaModel {
    LdaConfig config;
    int vocab_size = 0;
    std::vector<std::vector<int>> tokens;       // per-doc token ids
    std::vector<std::vector<int>> assignments;  // same shape, topic ids
    Eigen::MatrixXi topic_word;                 // K x V
    Eigen::MatrixXi doc_topic;                  // D x K
    Eigen::VectorXi topic_totals;               // K
    std::mt19937_64 rng;

    Eigen::Index n_docs() const { return doc_topic.rows(); }
};

/// Random seeded topic assignment with consistent count tables.
/// Throws EmptyCorpus when no document has a token.
LdaModel lda_init(const std::vector<std::vector<int>>& corpus_tokens,
                  const LdaConfig& config, int vocab_size);

/// One full pass: every token resampled with its own count removed, using
/// weight ((n_dt + alpha) / (len_d - 1 + K alpha)) * ((n_tw + beta) /
/// (n_t + V beta)).
void gibbs_sweep(LdaModel& model);

/// lda_init followed by config.n_iterations sweeps.
LdaModel lda_fit(const std::vector<std::vector<int>>& corpus_tokens,
                 const LdaConfig& config, int vocab_size);

/// Smoothed per-document topic proportions
/// (n_dk + alpha) / (len_d + K alpha); rows sum to 1.
DocTermMatrix doc_topic_matrix(const LdaModel& model,
                               const std::vector<std::string>& doc_ids);

/// Fold-in inference for an unseen document: training topic-word counts are
/// frozen, only the new document's assignments are resampled. Token ids
/// outside [0, V) are skipped. Throws AllTokensUnknown if nothing remains.
Eigen::VectorXd infer_document(const LdaModel& model,
                               const std::vector<int>& tokens,
                               int n_fold_iterations, std::uint64_t seed);

}  // namespace confrec

#endif  // CONFREC_LDA_HPP
