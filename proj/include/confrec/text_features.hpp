#ifndef CONFREC_TEXT_FEATURES_HPP
#define CONFREC_TEXT_FEATURES_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "confrec/types.hpp"

namespace confrec {

/// Lowercase, split on non-alphanumeric, drop tokens shorter than 2
/// characters and stop-words. No stemming.
std::vector<std::string> tokenize(std::string_view text);

struct Vocabulary {
    std::vector<std::string> terms;  // sorted, unique
    std::vector<int> doc_freq;       // per-term count of documents containing it
    int n_docs = 0;                  // documents the vocabulary was built from

    /// Index of a term, or -1 if out of vocabulary.
    int index_of(const std::string& term) const;
    std::size_t size() const { return terms.size(); }

    void rebuild_index();

private:
    std::unordered_map<std::string, int> index_;
};

/// Terms occurring in at least min_df documents of the corpus, sorted.
/// Throws EmptyVocabulary if nothing survives.
Vocabulary build_vocabulary(const Corpus& corpus, int min_df);

/// TF_i = f_i / max_z f_z. Throws AllZeroDocument.
Eigen::VectorXd term_frequency(const Eigen::VectorXd& doc_counts);

/// IDF_i = ln(N / n_i) with N = n_docs. Throws InvalidCounts unless
/// n_docs >= doc_freq[t] >= 1 for all terms.
Eigen::VectorXd inverse_document_frequency(const Vocabulary& vocab, int n_docs);

enum class Weighting { count, tfidf, proportions };

struct DocTermMatrix {
    std::vector<std::string> rows;  // paper ids, corpus order
    std::vector<std::string> cols;  // vocabulary terms (or topic labels)
    Eigen::MatrixXd values;
    Weighting weighting = Weighting::count;
    std::vector<Eigen::Index> zero_rows;  // documents with no usable token
};

/// Raw in-vocabulary token counts per document.
DocTermMatrix count_matrix(const Corpus& corpus, const Vocabulary& vocab);

/// TF x IDF weights. IDF uses the document count the vocabulary was built
/// from, so test corpora are weighted consistently with training. Documents
/// with no in-vocabulary token become all-zero rows and are flagged in
/// zero_rows, not errors.
DocTermMatrix tfidf_matrix(const Corpus& corpus, const Vocabulary& vocab);

/// Per-document in-vocabulary token id lists (out-of-vocabulary dropped),
/// the representation the topic model consumes.
std::vector<std::vector<int>> to_token_ids(const Corpus& corpus,
                                           const Vocabulary& vocab);

/// Words x conferences table: column j is the centroid (arithmetic mean) of
/// the paper rows published in venue j. Venues with no papers get a zero
/// column and are reported through empty_venues when given.
ContingencyTable word_conference_matrix(
    const DocTermMatrix& paper_matrix, const Corpus& corpus,
    std::vector<std::string>* empty_venues = nullptr);

}  // namespace confrec

#endif  // CONFREC_TEXT_FEATURES_HPP
