#ifndef CONFREC_SIMILARITY_HPP
#define CONFREC_SIMILARITY_HPP

#include <string>
#include <vector>

#include "confrec/types.hpp"

namespace confrec {

/// euclidean ranks ascending (smaller is better); cosine and pearson rank
/// descending.
enum class SimilarityKind { euclidean, cosine, pearson };

SimilarityKind similarity_from_string(const std::string& s);
std::string to_string(SimilarityKind kind);

double euclidean(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct RankedItem {
    std::string label;
    double score = 0.0;
    bool valid = true;  // false: the measure was undefined for this candidate
};

/// Orders candidate rows by similarity to the query. Candidates for which
/// the measure is undefined (zero vector for cosine, zero variance for
/// pearson) are demoted after all valid ones. Ties break by label.
std::vector<RankedItem> rank_by_similarity(const Eigen::VectorXd& query,
                                           const std::vector<std::string>& labels,
                                           const Eigen::MatrixXd& candidate_rows,
                                           SimilarityKind kind);

/// Sorts (label, score, valid) triples into the canonical ranking order for
/// the measure: valid first, best score first, label as tiebreak.
void sort_ranking(std::vector<RankedItem>& items, SimilarityKind kind);

/// Sort order for scores that are already "bigger is better".
void sort_ranking_descending(std::vector<RankedItem>& items);

}  // namespace confrec

#endif  // CONFREC_SIMILARITY_HPP
