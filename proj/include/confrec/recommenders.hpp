#ifndef CONFREC_RECOMMENDERS_HPP
#define CONFREC_RECOMMENDERS_HPP

#include <map>
#include <string>
#include <vector>

#include "confrec/ca.hpp"
#include "confrec/similarity.hpp"
#include "confrec/text_features.hpp"
#include "confrec/types.hpp"

namespace confrec {

enum class Method {
    m1_author_ca,
    m2_composed_ca,
    m3_linear_map,
    m4_content,
    m5_collaborative,
    m6_hybrid,
};

enum class Representation { tfidf, topics, none };

Method method_from_string(const std::string& s);
std::string to_string(Method method);
Representation representation_from_string(const std::string& s);
std::string to_string(Representation rep);

/// One query's result: a full permutation of the venue catalog with scores.
struct RankedRecommendation {
    std::string paper_id;
    std::vector<RankedItem> ranking;
    Method method = Method::m4_content;
    Representation representation = Representation::none;
    bool degenerate = false;  // e.g. all similarities vanished

    std::vector<std::string> venue_order() const;
};

/// Least-squares map from the reduced paper space to the reduced
/// conference space: T = pinv(F_train) G_train.
struct LinearMap {
    Eigen::MatrixXd transform;  // d_p x d_c
    Eigen::Index rank = 0;      // numerical rank of F_train
};

// ---- Method 1: CA on the author x conference matrix -----------------------

CaModel m1_fit(const ContingencyTable& author_conf, int n_dims);

/// author_rows: one venue-count row per author of the paper, aligned with
/// model.col_labels. Authors are projected as supplementary rows; a venue's
/// score is the summed similarity over all authors.
RankedRecommendation m1_recommend(const CaModel& model,
                                  const std::string& paper_id,
                                  const Eigen::MatrixXd& author_rows,
                                  SimilarityKind kind);

// ---- Method 2: CA on the composed paper x conference matrix ---------------

CaModel m2_fit(const DocTermMatrix& paper_term, const ContingencyTable& word_conf,
               int n_dims);

std::vector<RankedRecommendation> m2_recommend(const CaModel& model,
                                               const DocTermMatrix& test_terms,
                                               const ContingencyTable& word_conf,
                                               SimilarityKind kind,
                                               Representation rep);

// ---- Method 3: linear transformation between reduced subspaces ------------

struct M3Model {
    CaModel paper_space;  // CA of papers x words
    CaModel conf_space;   // CA of words x conferences
    LinearMap map;
};

/// paper_venue maps every training paper id to its venue. Zero rows/columns
/// of the inputs are dropped before fitting (CA requires positive margins);
/// dropped training papers do not contribute equations to the map.
M3Model m3_fit(const DocTermMatrix& paper_term, const ContingencyTable& word_conf,
               const std::map<std::string, std::string>& paper_venue, int d_p,
               int d_c);

std::vector<RankedRecommendation> m3_recommend(const M3Model& model,
                                               const DocTermMatrix& test_terms,
                                               SimilarityKind kind,
                                               Representation rep);

// ---- Method 4: content-based filtering ------------------------------------

/// Direct similarity of each test paper against the venue centroid columns,
/// no dimensionality reduction.
std::vector<RankedRecommendation> m4_recommend(const DocTermMatrix& test_terms,
                                               const ContingencyTable& conf_centroids,
                                               SimilarityKind kind,
                                               Representation rep);

// ---- Method 5: collaborative filtering ------------------------------------

/// train_pc: training paper x conference counts. test_rows: one
/// conference-frequency vector per test paper, aligned with train_pc
/// columns. score(c) = sum_p s_p M[p,c] / sum_{p: M[p,c]>0} s_p with
/// similarities made nonnegative (euclidean -> 1/(1+d), cosine/pearson
/// clamped at 0).
std::vector<RankedRecommendation> m5_recommend(const ContingencyTable& train_pc,
                                               const std::vector<std::string>& test_ids,
                                               const Eigen::MatrixXd& test_rows,
                                               SimilarityKind kind);

// ---- Method 6: hybrid filtering --------------------------------------------

/// Collaborative scoring with neighbor similarities computed in content
/// space: train_terms rows align with train_pc rows.
std::vector<RankedRecommendation> m6_recommend(const ContingencyTable& train_pc,
                                               const DocTermMatrix& train_terms,
                                               const DocTermMatrix& test_terms,
                                               SimilarityKind kind,
                                               Representation rep);

}  // namespace confrec

#endif  // CONFREC_RECOMMENDERS_HPP
