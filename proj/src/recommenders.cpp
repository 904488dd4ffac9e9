#include "confrec/recommenders.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace confrec {

Method method_from_string(const std::string& s) {
    if (s == "m1") return Method::m1_author_ca;
    if (s == "m2") return Method::m2_composed_ca;
    if (s == "m3") return Method::m3_linear_map;
    if (s == "m4") return Method::m4_content;
    if (s == "m5") return Method::m5_collaborative;
    if (s == "m6") return Method::m6_hybrid;
    throw InvalidParam("unknown method: " + s);
}

std::string to_string(Method method) {
    switch (method) {
        case Method::m1_author_ca: return "m1";
        case Method::m2_composed_ca: return "m2";
        case Method::m3_linear_map: return "m3";
        case Method::m4_content: return "m4";
        case Method::m5_collaborative: return "m5";
        case Method::m6_hybrid: return "m6";
    }
    return "?";
}

Representation representation_from_string(const std::string& s) {
    if (s == "tfidf") return Representation::tfidf;
    if (s == "topics") return Representation::topics;
    if (s == "none") return Representation::none;
    throw InvalidParam("unknown representation: " + s);
}

std::string to_string(Representation rep) {
    switch (rep) {
        case Representation::tfidf: return "tfidf";
        case Representation::topics: return "topics";
        case Representation::none: return "none";
    }
    return "?";
}

std::vector<std::string> RankedRecommendation::venue_order() const {
    std::vector<std::string> order;
    order.reserve(ranking.size());
    for (const auto& item : ranking) order.push_back(item.label);
    return order;
}

namespace {

double similarity_or_nan(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         SimilarityKind kind) {
    try {
        switch (kind) {
            case SimilarityKind::euclidean: return euclidean(x, y);
            case SimilarityKind::cosine: return cosine(x, y);
            case SimilarityKind::pearson: return pearson(x, y);
        }
    } catch (const ZeroVector&) {
    } catch (const ZeroVariance&) {
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Weight transform for the collaborative scoring step: similarities must be
// nonnegative, distances become 1/(1+d).
double as_weight(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 SimilarityKind kind) {
    double s = similarity_or_nan(x, y, kind);
    if (std::isnan(s)) return 0.0;
    if (kind == SimilarityKind::euclidean) return 1.0 / (1.0 + s);
    return std::max(0.0, s);
}

void require_aligned_vocab(const std::vector<std::string>& a,
                           const std::vector<std::string>& b,
                           const std::string& what) {
    if (a != b) throw VocabularyMismatch(what);
}

}  // namespace

// ---- Method 1 --------------------------------------------------------------

CaModel m1_fit(const ContingencyTable& author_conf, int n_dims) {
    return ca_fit(author_conf, n_dims);
}

RankedRecommendation m1_recommend(const CaModel& model,
                                  const std::string& paper_id,
                                  const Eigen::MatrixXd& author_rows,
                                  SimilarityKind kind) {
    if (author_rows.cols() != static_cast<Eigen::Index>(model.col_labels.size())) {
        throw ColumnMismatch("author rows must align with the venue columns");
    }
    ContingencyTable authors;
    authors.col_labels = model.col_labels;
    for (Eigen::Index i = 0; i < author_rows.rows(); ++i) {
        authors.row_labels.push_back("author" + std::to_string(i));
    }
    authors.counts = author_rows;
    SupplementaryProjection projected = project_supplementary_rows(model, authors);

    RankedRecommendation rec;
    rec.paper_id = paper_id;
    rec.method = Method::m1_author_ca;
    rec.representation = Representation::none;
    rec.degenerate = projected.zero_rows.size() ==
                     static_cast<std::size_t>(author_rows.rows());

    for (std::size_t j = 0; j < model.col_labels.size(); ++j) {
        RankedItem item;
        item.label = model.col_labels[j];
        Eigen::VectorXd venue =
            model.col_principal.row(static_cast<Eigen::Index>(j)).transpose();
        double total = 0.0;
        for (Eigen::Index i = 0; i < projected.coords.rows(); ++i) {
            double s = similarity_or_nan(projected.coords.row(i).transpose(),
                                         venue, kind);
            if (std::isnan(s)) {
                item.valid = false;
                break;
            }
            total += s;
        }
        if (item.valid) item.score = total;
        else item.score = std::numeric_limits<double>::quiet_NaN();
        rec.ranking.push_back(std::move(item));
    }
    sort_ranking(rec.ranking, kind);
    return rec;
}

// ---- Method 2 --------------------------------------------------------------

namespace {

ContingencyTable compose(const DocTermMatrix& terms,
                         const ContingencyTable& word_conf) {
    require_aligned_vocab(terms.cols, word_conf.row_labels,
                          "paper matrix columns must match word x conference rows");
    ContingencyTable composed;
    composed.row_labels = terms.rows;
    composed.col_labels = word_conf.col_labels;
    composed.counts = terms.values * word_conf.counts;
    return composed;
}

}  // namespace

CaModel m2_fit(const DocTermMatrix& paper_term, const ContingencyTable& word_conf,
               int n_dims) {
    ContingencyTable composed = compose(paper_term, word_conf);
    Eigen::VectorXd row_sums = composed.counts.rowwise().sum();
    Eigen::VectorXd col_sums = composed.counts.colwise().sum();
    if ((row_sums.array() <= 0.0).any() || (col_sums.array() <= 0.0).any()) {
        throw NegativeOrZeroMargin(
            "composed paper x conference matrix has a zero margin");
    }
    return ca_fit(composed, n_dims);
}

std::vector<RankedRecommendation> m2_recommend(const CaModel& model,
                                               const DocTermMatrix& test_terms,
                                               const ContingencyTable& word_conf,
                                               SimilarityKind kind,
                                               Representation rep) {
    ContingencyTable composed = compose(test_terms, word_conf);
    SupplementaryProjection projected =
        project_supplementary_rows(model, composed);

    std::vector<RankedRecommendation> out;
    out.reserve(test_terms.rows.size());
    for (std::size_t i = 0; i < test_terms.rows.size(); ++i) {
        RankedRecommendation rec;
        rec.paper_id = test_terms.rows[i];
        rec.method = Method::m2_composed_ca;
        rec.representation = rep;
        rec.degenerate =
            std::find(projected.zero_rows.begin(), projected.zero_rows.end(),
                      static_cast<Eigen::Index>(i)) != projected.zero_rows.end();
        rec.ranking = rank_by_similarity(
            projected.coords.row(static_cast<Eigen::Index>(i)).transpose(),
            model.col_labels, model.col_principal, kind);
        out.push_back(std::move(rec));
    }
    return out;
}

// ---- Method 3 --------------------------------------------------------------

namespace {

// Drops all-zero rows/columns; CA requires positive margins and carrying
// zero-mass points teaches the map nothing.
ContingencyTable drop_zero_margins(const ContingencyTable& table,
                                   bool drop_rows, bool drop_cols) {
    Eigen::VectorXd row_sums = table.counts.rowwise().sum();
    Eigen::VectorXd col_sums = table.counts.colwise().sum();
    std::vector<Eigen::Index> rows, cols;
    for (Eigen::Index i = 0; i < row_sums.size(); ++i) {
        if (!drop_rows || row_sums(i) > 0.0) rows.push_back(i);
    }
    for (Eigen::Index j = 0; j < col_sums.size(); ++j) {
        if (!drop_cols || col_sums(j) > 0.0) cols.push_back(j);
    }
    ContingencyTable out;
    out.counts.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row_labels.push_back(table.row_labels[static_cast<std::size_t>(rows[i])]);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                table.counts(rows[i], cols[j]);
        }
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col_labels.push_back(table.col_labels[static_cast<std::size_t>(cols[j])]);
    }
    return out;
}

}  // namespace

M3Model m3_fit(const DocTermMatrix& paper_term, const ContingencyTable& word_conf,
               const std::map<std::string, std::string>& paper_venue, int d_p,
               int d_c) {
    ContingencyTable paper_table;
    paper_table.row_labels = paper_term.rows;
    paper_table.col_labels = paper_term.cols;
    paper_table.counts = paper_term.values;
    paper_table = drop_zero_margins(paper_table, true, true);

    ContingencyTable conf_table = drop_zero_margins(word_conf, true, false);

    M3Model model;
    model.paper_space = ca_fit(paper_table, d_p);
    model.conf_space = ca_fit(conf_table, d_c);

    const Eigen::MatrixXd& venue_coords = model.conf_space.col_principal;
    Eigen::MatrixXd f_train = model.paper_space.row_principal;
    Eigen::MatrixXd g_train(f_train.rows(), venue_coords.cols());
    for (std::size_t i = 0; i < paper_table.row_labels.size(); ++i) {
        auto it = paper_venue.find(paper_table.row_labels[i]);
        if (it == paper_venue.end()) {
            throw ValidationError("no venue known for training paper " +
                                  paper_table.row_labels[i]);
        }
        std::size_t v = 0;
        while (v < model.conf_space.col_labels.size() &&
               model.conf_space.col_labels[v] != it->second) {
            ++v;
        }
        if (v == model.conf_space.col_labels.size()) {
            throw ValidationError("venue of paper " + paper_table.row_labels[i] +
                                  " missing from conference space");
        }
        g_train.row(static_cast<Eigen::Index>(i)) =
            venue_coords.row(static_cast<Eigen::Index>(v));
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(f_train);
    model.map.transform = cod.solve(g_train);  // minimum-norm least squares
    model.map.rank = cod.rank();
    return model;
}

std::vector<RankedRecommendation> m3_recommend(const M3Model& model,
                                               const DocTermMatrix& test_terms,
                                               SimilarityKind kind,
                                               Representation rep) {
    // Select the columns the paper space was trained on, in training order.
    std::unordered_map<std::string, Eigen::Index> col_of;
    for (std::size_t j = 0; j < test_terms.cols.size(); ++j) {
        col_of[test_terms.cols[j]] = static_cast<Eigen::Index>(j);
    }
    const auto& kept = model.paper_space.col_labels;
    Eigen::MatrixXd aligned(static_cast<Eigen::Index>(test_terms.rows.size()),
                            static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        auto it = col_of.find(kept[j]);
        if (it == col_of.end()) {
            throw VocabularyMismatch("test matrix lacks training term: " + kept[j]);
        }
        aligned.col(static_cast<Eigen::Index>(j)) = test_terms.values.col(it->second);
    }

    ContingencyTable test_table;
    test_table.row_labels = test_terms.rows;
    test_table.col_labels = kept;
    test_table.counts = aligned;
    SupplementaryProjection projected =
        project_supplementary_rows(model.paper_space, test_table);
    Eigen::MatrixXd mapped = projected.coords * model.map.transform;

    std::vector<RankedRecommendation> out;
    out.reserve(test_terms.rows.size());
    for (std::size_t i = 0; i < test_terms.rows.size(); ++i) {
        RankedRecommendation rec;
        rec.paper_id = test_terms.rows[i];
        rec.method = Method::m3_linear_map;
        rec.representation = rep;
        rec.degenerate =
            std::find(projected.zero_rows.begin(), projected.zero_rows.end(),
                      static_cast<Eigen::Index>(i)) != projected.zero_rows.end();
        rec.ranking = rank_by_similarity(
            mapped.row(static_cast<Eigen::Index>(i)).transpose(),
            model.conf_space.col_labels, model.conf_space.col_principal, kind);
        out.push_back(std::move(rec));
    }
    return out;
}

// ---- Method 4 --------------------------------------------------------------

std::vector<RankedRecommendation> m4_recommend(const DocTermMatrix& test_terms,
                                               const ContingencyTable& conf_centroids,
                                               SimilarityKind kind,
                                               Representation rep) {
    require_aligned_vocab(test_terms.cols, conf_centroids.row_labels,
                          "test matrix columns must match centroid rows");
    Eigen::MatrixXd venue_rows = conf_centroids.counts.transpose();
    std::vector<RankedRecommendation> out;
    out.reserve(test_terms.rows.size());
    for (std::size_t i = 0; i < test_terms.rows.size(); ++i) {
        RankedRecommendation rec;
        rec.paper_id = test_terms.rows[i];
        rec.method = Method::m4_content;
        rec.representation = rep;
        Eigen::VectorXd query =
            test_terms.values.row(static_cast<Eigen::Index>(i)).transpose();
        rec.degenerate = query.isZero(0.0);
        rec.ranking = rank_by_similarity(query, conf_centroids.col_labels,
                                         venue_rows, kind);
        out.push_back(std::move(rec));
    }
    return out;
}

// ---- Methods 5 and 6 -------------------------------------------------------

namespace {

// Shared collaborative scoring: weights[p] is the (nonnegative) similarity
// of the query to training paper p; ratings come from train_pc.
RankedRecommendation collaborative_scores(const ContingencyTable& train_pc,
                                          const Eigen::VectorXd& weights,
                                          const std::string& paper_id,
                                          Method method, Representation rep) {
    RankedRecommendation rec;
    rec.paper_id = paper_id;
    rec.method = method;
    rec.representation = rep;
    rec.degenerate = weights.isZero(0.0);

    for (std::size_t c = 0; c < train_pc.col_labels.size(); ++c) {
        Eigen::Index cj = static_cast<Eigen::Index>(c);
        double numerator = 0.0;
        double denominator = 0.0;
        for (Eigen::Index p = 0; p < train_pc.counts.rows(); ++p) {
            double rating = train_pc.counts(p, cj);
            numerator += weights(p) * rating;
            if (rating > 0.0) denominator += weights(p);
        }
        RankedItem item;
        item.label = train_pc.col_labels[c];
        item.score = denominator > 0.0 ? numerator / denominator : 0.0;
        rec.ranking.push_back(std::move(item));
    }
    sort_ranking_descending(rec.ranking);
    return rec;
}

}  // namespace

std::vector<RankedRecommendation> m5_recommend(const ContingencyTable& train_pc,
                                               const std::vector<std::string>& test_ids,
                                               const Eigen::MatrixXd& test_rows,
                                               SimilarityKind kind) {
    if (test_rows.rows() != static_cast<Eigen::Index>(test_ids.size())) {
        throw ValidationError("test ids do not match test row count");
    }
    if (test_rows.cols() != train_pc.counts.cols()) {
        throw ColumnMismatch("test rows must align with the venue columns");
    }
    std::vector<RankedRecommendation> out;
    out.reserve(test_ids.size());
    for (std::size_t i = 0; i < test_ids.size(); ++i) {
        Eigen::VectorXd query =
            test_rows.row(static_cast<Eigen::Index>(i)).transpose();
        Eigen::VectorXd weights(train_pc.counts.rows());
        for (Eigen::Index p = 0; p < train_pc.counts.rows(); ++p) {
            weights(p) = as_weight(query, train_pc.counts.row(p).transpose(), kind);
        }
        out.push_back(collaborative_scores(train_pc, weights, test_ids[i],
                                           Method::m5_collaborative,
                                           Representation::none));
    }
    return out;
}

std::vector<RankedRecommendation> m6_recommend(const ContingencyTable& train_pc,
                                               const DocTermMatrix& train_terms,
                                               const DocTermMatrix& test_terms,
                                               SimilarityKind kind,
                                               Representation rep) {
    if (train_terms.rows != train_pc.row_labels) {
        throw ValidationError("train term rows must align with train_pc rows");
    }
    require_aligned_vocab(train_terms.cols, test_terms.cols,
                          "train and test content matrices must share columns");
    std::vector<RankedRecommendation> out;
    out.reserve(test_terms.rows.size());
    for (std::size_t i = 0; i < test_terms.rows.size(); ++i) {
        Eigen::VectorXd query =
            test_terms.values.row(static_cast<Eigen::Index>(i)).transpose();
        Eigen::VectorXd weights(train_terms.values.rows());
        for (Eigen::Index p = 0; p < train_terms.values.rows(); ++p) {
            weights(p) =
                as_weight(query, train_terms.values.row(p).transpose(), kind);
        }
        out.push_back(collaborative_scores(train_pc, weights, test_terms.rows[i],
                                           Method::m6_hybrid, rep));
    }
    return out;
}

}  // namespace confrec
