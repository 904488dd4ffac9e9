#include "confrec/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace confrec {

SimilarityKind similarity_from_string(const std::string& s) {
    if (s == "euclidean" || s == "euclid") return SimilarityKind::euclidean;
    if (s == "cosine") return SimilarityKind::cosine;
    if (s == "pearson") return SimilarityKind::pearson;
    throw InvalidParam("unknown similarity: " + s);
}

std::string to_string(SimilarityKind kind) {
    switch (kind) {
        case SimilarityKind::euclidean: return "euclidean";
        case SimilarityKind::cosine: return "cosine";
        case SimilarityKind::pearson: return "pearson";
    }
    return "?";
}

namespace {

void require_same_length(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         Eigen::Index min_len) {
    if (x.size() != y.size()) {
        throw LengthMismatch("vector lengths differ: " + std::to_string(x.size()) +
                             " vs " + std::to_string(y.size()));
    }
    if (x.size() < min_len) {
        throw LengthMismatch("vectors shorter than " + std::to_string(min_len));
    }
}

}  // namespace

double euclidean(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    require_same_length(x, y, 1);
    return (x - y).norm();
}

double cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    require_same_length(x, y, 1);
    double nx = x.norm();
    double ny = y.norm();
    if (nx == 0.0 || ny == 0.0) throw ZeroVector("cosine of a zero vector");
    return x.dot(y) / (nx * ny);
}

double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    require_same_length(x, y, 2);
    Eigen::VectorXd xc = x.array() - x.mean();
    Eigen::VectorXd yc = y.array() - y.mean();
    double sx = xc.norm();
    double sy = yc.norm();
    if (sx == 0.0 || sy == 0.0) {
        throw ZeroVariance("pearson of a constant vector");
    }
    return xc.dot(yc) / (sx * sy);
}

void sort_ranking(std::vector<RankedItem>& items, SimilarityKind kind) {
    bool ascending = kind == SimilarityKind::euclidean;
    std::sort(items.begin(), items.end(),
              [ascending](const RankedItem& a, const RankedItem& b) {
                  if (a.valid != b.valid) return a.valid;
                  if (a.valid && a.score != b.score) {
                      return ascending ? a.score < b.score : a.score > b.score;
                  }
                  return a.label < b.label;
              });
}

void sort_ranking_descending(std::vector<RankedItem>& items) {
    std::sort(items.begin(), items.end(),
              [](const RankedItem& a, const RankedItem& b) {
                  if (a.valid != b.valid) return a.valid;
                  if (a.valid && a.score != b.score) return a.score > b.score;
                  return a.label < b.label;
              });
}

std::vector<RankedItem> rank_by_similarity(const Eigen::VectorXd& query,
                                           const std::vector<std::string>& labels,
                                           const Eigen::MatrixXd& candidate_rows,
                                           SimilarityKind kind) {
    if (candidate_rows.rows() != static_cast<Eigen::Index>(labels.size())) {
        throw LengthMismatch("candidate labels do not match matrix rows");
    }
    std::vector<RankedItem> items;
    items.reserve(labels.size());
    for (Eigen::Index i = 0; i < candidate_rows.rows(); ++i) {
        RankedItem item;
        item.label = labels[static_cast<std::size_t>(i)];
        Eigen::VectorXd candidate = candidate_rows.row(i).transpose();
        try {
            switch (kind) {
                case SimilarityKind::euclidean:
                    item.score = euclidean(query, candidate);
                    break;
                case SimilarityKind::cosine:
                    item.score = cosine(query, candidate);
                    break;
                case SimilarityKind::pearson:
                    item.score = pearson(query, candidate);
                    break;
            }
        } catch (const ZeroVector&) {
            item.valid = false;
            item.score = std::numeric_limits<double>::quiet_NaN();
        } catch (const ZeroVariance&) {
            item.valid = false;
            item.score = std::numeric_limits<double>::quiet_NaN();
        }
        items.push_back(std::move(item));
    }
    sort_ranking(items, kind);
    return items;
}

}  // namespace confrec
