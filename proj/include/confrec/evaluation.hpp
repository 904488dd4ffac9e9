#ifndef CONFREC_EVALUATION_HPP
#define CONFREC_EVALUATION_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "confrec/recommenders.hpp"
#include "confrec/types.hpp"

namespace confrec {

enum class SchemeKind { actual, sig };

SchemeKind scheme_from_string(const std::string& s);
std::string to_string(SchemeKind kind);

/// Relevance judgments for one true venue. Under `actual` only the true
/// venue is relevant (grade 1). Under `sig` every venue in the true venue's
/// SIG is relevant; grades are 2 for the true venue and 1 for SIG-mates.
struct RelevanceScheme {
    SchemeKind kind = SchemeKind::actual;
    VenueCatalog catalog;

    std::set<std::string> relevant_set(const std::string& true_venue) const;
    int grade(const std::string& venue, const std::string& true_venue) const;
};

double precision_at_k(const std::vector<std::string>& ranking,
                      const std::set<std::string>& relevant, int k);
double recall_at_k(const std::vector<std::string>& ranking,
                   const std::set<std::string>& relevant, int k);
/// Truncated sum: rel(k) counted up to rank k, divided by |relevant|.
double average_precision_at_k(const std::vector<std::string>& ranking,
                              const std::set<std::string>& relevant, int k);
/// DCG_P = sum (2^rel_i - 1) / log2(i + 1), normalized by the ideal DCG.
double ndcg_at_p(const std::vector<std::string>& ranking,
                 const std::map<std::string, int>& grades, int p);
/// 1 / rank of the first relevant item; 0 when none appears.
double reciprocal_rank(const std::vector<std::string>& ranking,
                       const std::set<std::string>& relevant);
double f_measure_at_k(const std::vector<std::string>& ranking,
                      const std::set<std::string>& relevant, int k);
/// Precision at R with R = |relevant|.
double r_precision(const std::vector<std::string>& ranking,
                   const std::set<std::string>& relevant);

struct QueryMetrics {
    double precision_at_k = 0.0;
    double recall_at_k = 0.0;
    double average_precision_at_k = 0.0;
    double ndcg_at_p = 0.0;
    double reciprocal_rank = 0.0;
    double f_measure_at_k = 0.0;
    double r_precision = 0.0;
};

struct EvalReport {
    std::map<std::string, QueryMetrics> per_query;  // paper_id keyed
    QueryMetrics means;
    int k = 5;
    SchemeKind scheme = SchemeKind::actual;
};

/// Scores every recommendation against the truth map and averages.
/// Throws MissingTruth when a recommendation has no truth entry.
EvalReport evaluate(const std::vector<RankedRecommendation>& recommendations,
                    const std::map<std::string, std::string>& truth,
                    const RelevanceScheme& scheme, int k);

}  // namespace confrec

#endif  // CONFREC_EVALUATION_HPP
