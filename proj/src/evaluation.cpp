#include "confrec/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace confrec {

SchemeKind scheme_from_string(const std::string& s) {
    if (s == "actual") return SchemeKind::actual;
    if (s == "sig") return SchemeKind::sig;
    throw InvalidParam("unknown relevance scheme: " + s);
}

std::string to_string(SchemeKind kind) {
    return kind == SchemeKind::actual ? "actual" : "sig";
}

std::set<std::string> RelevanceScheme::relevant_set(
    const std::string& true_venue) const {
    std::set<std::string> relevant;
    if (kind == SchemeKind::actual) {
        relevant.insert(true_venue);
        return relevant;
    }
    auto it = catalog.sig_of.find(true_venue);
    if (it == catalog.sig_of.end()) {
        throw ValidationError("venue not in catalog: " + true_venue);
    }
    for (const auto& [venue, sig] : catalog.sig_of) {
        if (sig == it->second) relevant.insert(venue);
    }
    return relevant;
}

int RelevanceScheme::grade(const std::string& venue,
                           const std::string& true_venue) const {
    if (kind == SchemeKind::actual) {
        return venue == true_venue ? 1 : 0;
    }
    if (venue == true_venue) return 2;
    auto a = catalog.sig_of.find(venue);
    auto b = catalog.sig_of.find(true_venue);
    if (a != catalog.sig_of.end() && b != catalog.sig_of.end() &&
        a->second == b->second) {
        return 1;
    }
    return 0;
}

double precision_at_k(const std::vector<std::string>& ranking,
                      const std::set<std::string>& relevant, int k) {
    if (k < 1) throw InvalidParam("k must be >= 1");
    if (ranking.empty()) throw InvalidParam("empty ranking");
    int hits = 0;
    int upto = std::min<int>(k, static_cast<int>(ranking.size()));
    for (int i = 0; i < upto; ++i) {
        if (relevant.count(ranking[static_cast<std::size_t>(i)])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

double recall_at_k(const std::vector<std::string>& ranking,
                   const std::set<std::string>& relevant, int k) {
    if (relevant.empty()) throw EmptyRelevantSet("no relevant documents");
    if (k < 1) throw InvalidParam("k must be >= 1");
    int hits = 0;
    int upto = std::min<int>(k, static_cast<int>(ranking.size()));
    for (int i = 0; i < upto; ++i) {
        if (relevant.count(ranking[static_cast<std::size_t>(i)])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

double average_precision_at_k(const std::vector<std::string>& ranking,
                              const std::set<std::string>& relevant, int k) {
    if (relevant.empty()) throw EmptyRelevantSet("no relevant documents");
    if (k < 1) throw InvalidParam("k must be >= 1");
    double sum = 0.0;
    int hits = 0;
    int upto = std::min<int>(k, static_cast<int>(ranking.size()));
    for (int i = 0; i < upto; ++i) {
        if (relevant.count(ranking[static_cast<std::size_t>(i)])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

double ndcg_at_p(const std::vector<std::string>& ranking,
                 const std::map<std::string, int>& grades, int p) {
    if (p < 1) throw InvalidParam("p must be >= 1");
    std::vector<int> all_grades;
    bool any_positive = false;
    for (const auto& [venue, g] : grades) {
        all_grades.push_back(g);
        if (g > 0) any_positive = true;
    }
    if (!any_positive) throw AllZeroGrades("all relevance grades are zero");

    auto gain = [](int g) { return std::pow(2.0, static_cast<double>(g)) - 1.0; };
    double dcg = 0.0;
    int upto = std::min<int>(p, static_cast<int>(ranking.size()));
    for (int i = 0; i < upto; ++i) {
        auto it = grades.find(ranking[static_cast<std::size_t>(i)]);
        int g = it == grades.end() ? 0 : it->second;
        dcg += gain(g) / std::log2(static_cast<double>(i) + 2.0);
    }
    std::sort(all_grades.begin(), all_grades.end(), std::greater<int>());
    double idcg = 0.0;
    int ideal_upto = std::min<int>(p, static_cast<int>(all_grades.size()));
    for (int i = 0; i < ideal_upto; ++i) {
        idcg += gain(all_grades[static_cast<std::size_t>(i)]) /
                std::log2(static_cast<double>(i) + 2.0);
    }
    return dcg / idcg;
}

double reciprocal_rank(const std::vector<std::string>& ranking,
                       const std::set<std::string>& relevant) {
    if (ranking.empty()) throw InvalidParam("empty ranking");
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (relevant.count(ranking[i])) {
            return 1.0 / static_cast<double>(i + 1);
        }
    }
    return 0.0;  // no relevant item present
}

double f_measure_at_k(const std::vector<std::string>& ranking,
                      const std::set<std::string>& relevant, int k) {
    double p = precision_at_k(ranking, relevant, k);
    double r = recall_at_k(ranking, relevant, k);
    if (p + r == 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

double r_precision(const std::vector<std::string>& ranking,
                   const std::set<std::string>& relevant) {
    if (relevant.empty()) throw EmptyRelevantSet("no relevant documents");
    return precision_at_k(ranking, relevant, static_cast<int>(relevant.size()));
}

EvalReport evaluate(const std::vector<RankedRecommendation>& recommendations,
                    const std::map<std::string, std::string>& truth,
                    const RelevanceScheme& scheme, int k) {
    if (recommendations.empty()) {
        throw MissingTruth("no recommendations to evaluate");
    }
    EvalReport report;
    report.k = k;
    report.scheme = scheme.kind;

    QueryMetrics totals;
    for (const auto& rec : recommendations) {
        auto it = truth.find(rec.paper_id);
        if (it == truth.end()) {
            throw MissingTruth("no truth entry for paper " + rec.paper_id);
        }
        const std::string& true_venue = it->second;
        std::vector<std::string> order = rec.venue_order();
        std::set<std::string> relevant = scheme.relevant_set(true_venue);
        std::map<std::string, int> grades;
        for (const auto& venue : scheme.catalog.venues) {
            grades[venue] = scheme.grade(venue, true_venue);
        }

        QueryMetrics m;
        m.precision_at_k = precision_at_k(order, relevant, k);
        m.recall_at_k = recall_at_k(order, relevant, k);
        m.average_precision_at_k = average_precision_at_k(order, relevant, k);
        m.ndcg_at_p = ndcg_at_p(order, grades, k);
        m.reciprocal_rank = reciprocal_rank(order, relevant);
        m.f_measure_at_k = f_measure_at_k(order, relevant, k);
        m.r_precision = r_precision(order, relevant);
        report.per_query[rec.paper_id] = m;

        totals.precision_at_k += m.precision_at_k;
        totals.recall_at_k += m.recall_at_k;
        totals.average_precision_at_k += m.average_precision_at_k;
        totals.ndcg_at_p += m.ndcg_at_p;
        totals.reciprocal_rank += m.reciprocal_rank;
        totals.f_measure_at_k += m.f_measure_at_k;
        totals.r_precision += m.r_precision;
    }
    double n = static_cast<double>(recommendations.size());
    report.means.precision_at_k = totals.precision_at_k / n;
    report.means.recall_at_k = totals.recall_at_k / n;
    report.means.average_precision_at_k = totals.average_precision_at_k / n;
    report.means.ndcg_at_p = totals.ndcg_at_p / n;
    report.means.reciprocal_rank = totals.reciprocal_rank / n;
    report.means.f_measure_at_k = totals.f_measure_at_k / n;
    report.means.r_precision = totals.r_precision / n;
    return report;
}

}  // namespace confrec
