#include <doctest.h>

#include <map>
#include <set>

#include "confrec/corpus.hpp"
#include "confrec/lda.hpp"
#include "confrec/text_features.hpp"

using namespace confrec;

namespace {

LdaConfig config(int k, int iters, std::uint64_t seed, double alpha = 0.5,
                 double beta = 0.01) {
    LdaConfig c;
    c.n_topics = k;
    c.alpha = alpha;
    c.beta = beta;
    c.n_iterations = iters;
    c.seed = seed;
    return c;
}

void check_counts_consistent(const LdaModel& model) {
    Eigen::MatrixXi topic_word = Eigen::MatrixXi::Zero(model.config.n_topics,
                                                       model.vocab_size);
    Eigen::MatrixXi doc_topic = Eigen::MatrixXi::Zero(model.n_docs(),
                                                      model.config.n_topics);
    Eigen::VectorXi totals = Eigen::VectorXi::Zero(model.config.n_topics);
    for (std::size_t d = 0; d < model.tokens.size(); ++d) {
        for (std::size_t n = 0; n < model.tokens[d].size(); ++n) {
            int t = model.assignments[d][n];
            REQUIRE(t >= 0);
            REQUIRE(t < model.config.n_topics);
            topic_word(t, model.tokens[d][n]) += 1;
            doc_topic(static_cast<Eigen::Index>(d), t) += 1;
            totals(t) += 1;
        }
    }
    CHECK((topic_word - model.topic_word).cwiseAbs().maxCoeff() == 0);
    CHECK((doc_topic - model.doc_topic).cwiseAbs().maxCoeff() == 0);
    CHECK((totals - model.topic_totals).cwiseAbs().maxCoeff() == 0);
}

// Two disjoint sub-vocabularies; even docs use ids [0,5), odd docs [5,10).
std::vector<std::vector<int>> two_cluster_docs(int n_docs, int doc_len,
                                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> docs;
    for (int d = 0; d < n_docs; ++d) {
        std::vector<int> doc;
        int base = d % 2 == 0 ? 0 : 5;
        for (int n = 0; n < doc_len; ++n) {
            doc.push_back(base + static_cast<int>(rng() % 5));
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace

TEST_CASE("lda_init") {
    std::vector<std::vector<int>> docs = {{0, 1, 2, 3, 4}};
    auto model = lda_init(docs, config(2, 1, 42), 5);
    CHECK(model.doc_topic.row(0).sum() == 5);
    check_counts_consistent(model);

    SUBCASE("same seed, same assignments") {
        auto m1 = lda_init(docs, config(2, 1, 7), 5);
        auto m2 = lda_init(docs, config(2, 1, 7), 5);
        CHECK(m1.assignments == m2.assignments);
    }
    SUBCASE("empty corpus is an error") {
        std::vector<std::vector<int>> empty = {{}, {}};
        CHECK_THROWS_AS(lda_init(empty, config(2, 1, 1), 5), EmptyCorpus);
    }
    SUBCASE("out-of-range token ids are rejected") {
        std::vector<std::vector<int>> bad = {{0, 5}};
        CHECK_THROWS_AS(lda_init(bad, config(2, 1, 1), 5), InvalidParam);
    }
    SUBCASE("config invariants") {
        CHECK_THROWS_AS(lda_init(docs, config(1, 1, 1), 5), InvalidParam);
        CHECK_THROWS_AS(lda_init(docs, config(2, 0, 1), 5), InvalidParam);
        CHECK_THROWS_AS(lda_init(docs, config(2, 1, 1, -0.5), 5), InvalidParam);
        CHECK_THROWS_AS(lda_init(docs, config(2, 1, 1, 0.5, 0.0), 5), InvalidParam);
    }
}

TEST_CASE("gibbs_sweep conserves counts") {
    auto docs = two_cluster_docs(10, 8, 3);
    auto model = lda_init(docs, config(3, 1, 3), 10);
    for (int sweep = 0; sweep < 5; ++sweep) {
        gibbs_sweep(model);
        for (Eigen::Index d = 0; d < model.n_docs(); ++d) {
            CHECK(model.doc_topic.row(d).sum() ==
                  static_cast<int>(model.tokens[static_cast<std::size_t>(d)].size()));
        }
        check_counts_consistent(model);
    }
    // totals over both tables equal the token count
    int total_tokens = 0;
    for (const auto& doc : docs) total_tokens += static_cast<int>(doc.size());
    CHECK(model.doc_topic.sum() == total_tokens);
    CHECK(model.topic_word.sum() == total_tokens);
}

TEST_CASE("single-topic model is a fixed point") {
    // K = 1 is below the config floor, so build the degenerate state by hand.
    LdaModel model;
    model.config = config(2, 1, 1);
    model.config.n_topics = 1;
    model.vocab_size = 3;
    model.tokens = {{0, 1, 2}};
    model.assignments = {{0, 0, 0}};
    model.topic_word = Eigen::MatrixXi::Zero(1, 3);
    model.topic_word << 1, 1, 1;
    model.doc_topic = Eigen::MatrixXi::Zero(1, 1);
    model.doc_topic << 3;
    model.topic_totals = Eigen::VectorXi::Zero(1);
    model.topic_totals << 3;
    model.rng.seed(1);

    gibbs_sweep(model);
    CHECK(model.assignments[0] == std::vector<int>{0, 0, 0});

    Eigen::VectorXd inferred = infer_document(model, {0, 2}, 10, 5);
    REQUIRE(inferred.size() == 1);
    CHECK(inferred(0) == doctest::Approx(1.0));
}

TEST_CASE("lda_fit") {
    auto docs = two_cluster_docs(6, 10, 9);

    SUBCASE("deterministic under a fixed seed") {
        auto m1 = lda_fit(docs, config(2, 20, 123), 10);
        auto m2 = lda_fit(docs, config(2, 20, 123), 10);
        CHECK(m1.assignments == m2.assignments);
        CHECK((m1.topic_word - m2.topic_word).cwiseAbs().maxCoeff() == 0);
    }
    SUBCASE("seed change moves assignments but keeps invariants") {
        auto m1 = lda_fit(docs, config(2, 20, 123), 10);
        auto m2 = lda_fit(docs, config(2, 20, 124), 10);
        CHECK(m1.assignments != m2.assignments);
        check_counts_consistent(m2);
    }
    SUBCASE("paper-scale hyperparameters are accepted at desk scale") {
        auto small = two_cluster_docs(8, 6, 2);
        LdaConfig c = config(400, 1000, 5);  // K and sweeps of the reported setup
        auto model = lda_fit(small, c, 10);
        check_counts_consistent(model);
    }
}

TEST_CASE("two disjoint topics are recovered") {
    auto docs = two_cluster_docs(50, 20, 31);
    auto model = lda_fit(docs, config(2, 200, 31), 10);

    // majority topic per sub-vocabulary
    std::map<int, std::map<int, int>> votes;  // cluster -> topic -> count
    int total = 0;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (std::size_t n = 0; n < docs[d].size(); ++n) {
            int cluster = docs[d][n] < 5 ? 0 : 1;
            votes[cluster][model.assignments[d][n]] += 1;
            ++total;
        }
    }
    int agree = 0;
    for (const auto& [cluster, topic_votes] : votes) {
        int best = 0;
        for (const auto& [topic, count] : topic_votes) best = std::max(best, count);
        agree += best;
    }
    double purity = static_cast<double>(agree) / static_cast<double>(total);
    CHECK(purity >= 0.9);
}

TEST_CASE("doc_topic_matrix") {
    SUBCASE("rows sum to one") {
        auto docs = two_cluster_docs(6, 7, 13);
        auto model = lda_fit(docs, config(3, 10, 13), 10);
        auto m = doc_topic_matrix(model, {"d0", "d1", "d2", "d3", "d4", "d5"});
        CHECK(m.weighting == Weighting::proportions);
        for (Eigen::Index d = 0; d < m.values.rows(); ++d) {
            CHECK(m.values.row(d).sum() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("hand oracle on a 3-token document") {
        // alpha = 0.5, K = 2, counts (2, 1): (2.5/4, 1.5/4)
        std::vector<std::vector<int>> docs = {{0, 0, 1}};
        auto model = lda_init(docs, config(2, 1, 1), 2);
        model.assignments[0] = {0, 0, 1};
        model.doc_topic(0, 0) = 2;
        model.doc_topic(0, 1) = 1;
        auto m = doc_topic_matrix(model, {"d0"});
        CHECK(m.values(0, 0) == doctest::Approx(2.5 / 4.0));
        CHECK(m.values(0, 1) == doctest::Approx(1.5 / 4.0));
    }
    SUBCASE("fully assigned document approaches an indicator as alpha shrinks") {
        std::vector<std::vector<int>> docs = {{0, 1, 0, 1}};
        auto model = lda_init(docs, config(2, 1, 1, 1e-9), 2);
        model.assignments[0] = {0, 0, 0, 0};
        model.doc_topic(0, 0) = 4;
        model.doc_topic(0, 1) = 0;
        auto m = doc_topic_matrix(model, {"d0"});
        CHECK(m.values(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(m.values(0, 1) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("infer_document") {
    auto docs = two_cluster_docs(40, 20, 77);
    auto model = lda_fit(docs, config(2, 100, 77), 10);

    SUBCASE("training document folds back close to its training mixture") {
        auto trained = doc_topic_matrix(model, std::vector<std::string>(40, "x"));
        int hits = 0;
        for (int d = 0; d < 10; ++d) {
            Eigen::VectorXd inferred =
                infer_document(model, docs[static_cast<std::size_t>(d)], 50,
                               1000 + static_cast<std::uint64_t>(d));
            Eigen::VectorXd trained_row =
                trained.values.row(d).transpose();
            // same dominant topic counts as agreement on a separable corpus
            Eigen::Index a, b;
            inferred.maxCoeff(&a);
            trained_row.maxCoeff(&b);
            if (a == b) ++hits;
        }
        CHECK(hits >= 9);
    }
    SUBCASE("fold-in mixtures correlate with training mixtures at K=4") {
        // four disjoint clusters of five ids each
        std::mt19937_64 gen(3);
        std::vector<std::vector<int>> quads;
        for (int d = 0; d < 60; ++d) {
            std::vector<int> doc;
            int base = (d % 4) * 5;
            for (int n = 0; n < 20; ++n) {
                doc.push_back(base + static_cast<int>(gen() % 5));
            }
            quads.push_back(std::move(doc));
        }
        auto quad_model = lda_fit(quads, config(4, 150, 19), 20);
        auto trained = doc_topic_matrix(quad_model,
                                        std::vector<std::string>(60, "x"));
        int good = 0;
        for (int d = 0; d < 12; ++d) {
            Eigen::VectorXd inferred = infer_document(
                quad_model, quads[static_cast<std::size_t>(d)], 50,
                400 + static_cast<std::uint64_t>(d));
            Eigen::VectorXd t = trained.values.row(d).transpose();
            Eigen::VectorXd ic = inferred.array() - inferred.mean();
            Eigen::VectorXd tc = t.array() - t.mean();
            double corr = ic.dot(tc) / (ic.norm() * tc.norm());
            if (corr > 0.9) ++good;
        }
        CHECK(good >= 11);
    }
    SUBCASE("out-of-vocabulary ids are skipped") {
        Eigen::VectorXd inferred = infer_document(model, {0, 99, -3, 1}, 20, 5);
        CHECK(inferred.size() == 2);
        CHECK(inferred.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("all tokens unknown is an error") {
        CHECK_THROWS_AS(infer_document(model, {}, 20, 5), AllTokensUnknown);
        CHECK_THROWS_AS(infer_document(model, {99, 100}, 20, 5), AllTokensUnknown);
    }
    SUBCASE("frozen training counts do not move") {
        Eigen::MatrixXi before = model.topic_word;
        (void)infer_document(model, docs[0], 50, 9);
        CHECK((model.topic_word - before).cwiseAbs().maxCoeff() == 0);
    }
}
