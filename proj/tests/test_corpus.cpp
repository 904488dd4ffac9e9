#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "confrec/corpus.hpp"
#include "confrec/text_features.hpp"

using namespace confrec;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) {
        path = std::string("/tmp/confrec_test_") + name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

VenueCatalog small_catalog() {
    VenueCatalog catalog;
    catalog.venues = {"c1", "c2"};
    catalog.sig_of = {{"c1", "s1"}, {"c2", "s1"}};
    return catalog;
}

PaperRecord paper(const std::string& id, std::vector<std::string> authors,
                  const std::string& venue, int year) {
    PaperRecord p;
    p.paper_id = id;
    p.title = "title " + id;
    p.author_ids = std::move(authors);
    p.venue_id = venue;
    p.year = year;
    p.abstract_text = "words about " + id;
    return p;
}

}  // namespace

TEST_CASE("load_corpus jsonl") {
    TempFile file("ok.jsonl",
                  R"({"paper_id":"p1","title":"t1","authors":["a1","a2"],"venue":"c1","year":2008,"abstract":"svd rules"}
{"paper_id":"p2","title":"t2","authors":["a1"],"venue":"c2","year":2009,"abstract":"lda rules"}
)");
    auto corpus = load_corpus(file.path, CorpusFormat::jsonl, small_catalog());
    REQUIRE(corpus.papers.size() == 2);
    CHECK(corpus.papers[0].paper_id == "p1");
    CHECK(corpus.papers[0].author_ids == std::vector<std::string>{"a1", "a2"});
    CHECK(corpus.papers[1].year == 2009);
}

TEST_CASE("load_corpus rejects duplicates and bad records") {
    SUBCASE("duplicate paper id") {
        TempFile file("dup.jsonl",
                      R"({"paper_id":"p1","title":"t","authors":["a"],"venue":"c1","year":2008,"abstract":""}
{"paper_id":"p1","title":"t","authors":["a"],"venue":"c1","year":2008,"abstract":""}
)");
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::jsonl, small_catalog()),
                        ValidationError);
    }
    SUBCASE("malformed line carries its number") {
        TempFile file("bad.jsonl",
                      R"({"paper_id":"p1","title":"t","authors":["a"],"venue":"c1","year":2008,"abstract":""}
this is not json
)");
        try {
            load_corpus(file.path, CorpusFormat::jsonl, small_catalog());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(":2") != std::string::npos);
        }
    }
    SUBCASE("missing field") {
        TempFile file("missing.jsonl",
                      R"({"paper_id":"p1","title":"t","venue":"c1","year":2008,"abstract":""}
)");
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::jsonl, small_catalog()),
                        ValidationError);
    }
    SUBCASE("unknown venue") {
        TempFile file("venue.jsonl",
                      R"({"paper_id":"p1","title":"t","authors":["a"],"venue":"c9","year":2008,"abstract":""}
)");
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::jsonl, small_catalog()),
                        ValidationError);
    }
}

TEST_CASE("corpus round-trips through jsonl and csv") {
    Corpus corpus;
    corpus.catalog = small_catalog();
    corpus.papers.push_back(paper("p1", {"a1", "a2"}, "c1", 2008));
    corpus.papers.push_back(paper("p2", {"a3"}, "c2", 2009));
    corpus.papers[1].title = "commas, \"quotes\" and such";

    for (auto format : {CorpusFormat::jsonl, CorpusFormat::csv}) {
        std::string path = "/tmp/confrec_test_roundtrip";
        save_corpus(corpus, path, format);
        auto loaded = load_corpus(path, format, corpus.catalog);
        REQUIRE(loaded.papers.size() == corpus.papers.size());
        for (std::size_t i = 0; i < loaded.papers.size(); ++i) {
            CHECK(loaded.papers[i].paper_id == corpus.papers[i].paper_id);
            CHECK(loaded.papers[i].title == corpus.papers[i].title);
            CHECK(loaded.papers[i].author_ids == corpus.papers[i].author_ids);
            CHECK(loaded.papers[i].venue_id == corpus.papers[i].venue_id);
            CHECK(loaded.papers[i].year == corpus.papers[i].year);
        }
        std::remove(path.c_str());
    }
}

TEST_CASE("split_by_year") {
    Corpus corpus;
    corpus.catalog = small_catalog();
    corpus.papers.push_back(paper("p1", {"a"}, "c1", 2008));
    corpus.papers.push_back(paper("p2", {"a"}, "c1", 2009));
    corpus.papers.push_back(paper("p3", {"a"}, "c2", 2010));

    auto [train, test] = split_by_year(corpus, 2010);
    CHECK(train.papers.size() == 2);
    CHECK(test.papers.size() == 1);
    CHECK(test.papers[0].paper_id == "p3");

    SUBCASE("empty train side") {
        Corpus all2010;
        all2010.catalog = small_catalog();
        all2010.papers.push_back(paper("p1", {"a"}, "c1", 2010));
        CHECK_THROWS_AS(split_by_year(all2010, 2010), EmptySplit);
    }
    SUBCASE("later years are dropped and may empty the test side") {
        Corpus skewed;
        skewed.catalog = small_catalog();
        skewed.papers.push_back(paper("p1", {"a"}, "c1", 2008));
        skewed.papers.push_back(paper("p2", {"a"}, "c1", 2011));
        CHECK_THROWS_AS(split_by_year(skewed, 2010), EmptySplit);
    }
    SUBCASE("no paper appears on both sides") {
        std::set<std::string> train_ids, test_ids;
        for (const auto& p : train.papers) train_ids.insert(p.paper_id);
        for (const auto& p : test.papers) test_ids.insert(p.paper_id);
        for (const auto& id : test_ids) CHECK(train_ids.count(id) == 0);
    }
}

TEST_CASE("author_conference_matrix") {
    Corpus corpus;
    corpus.catalog = small_catalog();

    SUBCASE("one paper, two authors") {
        corpus.papers.push_back(paper("p1", {"a1", "a2"}, "c1", 2008));
        auto table = author_conference_matrix(corpus);
        REQUIRE(table.row_labels == std::vector<std::string>{"a1", "a2"});
        CHECK(table.counts(0, 0) == 1.0);
        CHECK(table.counts(1, 0) == 1.0);
        CHECK(table.counts.col(1).sum() == 0.0);
    }
    SUBCASE("counts add up per author") {
        corpus.papers.push_back(paper("p1", {"a1"}, "c1", 2008));
        corpus.papers.push_back(paper("p2", {"a1"}, "c1", 2008));
        corpus.papers.push_back(paper("p3", {"a1"}, "c1", 2009));
        corpus.papers.push_back(paper("p4", {"a1"}, "c2", 2009));
        auto table = author_conference_matrix(corpus);
        CHECK(table.counts(0, 0) == 3.0);
        CHECK(table.counts(0, 1) == 1.0);
    }
    SUBCASE("grand total equals the author-slot count") {
        SynthParams params;
        params.n_venues = 4;
        params.n_train = 50;
        params.n_test = 10;
        params.seed = 5;
        auto synth = generate_synthetic_corpus(params);
        auto table = author_conference_matrix(synth);
        double slots = 0;
        for (const auto& p : synth.papers) {
            slots += static_cast<double>(p.author_ids.size());
        }
        CHECK(table.grand_total() == doctest::Approx(slots));
    }
}

TEST_CASE("paper_conference_matrix") {
    Corpus history;
    history.catalog = small_catalog();
    history.papers.push_back(paper("h1", {"a1"}, "c1", 2008));
    history.papers.push_back(paper("h2", {"a1"}, "c1", 2008));
    history.papers.push_back(paper("h3", {"a2"}, "c2", 2009));

    Corpus queries;
    queries.catalog = small_catalog();

    SUBCASE("single author passthrough") {
        queries.papers.push_back(paper("q1", {"a1"}, "c1", 2010));
        auto table = paper_conference_matrix(queries, history);
        CHECK(table.counts(0, 0) == 2.0);
        CHECK(table.counts(0, 1) == 0.0);
    }
    SUBCASE("two authors add") {
        queries.papers.push_back(paper("q1", {"a1", "a2"}, "c1", 2010));
        auto table = paper_conference_matrix(queries, history);
        CHECK(table.counts(0, 0) == 2.0);
        CHECK(table.counts(0, 1) == 1.0);
    }
    SUBCASE("unknown author contributes zeros") {
        queries.papers.push_back(paper("q1", {"nobody"}, "c1", 2010));
        auto table = paper_conference_matrix(queries, history);
        CHECK(table.counts.row(0).sum() == 0.0);
    }
}

TEST_CASE("synthetic corpus") {
    SynthParams params;
    params.n_venues = 4;
    params.n_train = 40;
    params.n_test = 10;
    params.separation = 1.0;
    params.seed = 11;

    SUBCASE("separation 1 gives pairwise disjoint vocabularies") {
        auto corpus = generate_synthetic_corpus(params);
        std::vector<std::set<std::string>> venue_vocab(4);
        for (const auto& p : corpus.papers) {
            auto v = corpus.catalog.index_of(p.venue_id);
            for (const auto& t : tokenize(p.abstract_text)) {
                venue_vocab[v].insert(t);
            }
        }
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = a + 1; b < 4; ++b) {
                for (const auto& t : venue_vocab[a]) {
                    CHECK(venue_vocab[b].count(t) == 0);
                }
            }
        }
    }
    SUBCASE("same seed, same corpus") {
        auto c1 = generate_synthetic_corpus(params);
        auto c2 = generate_synthetic_corpus(params);
        REQUIRE(c1.papers.size() == c2.papers.size());
        for (std::size_t i = 0; i < c1.papers.size(); ++i) {
            CHECK(c1.papers[i].paper_id == c2.papers[i].paper_id);
            CHECK(c1.papers[i].abstract_text == c2.papers[i].abstract_text);
            CHECK(c1.papers[i].author_ids == c2.papers[i].author_ids);
        }
    }
    SUBCASE("invalid parameters") {
        auto bad = params;
        bad.separation = 1.5;
        CHECK_THROWS_AS(generate_synthetic_corpus(bad), InvalidParam);
        bad = params;
        bad.n_train = 0;
        CHECK_THROWS_AS(generate_synthetic_corpus(bad), InvalidParam);
    }
    SUBCASE("paper-scale corpus loads and splits to the published sizes") {
        SynthParams scale;
        scale.n_venues = 16;
        scale.n_train = 3572;
        scale.n_test = 1875;
        scale.seed = 23;
        auto corpus = generate_synthetic_corpus(scale);
        std::string path = "/tmp/confrec_test_scale.jsonl";
        save_corpus(corpus, path, CorpusFormat::jsonl);
        auto loaded = load_corpus(path, CorpusFormat::jsonl, corpus.catalog);
        std::remove(path.c_str());
        CHECK(loaded.papers.size() == 3572 + 1875);
        auto [train, test] = split_by_year(loaded, 2010);
        CHECK(train.papers.size() == 3572);
        CHECK(test.papers.size() == 1875);
        CHECK(loaded.catalog.venues.size() == 16);
        CHECK(loaded.catalog.sig_count() == 4);
    }
}

TEST_CASE("matrix builders are deterministic") {
    SynthParams params;
    params.n_venues = 3;
    params.n_train = 30;
    params.n_test = 6;
    params.seed = 2;
    auto corpus = generate_synthetic_corpus(params);
    auto t1 = author_conference_matrix(corpus);
    auto t2 = author_conference_matrix(corpus);
    CHECK(t1.row_labels == t2.row_labels);
    CHECK((t1.counts - t2.counts).cwiseAbs().maxCoeff() == 0.0);
}
