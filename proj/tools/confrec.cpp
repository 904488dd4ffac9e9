// confrec: venue recommendation from publication corpora.
// Subcommands: ingest, synth, train, recommend, evaluate, report.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "confrec/corpus.hpp"
#include "confrec/evaluation.hpp"
#include "confrec/lda.hpp"
#include "confrec/recommenders.hpp"
#include "confrec/serialization.hpp"
#include "confrec/similarity.hpp"
#include "confrec/text_features.hpp"

namespace {

using confrec::Corpus;
using confrec::DocTermMatrix;
using confrec::Method;
using confrec::ModelBundle;
using confrec::RankedRecommendation;
using confrec::Representation;
using nlohmann::json;

struct IngestArgs {
    std::string input;
    std::string format = "jsonl";
    std::string catalog;
    std::string out;
};

int run_ingest(const IngestArgs& args) {
    auto catalog = confrec::load_catalog(args.catalog);
    Corpus corpus = confrec::load_corpus(
        args.input, confrec::corpus_format_from_string(args.format), catalog);

    std::set<std::string> authors;
    std::map<int, int> per_year;
    for (const auto& p : corpus.papers) {
        authors.insert(p.author_ids.begin(), p.author_ids.end());
        per_year[p.year] += 1;
    }
    std::cout << "papers: " << corpus.papers.size() << "\n"
              << "authors: " << authors.size() << "\n"
              << "venues: " << catalog.venues.size() << "\n"
              << "sigs: " << catalog.sig_count() << "\n";
    for (const auto& [year, count] : per_year) {
        std::cout << "year " << year << ": " << count << "\n";
    }
    if (!args.out.empty()) {
        confrec::save_corpus(corpus, args.out, confrec::CorpusFormat::jsonl);
        std::cout << "wrote " << args.out << "\n";
    }
    return 0;
}

struct SynthArgs {
    confrec::SynthParams params;
    std::string out_dir = ".";
};

int run_synth(const SynthArgs& args) {
    Corpus corpus = confrec::generate_synthetic_corpus(args.params);
    std::string corpus_path = args.out_dir + "/corpus.jsonl";
    std::string catalog_path = args.out_dir + "/catalog.json";
    confrec::save_corpus(corpus, corpus_path, confrec::CorpusFormat::jsonl);
    confrec::save_catalog(corpus.catalog, catalog_path);
    std::cout << "wrote " << corpus_path << " (" << corpus.papers.size()
              << " papers) and " << catalog_path << "\n";
    return 0;
}

struct TrainArgs {
    std::string corpus;
    std::string catalog;
    std::string method = "m4";
    std::string representation = "tfidf";
    int test_year = 2010;
    int dims = 10;
    int dims_paper = 10;
    int dims_conf = 10;
    int min_df = 1;
    int topics = 400;
    double alpha = 0.5;
    double beta = 0.01;
    int iterations = 1000;
    int fold_iterations = 50;
    std::uint64_t seed = 1;
    std::string out = "model.json";
    std::string export_coords;  // prefix for biplot coordinate CSVs
};

// Content features of the training corpus under the chosen representation,
// plus whatever state the test side will need to rebuild its own.
DocTermMatrix train_content(const Corpus& train, ModelBundle& bundle) {
    const auto& vocab = *bundle.vocab;
    if (bundle.representation == Representation::tfidf) {
        return confrec::tfidf_matrix(train, vocab);
    }
    auto docs = confrec::to_token_ids(train, vocab);
    bundle.lda = confrec::lda_fit(docs, bundle.lda_config,
                                  static_cast<int>(vocab.size()));
    std::vector<std::string> ids;
    for (const auto& p : train.papers) ids.push_back(p.paper_id);
    return confrec::doc_topic_matrix(*bundle.lda, ids);
}

int run_train(const TrainArgs& args) {
    auto catalog = confrec::load_catalog(args.catalog);
    Corpus corpus =
        confrec::load_corpus(args.corpus, confrec::CorpusFormat::jsonl, catalog);
    auto [train, test] = confrec::split_by_year(corpus, args.test_year);
    std::cout << "train papers: " << train.papers.size()
              << ", test papers: " << test.papers.size() << "\n";

    ModelBundle bundle;
    bundle.method = confrec::method_from_string(args.method);
    bundle.representation =
        confrec::representation_from_string(args.representation);
    if (bundle.method == Method::m1_author_ca ||
        bundle.method == Method::m5_collaborative) {
        bundle.representation = Representation::none;
    }
    bundle.test_year = args.test_year;
    bundle.seed = args.seed;
    bundle.dims = args.dims;
    bundle.dims_paper = args.dims_paper;
    bundle.dims_conf = args.dims_conf;
    bundle.min_df = args.min_df;
    bundle.fold_iterations = args.fold_iterations;
    bundle.lda_config.n_topics = args.topics;
    bundle.lda_config.alpha = args.alpha;
    bundle.lda_config.beta = args.beta;
    bundle.lda_config.n_iterations = args.iterations;
    bundle.lda_config.seed = args.seed;
    bundle.catalog = catalog;

    bool needs_content = bundle.method == Method::m2_composed_ca ||
                         bundle.method == Method::m3_linear_map ||
                         bundle.method == Method::m4_content ||
                         bundle.method == Method::m6_hybrid;

    if (needs_content) {
        bundle.vocab = confrec::build_vocabulary(train, args.min_df);
        DocTermMatrix train_terms = train_content(train, bundle);
        std::vector<std::string> empty_venues;
        bundle.word_conf =
            confrec::word_conference_matrix(train_terms, train, &empty_venues);
        for (const auto& v : empty_venues) {
            std::cerr << "warning: no training papers for venue " << v << "\n";
        }
        switch (bundle.method) {
            case Method::m2_composed_ca:
                bundle.ca = confrec::m2_fit(train_terms, *bundle.word_conf, args.dims);
                break;
            case Method::m3_linear_map: {
                std::map<std::string, std::string> venue_of;
                for (const auto& p : train.papers) venue_of[p.paper_id] = p.venue_id;
                bundle.m3 = confrec::m3_fit(train_terms, *bundle.word_conf, venue_of,
                                            args.dims_paper, args.dims_conf);
                if (bundle.m3->map.rank <
                    bundle.m3->paper_space.singular_values.size()) {
                    std::cerr << "warning: rank-deficient transformation ("
                              << bundle.m3->map.rank << ")\n";
                }
                break;
            }
            case Method::m6_hybrid:
                bundle.train_pc = confrec::paper_conference_matrix(train, train);
                bundle.train_terms = train_terms;
                break;
            default:
                break;  // m4 needs only word_conf
        }
    }
    if (bundle.method == Method::m1_author_ca) {
        bundle.author_conf = confrec::author_conference_matrix(train);
        bundle.ca = confrec::m1_fit(*bundle.author_conf, args.dims);
    }
    if (bundle.method == Method::m5_collaborative) {
        bundle.author_conf = confrec::author_conference_matrix(train);
        bundle.train_pc = confrec::paper_conference_matrix(train, train);
    }

    if (!args.export_coords.empty()) {
        auto write_csv = [&](const confrec::CaModel& model,
                             const std::string& space) {
            std::string path = args.export_coords + "_" + space + ".csv";
            std::ofstream out(path);
            if (!out) throw confrec::Error("cannot write " + path);
            out << confrec::coordinates_csv(model);
            std::cout << "wrote " << path << "\n";
        };
        if (bundle.ca) write_csv(*bundle.ca, "ca");
        if (bundle.m3) {
            write_csv(bundle.m3->paper_space, "paper_space");
            write_csv(bundle.m3->conf_space, "conf_space");
        }
    }

    confrec::save_bundle(bundle, args.out);
    std::cout << "wrote " << args.out << "\n";
    return 0;
}

struct RecommendArgs {
    std::string bundle;
    std::string corpus;
    std::string catalog;
    std::string similarity = "cosine";
    std::string out = "recommendations.jsonl";
};

// Venue-count rows for a set of authors, from the training histories.
Eigen::MatrixXd author_history_rows(const std::vector<std::string>& authors,
                                    const confrec::ContingencyTable& author_conf) {
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(authors.size()), author_conf.counts.cols());
    for (std::size_t i = 0; i < authors.size(); ++i) {
        auto it = std::find(author_conf.row_labels.begin(),
                            author_conf.row_labels.end(), authors[i]);
        if (it != author_conf.row_labels.end()) {
            rows.row(static_cast<Eigen::Index>(i)) = author_conf.counts.row(
                static_cast<Eigen::Index>(it - author_conf.row_labels.begin()));
        }
    }
    return rows;
}

DocTermMatrix test_content(const Corpus& test, const ModelBundle& bundle) {
    const auto& vocab = *bundle.vocab;
    if (bundle.representation == Representation::tfidf) {
        return confrec::tfidf_matrix(test, vocab);
    }
    // Topic proportions via fold-in against the trained sampler.
    const auto& lda = *bundle.lda;
    auto docs = confrec::to_token_ids(test, vocab);
    DocTermMatrix m;
    m.weighting = confrec::Weighting::proportions;
    for (int t = 0; t < lda.config.n_topics; ++t) {
        m.cols.push_back("topic" + std::to_string(t));
    }
    m.values.resize(static_cast<Eigen::Index>(docs.size()), lda.config.n_topics);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        m.rows.push_back(test.papers[i].paper_id);
        std::uint64_t doc_seed = bundle.seed * 1000003ULL + i;
        try {
            m.values.row(static_cast<Eigen::Index>(i)) =
                confrec::infer_document(lda, docs[i], bundle.fold_iterations,
                                        doc_seed)
                    .transpose();
        } catch (const confrec::AllTokensUnknown&) {
            m.values.row(static_cast<Eigen::Index>(i)).setZero();
            m.zero_rows.push_back(static_cast<Eigen::Index>(i));
        }
    }
    return m;
}

int run_recommend(const RecommendArgs& args) {
    ModelBundle bundle = confrec::load_bundle(args.bundle);
    auto catalog = confrec::load_catalog(args.catalog);
    Corpus corpus =
        confrec::load_corpus(args.corpus, confrec::CorpusFormat::jsonl, catalog);
    // The bundle is self-contained; the corpus only has to supply the
    // test-year papers.
    Corpus test;
    test.catalog = catalog;
    for (const auto& p : corpus.papers) {
        if (p.year == bundle.test_year) test.papers.push_back(p);
    }
    if (test.papers.empty()) {
        throw confrec::ValidationError(
            "no papers in test year " + std::to_string(bundle.test_year));
    }
    auto kind = confrec::similarity_from_string(args.similarity);

    std::vector<RankedRecommendation> recs;
    switch (bundle.method) {
        case Method::m1_author_ca: {
            if (!bundle.ca || !bundle.author_conf) {
                throw confrec::MethodInputMissing("bundle lacks m1 state");
            }
            for (const auto& p : test.papers) {
                Eigen::MatrixXd rows =
                    author_history_rows(p.author_ids, *bundle.author_conf);
                recs.push_back(
                    confrec::m1_recommend(*bundle.ca, p.paper_id, rows, kind));
            }
            break;
        }
        case Method::m2_composed_ca: {
            if (!bundle.ca || !bundle.word_conf || !bundle.vocab) {
                throw confrec::MethodInputMissing("bundle lacks m2 state");
            }
            DocTermMatrix test_terms = test_content(test, bundle);
            recs = confrec::m2_recommend(*bundle.ca, test_terms, *bundle.word_conf,
                                         kind, bundle.representation);
            break;
        }
        case Method::m3_linear_map: {
            if (!bundle.m3 || !bundle.vocab) {
                throw confrec::MethodInputMissing("bundle lacks m3 state");
            }
            DocTermMatrix test_terms = test_content(test, bundle);
            recs = confrec::m3_recommend(*bundle.m3, test_terms, kind,
                                         bundle.representation);
            break;
        }
        case Method::m4_content: {
            if (!bundle.word_conf || !bundle.vocab) {
                throw confrec::MethodInputMissing("bundle lacks m4 state");
            }
            DocTermMatrix test_terms = test_content(test, bundle);
            recs = confrec::m4_recommend(test_terms, *bundle.word_conf, kind,
                                         bundle.representation);
            break;
        }
        case Method::m5_collaborative: {
            if (!bundle.train_pc || !bundle.author_conf) {
                throw confrec::MethodInputMissing("bundle lacks m5 state");
            }
            // Test rows come from the authors' training-era histories (kept
            // in the bundle), never from the test label.
            std::vector<std::string> ids;
            Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(
                static_cast<Eigen::Index>(test.papers.size()),
                bundle.author_conf->counts.cols());
            for (std::size_t i = 0; i < test.papers.size(); ++i) {
                ids.push_back(test.papers[i].paper_id);
                rows.row(static_cast<Eigen::Index>(i)) =
                    author_history_rows(test.papers[i].author_ids,
                                        *bundle.author_conf)
                        .colwise()
                        .sum();
            }
            recs = confrec::m5_recommend(*bundle.train_pc, ids, rows, kind);
            break;
        }
        case Method::m6_hybrid: {
            if (!bundle.train_pc || !bundle.train_terms || !bundle.vocab) {
                throw confrec::MethodInputMissing("bundle lacks m6 state");
            }
            DocTermMatrix test_terms = test_content(test, bundle);
            recs = confrec::m6_recommend(*bundle.train_pc, *bundle.train_terms,
                                         test_terms, kind,
                                         bundle.representation);
            break;
        }
    }

    std::ofstream out(args.out);
    if (!out) throw confrec::Error("cannot write " + args.out);
    for (const auto& rec : recs) {
        out << confrec::to_json(rec, kind).dump() << "\n";
    }
    std::cout << "wrote " << recs.size() << " recommendations to " << args.out
              << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string recommendations;
    std::string corpus;
    std::string catalog;
    std::string scheme = "both";
    int k = 5;
    std::string out = "evaluation.json";
    std::string csv;
};

const std::vector<std::pair<std::string, double confrec::QueryMetrics::*>>&
metric_rows() {
    static const std::vector<std::pair<std::string, double confrec::QueryMetrics::*>>
        rows = {
            {"MAP", &confrec::QueryMetrics::average_precision_at_k},
            {"MNDCG", &confrec::QueryMetrics::ndcg_at_p},
            {"MRR", &confrec::QueryMetrics::reciprocal_rank},
            {"MR-P", &confrec::QueryMetrics::r_precision},
            {"MF-M", &confrec::QueryMetrics::f_measure_at_k},
            {"MP", &confrec::QueryMetrics::precision_at_k},
            {"MR", &confrec::QueryMetrics::recall_at_k},
        };
    return rows;
}

std::string metric_row_name(const std::string& base, int k) {
    if (base == "MRR" || base == "MR-P") return base;
    return base + "@" + std::to_string(k);
}

int run_evaluate(const EvaluateArgs& args) {
    auto catalog = confrec::load_catalog(args.catalog);
    Corpus corpus =
        confrec::load_corpus(args.corpus, confrec::CorpusFormat::jsonl, catalog);
    std::map<std::string, std::string> truth;
    for (const auto& p : corpus.papers) truth[p.paper_id] = p.venue_id;

    std::ifstream in(args.recommendations);
    if (!in) throw confrec::ParseError("cannot open " + args.recommendations);
    std::vector<RankedRecommendation> recs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            recs.push_back(confrec::recommendation_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw confrec::ParseError(args.recommendations + ":" +
                                      std::to_string(line_no) + ": " + e.what());
        }
    }

    std::vector<confrec::SchemeKind> schemes;
    if (args.scheme == "both") {
        schemes = {confrec::SchemeKind::actual, confrec::SchemeKind::sig};
    } else {
        schemes = {confrec::scheme_from_string(args.scheme)};
    }

    json out_json;
    out_json["k"] = args.k;
    std::vector<confrec::EvalReport> reports;
    for (auto kind : schemes) {
        confrec::RelevanceScheme scheme{kind, catalog};
        auto report = confrec::evaluate(recs, truth, scheme, args.k);
        out_json[to_string(kind)] = confrec::to_json(report);
        reports.push_back(std::move(report));
    }

    std::ofstream out(args.out);
    if (!out) throw confrec::Error("cannot write " + args.out);
    out << out_json.dump(2) << "\n";

    // Console summary, one metric per line.
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        std::cout << "scheme=" << to_string(schemes[s]) << "\n";
        for (const auto& [name, member] : metric_rows()) {
            std::cout << "  " << metric_row_name(name, args.k) << " = "
                      << reports[s].means.*member << "\n";
        }
    }

    if (!args.csv.empty()) {
        std::ofstream csv(args.csv);
        if (!csv) throw confrec::Error("cannot write " + args.csv);
        csv << "metric";
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            csv << "," << to_string(schemes[s]);
        }
        csv << "\n";
        for (const auto& [name, member] : metric_rows()) {
            csv << metric_row_name(name, args.k);
            for (const auto& report : reports) {
                csv << "," << json(report.means.*member).dump();
            }
            csv << "\n";
        }
    }
    return 0;
}

struct ReportArgs {
    std::vector<std::string> inputs;  // label=evaluation.json
    std::string out = "report.csv";
};

// Combines per-similarity evaluation files into the metrics x
// {similarity x scheme} table layout.
int run_report(const ReportArgs& args) {
    struct Column {
        std::string label;
        std::string scheme;
        json means;
    };
    std::vector<Column> columns;
    int k = 5;
    for (const auto& input : args.inputs) {
        auto eq = input.find('=');
        if (eq == std::string::npos) {
            throw confrec::InvalidParam("expected label=path, got: " + input);
        }
        std::string label = input.substr(0, eq);
        std::string path = input.substr(eq + 1);
        std::ifstream in(path);
        if (!in) throw confrec::ParseError("cannot open " + path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw confrec::ParseError(path + ": " + e.what());
        }
        k = j.at("k").get<int>();
        for (const char* scheme : {"actual", "sig"}) {
            if (j.contains(scheme)) {
                columns.push_back({label, scheme, j.at(scheme).at("means")});
            }
        }
    }
    if (columns.empty()) throw confrec::InvalidParam("no evaluation inputs");

    static const std::vector<std::pair<std::string, std::string>> rows = {
        {"MAP", "map_at_k"},       {"MNDCG", "ndcg_at_p"},
        {"MRR", "rr"},             {"MR-P", "r_precision"},
        {"MF-M", "f_measure_at_k"}, {"MP", "precision_at_k"},
        {"MR", "recall_at_k"},
    };
    std::ofstream out(args.out);
    if (!out) throw confrec::Error("cannot write " + args.out);
    out << "metric";
    for (const auto& col : columns) out << "," << col.label << ":" << col.scheme;
    out << "\n";
    for (const auto& [name, key] : rows) {
        out << metric_row_name(name, k);
        for (const auto& col : columns) {
            out << "," << col.means.at(key).dump();
        }
        out << "\n";
    }
    std::cout << "wrote " << args.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correspondence-analysis conference recommender"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "validate a corpus file");
    ingest->add_option("--input", ingest_args.input, "corpus file")->required();
    ingest->add_option("--format", ingest_args.format, "jsonl or csv");
    ingest->add_option("--catalog", ingest_args.catalog, "venue catalog JSON")
        ->required();
    ingest->add_option("--out", ingest_args.out, "write normalized JSONL here");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    synth->add_option("--venues", synth_args.params.n_venues);
    synth->add_option("--topics-per-venue", synth_args.params.topics_per_venue);
    synth->add_option("--train", synth_args.params.n_train);
    synth->add_option("--test", synth_args.params.n_test);
    synth->add_option("--separation", synth_args.params.separation);
    synth->add_option("--seed", synth_args.params.seed);
    synth->add_option("--out-dir", synth_args.out_dir);

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "fit a recommendation model");
    train->add_option("--corpus", train_args.corpus)->required();
    train->add_option("--catalog", train_args.catalog)->required();
    train->add_option("--method", train_args.method, "m1..m6");
    train->add_option("--representation", train_args.representation,
                      "tfidf or topics");
    train->add_option("--test-year", train_args.test_year);
    train->add_option("--dims", train_args.dims);
    train->add_option("--dims-paper", train_args.dims_paper);
    train->add_option("--dims-conf", train_args.dims_conf);
    train->add_option("--min-df", train_args.min_df);
    train->add_option("--topics", train_args.topics);
    train->add_option("--alpha", train_args.alpha);
    train->add_option("--beta", train_args.beta);
    train->add_option("--iterations", train_args.iterations);
    train->add_option("--fold-iterations", train_args.fold_iterations);
    train->add_option("--seed", train_args.seed);
    train->add_option("--out", train_args.out);
    train->add_option("--export-coords", train_args.export_coords,
                      "prefix for principal-coordinate CSV files");

    RecommendArgs rec_args;
    auto* recommend = app.add_subcommand("recommend", "rank venues for test papers");
    recommend->add_option("--bundle", rec_args.bundle)->required();
    recommend->add_option("--corpus", rec_args.corpus)->required();
    recommend->add_option("--catalog", rec_args.catalog)->required();
    recommend->add_option("--similarity", rec_args.similarity,
                          "euclidean, cosine or pearson");
    recommend->add_option("--out", rec_args.out);

    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand("evaluate", "score recommendations");
    evaluate->add_option("--recommendations", eval_args.recommendations)->required();
    evaluate->add_option("--corpus", eval_args.corpus)->required();
    evaluate->add_option("--catalog", eval_args.catalog)->required();
    evaluate->add_option("--scheme", eval_args.scheme, "actual, sig or both");
    evaluate->add_option("--k", eval_args.k);
    evaluate->add_option("--out", eval_args.out);
    evaluate->add_option("--csv", eval_args.csv);

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "combine evaluations into a table");
    report->add_option("inputs", report_args.inputs, "label=evaluation.json")
        ->required();
    report->add_option("--out", report_args.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // bad usage is a validation failure
    }

    try {
        if (*ingest) return run_ingest(ingest_args);
        if (*synth) return run_synth(synth_args);
        if (*train) return run_train(train_args);
        if (*recommend) return run_recommend(rec_args);
        if (*evaluate) return run_evaluate(eval_args);
        if (*report) return run_report(report_args);
    } catch (const confrec::ValidationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
