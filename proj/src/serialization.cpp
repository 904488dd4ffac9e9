#include "confrec/serialization.hpp"

#include <fstream>
#include <limits>

namespace confrec {

using nlohmann::json;

json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["data"] = std::move(rows);
    return j;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    Eigen::MatrixXd m(rows, cols);
    const json& data = j.at("data");
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = data.at(static_cast<std::size_t>(i))
                          .at(static_cast<std::size_t>(c))
                          .get<double>();
        }
    }
    return m;
}

json to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
    }
    return v;
}

json to_json(const VenueCatalog& catalog) {
    json j = json::object();
    for (const auto& [venue, sig] : catalog.sig_of) j[venue] = sig;
    return j;
}

VenueCatalog catalog_from_json(const json& j) {
    VenueCatalog catalog;
    for (auto it = j.begin(); it != j.end(); ++it) {
        catalog.venues.push_back(it.key());
        catalog.sig_of[it.key()] = it.value().get<std::string>();
    }
    catalog.validate();
    return catalog;
}

json to_json(const Vocabulary& vocab) {
    json j;
    j["terms"] = vocab.terms;
    j["doc_freq"] = vocab.doc_freq;
    j["n_docs"] = vocab.n_docs;
    return j;
}

Vocabulary vocabulary_from_json(const json& j) {
    Vocabulary vocab;
    vocab.terms = j.at("terms").get<std::vector<std::string>>();
    vocab.doc_freq = j.at("doc_freq").get<std::vector<int>>();
    vocab.n_docs = j.at("n_docs").get<int>();
    vocab.rebuild_index();
    return vocab;
}

json to_json(const ContingencyTable& table) {
    json j;
    j["row_labels"] = table.row_labels;
    j["col_labels"] = table.col_labels;
    j["counts"] = to_json(table.counts);
    return j;
}

ContingencyTable table_from_json(const json& j) {
    ContingencyTable table;
    table.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    table.col_labels = j.at("col_labels").get<std::vector<std::string>>();
    table.counts = matrix_from_json(j.at("counts"));
    table.validate();
    return table;
}

namespace {

std::string weighting_name(Weighting w) {
    switch (w) {
        case Weighting::count: return "count";
        case Weighting::tfidf: return "tfidf";
        case Weighting::proportions: return "proportions";
    }
    return "?";
}

Weighting weighting_from_name(const std::string& s) {
    if (s == "count") return Weighting::count;
    if (s == "tfidf") return Weighting::tfidf;
    if (s == "proportions") return Weighting::proportions;
    throw ParseError("unknown weighting: " + s);
}

}  // namespace

json to_json(const DocTermMatrix& m) {
    json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["values"] = to_json(m.values);
    j["weighting"] = weighting_name(m.weighting);
    j["zero_rows"] = m.zero_rows;
    return j;
}

DocTermMatrix doc_term_from_json(const json& j) {
    DocTermMatrix m;
    m.rows = j.at("rows").get<std::vector<std::string>>();
    m.cols = j.at("cols").get<std::vector<std::string>>();
    m.values = matrix_from_json(j.at("values"));
    m.weighting = weighting_from_name(j.at("weighting").get<std::string>());
    m.zero_rows = j.at("zero_rows").get<std::vector<Eigen::Index>>();
    return m;
}

json to_json(const CaModel& model) {
    json j;
    j["row_labels"] = model.row_labels;
    j["col_labels"] = model.col_labels;
    j["row_masses"] = to_json(model.row_masses);
    j["col_masses"] = to_json(model.col_masses);
    j["singular_values"] = to_json(model.singular_values);
    j["row_standard"] = to_json(model.row_standard);
    j["col_standard"] = to_json(model.col_standard);
    j["total_inertia"] = model.total_inertia;
    return j;
}

CaModel ca_model_from_json(const json& j) {
    CaModel model;
    model.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    model.col_labels = j.at("col_labels").get<std::vector<std::string>>();
    model.row_masses = vector_from_json(j.at("row_masses"));
    model.col_masses = vector_from_json(j.at("col_masses"));
    model.singular_values = vector_from_json(j.at("singular_values"));
    model.row_standard = matrix_from_json(j.at("row_standard"));
    model.col_standard = matrix_from_json(j.at("col_standard"));
    model.total_inertia = j.at("total_inertia").get<double>();
    // principal coordinates and inertias are derived quantities
    model.row_principal = model.row_standard * model.singular_values.asDiagonal();
    model.col_principal = model.col_standard * model.singular_values.asDiagonal();
    model.principal_inertias = model.singular_values.array().square();
    return model;
}

json to_json(const LdaModel& model) {
    json j;
    j["n_topics"] = model.config.n_topics;
    j["alpha"] = model.config.alpha;
    j["beta"] = model.config.beta;
    j["n_iterations"] = model.config.n_iterations;
    j["seed"] = model.config.seed;
    j["vocab_size"] = model.vocab_size;
    j["tokens"] = model.tokens;
    j["assignments"] = model.assignments;
    return j;
}

LdaModel lda_model_from_json(const json& j) {
    LdaConfig config;
    config.n_topics = j.at("n_topics").get<int>();
    config.alpha = j.at("alpha").get<double>();
    config.beta = j.at("beta").get<double>();
    config.n_iterations = j.at("n_iterations").get<int>();
    config.seed = j.at("seed").get<std::uint64_t>();

    LdaModel model;
    model.config = config;
    model.vocab_size = j.at("vocab_size").get<int>();
    model.tokens = j.at("tokens").get<std::vector<std::vector<int>>>();
    model.assignments = j.at("assignments").get<std::vector<std::vector<int>>>();

    // Rebuild the count tables from the assignments.
    int k = config.n_topics;
    model.topic_word = Eigen::MatrixXi::Zero(k, model.vocab_size);
    model.doc_topic = Eigen::MatrixXi::Zero(
        static_cast<Eigen::Index>(model.tokens.size()), k);
    model.topic_totals = Eigen::VectorXi::Zero(k);
    if (model.assignments.size() != model.tokens.size()) {
        throw ParseError("LDA assignments do not match tokens");
    }
    for (std::size_t d = 0; d < model.tokens.size(); ++d) {
        if (model.assignments[d].size() != model.tokens[d].size()) {
            throw ParseError("LDA assignments do not match tokens");
        }
        for (std::size_t n = 0; n < model.tokens[d].size(); ++n) {
            int topic = model.assignments[d][n];
            int w = model.tokens[d][n];
            model.doc_topic(static_cast<Eigen::Index>(d), topic) += 1;
            model.topic_word(topic, w) += 1;
            model.topic_totals(topic) += 1;
        }
    }
    model.rng.seed(config.seed);
    return model;
}

json to_json(const M3Model& model) {
    json j;
    j["paper_space"] = to_json(model.paper_space);
    j["conf_space"] = to_json(model.conf_space);
    j["transform"] = to_json(model.map.transform);
    j["rank"] = model.map.rank;
    return j;
}

M3Model m3_model_from_json(const json& j) {
    M3Model model;
    model.paper_space = ca_model_from_json(j.at("paper_space"));
    model.conf_space = ca_model_from_json(j.at("conf_space"));
    model.map.transform = matrix_from_json(j.at("transform"));
    model.map.rank = j.at("rank").get<Eigen::Index>();
    return model;
}

json to_json(const RankedRecommendation& rec, SimilarityKind kind) {
    json ranking = json::array();
    for (const auto& item : rec.ranking) {
        json entry = json::array();
        entry.push_back(item.label);
        if (item.valid) entry.push_back(item.score);
        else entry.push_back(nullptr);
        ranking.push_back(std::move(entry));
    }
    json j;
    j["paper_id"] = rec.paper_id;
    j["method"] = to_string(rec.method);
    j["representation"] = to_string(rec.representation);
    j["similarity"] = to_string(kind);
    j["degenerate"] = rec.degenerate;
    j["ranking"] = std::move(ranking);
    return j;
}

RankedRecommendation recommendation_from_json(const json& j) {
    RankedRecommendation rec;
    rec.paper_id = j.at("paper_id").get<std::string>();
    rec.method = method_from_string(j.at("method").get<std::string>());
    rec.representation =
        representation_from_string(j.at("representation").get<std::string>());
    rec.degenerate = j.at("degenerate").get<bool>();
    for (const auto& entry : j.at("ranking")) {
        RankedItem item;
        item.label = entry.at(0).get<std::string>();
        if (entry.at(1).is_null()) {
            item.valid = false;
            item.score = std::numeric_limits<double>::quiet_NaN();
        } else {
            item.score = entry.at(1).get<double>();
        }
        rec.ranking.push_back(std::move(item));
    }
    return rec;
}

json to_json(const QueryMetrics& m) {
    json j;
    j["map_at_k"] = m.average_precision_at_k;
    j["ndcg_at_p"] = m.ndcg_at_p;
    j["rr"] = m.reciprocal_rank;
    j["r_precision"] = m.r_precision;
    j["f_measure_at_k"] = m.f_measure_at_k;
    j["precision_at_k"] = m.precision_at_k;
    j["recall_at_k"] = m.recall_at_k;
    return j;
}

json to_json(const EvalReport& report) {
    json j;
    j["scheme"] = to_string(report.scheme);
    j["k"] = report.k;
    j["means"] = to_json(report.means);
    json per_query = json::object();
    for (const auto& [paper_id, metrics] : report.per_query) {
        per_query[paper_id] = to_json(metrics);
    }
    j["per_query"] = std::move(per_query);
    return j;
}

namespace {

constexpr int kBundleVersion = 1;

}  // namespace

void save_bundle(const ModelBundle& bundle, const std::string& path) {
    json j;
    j["format_version"] = kBundleVersion;
    j["method"] = to_string(bundle.method);
    j["representation"] = to_string(bundle.representation);
    j["test_year"] = bundle.test_year;
    j["seed"] = bundle.seed;
    j["dims"] = bundle.dims;
    j["dims_paper"] = bundle.dims_paper;
    j["dims_conf"] = bundle.dims_conf;
    j["min_df"] = bundle.min_df;
    j["fold_iterations"] = bundle.fold_iterations;
    j["lda"] = {{"n_topics", bundle.lda_config.n_topics},
                {"alpha", bundle.lda_config.alpha},
                {"beta", bundle.lda_config.beta},
                {"n_iterations", bundle.lda_config.n_iterations},
                {"seed", bundle.lda_config.seed}};
    j["catalog"] = to_json(bundle.catalog);
    if (bundle.vocab) j["vocabulary"] = to_json(*bundle.vocab);
    if (bundle.lda) j["lda_model"] = to_json(*bundle.lda);
    if (bundle.author_conf) j["author_conf"] = to_json(*bundle.author_conf);
    if (bundle.word_conf) j["word_conf"] = to_json(*bundle.word_conf);
    if (bundle.ca) j["ca_model"] = to_json(*bundle.ca);
    if (bundle.m3) j["m3_model"] = to_json(*bundle.m3);
    if (bundle.train_pc) j["train_pc"] = to_json(*bundle.train_pc);
    if (bundle.train_terms) j["train_terms"] = to_json(*bundle.train_terms);

    std::ofstream out(path);
    if (!out) throw Error("cannot write bundle: " + path);
    out << j.dump() << "\n";
}

ModelBundle load_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open bundle: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    int version = j.at("format_version").get<int>();
    if (version != kBundleVersion) {
        throw ParseError("unsupported bundle version " + std::to_string(version));
    }
    ModelBundle bundle;
    bundle.format_version = version;
    bundle.method = method_from_string(j.at("method").get<std::string>());
    bundle.representation =
        representation_from_string(j.at("representation").get<std::string>());
    bundle.test_year = j.at("test_year").get<int>();
    bundle.seed = j.at("seed").get<std::uint64_t>();
    bundle.dims = j.at("dims").get<int>();
    bundle.dims_paper = j.at("dims_paper").get<int>();
    bundle.dims_conf = j.at("dims_conf").get<int>();
    bundle.min_df = j.at("min_df").get<int>();
    bundle.fold_iterations = j.at("fold_iterations").get<int>();
    const json& lda = j.at("lda");
    bundle.lda_config.n_topics = lda.at("n_topics").get<int>();
    bundle.lda_config.alpha = lda.at("alpha").get<double>();
    bundle.lda_config.beta = lda.at("beta").get<double>();
    bundle.lda_config.n_iterations = lda.at("n_iterations").get<int>();
    bundle.lda_config.seed = lda.at("seed").get<std::uint64_t>();
    bundle.catalog = catalog_from_json(j.at("catalog"));
    if (j.contains("vocabulary")) bundle.vocab = vocabulary_from_json(j.at("vocabulary"));
    if (j.contains("lda_model")) bundle.lda = lda_model_from_json(j.at("lda_model"));
    if (j.contains("author_conf")) bundle.author_conf = table_from_json(j.at("author_conf"));
    if (j.contains("word_conf")) bundle.word_conf = table_from_json(j.at("word_conf"));
    if (j.contains("ca_model")) bundle.ca = ca_model_from_json(j.at("ca_model"));
    if (j.contains("m3_model")) bundle.m3 = m3_model_from_json(j.at("m3_model"));
    if (j.contains("train_pc")) bundle.train_pc = table_from_json(j.at("train_pc"));
    if (j.contains("train_terms")) bundle.train_terms = doc_term_from_json(j.at("train_terms"));
    return bundle;
}

}  // namespace confrec
