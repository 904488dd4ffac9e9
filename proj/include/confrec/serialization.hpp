#ifndef CONFREC_SERIALIZATION_HPP
#define CONFREC_SERIALIZATION_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confrec/ca.hpp"
#include "confrec/evaluation.hpp"
#include "confrec/lda.hpp"
#include "confrec/recommenders.hpp"
#include "confrec/text_features.hpp"
#include "confrec/types.hpp"

namespace confrec {

nlohmann::json to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VenueCatalog& catalog);
VenueCatalog catalog_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ContingencyTable& table);
ContingencyTable table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DocTermMatrix& m);
DocTermMatrix doc_term_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CaModel& model);
CaModel ca_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LdaModel& model);
LdaModel lda_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const M3Model& model);
M3Model m3_model_from_json(const nlohmann::json& j);

/// One recommendation as a JSONL line; invalid scores serialize as null.
nlohmann::json to_json(const RankedRecommendation& rec, SimilarityKind kind);
RankedRecommendation recommendation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QueryMetrics& m);
nlohmann::json to_json(const EvalReport& report);

/// Everything cmd_recommend needs for one trained method, in one versioned
/// JSON file.
struct ModelBundle {
    int format_version = 1;
    Method method = Method::m4_content;
    Representation representation = Representation::tfidf;
    int test_year = 0;
    std::uint64_t seed = 1;
    int dims = 10;
    int dims_paper = 10;
    int dims_conf = 10;
    int min_df = 1;
    int fold_iterations = 50;
    LdaConfig lda_config;

    VenueCatalog catalog;
    std::optional<Vocabulary> vocab;
    std::optional<LdaModel> lda;
    std::optional<ContingencyTable> author_conf;  // training author histories
    std::optional<ContingencyTable> word_conf;    // word/topic x conference
    std::optional<CaModel> ca;                    // m1 or m2 model
    std::optional<M3Model> m3;
    std::optional<ContingencyTable> train_pc;     // m5/m6 ratings
    std::optional<DocTermMatrix> train_terms;     // m6 content space
};

void save_bundle(const ModelBundle& bundle, const std::string& path);
ModelBundle load_bundle(const std::string& path);

}  // namespace confrec

#endif  // CONFREC_SERIALIZATION_HPP
