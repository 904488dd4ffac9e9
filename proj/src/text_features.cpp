#include "confrec/text_features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_set>

namespace confrec {

namespace {

// Fixed English stop-word list.
const std::unordered_set<std::string>& stop_words() {
    static const std::unordered_set<std::string> words = {
        "about", "above", "after", "again", "against", "all", "am", "an",
        "and", "any", "are", "as", "at", "be", "because", "been", "before",
        "being", "below", "between", "both", "but", "by", "can", "cannot",
        "could", "did", "do", "does", "doing", "down", "during", "each",
        "few", "for", "from", "further", "had", "has", "have", "having",
        "he", "her", "here", "hers", "herself", "him", "himself", "his",
        "how", "if", "in", "into", "is", "it", "its", "itself", "me",
        "more", "most", "my", "myself", "no", "nor", "not", "of", "off",
        "on", "once", "only", "or", "other", "ought", "our", "ours",
        "ourselves", "out", "over", "own", "same", "she", "should", "so",
        "some", "such", "than", "that", "the", "their", "theirs", "them",
        "themselves", "then", "there", "these", "they", "this", "those",
        "through", "to", "too", "under", "until", "up", "very", "was",
        "we", "were", "what", "when", "where", "which", "while", "who",
        "whom", "why", "with", "would", "you", "your", "yours", "yourself",
        "yourselves",
    };
    return words;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 2 && stop_words().count(cur) == 0) {
            tokens.push_back(cur);
        }
        cur.clear();
    };
    for (char ch : text) {
        unsigned char u = static_cast<unsigned char>(ch);
        if (std::isalnum(u)) {
            cur += static_cast<char>(std::tolower(u));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

int Vocabulary::index_of(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? -1 : it->second;
}

void Vocabulary::rebuild_index() {
    index_.clear();
    index_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        index_[terms[i]] = static_cast<int>(i);
    }
}

Vocabulary build_vocabulary(const Corpus& corpus, int min_df) {
    if (min_df < 1) throw InvalidParam("min_df must be >= 1");
    std::map<std::string, int> df;  // sorted term order for free
    for (const auto& p : corpus.papers) {
        auto tokens = tokenize(p.abstract_text);
        std::unordered_set<std::string> distinct(tokens.begin(), tokens.end());
        for (const auto& t : distinct) df[t] += 1;
    }
    Vocabulary vocab;
    vocab.n_docs = static_cast<int>(corpus.papers.size());
    for (const auto& [term, freq] : df) {
        if (freq >= min_df) {
            vocab.terms.push_back(term);
            vocab.doc_freq.push_back(freq);
        }
    }
    if (vocab.terms.empty()) {
        throw EmptyVocabulary("no term reaches min_df=" + std::to_string(min_df));
    }
    vocab.rebuild_index();
    return vocab;
}

Eigen::VectorXd term_frequency(const Eigen::VectorXd& doc_counts) {
    if (doc_counts.size() == 0 || doc_counts.maxCoeff() <= 0.0) {
        throw AllZeroDocument("document has no positive term count");
    }
    return doc_counts / doc_counts.maxCoeff();
}

Eigen::VectorXd inverse_document_frequency(const Vocabulary& vocab, int n_docs) {
    Eigen::VectorXd idf(static_cast<Eigen::Index>(vocab.terms.size()));
    for (std::size_t i = 0; i < vocab.doc_freq.size(); ++i) {
        int df = vocab.doc_freq[i];
        if (df < 1 || df > n_docs) {
            throw InvalidCounts("doc_freq of '" + vocab.terms[i] + "' is " +
                                std::to_string(df) + " with N=" +
                                std::to_string(n_docs));
        }
        idf(static_cast<Eigen::Index>(i)) =
            std::log(static_cast<double>(n_docs) / static_cast<double>(df));
    }
    return idf;
}

DocTermMatrix count_matrix(const Corpus& corpus, const Vocabulary& vocab) {
    DocTermMatrix m;
    m.weighting = Weighting::count;
    m.cols = vocab.terms;
    m.rows.reserve(corpus.papers.size());
    m.values = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(corpus.papers.size()),
        static_cast<Eigen::Index>(vocab.terms.size()));
    for (std::size_t i = 0; i < corpus.papers.size(); ++i) {
        const auto& p = corpus.papers[i];
        m.rows.push_back(p.paper_id);
        bool any = false;
        for (const auto& token : tokenize(p.abstract_text)) {
            int col = vocab.index_of(token);
            if (col >= 0) {
                m.values(static_cast<Eigen::Index>(i), col) += 1.0;
                any = true;
            }
        }
        if (!any) m.zero_rows.push_back(static_cast<Eigen::Index>(i));
    }
    return m;
}

DocTermMatrix tfidf_matrix(const Corpus& corpus, const Vocabulary& vocab) {
    DocTermMatrix m = count_matrix(corpus, vocab);
    m.weighting = Weighting::tfidf;
    Eigen::VectorXd idf = inverse_document_frequency(vocab, vocab.n_docs);
    for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
        double max_count = m.values.row(i).maxCoeff();
        if (max_count <= 0.0) continue;  // flagged in zero_rows already
        m.values.row(i) =
            (m.values.row(i) / max_count).cwiseProduct(idf.transpose());
    }
    // A row can also become all-zero when its only terms are ubiquitous
    // (IDF 0); re-derive the flags from the weighted matrix.
    m.zero_rows.clear();
    for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
        if (m.values.row(i).maxCoeff() <= 0.0) m.zero_rows.push_back(i);
    }
    return m;
}

std::vector<std::vector<int>> to_token_ids(const Corpus& corpus,
                                           const Vocabulary& vocab) {
    std::vector<std::vector<int>> docs;
    docs.reserve(corpus.papers.size());
    for (const auto& p : corpus.papers) {
        std::vector<int> ids;
        for (const auto& token : tokenize(p.abstract_text)) {
            int id = vocab.index_of(token);
            if (id >= 0) ids.push_back(id);
        }
        docs.push_back(std::move(ids));
    }
    return docs;
}

ContingencyTable word_conference_matrix(const DocTermMatrix& paper_matrix,
                                        const Corpus& corpus,
                                        std::vector<std::string>* empty_venues) {
    if (paper_matrix.rows.size() != corpus.papers.size()) {
        throw ValidationError("paper matrix rows do not match corpus papers");
    }
    Eigen::Index n_words = paper_matrix.values.cols();
    Eigen::Index n_venues = static_cast<Eigen::Index>(corpus.catalog.venues.size());
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(n_words, n_venues);
    Eigen::VectorXd members = Eigen::VectorXd::Zero(n_venues);
    for (std::size_t i = 0; i < corpus.papers.size(); ++i) {
        if (paper_matrix.rows[i] != corpus.papers[i].paper_id) {
            throw ValidationError("paper matrix row order does not match corpus");
        }
        Eigen::Index v = static_cast<Eigen::Index>(
            corpus.catalog.index_of(corpus.papers[i].venue_id));
        sums.col(v) += paper_matrix.values.row(static_cast<Eigen::Index>(i)).transpose();
        members(v) += 1.0;
    }
    ContingencyTable table;
    table.row_labels = paper_matrix.cols;
    table.col_labels = corpus.catalog.venues;
    table.counts = Eigen::MatrixXd::Zero(n_words, n_venues);
    for (Eigen::Index v = 0; v < n_venues; ++v) {
        if (members(v) > 0.0) {
            table.counts.col(v) = sums.col(v) / members(v);
        } else if (empty_venues) {
            empty_venues->push_back(corpus.catalog.venues[static_cast<std::size_t>(v)]);
        }
    }
    return table;
}

}  // namespace confrec
