#include "confrec/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace confrec {

using nlohmann::json;

std::size_t VenueCatalog::index_of(const std::string& venue_id) const {
    auto it = std::find(venues.begin(), venues.end(), venue_id);
    if (it == venues.end()) {
        throw ValidationError("unknown venue: " + venue_id);
    }
    return static_cast<std::size_t>(it - venues.begin());
}

std::size_t VenueCatalog::sig_count() const {
    std::set<std::string> sigs;
    for (const auto& [venue, sig] : sig_of) sigs.insert(sig);
    return sigs.size();
}

void VenueCatalog::validate() const {
    std::set<std::string> seen;
    for (const auto& v : venues) {
        if (v.empty()) throw ValidationError("empty venue id in catalog");
        if (!seen.insert(v).second) {
            throw ValidationError("duplicate venue id in catalog: " + v);
        }
        if (sig_of.find(v) == sig_of.end()) {
            throw ValidationError("venue without SIG: " + v);
        }
    }
    if (sig_of.size() != venues.size()) {
        throw ValidationError("catalog SIG map lists venues outside the venue list");
    }
}

void Corpus::validate() const {
    catalog.validate();
    std::unordered_set<std::string> ids;
    ids.reserve(papers.size());
    for (const auto& p : papers) {
        if (p.paper_id.empty()) throw ValidationError("empty paper_id");
        if (!ids.insert(p.paper_id).second) {
            throw ValidationError("duplicate paper_id: " + p.paper_id);
        }
        if (p.author_ids.empty()) {
            throw ValidationError("paper " + p.paper_id + " has no authors");
        }
        std::set<std::string> authors(p.author_ids.begin(), p.author_ids.end());
        if (authors.size() != p.author_ids.size()) {
            throw ValidationError("paper " + p.paper_id + " repeats an author id");
        }
        if (p.venue_id.empty()) {
            throw ValidationError("paper " + p.paper_id + " has empty venue");
        }
        if (!catalog.contains(p.venue_id)) {
            throw ValidationError("paper " + p.paper_id + " has unknown venue: " +
                                  p.venue_id);
        }
        if (p.year <= 0) {
            throw ValidationError("paper " + p.paper_id + " has non-positive year");
        }
    }
}

void ContingencyTable::validate() const {
    if (counts.rows() != static_cast<Eigen::Index>(row_labels.size()) ||
        counts.cols() != static_cast<Eigen::Index>(col_labels.size())) {
        throw ValidationError("contingency table labels do not match matrix shape");
    }
    auto check_unique = [](const std::vector<std::string>& labels, const char* axis) {
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) {
            throw ValidationError(std::string("duplicate ") + axis + " label");
        }
    };
    check_unique(row_labels, "row");
    check_unique(col_labels, "column");
    if ((counts.array() < 0.0).any()) {
        throw ValidationError("negative entry in contingency table");
    }
}

CorpusFormat corpus_format_from_string(const std::string& s) {
    if (s == "jsonl") return CorpusFormat::jsonl;
    if (s == "csv") return CorpusFormat::csv;
    throw InvalidParam("unknown corpus format: " + s);
}

VenueCatalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(path + ": catalog must be a JSON object");
    VenueCatalog catalog;
    for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann iterates keys sorted
        catalog.venues.push_back(it.key());
        if (!it.value().is_string()) {
            throw ParseError(path + ": SIG of " + it.key() + " must be a string");
        }
        catalog.sig_of[it.key()] = it.value().get<std::string>();
    }
    catalog.validate();
    return catalog;
}

void save_catalog(const VenueCatalog& catalog, const std::string& path) {
    json j = json::object();
    for (const auto& [venue, sig] : catalog.sig_of) j[venue] = sig;
    std::ofstream out(path);
    if (!out) throw Error("cannot write catalog file: " + path);
    out << j.dump(2) << "\n";
}

namespace {

PaperRecord record_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": record is not an object");
    for (const char* field : {"paper_id", "title", "authors", "venue", "year", "abstract"}) {
        if (!j.contains(field)) {
            throw ValidationError(where + ": missing field '" + field + "'");
        }
    }
    PaperRecord rec;
    try {
        rec.paper_id = j.at("paper_id").get<std::string>();
        rec.title = j.at("title").get<std::string>();
        rec.author_ids = j.at("authors").get<std::vector<std::string>>();
        rec.venue_id = j.at("venue").get<std::string>();
        rec.year = j.at("year").get<int>();
        rec.abstract_text = j.at("abstract").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
    return rec;
}

json record_to_json(const PaperRecord& rec) {
    json j;
    j["paper_id"] = rec.paper_id;
    j["title"] = rec.title;
    j["authors"] = rec.author_ids;
    j["venue"] = rec.venue_id;
    j["year"] = rec.year;
    j["abstract"] = rec.abstract_text;
    return j;
}

// RFC4180-ish field splitting, enough for our own writer plus hand-made files.
std::vector<std::string> split_csv_line(const std::string& line,
                                        const std::string& where) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (in_quotes) throw ParseError(where + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

const char* kCsvHeader = "paper_id,title,authors,venue,year,abstract";

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format,
                   const VenueCatalog& catalog) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file: " + path);
    Corpus corpus;
    corpus.catalog = catalog;

    std::string line;
    int line_no = 0;
    if (format == CorpusFormat::jsonl) {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            std::string where = path + ":" + std::to_string(line_no);
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception& e) {
                throw ParseError(where + ": " + e.what());
            }
            corpus.papers.push_back(record_from_json(j, where));
        }
    } else {
        if (!std::getline(in, line)) throw ParseError(path + ": empty CSV file");
        ++line_no;
        if (line != kCsvHeader) {
            throw ParseError(path + ":1: expected header '" +
                             std::string(kCsvHeader) + "'");
        }
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            std::string where = path + ":" + std::to_string(line_no);
            auto fields = split_csv_line(line, where);
            if (fields.size() != 6) {
                throw ParseError(where + ": expected 6 fields, got " +
                                 std::to_string(fields.size()));
            }
            PaperRecord rec;
            rec.paper_id = fields[0];
            rec.title = fields[1];
            std::stringstream authors(fields[2]);
            std::string author;
            while (std::getline(authors, author, ';')) {
                if (!author.empty()) rec.author_ids.push_back(author);
            }
            rec.venue_id = fields[3];
            try {
                rec.year = std::stoi(fields[4]);
            } catch (const std::exception&) {
                throw ParseError(where + ": year is not an integer: " + fields[4]);
            }
            rec.abstract_text = fields[5];
            corpus.papers.push_back(std::move(rec));
        }
    }
    corpus.validate();
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path,
                 CorpusFormat format) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write corpus file: " + path);
    if (format == CorpusFormat::jsonl) {
        for (const auto& p : corpus.papers) {
            out << record_to_json(p).dump() << "\n";
        }
    } else {
        out << kCsvHeader << "\n";
        for (const auto& p : corpus.papers) {
            std::string authors;
            for (std::size_t i = 0; i < p.author_ids.size(); ++i) {
                if (i) authors += ';';
                authors += p.author_ids[i];
            }
            out << csv_escape(p.paper_id) << ',' << csv_escape(p.title) << ','
                << csv_escape(authors) << ',' << csv_escape(p.venue_id) << ','
                << p.year << ',' << csv_escape(p.abstract_text) << "\n";
        }
    }
}

std::pair<Corpus, Corpus> split_by_year(const Corpus& corpus, int test_year) {
    if (corpus.papers.empty()) throw EmptySplit("cannot split an empty corpus");
    Corpus train, test;
    train.catalog = corpus.catalog;
    test.catalog = corpus.catalog;
    for (const auto& p : corpus.papers) {
        if (p.year < test_year) train.papers.push_back(p);
        else if (p.year == test_year) test.papers.push_back(p);
        // later years are excluded
    }
    if (train.papers.empty()) {
        throw EmptySplit("no papers before year " + std::to_string(test_year));
    }
    if (test.papers.empty()) {
        throw EmptySplit("no papers in year " + std::to_string(test_year));
    }
    return {std::move(train), std::move(test)};
}

ContingencyTable author_conference_matrix(const Corpus& corpus) {
    if (corpus.papers.empty()) {
        throw ValidationError("author_conference_matrix needs a nonempty corpus");
    }
    std::set<std::string> author_set;
    for (const auto& p : corpus.papers) {
        author_set.insert(p.author_ids.begin(), p.author_ids.end());
    }
    ContingencyTable table;
    table.row_labels.assign(author_set.begin(), author_set.end());
    table.col_labels = corpus.catalog.venues;
    table.counts = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(table.row_labels.size()),
        static_cast<Eigen::Index>(table.col_labels.size()));

    std::unordered_map<std::string, Eigen::Index> author_row;
    for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
        author_row[table.row_labels[i]] = static_cast<Eigen::Index>(i);
    }
    for (const auto& p : corpus.papers) {
        Eigen::Index col =
            static_cast<Eigen::Index>(corpus.catalog.index_of(p.venue_id));
        for (const auto& a : p.author_ids) {
            table.counts(author_row.at(a), col) += 1.0;
        }
    }
    return table;
}

ContingencyTable paper_conference_matrix(const Corpus& corpus,
                                         const Corpus& author_history) {
    if (corpus.papers.empty()) {
        throw ValidationError("paper_conference_matrix needs a nonempty corpus");
    }
    // author -> venue-count vector, built from the history corpus
    std::unordered_map<std::string, Eigen::VectorXd> history;
    Eigen::Index n_venues = static_cast<Eigen::Index>(corpus.catalog.venues.size());
    for (const auto& p : author_history.papers) {
        Eigen::Index col =
            static_cast<Eigen::Index>(corpus.catalog.index_of(p.venue_id));
        for (const auto& a : p.author_ids) {
            auto [it, inserted] =
                history.try_emplace(a, Eigen::VectorXd::Zero(n_venues));
            it->second(col) += 1.0;
        }
    }

    ContingencyTable table;
    table.col_labels = corpus.catalog.venues;
    table.row_labels.reserve(corpus.papers.size());
    table.counts = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(corpus.papers.size()), n_venues);
    for (std::size_t i = 0; i < corpus.papers.size(); ++i) {
        const auto& p = corpus.papers[i];
        table.row_labels.push_back(p.paper_id);
        for (const auto& a : p.author_ids) {
            auto it = history.find(a);
            if (it != history.end()) {
                table.counts.row(static_cast<Eigen::Index>(i)) +=
                    it->second.transpose();
            }
        }
    }
    return table;
}

namespace {

// 53-bit uniform double in [0, 1); portable across standard libraries.
double next_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t next_index(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

constexpr int kWordsPerTopic = 40;
constexpr int kSharedVocab = 300;
constexpr int kAuthorsPerVenue = 12;
constexpr int kVenuesPerSig = 4;

std::string venue_word(int venue, int topic, int word) {
    return "v" + std::to_string(venue + 1) + "t" + std::to_string(topic + 1) +
           "w" + std::to_string(word);
}

std::string synth_abstract(std::mt19937_64& rng, const SynthParams& params,
                           int venue) {
    int length = 40 + static_cast<int>(next_index(rng, 41));
    int dominant = static_cast<int>(next_index(
        rng, static_cast<std::uint64_t>(params.topics_per_venue)));
    std::string text;
    for (int w = 0; w < length; ++w) {
        if (next_double(rng) < params.separation) {
            int topic = dominant;
            if (next_double(rng) >= 0.8) {
                topic = static_cast<int>(next_index(
                    rng, static_cast<std::uint64_t>(params.topics_per_venue)));
            }
            int word = static_cast<int>(next_index(rng, kWordsPerTopic));
            text += venue_word(venue, topic, word);
        } else {
            text += "shared" + std::to_string(next_index(rng, kSharedVocab));
        }
        text += ' ';
    }
    return text;
}

std::vector<std::string> pick_authors(std::mt19937_64& rng,
                                      const std::vector<std::string>& pool) {
    int k = 1 + static_cast<int>(next_index(rng, 3));
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    // partial Fisher-Yates, enough for k picks
    for (int i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(
                                next_index(rng, idx.size() - static_cast<std::size_t>(i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
    }
    std::vector<std::string> authors;
    for (int i = 0; i < k; ++i) authors.push_back(pool[idx[static_cast<std::size_t>(i)]]);
    std::sort(authors.begin(), authors.end());
    return authors;
}

}  // namespace

Corpus generate_synthetic_corpus(const SynthParams& params) {
    if (params.n_venues <= 0 || params.topics_per_venue <= 0 ||
        params.n_train <= 0 || params.n_test <= 0) {
        throw InvalidParam("synthetic corpus counts must be positive");
    }
    if (params.separation < 0.0 || params.separation > 1.0) {
        throw InvalidParam("separation must lie in [0, 1]");
    }

    Corpus corpus;
    for (int v = 0; v < params.n_venues; ++v) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "c%02d", v + 1);
        std::string venue_id(buf);
        corpus.catalog.venues.push_back(venue_id);
        corpus.catalog.sig_of[venue_id] =
            "sig" + std::to_string(v / kVenuesPerSig + 1);
    }

    std::vector<std::vector<std::string>> author_pools(
        static_cast<std::size_t>(params.n_venues));
    for (int v = 0; v < params.n_venues; ++v) {
        for (int a = 0; a < kAuthorsPerVenue; ++a) {
            author_pools[static_cast<std::size_t>(v)].push_back(
                "v" + std::to_string(v + 1) + "author" + std::to_string(a + 1));
        }
    }

    std::mt19937_64 rng(params.seed);
    int paper_no = 0;
    auto make_paper = [&](int venue, int year, bool fresh_authors) {
        PaperRecord rec;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "p%06d", paper_no);
        rec.paper_id = buf;
        rec.title = "synthetic study " + std::to_string(paper_no) + " at " +
                    corpus.catalog.venues[static_cast<std::size_t>(venue)];
        rec.venue_id = corpus.catalog.venues[static_cast<std::size_t>(venue)];
        rec.year = year;
        if (fresh_authors) {
            int k = 1 + static_cast<int>(next_index(rng, 3));
            for (int a = 0; a < k; ++a) {
                rec.author_ids.push_back("new" + std::to_string(paper_no) +
                                         "author" + std::to_string(a + 1));
            }
        } else {
            rec.author_ids =
                pick_authors(rng, author_pools[static_cast<std::size_t>(venue)]);
        }
        rec.abstract_text = synth_abstract(rng, params, venue);
        ++paper_no;
        return rec;
    };

    for (int i = 0; i < params.n_train; ++i) {
        int venue = i % params.n_venues;
        int year = params.train_start_year + (i % 2);
        corpus.papers.push_back(make_paper(venue, year, false));
    }
    for (int i = 0; i < params.n_test; ++i) {
        int venue = i % params.n_venues;
        bool fresh = next_double(rng) < 0.5;
        corpus.papers.push_back(make_paper(venue, params.test_year, fresh));
    }
    corpus.validate();
    return corpus;
}

}  // namespace confrec
