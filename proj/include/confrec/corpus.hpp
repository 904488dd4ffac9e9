#ifndef CONFREC_CORPUS_HPP
#define CONFREC_CORPUS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "confrec/types.hpp"

namespace confrec {

enum class CorpusFormat { jsonl, csv };

CorpusFormat corpus_format_from_string(const std::string& s);

/// Venue catalog file: a JSON object mapping venue id -> SIG id.
/// Catalog order is the sorted venue-id order.
VenueCatalog load_catalog(const std::string& path);
void save_catalog(const VenueCatalog& catalog, const std::string& path);

/// Loads and validates a corpus file against a catalog.
/// JSONL: one object per line with fields paper_id, title, authors (array),
/// venue, year, abstract. CSV: fixed header with authors joined by ';'.
/// Throws ParseError (with line number) or ValidationError.
Corpus load_corpus(const std::string& path, CorpusFormat format,
                   const VenueCatalog& catalog);
void save_corpus(const Corpus& corpus, const std::string& path,
                 CorpusFormat format);

/// Train/test split: (papers with year < test_year, papers with
/// year == test_year). Later years are dropped. Throws EmptySplit if
/// either side ends up empty.
std::pair<Corpus, Corpus> split_by_year(const Corpus& corpus, int test_year);

/// Author x conference counts. One row per distinct author (sorted by
/// author_id), one column per catalog venue; entry (i,j) = number of papers
/// author i has in venue j.
ContingencyTable author_conference_matrix(const Corpus& corpus);

/// Paper x conference matrix: row per paper of `corpus`, entry (i,j) =
/// summed venue-j publication counts of paper i's authors, looked up in
/// `author_history`. Authors absent from the history contribute zeros.
ContingencyTable paper_conference_matrix(const Corpus& corpus,
                                         const Corpus& author_history);

struct SynthParams {
    int n_venues = 16;
    int topics_per_venue = 2;
    int n_train = 800;
    int n_test = 200;
    double separation = 1.0;  // 1 = disjoint venue vocabularies, 0 = identical
    std::uint64_t seed = 1;
    int train_start_year = 2008;
    int test_year = 2010;
};

/// Deterministic synthetic corpus: each venue gets its own word
/// distribution, mixed with a shared vocabulary at rate (1 - separation).
/// Half of the test papers are written by authors with no training history.
Corpus generate_synthetic_corpus(const SynthParams& params);

}  // namespace confrec

#endif  // CONFREC_CORPUS_HPP
