#ifndef CONFREC_TYPES_HPP
#define CONFREC_TYPES_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "confrec/errors.hpp"

namespace confrec {

/// One publication record: the unit the corpus is made of.
struct PaperRecord {
    std::string paper_id;
    std::string title;
    std::vector<std::string> author_ids;  // nonempty
    std::string venue_id;
    int year = 0;  // calendar year, > 0
    std::string abstract_text;
};

/// The fixed venue universe plus the venue -> special-interest-group map.
struct VenueCatalog {
    std::vector<std::string> venues;             // defines column order everywhere
    std::map<std::string, std::string> sig_of;   // every venue has exactly one SIG

    bool contains(const std::string& venue_id) const {
        return sig_of.find(venue_id) != sig_of.end();
    }
    /// Index of a venue in catalog order; throws ValidationError if unknown.
    std::size_t index_of(const std::string& venue_id) const;
    std::size_t size() const { return venues.size(); }
    /// Distinct SIG count.
    std::size_t sig_count() const;

    void validate() const;
};

struct Corpus {
    std::vector<PaperRecord> papers;
    VenueCatalog catalog;

    /// Checks all record invariants: nonempty authors, known venues,
    /// unique paper ids, positive years. Throws ValidationError.
    void validate() const;
};

/// Labeled nonnegative dense matrix: rows and columns are entities,
/// entries are counts or weights.
struct ContingencyTable {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Eigen::MatrixXd counts;

    double grand_total() const { return counts.sum(); }
    Eigen::Index rows() const { return counts.rows(); }
    Eigen::Index cols() const { return counts.cols(); }

    /// Shape/label/nonnegativity invariants. Throws ValidationError.
    void validate() const;
};

}  // namespace confrec

#endif  // CONFREC_TYPES_HPP
