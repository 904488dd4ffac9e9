#ifndef CONFREC_CA_HPP
#define CONFREC_CA_HPP

#include <vector>

#include "confrec/types.hpp"

namespace confrec {

/// Fitted correspondence analysis model. Coordinates keep at most n_dims
/// axes; axes whose singular value is numerically zero are dropped, so the
/// retained count can be smaller than requested. total_inertia is the sum of
/// all principal inertias computed before truncation.
struct CaModel {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Eigen::VectorXd row_masses;        // r, sums to 1
    Eigen::VectorXd col_masses;        // c, sums to 1
    Eigen::VectorXd singular_values;   // descending, retained axes only
    Eigen::MatrixXd row_standard;      // I x K
    Eigen::MatrixXd col_standard;      // J x K
    Eigen::MatrixXd row_principal;     // F = row_standard * diag(singular_values)
    Eigen::MatrixXd col_principal;     // G
    Eigen::VectorXd principal_inertias;  // squared singular values, retained
    double total_inertia = 0.0;

    Eigen::Index dims() const { return singular_values.size(); }
};

struct ChiSquareReport {
    double statistic = 0.0;
    int dof = 0;
    double total_inertia = 0.0;  // statistic / grand total
    Eigen::MatrixXd expected;
};

/// P = N / n. Throws ZeroGrandTotal.
Eigen::MatrixXd correspondence_matrix(const ContingencyTable& table);

/// Independence-model cell estimates: row_sum * col_sum / grand_total.
Eigen::MatrixXd expected_counts(const ContingencyTable& table);

/// Pearson chi-square statistic with (I-1)(J-1) degrees of freedom.
/// Throws ZeroExpectedCell when a row or column sum is zero.
ChiSquareReport chi_square(const ContingencyTable& table);

/// Pearson ratios p_ij / (p_i p_j). Throws ZeroMargin.
Eigen::MatrixXd pearson_ratios(const ContingencyTable& table);

/// Fits CA through the SVD of the standardized residuals
/// S = D_r^{-1/2} (P - r c^T) D_c^{-1/2}. Requires positive row and column
/// sums and 1 <= n_dims <= min(I-1, J-1). Sign convention: each axis is
/// flipped so the largest-magnitude row standard coordinate is positive.
CaModel ca_fit(const ContingencyTable& table, int n_dims);

/// Low-rank reconstruction p_ij = r_i c_j (1 + sum_k a_k phi_ik gamma_jk)
/// over the first n_dims retained axes (all of them when n_dims < 0).
Eigen::MatrixXd reconstitute(const CaModel& model, int n_dims = -1);

struct SupplementaryProjection {
    Eigen::MatrixXd coords;               // one row per supplementary point
    std::vector<Eigen::Index> zero_rows;  // points that sat at the origin
};

/// Principal coordinates of supplementary rows: each row profile times the
/// training column standard coordinates. All-zero rows project to the origin
/// and are flagged. Throws ColumnMismatch if the labels disagree.
SupplementaryProjection project_supplementary_rows(const CaModel& model,
                                                   const ContingencyTable& table);

/// Column counterpart: column profiles times the row standard coordinates.
SupplementaryProjection project_supplementary_cols(const CaModel& model,
                                                   const ContingencyTable& table);

/// Principal coordinates of rows and columns as CSV
/// (kind,label,axis1..axisK), ready for external biplotting.
std::string coordinates_csv(const CaModel& model);

}  // namespace confrec

#endif  // CONFREC_CA_HPP
