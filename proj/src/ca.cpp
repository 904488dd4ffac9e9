#include "confrec/ca.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace confrec {

namespace {

constexpr double kRankTolerance = 1e-12;

void require_positive_total(const ContingencyTable& table) {
    table.validate();
    if (table.grand_total() <= 0.0) {
        throw ZeroGrandTotal("contingency table grand total is zero");
    }
}

}  // namespace

Eigen::MatrixXd correspondence_matrix(const ContingencyTable& table) {
    require_positive_total(table);
    return table.counts / table.grand_total();
}

Eigen::MatrixXd expected_counts(const ContingencyTable& table) {
    require_positive_total(table);
    Eigen::VectorXd row_sums = table.counts.rowwise().sum();
    Eigen::VectorXd col_sums = table.counts.colwise().sum();
    return row_sums * col_sums.transpose() / table.grand_total();
}

ChiSquareReport chi_square(const ContingencyTable& table) {
    ChiSquareReport report;
    report.expected = expected_counts(table);
    if ((report.expected.array() <= 0.0).any()) {
        throw ZeroExpectedCell("a row or column sum is zero");
    }
    report.statistic =
        ((table.counts - report.expected).array().square() / report.expected.array())
            .sum();
    report.dof = static_cast<int>((table.rows() - 1) * (table.cols() - 1));
    report.total_inertia = report.statistic / table.grand_total();
    return report;
}

Eigen::MatrixXd pearson_ratios(const ContingencyTable& table) {
    Eigen::MatrixXd p = correspondence_matrix(table);
    Eigen::VectorXd r = p.rowwise().sum();
    Eigen::VectorXd c = p.colwise().sum();
    if ((r.array() <= 0.0).any() || (c.array() <= 0.0).any()) {
        throw ZeroMargin("pearson_ratios requires positive marginal proportions");
    }
    return p.array() / (r * c.transpose()).array();
}

CaModel ca_fit(const ContingencyTable& table, int n_dims) {
    Eigen::MatrixXd p = correspondence_matrix(table);
    Eigen::VectorXd r = p.rowwise().sum();
    Eigen::VectorXd c = p.colwise().sum();
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        if (r(i) <= 0.0) {
            throw ZeroMargin("zero marginal row: " +
                             table.row_labels[static_cast<std::size_t>(i)]);
        }
    }
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        if (c(j) <= 0.0) {
            throw ZeroMargin("zero marginal column: " +
                             table.col_labels[static_cast<std::size_t>(j)]);
        }
    }
    Eigen::Index max_dims = std::min(table.rows() - 1, table.cols() - 1);
    if (n_dims < 1 || n_dims > max_dims) {
        throw DimsTooLarge("n_dims=" + std::to_string(n_dims) +
                           " outside [1, " + std::to_string(max_dims) + "]");
    }

    Eigen::VectorXd r_isqrt = r.array().rsqrt();
    Eigen::VectorXd c_isqrt = c.array().rsqrt();
    Eigen::MatrixXd s = r_isqrt.asDiagonal() * (p - r * c.transpose()) *
                        c_isqrt.asDiagonal();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    CaModel model;
    model.row_labels = table.row_labels;
    model.col_labels = table.col_labels;
    model.row_masses = r;
    model.col_masses = c;
    model.total_inertia = sigma.array().square().sum();

    // Numerical rank: residual form already removed the trivial axis, so
    // anything at rounding level is noise, not structure. CA singular values
    // never exceed 1, so the relative cutoff gets an absolute floor; without
    // it an exactly independent table (sigma_max itself at rounding level)
    // would keep null-space axes whose vectors are arbitrary.
    double cutoff =
        sigma.size() > 0 ? kRankTolerance * std::max(1.0, sigma(0)) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff && sigma(rank) > 0.0) ++rank;
    Eigen::Index keep = std::min<Eigen::Index>(n_dims, rank);

    model.singular_values = sigma.head(keep);
    model.row_standard = r_isqrt.asDiagonal() * svd.matrixU().leftCols(keep);
    model.col_standard = c_isqrt.asDiagonal() * svd.matrixV().leftCols(keep);

    // SVD sign ambiguity: flip each axis so the largest-magnitude row
    // standard coordinate is positive.
    for (Eigen::Index k = 0; k < keep; ++k) {
        Eigen::Index at = 0;
        model.row_standard.col(k).cwiseAbs().maxCoeff(&at);
        if (model.row_standard(at, k) < 0.0) {
            model.row_standard.col(k) = -model.row_standard.col(k);
            model.col_standard.col(k) = -model.col_standard.col(k);
        }
    }

    model.row_principal = model.row_standard * model.singular_values.asDiagonal();
    model.col_principal = model.col_standard * model.singular_values.asDiagonal();
    model.principal_inertias = model.singular_values.array().square();
    return model;
}

Eigen::MatrixXd reconstitute(const CaModel& model, int n_dims) {
    Eigen::Index keep = n_dims < 0 ? model.dims()
                                   : std::min<Eigen::Index>(n_dims, model.dims());
    Eigen::MatrixXd p_hat = model.row_masses * model.col_masses.transpose();
    if (keep > 0) {
        // r_i c_j sum_k a_k phi_ik gamma_jk == (D_r Phi) D_a (D_c Gamma)^T
        p_hat += (model.row_masses.asDiagonal() * model.row_standard.leftCols(keep)) *
                 model.singular_values.head(keep).asDiagonal() *
                 (model.col_masses.asDiagonal() * model.col_standard.leftCols(keep))
                     .transpose();
    }
    return p_hat;
}

namespace {

SupplementaryProjection project_profiles(const Eigen::MatrixXd& points,
                                         const Eigen::MatrixXd& standard_coords) {
    SupplementaryProjection out;
    out.coords = Eigen::MatrixXd::Zero(points.rows(), standard_coords.cols());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        double total = points.row(i).sum();
        if (total > 0.0) {
            out.coords.row(i) = (points.row(i) / total) * standard_coords;
        } else {
            out.zero_rows.push_back(i);  // origin, by convention
        }
    }
    return out;
}

}  // namespace

SupplementaryProjection project_supplementary_rows(const CaModel& model,
                                                   const ContingencyTable& table) {
    table.validate();
    if (table.col_labels != model.col_labels) {
        throw ColumnMismatch("supplementary rows must share the model's columns");
    }
    return project_profiles(table.counts, model.col_standard);
}

SupplementaryProjection project_supplementary_cols(const CaModel& model,
                                                   const ContingencyTable& table) {
    table.validate();
    if (table.row_labels != model.row_labels) {
        throw ColumnMismatch("supplementary columns must share the model's rows");
    }
    return project_profiles(table.counts.transpose(), model.row_standard);
}

std::string coordinates_csv(const CaModel& model) {
    std::ostringstream out;
    out.precision(17);
    out << "kind,label";
    for (Eigen::Index k = 0; k < model.dims(); ++k) out << ",axis" << (k + 1);
    out << "\n";
    auto emit = [&](const char* kind, const std::vector<std::string>& labels,
                    const Eigen::MatrixXd& coords) {
        for (Eigen::Index i = 0; i < coords.rows(); ++i) {
            out << kind << ',' << labels[static_cast<std::size_t>(i)];
            for (Eigen::Index k = 0; k < coords.cols(); ++k) {
                out << ',' << coords(i, k);
            }
            out << "\n";
        }
    };
    emit("row", model.row_labels, model.row_principal);
    emit("col", model.col_labels, model.col_principal);
    return out.str();
}

}  // namespace confrec
