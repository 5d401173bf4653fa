#pragma once

#include <Eigen/Dense>
#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsaug/augment.hpp"
#include "tsaug/dataset.hpp"

namespace tsaug {

/// Mean over time steps (and channels) of the population variance across all patterns.
/// Requires uniform length and at least two patterns.
double dataset_variance(const LabeledDataset& ds);

/// (1 / (N C)) sum_c (N_c / T) sum_t var_{c,t}, population variance within each class.
/// Classes with fewer than two patterns contribute 0 (see classes_below).
double intra_class_variance(const LabeledDataset& ds);

/// Class indices with fewer than min_size patterns.
std::vector<int> classes_below(const LabeledDataset& ds, std::size_t min_size);

struct PropertyReport {
  std::string dataset;
  std::size_t n_train = 0;
  double patterns_per_class = 0.0;
  Index length = 0;
  double dataset_variance = 0.0;
  double intra_class_variance = 0.0;
};

inline constexpr std::array<const char*, 5> kPropertyNames{
    "n_train", "patterns_per_class", "length", "dataset_variance", "intra_class_variance"};

PropertyReport property_report(const LabeledDataset& ds);
double property_value(const PropertyReport& r, std::size_t column);
std::string format_property_csv(std::span<const PropertyReport> reports);

struct PcaResult {
  Eigen::MatrixXd coordinates;        ///< N x k projections of the centred rows
  Eigen::MatrixXd components;         ///< T x k unit loadings
  Eigen::VectorXd explained_variance; ///< k eigenvalues, descending
  Eigen::VectorXd mean;               ///< length-T row mean
};

/// Top-k eigenpairs of the covariance of `rows` (N x T, one flattened series per row) by
/// deflated power iteration, started from the basis vectors and re-orthogonalized against
/// earlier components. Each component's largest-magnitude loading is made positive.
PcaResult pca(const Eigen::MatrixXd& rows, Index k = 2, double tolerance = 1e-10, int max_iterations = 10000);

/// Projects new rows with a fitted result.
Eigen::MatrixXd pca_transform(const PcaResult& fit, const Eigen::MatrixXd& rows);

/// Stacks uniform-length series (flattened channel-major) into rows and projects them.
PcaResult pca_project(std::span<const TimeSeries> series, Index k = 2);

/// Standard Pearson coefficient. Throws ArgumentError on length mismatch, fewer than two
/// values or zero variance.
double pearson_corr(std::span<const double> a, std::span<const double> b);

struct DeltaAccRow {
  std::string dataset;
  std::string method;
  double delta_acc = 0.0;
};

/// Reads a CSV with header "dataset,method,delta_acc".
std::vector<DeltaAccRow> load_delta_acc(const std::filesystem::path& path);
std::vector<DeltaAccRow> parse_delta_acc(const std::string& text);

struct CorrelationRow {
  std::string method;
  std::array<std::optional<double>, 5> values;  ///< empty where the correlation is undefined
};

/// Missing (dataset, method) pair found while joining.
struct MissingPair {
  std::string dataset;
  std::string method;
};

/// Pearson correlation of delta accuracy against each property, one row per method (in order of
/// first appearance). Throws ArgumentError if a (dataset, method) pair is absent; call
/// missing_pairs first to report them.
std::vector<CorrelationRow> corr_report(std::span<const PropertyReport> properties,
                                        std::span<const DeltaAccRow> delta_acc);
std::vector<MissingPair> missing_pairs(std::span<const PropertyReport> properties,
                                       std::span<const DeltaAccRow> delta_acc);
std::string format_correlation_csv(std::span<const CorrelationRow> rows);

}  // namespace tsaug
