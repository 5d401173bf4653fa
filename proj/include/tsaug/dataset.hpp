#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsaug/numerics.hpp"

namespace tsaug {

enum class Split { train, test };

/// Train-set extremes used by the min-max map.
struct NormState {
  double train_min = 0.0;
  double train_max = 0.0;
  bool degenerate = false;  ///< train_max == train_min; every value was mapped to 0
};

/// Labeled collection of series. Labels are contiguous class indices; `class_values` maps each
/// index back to the label written in the source file.
struct LabeledDataset {
  std::vector<TimeSeries> series;
  std::vector<int> labels;
  std::vector<double> class_values;
  Split split = Split::train;
  std::string name;
  std::optional<NormState> norm;

  std::size_t size() const noexcept { return series.size(); }
  std::size_t num_classes() const noexcept { return class_values.size(); }
  Index max_length() const;
  bool uniform_length() const;
};

/// Reads a UCR-archive TSV file: one series per line, label first, tab-separated values,
/// "NaN" for missing values. Ragged lengths are kept as-is.
LabeledDataset load_tsv(const std::filesystem::path& path);

/// Parses TSV text; `source` names the input in error messages.
LabeledDataset parse_tsv(const std::string& text, const std::string& source = "<memory>");

/// Writes the dataset in the same TSV format with 6 significant digits per value.
void write_tsv(const LabeledDataset& ds, const std::filesystem::path& path);
std::string format_tsv(const LabeledDataset& ds);

/// Dataset name from a file name: "Coffee_TRAIN.tsv" -> "Coffee".
std::string dataset_name_from_path(const std::filesystem::path& path);

/// Maps both splits with v -> 2 (v - min) / (max - min) - 1 using the train-set extremes.
/// NaN placeholders pass through. A constant train set maps everything to 0 and marks the
/// state degenerate.
std::pair<LabeledDataset, LabeledDataset> normalize_minmax(const LabeledDataset& train,
                                                           const LabeledDataset& test);
LabeledDataset normalize_minmax(const LabeledDataset& train);

/// Inverse of the min-max map recorded in ds.norm.
LabeledDataset denormalize(const LabeledDataset& ds);

/// Right-pads every series with zeros to `length` (or to the longest series when not given)
/// and replaces NaN with zero.
LabeledDataset pad_and_impute(const LabeledDataset& ds, std::optional<Index> length = std::nullopt);

/// Pads both splits to the longest length found in either.
std::pair<LabeledDataset, LabeledDataset> pad_and_impute(const LabeledDataset& train,
                                                         const LabeledDataset& test);

}  // namespace tsaug
