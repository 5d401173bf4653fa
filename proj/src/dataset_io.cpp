#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "tsaug/dataset.hpp"
#include "tsaug/errors.hpp"

namespace tsaug {
namespace {

bool is_nan_token(std::string_view token) {
  return token.size() == 3 && (token[0] == 'N' || token[0] == 'n') && (token[1] == 'a' || token[1] == 'A') &&
         (token[2] == 'N' || token[2] == 'n');
}

double parse_value(std::string_view token, std::size_t line, std::size_t column, const std::string& source) {
  if (is_nan_token(token)) return std::numeric_limits<double>::quiet_NaN();
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || end != body.data() + body.size() || body.empty() || !std::isfinite(value))
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": cannot parse '" + std::string(token) + "' as a number",
                     line, column);
  return value;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_label(double v) {
  if (std::floor(v) == v && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  return format_value(v);
}

std::pair<double, double> finite_extremes(const LabeledDataset& ds) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : ds.series)
    for (Index i = 0; i < s.size(); ++i) {
      const double v = s.data()[i];
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return {lo, hi};
}

LabeledDataset apply_minmax(LabeledDataset ds, const NormState& state) {
  const double span = state.train_max - state.train_min;
  for (auto& s : ds.series)
    for (Index i = 0; i < s.size(); ++i) {
      double& v = s.data()[i];
      if (std::isnan(v)) continue;
      v = state.degenerate ? 0.0 : 2.0 * (v - state.train_min) / span - 1.0;
    }
  ds.norm = state;
  return ds;
}

}  // namespace

Index LabeledDataset::max_length() const {
  Index longest = 0;
  for (const auto& s : series) longest = std::max(longest, s.rows());
  return longest;
}

bool LabeledDataset::uniform_length() const {
  return std::all_of(series.begin(), series.end(),
                     [&](const TimeSeries& s) { return s.rows() == series.front().rows(); });
}

LabeledDataset parse_tsv(const std::string& text, const std::string& source) {
  std::vector<double> raw_labels;
  std::vector<TimeSeries> series;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::vector<double> values;
    std::size_t column = 0, pos = 0;
    double label = 0.0;
    while (pos <= line.size()) {
      const std::size_t tab = std::min(line.find('\t', pos), line.size());
      std::string_view token(line.data() + pos, tab - pos);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      ++column;
      pos = tab + 1;
      if (token.empty() && tab == line.size()) break;  // trailing tab
      const double v = parse_value(token, line_no, column, source);
      if (column == 1) {
        if (std::isnan(v))
          throw ParseError(source + ":" + std::to_string(line_no) + ":1: missing class label", line_no, 1);
        label = v;
      } else {
        values.push_back(v);
      }
    }
    if (values.empty())
      throw FormatError(source + ":" + std::to_string(line_no) + ": series has no values");
    raw_labels.push_back(label);
    series.emplace_back(Eigen::Map<const TimeSeries>(values.data(), static_cast<Index>(values.size()), 1));
  }
  if (series.empty()) throw FormatError(source + ": no series found (empty file)");

  LabeledDataset ds;
  ds.class_values = raw_labels;
  std::sort(ds.class_values.begin(), ds.class_values.end());
  ds.class_values.erase(std::unique(ds.class_values.begin(), ds.class_values.end()), ds.class_values.end());
  ds.labels.reserve(raw_labels.size());
  for (double l : raw_labels)
    ds.labels.push_back(static_cast<int>(std::lower_bound(ds.class_values.begin(), ds.class_values.end(), l) -
                                         ds.class_values.begin()));
  ds.series = std::move(series);
  return ds;
}

std::string dataset_name_from_path(const std::filesystem::path& path) {
  std::string stem = path.stem().string();
  for (const char* suffix : {"_TRAIN", "_TEST"}) {
    const std::string s(suffix);
    if (stem.size() > s.size() && stem.compare(stem.size() - s.size(), s.size(), s) == 0)
      return stem.substr(0, stem.size() - s.size());
  }
  return stem;
}

LabeledDataset load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  LabeledDataset ds = parse_tsv(buf.str(), path.string());
  ds.name = dataset_name_from_path(path);
  std::string stem = path.stem().string();
  ds.split = stem.ends_with("_TEST") ? Split::test : Split::train;
  return ds;
}

std::string format_tsv(const LabeledDataset& ds) {
  std::string out;
  for (std::size_t n = 0; n < ds.size(); ++n) {
    const int label = ds.labels[n];
    const bool known = label >= 0 && static_cast<std::size_t>(label) < ds.class_values.size();
    out += format_label(known ? ds.class_values[static_cast<std::size_t>(label)] : label);
    const TimeSeries& s = ds.series[n];
    for (Index c = 0; c < s.cols(); ++c)
      for (Index t = 0; t < s.rows(); ++t) {
        out += '\t';
        out += format_value(s(t, c));
      }
    out += '\n';
  }
  return out;
}

void write_tsv(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  const std::string text = format_tsv(ds);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::pair<LabeledDataset, LabeledDataset> normalize_minmax(const LabeledDataset& train,
                                                           const LabeledDataset& test) {
  const auto [lo, hi] = finite_extremes(train);
  if (!std::isfinite(lo)) throw ArgumentError("normalize_minmax: training set has no finite values");
  const NormState state{lo, hi, !(hi > lo)};
  return {apply_minmax(train, state), apply_minmax(test, state)};
}

LabeledDataset normalize_minmax(const LabeledDataset& train) {
  return normalize_minmax(train, LabeledDataset{}).first;
}

LabeledDataset denormalize(const LabeledDataset& ds) {
  if (!ds.norm) throw ArgumentError("denormalize: dataset carries no normalization state");
  LabeledDataset out = ds;
  const NormState& st = *ds.norm;
  for (auto& s : out.series)
    for (Index i = 0; i < s.size(); ++i) {
      double& v = s.data()[i];
      if (std::isnan(v)) continue;
      v = st.degenerate ? st.train_min : (v + 1.0) * 0.5 * (st.train_max - st.train_min) + st.train_min;
    }
  out.norm.reset();
  return out;
}

LabeledDataset pad_and_impute(const LabeledDataset& ds, std::optional<Index> length) {
  const Index target = length.value_or(ds.max_length());
  LabeledDataset out = ds;
  for (auto& s : out.series) {
    if (s.rows() > target) throw ArgumentError("pad_and_impute: series longer than target length");
    TimeSeries padded = TimeSeries::Zero(target, s.cols());
    padded.topRows(s.rows()) = s.unaryExpr([](double v) { return std::isnan(v) ? 0.0 : v; });
    s = std::move(padded);
  }
  return out;
}

std::pair<LabeledDataset, LabeledDataset> pad_and_impute(const LabeledDataset& train,
                                                         const LabeledDataset& test) {
  const Index target = std::max(train.max_length(), test.max_length());
  return {pad_and_impute(train, target), pad_and_impute(test, target)};
}

}  // namespace tsaug
