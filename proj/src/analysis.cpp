#include "tsaug/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "tsaug/errors.hpp"

namespace tsaug {
namespace {

void require_uniform(const LabeledDataset& ds, const char* who) {
  if (ds.series.empty()) throw ArgumentError(std::string(who) + ": empty dataset");
  if (!ds.uniform_length()) throw ArgumentError(std::string(who) + ": series lengths differ (pad first)");
}

/// Sum over (t, c) of the population variance of the selected patterns at that element.
double variance_sum(const LabeledDataset& ds, const std::vector<std::size_t>& members) {
  const TimeSeries& first = ds.series[members.front()];
  const auto count = static_cast<double>(members.size());
  TimeSeries mean = TimeSeries::Zero(first.rows(), first.cols());
  for (std::size_t m : members) mean += ds.series[m];
  mean /= count;
  TimeSeries sq = TimeSeries::Zero(first.rows(), first.cols());
  for (std::size_t m : members) sq += (ds.series[m] - mean).cwiseAbs2();
  return (sq / count).sum();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

double dataset_variance(const LabeledDataset& ds) {
  require_uniform(ds, "dataset_variance");
  if (ds.size() < 2) throw ArgumentError("dataset_variance: needs at least two patterns");
  std::vector<std::size_t> all(ds.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const TimeSeries& first = ds.series.front();
  return variance_sum(ds, all) / static_cast<double>(first.size());
}

std::vector<int> classes_below(const LabeledDataset& ds, std::size_t min_size) {
  std::map<int, std::size_t> counts;
  for (int l : ds.labels) ++counts[l];
  std::vector<int> out;
  for (const auto& [label, n] : counts)
    if (n < min_size) out.push_back(label);
  return out;
}

double intra_class_variance(const LabeledDataset& ds) {
  require_uniform(ds, "intra_class_variance");
  std::map<int, std::vector<std::size_t>> classes;
  for (std::size_t n = 0; n < ds.size(); ++n) classes[ds.labels[n]].push_back(n);
  const auto total = static_cast<double>(ds.size());
  const auto num_classes = static_cast<double>(classes.size());
  const auto elements = static_cast<double>(ds.series.front().size());
  double result = 0.0;
  for (const auto& [label, members] : classes) {
    if (members.size() < 2) continue;
    const double share = static_cast<double>(members.size()) / (total * num_classes);
    result += share * (variance_sum(ds, members) / elements);
  }
  return result;
}

PropertyReport property_report(const LabeledDataset& ds) {
  require_uniform(ds, "property_report");
  PropertyReport r;
  r.dataset = ds.name;
  r.n_train = ds.size();
  std::map<int, std::size_t> counts;
  for (int l : ds.labels) ++counts[l];
  r.patterns_per_class = static_cast<double>(ds.size()) / static_cast<double>(counts.size());
  r.length = ds.series.front().rows();
  r.dataset_variance = dataset_variance(ds);
  r.intra_class_variance = intra_class_variance(ds);
  return r;
}

double property_value(const PropertyReport& r, std::size_t column) {
  switch (column) {
    case 0: return static_cast<double>(r.n_train);
    case 1: return r.patterns_per_class;
    case 2: return static_cast<double>(r.length);
    case 3: return r.dataset_variance;
    case 4: return r.intra_class_variance;
  }
  throw ArgumentError("property_value: column out of range");
}

std::string format_property_csv(std::span<const PropertyReport> reports) {
  std::string out = "dataset";
  for (const char* name : kPropertyNames) out += std::string(",") + name;
  out += '\n';
  for (const auto& r : reports) {
    out += r.dataset + "," + std::to_string(r.n_train) + "," + fmt(r.patterns_per_class) + "," +
           std::to_string(r.length) + "," + fmt(r.dataset_variance) + "," + fmt(r.intra_class_variance) + "\n";
  }
  return out;
}

PcaResult pca(const Eigen::MatrixXd& rows, Index k, double tolerance, int max_iterations) {
  const Index n = rows.rows(), dims = rows.cols();
  if (n < 2) throw ArgumentError("pca: needs at least two rows");
  if (k < 1 || k > std::min(n, dims))
    throw ArgumentError("pca: k = " + std::to_string(k) + " exceeds min(N, T) = " + std::to_string(std::min(n, dims)));

  PcaResult out;
  out.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centred = rows.rowwise() - out.mean.transpose();
  Eigen::MatrixXd cov = centred.transpose() * centred / static_cast<double>(n);
  out.components = Eigen::MatrixXd::Zero(dims, k);
  out.explained_variance = Eigen::VectorXd::Zero(k);

  const auto orthogonalize = [&](Eigen::VectorXd& v, Index found) {
    for (Index p = 0; p < found; ++p) v -= out.components.col(p).dot(v) * out.components.col(p);
  };

  for (Index comp = 0; comp < k; ++comp) {
    // Start from the basis vector of the largest remaining diagonal entry.
    Index start = 0;
    cov.diagonal().maxCoeff(&start);
    Eigen::VectorXd v = Eigen::VectorXd::Unit(dims, start);
    orthogonalize(v, comp);
    for (Index b = 0; v.norm() < 0.5 && b < dims; ++b) {
      v = Eigen::VectorXd::Unit(dims, b);
      orthogonalize(v, comp);
    }
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
      Eigen::VectorXd w = cov * v;
      orthogonalize(w, comp);
      lambda = v.dot(w);
      const double norm = w.norm();
      if (norm < 1e-300) break;
      w /= norm;
      const double change = (w - v).norm();
      v = std::move(w);
      if (change < tolerance) break;
    }
    Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0.0) v = -v;
    lambda = std::max(lambda, 0.0);
    out.components.col(comp) = v;
    out.explained_variance(comp) = lambda;
    cov -= lambda * v * v.transpose();
  }
  out.coordinates = centred * out.components;
  return out;
}

Eigen::MatrixXd pca_transform(const PcaResult& fit, const Eigen::MatrixXd& rows) {
  if (rows.cols() != fit.mean.size()) throw DimensionError("pca_transform: width mismatch");
  return (rows.rowwise() - fit.mean.transpose()) * fit.components;
}

PcaResult pca_project(std::span<const TimeSeries> series, Index k) {
  if (series.size() < 2) throw ArgumentError("pca_project: needs at least two series");
  const Index width = series.front().size();
  Eigen::MatrixXd rows(static_cast<Index>(series.size()), width);
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (series[n].size() != width) throw ArgumentError("pca_project: series lengths differ");
    rows.row(static_cast<Index>(n)) = series[n].reshaped().transpose();
  }
  return pca(rows, k);
}

double pearson_corr(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("pearson_corr: length mismatch");
  if (a.size() < 2) throw ArgumentError("pearson_corr: needs at least two values");
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) throw ArgumentError("pearson_corr: zero variance");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<DeltaAccRow> parse_delta_acc(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<DeltaAccRow> rows;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header) {
      if (line != "dataset,method,delta_acc")
        throw FormatError("delta-acc CSV: expected header 'dataset,method,delta_acc'");
      header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw ParseError("delta-acc CSV line " + std::to_string(line_no) + ": expected 3 fields", line_no, 1);
    DeltaAccRow row{line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1), 0.0};
    const std::string value = line.substr(c2 + 1);
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), row.delta_acc);
    if (ec != std::errc() || end != value.data() + value.size())
      throw ParseError("delta-acc CSV line " + std::to_string(line_no) + ": cannot parse '" + value + "'",
                       line_no, 3);
    rows.push_back(std::move(row));
  }
  if (!header) throw FormatError("delta-acc CSV: empty file");
  return rows;
}

std::vector<DeltaAccRow> load_delta_acc(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_delta_acc(buf.str());
}

namespace {

std::vector<std::string> methods_in_order(std::span<const DeltaAccRow> delta_acc) {
  std::vector<std::string> methods;
  for (const auto& row : delta_acc)
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) methods.push_back(row.method);
  return methods;
}

std::map<std::pair<std::string, std::string>, double> index_delta(std::span<const DeltaAccRow> delta_acc) {
  std::map<std::pair<std::string, std::string>, double> table;
  for (const auto& row : delta_acc) table[{row.dataset, row.method}] = row.delta_acc;
  return table;
}

}  // namespace

std::vector<MissingPair> missing_pairs(std::span<const PropertyReport> properties,
                                       std::span<const DeltaAccRow> delta_acc) {
  const auto table = index_delta(delta_acc);
  std::vector<MissingPair> missing;
  for (const auto& method : methods_in_order(delta_acc))
    for (const auto& p : properties)
      if (!table.contains({p.dataset, method})) missing.push_back({p.dataset, method});
  return missing;
}

std::vector<CorrelationRow> corr_report(std::span<const PropertyReport> properties,
                                        std::span<const DeltaAccRow> delta_acc) {
  if (!missing_pairs(properties, delta_acc).empty())
    throw ArgumentError("corr_report: delta accuracy missing for some (dataset, method) pairs");
  const auto table = index_delta(delta_acc);
  std::vector<CorrelationRow> out;
  for (const auto& method : methods_in_order(delta_acc)) {
    CorrelationRow row{method, {}};
    std::vector<double> delta;
    for (const auto& p : properties) delta.push_back(table.at({p.dataset, method}));
    for (std::size_t col = 0; col < kPropertyNames.size(); ++col) {
      std::vector<double> prop;
      for (const auto& p : properties) prop.push_back(property_value(p, col));
      try {
        row.values[col] = pearson_corr(delta, prop);
      } catch (const ArgumentError&) {
        row.values[col] = std::nullopt;
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string format_correlation_csv(std::span<const CorrelationRow> rows) {
  std::string out = "method";
  for (const char* name : kPropertyNames) out += std::string(",") + name;
  out += '\n';
  for (const auto& row : rows) {
    out += row.method;
    for (const auto& v : row.values) out += "," + (v ? fmt(*v) : std::string("NA"));
    out += '\n';
  }
  return out;
}

}  // namespace tsaug
