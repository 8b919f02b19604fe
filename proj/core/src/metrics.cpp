// Copyright 2026 The qcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcap {

double mae(const std::vector<PredictionRecord> &records) {
  if (records.empty()) throw ValidationError("mae of an empty record list");
  double total = 0.0;
  for (const PredictionRecord &r : records) total += r.abs_error();
  return total / static_cast<double>(records.size());
}

double pearson(const std::vector<PredictionRecord> &records) {
  if (records.size() < 2) {
    throw NumericalError("pearson needs at least two records");
  }
  const double n = static_cast<double>(records.size());
  double mean_t = 0.0, mean_p = 0.0;
  for (const PredictionRecord &r : records) {
    mean_t += r.target;
    mean_p += r.prediction;
  }
  mean_t /= n;
  mean_p /= n;
  double cov = 0.0, var_t = 0.0, var_p = 0.0;
  for (const PredictionRecord &r : records) {
    const double dt = r.target - mean_t, dp = r.prediction - mean_p;
    cov += dt * dp;
    var_t += dt * dt;
    var_p += dp * dp;
  }
  if (var_t == 0.0 || var_p == 0.0) {
    throw NumericalError("pearson undefined for a constant series");
  }
  return cov / std::sqrt(var_t * var_p);
}

namespace {
double clip(double p) {
  return std::clamp(p, kBayesClipBound, 1.0 - kBayesClipBound);
}
}  // namespace

double bayes_factor_pst(const std::vector<PredictionRecord> &records_a,
                        const std::vector<PredictionRecord> &records_b) {
  if (records_a.size() != records_b.size()) {
    throw ValidationError("bayes factor needs matched record lists");
  }
  double log10_k = 0.0;
  for (size_t i = 0; i < records_a.size(); ++i) {
    const PredictionRecord &ra = records_a[i];
    const PredictionRecord &rb = records_b[i];
    if (ra.id != rb.id) {
      throw ValidationError("bayes factor record ids do not match at row " +
                            std::to_string(i));
    }
    if (!ra.shots) {
      throw ValidationError("record '" + ra.id + "' has no shot counts");
    }
    const auto [n, successes] = *ra.shots;
    if (successes > n) {
      throw ValidationError("record '" + ra.id + "' has successes > shots");
    }
    const double a = clip(ra.prediction), b = clip(rb.prediction);
    const double s = static_cast<double>(successes);
    const double f = static_cast<double>(n - successes);
    log10_k += s * (std::log10(a) - std::log10(b)) +
               f * (std::log10(1.0 - a) - std::log10(1.0 - b));
  }
  return log10_k;
}

EvalReport make_report(std::string dataset_id, std::string model_id,
                       std::vector<PredictionRecord> records,
                       double runtime_seconds) {
  EvalReport report;
  report.dataset_id = std::move(dataset_id);
  report.model_id = std::move(model_id);
  report.mae_value = mae(records);
  try {
    report.pearson_r = pearson(records);
  } catch (const NumericalError &) {
    report.pearson_r = std::nullopt;
  }
  report.records = std::move(records);
  report.runtime_seconds = runtime_seconds;
  return report;
}

void write_predictions_csv(const std::string &path,
                           const std::vector<PredictionRecord> &records) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << "id,target,prediction,abs_error\n";
  for (const PredictionRecord &r : records) {
    out << r.id << ',' << format_double17(r.target) << ','
        << format_double17(r.prediction) << ','
        << format_double17(r.abs_error()) << "\n";
  }
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::vector<PredictionRecord> read_predictions_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("empty prediction CSV '" + path + "'");
  }
  if (line != "id,target,prediction,abs_error") {
    throw ValidationError("unexpected CSV header '" + line + "'");
  }
  std::vector<PredictionRecord> records;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    PredictionRecord r;
    std::string field;
    if (!std::getline(row, r.id, ',')) {
      throw ValidationError("CSV line " + std::to_string(line_no) +
                            ": missing id");
    }
    try {
      if (!std::getline(row, field, ',')) throw std::invalid_argument("target");
      r.target = std::stod(field);
      if (!std::getline(row, field, ',')) {
        throw std::invalid_argument("prediction");
      }
      r.prediction = std::stod(field);
    } catch (const std::exception &) {
      throw ValidationError("CSV line " + std::to_string(line_no) +
                            ": bad number");
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_report_json(const std::string &path, const EvalReport &report) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << "{\"schema\":\"qcap-report-v1\",\"dataset\":"
      << nlohmann::json(report.dataset_id).dump()
      << ",\"model\":" << nlohmann::json(report.model_id).dump()
      << ",\"count\":" << report.records.size()
      << ",\"mae\":" << format_double17(report.mae_value) << ",\"pearson_r\":"
      << (report.pearson_r ? format_double17(*report.pearson_r) : "null")
      << ",\"log10_bayes_factor\":"
      << (report.log10_bayes_factor ? format_double17(*report.log10_bayes_factor)
                                    : "null")
      << ",\"clip_bound\":" << format_double17(kBayesClipBound)
      << ",\"runtime_seconds\":" << format_double17(report.runtime_seconds)
      << ",\"records\":[";
  for (size_t i = 0; i < report.records.size(); ++i) {
    const PredictionRecord &r = report.records[i];
    if (i) out << ',';
    out << "{\"id\":" << nlohmann::json(r.id).dump()
        << ",\"target\":" << format_double17(r.target)
        << ",\"prediction\":" << format_double17(r.prediction)
        << ",\"abs_error\":" << format_double17(r.abs_error()) << "}";
  }
  out << "]}\n";
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

void write_scatter_svg(const std::string &path,
                       const std::vector<PredictionRecord> &records) {
  if (records.empty()) throw ValidationError("no records to plot");
  double lo = 1.0, hi = 0.0;
  for (const PredictionRecord &r : records) {
    lo = std::min({lo, r.target, r.prediction});
    hi = std::max({hi, r.target, r.prediction});
  }
  const double pad = std::max(1e-6, (hi - lo) * 0.05);
  lo -= pad;
  hi += pad;
  const double size = 480.0, margin = 50.0;
  auto sx = [&](double v) {
    return margin + (v - lo) / (hi - lo) * (size - 2 * margin);
  };
  auto sy = [&](double v) {
    return size - margin - (v - lo) / (hi - lo) * (size - 2 * margin);
  };
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\""
      << sx(hi) << "\" y2=\"" << sy(hi)
      << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  for (const PredictionRecord &r : records) {
    out << "<circle cx=\"" << sx(r.target) << "\" cy=\"" << sy(r.prediction)
        << "\" r=\"2.4\" fill=\"#1f77b4\" fill-opacity=\"0.55\"/>\n";
  }
  out << "<text x=\"" << size / 2
      << "\" y=\"" << size - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">target</text>\n";
  out << "<text x=\"14\" y=\"" << size / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
         "14 "
      << size / 2 << ")\">prediction</text>\n";
  out << "</svg>\n";
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

uint64_t sample_binomial(uint64_t n, double p, Rng &rng) {
  if (p < 0.0 || p > 1.0) throw ValidationError("binomial p outside [0,1]");
  uint64_t successes = 0;
  for (uint64_t i = 0; i < n; ++i) {
    if (rng.uniform_real() < p) ++successes;
  }
  return successes;
}

}  // namespace qcap
