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

#include "qcap/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace qcap {

uint64_t derive_seed(uint64_t seed, uint64_t phase) {
  uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + phase * 0xd1b54a32d192ed03ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::map<std::string, SimValue> values_by_id(
    const std::vector<SimValue> &values) {
  std::map<std::string, SimValue> map;
  for (const SimValue &v : values) map[v.id] = v;
  return map;
}

std::vector<SimValue> simulate_exact_fidelity(
    const std::vector<Circuit> &circuits, const ExactSimulator &sim,
    unsigned threads) {
  std::vector<SimValue> values(circuits.size());
  parallel_for(
      circuits.size(),
      [&](size_t i) {
        values[i] = {circuits[i].id, Metric::Fidelity,
                     sim.fidelity(circuits[i]), "exact", std::nullopt};
      },
      threads);
  return values;
}

std::vector<SimValue> simulate_first_order(
    const std::vector<Circuit> &circuits, const ErrorModel &model,
    const TrackedErrorSet &ts, unsigned threads) {
  std::vector<SimValue> values(circuits.size());
  parallel_for(
      circuits.size(),
      [&](size_t i) {
        values[i] = {circuits[i].id, Metric::Fidelity,
                     first_order_fidelity(circuits[i], model, ts),
                     "first_order", std::nullopt};
      },
      threads);
  return values;
}

std::vector<PredictionRecord> predictions_for(
    const QpaModel &model, const std::vector<DatasetRecord> &records,
    unsigned threads) {
  std::vector<double> preds = predict_batch(model, records, threads);
  std::vector<PredictionRecord> out(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    out[i] = {records[i].id, records[i].target, preds[i], records[i].shots};
  }
  return out;
}

void write_summary(const std::string &path, const std::string &kind,
                   uint64_t seed, const PipelineResult &r) {
  nlohmann::ordered_json j;
  j["schema"] = "qcap-summary-v1";
  j["pipeline"] = kind;
  j["seed"] = seed;
  j["raw_circuits"] = r.raw_circuits;
  j["train_size"] = r.train_size;
  j["validation_size"] = r.validation_size;
  j["test_size"] = r.test_size;
  j["test_mae"] = r.test_mae;
  j["test_pearson_r"] = r.test_pearson_r;
  if (r.mirror_size > 0) {
    j["mirror_size"] = r.mirror_size;
    j["mirror_mae"] = r.mirror_mae;
    j["mirror_pearson_r"] = r.mirror_pearson_r;
  }
  j["epochs_run"] = r.epochs_run;
  j["best_epoch"] = r.best_epoch;
  j["param_count"] = r.param_count;
  j["runtime_seconds"] = r.runtime_seconds;
  j["checkpoint"] = r.checkpoint_path;
  j["dataset_dir"] = r.dataset_dir;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

}  // namespace

PipelineResult reproduce_sim4(const Sim4Options &opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(opts.out_dir);
  ConnectivityGraph g = ConnectivityGraph::from_spec("ring:4");
  PipelineResult result;

  Rng model_rng(derive_seed(opts.seed, 1), 0);
  ErrorModel model = sample_coherent_model(g, opts.max_strength, model_rng);
  model.save_json(opts.out_dir + "/error_model.json");

  SamplerConfig sampler;
  sampler.seed = derive_seed(opts.seed, 2);
  std::vector<Circuit> circuits =
      sample_circuits(g, sampler, CircuitKind::Iid, opts.num_circuits, "iid");
  result.raw_circuits = circuits.size();
  write_circuits_jsonl(opts.out_dir + "/circuits.jsonl", circuits, g.name());

  ExactSimulator sim(model);
  std::vector<SimValue> values =
      simulate_exact_fidelity(circuits, sim, opts.train.threads);
  write_values_jsonl(opts.out_dir + "/values.jsonl", values);

  AssembleOptions assemble_opts;
  assemble_opts.threshold = opts.threshold;
  assemble_opts.seed = derive_seed(opts.seed, 3);
  assemble_opts.metric = Metric::Fidelity;
  DatasetSplit split = assemble(circuits, values_by_id(values), g,
                                assemble_opts);
  result.train_size = split.train.size();
  result.validation_size = split.validation.size();
  result.test_size = split.test.size();

  TrackedErrorSet ts = TrackedErrorSet::build(g, opts.hops, 2);
  ChannelSpec spec = ChannelSpec::for_graph(g);
  DatasetMeta meta;
  meta.graph_spec = g.name();
  meta.n = g.num_qubits();
  meta.hops = opts.hops;
  meta.max_weight = 2;
  meta.k = static_cast<uint32_t>(ts.size());
  meta.d_max = split.d_max;
  meta.n_ch = spec.n_ch;
  meta.metric = Metric::Fidelity;
  meta.tables_mode = "recompute";
  result.dataset_dir = opts.out_dir + "/dataset";
  write_dataset_dir(result.dataset_dir, split, meta, g, spec, ts);

  QpaModel nn = build_model(g, g.name(), opts.hops, 2, opts.filter,
                            Metric::Fidelity, 10000.0, {30, 20, 10, 5, 5, 1},
                            derive_seed(opts.seed, 4));
  result.param_count = nn.param_count();
  TrainConfig train_cfg = opts.train;
  train_cfg.seed = derive_seed(opts.seed, 5);
  TrainResult trained = train(&nn, split, train_cfg);
  result.epochs_run = static_cast<uint32_t>(trained.history.size());
  result.best_epoch = trained.best_epoch;
  result.checkpoint_path = opts.out_dir + "/checkpoint.json";
  save_checkpoint(nn, result.checkpoint_path);

  std::vector<PredictionRecord> test_preds =
      predictions_for(nn, split.test, opts.train.threads);
  write_predictions_csv(opts.out_dir + "/pred_test.csv", test_preds);
  EvalReport test_report =
      make_report("test", result.checkpoint_path, test_preds);
  write_report_json(opts.out_dir + "/report_test.json", test_report);
  result.test_mae = test_report.mae_value;
  result.test_pearson_r = test_report.pearson_r.value_or(0.0);

  if (!opts.skip_mirror) {
    // Out-of-distribution evaluation: freshly sampled mirror circuits on the
    // same device and error model, filtered at the same threshold and never
    // overlapping the i.i.d. sets.
    std::unordered_set<std::string> iid_keys;
    for (const Circuit &c : circuits) {
      iid_keys.insert(circuit_content_key(c));
    }
    std::vector<Circuit> mirror;
    size_t batch_index = 0;
    while (batch_index < 8) {
      SamplerConfig mirror_sampler;
      mirror_sampler.seed = derive_seed(opts.seed, 6 + 10 * batch_index);
      std::vector<Circuit> batch = sample_circuits(
          g, mirror_sampler, CircuitKind::Mirror, opts.num_mirror_circuits,
          "mirror-b" + std::to_string(batch_index));
      for (Circuit &c : batch) {
        if (!iid_keys.count(circuit_content_key(c))) {
          mirror.push_back(std::move(c));
        }
      }
      ++batch_index;
      std::vector<SimValue> mvalues =
          simulate_exact_fidelity(mirror, sim, opts.train.threads);
      size_t kept = 0;
      for (const SimValue &v : mvalues) {
        if (v.value >= opts.threshold) ++kept;
      }
      if (kept >= opts.min_mirror_kept) {
        AssembleOptions mopts;
        mopts.threshold = opts.threshold;
        mopts.seed = derive_seed(opts.seed, 7);
        mopts.metric = Metric::Fidelity;
        mopts.fractions = {0.0, 0.0, 1.0};
        mopts.d_max = split.d_max;
        DatasetSplit mirror_split =
            assemble(mirror, values_by_id(mvalues), g, mopts);
        write_values_jsonl(opts.out_dir + "/mirror_values.jsonl", mvalues);
        write_dataset_file(opts.out_dir + "/mirror_test.jsonl",
                           mirror_split.test, meta, g, spec, ts);
        std::vector<PredictionRecord> mirror_preds =
            predictions_for(nn, mirror_split.test, opts.train.threads);
        write_predictions_csv(opts.out_dir + "/pred_mirror.csv", mirror_preds);
        EvalReport mirror_report =
            make_report("mirror", result.checkpoint_path, mirror_preds);
        write_report_json(opts.out_dir + "/report_mirror.json", mirror_report);
        result.mirror_size = mirror_preds.size();
        result.mirror_mae = mirror_report.mae_value;
        result.mirror_pearson_r = mirror_report.pearson_r.value_or(0.0);
        break;
      }
    }
    if (result.mirror_size == 0) {
      throw NumericalError("could not collect enough mirror circuits above "
                           "the fidelity threshold");
    }
  }

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  result.summary_path = opts.out_dir + "/summary.json";
  write_summary(result.summary_path, "sim4", opts.seed, result);
  return result;
}

PipelineResult reproduce_ring100(const Ring100Options &opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(opts.out_dir);
  const std::string graph_spec = "ring:" + std::to_string(opts.n);
  ConnectivityGraph g = ConnectivityGraph::from_spec(graph_spec);
  PipelineResult result;

  Rng model_rng(derive_seed(opts.seed, 1), 0);
  ErrorModel model =
      sample_weight1_model(g, opts.max_stochastic, opts.max_coherent,
                           model_rng);
  model.save_json(opts.out_dir + "/error_model.json");

  SamplerConfig sampler;
  sampler.width_min = opts.n;
  sampler.width_max = opts.n;
  sampler.depth_caps = {opts.depth_cap};
  sampler.seed = derive_seed(opts.seed, 2);
  std::vector<Circuit> circuits =
      sample_circuits(g, sampler, CircuitKind::Iid, opts.num_circuits, "iid");
  result.raw_circuits = circuits.size();
  write_circuits_jsonl(opts.out_dir + "/circuits.jsonl", circuits, g.name());

  TrackedErrorSet ts = TrackedErrorSet::build(g, 1, 1);
  std::vector<SimValue> values =
      simulate_first_order(circuits, model, ts, opts.train.threads);
  write_values_jsonl(opts.out_dir + "/values.jsonl", values);

  AssembleOptions assemble_opts;
  assemble_opts.threshold = opts.threshold;
  assemble_opts.seed = derive_seed(opts.seed, 3);
  assemble_opts.metric = Metric::Fidelity;
  assemble_opts.d_max = opts.depth_cap;
  DatasetSplit split = assemble(circuits, values_by_id(values), g,
                                assemble_opts);
  result.train_size = split.train.size();
  result.validation_size = split.validation.size();
  result.test_size = split.test.size();

  ChannelSpec spec = ChannelSpec::for_graph(g);
  DatasetMeta meta;
  meta.graph_spec = graph_spec;
  meta.n = opts.n;
  meta.hops = 1;
  meta.max_weight = 1;
  meta.k = static_cast<uint32_t>(ts.size());
  meta.d_max = split.d_max;
  meta.n_ch = spec.n_ch;
  meta.metric = Metric::Fidelity;
  meta.tables_mode = "recompute";
  result.dataset_dir = opts.out_dir + "/dataset";
  write_dataset_dir(result.dataset_dir, split, meta, g, spec, ts);

  QpaModel nn = build_model(g, graph_spec, 1, 1, opts.filter,
                            Metric::Fidelity, 10000.0, {30, 20, 10, 5, 5, 1},
                            derive_seed(opts.seed, 4));
  result.param_count = nn.param_count();
  TrainConfig train_cfg = opts.train;
  train_cfg.seed = derive_seed(opts.seed, 5);
  TrainResult trained = train(&nn, split, train_cfg);
  result.epochs_run = static_cast<uint32_t>(trained.history.size());
  result.best_epoch = trained.best_epoch;
  result.checkpoint_path = opts.out_dir + "/checkpoint.json";
  save_checkpoint(nn, result.checkpoint_path);

  std::vector<PredictionRecord> test_preds =
      predictions_for(nn, split.test, opts.train.threads);
  write_predictions_csv(opts.out_dir + "/pred_test.csv", test_preds);
  EvalReport test_report =
      make_report("test", result.checkpoint_path, test_preds);
  write_report_json(opts.out_dir + "/report_test.json", test_report);
  result.test_mae = test_report.mae_value;
  result.test_pearson_r = test_report.pearson_r.value_or(0.0);

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  result.summary_path = opts.out_dir + "/summary.json";
  write_summary(result.summary_path, "ring100", opts.seed, result);
  return result;
}

BayesCheckResult bayes_factor_synthetic(const BayesCheckOptions &opts) {
  ConnectivityGraph g = ConnectivityGraph::from_spec("ring:4");
  Rng model_rng(derive_seed(opts.seed, 1), 0);
  ErrorModel model =
      sample_coherent_model(g, kDefaultCoherentMaxStrength, model_rng);
  SamplerConfig sampler;
  sampler.width_max = 3;
  sampler.depth_caps = {180, 90, 60};
  sampler.seed = derive_seed(opts.seed, 2);
  std::vector<Circuit> circuits = sample_circuits(
      g, sampler, CircuitKind::Mirror, opts.num_circuits, "bayes");
  ExactSimulator sim(model);
  std::vector<double> psts(circuits.size());
  parallel_for(circuits.size(),
               [&](size_t i) { psts[i] = sim.pst(circuits[i]); });
  Rng shot_rng(derive_seed(opts.seed, 3), 0);
  std::vector<PredictionRecord> truth(circuits.size());
  std::vector<PredictionRecord> perturbed(circuits.size());
  for (size_t i = 0; i < circuits.size(); ++i) {
    uint64_t successes = sample_binomial(opts.shots, psts[i], shot_rng);
    truth[i] = {circuits[i].id, psts[i], psts[i],
                std::make_pair(opts.shots, successes)};
    perturbed[i] = truth[i];
    perturbed[i].prediction = std::min(1.0 - kBayesClipBound,
                                       psts[i] + opts.delta);
  }
  BayesCheckResult result;
  result.log10_k = bayes_factor_pst(truth, perturbed);
  result.num_records = circuits.size();
  return result;
}

}  // namespace qcap
