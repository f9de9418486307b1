#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdl/matrix.hpp"
#include "rdl/robust_dl.hpp"
#include "rdl/synth_data.hpp"

namespace rdl {

/// Shortest decimal form that round-trips the exact double value; all CSV
/// and JSON numbers go through this so save/load/save is bit-identical.
std::string format_double(double v);

// Dataset persistence: data.csv holds one sample per row with header
// f0..f{d-1}, labels.csv holds "index,is_outlier" rows, meta.json records
// the generator and its parameters.
void save_dataset(const std::filesystem::path& dir, const LabeledDataset& ds,
                  const nlohmann::json& meta);
DataMatrix load_data_csv(const std::filesystem::path& file);
std::vector<std::uint8_t> load_labels_csv(const std::filesystem::path& file);

struct ModelArtifact {
  Dictionary dictionary;
  std::vector<double> weights;
  FitSettings settings;
  std::vector<OuterRecord> history;
  double fit_seconds = 0.0;
};

// Model persistence: dictionary.csv stores atoms as columns under an
// atom0..atom{k-1} header, weights.csv stores "index,weight" rows and
// model.json the settings snapshot plus per-iteration objective history.
void save_model(const std::filesystem::path& dir, const ModelArtifact& m);
ModelArtifact load_model(const std::filesystem::path& dir);

nlohmann::json settings_to_json(const FitSettings& s);
FitSettings settings_from_json(const nlohmann::json& j);

}  // namespace rdl
