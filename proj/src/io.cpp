#include "rdl/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rdl {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
  return f;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("cannot open for reading: " + p.string());
  return f;
}

double parse_field(const std::string& s, const std::filesystem::path& file) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("bad numeric field '" + s + "' in " + file.string());
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// rows of numbers below a single header line
std::vector<std::vector<double>> load_csv_rows(const std::filesystem::path& file,
                                               std::size_t* n_cols_out) {
  auto f = open_in(file);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty csv: " + file.string());
  const std::size_t n_cols = split_csv(line).size();
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != n_cols)
      throw std::runtime_error("ragged csv row in " + file.string());
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) row[i] = parse_field(fields[i], file);
    rows.push_back(std::move(row));
  }
  if (n_cols_out) *n_cols_out = n_cols;
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

void save_dataset(const std::filesystem::path& dir, const LabeledDataset& ds,
                  const nlohmann::json& meta) {
  std::filesystem::create_directories(dir);
  {
    auto f = open_out(dir / "data.csv");
    for (std::size_t j = 0; j < ds.x.rows(); ++j)
      f << (j ? "," : "") << "f" << j;
    f << "\n";
    for (std::size_t i = 0; i < ds.x.cols(); ++i) {
      for (std::size_t j = 0; j < ds.x.rows(); ++j)
        f << (j ? "," : "") << format_double(ds.x(j, i));
      f << "\n";
    }
  }
  {
    auto f = open_out(dir / "labels.csv");
    f << "index,is_outlier\n";
    for (std::size_t i = 0; i < ds.is_outlier.size(); ++i)
      f << i << "," << (ds.is_outlier[i] ? 1 : 0) << "\n";
  }
  {
    auto f = open_out(dir / "meta.json");
    f << meta.dump(2) << "\n";
  }
}

DataMatrix load_data_csv(const std::filesystem::path& file) {
  std::size_t d = 0;
  const auto rows = load_csv_rows(file, &d);
  DataMatrix x(d, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) x(j, i) = rows[i][j];
  return x;
}

std::vector<std::uint8_t> load_labels_csv(const std::filesystem::path& file) {
  const auto rows = load_csv_rows(file, nullptr);
  std::vector<std::uint8_t> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw std::runtime_error("labels csv needs index,is_outlier");
    labels[i] = rows[i][1] != 0.0 ? 1 : 0;
  }
  return labels;
}

nlohmann::json settings_to_json(const FitSettings& s) {
  return nlohmann::json{
      {"k", s.k},
      {"lambda", s.lambda},
      {"penalty", s.penalty.to_string()},
      {"outer_iters", s.outer_iters},
      {"inner_max", s.inner_max},
      {"inner_tol", s.inner_tol},
      {"r_floor", s.r_floor},
      {"w_max", s.w_max},
      {"s_min", s.s_min},
      {"seed", s.seed},
      {"init", s.init == InitStrategy::undercomplete ? "undercomplete" : "random"},
      {"batch_atoms", s.batch_atoms},
      {"coeff_init", s.coeff_init == CoeffInit::random ? "random" : "zero"},
      {"dict_sweeps", s.dict_sweeps},
      {"warm_start", s.warm_start},
      {"lasso_max_iters", s.lasso.max_iters},
      {"lasso_tol", s.lasso.tol},
  };
}

FitSettings settings_from_json(const nlohmann::json& j) {
  FitSettings s;
  s.k = j.at("k").get<std::size_t>();
  s.lambda = j.at("lambda").get<double>();
  s.penalty = parse_penalty(j.at("penalty").get<std::string>());
  s.outer_iters = j.at("outer_iters").get<std::size_t>();
  s.inner_max = j.at("inner_max").get<std::size_t>();
  s.inner_tol = j.at("inner_tol").get<double>();
  s.r_floor = j.at("r_floor").get<double>();
  s.w_max = j.at("w_max").get<double>();
  s.s_min = j.at("s_min").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.init = j.at("init").get<std::string>() == "undercomplete" ? InitStrategy::undercomplete
                                                              : InitStrategy::random;
  s.batch_atoms = j.at("batch_atoms").get<std::size_t>();
  s.coeff_init =
      j.at("coeff_init").get<std::string>() == "random" ? CoeffInit::random : CoeffInit::zero;
  s.dict_sweeps = j.at("dict_sweeps").get<std::size_t>();
  s.warm_start = j.at("warm_start").get<bool>();
  s.lasso.max_iters = j.at("lasso_max_iters").get<std::size_t>();
  s.lasso.tol = j.at("lasso_tol").get<double>();
  return s;
}

void save_model(const std::filesystem::path& dir, const ModelArtifact& m) {
  std::filesystem::create_directories(dir);
  {
    auto f = open_out(dir / "dictionary.csv");
    for (std::size_t j = 0; j < m.dictionary.cols(); ++j)
      f << (j ? "," : "") << "atom" << j;
    f << "\n";
    for (std::size_t i = 0; i < m.dictionary.rows(); ++i) {
      for (std::size_t j = 0; j < m.dictionary.cols(); ++j)
        f << (j ? "," : "") << format_double(m.dictionary(i, j));
      f << "\n";
    }
  }
  {
    auto f = open_out(dir / "weights.csv");
    f << "index,weight\n";
    for (std::size_t i = 0; i < m.weights.size(); ++i)
      f << i << "," << format_double(m.weights[i]) << "\n";
  }
  {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& r : m.history)
      hist.push_back({{"robust_objective", r.robust_objective},
                      {"surrogate_objective", r.surrogate_objective},
                      {"inner_iterations", r.inner_iterations},
                      {"inner_converged", r.inner_converged}});
    const nlohmann::json j{
        {"format", "rdl-model-v1"},
        {"d", m.dictionary.rows()},
        {"k", m.dictionary.cols()},
        {"n", m.weights.size()},
        {"settings", settings_to_json(m.settings)},
        {"history", hist},
        {"fit_seconds", m.fit_seconds},
    };
    auto f = open_out(dir / "model.json");
    f << j.dump(2) << "\n";
  }
}

ModelArtifact load_model(const std::filesystem::path& dir) {
  ModelArtifact m;
  nlohmann::json j;
  {
    auto f = open_in(dir / "model.json");
    f >> j;
  }
  if (j.value("format", "") != std::string("rdl-model-v1"))
    throw std::runtime_error("unrecognized model format in " + (dir / "model.json").string());
  m.settings = settings_from_json(j.at("settings"));
  m.fit_seconds = j.at("fit_seconds").get<double>();
  for (const auto& r : j.at("history")) {
    OuterRecord rec;
    rec.robust_objective = r.at("robust_objective").get<double>();
    rec.surrogate_objective = r.at("surrogate_objective").get<double>();
    rec.inner_iterations = r.at("inner_iterations").get<std::size_t>();
    rec.inner_converged = r.at("inner_converged").get<bool>();
    m.history.push_back(rec);
  }

  std::size_t k = 0;
  const auto rows = load_csv_rows(dir / "dictionary.csv", &k);
  m.dictionary = Dictionary(rows.size(), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t jj = 0; jj < k; ++jj) m.dictionary(i, jj) = rows[i][jj];

  const auto wrows = load_csv_rows(dir / "weights.csv", nullptr);
  m.weights.resize(wrows.size());
  for (std::size_t i = 0; i < wrows.size(); ++i) {
    if (wrows[i].size() != 2) throw std::runtime_error("weights csv needs index,weight");
    m.weights[i] = wrows[i][1];
  }

  const std::size_t d = j.at("d").get<std::size_t>();
  const std::size_t kk = j.at("k").get<std::size_t>();
  const std::size_t n = j.at("n").get<std::size_t>();
  if (m.dictionary.rows() != d || m.dictionary.cols() != kk || m.weights.size() != n)
    throw std::runtime_error("model files disagree with recorded shapes in " + dir.string());
  return m;
}

}  // namespace rdl
