#include "lowdensity/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "lowdensity/certificates.hpp"
#include "lowdensity/coherence.hpp"
#include "lowdensity/core.hpp"
#include "lowdensity/density.hpp"
#include "lowdensity/matrix_io.hpp"

namespace lowdensity {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) {
      break;
    }
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_unsigned(const std::string& text, const std::string& what) {
  T value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Parse, "bad " + what + " '" + text + "'");
  }
  return value;
}

[[noreturn]] void config_error(const std::string& detail) {
  throw Error(ErrorCode::InvalidArgument, "experiment config: " + detail);
}

}  // namespace

// ---------------------------------------------------------------------------
// Dictionary specs

Dictionary DictionarySpec::build() const {
  if (kind == "identity") {
    return identity_dictionary(m);
  }
  if (kind == "hadamard") {
    return hadamard_dictionary(m);
  }
  if (kind == "identity-hadamard") {
    return concat_dictionaries(identity_dictionary(m), hadamard_dictionary(m));
  }
  if (kind == "random") {
    Rng rng(seed);
    return random_unit_dictionary(m, n, rng);
  }
  if (kind == "file") {
    return make_dictionary(io::read_matrix(file), false);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown dictionary kind '" + kind + "'");
}

DictionarySpec parse_dictionary_spec(const std::string& text) {
  DictionarySpec spec;
  const std::vector<std::string> parts = split(text, ':');
  const std::string& head = parts[0];
  if (head == "identity" || head == "hadamard" || head == "identity-hadamard") {
    if (parts.size() != 2) {
      throw Error(ErrorCode::Parse, "expected " + head + ":M");
    }
    spec.kind = head;
    spec.m = parse_unsigned<std::size_t>(parts[1], "M");
    return spec;
  }
  if (head == "random") {
    if (parts.size() != 3 && parts.size() != 4) {
      throw Error(ErrorCode::Parse, "expected random:M:N[:seed]");
    }
    spec.kind = head;
    spec.m = parse_unsigned<std::size_t>(parts[1], "M");
    spec.n = parse_unsigned<std::size_t>(parts[2], "N");
    spec.seed = parts.size() == 4 ? parse_unsigned<std::uint64_t>(parts[3], "seed") : 0;
    return spec;
  }
  spec.kind = "file";
  spec.file = head == "file" ? text.substr(5) : text;
  return spec;
}

DictionarySpec dictionary_spec_from_json(const nlohmann::json& value) {
  if (value.is_string()) {
    return parse_dictionary_spec(value.get<std::string>());
  }
  if (!value.is_object() || !value.contains("type")) {
    config_error("dictionary_spec must be a string or an object with a \"type\"");
  }
  DictionarySpec spec;
  spec.kind = value.at("type").get<std::string>();
  if (spec.kind == "file") {
    spec.file = value.at("path").get<std::string>();
    return spec;
  }
  if (spec.kind != "identity" && spec.kind != "hadamard" && spec.kind != "identity-hadamard" &&
      spec.kind != "random") {
    config_error("unknown dictionary type '" + spec.kind + "'");
  }
  spec.m = value.at("M").get<std::size_t>();
  if (spec.kind == "random") {
    spec.n = value.at("N").get<std::size_t>();
    spec.seed = value.value("seed", std::uint64_t{0});
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Config

ExperimentConfig parse_experiment_config(const nlohmann::json& json,
                                         const std::filesystem::path& base_dir) {
  static const std::set<std::string> known = {
      "dictionary_spec", "signal_family", "k",       "alpha",      "signal_file",
      "trial_count",     "base_seed",     "t_max_policy", "t_max", "output_path"};
  if (!json.is_object()) {
    config_error("top level must be an object");
  }
  for (const auto& item : json.items()) {
    if (!known.contains(item.key())) {
      config_error("unknown field '" + item.key() + "'");
    }
  }
  auto resolve = [&](const std::filesystem::path& p) {
    return p.is_absolute() ? p : base_dir / p;
  };

  ExperimentConfig config;
  try {
    if (!json.contains("dictionary_spec")) {
      config_error("missing dictionary_spec");
    }
    config.dictionary_spec = dictionary_spec_from_json(json.at("dictionary_spec"));
    if (config.dictionary_spec.kind == "file") {
      config.dictionary_spec.file = resolve(config.dictionary_spec.file);
    }

    const std::string family = json.value("signal_family", std::string("constant-modulus"));
    if (family == "constant-modulus") {
      config.signal_family = SignalFamily::ConstantModulus;
    } else if (family == "alpha-decaying") {
      config.signal_family = SignalFamily::AlphaDecaying;
    } else if (family == "file") {
      config.signal_family = SignalFamily::File;
    } else {
      config_error("unknown signal_family '" + family + "'");
    }

    if (json.contains("k")) {
      const auto& k = json.at("k");
      if (k.is_array()) {
        config.k = k.get<std::vector<std::size_t>>();
      } else {
        config.k = {k.get<std::size_t>()};
      }
    }
    config.alpha = json.value("alpha", 0.0);
    if (json.contains("signal_file")) {
      config.signal_file = resolve(json.at("signal_file").get<std::string>());
    }
    if (!json.contains("trial_count")) {
      config_error("missing trial_count");
    }
    config.trial_count = json.at("trial_count").get<std::size_t>();
    config.base_seed = json.value("base_seed", std::uint64_t{0});

    const std::string policy = json.value("t_max_policy", std::string("equal-to-k"));
    if (policy == "equal-to-k") {
      config.t_max_policy = TMaxPolicy::EqualToK;
    } else if (policy == "fixed") {
      config.t_max_policy = TMaxPolicy::Fixed;
      if (!json.contains("t_max")) {
        config_error("t_max_policy \"fixed\" needs t_max");
      }
      config.t_max = json.at("t_max").get<std::size_t>();
    } else {
      config_error("unknown t_max_policy '" + policy + "'");
    }
    config.output_path = resolve(json.value("output_path", std::string("experiment_out")));
  } catch (const nlohmann::json::exception& e) {
    config_error(e.what());
  }

  if (config.trial_count < 1) {
    config_error("trial_count must be >= 1");
  }
  if (config.signal_family == SignalFamily::File) {
    if (config.signal_file.empty() || !std::filesystem::exists(config.signal_file)) {
      config_error("signal_file missing or not found");
    }
    if (config.k.empty()) {
      config.k = {0};  // placeholder; the file's sparsity is reported
    }
  } else if (config.k.empty()) {
    config_error("k must list at least one value");
  }
  if (config.dictionary_spec.kind == "file" &&
      !std::filesystem::exists(config.dictionary_spec.file)) {
    config_error("dictionary file '" + config.dictionary_spec.file.string() + "' not found");
  }
  if (config.signal_family == SignalFamily::AlphaDecaying &&
      !(config.alpha > 0.0 && config.alpha < 1.0)) {
    config_error("alpha must lie in (0, 1)");
  }
  if (config.t_max_policy == TMaxPolicy::Fixed && config.t_max < 1) {
    config_error("t_max must be >= 1");
  }
  return config;
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open config '" + path.string() + "'");
  }
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_experiment_config(json, path.parent_path());
}

// ---------------------------------------------------------------------------
// Signals

namespace {

// First k entries of a uniformly random permutation of 0..n-1.
std::vector<std::size_t> random_support(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) {
    pool[i] = i;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

Signal generate_signal(SignalFamily family, std::size_t n, std::size_t k, double alpha, Rng& rng) {
  if (k > n) {
    throw Error(ErrorCode::KOutOfRange, "k exceeds the signal length");
  }
  Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
  switch (family) {
    case SignalFamily::ConstantModulus: {
      for (std::size_t index : random_support(n, k, rng)) {
        x[static_cast<Eigen::Index>(index)] = rng.unit_phase();
      }
      break;
    }
    case SignalFamily::AlphaDecaying: {
      const Signal profile = truncate_to_largest(make_alpha_decaying(n, alpha), k);
      const std::vector<std::size_t> support = random_support(n, k, rng);
      for (std::size_t j = 0; j < k; ++j) {
        x[static_cast<Eigen::Index>(support[j])] = profile[j] * rng.unit_phase();
      }
      break;
    }
    case SignalFamily::File:
      throw Error(ErrorCode::InvalidArgument, "file signals are read, not generated");
  }
  return Signal(std::move(x));
}

bool selects_largest_entries(const Signal& x, const std::vector<std::size_t>& selected) {
  std::vector<bool> chosen(x.dim(), false);
  double smallest_chosen = std::numeric_limits<double>::infinity();
  for (std::size_t i : selected) {
    chosen[i] = true;
    smallest_chosen = std::min(smallest_chosen, std::abs(x[i]));
  }
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!chosen[i] && std::abs(x[i]) > smallest_chosen) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Runner

ExperimentRunner::ExperimentRunner(ExperimentConfig config)
    : config_(std::move(config)), dictionary_(config_.dictionary_spec.build()) {
  mu_ = coherence(dictionary_).mu;
  if (config_.signal_family == SignalFamily::File) {
    file_signal_ = io::read_signal(config_.signal_file);
    if (file_signal_.dim() != dictionary_.cols()) {
      config_error("signal_file length does not match the dictionary width");
    }
  } else {
    for (std::size_t k : config_.k) {
      if (k < 1 || k > dictionary_.cols()) {
        config_error("k=" + std::to_string(k) + " outside [1, N]");
      }
    }
    if (config_.signal_family == SignalFamily::AlphaDecaying &&
        !(config_.alpha < 1.0 - 1.0 / static_cast<double>(dictionary_.cols()))) {
      config_error("alpha must be below 1 - 1/N");
    }
  }
  const std::size_t limit = std::min(dictionary_.rows(), dictionary_.cols());
  if (config_.t_max_policy == TMaxPolicy::Fixed && config_.t_max > limit) {
    config_error("t_max exceeds min(M, N)");
  }
}

TrialOutcome ExperimentRunner::run_trial(std::size_t k, std::size_t index) const {
  const std::uint64_t seed = config_.base_seed + index;
  Rng rng(seed);
  const std::size_t n = dictionary_.cols();

  TrialOutcome out;
  if (config_.signal_family == SignalFamily::File) {
    out.signal = file_signal_;
    k = sparsity(file_signal_);
  } else {
    out.signal = generate_signal(config_.signal_family, n, k, config_.alpha, rng);
  }
  const Signal& x = out.signal;
  const std::size_t nonzeros = sparsity(x);
  const std::size_t limit = std::min(dictionary_.rows(), n);
  std::size_t t_max = config_.t_max_policy == TMaxPolicy::Fixed ? config_.t_max : k;
  t_max = std::clamp<std::size_t>(t_max, 1, limit);

  TrialRecord& rec = out.record;
  rec.trial = index;
  rec.seed = seed;
  rec.k = k;
  rec.t_max = t_max;

  const GuaranteeReport guarantee = omp_guarantee(mu_, x, std::min(t_max, n));
  rec.certified = guarantee.certified;
  rec.classically_certified = guarantee.classical_certified;

  const Signal y(dictionary_.apply(x));
  out.trace = omp_run(dictionary_, y, t_max);
  rec.residual_norm = out.trace.residual_norms.back();

  std::vector<std::size_t> true_support;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] != Complex(0.0, 0.0)) {
      true_support.push_back(i);
    }
  }
  const std::vector<std::size_t> found = out.trace.support.sorted();
  const Vector error = out.trace.estimate(n).entries() - x.entries();
  rec.exact_recovery =
      found == true_support && error.norm() <= 1e-8 * x.entries().norm();
  rec.top_indices_recovered = out.trace.iterations() == std::min(t_max, nonzeros) &&
                              selects_largest_entries(x, out.trace.selected);
  rec.guarantee_met = nonzeros <= t_max ? rec.exact_recovery : rec.top_indices_recovered;
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const ExperimentRunner runner(config);
  ExperimentResult result;
  for (std::size_t pos = 0; pos < config.k.size(); ++pos) {
    SummaryRow row;
    std::size_t certified = 0;
    std::size_t classical = 0;
    std::size_t exact = 0;
    for (std::size_t i = 0; i < config.trial_count; ++i) {
      const std::size_t index = pos * config.trial_count + i;
      const TrialRecord rec = runner.run_trial(config.k[pos], index).record;
      certified += rec.certified ? 1 : 0;
      classical += rec.classically_certified ? 1 : 0;
      exact += rec.exact_recovery ? 1 : 0;
      result.soundness_violations += rec.soundness_violation() ? 1 : 0;
      row.k = rec.k;
      result.records.push_back(rec);
    }
    const auto trials = static_cast<double>(config.trial_count);
    row.delta_certified_rate = static_cast<double>(certified) / trials;
    row.classical_certified_rate = static_cast<double>(classical) / trials;
    row.exact_recovery_rate = static_cast<double>(exact) / trials;
    result.summary.push_back(row);
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.trial < b.trial; });
  return result;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::string out = "trial,seed,k,certified,classically_certified,exact_recovery,residual_norm\n";
  for (const TrialRecord& r : records) {
    out += std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.k) +
           ',' + (r.certified ? '1' : '0') + ',' + (r.classically_certified ? '1' : '0') + ',' +
           (r.exact_recovery ? '1' : '0') + ',' + io::format_double(r.residual_norm) + '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "k,delta_certified_rate,classical_certified_rate,exact_recovery_rate\n";
  for (const SummaryRow& r : rows) {
    out += std::to_string(r.k) + ',' + io::format_double(r.delta_certified_rate) + ',' +
           io::format_double(r.classical_certified_rate) + ',' +
           io::format_double(r.exact_recovery_rate) + '\n';
  }
  return out;
}

}  // namespace lowdensity
