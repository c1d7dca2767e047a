#pragma once

// Monte-Carlo harness comparing the delta-density OMP certificate with the
// classical sparsity threshold, and checking both against actual OMP runs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowdensity/omp.hpp"
#include "lowdensity/rng.hpp"
#include "lowdensity/types.hpp"

namespace lowdensity {

/// Named dictionary constructor or file. Text form (CLI and config):
///   identity:M   hadamard:M   identity-hadamard:M   random:M:N[:seed]
///   file:PATH    or a bare path to a matrix file
struct DictionarySpec {
  std::string kind;  // identity | hadamard | identity-hadamard | random | file
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::filesystem::path file;

  Dictionary build() const;
};

DictionarySpec parse_dictionary_spec(const std::string& text);
/// Accepts the text form or {"type": ..., "M": .., "N": .., "seed": .., "path": ..}.
DictionarySpec dictionary_spec_from_json(const nlohmann::json& value);

enum class SignalFamily { ConstantModulus, AlphaDecaying, File };
enum class TMaxPolicy { EqualToK, Fixed };

struct ExperimentConfig {
  DictionarySpec dictionary_spec;
  SignalFamily signal_family = SignalFamily::ConstantModulus;
  std::vector<std::size_t> k;  // one sweep point per value
  double alpha = 0.0;
  std::filesystem::path signal_file;
  std::size_t trial_count = 0;
  std::uint64_t base_seed = 0;
  TMaxPolicy t_max_policy = TMaxPolicy::EqualToK;
  std::size_t t_max = 0;  // used with TMaxPolicy::Fixed
  std::filesystem::path output_path;  // directory receiving trials.csv and summary.csv
};

/// Validates field names and values. Relative paths resolve against `base_dir`.
/// Throws InvalidArgument / Parse / Io.
ExperimentConfig parse_experiment_config(const nlohmann::json& json,
                                         const std::filesystem::path& base_dir);
ExperimentConfig read_experiment_config(const std::filesystem::path& path);

/// A k-nonzero test signal of length n:
///  - ConstantModulus: unit-modulus entries with random phases on a random support;
///  - AlphaDecaying: the k largest entries of the alpha-decaying signal, placed
///    on a random support in random order, each with a random phase.
Signal generate_signal(SignalFamily family, std::size_t n, std::size_t k, double alpha, Rng& rng);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::size_t t_max = 0;
  bool certified = false;
  bool classically_certified = false;
  /// OMP support equals the true support and ||x_hat - x|| <= 1e-8 ||x||.
  bool exact_recovery = false;
  /// Selected indices are t_max largest-modulus entries of x (ties allowed).
  bool top_indices_recovered = false;
  double residual_norm = 0.0;

  /// What a certificate promises: exact recovery when ||x||_0 <= t_max,
  /// otherwise identification of the t_max largest entries.
  bool guarantee_met = false;
  bool soundness_violation() const noexcept { return certified && !guarantee_met; }
};

struct TrialOutcome {
  TrialRecord record;
  Signal signal = Signal::zeros(1);
  OmpTrace trace;
};

/// Shared state for one experiment: the dictionary and its coherence.
class ExperimentRunner {
 public:
  explicit ExperimentRunner(ExperimentConfig config);

  const ExperimentConfig& config() const noexcept { return config_; }
  const Dictionary& dictionary() const noexcept { return dictionary_; }
  double mu() const noexcept { return mu_; }

  /// Trial `index` at sweep value k; seed = base_seed + index.
  TrialOutcome run_trial(std::size_t k, std::size_t index) const;

 private:
  ExperimentConfig config_;
  Dictionary dictionary_;
  double mu_ = 0.0;
  Signal file_signal_ = Signal::zeros(1);
};

struct SummaryRow {
  std::size_t k = 0;
  double delta_certified_rate = 0.0;
  double classical_certified_rate = 0.0;
  double exact_recovery_rate = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted by trial index
  std::vector<SummaryRow> summary;   // one row per k, config order
  std::size_t soundness_violations = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Per-trial table: trial,seed,k,certified,classically_certified,exact_recovery,residual_norm
std::string trials_csv(const std::vector<TrialRecord>& records);
/// k,delta_certified_rate,classical_certified_rate,exact_recovery_rate
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// True when the selected indices form a valid top-|selected| set of x.
bool selects_largest_entries(const Signal& x, const std::vector<std::size_t>& selected);

}  // namespace lowdensity
