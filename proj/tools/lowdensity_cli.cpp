// lowdensity: command-line front end.
//
// Exit codes: 0 ok / certified, 1 not certified, 2 error or bad usage,
// 3 soundness violation (a certificate contradicted by a solver or probe).

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lowdensity/certificates.hpp"
#include "lowdensity/coherence.hpp"
#include "lowdensity/density.hpp"
#include "lowdensity/experiment.hpp"
#include "lowdensity/matrix_io.hpp"
#include "lowdensity/omp.hpp"
#include "lowdensity/oracle.hpp"
#include "lowdensity/serialize.hpp"

namespace ld = lowdensity;

namespace {

enum Exit : int { kOk = 0, kNotCertified = 1, kError = 2, kViolation = 3 };

struct Globals {
  std::string out;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file || !(file << text)) {
    throw ld::Error(ld::ErrorCode::Io, "cannot write '" + g.out + "'");
  }
}

void emit(const Globals& g, const ld::Json& json) { emit(g, json.dump(2) + "\n"); }

ld::Dictionary load_dictionary(const std::string& spec) {
  return ld::parse_dictionary_spec(spec).build();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-based sparse recovery certificates and OMP tools"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed_value = 0;
  app.add_option("--out", g.out, "Write the result to PATH instead of stdout");
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed (probe-kernel, experiment)");
  app.add_flag("--json", g.json, "JSON output where a command also has a text form");

  const char* dict_help =
      "Dictionary: matrix file, or identity:M, hadamard:M, identity-hadamard:M, random:M:N[:seed]";

  // density
  std::string density_file;
  auto* density = app.add_subcommand("density", "Density measures of a signal file");
  density->add_option("signal", density_file)->required();

  // coherence
  std::string coh_a;
  std::string coh_b;
  auto* coh = app.add_subcommand("coherence", "Coherence of a dictionary, or mutual coherence of two");
  coh->add_option("dict", coh_a, dict_help)->required();
  coh->add_option("dict_b", coh_b, "Second dictionary for mutual coherence");

  // certify
  auto* certify = app.add_subcommand("certify", "Static certificates");
  certify->require_subcommand(1);

  std::string ck_dict;
  std::string ck_x;
  auto* ck = certify->add_subcommand("kernel", "delta(x) < 1 + 1/mu  =>  A x != 0");
  ck->add_option("--dict", ck_dict, dict_help)->required();
  ck->add_option("--x,--signal", ck_x, "Signal file")->required();

  std::string cu_a;
  std::string cu_b;
  std::string cu_x;
  std::string cu_z;
  auto* cu = certify->add_subcommand("uncertainty", "Uncertainty relation for A x = B z");
  cu->add_option("--dict-a", cu_a, dict_help)->required();
  cu->add_option("--dict-b", cu_b, dict_help)->required();
  cu->add_option("--x", cu_x, "Coefficients in A")->required();
  cu->add_option("--z", cu_z, "Coefficients in B")->required();

  std::string co_dict;
  std::string co_x;
  std::size_t co_t_max = 0;
  auto* co = certify->add_subcommand("omp", "OMP recovery certificate");
  co->add_option("--dict", co_dict, dict_help)->required();
  co->add_option("--x,--signal", co_x, "Signal file")->required();
  auto* co_t_opt = co->add_option("--t-max", co_t_max, "Iterations (default: ||x||_0)");

  // run-omp
  std::string ro_dict;
  std::string ro_y;
  std::size_t ro_t_max = 0;
  double ro_tol = 0.0;
  auto* ro = app.add_subcommand("run-omp", "Run orthogonal matching pursuit");
  ro->add_option("--dict", ro_dict, dict_help)->required();
  ro->add_option("--y", ro_y, "Measurement file")->required();
  ro->add_option("--t-max", ro_t_max, "Maximum iterations")->required();
  auto* ro_tol_opt = ro->add_option("--residual-tol", ro_tol, "Stop once ||r||_2 <= TOL");

  // probe-kernel
  std::string pk_dict;
  std::size_t pk_trials = 1000;
  auto* pk = app.add_subcommand("probe-kernel", "Search ker(A) for low-density vectors");
  pk->add_option("--dict", pk_dict, dict_help)->required();
  pk->add_option("--trials", pk_trials, "Random starts")->capture_default_str();

  // experiment
  std::string ex_config;
  auto* ex = app.add_subcommand("experiment", "Monte-Carlo certificate vs. recovery experiment");
  ex->add_option("config", ex_config, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }
  if (*seed_opt) {
    g.seed = seed_value;
  }

  try {
    if (*density) {
      emit(g, ld::to_json(ld::density_report(ld::io::read_signal(density_file))));
      return kOk;
    }

    if (*coh) {
      const ld::Dictionary a = load_dictionary(coh_a);
      if (coh_b.empty()) {
        emit(g, ld::to_json(ld::coherence(a)));
        return kOk;
      }
      const ld::Dictionary b = load_dictionary(coh_b);
      emit(g, ld::Json{{"a", ld::to_json(ld::coherence(a))},
                       {"b", ld::to_json(ld::coherence(b))},
                       {"mutual", ld::to_json(ld::mutual_coherence(a, b))}});
      return kOk;
    }

    if (*ck) {
      const ld::Dictionary a = load_dictionary(ck_dict);
      const ld::Signal x = ld::io::read_signal(ck_x);
      if (x.dim() != a.cols()) {
        throw ld::Error(ld::ErrorCode::DimensionMismatch, "signal length does not match dictionary");
      }
      const ld::KernelCertificate cert = ld::kernel_certificate(a, x);
      emit(g, ld::to_json(cert));
      return cert.certified_nonzero ? kOk : kNotCertified;
    }

    if (*cu) {
      const ld::UncertaintyReport r = ld::uncertainty_check(
          load_dictionary(cu_a), load_dictionary(cu_b), ld::io::read_signal(cu_x),
          ld::io::read_signal(cu_z));
      emit(g, ld::to_json(r));
      if (!r.applies()) {
        return kNotCertified;
      }
      return r.holds() ? kOk : kViolation;
    }

    if (*co) {
      const ld::Dictionary a = load_dictionary(co_dict);
      const ld::Signal x = ld::io::read_signal(co_x);
      if (x.dim() != a.cols()) {
        throw ld::Error(ld::ErrorCode::DimensionMismatch, "signal length does not match dictionary");
      }
      const std::size_t t_max = *co_t_opt ? co_t_max : ld::sparsity(x);
      const ld::GuaranteeReport r = ld::omp_guarantee(a, x, t_max);
      emit(g, ld::to_json(r));
      return r.certified ? kOk : kNotCertified;
    }

    if (*ro) {
      const ld::Dictionary a = load_dictionary(ro_dict);
      const ld::Signal y = ld::io::read_signal(ro_y);
      std::optional<double> tol;
      if (*ro_tol_opt) {
        tol = ro_tol;
      }
      emit(g, ld::to_json(ld::omp_run(a, y, ro_t_max, tol)));
      return kOk;
    }

    if (*pk) {
      ld::Rng rng(g.seed.value_or(0));
      const ld::KernelProbeResult r = ld::probe_kernel_density(load_dictionary(pk_dict), pk_trials, rng);
      emit(g, ld::to_json(r));
      return r.min_delta_found >= r.threshold - ld::kBoundTolerance ? kOk : kViolation;
    }

    if (*ex) {
      ld::ExperimentConfig config = ld::read_experiment_config(ex_config);
      if (g.seed) {
        config.base_seed = *g.seed;
      }
      if (!g.out.empty()) {
        config.output_path = g.out;
      }
      const ld::ExperimentResult result = ld::run_experiment(config);
      std::filesystem::create_directories(config.output_path);
      for (const auto& [name, text] :
           {std::pair{"trials.csv", ld::trials_csv(result.records)},
            std::pair{"summary.csv", ld::summary_csv(result.summary)}}) {
        std::ofstream file(config.output_path / name, std::ios::binary);
        if (!file || !(file << text)) {
          throw ld::Error(ld::ErrorCode::Io, "cannot write " + (config.output_path / name).string());
        }
      }
      if (g.json) {
        ld::Json rows = ld::Json::array();
        for (const ld::SummaryRow& row : result.summary) {
          rows.push_back(ld::Json{{"k", row.k},
                                  {"delta_certified_rate", row.delta_certified_rate},
                                  {"classical_certified_rate", row.classical_certified_rate},
                                  {"exact_recovery_rate", row.exact_recovery_rate}});
        }
        std::cout << ld::Json{{"summary", rows},
                              {"soundness_violations", result.soundness_violations}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << ld::summary_csv(result.summary);
      }
      if (result.soundness_violations > 0) {
        std::cerr << "error: " << result.soundness_violations
                  << " certified trial(s) failed recovery\n";
        return kViolation;
      }
      return kOk;
    }
  } catch (const ld::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
