#include "lowdensity/serialize.hpp"

#include <cmath>

namespace lowdensity {
namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json index_pair(const std::pair<std::size_t, std::size_t>& p) {
  return Json::array({p.first, p.second});
}

}  // namespace

Json to_json(const Complex& c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(to_json(v[i]));
  }
  return out;
}

Json to_json(const DensityReport& r) {
  return Json{{"delta", r.delta},
              {"gamma", r.gamma},
              {"sigma", r.sigma},
              {"sparsity", r.sparsity},
              {"dim", r.dim}};
}

Json to_json(const CoherenceReport& r) {
  return Json{{"mu", r.mu},
              {"argmax_pair", index_pair(r.argmax_pair)},
              {"single_column", r.single_column}};
}

Json to_json(const MutualCoherenceReport& r) {
  return Json{{"mu_m", r.mu_m}, {"argmax_pair", index_pair(r.argmax_pair)}};
}

Json to_json(const KernelCertificate& c) {
  return Json{{"delta", c.delta},
              {"threshold", number(c.threshold)},
              {"certified_nonzero", c.certified_nonzero},
              {"classical_certified", c.classical_certified},
              {"mu", c.mu},
              {"sparsity", c.sparsity},
              {"trivial_coherence", c.trivial_coherence}};
}

Json to_json(const UncertaintyReport& r) {
  return Json{{"lhs", r.lhs},
              {"rhs", r.rhs},
              {"residual_gap", r.residual_gap},
              {"constraint_residual", r.constraint_residual},
              {"delta_x", r.delta_x},
              {"delta_z", r.delta_z},
              {"mu_a", r.mu_a},
              {"mu_b", r.mu_b},
              {"mu_m", r.mu_m},
              {"applies", r.applies()},
              {"holds", r.holds()}};
}

Json to_json(const GuaranteeReport& r) {
  Json steps = Json::array();
  for (const GuaranteeStep& s : r.per_iteration) {
    steps.push_back(Json{{"t", s.t},
                         {"tail_delta", s.tail_delta},
                         {"threshold_t", number(s.threshold_t)},
                         {"ok", s.ok}});
  }
  return Json{{"t_max", r.t_max},
              {"mu", r.mu},
              {"C", number(r.C)},
              {"per_iteration", std::move(steps)},
              {"per_iteration_heuristic", r.per_iteration_heuristic},
              {"iteration_bound_ok", r.iteration_bound_ok},
              {"certified", r.certified},
              {"classical_threshold", number(r.classical_threshold)},
              {"classical_certified", r.classical_certified},
              {"trivial_coherence", r.trivial_coherence}};
}

Json to_json(const OmpTrace& t) {
  return Json{{"support", t.support.indices()},
              {"coefficients", to_json(t.coefficients)},
              {"residual_norms", t.residual_norms},
              {"selected", t.selected},
              {"correlations", t.correlations}};
}

Json to_json(const KernelProbeResult& r) {
  return Json{{"min_delta_found", r.min_delta_found},
              {"witness", to_json(r.witness.entries())},
              {"threshold", r.threshold},
              {"trials", r.trials},
              {"kernel_dim", r.kernel_dim},
              {"contrapositive_holds", r.min_delta_found >= r.threshold - kBoundTolerance}};
}

}  // namespace lowdensity
