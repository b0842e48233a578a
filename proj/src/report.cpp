#include "swk/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace swk {

namespace {

Json vector_json(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.begin(), v.end())); }

}  // namespace

Json to_json(const PhaseState<double>& s) {
  return {{"chart", to_string(s.chart)}, {"q", vector_json(s.q)}, {"p", vector_json(s.p)}};
}

Json to_json(const SWParams& p) { return vector_json(p.beta); }

Json to_json(const AlgebraReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) pairs.push_back({{"a", p.a}, {"b", p.b}, {"residual", p.residual}});
  return {{"n", r.n},
          {"kappa", r.kappa},
          {"chart", to_string(r.chart)},
          {"trials", r.trials},
          {"sign", r.sign},
          {"max_residual", r.max_residual},
          {"opposite_sign_residual", r.opposite_sign_residual},
          {"tolerance", r.tolerance},
          {"passed", r.passed},
          {"pairs", pairs}};
}

Json to_json(const InvolutionReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"group", c.group},
                      {"a", c.a},
                      {"b", c.b},
                      {"residual", c.residual},
                      {"asserted", c.asserted}});
  return {{"n", r.n},
          {"kappa", r.kappa},
          {"chart", to_string(r.chart)},
          {"trials", r.trials},
          {"tolerance", r.tolerance},
          {"max_asserted_residual", r.max_asserted_residual},
          {"passed", r.passed},
          {"checks", checks}};
}

Json to_json(const IndependenceCertificate& c) {
  Json samples = Json::array();
  for (std::size_t k = 0; k < c.samples.size(); ++k) {
    samples.push_back({{"state", to_json(c.states[k])},
                       {"singular_values", vector_json(c.samples[k].singular_values)},
                       {"rank", c.samples[k].rank},
                       {"gap_ratio", c.samples[k].gap_ratio}});
  }
  return {{"n", c.n},
          {"kappa", c.kappa},
          {"chart", to_string(c.chart)},
          {"functions", c.functions},
          {"relative_threshold", c.relative_threshold},
          {"expected_rank", c.expected_rank},
          {"max_rank", c.max_rank},
          {"full_rank_fraction", c.full_rank_fraction},
          {"min_gap_ratio", c.min_gap_ratio},
          {"valid", c.valid},
          {"warnings", c.warnings},
          {"samples", samples}};
}

Json to_json(const LimitReport& r) {
  return {{"n", r.n},
          {"trials", r.trials},
          {"kappas", r.kappas},
          {"deviations", r.deviations},
          {"ratios", r.ratios},
          {"deviation_at_zero", r.deviation_at_zero},
          {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

Json to_json(const VerifySuite& s) {
  Json checks = Json::array();
  for (const auto& c : s.checks)
    checks.push_back({{"name", c.name},
                      {"chart", c.chart},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  Json algebra = Json::array();
  for (const auto& a : s.algebra) algebra.push_back(to_json(a));
  Json involution = Json::array();
  for (const auto& i : s.involution) involution.push_back(to_json(i));
  Json out = {{"passed", s.passed}, {"checks", checks}, {"algebra", algebra}, {"involution", involution}};
  if (s.limit) out["euclidean_limit"] = to_json(*s.limit);
  return out;
}

Json to_json(const IntegratorConfig& c) {
  return {{"method", to_string(c.method)},
          {"rel_tol", c.rel_tol},
          {"abs_tol", c.abs_tol},
          {"max_step", c.max_step},
          {"t_end", c.t_end},
          {"fixed_step", c.fixed_step},
          {"output_interval", c.output_interval},
          {"singularity_threshold", c.singularity_threshold},
          {"switch_health", c.switch_health},
          {"min_health", c.min_health},
          {"allow_chart_switch", c.allow_chart_switch}};
}

Json to_json(const DriftReport& r) {
  Json inv = Json::array();
  for (const auto& d : r.invariants)
    inv.push_back({{"name", d.name},
                   {"initial", d.initial},
                   {"max_abs_drift", d.max_abs_drift},
                   {"max_rel_drift", d.max_rel_drift},
                   {"time_of_max", d.time_of_max},
                   {"index_of_max", d.index_of_max}});
  return {{"max_rel_drift", r.max_rel_drift},
          {"max_bracket_residual", r.max_bracket_residual},
          {"bracket_samples", r.bracket_samples},
          {"max_sum_rule_residual", r.max_sum_rule_residual},
          {"logged_states", r.logged_states},
          {"invariants", inv}};
}

Json trajectory_summary(const Trajectory& t) {
  Json out = {{"status", to_string(t.status)},
              {"message", t.message},
              {"accepted_steps", t.accepted_steps},
              {"rejected_steps", t.rejected_steps},
              {"chart_switches", t.chart_switches},
              {"final_time", t.times.empty() ? 0.0 : t.times.back()}};
  if (t.singular_index >= 0) out["singular_index"] = t.singular_index;
  if (!t.states.empty()) out["last_good_state"] = to_json(t.last_good());
  return out;
}

Json trajectory_json(const Trajectory& t) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    Json inv = Json::object();
    for (std::size_t j = 0; j < t.invariant_names.size(); ++j)
      inv[t.invariant_names[j]] = t.invariants[k](static_cast<Eigen::Index>(j));
    rows.push_back({{"t", t.times[k]},
                    {"chart", to_string(t.states[k].chart)},
                    {"q", vector_json(t.states[k].q)},
                    {"p", vector_json(t.states[k].p)},
                    {"invariants", inv}});
  }
  return {{"summary", trajectory_summary(t)}, {"rows", rows}};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "t,chart";
  for (int i = 1; i <= t.n; ++i) out << ",q" << i;
  for (int i = 1; i <= t.n; ++i) out << ",p" << i;
  for (const auto& name : t.invariant_names) out << ',' << name;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    out << t.times[k] << ',' << to_string(t.states[k].chart);
    for (double v : t.states[k].q) out << ',' << v;
    for (double v : t.states[k].p) out << ',' << v;
    for (double v : t.invariants[k]) out << ',' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace swk
