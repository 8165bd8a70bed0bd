#include "kantorovich/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "kantorovich/bounds.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"
#include "kantorovich/parallel.hpp"
#include "kantorovich/phi.hpp"

namespace kantorovich {

namespace {

using nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

ordered_json pairs_json(const std::vector<std::pair<double, double>>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& [x, y] : v) a.push_back({num(x), num(y)});
  return a;
}

// Everything a pipeline needs that does not depend on w.
struct Setup {
  KernelProfile kernel;
  Nonlinearity nonlin;
  Signal signal;
  double radius = 0.0;
  double delta = 1.0;
  double Delta = 1.0;
  double l1 = 0.0;
  double m0 = 0.0;
  double unity = 0.0;
};

SamplingScheme scheme_for(const ExperimentConfig& c, double radius, double extent) {
  const long window = c.window ? *c.window : static_cast<long>(std::ceil(extent + radius)) + 8;
  return parse_scheme(c.scheme, window);
}

std::vector<double> probes_for(const ExperimentConfig& c, const SamplingScheme& s) {
  if (s.kind() == SchemeKind::uniform) return unit_probe_grid();
  return window_probe_grid(c.probe_window);
}

void note_probe_window(const ExperimentConfig& c, ExperimentReport& r) {
  if (parse_scheme(c.scheme, 1).kind() == SchemeKind::uniform) return;
  r.labels.emplace_back("moments", "maxima over probes in [-" + format_real(c.probe_window) + ", " +
                                       format_real(c.probe_window) + "], lower bounds of the sup");
}

void say(std::ostream* log, const std::string& msg) {
  if (log) *log << msg << '\n';
}

Setup make_setup(const ExperimentConfig& c, bool with_moments, std::ostream* log) {
  Setup s{parse_kernel(c.kernel, c.base_dir), parse_nonlinearity(c.nonlin), parse_signal(c.signal)};
  s.radius = c.truncation_radius ? *c.truncation_radius : s.kernel.default_radius;
  if (s.kernel.compact) s.radius = std::max(s.radius, s.kernel.support_bound);
  const SamplingScheme probe_scheme = scheme_for(c, s.radius, c.probe_window + 2.0);
  s.delta = probe_scheme.delta_lo();
  s.Delta = probe_scheme.delta_hi();
  if (!with_moments) return s;
  const std::vector<double> probes = probes_for(c, probe_scheme);
  say(log, "kernel " + s.kernel.name + ": computing moments");
  s.l1 = continuous_moment(s.kernel, 0.0).value;
  s.m0 = discrete_moment(s.kernel, probe_scheme, 0.0, probes, s.radius).value;
  s.unity = unity_defect(s.kernel, probe_scheme, probes, s.radius).max_deviation;
  return s;
}

OperatorSpec spec_for(const ExperimentConfig& c, const Setup& s, double w) {
  const Interval reach = c.domain ? hull(*c.domain, s.signal.support) : s.signal.support;
  const double extent = w * std::max(std::abs(reach.lo), std::abs(reach.hi)) +
                        (s.kernel.compact ? s.kernel.support_bound : std::min(s.radius, 64.0)) + 4.0;
  return OperatorSpec{s.kernel, s.nonlin, scheme_for(c, s.radius, extent), s.radius, c.tail_budget};
}

// theta0 = +inf when the partition of unity holds and g is the identity.
RateCertificate rate_constants(const Nonlinearity& g, double unity, const std::vector<double>& ladder) {
  RateCertificate cert;
  if (g.is_identity && unity <= 1e-12) {
    cert.theta0 = std::numeric_limits<double>::infinity();
    for (double w : ladder) cert.samples.emplace_back(w, 0.0);
    return cert;
  }
  const std::vector<double> grid = default_u_grid(g);
  std::vector<std::pair<double, double>> samples;
  for (double w : ladder) samples.emplace_back(w, t_w_product(g, unity, w, grid));
  return fit_rate_certificate(std::move(samples));
}

std::string annotate(double w, const std::exception& e) {
  return "at w = " + format_real(w) + ": " + e.what();
}

template <class Fn>
void for_each_w(const std::vector<double>& ladder, int threads, Fn&& fn) {
  parallel_for(ladder.size(), threads, [&](std::size_t i) {
    try {
      fn(i);
    } catch (const Error& e) {
      throw Error(e.kind(), annotate(ladder[i], e));
    }
  });
}

void finish_rows(ExperimentReport& r) {
  for (std::size_t i = r.rows.size(); i-- > 0;) {
    if (!r.rows[i].holds) break;
    r.smallest_holding_w = r.rows[i].w;
  }
}

}  // namespace

std::size_t ExperimentReport::violations() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BoundRow& r) { return !r.holds; }));
}

double ExperimentReport::constant(const std::string& name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  config_error("report has no constant '" + name + "'");
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "w,error,bound,holds,slack,omega_small,omega_large,tail_term,third_term\n";
  for (const BoundRow& r : rows) {
    out << format_real(r.w) << ',' << format_real(r.error) << ',' << format_real(r.bound) << ','
        << (r.holds ? "true" : "false") << ',' << format_real(r.slack) << ',' << format_real(r.omega_small) << ','
        << format_real(r.omega_large) << ',' << format_real(r.tail_term) << ',' << format_real(r.third_term)
        << '\n';
  }
  return out.str();
}

std::string ExperimentReport::to_json() const {
  ordered_json j;
  j["kind"] = kind;
  ordered_json labels_json = ordered_json::object();
  for (const auto& [k, v] : labels) labels_json[k] = v;
  j["labels"] = labels_json;
  ordered_json consts = ordered_json::object();
  for (const auto& [k, v] : constants) consts[k] = num(v);
  j["constants"] = consts;
  ordered_json rows_json = ordered_json::array();
  for (const BoundRow& r : rows) {
    rows_json.push_back({{"w", num(r.w)},
                         {"error", num(r.error)},
                         {"bound", num(r.bound)},
                         {"holds", r.holds},
                         {"slack", num(r.slack)},
                         {"omega_small", num(r.omega_small)},
                         {"omega_large", num(r.omega_large)},
                         {"tail_term", num(r.tail_term)},
                         {"third_term", num(r.third_term)},
                         {"modulus_small", num(r.modulus_small)},
                         {"modulus_large", num(r.modulus_large)},
                         {"quadrature_stable", r.quadrature_stable}});
  }
  j["rows"] = rows_json;
  if (fit) {
    j["fit"] = {{"slope", num(fit->slope)}, {"intercept", num(fit->intercept)}, {"r_squared", num(fit->r_squared)}};
  }
  if (converging) j["converging"] = *converging;
  j["violations"] = violations();
  j["smallest_holding_w"] = smallest_holding_w ? num(*smallest_holding_w) : ordered_json(nullptr);
  j["provenance"] = {{"tool", "kantorovich"},
                     {"version", kToolVersion},
                     {"config_hash", config_hash},
                     {"config", canonical_config}};
  return j.dump(2) + "\n";
}

ExperimentReport run_convergence(const ExperimentConfig& c, int threads, std::ostream* log) {
  c.validate();
  const Setup s = make_setup(c, true, log);
  const MomentValue Mp = continuous_moment(s.kernel, c.p);
  if (Mp.infinite)
    config_error("moment condition violated: M_" + format_real(c.p) + "(" + s.kernel.name + ") is infinite");
  const RateCertificate cert = rate_constants(s.nonlin, s.unity, c.w);
  const double f_norm = lp_norm(s.signal, signals::zero(), c.p, s.signal.support).value;

  ExperimentReport r;
  r.kind = "convergence";
  r.config_hash = config_hash(c);
  r.canonical_config = canonical_config(c);
  r.labels = {{"kernel", s.kernel.name},
              {"nonlinearity", s.nonlin.name},
              {"scheme", c.scheme},
              {"signal", s.signal.name},
              {"bound_hypotheses", s.nonlin.is_identity ? "satisfied"
                                                        : "psi is not the identity; bound evaluated as stated"}};
  r.constants = {{"p", c.p},         {"l1_norm", s.l1},     {"m0", s.m0},         {"M_p", Mp.value},
                 {"delta", s.delta}, {"Delta", s.Delta},    {"unity_defect", s.unity},
                 {"theta0", cert.theta0}, {"M2", cert.M2},  {"f_pnorm", f_norm},
                 {"truncation_radius", s.radius}};
  note_probe_window(c, r);
  r.rows.resize(c.w.size());
  for_each_w(c.w, threads, [&](std::size_t i) {
    const double w = c.w[i];
    const OperatorSpec spec = spec_for(c, s, w);
    const Interval domain = c.domain ? *c.domain : reconstruction_domain(spec, s.signal, w);
    const SamplingOperator op(spec, s.signal, w, domain);
    const NormResult err = reconstruction_error(op, s.signal, c.p, domain);
    const double small = omega_p(s.signal, 1.0 / w, c.p, s.signal.support, c.shift_count);
    const double large =
        s.Delta == 1.0 ? small : omega_p(s.signal, s.Delta / w, c.p, s.signal.support, c.shift_count);
    const LpBound b = lp_bound_rhs({c.p, s.delta, s.m0, s.l1, Mp, s.Delta, small, large, cert.M2, cert.theta0,
                                    f_norm, w});
    const Comparison cmp = compare(err.value, b.total);
    r.rows[i] = {w, err.value, b.total, cmp.holds, cmp.slack, b.omega_small, b.omega_large, 0.0, b.third,
                 small, large, err.stable};
  });
  for (const BoundRow& row : r.rows)
    say(log, "w = " + format_real(row.w) + ": error " + format_real(row.error) + ", bound " + format_real(row.bound));
  std::vector<std::pair<double, double>> pts;
  for (const BoundRow& row : r.rows)
    if (row.error > 0.0) pts.emplace_back(row.w, row.error);
  if (pts.size() >= 4) r.fit = fit_rate(pts);
  finish_rows(r);
  return r;
}

ExperimentReport run_modular(const ExperimentConfig& c, int threads, std::ostream* log) {
  c.validate();
  const Setup s = make_setup(c, true, log);
  const PhiFunction phi = parse_phi(c.phi);
  const PhiFunction eta = parse_phi(c.eta);
  auto [c_lambda, c_lambda_name] = parse_c_lambda(c.c_lambda);
  const HTriple triple{phi, s.nonlin.psi, eta, c_lambda, c_lambda_name};
  std::vector<double> lambdas;
  for (int i = 1; i <= 10; ++i) lambdas.push_back(i / 11.0);
  const std::vector<double> u_grid = standard_u_grid();
  if (!check_H(triple, lambdas, u_grid))
    config_error("condition (H) fails for phi = " + phi.name + ", psi = " + s.nonlin.psi.name + ", eta = " +
                 eta.name + ", C_lambda = " + c_lambda_name);

  const RateCertificate cert = rate_constants(s.nonlin, s.unity, c.w);
  const ProofConstants pc = proof_constants(c.lambda0, s.m0, cert.M2, c_lambda);
  const TailCondition tail = check_tail_condition(s.kernel, c.alpha, c.w);
  const bool compact = s.kernel.compact && tail.exact_zero;
  const double I_eta = modular(eta, s.signal, c.lambda0);
  const double I_phi = modular(phi, s.signal, c.lambda0);

  ExperimentReport r;
  r.kind = "modular";
  r.config_hash = config_hash(c);
  r.canonical_config = canonical_config(c);
  r.labels = {{"kernel", s.kernel.name},
              {"nonlinearity", s.nonlin.name},
              {"scheme", c.scheme},
              {"signal", s.signal.name},
              {"phi", phi.name},
              {"psi", s.nonlin.psi.name},
              {"eta", eta.name},
              {"c_lambda", c_lambda_name},
              {"constants", "per proof recipe: moduli at lambda, modulars of f at lambda0"}};
  note_probe_window(c, r);
  r.constants = {{"l1_norm", s.l1},        {"m0", s.m0},
                 {"delta", s.delta},       {"Delta", s.Delta},
                 {"unity_defect", s.unity}, {"alpha", c.alpha},
                 {"alpha0", compact ? 0.0 : tail.alpha0_fit},
                 {"M1", compact ? 0.0 : tail.M1_fit},
                 {"theta0", cert.theta0},  {"M2", cert.M2},
                 {"lambda0", pc.lambda0},  {"lambda", pc.lambda},
                 {"C_lambda", pc.c_lambda}, {"mu", pc.mu},
                 {"I_eta_lambda0_f", I_eta}, {"I_phi_lambda0_f", I_phi},
                 {"truncation_radius", s.radius}};
  note_probe_window(c, r);
  r.rows.resize(c.w.size());
  for_each_w(c.w, threads, [&](std::size_t i) {
    const double w = c.w[i];
    const OperatorSpec spec = spec_for(c, s, w);
    const Interval domain = c.domain ? *c.domain : reconstruction_domain(spec, s.signal, w);
    const SamplingOperator op(spec, s.signal, w, domain);
    std::vector<double> breaks = op.breakpoints();
    breaks.insert(breaks.end(), s.signal.kinks.begin(), s.signal.kinks.end());
    const double measured = modular(
        phi, [&](double x) { return op(x) - s.signal(x); }, domain, breaks, pc.mu, {4});
    const double small =
        orlicz_modulus(eta, s.signal, s.signal.support, std::pow(w, -c.alpha), pc.lambda, c.shift_count);
    const double large = orlicz_modulus(eta, s.signal, s.signal.support, s.Delta / w, pc.lambda, c.shift_count);
    ModularBoundInputs in;
    in.l1_norm = s.l1;
    in.delta_lo = s.delta;
    in.m0 = s.m0;
    in.Delta = s.Delta;
    in.omega_eta_at_w_alpha = small;
    in.omega_eta_at_Delta_w = large;
    in.M1 = compact ? 0.0 : tail.M1_fit;
    in.alpha0 = compact ? 0.0 : tail.alpha0_fit;
    in.I_eta_lambda0_f = I_eta;
    in.I_phi_lambda0_f = I_phi;
    in.theta0 = cert.theta0;
    in.w = w;
    in.alpha = c.alpha;
    in.mu = pc.mu;
    in.lambda0 = c.lambda0;
    in.compact_support = compact;
    const ModularBound b = modular_bound_rhs(in);
    const Comparison cmp = compare(measured, b.total);
    r.rows[i] = {w, measured, b.total, cmp.holds, cmp.slack, b.omega_small, b.omega_large, b.tail, b.third,
                 small, large, true};
  });
  std::vector<double> values;
  for (const BoundRow& row : r.rows) {
    values.push_back(row.error);
    say(log, "w = " + format_real(row.w) + ": modular " + format_real(row.error) + ", bound " +
                 format_real(row.bound));
  }
  r.converging = assess_modular_sequence(values).converging;
  std::vector<std::pair<double, double>> pts;
  for (const BoundRow& row : r.rows)
    if (row.error > 0.0) pts.emplace_back(row.w, row.error);
  if (pts.size() >= 4) r.fit = fit_rate(pts);
  finish_rows(r);
  return r;
}

CertifyReport run_certify(const ExperimentConfig& c, int threads, std::ostream* log) {
  (void)threads;
  const Setup s = make_setup(c, false, log);
  CertifyReport out;
  ordered_json j;
  j["kind"] = "certify";
  auto guarded = [](auto&& fn) -> ordered_json {
    try {
      return fn();
    } catch (const Error& e) {
      return {{"error", e.what()}};
    }
  };

  ordered_json kj;
  kj["name"] = s.kernel.name;
  kj["compact"] = s.kernel.compact;
  kj["support_bound"] = s.kernel.compact ? num(s.kernel.support_bound) : num(std::numeric_limits<double>::infinity());
  kj["truncation_radius"] = num(s.radius);
  say(log, "validating kernel " + s.kernel.name);
  kj["validation"] = guarded([&]() -> ordered_json {
    const KernelValidation v = validate_kernel(s.kernel);
    return {{"nonnegative", v.nonnegative}, {"vanishes_outside_support", v.vanishes_outside_support},
            {"l1_norm", num(v.l1_norm)}, {"ok", v.ok()}};
  });
  const std::vector<double> unit = unit_probe_grid();
  kj["partition_of_unity"] = guarded([&]() -> ordered_json {
    const UnityCheck u = check_partition_of_unity(s.kernel, unit, std::max(s.radius, 1.0));
    return {{"max_deviation", num(u.max_deviation)}, {"tail_bound", num(u.tail_bound)}};
  });

  const SamplingScheme scheme = scheme_for(c, s.radius, c.probe_window + 2.0);
  const std::vector<double> probes = probes_for(c, scheme);
  kj["scheme"] = {{"name", scheme.describe()}, {"delta", num(scheme.delta_lo())}, {"Delta", num(scheme.delta_hi())}};
  out.unity_defect = std::numeric_limits<double>::quiet_NaN();
  kj["unity_defect_on_scheme"] = guarded([&]() -> ordered_json {
    out.unity_defect = unity_defect(s.kernel, scheme, probes, s.radius).max_deviation;
    return num(out.unity_defect);
  });
  ordered_json mb = ordered_json::object();
  for (double beta : c.certify_beta) {
    say(log, "discrete moment beta = " + format_real(beta));
    mb[format_real(beta)] = guarded([&]() -> ordered_json {
      const DiscreteMoment m = discrete_moment(s.kernel, scheme, beta, probes, s.radius);
      if (beta == 0.0) out.m0 = m.value;
      return {{"value", num(m.value)}, {"tail_bound", num(m.tail_bound)}};
    });
  }
  kj["m_beta"] = mb;
  ordered_json mn = ordered_json::object();
  for (double nu : c.certify_nu) {
    mn[format_real(nu)] = guarded([&]() -> ordered_json {
      const MomentValue m = continuous_moment(s.kernel, nu);
      return {{"value", num(m.value)}, {"infinite", m.infinite}};
    });
  }
  kj["M_nu"] = mn;
  kj["tail_condition"] = guarded([&]() -> ordered_json {
    const TailCondition t = check_tail_condition(s.kernel, c.alpha, c.certify_w);
    return {{"alpha", num(c.alpha)},
            {"values", pairs_json(t.values)},
            {"exact_zero", t.exact_zero},
            {"alpha0_fit", num(t.alpha0_fit)},
            {"M1_fit", num(t.M1_fit)}};
  });
  j["kernel"] = kj;

  ordered_json nj;
  nj["name"] = s.nonlin.name;
  nj["psi"] = s.nonlin.psi.name;
  say(log, "checking the Lipschitz majorant of " + s.nonlin.name);
  nj["lipschitz"] = guarded([&]() -> ordered_json {
    const LipschitzReport l = check_lipschitz(s.nonlin, c.certify_w, 10000, c.seed);
    out.lipschitz_passed = l.passed();
    ordered_json per = ordered_json::array();
    for (std::size_t i = 0; i < l.w_tested.size(); ++i) per.push_back({num(l.w_tested[i]), l.violations_per_w[i]});
    return {{"samples", l.samples},
            {"violations", l.violations},
            {"violations_straddle_jump", l.violations_straddle_jump},
            {"worst_ratio", num(l.worst_ratio)},
            {"violations_per_w", per},
            {"smallest_passing_w", l.smallest_passing_w ? num(*l.smallest_passing_w) : ordered_json(nullptr)}};
  });
  nj["rate_certificate"] = guarded([&]() -> ordered_json {
    const double defect = std::isnan(out.unity_defect) ? 0.0 : out.unity_defect;
    const RateCertificate cert = rate_constants(s.nonlin, defect, c.certify_w);
    out.theta0 = cert.theta0;
    out.M2 = cert.M2;
    return {{"unity_defect_used", num(defect)},
            {"samples", pairs_json(cert.samples)},
            {"theta0", num(cert.theta0)},
            {"M2", num(cert.M2)}};
  });
  nj["uniform_deviation"] = guarded([&]() -> ordered_json {
    const std::vector<double> grid = default_u_grid(s.nonlin);
    std::vector<std::pair<double, double>> dev;
    for (double w : c.certify_w) dev.emplace_back(w, max_deviation(s.nonlin, w, grid).value);
    return pairs_json(dev);
  });
  j["nonlinearity"] = nj;
  j["provenance"] = {{"tool", "kantorovich"},
                     {"version", kToolVersion},
                     {"config_hash", config_hash(c)},
                     {"config", canonical_config(c)}};
  out.json = j.dump(2) + "\n";
  return out;
}

ReconstructReport run_reconstruct(const ExperimentConfig& c, int threads, std::ostream* log) {
  const Setup s = make_setup(c, false, log);
  const double w = c.reconstruct_w ? *c.reconstruct_w : c.w.front();
  const OperatorSpec spec = spec_for(c, s, w);
  const Interval domain = c.domain ? *c.domain : reconstruction_domain(spec, s.signal, w);
  ReconstructReport out;
  try {
    out.reconstruction = evaluate(spec, s.signal, w, uniform_grid(domain, c.grid), threads);
  } catch (const Error& e) {
    throw Error(e.kind(), annotate(w, e));
  }
  std::ostringstream csv;
  csv << "x,f,reconstruction\n";
  for (std::size_t i = 0; i < out.reconstruction.grid.size(); ++i) {
    const double x = out.reconstruction.grid[i];
    out.signal_values.push_back(s.signal(x));
    csv << format_real(x) << ',' << format_real(out.signal_values.back()) << ','
        << format_real(out.reconstruction.values[i]) << '\n';
  }
  out.csv = csv.str();
  ordered_json j;
  j["kind"] = "reconstruct";
  j["w"] = num(w);
  j["points"] = out.reconstruction.grid.size();
  j["domain"] = {num(domain.lo), num(domain.hi)};
  j["tail_bound_used"] = num(out.reconstruction.tail_bound_used);
  j["labels"] = {{"kernel", s.kernel.name}, {"nonlinearity", s.nonlin.name}, {"scheme", c.scheme},
                 {"signal", s.signal.name}};
  j["provenance"] = {{"tool", "kantorovich"},
                     {"version", kToolVersion},
                     {"config_hash", config_hash(c)},
                     {"config", canonical_config(c)}};
  out.json = j.dump(2) + "\n";
  say(log, "reconstructed " + s.signal.name + " at w = " + format_real(w));
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) config_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      numeric_error("short write to '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace kantorovich
