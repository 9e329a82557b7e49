#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "radialnet/activation.hpp"
#include "radialnet/bernstein.hpp"
#include "radialnet/expfeat.hpp"
#include "radialnet/fourier.hpp"
#include "radialnet/monomial.hpp"
#include "radialnet/pipeline.hpp"
#include "radialnet/specialfn.hpp"
#include "radialnet/version.hpp"

namespace radialnet::cli {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

VerifyBudget budget_of(const JobConfig& cfg) {
  VerifyBudget b;
  b.samples = static_cast<std::size_t>(cfg.get_int("samples", static_cast<long>(b.samples)));
  b.restarts = static_cast<int>(cfg.get_int("restarts", b.restarts));
  if (b.samples < 1000) throw UsageError("samples must be at least 1000");
  if (b.restarts < 0) throw UsageError("restarts must be non-negative");
  return b;
}

int dim_of(const JobConfig& cfg) {
  const long d = cfg.get_int("d");
  if (d < 1 || d > 100000) throw UsageError("d out of range: " + std::to_string(d));
  return static_cast<int>(d);
}

double epsilon_of(const JobConfig& cfg) {
  const double e = cfg.get_double("epsilon");
  if (!(e > 0.0) || !(e < 1e6)) throw UsageError("epsilon must be positive");
  return e;
}

Activation activation_of(const JobConfig& cfg, Activation fallback) {
  if (!cfg.has("activation")) return fallback;
  try {
    return parse_activation(cfg.get("activation"));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

BuildMode mode_of(const JobConfig& cfg) {
  try {
    return parse_mode(cfg.get("mode", "tuned"));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void stamp(DepthTwoNetwork& net, const ErrorReport& rep, const VerifyBudget& b) {
  net.meta["verify_seed"] = rep.seed;
  net.meta["samples"] = b.samples;
  net.meta["restarts"] = b.restarts;
}

nlohmann::json overflow_json(const WidthOverflow& e) {
  return {{"error", "width_overflow"},
          {"message", e.what()},
          {"required_width", e.required().to_json()},
          {"width_budget", e.budget()}};
}

struct Built {
  DepthTwoNetwork net;
  ErrorReport report;
  nlohmann::json plan;
  bool passed = false;
};

Built build_fd(const JobConfig& cfg, int d, double eps, SeededRng& rng, const VerifyBudget& budget) {
  const Activation act = activation_of(cfg, Activation::Exp);
  const RadialProfile target = fd_profile(d);
  Built b;
  if (cfg.has("width")) {
    // fixed width: a single draw, no retries
    const long n = cfg.get_int("width");
    if (n < 1) throw UsageError("width must be positive");
    const std::uint64_t draw_seed = rng.next_u64();
    SeededRng draw(draw_seed);
    b.net = sample_exp_network(d, static_cast<std::size_t>(n), draw);
    b.net.meta = {{"epsilon", eps}, {"target", "fd"}, {"d", d}, {"seed", draw_seed}};
    if (act == Activation::ReLU) b.net = substitute_activation(b.net, eps / 2.0);
    b.report = estimate_sup_error(b.net, target, budget, derive_seed(draw_seed, 0x7665726966));
    b.plan = {{"width", n}, {"epsilon", eps}};
  } else if (act == Activation::Exp) {
    try {
      auto r = build_exp_network(d, eps, rng, static_cast<int>(cfg.get_int("max_retries", 16)), budget);
      b.net = std::move(r.network);
      b.report = r.certificate.report;
      b.plan = r.certificate.to_json();
    } catch (const RetriesExhausted& e) {
      b.net = e.best().network;
      b.report = e.best().certificate.report;
      b.plan = e.best().certificate.to_json();
      b.plan["error"] = e.what();
    }
  } else {
    // exp network at eps/2, each unit replaced at eps/2 (output weights sum to 1)
    const std::size_t n = exp_network_width(eps / 2.0);
    const auto K = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::e / (eps / 2.0)));
    const double width = static_cast<double>(n) * static_cast<double>(K + 1);
    const double cap = cfg.get_double("width_budget", 2e7);
    if (width > cap) {
      WidthEstimate w;
      w.ln_width = std::log(width);
      w.log10_width = std::log10(width);
      w.exact = BigInt(static_cast<unsigned long>(width));
      throw WidthOverflow("relu F_d network needs " + fmt(width) + " units", w, cap);
    }
    auto r = build_exp_network(d, eps / 2.0, rng, static_cast<int>(cfg.get_int("max_retries", 16)), budget);
    b.net = substitute_activation(r.network, eps / 2.0);
    b.net.meta["epsilon"] = eps;
    b.report = estimate_sup_error(b.net, target, budget, r.certificate.report.seed);
    b.plan = r.certificate.to_json();
    b.plan["substituted_width"] = b.net.width();
  }
  b.passed = b.report.sup_estimate <= eps;
  return b;
}

Built build_monomial(const JobConfig& cfg, int k, int d, double eps, SeededRng& rng,
                     const VerifyBudget& budget) {
  MonomialBuildOptions o;
  o.mode = mode_of(cfg);
  o.budget = budget;
  o.width_budget = cfg.get_double("width_budget", o.width_budget);
  o.dirs_start = static_cast<std::size_t>(cfg.get_int("dirs_start", static_cast<long>(o.dirs_start)));
  o.dirs_max = static_cast<std::size_t>(cfg.get_int("dirs_max", static_cast<long>(o.dirs_max)));
  const Activation act = activation_of(cfg, Activation::ReLU);
  Built b;
  try {
    auto r = build_monomial_network(d, k, eps, act, rng, o);
    b.net = std::move(r.network);
    b.report = r.report;
    b.plan = r.plan.to_json();
    b.plan["directions"] = r.directions;
    b.plan["units_per_direction"] = r.units_per_direction;
    b.plan["theoretical_width"] = r.theoretical_width.to_json();
  } catch (const VerificationFailure& e) {
    b.net = e.best();
    b.report = e.report();
    b.plan = {{"error", e.what()}};
  }
  b.passed = b.report.sup_estimate <= eps;
  return b;
}

Built build_profile(const JobConfig& cfg, const RadialProfile& prof, int d, double eps, SeededRng& rng,
                    const VerifyBudget& budget) {
  PipelineOptions o;
  o.mode = mode_of(cfg);
  o.budget = budget;
  o.width_budget = cfg.get_double("width_budget", o.width_budget);
  if (cfg.has("degree_override")) o.degree_override = static_cast<int>(cfg.get_int("degree_override"));
  o.dirs_start = static_cast<std::size_t>(cfg.get_int("dirs_start", static_cast<long>(o.dirs_start)));
  o.dirs_max = static_cast<std::size_t>(cfg.get_int("dirs_max", static_cast<long>(o.dirs_max)));
  o.max_degree = static_cast<int>(cfg.get_int("max_degree", o.max_degree));
  const Activation act = activation_of(cfg, Activation::ReLU);
  Built b;
  try {
    auto r = build_radial_network(prof, d, eps, act, rng, o);
    b.net = std::move(r.network);
    b.report = r.report;
    b.plan = r.plan.to_json();
  } catch (const VerificationFailure& e) {
    b.net = e.best();
    b.report = e.report();
    b.plan = {{"error", e.what()}};
  }
  b.passed = b.report.sup_estimate <= eps;
  return b;
}

nlohmann::json fourier_json(const FourierBuild& f) {
  nlohmann::json j = f.fourier.to_json();
  j["fit_error"] = f.fit_error;
  j["mollify_gap"] = f.mollify_gap;
  j["sampler_efficiency"] = f.sampler_efficiency;
  j["width"] = f.network.width();
  j["passed"] = f.passed;
  return j;
}

Built build_fourier(const JobConfig& cfg, int d, double eps, SeededRng& rng, const VerifyBudget& budget) {
  const RadialProfile prof = make_profile(cfg.get("profile", "linear"));
  FourierOptions o;
  o.budget = budget;
  FourierBuild f;
  if (cfg.has("width")) {
    const long n = cfg.get_int("width");
    if (n < 0) throw UsageError("width must be non-negative");
    f = build_fourier_network(prof, d, eps, static_cast<std::size_t>(n), rng, o);
  } else {
    FourierGrowth g;
    g.n_start = static_cast<std::size_t>(cfg.get_int("n_start", static_cast<long>(g.n_start)));
    g.n_max = static_cast<std::size_t>(cfg.get_int("n_max", static_cast<long>(g.n_max)));
    f = grow_fourier_network(prof, d, eps, rng, g, o);
  }
  Built b;
  b.net = f.network;
  b.report = f.report;
  b.plan = fourier_json(f);
  b.passed = f.passed;
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.empty()) throw UsageError("empty grid spec");
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("grid spec must be a:b:n, got '" + spec + "'");
    const double a = parse_double("grid", parts[0]), b = parse_double("grid", parts[1]);
    const long n = parse_int("grid", parts[2]);
    if (n < 1) throw UsageError("grid point count must be positive");
    for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1));
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double("grid", item));
  }
  for (double z : out)
    if (!std::isfinite(z)) throw UsageError("grid value not finite");
  return out;
}

RadialProfile target_profile(const std::string& spec, int d) {
  if (spec == "fd") return fd_profile(d);
  if (spec.rfind("monomial:", 0) == 0) {
    const long k = parse_int("target", spec.substr(9));
    if (k < 1) throw UsageError("monomial degree must be at least 1");
    return monomial_profile(static_cast<int>(k));
  }
  const std::string name = spec.rfind("profile:", 0) == 0 ? spec.substr(8) : spec;
  try {
    return make_profile(name);
  } catch (const std::exception& e) {
    throw UsageError(std::string("unknown target '") + spec + "': " + e.what());
  }
}

nlohmann::json with_provenance(nlohmann::json body, const JobConfig& cfg, std::uint64_t seed,
                               double wall_time) {
  body["tool"] = {{"name", "radialnet"}, {"version", kVersion}};
  body["config"] = cfg.to_json();
  body["seed"] = seed;
  body["wall_time"] = wall_time;
  return body;
}

BuildOutcome run_build(const JobConfig& cfg, std::optional<std::uint64_t> seed) {
  const auto t0 = std::chrono::steady_clock::now();
  BuildOutcome out;
  out.seed = seed ? *seed : resolve_seed(cfg);
  const std::string target = cfg.get("target", "fd");
  const int d = dim_of(cfg);
  const double eps = epsilon_of(cfg);
  const VerifyBudget budget = budget_of(cfg);
  SeededRng rng(out.seed);
  try {
    Built b;
    if (target == "fd") {
      b = build_fd(cfg, d, eps, rng, budget);
    } else if (target.rfind("monomial:", 0) == 0) {
      const long k = parse_int("target", target.substr(9));
      if (k < 1) throw UsageError("monomial degree must be at least 1");
      b = build_monomial(cfg, static_cast<int>(k), d, eps, rng, budget);
    } else if (target == "fourier") {
      b = build_fourier(cfg, d, eps, rng, budget);
    } else {
      b = build_profile(cfg, target_profile(target, d), d, eps, rng, budget);
    }
    stamp(b.net, b.report, budget);
    out.network = network_to_json(b.net);
    out.report = b.report.to_json();
    out.plan = std::move(b.plan);
    out.sup_error = b.report.sup_estimate;
    out.width = b.net.width();
    out.exit_code = b.passed ? kOk : kVerifyFailed;
    out.status = b.passed ? "passed" : "verification_failed";
    if (!b.passed)
      out.error = {{"error", "verification_failed"},
                   {"sup_estimate", b.report.sup_estimate},
                   {"epsilon", eps}};
  } catch (const WidthOverflow& e) {
    out.exit_code = kWidthOverflow;
    out.status = "width_overflow";
    out.error = overflow_json(e);
    out.plan = out.error;
    out.sup_error = std::nan("");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out.wall_time = seconds_since(t0);
  return out;
}

int cmd_fd(int d, const std::string& grid, double tol, const std::string& out_path, std::ostream& out) {
  if (d < 2) throw UsageError("d must be at least 2");
  const auto zs = parse_grid(grid);
  std::ostringstream csv;
  csv << "z,series,closed,diff\n";
  for (double z : zs) {
    const double s = fd_eval_series(d, z, tol);
    const double c = fd_eval_closed(d, z, tol);
    csv << fmt(z) << ',' << fmt(s) << ',' << fmt(c) << ',' << fmt(std::abs(s - c)) << '\n';
  }
  if (out_path.empty())
    out << csv.str();
  else
    write_atomic(out_path, csv.str());
  return kOk;
}

int cmd_build(const JobConfig& cfg, std::ostream& out) {
  const BuildOutcome r = run_build(cfg);
  const std::string stem = cfg.get("out", "radialnet");
  if (!r.network.is_null())
    write_atomic(stem + ".network.json", with_provenance(r.network, cfg, r.seed, r.wall_time).dump(2) + "\n");
  if (!r.report.is_null())
    write_atomic(stem + ".report.json", with_provenance(r.report, cfg, r.seed, r.wall_time).dump(2) + "\n");
  write_atomic(stem + ".plan.json", with_provenance(r.plan, cfg, r.seed, r.wall_time).dump(2) + "\n");
  nlohmann::json summary = {{"status", r.status}, {"width", r.width}, {"exit_code", r.exit_code}};
  if (r.exit_code == kOk || r.exit_code == kVerifyFailed) summary["sup_estimate"] = r.sup_error;
  if (!r.error.is_null()) {
    write_atomic(stem + ".error.json", with_provenance(r.error, cfg, r.seed, r.wall_time).dump(2) + "\n");
    summary["error"] = r.error;
  }
  out << summary.dump() << '\n';
  return r.exit_code;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  DepthTwoNetwork net;
  try {
    net = network_from_json(nlohmann::json::parse(read_file(cfg.get("network"))));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed network JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto& meta = net.meta;
  std::string spec;
  if (cfg.has("target")) {
    spec = cfg.get("target");
  } else if (meta.contains("target")) {
    spec = meta.at("target").get<std::string>();
    if (spec == "fourier") spec = meta.value("profile", std::string("linear"));
  } else {
    throw UsageError("no target given and none recorded in the network");
  }
  const int d = cfg.has("d") ? dim_of(cfg) : net.dim;
  if (d != net.dim)
    throw UsageError("dimension mismatch: network has d=" + std::to_string(net.dim) + ", target d=" +
                     std::to_string(d));
  const RadialProfile target = target_profile(spec, d);

  JobConfig eff = cfg;
  if (meta.contains("samples")) eff.set_default("samples", std::to_string(meta.at("samples").get<std::size_t>()));
  if (meta.contains("restarts")) eff.set_default("restarts", std::to_string(meta.at("restarts").get<int>()));
  const VerifyBudget budget = budget_of(eff);
  std::uint64_t seed = 0;
  if (cfg.has("seed") || std::getenv("RADIALNET_SEED"))
    seed = resolve_seed(cfg);
  else
    seed = meta.value("verify_seed", std::uint64_t{1});

  const ErrorReport rep = estimate_sup_error(net, target, budget, seed);
  const double eps = cfg.has("epsilon") ? epsilon_of(cfg) : meta.value("epsilon", 0.0);
  const bool ok = rep.sup_estimate <= eps;
  nlohmann::json body = rep.to_json();
  body["epsilon"] = eps;
  body["passed"] = ok;
  body["target"] = spec;
  body = with_provenance(body, cfg, seed, seconds_since(t0));
  if (cfg.has("out")) write_atomic(cfg.get("out"), body.dump(2) + "\n");
  out << body.dump(2) << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_coeffs(const JobConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  nlohmann::json body;
  try {
    if (cfg.has("profile")) {
      const RadialProfile prof = target_profile(cfg.get("profile"), 1);
      EvenPolyOptions o;
      if (cfg.has("degree")) o.degree_override = static_cast<int>(cfg.get_int("degree"));
      body = even_poly_approx(prof, epsilon_of(cfg), o).to_json();
    } else {
      const int d = dim_of(cfg);
      const long k = cfg.get_int("k");
      if (k < 1) throw UsageError("k must be at least 1");
      const std::string solver = cfg.get("solver", "explicit");
      if (solver != "explicit" && solver != "elimination") throw UsageError("solver: explicit | elimination");
      const auto plan = solve_monomial_plan(
          d, static_cast<int>(k), epsilon_of(cfg),
          solver == "explicit" ? PlanSolver::ExplicitInverse : PlanSolver::Elimination);
      check_plan(plan);
      body = plan.to_json();
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  body = with_provenance(body, cfg, resolve_seed(cfg), seconds_since(t0));
  if (cfg.has("out"))
    write_atomic(cfg.get("out"), body.dump(2) + "\n");
  else
    out << body.dump(2) << '\n';
  return kOk;
}

int cmd_fourier(const JobConfig& cfg_in, std::ostream& out) {
  JobConfig cfg = cfg_in;
  cfg.set("target", "fourier");
  const BuildOutcome r = run_build(cfg);
  const std::string stem = cfg.get("out", "radialnet");
  write_atomic(stem + ".network.json", with_provenance(r.network, cfg, r.seed, r.wall_time).dump(2) + "\n");
  write_atomic(stem + ".report.json", with_provenance(r.report, cfg, r.seed, r.wall_time).dump(2) + "\n");
  write_atomic(stem + ".fourier.json", with_provenance(r.plan, cfg, r.seed, r.wall_time).dump(2) + "\n");
  nlohmann::json summary = r.plan;
  summary["sup_estimate"] = r.sup_error;
  summary["status"] = r.status;
  out << summary.dump() << '\n';
  return r.exit_code;
}

}  // namespace radialnet::cli
