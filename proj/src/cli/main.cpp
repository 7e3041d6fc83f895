#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stratq/config.hpp"
#include "stratq/ctmc.hpp"
#include "stratq/equilibrium.hpp"
#include "stratq/parallel.hpp"
#include "stratq/poa.hpp"
#include "stratq/routing_mm2.hpp"
#include "stratq/sim.hpp"
#include "stratq/special.hpp"
#include "stratq/staffing.hpp"
#include "stratq/types.hpp"

namespace {

using nlohmann::json;
using Row = std::vector<std::string>;

constexpr const char* kVersion = "0.1.0";
const std::string kNA = "NA";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

std::string num(int v) { return std::to_string(v); }
std::string num(long long v) { return std::to_string(v); }

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw std::invalid_argument(what + ": '" + s + "' is not a number");
  return v;
}

// One point ("x") or an inclusive range ("lo:hi:steps", steps >= 2).
struct Sweep {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;

  bool is_sweep() const { return steps > 1; }
  double at(int k) const {
    if (steps == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
};

Sweep parse_sweep(const std::string& s, const std::string& flag) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);

  Sweep sw;
  if (parts.size() == 1) {
    sw.lo = sw.hi = parse_number(parts[0], flag);
    return sw;
  }
  if (parts.size() == 3) {
    sw.lo = parse_number(parts[0], flag);
    sw.hi = parse_number(parts[1], flag);
    const double st = parse_number(parts[2], flag);
    sw.steps = static_cast<int>(std::llround(st));
    if (sw.steps != st || sw.steps < 2)
      throw std::invalid_argument(flag + ": steps must be an integer >= 2");
    return sw;
  }
  throw std::invalid_argument(flag + ": expected <value> or <lo>:<hi>:<steps>");
}

std::vector<double> parse_rate_list(const std::string& s) {
  std::vector<double> rates;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) rates.push_back(parse_number(item, "--rates"));
  if (rates.empty()) throw std::invalid_argument("--rates: empty list");
  return rates;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

json versions_json() {
  json v;
  v["artifact"] = kVersion;
  v["cli11"] = CLI11_VERSION;
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  v["compiler"] = __VERSION__;
  return v;
}

json cost_json(const stratq::CostFunction& cf) {
  json c;
  c["spec"] = stratq::cost_spec_string(cf);
  switch (cf.family) {
    case stratq::CostFunction::Family::polynomial:
      c["family"] = "polynomial";
      c["c_E"] = cf.c_E;
      c["p"] = cf.p;
      break;
    case stratq::CostFunction::Family::normalized_power:
      c["family"] = "normalized_power";
      c["q"] = cf.q;
      break;
    default:
      c["family"] = "custom";
  }
  return c;
}

json sweep_json(const std::string& variable, const Sweep& sw) {
  json s;
  s["variable"] = variable;
  s["lo"] = sw.lo;
  s["hi"] = sw.hi;
  s["steps"] = sw.steps;
  return s;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  return f;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// CSV goes to --out (sidecar JSON next to it) or stdout (no sidecar);
// --format json folds data and RunSpec into a single document instead.
void emit(const Table& t, json runspec, const std::string& out, const std::string& format) {
  runspec["output"]["path"] = out.empty() ? "-" : out;
  runspec["output"]["format"] = format;

  if (format == "json") {
    json doc;
    doc["runspec"] = runspec;
    doc["columns"] = t.columns;
    doc["rows"] = t.rows;
    if (out.empty()) {
      std::cout << doc.dump(2) << '\n';
    } else {
      const std::string path = ends_with(out, ".json") ? out : out + ".json";
      auto f = open_out(path);
      f << doc.dump(2) << '\n';
    }
    return;
  }

  if (out.empty()) {
    write_csv(std::cout, t);
    return;
  }
  const std::string csv_path = ends_with(out, ".csv") ? out : out + ".csv";
  const std::string sidecar_path = csv_path.substr(0, csv_path.size() - 4) + ".json";
  {
    auto f = open_out(csv_path);
    write_csv(f, t);
  }
  json side;
  side["runspec"] = runspec;
  side["columns"] = t.columns;
  auto f = open_out(sidecar_path);
  f << side.dump(2) << '\n';
}

// Shared flags.  Explicit --cost/--cS/--w beat the config file, which beats
// the defaults.
struct Common {
  std::string cost_spec = "poly:1:2";
  std::string config_path;
  std::string out;
  std::string format = "csv";
  double c_S = 1.0;
  double w = 1.0;

  CLI::Option* cost_opt = nullptr;
  CLI::Option* cs_opt = nullptr;
  CLI::Option* w_opt = nullptr;

  void add_to(CLI::App* sub) {
    cost_opt = sub->add_option("--cost", cost_spec,
                               "cost spec: poly:<c_E>:<p> or poa:<q> (default poly:1:2)");
    cs_opt = sub->add_option("--cS", c_S, "staffing cost per server (default 1)");
    w_opt = sub->add_option("--w", w, "waiting cost per customer (default 1)");
    sub->add_option("--config", config_path, "JSON config file with cost/econ blocks");
    sub->add_option("--out", out, "output path; CSV gets a .json sidecar (default stdout)");
    sub->add_option("--format", format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  stratq::CostFunction cost() const {
    stratq::CostFunction cf = stratq::parse_cost_spec(cost_spec);
    double cs = c_S;
    double ww = w;
    if (!config_path.empty()) {
      const auto fc = stratq::load_config_file(config_path);
      if (fc.has_cost && cost_opt->count() == 0) cf = fc.cost;
      if (fc.has_econ) {
        if (cs_opt->count() == 0) cs = fc.c_S;
        if (w_opt->count() == 0) ww = fc.w;
      }
    }
    resolved_c_S = cs;
    resolved_w = ww;
    return cf;
  }

  stratq::EconomicParams econ() const { return {resolved_c_S, resolved_w}; }

  mutable double resolved_c_S = 1.0;
  mutable double resolved_w = 1.0;
};

json base_runspec(const std::string& sub, const std::vector<std::string>& args,
                  const stratq::CostFunction& cf, const Common& common) {
  json rs;
  rs["subcommand"] = sub;
  rs["args"] = args;
  rs["cost"] = cost_json(cf);
  rs["econ"] = {{"c_S", common.resolved_c_S}, {"w", common.resolved_w}};
  rs["versions"] = versions_json();
  return rs;
}

int run_equilibrium(const Common& common, const std::string& lambda_s, const std::string& n_s,
                    const std::vector<std::string>& args) {
  const auto cf = common.cost();
  const Sweep lam = parse_sweep(lambda_s, "--lambda");
  const Sweep ns = parse_sweep(n_s, "--N");
  if (lam.is_sweep() && ns.is_sweep())
    throw std::invalid_argument("equilibrium: only one of --lambda and --N may sweep");

  const int total = std::max(lam.steps, ns.steps);
  auto n_at = [&ns](int k) {
    const double v = ns.at(k);
    const int n = static_cast<int>(std::llround(v));
    if (std::abs(v - n) > 1e-9 || n < 2)
      throw std::invalid_argument("--N: values must be integers >= 2");
    return n;
  };

  std::vector<std::vector<Row>> buckets(total);
  stratq::parallel_for(total, [&](std::size_t i) {
    const int k = static_cast<int>(i);
    const double lambda = lam.at(lam.is_sweep() ? k : 0);
    const int N = n_at(ns.is_sweep() ? k : 0);
    const stratq::SystemConfig cfg(lambda, N);
    const auto report = stratq::solve_equilibria(cfg, cf);

    auto& rows = buckets[i];
    const std::string l = num(lambda), n = num(N);
    if (report.equilibria.empty()) {
      rows.push_back({l, n, "0", kNA, kNA, kNA, kNA, kNA, kNA});
      return;
    }
    const std::string count = num(static_cast<int>(report.equilibria.size()));
    for (std::size_t j = 0; j < report.equilibria.size(); ++j) {
      const auto& eq = report.equilibria[j];
      rows.push_back({l, n, count, num(static_cast<int>(j + 1)), num(eq.mu_star),
                      num(eq.utility), num(eq.idle_fraction),
                      num(stratq::mean_wait(cfg, eq.mu_star)), num(eq.slack)});
    }
  });

  Table t;
  t.columns = {"lambda", "N",           "n_equilibria", "eq_index", "mu_star",
               "utility", "idle_fraction", "mean_wait",    "slack"};
  for (auto& b : buckets)
    for (auto& r : b) t.rows.push_back(std::move(r));

  json rs = base_runspec("equilibrium", args, cf, common);
  rs["sweep"] = lam.is_sweep() ? sweep_json("lambda", lam) : sweep_json("N", ns);
  rs["params"] = {{"lambda", lambda_s}, {"N", n_s}};
  emit(t, rs, common.out, common.format);
  return 0;
}

int run_staffing(const Common& common, const std::string& lambda_s,
                 const std::vector<std::string>& args) {
  const auto cf = common.cost();
  const auto econ = common.econ();
  const Sweep lam = parse_sweep(lambda_s, "--lambda");
  const double as = stratq::a_star(cf);

  std::vector<Row> rows(lam.steps);
  stratq::parallel_for(lam.steps, [&](std::size_t i) {
    const double lambda = lam.at(static_cast<int>(i));
    const int n_ao = stratq::staff_ao(lambda, cf);

    Row row{num(lambda), num(as), num(n_ao)};
    stratq::StaffingResult ao;
    if (n_ao >= 2) ao = stratq::cost_of(n_ao, lambda, cf, econ);
    if (ao.feasible) {
      row.insert(row.end(), {num(ao.mu_star), num(ao.mean_wait), num(ao.cost),
                             num(ao.cost / lambda)});
    } else {
      row.insert(row.end(), {kNA, kNA, kNA, kNA});
    }

    const auto opt = stratq::n_opt_search(lambda, cf, econ);
    if (opt.feasible) {
      row.insert(row.end(), {num(opt.N), num(opt.mu_star), num(opt.mean_wait), num(opt.cost),
                             num(opt.cost / lambda),
                             num(stratq::bmr_staffing(lambda, opt.mu_star, econ))});
    } else {
      row.insert(row.end(), {kNA, kNA, kNA, kNA, kNA, kNA});
    }
    rows[i] = std::move(row);
  });

  Table t;
  t.columns = {"lambda",   "a_star",      "N_ao",       "mu_star_ao", "wait_ao",
               "cost_ao",  "norm_cost_ao", "N_opt",      "mu_star_opt", "wait_opt",
               "cost_opt", "norm_cost_opt", "N_bmr"};
  t.rows = std::move(rows);

  json rs = base_runspec("staffing", args, cf, common);
  rs["sweep"] = sweep_json("lambda", lam);
  rs["params"] = {{"lambda", lambda_s}, {"a_star", as}};
  emit(t, rs, common.out, common.format);
  return 0;
}

int run_routing(const Common& common, double lambda, const std::string& r_s,
                const std::vector<std::string>& args) {
  const auto cf = common.cost();
  const Sweep rs_sweep = parse_sweep(r_s, "--r");
  const auto bounds = stratq::equilibrium_bounds(lambda, cf);

  std::vector<Row> rows(rs_sweep.steps);
  stratq::parallel_for(rs_sweep.steps, [&](std::size_t i) {
    const double r = rs_sweep.at(static_cast<int>(i));
    const auto mu = stratq::equilibrium_for_r(r, lambda, cf);
    if (mu) {
      rows[i] = {num(r), num(*mu), num(stratq::mean_response(*mu, lambda))};
    } else {
      rows[i] = {num(r), kNA, kNA};
    }
  });

  Table t;
  t.columns = {"r", "mu_star", "mean_response"};
  t.rows = std::move(rows);

  json rs = base_runspec("routing", args, cf, common);
  rs["sweep"] = sweep_json("r", rs_sweep);
  rs["params"] = {{"lambda", lambda},
                  {"mu_dagger", bounds.mu_dagger},
                  {"mu_bar", bounds.mu_bar},
                  {"r_lower", bounds.r_lower}};
  emit(t, rs, common.out, common.format);
  return 0;
}

int run_collapse(const Common& common, double lambda, const std::string& rates_s,
                 double horizon, double warmup, int reps, std::uint64_t seed,
                 const std::vector<std::string>& args) {
  const auto cf = common.cost();  // unused numerically; keeps config errors loud
  const auto rates = parse_rate_list(rates_s);
  const std::vector<stratq::IdleOrderPolicy> policies = {
      stratq::random_policy(), stratq::lisf_policy(), stratq::sisf_policy(),
      stratq::weighted_random_policy()};

  const double exact_dev = stratq::collapse_check(rates, lambda, policies);
  const auto pf = stratq::product_form(rates, lambda);

  stratq::SimConfig base;
  base.lambda = lambda;
  base.rates = rates;
  base.horizon = horizon;
  base.warmup_frac = warmup;
  base.replications = reps;
  base.seed = seed;
  const auto sims = stratq::compare_policies(base, policies);

  Table t;
  t.columns = {"policy",   "server",   "product_idle", "generator_idle",
               "abs_dev",  "sim_idle", "sim_ci_half"};
  for (std::size_t k = 0; k < policies.size(); ++k) {
    const auto gen = stratq::generator_solve(rates, lambda, policies[k]);
    for (std::size_t s = 0; s < rates.size(); ++s) {
      const double dev = std::abs(gen.idle_fraction[s] - pf.idle_fraction[s]);
      t.rows.push_back({policies[k].name, num(static_cast<int>(s + 1)),
                        num(pf.idle_fraction[s]), num(gen.idle_fraction[s]), num(dev),
                        num(sims[k].idle_fraction[s]), num(sims[k].idle_ci[s])});
    }
  }

  json rs = base_runspec("collapse", args, cf, common);
  rs["params"] = {{"lambda", lambda},     {"rates", rates},   {"horizon", horizon},
                  {"warmup", warmup},     {"replications", reps}, {"seed", seed},
                  {"exact_deviation", exact_dev}};
  emit(t, rs, common.out, common.format);
  return 0;
}

int run_poa(const Common& common, bool table, const std::string& mu_s,
            const std::vector<std::string>& args) {
  const auto cf = common.cost();
  const auto econ = common.econ();

  Table t;
  json params;
  if (table) {
    t.columns = {"q", "beta_star", "mu_star", "f_poa"};
    const std::vector<double> qs = {1.001, 1.010, 1.100};
    std::vector<Row> rows(qs.size());
    stratq::parallel_for(qs.size(), [&](std::size_t i) {
      const auto m = stratq::min_poa_for_q(qs[i], econ);
      rows[i] = {num(qs[i]), num(m.beta_star), num(m.mu_star), num(m.f_poa)};
    });
    t.rows = std::move(rows);
    params["table"] = true;
  } else {
    const Sweep mu = parse_sweep(mu_s, "--mu");
    if (!mu.is_sweep()) throw std::invalid_argument("--mu: poa curves need <lo>:<hi>:<steps>");
    const auto curve = stratq::poa_curve(cf, econ, mu.lo, mu.hi, mu.steps);
    t.columns = {"mu", "beta", "gamma", "f_poa"};
    for (std::size_t i = 0; i < curve.mu.size(); ++i) {
      t.rows.push_back({num(curve.mu[i]), num(curve.beta[i]), num(curve.gamma_val[i]),
                        num(curve.f_poa_val[i])});
    }
    params["mu"] = sweep_json("mu", mu);
    params["minimum"] = {{"beta_star", curve.minimum.beta_star},
                         {"mu_star", curve.minimum.mu_star},
                         {"f_poa", curve.minimum.f_poa}};
  }
  const auto bmr = stratq::y_star(econ);
  params["y_star"] = bmr.y_star;
  params["gamma_at_y_star"] = bmr.objective;

  json rs = base_runspec("poa", args, cf, common);
  rs["params"] = params;
  emit(t, rs, common.out, common.format);
  return 0;
}

int run_simulate(const Common& common, double lambda, const std::string& rates_s,
                 const std::string& policy_name, std::optional<double> r, double horizon,
                 double warmup, int reps, std::uint64_t seed, bool raw,
                 const std::vector<std::string>& args) {
  const auto cf = common.cost();  // unused numerically; keeps config errors loud
  stratq::SimConfig cfg;
  cfg.lambda = lambda;
  cfg.rates = parse_rate_list(rates_s);
  cfg.horizon = horizon;
  cfg.warmup_frac = warmup;
  cfg.replications = reps;
  cfg.seed = seed;
  if (r) {
    cfg.use_rate_based = true;
    cfg.r = *r;
  } else if (policy_name == "random") {
    cfg.policy = stratq::random_policy();
  } else if (policy_name == "lisf") {
    cfg.policy = stratq::lisf_policy();
  } else if (policy_name == "sisf") {
    cfg.policy = stratq::sisf_policy();
  } else if (policy_name == "weighted") {
    cfg.policy = stratq::weighted_random_policy();
  } else {
    throw std::invalid_argument("--policy: expected random, lisf, sisf, or weighted");
  }

  const auto est = stratq::simulate(cfg);

  Table t;
  if (raw) {
    t.columns = {"rep", "metric", "server", "value"};
    for (int i = 0; i < reps; ++i) {
      const std::string rep = num(i + 1);
      for (std::size_t s = 0; s < cfg.rates.size(); ++s) {
        t.rows.push_back({rep, "idle", num(static_cast<int>(s + 1)), num(est.rep_idle[i][s])});
      }
      t.rows.push_back({rep, "wait", kNA, num(est.rep_wait[i])});
    }
  } else {
    t.columns = {"metric", "server", "value", "ci_half"};
    for (std::size_t s = 0; s < cfg.rates.size(); ++s) {
      t.rows.push_back({"idle", num(static_cast<int>(s + 1)), num(est.idle_fraction[s]),
                        num(est.idle_ci[s])});
    }
    t.rows.push_back({"wait", kNA, num(est.mean_wait), num(est.wait_ci)});
    t.rows.push_back({"queue_len", kNA, num(est.mean_queue_len), num(est.queue_ci)});
    t.rows.push_back({"served", kNA, num(est.total_served), kNA});
  }

  json rs = base_runspec("simulate", args, cf, common);
  rs["params"] = {{"lambda", lambda},
                  {"rates", cfg.rates},
                  {"routing", r ? json{{"kind", "rate_based"}, {"r", *r}}
                               : json{{"kind", "policy"}, {"name", policy_name}}},
                  {"horizon", horizon},
                  {"warmup", warmup},
                  {"replications", reps},
                  {"seed", seed},
                  {"raw", raw}};
  emit(t, rs, common.out, common.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"strategic-server M/M/N toolkit: equilibria, staffing, routing, anarchy"};
  app.require_subcommand(1);

  Common c_eq, c_staff, c_rout, c_coll, c_poa, c_sim;

  auto* eq = app.add_subcommand("equilibrium", "symmetric equilibria over a lambda or N sweep");
  std::string eq_lambda, eq_n;
  eq->add_option("--lambda", eq_lambda, "arrival rate: value or lo:hi:steps")->required();
  eq->add_option("--N", eq_n, "number of servers: value or lo:hi:steps")->required();
  c_eq.add_to(eq);

  auto* staff = app.add_subcommand("staffing", "load-independent vs cost-optimal staffing");
  std::string staff_lambda;
  staff->add_option("--lambda", staff_lambda, "arrival rate: value or lo:hi:steps")->required();
  c_staff.add_to(staff);

  auto* rout = app.add_subcommand("routing", "two-server rate-based routing equilibria over r");
  double rout_lambda = 0.25;
  std::string rout_r;
  rout->add_option("--lambda", rout_lambda, "arrival rate (default 0.25)");
  rout->add_option("--r", rout_r, "routing exponent: value or lo:hi:steps")->required();
  c_rout.add_to(rout);

  auto* coll = app.add_subcommand("collapse",
                                  "idle-order policy invariance: closed form vs generator vs DES");
  double coll_lambda = 1.0, coll_horizon = 1e5, coll_warmup = 0.1;
  int coll_reps = 10;
  std::uint64_t coll_seed = 1;
  std::string coll_rates;
  coll->add_option("--lambda", coll_lambda, "arrival rate (default 1)");
  coll->add_option("--rates", coll_rates, "comma-separated service rates, e.g. 1,1.5,2")->required();
  coll->add_option("--horizon", coll_horizon, "simulated time per replication (default 1e5)");
  coll->add_option("--warmup", coll_warmup, "warm-up fraction (default 0.1)");
  coll->add_option("--reps", coll_reps, "replications (default 10)");
  coll->add_option("--seed", coll_seed, "base RNG seed (default 1)");
  c_coll.add_to(coll);

  auto* poa = app.add_subcommand("poa", "anarchy curve or the q-table of minima");
  bool poa_table = false;
  std::string poa_mu = "0.05:50:400";
  poa->add_flag("--table", poa_table, "emit minima for q in {1.001, 1.010, 1.100}");
  poa->add_option("--mu", poa_mu, "rate grid lo:hi:steps for the curve (default 0.05:50:400)");
  c_poa.add_to(poa);

  auto* sim = app.add_subcommand("simulate", "raw discrete-event runs");
  double sim_lambda = 1.0, sim_horizon = 1e5, sim_warmup = 0.1;
  int sim_reps = 10;
  std::uint64_t sim_seed = 1;
  std::string sim_rates, sim_policy = "random";
  std::optional<double> sim_r;
  sim->add_option("--lambda", sim_lambda, "arrival rate (default 1)");
  sim->add_option("--rates", sim_rates, "comma-separated service rates")->required();
  auto* sim_policy_opt =
      sim->add_option("--policy", sim_policy, "random, lisf, sisf, or weighted (default random)");
  sim->add_option("--r", sim_r, "rate-based routing exponent (replaces --policy)")
      ->excludes(sim_policy_opt);
  sim->add_option("--horizon", sim_horizon, "simulated time per replication (default 1e5)");
  sim->add_option("--warmup", sim_warmup, "warm-up fraction (default 0.1)");
  sim->add_option("--reps", sim_reps, "replications (default 10)");
  sim->add_option("--seed", sim_seed, "base RNG seed (default 1)");
  bool sim_raw = false;
  sim->add_flag("--raw", sim_raw, "emit one row per replication instead of aggregates");
  c_sim.add_to(sim);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eq->parsed()) return run_equilibrium(c_eq, eq_lambda, eq_n, args);
    if (staff->parsed()) return run_staffing(c_staff, staff_lambda, args);
    if (rout->parsed()) return run_routing(c_rout, rout_lambda, rout_r, args);
    if (coll->parsed())
      return run_collapse(c_coll, coll_lambda, coll_rates, coll_horizon, coll_warmup, coll_reps,
                          coll_seed, args);
    if (poa->parsed()) return run_poa(c_poa, poa_table, poa_mu, args);
    if (sim->parsed())
      return run_simulate(c_sim, sim_lambda, sim_rates, sim_policy, sim_r, sim_horizon,
                          sim_warmup, sim_reps, sim_seed, sim_raw, args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
