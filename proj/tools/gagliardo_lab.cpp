// gagliardo-lab: command-line front end.
//
// Exit status: 0 success; 1 the run completed but an expected property did
// not hold (--expect-reversal without a flagged epsilon, a Hardy sample with
// lhs > rhs); 2 invalid configuration, input or hypothesis.

#include "gagliardo/constants.hpp"
#include "gagliardo/experiments.hpp"
#include "gagliardo/io.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/parallel.hpp"
#include "gagliardo/rearrange.hpp"
#include "gagliardo/report.hpp"
#include "gagliardo/seminorm.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace gagliardo;
using nlohmann::json;

namespace {

struct Flags {
  std::string config_path;
  std::string out = ".";
  std::optional<double> grid_h;
  std::optional<std::string> eps;
  std::optional<std::string> placement;
  std::optional<std::string> point;
  bool expect_reversal = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> n;
  std::optional<double> sigma;
  std::optional<double> p;
  std::optional<std::string> domain;
  std::optional<std::string> input;
  std::optional<int> iterations;
  std::optional<double> step;
  std::optional<int> samples;
  std::optional<std::string> omega_convention;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  for (char c : text + ",") {
    if (c == ',' || c == ';' || c == ' ') {
      if (!item.empty()) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw UsageError("cannot parse number '" + item + "'");
        out.push_back(v);
        item.clear();
      }
    } else {
      item += c;
    }
  }
  return out;
}

json default_config(const std::string& command) {
  json c{{"command", command}};
  if (command == "counterexample") {
    c.update({{"n", 1},
              {"sigma", 0.6},
              {"p", 2.0},
              {"domain", {{"shape", "interval"}, {"a", -1.0}, {"b", 1.0}}},
              {"eps", {0.2, 0.1, 0.05, 0.025}},
              {"placement", "boundary"},
              {"expect_reversal", false}});
  } else if (command == "hardy") {
    c.update({{"n", 1},
              {"sigma", 0.6},
              {"p", 2.0},
              {"domain", {{"shape", "interval"}, {"a", -1.0}, {"b", 1.0}}},
              {"samples", 50},
              {"seed", 1}});
  } else if (command == "theorem2") {
    c.update({{"n", 1}, {"sigma", 0.7}, {"p", 2.0}, {"seed", kCorpusSeed}, {"grid_h", 1.0 / 128.0}});
  } else if (command == "descend") {
    c.update({{"n", 2},
              {"sigma", 0.75},
              {"p", 2.0},
              {"domain", {{"shape", "ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
              {"grid_h", 1.0 / 16.0},
              {"iterations", 50},
              {"step", 0.1},
              {"omega_convention", "sphere_Sn"}});
  } else if (command == "constants") {
    c.update({{"n", 1}, {"sigma", 0.5}, {"omega_convention", "sphere_Sn"}});
  } else if (command == "seminorm") {
    c.update({{"sigma", 0.5}, {"p", 2.0}});
  }
  return c;
}

// Defaults, then the --config file, then explicit flags.
json effective_config(const std::string& command, const Flags& f) {
  json c = default_config(command);
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw UsageError("cannot open config '" + f.config_path + "'");
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("config '" + f.config_path + "': " + e.what());
    }
    if (!file.is_object()) throw UsageError("config must be a JSON object");
    file.erase("threads");
    file.erase("out");
    file.erase("command");
    c.update(file);
  }
  if (f.n) c["n"] = *f.n;
  if (f.sigma) c["sigma"] = *f.sigma;
  if (f.p) c["p"] = *f.p;
  if (f.grid_h) c["grid_h"] = *f.grid_h;
  if (f.eps) c["eps"] = parse_list(*f.eps);
  if (f.placement) c["placement"] = *f.placement;
  if (f.point) c["point"] = parse_list(*f.point);
  if (f.expect_reversal) c["expect_reversal"] = true;
  if (f.seed) c["seed"] = *f.seed;
  if (f.input) c["input"] = *f.input;
  if (f.iterations) c["iterations"] = *f.iterations;
  if (f.step) c["step"] = *f.step;
  if (f.samples) c["samples"] = *f.samples;
  if (f.omega_convention) c["omega_convention"] = *f.omega_convention;
  if (f.domain) {
    try {
      c["domain"] = json::parse(*f.domain);
    } catch (const json::parse_error&) {
      std::ifstream in(*f.domain);
      if (!in) throw UsageError("--domain is neither JSON nor a readable file: " + *f.domain);
      c["domain"] = json::parse(in);
    }
  }
  return c;
}

template <typename T>
T require(const json& c, const char* key) {
  if (!c.contains(key)) throw UsageError(std::string("missing configuration value '") + key + "'");
  try {
    return c.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("configuration value '") + key + "': " + e.what());
  }
}

FracParams params_of(const json& c, int n_default) {
  FracParams fp;
  fp.n = c.contains("n") ? require<int>(c, "n") : n_default;
  fp.sigma = require<double>(c, "sigma");
  fp.p = require<double>(c, "p");
  fp.validate();
  return fp;
}

std::filesystem::path out_path(const Flags& f, const std::string& name) {
  std::filesystem::create_directories(f.out);
  return std::filesystem::path(f.out) / name;
}

void write_table(const Flags& f, const std::string& name, const Table& t, const json& config) {
  std::ofstream out(out_path(f, name));
  if (!out) throw std::runtime_error("cannot write " + out_path(f, name).string());
  write_csv(out, t, config);
}

void write_json(const Flags& f, const std::string& name, json body, const json& config,
                double seconds) {
  body["meta"] = meta(config);
  body["timing"] = {{"seconds", seconds}};
  std::ofstream out(out_path(f, name));
  if (!out) throw std::runtime_error("cannot write " + out_path(f, name).string());
  out << body.dump(2) << "\n";
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string point_string(const Point& x) {
  std::string s;
  for (Eigen::Index a = 0; a < x.size(); ++a) s += (a ? ";" : "") + format_double(x[a]);
  return s;
}

int cmd_rearrange(const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const json c = effective_config("rearrange", f);
  const GridFunction u = load_grid_function(require<std::string>(c, "input"));
  u.validate();
  const RadialProfile prof = rearrange(u);
  {
    std::ofstream out(out_path(f, "profile.csv"));
    out << "# gagliardo-lab " << kVersion << " config_hash=" << config_hash(c)
        << " config=" << c.dump() << "\n";
    write_profile_csv(out, prof);
  }
  // Equimeasurability at every distinct level, and L^q norms.
  double worst = 0.0;
  for (double t : prof.levels()) {
    const double below = 0.5 * t;
    worst = std::max({worst, std::abs(distribution(u, t) - distribution(prof, t)),
                      std::abs(distribution(u, below) - distribution(prof, below))});
  }
  Table t;
  t.columns = {"check", "original", "rearranged", "difference"};
  t.rows.push_back({"distribution_max_abs_diff", "0", "0", format_double(worst)});
  const double p = c.contains("p") ? c.at("p").get<double>() : 2.0;
  for (double q : {1.0, 2.0, p, std::numeric_limits<double>::infinity()}) {
    const double a = lp_norm(u, q);
    const double b = lp_norm(prof, q);
    t.rows.push_back({"lp_norm_q=" + (std::isinf(q) ? std::string("inf") : format_double(q)),
                      format_double(a), format_double(b), format_double(a - b)});
  }
  write_table(f, "rearrange_summary.csv", t, c);
  write_json(f, "rearrange.json",
             {{"shells", prof.shells()}, {"support_radius", prof.support_radius()},
              {"distribution_max_abs_diff", worst}},
             c, since(t0));
  std::cout << "shells=" << prof.shells() << " support_radius=" << format_double(prof.support_radius())
            << " distribution_max_abs_diff=" << format_double(worst) << "\n";
  return 0;
}

int cmd_seminorm(const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const json c = effective_config("seminorm", f);
  const GridFunction u = load_grid_function(require<std::string>(c, "input"));
  const FracParams fp = params_of(c, u.dimension());
  const Domain d = domain_from_json(require<json>(c, "domain"));
  const EnergyResult r = energy_domain(u, d, fp);
  const double cross = cross_term(u, d, fp);
  Table t;
  t.columns = {"quantity", "value", "error_estimate", "h"};
  t.rows.push_back({"energy_domain", format_double(r.value), format_double(r.error_estimate), format_double(r.h)});
  t.rows.push_back({"cross_term", format_double(cross), "", format_double(r.h)});
  t.rows.push_back({"energy_fullspace", format_double(r.value + 2.0 * cross), "", format_double(r.h)});
  write_table(f, "seminorm.csv", t, c);
  write_json(f, "seminorm.json", {{"energy_domain", to_json(r)}, {"cross_term", cross}}, c, since(t0));
  std::cout << "energy_domain=" << format_double(r.value) << " error_estimate="
            << format_double(r.error_estimate) << "\n";
  return 0;
}

int cmd_counterexample(const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const json c = effective_config("counterexample", f);
  const Domain d = domain_from_json(require<json>(c, "domain"));
  const FracParams fp = params_of(c, d.dimension());
  const auto eps = require<std::vector<double>>(c, "eps");
  if (eps.empty()) throw UsageError("at least one epsilon is required");
  const Placement placement = placement_from_string(require<std::string>(c, "placement"));
  std::optional<Point> point;
  if (c.contains("point")) {
    const auto v = require<std::vector<double>>(c, "point");
    point = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  const double h = c.contains("grid_h") ? require<double>(c, "grid_h") : 0.0;
  const SweepReport rep = counterexample_sweep(d, fp, eps, placement, point, h);
  write_table(f, "counterexample.csv", sweep_table(rep), c);
  write_json(f, "counterexample.json", to_json(rep), c, since(t0));
  for (const auto& r : rep.records)
    std::cout << "eps=" << format_double(r.epsilon) << " lhs=" << format_double(r.lhs.value)
              << " rhs=" << format_double(r.rhs.value) << " gap=" << format_double(r.gap)
              << " gap_error=" << format_double(r.gap_error) << (r.flagged ? " REVERSAL" : "") << "\n";
  if (rep.slopes_fitted)
    std::cout << "slope cross_domain=" << format_double(rep.slope_domain)
              << " cross_star=" << format_double(rep.slope_star) << "\n";
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  const bool expect = c.value("expect_reversal", false);
  if (expect && !rep.any_flagged()) {
    std::cerr << "no reversal flagged\n";
    return 1;
  }
  return 0;
}

std::vector<Point> hardy_samples(const Domain& d, int count, std::uint64_t seed) {
  const int n = d.dimension();
  const auto box = bounding_box(d);
  std::vector<Point> pts;
  if (n == 1) {
    // Equispaced interior points of the bounding box that lie in d.
    std::vector<Point> all;
    const int grid = 40 * count;
    for (int k = 1; k < grid; ++k) {
      const Point x = Point::Constant(1, box.first[0] + (box.second[0] - box.first[0]) * k / grid);
      if (contains(d, x) && distance_to_boundary(d, x) > 1e-3) all.push_back(x);
    }
    if (static_cast<int>(all.size()) < count) throw UsageError("hardy: domain too thin for the sample count");
    for (int k = 0; k < count; ++k)
      pts.push_back(all[static_cast<std::size_t>(k) * all.size() / static_cast<std::size_t>(count)]);
    return pts;
  }
  std::mt19937_64 rng(seed);
  int attempts = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > 1000000) throw UsageError("hardy: could not place sample points");
    Point x(n);
    for (int a = 0; a < n; ++a) x[a] = box.first[a] + (box.second[a] - box.first[a]) * uniform01(rng);
    if (contains(d, x) && distance_to_boundary(d, x) > 1e-3) pts.push_back(x);
  }
  return pts;
}

int cmd_hardy(const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const json c = effective_config("hardy", f);
  const Domain d = domain_from_json(require<json>(c, "domain"));
  const FracParams fp = params_of(c, d.dimension());
  const auto pts = hardy_samples(d, require<int>(c, "samples"), require<std::uint64_t>(c, "seed"));
  Table t;
  t.columns = {"x", "lhs", "rhs", "m_alpha", "ok"};
  bool all_ok = true;
  for (const Point& x : pts) {
    const Comparison cmp = hardy_pointwise_bound(d, x, fp);
    const bool ok = cmp.lhs <= cmp.rhs * (1.0 + 1e-6);
    all_ok = all_ok && ok;
    t.rows.push_back({point_string(x), format_double(cmp.lhs), format_double(cmp.rhs),
                      format_double(m_alpha(d, x, fp.s())), ok ? "1" : "0"});
  }
  write_table(f, "hardy.csv", t, c);
  write_json(f, "hardy.json", {{"samples", pts.size()}, {"all_ok", all_ok}}, c, since(t0));
  std::cout << "samples=" << pts.size() << " all_lhs_le_rhs=" << (all_ok ? "true" : "false") << "\n";
  return all_ok ? 0 : 1;
}

int cmd_theorem2(const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const json c = effective_config("theorem2", f);
  const FracParams fp = params_of(c, 1);
  if (!(fp.s() > 1.0))
    throw std::domain_error("theorem2 requires sigma * p > 1 (got " + format_double(fp.s()) + ")");
  const auto corpus = theorem2_corpus(require<std::uint64_t>(c, "seed"), require<double>(c, "grid_h"));
  const RatioSuite suite = theorem2_ratio_suite(corpus, fp);
  Table t;
  t.columns = {"case", "energy_fullspace_rearranged", "energy_domain", "ratio"};
  for (std::size_t k = 0; k < suite.ratios.size(); ++k)
    t.rows.push_back({suite.labels[k], format_double(suite.numerators[k]),
                      format_double(suite.denominators[k]), format_double(suite.ratios[k])});
  write_table(f, "theorem2.csv", t, c);
  write_json(f, "theorem2.json", {{"ratios", suite.ratios}, {"max_ratio", suite.max_ratio}}, c, since(t0));
  std::cout << "cases=" << suite.ratios.size() << " max_ratio=" << format_double(suite.max_ratio) << "\n";
  return 0;
}

int cmd_constants(const Flags& f) {
  const json c = effective_config("constants", f);
  const int n = require<int>(c, "n");
  const double sigma = require<double>(c, "sigma");
  const OmegaConvention conv = omega_convention_from_string(require<std::string>(c, "omega_convention"));
  std::cout << "n=" << n << "\n";
  std::cout << "alpha_n=" << format_double(alpha_n(n)) << "\n";
  std::cout << "sphere_measure=" << format_double(sphere_measure(n)) << "\n";
  std::cout << "omega_convention=" << to_string(conv) << "\n";
  std::cout << "omega_n=" << format_double(omega_n(n, conv)) << "\n";
  if (n > 2.0 * sigma)
    std::cout << "sharp_sobolev_constant(sigma=" << format_double(sigma)
              << ")=" << format_double(sharp_sobolev_constant(n, sigma, conv)) << "\n";
  else
    std::cout << "sharp_sobolev_constant: undefined for n <= 2 sigma\n";
  return 0;
}

int cmd_descend(const Flags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const json c = effective_config("descend", f);
  const Domain d = domain_from_json(require<json>(c, "domain"));
  const FracParams fp = params_of(c, d.dimension());
  const OmegaConvention conv = omega_convention_from_string(require<std::string>(c, "omega_convention"));
  const GridFunction start = c.contains("input") ? load_grid_function(require<std::string>(c, "input"))
                                                 : initial_bump(d, require<double>(c, "grid_h"));
  const DescentResult r =
      best_constant_descent(d, fp, require<int>(c, "iterations"), require<double>(c, "step"), start);
  Table t;
  t.columns = {"iteration", "quotient"};
  for (std::size_t k = 0; k < r.trace.size(); ++k) t.rows.push_back({std::to_string(k), format_double(r.trace[k])});
  write_table(f, "descend_trace.csv", t, c);
  save_grid_function(out_path(f, "descend_final.txt").string(), r.final_u);
  const double sharp = sharp_sobolev_constant(fp.n, fp.sigma, conv);
  write_json(f, "descend.json",
             {{"trace", r.trace},
              {"final_quotient", r.trace.back()},
              {"stalled", r.stalled},
              {"halvings", r.halvings},
              {"sharp_sobolev_constant", sharp},
              {"omega_convention", std::string(to_string(conv))},
              {"below_sharp_constant", r.trace.back() < sharp}},
             c, since(t0));
  std::cout << "initial_quotient=" << format_double(r.trace.front())
            << " final_quotient=" << format_double(r.trace.back())
            << " sharp_constant=" << format_double(sharp) << (r.stalled ? " (stalled)" : "") << "\n";
  return 0;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON configuration file");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--grid-h", f.grid_h, "grid spacing");
  sub->add_option("--eps", f.eps, "comma-separated epsilon list");
  sub->add_option("--placement", f.placement, "boundary | center | origin | auto | explicit");
  sub->add_option("--point", f.point, "explicit bump center, comma-separated");
  sub->add_flag("--expect-reversal", f.expect_reversal, "exit 1 unless some epsilon is flagged");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--threads", f.threads, "worker threads (default: GAGLIARDO_THREADS or 1)");
  sub->add_option("--n", f.n, "dimension");
  sub->add_option("--sigma", f.sigma, "fractional order sigma in (0,1)");
  sub->add_option("--p", f.p, "integrability exponent p > 0");
  sub->add_option("--domain", f.domain, "domain as JSON text or a JSON file");
  sub->add_option("--input", f.input, "grid function file");
  sub->add_option("--iterations", f.iterations, "descent iterations");
  sub->add_option("--step", f.step, "descent step");
  sub->add_option("--samples", f.samples, "number of sample points");
  sub->add_option("--omega-convention", f.omega_convention, "sphere_Sn | sphere_Sn-1 | unit_ball_volume");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gagliardo-lab: fractional Gagliardo seminorms under symmetric decreasing rearrangement"};
  app.require_subcommand(1);
  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Flags&);
  };
  const Command commands[] = {
      {"rearrange", "rearrange a grid function and check equimeasurability", cmd_rearrange},
      {"seminorm", "Gagliardo energy of a grid function over a domain", cmd_seminorm},
      {"counterexample", "bump sweep comparing E_d(u) with E_d*(u*)", cmd_counterexample},
      {"hardy", "pointwise Hardy bound at interior sample points", cmd_hardy},
      {"theorem2", "ratio suite E(u*) / E_d(u) on the seeded corpus", cmd_theorem2},
      {"constants", "print closed-form constants", cmd_constants},
      {"descend", "projected descent on the Sobolev Rayleigh quotient", cmd_descend},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, flags);
    subs.emplace_back(sub, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  set_default_threads(flags.threads ? *flags.threads : threads_from_environment(1));
  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      return cmd->run(flags);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
