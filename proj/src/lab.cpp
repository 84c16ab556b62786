#include "rootgas/lab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rootgas/equilibrium.hpp"
#include "rootgas/exactlaws.hpp"
#include "rootgas/functionals.hpp"
#include "rootgas/geometry.hpp"
#include "rootgas/gibbs.hpp"
#include "rootgas/grids.hpp"
#include "rootgas/oracles.hpp"
#include "rootgas/stats.hpp"
#include "rootgas/validation.hpp"

#ifndef ROOTGAS_VERSION
#define ROOTGAS_VERSION "0.0.0"
#endif

namespace rootgas {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// finite doubles as JSON numbers, the rest as "inf" / "-inf" / "nan"
json num(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ':')) out.push_back(part);
  return out;
}

long to_long(const std::string& s, const std::string& what) {
  Config c;
  c.set(what, s);
  return c.get_long(what, 0);
}

// A run in progress: owns the run directory and the record.
class Run {
 public:
  Run(const std::string& command, const Config& cfg) {
    rec_.command = command;
    rec_.config_hash = cfg.hash();
    rec_.version = ROOTGAS_VERSION;
    rec_.started = utc_now();
    rec_.run_dir = make_run_dir(output_root(cfg), command, rec_.config_hash);
    write_text(rec_.run_dir / "config.txt", cfg.canonical());
    rec_.outputs.push_back("config.txt");
  }

  fs::path file(const std::string& name) {
    rec_.outputs.push_back(name);
    return rec_.run_dir / name;
  }

  template <class F>
  auto timed(const std::string& task, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      rec_.timings.emplace_back(task, seconds_since(t0));
    } else {
      auto r = f();
      rec_.timings.emplace_back(task, seconds_since(t0));
      return r;
    }
  }

  void write_json(const std::string& name, const json& j) { write_text(file(name), j.dump(2) + "\n"); }

  CommandOutcome finish(int code) {
    rec_.exit_code = code;
    json j;
    j["command"] = rec_.command;
    j["config_hash"] = rec_.config_hash;
    j["version"] = rec_.version;
    j["started"] = rec_.started;
    j["run_dir"] = rec_.run_dir.string();
    j["outputs"] = rec_.outputs;
    json t = json::object();
    for (const auto& [k, v] : rec_.timings) t[k] = v;
    j["timings"] = t;
    j["exit_code"] = code;
    write_text(rec_.run_dir / "run.json", j.dump(2) + "\n");
    const fs::path log = rec_.run_dir.parent_path() / "runs.jsonl";
    std::ofstream out(log, std::ios::app);
    if (!out) throw IoError("cannot append to " + log.string());
    out << j.dump() << "\n";
    return {code, rec_};
  }

 private:
  static double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  RunRecord rec_;
};

ModelSpec model_from(const Config& cfg, int n) {
  const Basis b = parse_basis(cfg.get("model", "kac"));
  const Field f = parse_field(cfg.get("field", "complex"));
  ModelSpec spec;
  switch (b) {
    case Basis::Kac: spec = ModelSpec::kac(n, f); break;
    case Basis::Elliptic: spec = ModelSpec::elliptic(n, f); break;
    case Basis::Orthogonal: {
      if (!cfg.has("orthogonal_csv")) throw UsageError("model=orthogonal needs orthogonal_csv");
      auto w = std::make_shared<const OrthogonalWeight>(read_orthogonal_csv(cfg.get("orthogonal_csv", "")));
      spec = ModelSpec::orthogonal(w, n, f);
      break;
    }
  }
  spec.beta = cfg.get_double("beta", static_cast<double>(n) * n);
  return spec;
}

RateFunctionalSpec rate_spec_from(const Config& cfg) {
  const Basis b = parse_basis(cfg.get("model", "kac"));
  switch (b) {
    case Basis::Kac: return kac_rate_spec(cfg.get_long("sup", 2048), cfg.get_double("sup_offset", 0.6180339887498949));
    case Basis::Elliptic: return elliptic_rate_spec(cfg.get_long("sup", 4000), cfg.get_double("sup_offset", 0.5));
    case Basis::Orthogonal: {
      if (!cfg.has("orthogonal_csv")) throw UsageError("model=orthogonal needs orthogonal_csv");
      auto s = orthogonal_rate_spec(read_orthogonal_csv(cfg.get("orthogonal_csv", "")));
      s.center = cfg.get_double("center", s.center);
      return s;
    }
  }
  throw UsageError("unknown model");
}

void check_field(const Config& cfg) { parse_field(cfg.get("field", "complex")); }

template <class F>
auto usage_guard(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---- sample ----------------------------------------------------------------------

CommandOutcome sample_impl(const Config& cfg) {
  const auto ns = cfg.get_long_list("n", {16, 64, 256});
  const long seeds = cfg.get_long("seeds", 20);
  const auto base = static_cast<std::uint64_t>(cfg.get_long("seed", 1));
  const bool distances = cfg.get_bool("distance", true);
  if (ns.empty() || seeds < 1) throw UsageError("need a nonempty n list and seeds >= 1");
  for (long n : ns)
    if (n < 1) throw UsageError("degrees must be >= 1");
  const Basis basis = parse_basis(cfg.get("model", "kac"));
  check_field(cfg);

  Run run("sample", cfg);
  GridMeasure reference;
  if (distances) {
    if (basis == Basis::Kac) reference = circle_grid(4096);
    if (basis == Basis::Elliptic) reference = fibonacci_sphere_grid(4096);
  }
  CsvTable table{{"n", "seed", "distance", "mode", "reference"}, {}};
  CsvTable medians{{"n", "median_distance"}, {}};
  for (long n : ns) {
    const ModelSpec spec = usage_guard([&] { return model_from(cfg, static_cast<int>(n)); });
    if (distances && basis == Basis::Orthogonal) {
      const auto& w = *spec.weight;
      reference = uniform_on(Space::Plane, plane_points(w.support), Eigen::VectorXd::Constant(w.nu.size(), kInf));
      reference.weights = w.nu;
    }
    std::vector<double> d;
    for (long s = 0; s < seeds; ++s) {
      const std::uint64_t seed = derive_seed(derive_seed(base, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(s));
      const std::string tag = "n" + std::to_string(n) + "_s" + std::to_string(s);
      const ComplexPolynomial p = sample_coefficients(spec, seed);
      const EmpiricalMeasure mu = run.timed("roots_" + tag, [&] { return find_roots(p); });

      CsvTable coeffs{{"k", "re", "im", "log_abs", "arg"}, {}};
      const auto c = p.normalized();
      for (int k = 0; k <= p.degree(); ++k)
        coeffs.rows.push_back({std::to_string(k), format_double(c[static_cast<std::size_t>(k)].real()),
                               format_double(c[static_cast<std::size_t>(k)].imag()), format_double(p.log_abs(k)),
                               format_double(p.arg(k))});
      write_csv(run.file("coefficients_" + tag + ".csv"), coeffs);
      CsvTable roots{{"re", "im"}, {}};
      for (Eigen::Index i = 0; i < mu.size(); ++i)
        roots.rows.push_back({format_double(mu.atoms(i, 0)), format_double(mu.atoms(i, 1))});
      write_csv(run.file("roots_" + tag + ".csv"), roots);
      write_measure_csv(run.file("measure_" + tag + ".csv"), as_grid(mu));

      if (distances) {
        const BLResult r = basis == Basis::Elliptic ? bl_distance(pushforward_measure(mu), reference)
                                                    : bl_distance(mu, reference);
        d.push_back(r.value);
        table.rows.push_back({std::to_string(n), std::to_string(s), format_double(r.value),
                              r.mode == BLMode::Exact ? "exact" : "surrogate",
                              basis == Basis::Kac ? "circle" : basis == Basis::Elliptic ? "fubini_study" : "nu"});
      }
    }
    if (distances) medians.rows.push_back({std::to_string(n), format_double(median(d))});
  }
  if (distances) {
    write_csv(run.file("distances.csv"), table);
    write_csv(run.file("distance_medians.csv"), medians);
  }
  return run.finish(kExitOk);
}

// ---- gibbs -----------------------------------------------------------------------

CommandOutcome gibbs_impl(const Config& cfg) {
  const long n = cfg.get_long("n", 2);
  if (n < 1) throw UsageError("n must be >= 1");
  const ModelSpec spec = usage_guard([&] { return model_from(cfg, static_cast<int>(n)); });
  ChainConfig cc;
  cc.steps = cfg.get_long("steps", 100000);
  cc.seed = static_cast<std::uint64_t>(cfg.get_long("seed", 1));
  cc.stream = static_cast<std::uint64_t>(cfg.get_long("stream", 0));
  cc.record_every = cfg.get_long("record_every", 0);
  cc.check_every = cfg.get_long("check_every", 1000);
  if (cc.steps < 1) throw UsageError("steps must be >= 1");
  const long direct = cfg.get_long("direct", 10000);
  const bool real = spec.field == Field::Real;

  Run run("gibbs", cfg);
  const ChainResult chain =
      run.timed("chain", [&] { return real ? mcmc_real_mixture(spec, cc) : mcmc_complex(spec, cc); });
  write_chain_csv(run.file("chain.csv"), chain);
  CsvTable trace{{"index", "H", "k"}, {}};
  for (std::size_t i = 0; i < chain.h_trace.size(); ++i)
    trace.rows.push_back({std::to_string(i), format_double(chain.h_trace[i]), std::to_string(chain.k_trace[i])});
  write_csv(run.file("h_trace.csv"), trace);

  const auto& d = chain.diagnostics;
  json diag;
  json acc = json::object();
  for (int m = 0; m < kMoveKinds; ++m) {
    const auto kind = static_cast<MoveKind>(m);
    if (d.proposed[static_cast<std::size_t>(m)] == 0) continue;
    acc[to_string(kind)] = {{"proposed", d.proposed[static_cast<std::size_t>(m)]},
                            {"accepted", d.accepted[static_cast<std::size_t>(m)]},
                            {"rate", d.acceptance(kind)},
                            {"scale", d.scale[static_cast<std::size_t>(m)]}};
  }
  diag["acceptance"] = acc;
  diag["iat_h"] = d.iat;
  diag["thin"] = d.thin;
  diag["burn_in"] = d.burn_in;
  diag["record_every"] = d.record_every;
  diag["recorded"] = d.recorded;
  diag["effective_samples"] = d.effective_samples();
  diag["max_cache_drift"] = d.max_drift;
  if (real) {
    diag["k_histogram"] = d.k_histogram;
    CsvTable kh{{"k", "count"}, {}};
    for (std::size_t k = 0; k < d.k_histogram.size(); ++k)
      kh.rows.push_back({std::to_string(k), std::to_string(d.k_histogram[k])});
    write_csv(run.file("k_histogram.csv"), kh);
  }
  run.write_json("diagnostics.json", diag);

  if (direct > 0 && !chain.samples.empty()) {
    std::vector<std::vector<Complex>> configs;
    for (const auto& s : chain.samples) configs.push_back(s.particles);
    const auto gas = oracle::root_statistics(configs);
    const auto ref = run.timed("direct", [&] { return oracle::direct_root_statistics(spec, direct, cc.seed); });
    const auto report = two_sample_validate({gas.abs_product, gas.abs_sum}, {ref.abs_product, ref.abs_sum},
                                            {"abs_product", "abs_sum"});
    json ks = json::array();
    for (const auto& e : report)
      ks.push_back({{"statistic", e.name},
                    {"ks", e.ks.statistic},
                    {"p_value", e.ks.p_value},
                    {"permutation", e.ks.permutation},
                    {"pass", e.ks.p_value > 0.01}});
    run.write_json("ks.json", {{"chain_samples", chain.samples.size()}, {"direct_samples", direct}, {"tests", ks}});
  }
  return run.finish(kExitOk);
}

// ---- rate ------------------------------------------------------------------------

CommandOutcome rate_impl(const Config& cfg) {
  const double M = cfg.get_double("M", kDefaultTruncation);
  if (!(M > 0.0)) throw UsageError("M must be positive");
  GridMeasure mu;
  if (cfg.has("measure"))
    mu = read_measure_csv(cfg.get("measure", ""));
  else
    mu = parse_grid(cfg.get("grid", "circle:4096"));
  const RateFunctionalSpec spec = usage_guard([&] { return rate_spec_from(cfg); });
  const bool real = parse_field(cfg.get("field", "complex")) == Field::Real;

  Run run("rate", cfg);
  const RateValue r = run.timed("rate", [&] { return rate_function(mu, spec, M); });
  json j;
  j["value"] = num(r.value);
  j["energy"] = num(r.energy);
  j["j"] = num(r.j);
  j["space"] = to_string(mu.space);
  if (mu.space == Space::Plane) {
    j["planar"] = num(r.planar);
    j["log_moment"] = num(r.log_moment);
    j["identity_residual"] = num(std::abs(r.planar - r.value));
  }
  j["center"] = num(spec.center);
  if (real) j["real_value"] = num(real_rate_function(mu, spec, M));
  j["M"] = M;
  run.write_json("rate.json", j);

  const auto radii = cfg.get_double_list("family_radii", {});
  if (!radii.empty()) {
    if (mu.space != Space::Plane) throw UsageError("family_radii needs a plane measure");
    CsvTable fam{{"radius", "value", "energy", "j"}, {}};
    for (double t : radii) {
      GridMeasure scaled = mu;
      scaled.points.leftCols(2) *= t;
      // dilation by t shifts each cell self-energy by -log t
      scaled.cell = (mu.cell.array() - std::log(std::abs(t))).matrix();
      const RateValue v = rate_function(scaled, spec, M);
      fam.rows.push_back({format_double(t), format_double(v.value), format_double(v.energy), format_double(v.j)});
    }
    write_csv(run.file("family.csv"), fam);
  }
  return run.finish(kExitOk);
}

// ---- equilibrium ------------------------------------------------------------------

CommandOutcome equilibrium_impl(const Config& cfg) {
  const Basis b = parse_basis(cfg.get("model", "kac"));
  OptimizerConfig oc;
  std::string grid_text = cfg.get("grid", b == Basis::Kac ? "kac_sphere:1000:512" : "fibonacci:2000");
  oc.grid = parse_grid(grid_text);
  oc.M = cfg.get_double("M", kDefaultTruncation);
  oc.tolerance = cfg.get_double("tolerance", oc.tolerance);
  oc.max_iterations = cfg.get_long("max_iterations", oc.max_iterations);
  oc.symmetric = cfg.get_bool("symmetric", false);
  Config rc = cfg;
  if (b == Basis::Kac && !cfg.has("sup")) rc.set("sup", "1024");
  if (b == Basis::Kac && !cfg.has("sup_offset")) rc.set("sup_offset", "0.25");
  const RateFunctionalSpec spec = usage_guard([&] { return rate_spec_from(rc); });
  usage_guard([&] {
    oc.validate();
    return 0;
  });

  Run run("equilibrium", cfg);
  const EquilibriumResult r = run.timed("minimize", [&] { return minimize_rate(spec, oc); });
  write_measure_csv(run.file("measure.csv"), r.measure);
  CsvTable trace{{"iteration", "smoothed_objective"}, {}};
  for (std::size_t i = 0; i < r.trace.size(); ++i) trace.rows.push_back({std::to_string(i), format_double(r.trace[i])});
  write_csv(run.file("trace.csv"), trace);
  json j;
  j["value"] = num(r.value);
  j["gap"] = num(r.gap);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["energy"] = num(r.energy);
  j["j"] = num(r.j);
  j["tau"] = r.tau;
  j["grid"] = grid_text;
  run.write_json("equilibrium.json", j);
  return run.finish(r.converged ? kExitOk : kExitValidation);
}

// ---- validate ---------------------------------------------------------------------

CommandOutcome validate_impl(const Config& cfg) {
  std::vector<long> ids = cfg.get_long_list("checks", {});
  if (ids.empty())
    for (long i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  for (long i : ids)
    if (i < 1 || i > kCriterionCount) throw UsageError("checks must lie in 1.." + std::to_string(kCriterionCount));
  const auto seed = static_cast<std::uint64_t>(cfg.get_long("seed", 20240611));

  Run run("validate", cfg);
  json records = json::array();
  json criteria = json::array();
  bool ok = true;
  for (long id : ids) {
    const CriterionResult c = run.timed("criterion_" + std::to_string(id), [&] { return run_criterion(static_cast<int>(id), seed); });
    ok = ok && c.pass;
    for (const auto& r : c.records)
      records.push_back({{"check", r.check}, {"n", r.n}, {"statistic", num(r.statistic)}, {"bound", num(r.bound)}, {"pass", r.pass}});
    criteria.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"seconds", c.seconds}, {"budget", c.budget}});
  }
  run.write_json("validation.json", records);
  run.write_json("criteria.json", criteria);
  return run.finish(ok ? kExitOk : kExitValidation);
}

}  // namespace

fs::path output_root(const Config& cfg) {
  if (cfg.has("out")) return cfg.get("out", "");
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
  return "rootgas-out";
}

fs::path make_run_dir(const fs::path& root, const std::string& command, const std::string& hash) {
  std::error_code ec;
  const fs::path group = root / (command + "-" + hash);
  fs::create_directories(group, ec);
  if (ec || !fs::is_directory(group)) throw IoError("cannot create output directory " + group.string());
  for (int i = 1; i < 100000; ++i) {
    char name[16];
    std::snprintf(name, sizeof name, "run-%04d", i);
    const fs::path dir = group / name;
    if (fs::create_directory(dir, ec)) return dir;  // fails when it already exists
    if (ec) throw IoError("cannot create run directory " + dir.string());
  }
  throw IoError("run index exhausted in " + group.string());
}

GridMeasure parse_grid(const std::string& text) {
  const auto p = split_colon(text);
  if (p.empty()) throw UsageError("empty grid description");
  auto arg = [&](std::size_t i) {
    if (i >= p.size()) throw UsageError("grid '" + text + "' is missing a size");
    return to_long(p[i], "grid");
  };
  auto opt = [&](std::size_t i) { return i < p.size() ? parse_double(p[i]) : 0.0; };
  const std::string& kind = p[0];
  if (kind == "circle") return circle_grid(arg(1), opt(2));
  if (kind == "fibonacci") return fibonacci_sphere_grid(arg(1), opt(2));
  if (kind == "fubini_study") return fubini_study_grid(arg(1), opt(2));
  if (kind == "kac_sphere") return kac_sphere_grid(arg(1), arg(2), opt(3));
  if (kind == "product") return product_sphere_grid(arg(1), arg(2));
  throw UsageError("unknown grid kind '" + kind + "'");
}

CommandOutcome cmd_sample(const Config& cfg) { return sample_impl(cfg); }
CommandOutcome cmd_gibbs(const Config& cfg) { return gibbs_impl(cfg); }
CommandOutcome cmd_rate(const Config& cfg) { return rate_impl(cfg); }
CommandOutcome cmd_equilibrium(const Config& cfg) { return equilibrium_impl(cfg); }
CommandOutcome cmd_validate(const Config& cfg) { return validate_impl(cfg); }

int run_command(const std::string& name, const Config& cfg, std::ostream& err) {
  static const std::map<std::string, std::function<CommandOutcome(const Config&)>> table = {
      {"sample", cmd_sample}, {"gibbs", cmd_gibbs}, {"rate", cmd_rate},
      {"equilibrium", cmd_equilibrium}, {"validate", cmd_validate}};
  auto fail = [&](int code, const char* kind, const std::string& msg) {
    err << json{{"error", kind}, {"command", name}, {"message", msg}, {"exit_code", code}}.dump() << "\n";
    return code;
  };
  const auto it = table.find(name);
  if (it == table.end()) return fail(kExitUsage, "usage", "unknown subcommand");
  try {
    const CommandOutcome r = it->second(cfg);
    if (r.exit_code != kExitOk)
      fail(r.exit_code, "validation", "run finished with failures; see " + r.record.run_dir.string());
    return r.exit_code;
  } catch (const UsageError& e) {
    return fail(kExitUsage, "usage", e.what());
  } catch (const IoError& e) {
    return fail(kExitIo, "io", e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(kExitIo, "io", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitUsage, "usage", e.what());
  } catch (const Error& e) {
    return fail(kExitValidation, "numerics", e.what());
  }
}

}  // namespace rootgas
