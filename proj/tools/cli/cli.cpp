#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "cvdisc/bounds.hpp"
#include "cvdisc/errors.hpp"
#include "cvdisc/validate.hpp"

namespace cvdisc::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kBoundsSchema = "cvdisc-bounds/1";
constexpr const char* kCensusSchema = "cvdisc-census/1";
constexpr const char* kValidateSchema = "cvdisc-validate/1";

// Census patterns are compared pairwise; beyond this the table is too big to
// be useful as a histogram anyway.
constexpr std::size_t kCensusMaxPatterns = 4096;

// Census buckets: ln F rounded to 1e-9 absolute, i.e. F to ~1e-9 relative.
constexpr Real kBucketScale = 1e9L;

const std::set<std::string> kGridParams{"mu", "ns", "copies", "mbar",
                                        "background", "target", "m"};

Real parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const Real v = std::stold(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgumentError(what + ": '" + s + "' is not a number");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

GridAxis parse_grid(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw InvalidArgumentError("--grid: expected param=start:stop:steps, got '" + text + "'");
  GridAxis axis;
  axis.param = text.substr(0, eq);
  if (!kGridParams.count(axis.param))
    throw InvalidArgumentError("--grid: unknown parameter '" + axis.param + "'");
  const auto parts = split(text.substr(eq + 1), ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw InvalidArgumentError("--grid " + axis.param + ": expected start:stop:steps[:log]");
  const Real start = parse_real(parts[0], "--grid " + axis.param + " start");
  const Real stop = parse_real(parts[1], "--grid " + axis.param + " stop");
  const Real steps_real = parse_real(parts[2], "--grid " + axis.param + " steps");
  const bool log = parts.size() == 4;
  if (log && parts[3] != "log")
    throw InvalidArgumentError("--grid " + axis.param + ": spacing must be 'log'");
  if (!(steps_real >= 1) || steps_real != std::floor(steps_real) || steps_real > 1e6)
    throw InvalidArgumentError("--grid " + axis.param + ": steps must be a positive integer");
  if (log && !(start > 0 && stop > 0))
    throw InvalidArgumentError("--grid " + axis.param + ": log spacing needs positive ends");
  const int steps = static_cast<int>(steps_real);
  for (int i = 0; i < steps; ++i) {
    const Real t = steps == 1 ? 0 : static_cast<Real>(i) / (steps - 1);
    Real v = log ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                 : start + t * (stop - start);
    if (i == steps - 1 && steps > 1) v = stop;  // exact end point
    if (axis.param == "m") v = std::round(v);
    axis.values.push_back(v);
  }
  return axis;
}

void check_config(const SweepConfig& c) {
  family_kind_from_string(c.family);
  if (c.format != "csv" && c.format != "jsonl")
    throw InvalidArgumentError("--format: expected csv or jsonl, got '" + c.format + "'");
  if (c.probes.empty()) throw InvalidArgumentError("--probe: at least one probe required");
  odd_strategy_from_string(c.odd_strategy);
  if (c.threads < 0) throw InvalidArgumentError("--threads must be >= 0");

  std::set<std::string> seen;
  for (const auto& g : c.grids) {
    if (!seen.insert(g.param).second)
      throw InvalidArgumentError("--grid: parameter '" + g.param + "' swept twice");
    if (g.values.empty()) throw InvalidArgumentError("--grid " + g.param + ": empty grid");
  }
  const int energy = c.mu.has_value() + c.ns.has_value() + static_cast<int>(seen.count("mu")) +
                     static_cast<int>(seen.count("ns"));
  if (energy != 1)
    throw InvalidArgumentError("energy: give exactly one of --mu, --ns or a mu/ns grid");
  const int use = c.copies.has_value() + c.mbar.has_value() +
                  static_cast<int>(seen.count("copies")) + static_cast<int>(seen.count("mbar"));
  if (use != 1)
    throw InvalidArgumentError(
        "copies: give exactly one of --copies, --mbar or a copies/mbar grid");
  if (c.m < 1 || c.m > kMaxPatternLength)
    throw InvalidArgumentError("--m must lie in [1, " + std::to_string(kMaxPatternLength) + "]");
}

namespace {

// One grid point with every swept parameter resolved.
struct Point {
  Real background = 0;
  Real target = 0;
  int m = 0;
  Real mu = 0;
  std::optional<Real> copies;
  std::optional<Real> mbar;
};

std::vector<Point> expand_grid(const SweepConfig& c) {
  Point base;
  base.background = c.background;
  base.target = c.target;
  base.m = c.m;
  if (c.mu) base.mu = *c.mu;
  if (c.ns) base.mu = *c.ns + 0.5L;
  base.copies = c.copies;
  base.mbar = c.mbar;

  std::vector<Point> points{base};
  // First axis varies slowest.
  for (const auto& axis : c.grids) {
    std::vector<Point> next;
    next.reserve(points.size() * axis.values.size());
    for (const auto& p : points)
      for (Real v : axis.values) {
        Point q = p;
        if (axis.param == "mu") q.mu = v;
        else if (axis.param == "ns") q.mu = v + 0.5L;
        else if (axis.param == "copies") q.copies = v;
        else if (axis.param == "mbar") q.mbar = v;
        else if (axis.param == "background") q.background = v;
        else if (axis.param == "target") q.target = v;
        else if (axis.param == "m") q.m = static_cast<int>(v);
        next.push_back(q);
      }
    points = std::move(next);
  }
  return points;
}

ChannelFamily make_family(const SweepConfig& c, const Point& p) {
  switch (family_kind_from_string(c.family)) {
    case FamilyKind::PureLoss: return ChannelFamily::pure_loss(p.background, p.target);
    case FamilyKind::AdditiveNoise:
      return ChannelFamily::additive_noise(p.background, p.target);
    case FamilyKind::Thermal:
      return ChannelFamily::thermal(p.background, c.background_eps, p.target, c.target_eps);
  }
  throw InvalidArgumentError("unknown family");
}

ProbeSpec resolve_probe(const std::string& probe, int m, Real mu,
                        const std::string& odd_strategy) {
  if (probe == "classical") return ProbeSpec::classical_coherent(m, mu - 0.5L);
  if (probe == "full-ghz") return {full_ghz_partition(m), mu};
  if (probe == "nn") return {nn_partition(m), mu};
  if (probe == "idler-full") return {idler_full_partition(m), mu};
  if (probe == "tmsv-disjoint") {
    if (m % 2 == 0) return {tmsv_pairs_partition(m), mu};
    return odd_m_disjoint_spec(m, odd_strategy_from_string(odd_strategy), mu);
  }
  return {Partition::parse(probe, m), mu};
}

double num(Real x) { return static_cast<double>(x); }

// Background and target coincide: every fidelity is 1. The core refuses to
// build such a family, so the trivial sums are formed here.
bool identical_channels(const SweepConfig& c, const Point& p) {
  return p.background == p.target &&
         (family_kind_from_string(c.family) != FamilyKind::Thermal ||
          c.background_eps == c.target_eps);
}

BoundReport vacuous_report(const ImageSpace& space, Real copies, Real mbar) {
  Real root_sum = 0;
  Real square_sum = 0;
  for (Real prior : space.priors()) {
    root_sum += std::sqrt(prior);
    square_sum += prior * prior;
  }
  BoundReport r = make_report(std::log(0.5L * (1 - square_sum)),
                              std::log(root_sum * root_sum - 1), copies, mbar,
                              Method::Generic);
  return r;
}

Json bounds_row(const SweepConfig& c, const std::string& probe, const Point& p) {
  const bool vacuous = identical_channels(c, p);
  const ImageSpace space = ImageSpace::parse(c.space, p.m);
  const ProbeSpec spec = resolve_probe(probe, p.m, p.mu, c.odd_strategy);
  validate_cover(spec.partition);

  const Real per_copy_use = average_channel_use(spec.partition, 1);
  const Real copies = p.copies ? *p.copies : *p.mbar / per_copy_use;
  if (!(copies > 0) || !std::isfinite(copies))
    throw InvalidArgumentError("copies/mbar must be positive and finite");
  const BoundReport r =
      vacuous ? vacuous_report(space, copies, per_copy_use * copies)
              : compute_bounds(space, spec, make_family(c, p), copies);

  Json row;
  row["probe"] = probe;
  row["family"] = to_string(family_kind_from_string(c.family));
  row["background"] = num(p.background);
  row["target"] = num(p.target);
  row["m"] = p.m;
  row["space"] = space.describe();
  row["partition"] = spec.partition.to_string();
  row["mu"] = num(p.mu);
  row["ns"] = num(p.mu - 0.5L);
  row["copies"] = num(r.copies);
  row["mbar"] = num(r.mbar);
  row["rounds"] = r.rounds;
  row["method"] = to_string(r.method);
  row["lower"] = num(r.lower);
  row["upper"] = num(r.upper);
  row["lower_raw"] = num(r.lower_raw);
  row["upper_raw"] = num(r.upper_raw);
  row["ln_lower"] = num(r.ln_lower);
  row["ln_upper"] = num(r.ln_upper);
  if (c.classical) {
    // Same average channel use: the classical probe has no overlaps, so its
    // copy number is the quantum probe's M-bar.
    const BoundReport cl =
        vacuous ? vacuous_report(space, r.mbar, r.mbar)
                : classical_benchmark(space, make_family(c, p), p.mu - 0.5L, r.mbar);
    row["classical_lower"] = num(cl.lower);
    row["classical_upper"] = num(cl.upper);
    row["delta_perr"] = num(guaranteed_advantage(cl, r));
  }
  return row;
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  if (v.is_number_float()) return fmt::format("{:.15g}", v.get<double>());
  return v.dump();
}

void write_table(std::ostream& os, const std::string& format, const char* schema,
                 const std::vector<Json>& rows) {
  if (format == "jsonl") {
    for (const auto& r : rows) os << r.dump() << '\n';
    return;
  }
  os << "# " << schema << '\n';
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [key, value] : rows.front().items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << '\n';
  for (const auto& r : rows) {
    first = true;
    for (const auto& [key, value] : r.items()) {
      os << (first ? "" : ",") << csv_cell(value);
      first = false;
    }
    os << '\n';
  }
}

// Evaluates `n` independent jobs on a pool; results keep job order. The first
// failure (in job order) is rethrown after all workers finish.
std::vector<Json> run_pool(std::size_t n, int threads,
                           const std::function<Json(std::size_t)>& job) {
  std::vector<Json> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned count = threads > 0 ? static_cast<unsigned>(threads)
                               : std::max(1u, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

// Output goes to --out when given, otherwise to the caller's stream.
void emit(const SweepConfig& c, std::ostream& out, const char* schema,
          const std::vector<Json>& rows) {
  if (c.out.empty()) {
    write_table(out, c.format, schema, rows);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw InvalidArgumentError("--out: cannot open '" + c.out + "'");
  write_table(file, c.format, schema, rows);
}

int cmd_bounds(const SweepConfig& c, std::ostream& out) {
  check_config(c);
  const auto points = expand_grid(c);
  const std::size_t n = c.probes.size() * points.size();
  const auto rows = run_pool(n, c.threads, [&](std::size_t i) {
    return bounds_row(c, c.probes[i / points.size()], points[i % points.size()]);
  });
  emit(c, out, kBoundsSchema, rows);
  return kOk;
}

int cmd_census(const SweepConfig& c, std::ostream& out) {
  check_config(c);
  if (c.probes.size() != 1) throw InvalidArgumentError("census: give exactly one --probe");
  if (!c.grids.empty()) throw InvalidArgumentError("census: grids are not supported");
  Point p = expand_grid(c).front();
  const ImageSpace space = ImageSpace::parse(c.space, p.m);
  const ProbeSpec spec = resolve_probe(c.probes.front(), p.m, p.mu, c.odd_strategy);
  validate_cover(spec.partition);
  const Real copies = p.copies ? *p.copies
                               : *p.mbar / average_channel_use(spec.partition, 1);
  if (space.size() > kCensusMaxPatterns)
    throw CapacityError("census: image space has more than " +
                        std::to_string(kCensusMaxPatterns) + " patterns");

  // Overlapping probes are evaluated on their extended representation.
  Partition structure = spec.partition;
  std::vector<Pattern> patterns = space.patterns();
  if (!structure.is_disjoint()) {
    const MutualExtension ext = extend_for_mutual_probing(structure, space);
    structure = ext.extended;
    patterns = ext.space.extended;
  }
  std::map<long long, std::pair<Real, unsigned long long>> buckets;
  if (identical_channels(c, p)) {
    const auto n = static_cast<unsigned long long>(patterns.size());
    if (n > 1) buckets[0] = {0, n * (n - 1)};
  } else {
    BlockFidelityCache cache(structure, make_family(c, p), spec.mu);
    for (std::size_t i = 0; i < patterns.size(); ++i)
      for (std::size_t j = 0; j < patterns.size(); ++j) {
        if (i == j) continue;
        const Real ln_f = copies * cache.pair_log_fidelity(patterns[i], patterns[j]);
        const auto key = std::llround(ln_f * kBucketScale);
        auto it = buckets.try_emplace(key, ln_f, 0).first;
        ++it->second.second;
      }
  }
  std::vector<Json> rows;
  for (auto it = buckets.rbegin(); it != buckets.rend(); ++it) {
    Json row;
    row["probe"] = c.probes.front();
    row["partition"] = spec.partition.to_string();
    row["copies"] = num(copies);
    row["fidelity"] = num(std::exp(it->second.first));
    row["ln_fidelity"] = num(it->second.first);
    row["multiplicity"] = it->second.second;
    rows.push_back(std::move(row));
  }
  emit(c, out, kCensusSchema, rows);
  return kOk;
}

int cmd_validate(const std::string& scale_text, const SweepConfig& c, std::ostream& out,
                 std::ostream& err) {
  ValidationScale scale;
  if (scale_text == "quick") scale = ValidationScale::Quick;
  else if (scale_text == "full") scale = ValidationScale::Full;
  else throw InvalidArgumentError("validate: scale must be quick or full");
  if (c.format != "csv" && c.format != "jsonl")
    throw InvalidArgumentError("--format: expected csv or jsonl, got '" + c.format + "'");

  bool all = true;
  std::vector<Json> rows;
  for (const auto& s : run_validation(scale)) {
    all = all && s.passed;
    Json row;
    row["suite"] = s.name;
    row["passed"] = s.passed;
    row["max_deviation"] = num(s.max_deviation);
    row["tolerance"] = num(s.tolerance);
    row["cases"] = s.cases;
    row["detail"] = s.detail;
    rows.push_back(std::move(row));
    if (!s.passed) err << "FAILED " << s.name << ": " << s.detail << '\n';
  }
  emit(c, out, kValidateSchema, rows);
  return all ? kOk : kValidationFailed;
}

// Applies a JSON config file on top of the flags. The file wins; every flag it
// overrides is reported.
void apply_config_file(const std::string& path, SweepConfig& c,
                       const std::set<std::string>& given, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("--config: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgumentError(std::string("--config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgumentError("--config: top level must be an object");

  auto warn = [&](const std::string& key) {
    if (given.count(key)) err << "warning: config file overrides --" << key << '\n';
  };
  auto get_real = [&](const Json& v, const std::string& key) -> Real {
    if (!v.is_number()) throw InvalidArgumentError("--config: '" + key + "' must be a number");
    return v.get<double>();
  };
  auto get_string = [&](const Json& v, const std::string& key) {
    if (!v.is_string()) throw InvalidArgumentError("--config: '" + key + "' must be a string");
    return v.get<std::string>();
  };
  auto get_strings = [&](const Json& v, const std::string& key) {
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const auto& e : v) out.push_back(get_string(e, key));
    } else {
      out.push_back(get_string(v, key));
    }
    return out;
  };

  for (const auto& [key, v] : j.items()) {
    const std::string flag = [&] {
      std::string f = key;
      std::replace(f.begin(), f.end(), '_', '-');
      return f;
    }();
    warn(flag);
    if (key == "family") c.family = get_string(v, key);
    else if (key == "background") c.background = get_real(v, key);
    else if (key == "target") c.target = get_real(v, key);
    else if (key == "background_eps") c.background_eps = get_real(v, key);
    else if (key == "target_eps") c.target_eps = get_real(v, key);
    else if (key == "m") {
      if (!v.is_number_integer()) throw InvalidArgumentError("--config: 'm' must be an integer");
      c.m = v.get<int>();
    } else if (key == "space") c.space = get_string(v, key);
    else if (key == "probe") c.probes = get_strings(v, key);
    else if (key == "odd_strategy") c.odd_strategy = get_string(v, key);
    else if (key == "mu") { c.mu = get_real(v, key); c.ns.reset(); }
    else if (key == "ns") { c.ns = get_real(v, key); c.mu.reset(); }
    else if (key == "copies") { c.copies = get_real(v, key); c.mbar.reset(); }
    else if (key == "mbar") { c.mbar = get_real(v, key); c.copies.reset(); }
    else if (key == "grid") {
      c.grids.clear();
      for (const auto& g : get_strings(v, key)) c.grids.push_back(parse_grid(g));
    } else if (key == "out") c.out = get_string(v, key);
    else if (key == "format") c.format = get_string(v, key);
    else if (key == "classical") {
      if (!v.is_boolean()) throw InvalidArgumentError("--config: 'classical' must be a boolean");
      c.classical = v.get<bool>();
    } else if (key == "threads") {
      if (!v.is_number_integer()) throw InvalidArgumentError("--config: 'threads' must be an integer");
      c.threads = v.get<int>();
    } else {
      throw InvalidArgumentError("--config: unknown key '" + key + "'");
    }
  }
}

struct Flags {
  std::string family;
  double background = 0, target = 0, background_eps = 0, target_eps = 0;
  int m = 0;
  std::string space;
  std::vector<std::string> probes;
  std::string odd_strategy;
  double mu = 0, ns = 0, copies = 0, mbar = 0;
  std::vector<std::string> grids;
  std::string out, format = "csv", config;
  bool classical = false;
  int threads = 0;
  std::string scale;
};

void add_sweep_options(CLI::App& app, Flags& f) {
  app.add_option("--family", f.family, "pure-loss | additive-noise | thermal");
  app.add_option("--background", f.background, "background channel parameter (eta, nu or tau)");
  app.add_option("--target", f.target, "target channel parameter");
  app.add_option("--background-eps", f.background_eps, "thermal noise of the background");
  app.add_option("--target-eps", f.target_eps, "thermal noise of the target");
  app.add_option("--m", f.m, "number of channels");
  app.add_option("--space", f.space, "full | cpf:K | bcpf:K1,K2,...");
  app.add_option("--probe", f.probes,
                 "preset (full-ghz, tmsv-disjoint, nn, idler-full, classical) or partition");
  app.add_option("--odd-strategy", f.odd_strategy, "hybrid | single-idler | triple");
  app.add_option("--mu", f.mu, "per-mode variance of each probe block");
  app.add_option("--ns", f.ns, "mean photon number per mode (mu - 1/2)");
  app.add_option("--copies", f.copies, "probe copies M");
  app.add_option("--mbar", f.mbar, "average channel use");
  app.add_option("--grid", f.grids, "param=start:stop:steps[:log]");
  app.add_option("--out", f.out, "output file (default: stdout)");
  app.add_option("--format", f.format, "csv | jsonl");
  app.add_option("--config", f.config, "JSON config file; wins over flags");
  app.add_flag("--classical", f.classical, "add the classical comparator and delta_perr");
  app.add_option("--threads", f.threads, "worker threads (0: all cores)");
}

SweepConfig to_config(const CLI::App& app, const Flags& f, std::set<std::string>& given) {
  SweepConfig c;
  auto has = [&](const std::string& name) {
    if (app.count("--" + name) == 0) return false;
    given.insert(name);
    return true;
  };
  if (has("family")) c.family = f.family;
  if (has("background")) c.background = f.background;
  if (has("target")) c.target = f.target;
  if (has("background-eps")) c.background_eps = f.background_eps;
  if (has("target-eps")) c.target_eps = f.target_eps;
  if (has("m")) c.m = f.m;
  if (has("space")) c.space = f.space;
  if (has("probe")) c.probes = f.probes;
  if (has("odd-strategy")) c.odd_strategy = f.odd_strategy;
  if (has("mu")) c.mu = f.mu;
  if (has("ns")) c.ns = f.ns;
  if (has("copies")) c.copies = f.copies;
  if (has("mbar")) c.mbar = f.mbar;
  if (has("grid"))
    for (const auto& g : f.grids) c.grids.push_back(parse_grid(g));
  if (has("out")) c.out = f.out;
  if (has("format")) c.format = f.format;
  if (has("classical")) c.classical = f.classical;
  if (has("threads")) c.threads = f.threads;
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds on channel-pattern discrimination with Gaussian probes", "cvdisc"};
  app.require_subcommand(1);
  Flags bounds_flags, census_flags, validate_flags;

  auto* bounds = app.add_subcommand("bounds", "error-probability bounds over a parameter grid");
  add_sweep_options(*bounds, bounds_flags);
  auto* census = app.add_subcommand("census", "histogram of pairwise fidelity degeneracies");
  add_sweep_options(*census, census_flags);
  auto* validate = app.add_subcommand("validate", "oracle and invariant suites");
  validate->add_option("scale", validate_flags.scale, "quick | full")->required();
  validate->add_option("--out", validate_flags.out, "output file (default: stdout)");
  validate->add_option("--format", validate_flags.format, "csv | jsonl");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*validate) {
      SweepConfig c;
      c.out = validate_flags.out;
      c.format = validate_flags.format;
      return cmd_validate(validate_flags.scale, c, out, err);
    }
    const bool is_bounds = static_cast<bool>(*bounds);
    const CLI::App& sub = is_bounds ? *bounds : *census;
    const Flags& f = is_bounds ? bounds_flags : census_flags;
    std::set<std::string> given;
    SweepConfig c = to_config(sub, f, given);
    if (!f.config.empty()) apply_config_file(f.config, c, given, err);
    return is_bounds ? cmd_bounds(c, out) : cmd_census(c, out);
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "usage error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace cvdisc::cli
