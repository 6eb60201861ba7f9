#include "clonekit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"

#include "clonekit/clock.hpp"
#include "clonekit/coherent.hpp"
#include "clonekit/entangled.hpp"
#include "clonekit/error.hpp"
#include "clonekit/finiteset.hpp"
#include "clonekit/multiphase.hpp"
#include "clonekit/oracle.hpp"
#include "clonekit/verify.hpp"

namespace clonekit::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kFamilies{"finite", "coherent", "multiphase", "clock", "entangled"};

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && !text.empty(), "not an integer: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == item.size() && !item.empty(), "not a number: '" + item + "'");
    out.push_back(value);
  }
  return out;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::vector<double> uniform(int d) { return std::vector<double>(static_cast<std::size_t>(d), 1.0 / d); }

std::vector<double> family_probs(const ExperimentConfig& c, int levels) {
  if (c.probs.empty()) return uniform(levels);
  require(static_cast<int>(c.probs.size()) == levels, "--probs must have one entry per level");
  return c.probs;
}

int derive_k(const ExperimentConfig& c, int m) {
  if (c.family == "entangled") return entangled::protocol_copies(m, c.epsilon);
  const int k = static_cast<int>(std::ceil(std::pow(static_cast<double>(m), 1.0 - c.epsilon) - 1e-9));
  return std::clamp(k, 1, m);
}

finiteset::StateSet build_state_set(const ExperimentConfig& c) {
  std::vector<CVector> states;
  if (c.random_states > 0) {
    std::mt19937_64 rng(c.seed);
    for (int x = 0; x < c.random_states; ++x) states.push_back(linalg::random_state(c.d, rng));
  } else {
    require(c.states.size() >= 2, "finite: give --states or --random");
    for (const auto& s : c.states) {
      CVector v(static_cast<Eigen::Index>(s.size()));
      for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
      require(v.norm() > 0.0, "finite: zero state vector");
      states.push_back(v.normalized());
    }
  }
  std::vector<double> priors = c.priors;
  if (priors.empty()) priors = uniform(static_cast<int>(states.size()));
  return finiteset::StateSet(std::move(states), std::move(priors));
}

struct Point {
  int n;
  std::optional<int> k;
  int m;
};

void finish(Row& row) {
  if (row.f_naive && row.f_econ && *row.f_econ > 0.0) row.ratio = *row.f_naive / *row.f_econ;
}

Row evaluate(const ExperimentConfig& c, const Point& p, const finiteset::StateSet* set) {
  Row row;
  row.family = c.family;
  row.n = p.n;
  row.k = p.k;
  row.m = p.m;
  if (c.family == "multiphase") {
    const multiphase::Family fam(family_probs(c, c.probs.empty() ? c.d : static_cast<int>(c.probs.size())));
    row.d = fam.levels();
    row.f_econ = multiphase::economical_fidelity(p.n, p.m, fam);
    if (p.k) row.f_mp = multiphase::mp_protocol_fidelity(p.n, *p.k, p.m, fam);
    row.f_naive = multiphase::mp_protocol_fidelity(p.n, p.m, p.m, fam);
    row.bound = multiphase::upper_bound(p.n, p.m, fam);
  } else if (c.family == "clock") {
    require(!c.spectrum.empty(), "clock: --spectrum is required");
    const clock::Family fam(c.spectrum, family_probs(c, static_cast<int>(c.spectrum.size())));
    row.d = static_cast<int>(c.spectrum.size());
    row.f_econ = clock::economical_fidelity(p.n, p.m, fam);
    if (p.k) row.f_mp = clock::mp_protocol_fidelity(p.n, *p.k, p.m, fam);
    row.f_naive = clock::mp_protocol_fidelity(p.n, p.m, p.m, fam);
    row.bound = clock::upper_bound(p.n, p.m, fam);
  } else if (c.family == "entangled") {
    row.d = 2;
    row.f_econ = entangled::economical_fidelity(p.n, p.m);
    if (p.k) row.f_mp = entangled::mp_protocol_fidelity(p.n, *p.k, p.m);
    row.f_naive = entangled::mp_protocol_fidelity(p.n, p.m, p.m);
    row.bound = entangled::upper_bound(p.n, p.m);
  } else if (c.family == "coherent") {
    const auto fam = coherent::Family::qudit_pure(c.d);
    row.d = c.d;
    row.f_econ = coherent::werner_fidelity(fam, p.n, p.m);
    row.f_naive = coherent::naive_mp_worstcase(fam, p.n, p.m);
    try {
      row.f_mp = coherent::mp_epsilon_bound(fam, p.n, p.m);
    } catch (const DomainError&) {
      // eps d_M >= 1: the bound is vacuous there
    }
    row.bound = coherent::average_fidelity_identity(fam, p.n, p.m).bound;
  } else if (c.family == "finite") {
    row.d = set->dimension();
    finiteset::DiscriminationOptions options;
    options.worst_case = c.worst_case;
    const auto disc = finiteset::discrimination_success(*set, p.n, options);
    row.f_naive = finiteset::naive_mp_fidelity(*set, disc, p.m, c.worst_case);
    row.bound = std::min(1.0, finiteset::cloning_upper_bound(*set, p.n, p.m, options));
    const auto dim = static_cast<std::uint64_t>(set->size());
    if (!c.worst_case && dim * dim <= c.dimension_cap) {
      oracle::SeesawConfig config;
      config.seed = c.seed;
      config.restarts = c.restarts;
      config.dimension_cap = c.dimension_cap;
      const auto warm = oracle::finite_set_naive_channel(*set, disc, p.m);
      row.f_econ = oracle::seesaw_optimal_fidelity(oracle::finite_set_fidelity_operator(*set, p.n, p.m), set->size(),
                                                   set->size(), config, {warm})
                       .value;
    }
  } else {
    throw DomainError("unknown family '" + c.family + "'");
  }
  finish(row);
  return row;
}

std::vector<int> grid_from_json(const json& value) {
  if (value.is_number_integer()) return {value.get<int>()};
  if (value.is_string()) return parse_grid(value.get<std::string>());
  if (value.is_array()) return value.get<std::vector<int>>();
  throw DomainError("grid must be an integer, a range string or an integer array");
}

// Each amplitude is a number or a [re, im] pair.
std::vector<std::vector<cplx>> states_from_json(const json& value) {
  require(value.is_array(), "states must be an array of amplitude arrays");
  std::vector<std::vector<cplx>> out;
  for (const auto& state : value) {
    require(state.is_array(), "each state must be an array of amplitudes");
    std::vector<cplx> amplitudes;
    for (const auto& a : state) {
      if (a.is_number()) {
        amplitudes.emplace_back(a.get<double>(), 0.0);
      } else {
        require(a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number(),
                "amplitude must be a number or [re, im]");
        amplitudes.emplace_back(a[0].get<double>(), a[1].get<double>());
      }
    }
    out.push_back(std::move(amplitudes));
  }
  return out;
}

json states_to_json(const std::vector<std::vector<cplx>>& states) {
  json out = json::array();
  for (const auto& s : states) {
    json state = json::array();
    for (const auto& a : s) {
      if (a.imag() == 0.0) {
        state.push_back(a.real());
      } else {
        state.push_back({a.real(), a.imag()});
      }
    }
    out.push_back(std::move(state));
  }
  return out;
}

void apply_json(ExperimentConfig& c, const json& j) {
  static const std::vector<std::string> known{"family", "d", "probs", "spectrum", "n", "m", "k", "epsilon",
                                              "seed", "output", "timing", "states", "priors", "random",
                                              "worst_case", "restarts", "dimension_cap"};
  for (const auto& [key, value] : j.items()) {
    require(std::find(known.begin(), known.end(), key) != known.end(), "config: unknown key '" + key + "'");
  }
  if (j.contains("family")) c.family = j["family"].get<std::string>();
  if (j.contains("d")) c.d = j["d"].get<int>();
  if (j.contains("probs")) c.probs = j["probs"].get<std::vector<double>>();
  if (j.contains("spectrum")) c.spectrum = j["spectrum"].get<std::vector<Energy>>();
  if (j.contains("n")) c.n_grid = grid_from_json(j["n"]);
  if (j.contains("m")) c.m_grid = grid_from_json(j["m"]);
  if (j.contains("k")) c.k_grid = grid_from_json(j["k"]);
  if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output")) c.output = j["output"].get<std::string>();
  if (j.contains("timing")) c.timing = j["timing"].get<bool>();
  if (j.contains("states")) c.states = states_from_json(j["states"]);
  if (j.contains("priors")) c.priors = j["priors"].get<std::vector<double>>();
  if (j.contains("random")) c.random_states = j["random"].get<int>();
  if (j.contains("worst_case")) c.worst_case = j["worst_case"].get<bool>();
  if (j.contains("restarts")) c.restarts = j["restarts"].get<int>();
  if (j.contains("dimension_cap")) c.dimension_cap = j["dimension_cap"].get<std::uint64_t>();
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["family"] = c.family;
  j["d"] = c.d;
  j["probs"] = c.probs;
  j["spectrum"] = c.spectrum;
  j["n"] = c.n_grid;
  j["m"] = c.m_grid;
  j["k"] = c.k_grid;
  j["epsilon"] = c.epsilon;
  j["seed"] = c.seed;
  j["output"] = c.output;
  j["timing"] = c.timing;
  if (c.family == "finite") {
    j["states"] = states_to_json(c.states);
    j["priors"] = c.priors;
    j["random"] = c.random_states;
    j["worst_case"] = c.worst_case;
    j["restarts"] = c.restarts;
    j["dimension_cap"] = c.dimension_cap;
  }
  return j;
}

// Raw flag values; a flag given on the command line overrides the config file.
struct Flags {
  std::string config, d, probs, spectrum, n, m, k, epsilon, seed, output, states, priors, random, restarts, cap;
  bool timing = false;
  bool worst_case = false;
};

void add_experiment_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON config file; flags override its values");
  app.add_option("--d", f.d, "local dimension / number of levels");
  app.add_option("--probs", f.probs, "comma-separated level probabilities");
  app.add_option("--spectrum", f.spectrum, "comma-separated integer energies (clock)");
  app.add_option("--n", f.n, "input copies N (grid)");
  app.add_option("--m", f.m, "output copies M (grid)");
  app.add_option("--k", f.k, "intermediate copies K (grid); default from --epsilon");
  app.add_option("--epsilon", f.epsilon, "K = ceil(M^(1 - epsilon))");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--output", f.output, "CSV path (default stdout)");
  app.add_option("--states", f.states, "finite: real states 'a,b;c,d;...' (complex amplitudes via --config)");
  app.add_option("--priors", f.priors, "finite: comma-separated priors");
  app.add_option("--random", f.random, "finite: number of random states in C^d");
  app.add_option("--restarts", f.restarts, "finite: see-saw restarts");
  app.add_option("--dimension-cap", f.cap, "finite: cap on d_in * d_out for the see-saw");
  app.add_flag("--timing", f.timing, "fill runtime_ms (breaks byte-identical output)");
  app.add_flag("--worst-case", f.worst_case, "finite: worst-case instead of average discrimination");
}

ExperimentConfig resolve(const Flags& f, const std::string& family) {
  ExperimentConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    require(static_cast<bool>(in), "cannot open config '" + f.config + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw DomainError(std::string("config: ") + e.what());
    }
    apply_json(c, j);
  }
  if (!family.empty()) {
    require(c.family.empty() || c.family == family, "config family '" + c.family + "' differs from '" + family + "'");
    c.family = family;
  }
  require(std::find(kFamilies.begin(), kFamilies.end(), c.family) != kFamilies.end(),
          "unknown family '" + c.family + "'");
  if (!f.d.empty()) c.d = parse_int(f.d);
  if (!f.probs.empty()) c.probs = parse_doubles(f.probs);
  if (!f.spectrum.empty()) {
    c.spectrum.clear();
    for (const auto& e : split(f.spectrum, ',')) c.spectrum.push_back(parse_int(e));
  }
  if (!f.n.empty()) c.n_grid = parse_grid(f.n);
  if (!f.m.empty()) c.m_grid = parse_grid(f.m);
  if (!f.k.empty()) c.k_grid = parse_grid(f.k);
  if (!f.epsilon.empty()) c.epsilon = parse_doubles(f.epsilon).at(0);
  if (!f.seed.empty()) c.seed = static_cast<std::uint64_t>(std::stoull(f.seed));
  if (!f.output.empty()) c.output = f.output;
  if (f.timing) c.timing = true;
  if (!f.states.empty()) {
    c.states.clear();
    for (const auto& s : split(f.states, ';')) {
      const auto real = parse_doubles(s);
      c.states.emplace_back(real.begin(), real.end());
    }
  }
  if (!f.priors.empty()) c.priors = parse_doubles(f.priors);
  if (!f.random.empty()) c.random_states = parse_int(f.random);
  if (!f.restarts.empty()) c.restarts = parse_int(f.restarts);
  if (!f.cap.empty()) c.dimension_cap = static_cast<std::uint64_t>(std::stoull(f.cap));
  if (f.worst_case) c.worst_case = true;

  require(!c.n_grid.empty() && !c.m_grid.empty(), "N and M grids must be non-empty");
  require(c.d >= 2, "--d must be >= 2");
  require(c.epsilon > 0.0 && c.epsilon < 1.0, "--epsilon must lie in (0, 1)");
  if (!c.probs.empty()) validate_probabilities(c.probs);
  return c;
}

int write_rows(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  err << json{{"config", to_json(c)}, {"seed", c.seed}}.dump() << '\n';
  const auto rows = run_experiment(c, worker_count());
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output);
    require(static_cast<bool>(file), "cannot write '" + c.output + "'");
    sink = &file;
  }
  *sink << csv_header() << '\n';
  for (const auto& row : rows) *sink << csv_line(row) << '\n';
  return 0;
}

int run_distance(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  err << json{{"config", to_json(c)}, {"seed", c.seed}}.dump() << '\n';
  require(c.family == "multiphase" || c.family == "clock", "distance: family must be multiphase or clock");
  const int n = c.n_grid.front();
  const int m = c.m_grid.front();
  oracle::DenseChannel econ, naive;
  if (c.family == "multiphase") {
    const multiphase::Family fam(family_probs(c, c.probs.empty() ? c.d : static_cast<int>(c.probs.size())));
    econ = oracle::multiphase_economical_channel(n, m, fam);
    naive = oracle::multiphase_naive_mp_channel(n, m, fam);
  } else {
    throw DomainError("distance: the clock naive channel is not materialised; use multiphase");
  }
  oracle::DistanceConfig config;
  config.seed = c.seed;
  const auto result = oracle::trace_distance_econ_vs_mp(econ, naive, config);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output);
    require(static_cast<bool>(file), "cannot write '" + c.output + "'");
    sink = &file;
  }
  *sink << "distance_estimate,bound_proven,bound_claimed\n"
        << format_number(result.estimate) << ',' << format_number(result.bound_proven) << ','
        << format_number(result.bound_claimed) << '\n';
  if (!result.bound_respected()) {
    err << "distance estimate below the proven bound\n";
    return 1;
  }
  return 0;
}

int run_verify(const std::string& seed, std::ostream& out) {
  const auto results = verify::run_all(seed.empty() ? 0 : std::stoull(seed));
  int failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.module << ": " << r.name << " (" << r.detail << ")\n";
    failed += r.passed ? 0 : 1;
  }
  out << results.size() - static_cast<std::size_t>(failed) << '/' << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_int(parts[0]));
      continue;
    }
    require(parts.size() == 2 || parts.size() == 3, "bad range '" + item + "'");
    const int lo = parse_int(parts[0]);
    const int hi = parse_int(parts[1]);
    require(lo <= hi, "empty range '" + item + "'");
    if (parts.size() == 3 && parts[2] == "geometric") {
      require(lo >= 1, "geometric range must start at >= 1");
      for (long long v = lo; v <= hi; v *= 2) out.push_back(static_cast<int>(v));
    } else {
      const int step = parts.size() == 3 ? parse_int(parts[2]) : 1;
      require(step >= 1, "range step must be >= 1");
      for (int v = lo; v <= hi; v += step) out.push_back(v);
    }
  }
  require(!out.empty(), "empty grid");
  return out;
}

std::string csv_header() { return "family,d,N,K,M,F_econ,F_mp,F_naive,bound,ratio,runtime_ms"; }

std::string csv_line(const Row& row) {
  auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
  std::ostringstream out;
  out << row.family << ',' << row.d << ',' << row.n << ',' << (row.k ? std::to_string(*row.k) : std::string()) << ','
      << row.m << ',' << opt(row.f_econ) << ',' << opt(row.f_mp) << ',' << opt(row.f_naive) << ',' << opt(row.bound)
      << ',' << opt(row.ratio) << ',' << opt(row.runtime_ms);
  return out.str();
}

unsigned worker_count() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CLONEKIT_THREADS")) {
    try {
      const int requested = std::stoi(env);
      if (requested >= 1) threads = static_cast<unsigned>(requested);
    } catch (const std::exception&) {
    }
  }
  return threads;
}

std::vector<Row> run_experiment(const ExperimentConfig& config, unsigned threads) {
  std::vector<Point> points;
  for (int n : config.n_grid) {
    for (int m : config.m_grid) {
      if (m < n) continue;
      if (config.family == "entangled" && (m - n) % 2 != 0) continue;
      if (!config.k_grid.empty()) {
        for (int k : config.k_grid) {
          if (k <= m) points.push_back({n, k, m});
        }
      } else if (config.family == "coherent" || config.family == "finite") {
        points.push_back({n, std::nullopt, m});
      } else {
        points.push_back({n, derive_k(config, m), m});
      }
    }
  }
  require(!points.empty(), "no grid point with N <= M");
  std::optional<finiteset::StateSet> set;
  if (config.family == "finite") set.emplace(build_state_set(config));

  std::vector<Row> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        rows[i] = evaluate(config, points[i], set ? &*set : nullptr);
        if (config.timing) {
          rows[i].runtime_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tuple(a.n, a.m, a.k.value_or(-1)) < std::tuple(b.n, b.m, b.k.value_or(-1));
  });
  return rows;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"clonekit: optimal asymptotic cloning machines and their measure-and-prepare benchmarks"};
  app.require_subcommand(1);
  Flags flags;
  std::string sweep_family, verify_seed;
  std::vector<std::pair<std::string, CLI::App*>> family_commands;
  for (const auto& family : kFamilies) {
    auto* sub = app.add_subcommand(family, "evaluate the " + family + " family");
    add_experiment_flags(*sub, flags);
    family_commands.emplace_back(family, sub);
  }
  auto* sweep = app.add_subcommand("sweep", "grid sweep of one family, e.g. --m 2:512:geometric");
  sweep->add_option("family", sweep_family, "family to sweep")->required();
  add_experiment_flags(*sweep, flags);
  auto* distance = app.add_subcommand("distance", "trace distance between economical and naive MP channels");
  add_experiment_flags(*distance, flags);
  std::string distance_family = "multiphase";
  distance->add_option("--family", distance_family, "multiphase");
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  verify_cmd->add_option("--seed", verify_seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (verify_cmd->parsed()) return run_verify(verify_seed, out);
    if (distance->parsed()) return run_distance(resolve(flags, distance_family), out, err);
    if (sweep->parsed()) return write_rows(resolve(flags, sweep_family), out, err);
    for (const auto& [family, sub] : family_commands) {
      if (sub->parsed()) return write_rows(resolve(flags, family), out, err);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace clonekit::cli
