#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "hyperlab/components.hpp"
#include "hyperlab/enumeration.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/experiments.hpp"
#include "hyperlab/hypergraph.hpp"
#include "hyperlab/processes.hpp"

namespace hyperlab::cli {

namespace {

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10e", x);
  return buf;
}

std::string fraction(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

// ---------------------------------------------------------------------------

struct GenArgs {
  std::uint32_t n = 0, k = 0, j = 1;
  std::optional<double> p, epsilon;
  std::uint64_t seed = 1;
  std::string out = "-";
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  Hypergraph h(a.n, a.k);
  if (a.epsilon) {
    h = sample_hypergraph(TheoryParams::make(a.n, a.k, a.j, *a.epsilon), a.seed);
  } else {
    h = sample_hypergraph(a.n, a.k, *a.p, a.seed);
  }
  if (a.out == "-") {
    write_hypergraph(out, h);
  } else {
    std::ofstream file(a.out);
    if (!file) throw ValidationError("cannot open output file '" + a.out + "'");
    write_hypergraph(file, h);
  }
  return kOk;
}

Hypergraph load(const std::string& path) {
  if (path == "-") return read_hypergraph(std::cin);
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot open input file '" + path + "'");
  return read_hypergraph(file);
}

struct ComponentsArgs {
  std::string in;
  std::uint32_t j = 0;
  bool wheels = false;
};

void write_wheel(std::ostream& out, std::uint32_t id, const Wheel& w) {
  out << "# wheel " << id << ' ' << w.length() << " :";
  for (std::size_t i = 0; i < w.length(); ++i) {
    out << " K" << format_set(w.edges[i]) << " J" << format_set(w.jsets[i]);
  }
  out << '\n';
}

int cmd_components(const ComponentsArgs& a, std::ostream& out) {
  const Hypergraph h = load(a.in);
  if (a.j < 1 || a.j >= h.k()) throw ValidationError("components: need 1 <= j <= k - 1");
  const Decomposition d = j_components(h, a.j, a.wheels);
  out << "id,size,order,hypertree\n";
  for (const auto& c : d.components) {
    out << c.id << ',' << c.size << ',' << c.order << ',' << (c.is_hypertree ? 1 : 0) << '\n';
  }
  if (a.wheels) {
    for (const auto& c : d.components) {
      if (c.wheel_witness) write_wheel(out, c.id, *c.wheel_witness);
    }
  }
  out << "# isolated_jsets " << d.isolated_jsets << '\n';
  return kOk;
}

struct EnumerateArgs {
  std::uint32_t n = 0, k = 0, j = 0;
  std::uint64_t s_max = 10;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
  if (a.s_max < 1) throw ValidationError("enumerate: s-max must be positive");
  // epsilon does not enter B_s; any admissible value builds the parameters
  const TheoryParams t = TheoryParams::make(a.n, a.k, a.j, 0.5);
  for (std::uint64_t s = 1; s <= a.s_max; ++s) {
    const EnumReport r = enum_report(t, s);
    out << s << '\t' << fraction(r.f_s) << '\t' << r.b_s.get_str() << '\t' << sci(r.lower.get_d()) << '\t'
        << sci(r.upper.get_d()) << '\t' << (r.bounds_hold ? "true" : "false") << '\n';
  }
  return kOk;
}

struct BoundsArgs {
  std::string which;
  std::uint32_t n = 0, k = 0, j = 0;
  double epsilon = 0.3;
  std::uint32_t ell = 2;
  unsigned a = 1;
  std::uint64_t s = 0;
  double constant = kUnicycleConstant;
  bool census = false;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.which == "wheel") {
    const WheelBound wb = wheel_bound(a.n, a.k, a.j, a.ell);
    out << "c_w=" << fraction(wb.c_w) << '\n';
    out << "bound_exact=" << fraction(wb.exact) << '\n';
    out << "bound=" << sci(wb.bound) << '\n';
    if (a.census) {
      const std::uint64_t w = brute_force_wheel_census(a.n, a.k, a.j, a.ell);
      out << "census=" << w << '\n';
      out << "holds=" << (mpq_class(w) <= wb.exact ? "true" : "false") << '\n';
    }
  } else if (a.which == "laplace") {
    const LaplaceCheck lc = laplace_sum_check(a.a, a.s);
    out << "lhs=" << sci(lc.lhs) << '\n' << "rhs=" << sci(lc.rhs) << '\n';
    out << "holds=" << (lc.holds ? "true" : "false") << '\n';
  } else if (a.which == "rs" || a.which == "cs" || a.which == "unicycle") {
    const TheoryParams t = TheoryParams::make(a.n, a.k, a.j, a.epsilon);
    if (a.s < 1) throw ValidationError("bounds: --s must be positive");
    if (a.which == "rs") {
      out << "expected_Rs_upper=" << sci(expected_Rs_upper(t, a.s)) << '\n';
    } else if (a.which == "cs") {
      out << "expected_Cs_reference=" << sci(expected_Cs_lower_reference(t, a.s)) << '\n';
    } else {
      out << "log_unicycle_bound=" << sci(log_unicycle_bound(t, a.s, a.constant)) << '\n';
      out << "constant=" << a.constant << '\n';
    }
  } else {
    throw ValidationError("bounds: --which must be one of wheel, laplace, rs, cs, unicycle");
  }
  return kOk;
}

struct ExperimentArgs {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::optional<int> workers;
  std::string csv = "-";
  bool no_footer = false;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  ExperimentConfig config;
  if (!a.config_file.empty()) {
    std::ifstream file(a.config_file);
    if (!file) throw ValidationError("cannot open config file '" + a.config_file + "'");
    config = parse_config(file);
  }
  for (const auto& [key, value] : a.overrides) apply_config_key(config, key, value);

  int workers = 0;
  if (a.workers) {
    workers = *a.workers;
  } else if (const char* env = std::getenv("HYPERLAB_WORKERS")) {
    try {
      workers = std::stoi(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string("HYPERLAB_WORKERS is not an integer: '") + env + "'");
    }
  }
  if (workers < 0) throw ValidationError("workers must be non-negative");

  const ExperimentResult res = run_experiment(config, workers);
  if (a.csv == "-") {
    write_trials_csv(out, res.trials);
    out << '\n';
  } else {
    std::ofstream file(a.csv);
    if (!file) throw ValidationError("cannot open csv file '" + a.csv + "'");
    write_trials_csv(file, res.trials);
  }

  int code = kOk;
  if (config.trials >= 30) {
    const Verdict v = compare_to_theory(res.summary);
    write_summary(out, res.summary, &v);
    if (!v.passed()) code = kAcceptance;
  } else {
    write_summary(out, res.summary, nullptr);
    out << "verdict=skipped (needs at least 30 trials)\n";
  }
  if (!a.no_footer) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", res.summary.runtime_seconds);
    out << "# footer runtime_seconds=" << buf << '\n';
  }
  return code;
}

struct SearchArgs {
  std::string in;
  std::uint32_t j = 0;
  std::string start;
  bool trace = false;
  std::optional<std::uint64_t> shuffle_seed;
};

int cmd_search(const SearchArgs& a, std::ostream& out) {
  const Hypergraph h = load(a.in);
  const VertexSet start = parse_set(a.start);
  SearchOptions opts;
  opts.shuffle_seed = a.shuffle_seed;
  opts.record_pops = a.trace;
  const SearchTrace tr = search_component(h, a.j, start, opts);
  if (a.trace) write_trace(out, tr);
  out << "size=" << tr.size << '\n' << "order=" << tr.order << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hyperlab: j-components of random k-uniform hypergraphs"};
  app.require_subcommand(1);
  app.allow_extras(false);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "sample H^k(n, p) and write it as text");
  g->add_option("--n", gen.n, "vertices")->required();
  g->add_option("--k", gen.k, "edge size")->required();
  g->add_option("--j", gen.j, "j used with --epsilon to compute p0")->capture_default_str();
  auto* gp = g->add_option("--p", gen.p, "edge probability");
  auto* ge = g->add_option("--epsilon", gen.epsilon, "p = (1 - epsilon) p0");
  gp->excludes(ge);
  g->add_option("--seed", gen.seed, "seed")->capture_default_str();
  g->add_option("--out", gen.out, "output file, - for stdout")->capture_default_str();

  ComponentsArgs comp;
  auto* c = app.add_subcommand("components", "j-component table of a hypergraph file");
  c->add_option("--in", comp.in, "hypergraph file, - for stdin")->required();
  c->add_option("--j", comp.j, "j")->required();
  c->add_flag("--wheels", comp.wheels, "print a wheel for each non-hypertree component");

  EnumerateArgs en;
  auto* e = app.add_subcommand("enumerate", "F_s, B_s and their bounds for s = 1..s-max");
  e->add_option("--n", en.n)->required();
  e->add_option("--k", en.k)->required();
  e->add_option("--j", en.j)->required();
  e->add_option("--s-max", en.s_max)->capture_default_str();

  BoundsArgs bd;
  auto* b = app.add_subcommand("bounds", "evaluate one of the tail and wheel bounds");
  b->add_option("--which", bd.which, "wheel | laplace | rs | cs | unicycle")->required();
  b->add_option("--n", bd.n);
  b->add_option("--k", bd.k);
  b->add_option("--j", bd.j);
  b->add_option("--epsilon", bd.epsilon)->capture_default_str();
  b->add_option("--ell", bd.ell)->capture_default_str();
  b->add_option("--a", bd.a)->capture_default_str();
  b->add_option("--s", bd.s);
  b->add_option("--constant", bd.constant)->capture_default_str();
  b->add_flag("--census", bd.census, "with --which wheel: also count wheels exhaustively");

  ExperimentArgs ex;
  auto* x = app.add_subcommand("experiment", "Monte Carlo run with comparison to the predicted size");
  x->add_option("--config", ex.config_file, "key = value file");
  static const char* const keys[] = {"n",    "k",         "j",           "epsilon",
                                     "trials", "m",       "base_seed",   "cap",
                                     "spread_width", "hypertree_threshold", "median_tolerance"};
  std::vector<std::string> values(std::size(keys));
  std::vector<CLI::Option*> key_opts;
  for (std::size_t i = 0; i < std::size(keys); ++i) {
    std::string flag = std::string("--") + keys[i];
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    key_opts.push_back(x->add_option(flag, values[i], std::string("config key ") + keys[i]));
  }
  int workers_value = 0;
  auto* wopt = x->add_option("--workers", workers_value, "threads (fallback: HYPERLAB_WORKERS)");
  x->add_option("--csv", ex.csv, "trial CSV destination, - for stdout")->capture_default_str();
  x->add_flag("--no-footer", ex.no_footer, "omit the runtime footer");

  SearchArgs se;
  auto* s = app.add_subcommand("search", "breadth-first search of one j-component");
  s->add_option("--in", se.in, "hypergraph file, - for stdin")->required();
  s->add_option("--j", se.j)->required();
  s->add_option("--start", se.start, "starting j-set, e.g. 1,2")->required();
  s->add_flag("--trace", se.trace, "print the pop sequence");
  std::uint64_t shuffle = 0;
  auto* sh = s->add_option("--shuffle-seed", shuffle, "visit scans in seeded random order");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*g) {
      if (!gen.p && !gen.epsilon) throw ValidationError("gen: one of --p or --epsilon is required");
      return cmd_gen(gen, out);
    }
    if (*c) return cmd_components(comp, out);
    if (*e) return cmd_enumerate(en, out);
    if (*b) return cmd_bounds(bd, out);
    if (*x) {
      for (std::size_t i = 0; i < key_opts.size(); ++i) {
        if (key_opts[i]->count()) ex.overrides.emplace_back(keys[i], values[i]);
      }
      if (wopt->count()) ex.workers = workers_value;
      return cmd_experiment(ex, out);
    }
    if (*s) {
      if (sh->count()) se.shuffle_seed = shuffle;
      return cmd_search(se, out);
    }
  } catch (const ResourceError& re) {
    err << "error: " << re.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& ia) {
    err << "error: " << ia.what() << '\n';
    return kValidation;
  } catch (const std::out_of_range& oor) {
    err << "error: " << oor.what() << '\n';
    return kValidation;
  } catch (const std::overflow_error& oe) {
    err << "error: " << oe.what() << '\n';
    return kResource;
  } catch (const std::domain_error& de) {
    err << "error: " << de.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace hyperlab::cli
