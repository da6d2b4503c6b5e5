#include "ccon/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ccon/control.hpp"
#include "ccon/ensemble.hpp"
#include "ccon/format.hpp"
#include "ccon/generators.hpp"
#include "ccon/graph_io.hpp"
#include "ccon/ranking.hpp"
#include "ccon/rng.hpp"
#include "ccon/statistics.hpp"
#include "ccon/stats.hpp"
#include "ccon/subspace.hpp"

namespace ccon::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kCsvDigits = 9;

// Stream tags for seeds the CLI derives from --seed; index 0 is never used
// by the estimator's per-iteration schedule.
enum Stream : std::uint64_t { kGraphStream = 1, kRewireStream = 2, kDimStream = 3, kRandomStream = 4 };

std::uint64_t stream_seed(std::uint64_t seed, Stream s) { return derive_seed(seed, 0, s); }

class Failure : public std::runtime_error {
 public:
  Failure(int code, std::string kind, const std::string& what)
      : std::runtime_error(what), code_(code), kind_(std::move(kind)) {}
  int code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  int code_;
  std::string kind_;
};

const std::vector<std::string> kSubcommands = {"generate", "stats",    "drivers", "cactus",
                                               "estimate", "dim",      "rank",    "curve",
                                               "ensemble", "randomize"};

// Option names that never go into output metadata: they pick where results
// land or how fast they are computed, not what they are.
const std::vector<std::string> kUnrecorded = {"help", "out", "jobs", "config", "sidecar", "summary"};

struct Options {
  std::string input;
  std::string format = "auto";
  int index_base = 0;
  std::vector<std::int64_t> er;
  std::vector<std::int64_t> sf;
  double gamma = kDefaultScaleFreeGamma;

  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out;
  std::string config;
  std::string sidecar;
  std::string summary;

  EstimatorConfig est;
  std::string functional = "max-territory";
  std::int64_t sample = 1;

  std::string drivers;
  int trials = kDefaultRankTrials;
  std::string method = "generic";

  std::vector<std::string> schemes;
  std::string estimates;
  int grid_density = kDefaultGridDensity;
  std::string grid;
  int repetitions = kDefaultRandomRepetitions;

  int runs = 100;
  std::string test = "sign";

  int histogram_bins = 0;
  double compare_rewired = 0.0;
  double swap_factor = 10.0;
  int out_base = 0;
};

// ---- arguments and config files -------------------------------------------

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool has_flag(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::optional<std::string> flag_value(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == flag && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind(flag + "=", 0) == 0) return args[i].substr(flag.size() + 1);
  }
  return std::nullopt;
}

// `key = value` lines become `--key value...` unless the flag is already on
// the command line.
std::vector<std::string> config_args(const std::string& path, const std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw Failure(kIo, "io", "cannot read config file: " + path);
  std::vector<std::string> extra;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Failure(kParse, "parse", path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty() || key == "config") {
      throw Failure(kParse, "parse", path + ":" + std::to_string(lineno) + ": bad key");
    }
    if (has_flag(args, key)) continue;
    extra.push_back("--" + key);
    std::istringstream values(t.substr(eq + 1));
    std::string v;
    while (values >> v) extra.push_back(v);
  }
  return extra;
}

template <typename T>
T parse_number(std::string_view token, const std::string& what) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Failure(kParse, "parse", "bad " + what + ": '" + std::string(token) + "'");
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> tokens;
  std::string token;
  for (const char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      if (!token.empty()) tokens.push_back(std::move(token));
      token.clear();
    } else {
      token.push_back(ch);
    }
  }
  if (!token.empty()) tokens.push_back(std::move(token));
  return tokens;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kIo, "io", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- output --------------------------------------------------------------

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure(kIo, "io", "cannot write " + path);
    f << content;
    f.flush();
    if (!f) throw Failure(kIo, "io", "cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Failure(kIo, "io", "cannot write " + path);
  }
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_atomic(path, content);
  }
}

std::string num(double x) { return format_significant(x, kCsvDigits); }

json build_meta(const CLI::App& sub) {
  json options = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (std::find(kUnrecorded.begin(), kUnrecorded.end(), name) != kUnrecorded.end()) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
    } else {
      value = opt->get_default_str();
      if (value == "[]" || value == "{}") value.clear();
    }
    if (!value.empty()) options[name] = value;
  }
  json meta;
  meta["subcommand"] = sub.get_name();
  meta["options"] = std::move(options);
  return meta;
}

std::string csv_meta_line(const json& meta) { return "# " + meta.dump() + "\n"; }

// ---- graph sources -------------------------------------------------------

bool has_generator(const Options& o) { return !o.er.empty() || !o.sf.empty(); }

GeneratorConfig generator_config(const Options& o) {
  const auto& pair = o.er.empty() ? o.sf : o.er;
  if (pair[0] < 1 || pair[0] > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("node count must be in [1, 2^31)");
  }
  GeneratorConfig cfg;
  cfg.kind = o.er.empty() ? GeneratorKind::scale_free : GeneratorKind::erdos_renyi;
  cfg.n = static_cast<NodeId>(pair[0]);
  cfg.l = pair[1];
  cfg.gamma = o.gamma;
  return cfg;
}

DirectedGraph load_graph(const Options& o) {
  if (has_generator(o)) return generator_config(o).generate(stream_seed(o.seed, kGraphStream));
  std::ifstream in(o.input);
  if (!in) throw Failure(kIo, "io", "cannot read input: " + o.input);
  std::string format = o.format;
  if (format == "auto") {
    const std::string ext = std::filesystem::path(o.input).extension().string();
    format = (ext == ".net" || ext == ".paj" || ext == ".pajek") ? "pajek" : "edgelist";
  }
  return format == "pajek" ? load_pajek(in) : load_edge_list(in, o.index_base);
}

void require_graph(const Options& o) {
  if (o.input.empty() && !has_generator(o)) {
    throw Failure(kUsage, "usage", "a graph source is required: --input, --er or --sf");
  }
}

void require_generator(const Options& o, const std::string& sub) {
  if (!has_generator(o)) throw Failure(kUsage, "usage", sub + " needs --er or --sf");
}

EstimatorConfig estimator_config(const Options& o) {
  EstimatorConfig cfg = o.est;
  cfg.master_seed = o.seed;
  cfg.jobs = o.jobs;
  cfg.functional = o.functional == "contribution-sum" ? ConvergenceFunctional::contribution_sum
                                                      : ConvergenceFunctional::max_territory;
  return cfg;
}

// Reads the CSV `estimate` writes.
ControlEstimates read_estimates(const std::string& path, NodeId n) {
  std::ifstream in(path);
  if (!in) throw Failure(kIo, "io", "cannot read estimates: " + path);
  ControlEstimates e;
  e.node_count = n;
  const auto un = static_cast<std::size_t>(n);
  e.k_hat.assign(un, 0.0);
  e.r_hat.assign(un, 0.0);
  e.c_hat.assign(un, 0.0);
  e.mean_territory.assign(un, 0.0);
  std::vector<bool> seen(un, false);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (trim(line) != "node,k,r,c,mean_territory") {
        throw ParseError(ParseErrorKind::malformed, lineno, "expected estimates header");
      }
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(trim(line));
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw ParseError(ParseErrorKind::malformed, lineno, "expected 5 columns");
    NodeId v = 0;
    double k = 0, r = 0, c = 0, mt = 0;
    try {
      v = parse_number<NodeId>(cells[0], "node");
      k = std::stod(cells[1]);
      r = std::stod(cells[2]);
      c = std::stod(cells[3]);
      mt = std::stod(cells[4]);
    } catch (const std::exception&) {
      throw ParseError(ParseErrorKind::malformed, lineno, "non-numeric estimate");
    }
    if (v < 0 || v >= n) throw ParseError(ParseErrorKind::out_of_range, lineno, "node outside the graph");
    const auto i = static_cast<std::size_t>(v);
    seen[i] = true;
    e.k_hat[i] = k;
    e.r_hat[i] = r;
    e.c_hat[i] = c;
    e.mean_territory[i] = mt;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ParseError(ParseErrorKind::malformed, 0, "estimates do not cover every node of the graph");
  }
  return e;
}

std::vector<NodeId> parse_drivers(const std::string& spec) {
  const bool from_file = std::filesystem::is_regular_file(spec);
  std::string text = from_file ? read_file(spec) : spec;
  std::string cleaned;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '#') continue;
    cleaned += line + "\n";
  }
  std::vector<NodeId> drivers;
  for (const auto& token : split_list(cleaned)) {
    if (token == "node_id") continue;
    drivers.push_back(parse_number<NodeId>(token, "driver id"));
  }
  if (drivers.empty()) throw Failure(kUsage, "usage", "--drivers lists no nodes");
  return drivers;
}

json histogram_json(const Histogram& h) {
  return json{{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}};
}

// ---- subcommands ---------------------------------------------------------

int cmd_generate(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_generator(o, "generate");
  const DirectedGraph g = load_graph(o);
  std::ostringstream body;
  body << csv_meta_line(build_meta(sub));
  write_edge_list(g, body, o.out_base);
  emit(o.out, body.str(), out);
  return kOk;
}

int cmd_randomize(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  const DirectedGraph g = load_graph(o);
  const DirectedGraph r = degree_preserving_rewire(g, o.swap_factor, stream_seed(o.seed, kRewireStream));
  std::ostringstream body;
  body << csv_meta_line(build_meta(sub));
  write_edge_list(r, body, o.out_base);
  emit(o.out, body.str(), out);
  return kOk;
}

int cmd_stats(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  const NetworkStats s = network_stats(load_graph(o));
  json meta = build_meta(sub);
  meta["info"] = {{"assortativity", kAssortativityVariant},
                  {"clustering", kClusteringVariant},
                  {"r_defined", s.r_defined},
                  {"c_defined", s.c_defined}};
  emit(o.out, csv_meta_line(meta) + stats_csv_header() + "\n" + stats_csv_row(s) + "\n", out);
  return kOk;
}

int cmd_drivers(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  const DirectedGraph g = load_graph(o);
  const SampleDetail s = draw_sample_detail(g, o.seed, o.sample, o.est.walk_length_factor);
  json meta = build_meta(sub);
  meta["info"] = {{"matching_size", s.matching.size()},
                  {"driver_count", s.drivers.drivers.size()},
                  {"n_d", s.drivers.n_d_fraction},
                  {"forced", s.drivers.forced}};
  std::string body = csv_meta_line(meta) + "node_id\n";
  for (const NodeId v : s.drivers.drivers) body += std::to_string(v) + "\n";
  emit(o.out, body, out);
  return kOk;
}

int cmd_cactus(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  const DirectedGraph g = load_graph(o);
  const SampleDetail s = draw_sample_detail(g, o.seed, o.sample, o.est.walk_length_factor);
  const CactusSample& p = s.partition;
  json cycles = json::array();
  for (std::size_t c = 0; c < p.cycles.size(); ++c) {
    json entry{{"nodes", p.cycles[c]}, {"driver", s.drivers.drivers[p.cycle_owner[c]]}};
    entry["witness"] = p.witness[c] ? json::array({p.witness[c]->source, p.witness[c]->target}) : json();
    entry["never_eligible"] = p.never_eligible(c);
    cycles.push_back(std::move(entry));
  }
  json territories = json::array();
  for (std::size_t i = 0; i < p.stems.size(); ++i) {
    territories.push_back({{"driver", s.drivers.drivers[i]},
                           {"stem", p.stems[i]},
                           {"nodes", p.territory(i)},
                           {"partition_size", p.territory_sizes[i]},
                           {"max_size", s.max_sizes[i]}});
  }
  json doc;
  doc["meta"] = build_meta(sub);
  doc["matching_size"] = s.matching.size();
  doc["drivers"] = s.drivers.drivers;
  doc["forced"] = s.drivers.forced;
  doc["territories"] = std::move(territories);
  doc["cycles"] = std::move(cycles);
  emit(o.out, doc.dump(2) + "\n", out);
  return kOk;
}

std::string estimates_csv(const json& meta, const ControlEstimates& e) {
  std::string body = csv_meta_line(meta) + "node,k,r,c,mean_territory\n";
  for (const auto& rec : contribution_table(e)) {
    body += std::to_string(rec.node) + "," + num(rec.k) + "," + num(rec.r) + "," + num(rec.c) + "," +
            num(rec.mean_territory) + "\n";
  }
  return body;
}

int cmd_estimate(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  const DirectedGraph g = load_graph(o);
  const EstimatorConfig cfg = estimator_config(o);
  const ControlEstimates e = estimate(g, cfg);
  const json meta = build_meta(sub);

  json side;
  side["meta"] = meta;
  side["samples"] = e.samples;
  side["converged"] = e.converged;
  if (o.histogram_bins > 0) {
    double hi = *std::max_element(e.c_hat.begin(), e.c_hat.end());
    std::optional<ControlEstimates> rewired;
    if (o.compare_rewired > 0.0) {
      const DirectedGraph r = degree_preserving_rewire(g, o.compare_rewired, stream_seed(o.seed, kRewireStream));
      rewired = estimate(r, cfg);
      hi = std::max(hi, *std::max_element(rewired->c_hat.begin(), rewired->c_hat.end()));
    }
    if (!(hi > 0.0)) hi = 1.0;
    json hist;
    hist["original"] = histogram_json(histogram(e.c_hat, o.histogram_bins, 0.0, hi));
    if (rewired) {
      hist["rewired"] = histogram_json(histogram(rewired->c_hat, o.histogram_bins, 0.0, hi));
      hist["rewired_converged"] = rewired->converged;
      hist["ks_statistic"] = ks_statistic(e.c_hat, rewired->c_hat);
    }
    side["c_histograms"] = std::move(hist);
  }
  json trace = json::array();
  for (const auto& tp : e.trace) trace.push_back(json::array({tp.t, tp.q, tp.delta}));
  side["trace_columns"] = json::array({"t", "q", "delta"});
  side["trace"] = std::move(trace);

  emit(o.out, estimates_csv(meta, e), out);
  std::string sidecar = o.sidecar;
  if (sidecar.empty() && !o.out.empty()) sidecar = o.out + ".json";
  if (!sidecar.empty()) write_atomic(sidecar, side.dump() + "\n");
  return kOk;
}

int cmd_dim(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  if (o.drivers.empty()) throw Failure(kUsage, "usage", "dim needs --drivers");
  const DirectedGraph g = load_graph(o);
  const std::vector<NodeId> drivers = parse_drivers(o.drivers);
  const SubspaceResult r = o.method == "exact" ? exact_dim_oracle(g, drivers, o.trials, o.seed)
                                               : controllable_dim(g, drivers, o.trials, o.seed);
  json doc;
  doc["n_b_abs"] = r.n_b_abs;
  doc["n_b"] = r.n_b;
  doc["reachable_count"] = r.reachable_count;
  doc["trials_used"] = r.trials_used;
  doc["method"] = to_string(r.method);
  doc["meta"] = build_meta(sub);
  emit(o.out, doc.dump() + "\n", out);
  return kOk;
}

std::optional<ControlEstimates> estimates_for(const Options& o, const DirectedGraph& g,
                                              const std::vector<SchemeKind>& kinds) {
  if (std::none_of(kinds.begin(), kinds.end(), is_control_based)) return std::nullopt;
  if (!o.estimates.empty()) return read_estimates(o.estimates, g.node_count());
  return estimate(g, estimator_config(o));
}

std::vector<SchemeKind> schemes_of(const Options& o) {
  if (o.schemes.empty()) return {kAllSchemes.begin(), kAllSchemes.end()};
  std::vector<SchemeKind> kinds;
  for (const auto& name : o.schemes) {
    const auto kind = parse_scheme(name);
    if (!kind) throw Failure(kUsage, "usage", "unknown scheme: " + name);
    kinds.push_back(*kind);
  }
  return kinds;
}

int cmd_rank(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  if (o.schemes.size() > 1) throw Failure(kUsage, "usage", "rank takes one --scheme");
  const DirectedGraph g = load_graph(o);
  const std::vector<SchemeKind> kinds =
      o.schemes.empty() ? std::vector<SchemeKind>{SchemeKind::contribution_desc} : schemes_of(o);
  const auto e = estimates_for(o, g, kinds);
  const RankingScheme scheme{kinds[0], stream_seed(o.seed, kRandomStream)};
  const std::vector<NodeId> order = e ? rank_nodes(g, *e, scheme) : rank_nodes(g, scheme);
  const std::vector<double> scores = scheme_scores(g, e ? &*e : nullptr, scheme);
  std::string body = csv_meta_line(build_meta(sub)) + "rank,node,score\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    body += std::to_string(i + 1) + "," + std::to_string(order[i]) + "," +
            num(scores[static_cast<std::size_t>(order[i])]) + "\n";
  }
  emit(o.out, body, out);
  return kOk;
}

int cmd_curve(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_graph(o);
  const DirectedGraph g = load_graph(o);
  const std::vector<SchemeKind> kinds = schemes_of(o);
  std::vector<double> grid;
  if (o.grid.empty()) {
    grid = default_grid(minimum_driver_fraction(g), o.grid_density);
  } else {
    for (const auto& token : split_list(o.grid)) {
      try {
        std::size_t used = 0;
        grid.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Failure(kParse, "parse", "bad grid value: '" + token + "'");
      }
    }
  }
  const auto e = estimates_for(o, g, kinds);
  const DimConfig dim{o.trials, stream_seed(o.seed, kDimStream), o.jobs};

  json aucs = json::object();
  std::string rows;
  for (const SchemeKind kind : kinds) {
    CurveResult c;
    if (kind == SchemeKind::random) {
      c = nb_curve_random(g, grid, dim, o.repetitions, stream_seed(o.seed, kRandomStream));
    } else {
      const auto order = is_control_based(kind) ? rank_nodes(g, *e, {kind, 0}) : rank_nodes(g, {kind, 0});
      c = nb_curve(g, order, grid, dim);
    }
    const std::string name(to_string(kind));
    aucs[name] = c.auc;
    for (const auto& p : c.points) {
      rows += name + "," + num(p.n_c) + "," + num(p.n_b) + "," +
              (kind == SchemeKind::random ? num(p.stderr_n_b) : std::string()) + "\n";
    }
  }
  json meta = build_meta(sub);
  meta["info"] = {{"auc", std::move(aucs)}};
  emit(o.out, csv_meta_line(meta) + "scheme,n_c,n_b,stderr\n" + rows, out);
  return kOk;
}

int cmd_ensemble(const Options& o, const CLI::App& sub, std::ostream& out) {
  require_generator(o, "ensemble");
  EnsembleConfig cfg;
  cfg.generator = generator_config(o);
  cfg.runs = o.runs;
  cfg.grid_density = o.grid_density;
  cfg.master_seed = o.seed;
  cfg.estimator = estimator_config(o);
  cfg.rank_trials = o.trials;
  cfg.test = *parse_test(o.test);
  cfg.jobs = o.jobs;
  const EnsembleResult r = ensemble_experiment(cfg);
  const json meta = build_meta(sub);

  json summary;
  summary["meta"] = meta;
  summary["runs_ok"] = r.runs.size();
  summary["failures"] = r.failures;
  summary["failure_reasons"] = r.failure_reasons;
  summary["means"] = {{"rs0", r.mean_rs0}, {"rs1", r.mean_rs1}};
  summary["medians"] = {{"rs0", r.median_rs0}, {"rs1", r.median_rs1}};
  summary["frac_positive"] = {{"rs0", r.frac_positive_rs0}, {"rs1", r.frac_positive_rs1}};
  summary["p_value"] = r.p_value;
  summary["test_name"] = r.test_name;
  const std::string summary_text = summary.dump(2) + "\n";

  if (!o.out.empty()) {
    std::string body = csv_meta_line(meta) + "run,rs0,rs1\n";
    for (const auto& run : r.runs) {
      body += std::to_string(run.run) + "," + num(run.rs0) + "," + num(run.rs1) + "\n";
    }
    write_atomic(o.out, body);
  }
  if (!o.summary.empty()) write_atomic(o.summary, summary_text);
  out << summary_text;
  return kOk;
}

// ---- option registration -------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "master seed")->envname("CCON_SEED");
  sub->add_option("--jobs", o.jobs, "worker threads; output does not depend on it")
      ->envname("CCON_JOBS")
      ->check(CLI::Range(1u, 1024u));
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--config", o.config, "key = value file; flags on the command line win");
}

void add_graph_source(CLI::App* sub, Options& o, bool allow_input) {
  CLI::Option* er = sub->add_option("--er", o.er, "Erdos-Renyi graph with N nodes and L edges")->expected(2);
  CLI::Option* sf = sub->add_option("--sf", o.sf, "scale-free graph with N nodes and L edges")->expected(2);
  sub->add_option("--gamma", o.gamma, "scale-free exponent (> 2)");
  er->excludes(sf);
  if (!allow_input) return;
  CLI::Option* input = sub->add_option("--input", o.input, "graph file");
  sub->add_option("--format", o.format, "input format")->check(CLI::IsMember({"auto", "edgelist", "pajek"}));
  sub->add_option("--index-base", o.index_base, "first node id in edge lists")->check(CLI::IsMember({0, 1}));
  input->excludes(er)->excludes(sf);
}

void add_estimator(CLI::App* sub, Options& o) {
  sub->add_option("--delta", o.est.delta_window, "stop after this many quiet iterations")->check(CLI::PositiveNumber);
  sub->add_option("--epsilon", o.est.epsilon, "relative change counted as quiet")->check(CLI::NonNegativeNumber);
  sub->add_option("--t-min", o.est.t_min, "minimum iterations")->check(CLI::PositiveNumber);
  sub->add_option("--t-max", o.est.t_max, "iteration cap (0: 100 N)")->check(CLI::NonNegativeNumber);
  sub->add_option("--walk-factor", o.est.walk_length_factor, "exchange-walk steps per matched edge")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--functional", o.functional, "convergence quantity")
      ->check(CLI::IsMember({"max-territory", "contribution-sum"}));
}

void add_walk(CLI::App* sub, Options& o) {
  sub->add_option("--walk-factor", o.est.walk_length_factor, "exchange-walk steps per matched edge")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--sample", o.sample, "iteration index whose sample is shown")->check(CLI::PositiveNumber);
}

void add_scheme_inputs(CLI::App* sub, Options& o) {
  sub->add_option("--scheme", o.schemes, "ranking scheme");
  sub->add_option("--estimates", o.estimates, "CSV from `estimate` instead of estimating here");
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  if (args.empty()) throw Failure(kUsage, "usage", "missing subcommand; expected one of generate, stats, drivers, "
                                                   "cactus, estimate, dim, rank, curve, ensemble, randomize");
  const std::string& name = args[0];
  if (name != "-h" && name != "--help" &&
      std::find(kSubcommands.begin(), kSubcommands.end(), name) == kSubcommands.end()) {
    throw Failure(kUnknownSubcommand, "unknown-subcommand", "unknown subcommand: " + name);
  }
  if (const auto path = flag_value(args, "config")) {
    auto extra = config_args(*path, args);
    args.insert(args.begin() + 1, extra.begin(), extra.end());
  }

  Options o;
  CLI::App app{"control contribution of nodes in directed networks", "ccon"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  std::map<std::string, CLI::App*> subs;
  auto add = [&](const std::string& n, const std::string& desc) {
    CLI::App* s = app.add_subcommand(n, desc);
    subs[n] = s;
    add_common(s, o);
    return s;
  };

  CLI::App* generate = add("generate", "write a synthetic graph as an edge list");
  add_graph_source(generate, o, false);
  generate->add_option("--out-base", o.out_base, "first node id in the output")->check(CLI::IsMember({0, 1}));

  CLI::App* stats = add("stats", "n,l,k,r,c of a graph");
  add_graph_source(stats, o, true);

  CLI::App* drivers = add("drivers", "driver set of one sampled maximum matching");
  add_graph_source(drivers, o, true);
  add_walk(drivers, o);

  CLI::App* cactus = add("cactus", "stems, cycles and territories of one sample");
  add_graph_source(cactus, o, true);
  add_walk(cactus, o);

  CLI::App* est = add("estimate", "control capacity, range and contribution per node");
  add_graph_source(est, o, true);
  add_estimator(est, o);
  est->add_option("--sidecar", o.sidecar, "JSON with trace and convergence (default <out>.json)");
  est->add_option("--histograms", o.histogram_bins, "bins for C histograms in the sidecar (0: none)")
      ->check(CLI::NonNegativeNumber);
  est->add_option("--compare-rewired", o.compare_rewired,
                  "also estimate a degree-preserving rewiring with this swap factor and compare")
      ->check(CLI::NonNegativeNumber);

  CLI::App* dim = add("dim", "controllable subspace dimension for a driver set");
  add_graph_source(dim, o, true);
  dim->add_option("--drivers", o.drivers, "comma list or file of driver ids");
  dim->add_option("--trials", o.trials, "random weightings")->check(CLI::PositiveNumber);
  dim->add_option("--method", o.method, "rank method")->check(CLI::IsMember({"generic", "exact"}));

  CLI::App* rank = add("rank", "order nodes under a ranking scheme");
  add_graph_source(rank, o, true);
  add_estimator(rank, o);
  add_scheme_inputs(rank, o);

  CLI::App* curve = add("curve", "n_b against n_c for ranking schemes");
  add_graph_source(curve, o, true);
  add_estimator(curve, o);
  add_scheme_inputs(curve, o);
  curve->add_option("--grid-density", o.grid_density, "grid points up to n_d")->check(CLI::PositiveNumber);
  curve->add_option("--grid", o.grid, "explicit comma list of n_c values");
  curve->add_option("--trials", o.trials, "random weightings per rank")->check(CLI::PositiveNumber);
  curve->add_option("--repetitions", o.repetitions, "orders averaged for the random scheme")
      ->check(CLI::PositiveNumber);

  CLI::App* ensemble = add("ensemble", "RS0/RS1 over an ensemble of synthetic graphs");
  add_graph_source(ensemble, o, false);
  add_estimator(ensemble, o);
  ensemble->add_option("--runs", o.runs, "ensemble size")->check(CLI::Range(2, 1000000));
  ensemble->add_option("--grid-density", o.grid_density, "grid points up to n_d")->check(CLI::PositiveNumber);
  ensemble->add_option("--trials", o.trials, "random weightings per rank")->check(CLI::PositiveNumber);
  ensemble->add_option("--test", o.test, "significance test")->check(CLI::IsMember({"sign", "wilcoxon"}));
  ensemble->add_option("--summary", o.summary, "also write the JSON summary here");

  CLI::App* randomize = add("randomize", "degree-preserving rewiring");
  add_graph_source(randomize, o, true);
  randomize->add_option("--swap-factor", o.swap_factor, "attempted swaps per edge")->check(CLI::PositiveNumber);
  randomize->add_option("--out-base", o.out_base, "first node id in the output")->check(CLI::IsMember({0, 1}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ExcludesError& e) {
    throw Failure(kConflictingFlags, "conflicting-flags", e.what());
  } catch (const CLI::ParseError& e) {
    throw Failure(kUsage, "usage", e.what());
  }

  if (*generate) return cmd_generate(o, *generate, out);
  if (*stats) return cmd_stats(o, *stats, out);
  if (*drivers) return cmd_drivers(o, *drivers, out);
  if (*cactus) return cmd_cactus(o, *cactus, out);
  if (*est) return cmd_estimate(o, *est, out);
  if (*dim) return cmd_dim(o, *dim, out);
  if (*rank) return cmd_rank(o, *rank, out);
  if (*curve) return cmd_curve(o, *curve, out);
  if (*ensemble) return cmd_ensemble(o, *ensemble, out);
  if (*randomize) return cmd_randomize(o, *randomize, out);
  throw Failure(kUsage, "usage", "no subcommand");
}

int report(std::ostream& err, int code, const std::string& kind, const std::string& message,
           std::size_t line = 0) {
  json e;
  e["error"] = kind;
  e["message"] = message;
  if (line > 0) e["line"] = line;
  e["exit_code"] = code;
  err << e.dump() << "\n";
  return code;
}

std::string_view parse_kind_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::malformed: return "malformed";
    case ParseErrorKind::self_loop: return "self-loop";
    case ParseErrorKind::out_of_range: return "out-of-range";
    case ParseErrorKind::missing_header: return "missing-header";
    case ParseErrorKind::undirected: return "undirected";
  }
  return "parse";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Failure& f) {
    return report(err, f.code(), f.kind(), f.what());
  } catch (const ParseError& e) {
    return report(err, kParse, "parse:" + std::string(parse_kind_name(e.kind())), e.what(), e.line());
  } catch (const EnsembleAborted& e) {
    return report(err, kEnsembleAborted, "ensemble-aborted", e.what());
  } catch (const GenerationError& e) {
    return report(err, kInvalidParameter, "generation-failed", e.what());
  } catch (const std::invalid_argument& e) {
    return report(err, kInvalidParameter, "invalid-parameter", e.what());
  } catch (const std::exception& e) {
    return report(err, kInternal, "internal", e.what());
  }
}

}  // namespace ccon::cli
