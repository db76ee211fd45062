#pragma once
// Batch experiment runner over the algsearch library.
//
//   algsearch <subcommand> [options] [--config experiment.toml]
//
// Exit status: 0 all reports pass, 1 a bound was violated, 2 bad configuration
// (including cap and hypothesis violations).

#include "algsearch/algsearch.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace algsearch::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

struct ExperimentConfig {
  std::string command;

  // search model
  std::vector<std::string> algorithms{"uniform"};
  std::string alpha = "per-query";
  std::size_t steps = 1;
  std::string mode = "exact";
  std::size_t runs = 1000;
  std::uint64_t seed = 0;
  std::string arithmetic = "rational";
  std::uint64_t tree_cap = kDefaultTreeCap;
  std::size_t enumeration_cap = kDefaultEnumerationCap;

  // search space, targets and resources
  std::size_t n = 4;
  std::uint32_t v = 2;
  std::size_t k = 1;
  std::vector<std::string> resources;
  std::size_t random_resources = 0;
  std::vector<std::size_t> target;
  std::vector<std::string> family;
  std::vector<std::string> weights;

  // thresholds
  std::string q_min = "0.5";
  std::vector<std::string> q_grid;
  int b = 3;
  std::size_t samples = 100'000;

  // joint distributions
  std::string joint_file;
  std::string joint_fixture = "random";

  // lemmata
  std::string lemma = "all";
  std::size_t ss_n = 10, ss_d = 3;
  std::size_t ba_n = 16, ba_b = 4;
  std::size_t ms_n = 10, ms_k = 3;
  std::string ms_eps = "0.3";
  bool sweep = false;

  // outputs
  std::string csv;
  std::string rows;
  std::string curve;
};

namespace detail {

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Writes to `path`, or to `fallback` when the path is "-".
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) return;
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  explicit operator bool() const { return stream_ != nullptr; }
  std::ostream& operator*() { return *stream_; }

  void row(std::initializer_list<std::string> cells) {
    if (!stream_) return;
    bool first = true;
    for (const std::string& c : cells) {
      if (!first) *stream_ << ',';
      *stream_ << csv_field(c);
      first = false;
    }
    *stream_ << '\n';
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

// Collects reports, prints summaries, and derives the exit status.
class ReportLog {
 public:
  ReportLog(std::ostream& out, std::ostream& err, CsvSink& csv, CsvSink& rows)
      : out_(out), err_(err), csv_(csv), rows_(rows) {
    csv_.row({"theorem", "instance", "mode", "observed", "bound", "slack", "passed"});
    rows_.row({"instance", "phi", "qualifies"});
  }

  void add(const VerificationReport& r) {
    out_ << r.summary() << '\n';
    if (!r.passed) {
      ++failures_;
      err_ << "bound violated: " << r.summary() << '\n';
    }
    csv_.row({r.theorem, r.instance, r.mode, format_number(r.observed), format_number(r.bound), format_number(r.slack),
              r.passed ? "true" : "false"});
    for (const InstanceRow& row : r.rows) rows_.row({row.instance, format_number(row.phi), row.qualifies ? "true" : "false"});
  }

  int status() const { return failures_ == 0 ? kExitPass : kExitViolation; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  CsvSink& csv_;
  CsvSink& rows_;
  std::size_t failures_ = 0;
};

inline std::vector<std::string> default_grid() {
  return {"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9", "1"};
}

// Two-column fraction-vs-threshold curve, one segment per algorithm; fails
// the run if a segment increases.
class Curve {
 public:
  Curve(const std::string& path, std::ostream& fallback, std::string threshold_name)
      : sink_(path, fallback), name_(std::move(threshold_name)) {}

  bool enabled() const { return static_cast<bool>(sink_); }
  void begin_segment() { segments_.emplace_back(); }
  void add(double threshold, double fraction) { segments_.back().emplace_back(threshold, fraction); }

  bool finish(std::ostream& err) {
    if (!sink_) return true;
    sink_.row({name_, "fraction"});
    bool monotone = true;
    for (const auto& points : segments_) {
      for (const auto& [x, y] : points) sink_.row({format_number(x), format_number(y)});
      monotone = monotone && nonincreasing_in_threshold(points);
    }
    if (!monotone) err << "curve is not nonincreasing in " << name_ << '\n';
    return monotone;
  }

 private:
  CsvSink sink_;
  std::string name_;
  std::vector<std::vector<std::pair<double, double>>> segments_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

template <Scalar S>
class Runner {
 public:
  Runner(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int run() {
    validate();
    const std::string& c = cfg_.command;
    if (c == "simulate") return simulate();
    if (c == "strategy") return strategy();
    if (c == "success") return success();
    if (c == "bias") return bias_command();
    if (c == "check-lemmas") return lemmas();

    detail::CsvSink csv(cfg_.csv, out_);
    detail::CsvSink rows(cfg_.rows, out_);
    detail::ReportLog log(text_, err_, csv, rows);
    bool curve_ok = true;
    if (c == "verify-nfl") {
      verify_nfl_command(log);
    } else if (c == "verify-favorable-targets") {
      curve_ok = favorable_targets(log);
    } else if (c == "verify-famine-targets" || c == "verify-forte" || c == "verify-famine-resources") {
      curve_ok = famine(log);
    } else if (c == "verify-lud") {
      lud(log);
    } else if (c == "verify-futility") {
      futility(log);
    } else if (c == "verify-bias-measure") {
      bias_measure(log);
    } else {
      throw std::invalid_argument("unknown subcommand '" + c + "'");
    }
    return curve_ok ? log.status() : kExitViolation;
  }

 private:
  EstimationMode mode() const {
    if (cfg_.mode == "exact") return EstimationMode::exact(cfg_.tree_cap);
    if (cfg_.mode == "monte-carlo") return EstimationMode::monte_carlo(cfg_.runs, cfg_.seed);
    throw std::invalid_argument("--mode must be exact or monte-carlo, got '" + cfg_.mode + "'");
  }

  // Checks caps and shapes before any heavy work starts.
  void validate() const {
    if (cfg_.n == 0 || cfg_.n > kMaxSearchSpace) throw std::invalid_argument("--n must lie in [1, 64]");
    if (cfg_.v == 0) throw std::invalid_argument("--v must be positive");
    if (cfg_.steps == 0) throw std::invalid_argument("--steps must be at least 1");
    if (cfg_.algorithms.empty()) throw std::invalid_argument("no algorithm given (--alg)");
    const EstimationMode m = mode();
    if (m.is_exact() && cfg_.command != "check-lemmas" && cfg_.command != "simulate") {
      algsearch::detail::require_tree_cap(cfg_.n, cfg_.steps, m.tree_cap);
    }
    if (!m.is_exact() && cfg_.runs == 0) throw std::invalid_argument("--runs must be at least 1");
    for (const std::string& a : cfg_.algorithms) parse_algorithm_spec(a);
    parse_alpha<S>(cfg_.alpha).weights(cfg_.steps);
  }

  DecomposableMetric<S> metric(const std::string& alg) const {
    return memoize(general_metric(make_algorithm<S>(alg), parse_alpha<S>(cfg_.alpha), cfg_.steps, mode()));
  }

  std::vector<InformationResource> resource_family() const {
    std::vector<InformationResource> out;
    if (!cfg_.resources.empty()) {
      for (const std::string& hex : cfg_.resources) out.push_back(InformationResource::from_hex(hex, cfg_.n, cfg_.v));
      return out;
    }
    if (cfg_.random_resources > 0) {
      // Distinct draws; repeats are skipped and the stream continues.
      const double space = std::pow(static_cast<double>(cfg_.v), static_cast<double>(cfg_.n));
      if (static_cast<double>(cfg_.random_resources) > space) {
        throw std::invalid_argument("--random-resources exceeds the number of distinct resources");
      }
      const std::uint64_t stream = derive_seed(cfg_.seed, 1);
      std::set<std::string> seen;
      for (std::uint64_t i = 0; out.size() < cfg_.random_resources; ++i) {
        InformationResource f = random_resource(cfg_.n, cfg_.v, derive_seed(stream, i));
        if (seen.insert(f.hex()).second) out.push_back(std::move(f));
      }
      return out;
    }
    return collect_resources(cfg_.n, cfg_.v);
  }

  TargetSet target() const {
    if (cfg_.target.empty()) throw std::invalid_argument("--target is required");
    return TargetSet::from_indices(cfg_.n, cfg_.target);
  }

  TargetFamily family() const {
    if (cfg_.family.empty()) return TargetFamily(cfg_.n, collect_targets(cfg_.n, cfg_.k, cfg_.enumeration_cap));
    std::vector<TargetSet> members;
    for (const std::string& m : cfg_.family) members.emplace_back(cfg_.n, std::stoull(m, nullptr, 0));
    return TargetFamily(cfg_.n, std::move(members));
  }

  std::vector<S> grid() const {
    std::vector<S> out;
    for (const std::string& q : cfg_.q_grid.empty() ? detail::default_grid() : cfg_.q_grid) out.push_back(parse_scalar<S>(q));
    return out;
  }

  // --- computations ------------------------------------------------------

  int simulate() {
    const auto resources = resource_family();
    detail::CsvSink csv(cfg_.csv, out_);
    csv.row({"algorithm", "resource", "run", "step", "element", "value"});
    const std::size_t runs = cfg_.mode == "monte-carlo" ? cfg_.runs : 1;
    for (const std::string& name : cfg_.algorithms) {
      const SearchAlgorithm<S> alg = make_algorithm<S>(name);
      for (const InformationResource& f : resources) {
        for (std::size_t r = 0; r < runs; ++r) {
          const SearchTrace<S> trace = run_search(alg, f, cfg_.steps, derive_seed(cfg_.seed, r));
          text_ << alg.name << " f=" << f.hex() << " run=" << r << ':';
          for (std::size_t i = 0; i < trace.history.size(); ++i) {
            const SearchStep& s = trace.history[i];
            text_ << ' ' << s.index << '/' << s.value;
            csv.row({alg.name, f.hex(), std::to_string(r), std::to_string(i + 1), std::to_string(s.index), std::to_string(s.value)});
          }
          text_ << '\n';
        }
      }
    }
    return kExitPass;
  }

  int strategy() {
    const auto resources = resource_family();
    detail::CsvSink csv(cfg_.csv, out_);
    csv.row({"algorithm", "resource", "element", "probability", "std_error"});
    for (const std::string& name : cfg_.algorithms) {
      const SearchAlgorithm<S> alg = make_algorithm<S>(name);
      const AlphaWeighting<S> alpha = parse_alpha<S>(cfg_.alpha);
      for (const InformationResource& f : resources) {
        const StrategyEstimate<S> est = strategy_vector(alg, f, alpha, cfg_.steps, mode());
        text_ << alg.name << " f=" << f.hex() << " P=(";
        for (std::size_t j = 0; j < est.vector.size(); ++j) {
          text_ << (j ? "," : "") << to_string(est.vector[j]);
          csv.row({alg.name, f.hex(), std::to_string(j), detail::format_number(to_double(est.vector[j])),
                   detail::format_number(est.std_error[j])});
        }
        text_ << ")\n";
      }
    }
    return kExitPass;
  }

  int success() {
    const auto resources = resource_family();
    const TargetSet t = target();
    const S p = ratio<S>(static_cast<std::int64_t>(t.cardinality()), static_cast<std::int64_t>(cfg_.n));
    detail::CsvSink csv(cfg_.csv, out_);
    csv.row({"algorithm", "resource", "target", "phi", "active_information"});
    for (const std::string& name : cfg_.algorithms) {
      const DecomposableMetric<S> m = metric(name);
      for (const InformationResource& f : resources) {
        const S phi = m.success(t, f);
        const double info = active_information(phi, p);
        text_ << m.label << " f=" << f.hex() << " phi=" << to_string(phi) << " I=" << detail::format_number(info) << '\n';
        csv.row({m.label, f.hex(), "0x" + hex(t.mask()), detail::format_number(to_double(phi)), detail::format_number(info)});
      }
    }
    return kExitPass;
  }

  ResourceDistribution<S> distribution(std::vector<InformationResource> resources) const {
    if (cfg_.weights.empty()) return ResourceDistribution<S>::uniform(std::move(resources));
    std::vector<S> w;
    for (const std::string& x : cfg_.weights) w.push_back(parse_scalar<S>(x));
    return ResourceDistribution<S>(std::move(resources), std::move(w));
  }

  int bias_command() {
    const ResourceDistribution<S> d = distribution(resource_family());
    const TargetSet t = target();
    detail::CsvSink csv(cfg_.csv, out_);
    csv.row({"algorithm", "resource", "weight", "phi"});
    for (const std::string& name : cfg_.algorithms) {
      const DecomposableMetric<S> m = metric(name);
      for (std::size_t i = 0; i < d.size(); ++i) {
        csv.row({m.label, d.support()[i].hex(), detail::format_number(to_double(d.weights()[i])),
                 detail::format_number(to_double(m.success(t, d.support()[i])))});
      }
      text_ << m.label << " t=0x" << hex(t.mask()) << " marginal=" << to_string(marginal_success(d, t, m))
           << " bias=" << to_string(algsearch::bias(d, t, m)) << '\n';
    }
    return kExitPass;
  }

  void verify_nfl_command(detail::ReportLog& log) {
    if (cfg_.algorithms.size() < 2) throw std::invalid_argument("verify-nfl needs at least two --alg values");
    const TargetFamily tau = family();
    if (!is_closed_under_permutation(tau)) throw HypothesisError("verify-nfl requires a target family closed under permutation");
    const auto resources = resource_family();
    std::vector<DecomposableMetric<S>> metrics;
    for (const std::string& a : cfg_.algorithms) metrics.push_back(metric(a));
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      for (std::size_t j = i + 1; j < metrics.size(); ++j) {
        VerificationReport r = verify_nfl(metrics[i], metrics[j], tau, resources);
        r.mode += "/" + mode().label();
        log.add(r);
      }
    }
  }

  bool favorable_targets(detail::ReportLog& log) {
    if (cfg_.b < 3) throw HypothesisError("verify-favorable-targets requires b ≥ 3 (got b = " + std::to_string(cfg_.b) + ")");
    SearchSpace(cfg_.n).require_enumerable(cfg_.enumeration_cap);
    const auto resources = resource_family();
    detail::Curve curve(cfg_.curve, out_, "b");
    for (const std::string& a : cfg_.algorithms) {
      const DecomposableMetric<S> m = metric(a);
      for (const InformationResource& f : resources) {
        log.add(fraction_favorable_targets(m, f, static_cast<std::size_t>(cfg_.b), !cfg_.rows.empty(), cfg_.enumeration_cap));
      }
      if (!curve.enabled()) continue;
      // Curves average over resources.
      curve.begin_segment();
      for (std::size_t b = 3; b <= std::min<std::size_t>(cfg_.n, 62); ++b) {
        double fraction = 0.0;
        for (const InformationResource& f : resources) {
          const VerificationReport r = fraction_favorable_targets(m, f, b, false, cfg_.enumeration_cap);
          fraction += r.observed;
          if (!r.passed) log.add(r);
        }
        curve.add(static_cast<double>(b), fraction / static_cast<double>(resources.size()));
      }
    }
    return curve.finish(err_);
  }

  bool famine(detail::ReportLog& log) {
    const auto resources = resource_family();
    const S q = parse_scalar<S>(cfg_.q_min);
    const bool rows = !cfg_.rows.empty();
    detail::Curve curve(cfg_.curve, out_, "q_min");
    for (const std::string& a : cfg_.algorithms) {
      const DecomposableMetric<S> m = metric(a);
      auto one = [&](const S& threshold, bool with_rows) {
        if (cfg_.command == "verify-famine-targets") {
          std::vector<VerificationReport> out;
          for (const InformationResource& f : resources) {
            out.push_back(famine_favorable_targets(m, f, cfg_.k, threshold, with_rows, cfg_.enumeration_cap));
          }
          return out;
        }
        if (cfg_.command == "verify-forte") {
          return std::vector<VerificationReport>{famine_of_forte(m, resources, cfg_.k, threshold, with_rows, cfg_.enumeration_cap)};
        }
        return std::vector<VerificationReport>{famine_favorable_resources(m, resources, target(), threshold, with_rows)};
      };
      for (const VerificationReport& r : one(q, rows)) log.add(r);
      if (!curve.enabled()) continue;
      curve.begin_segment();
      for (const S& threshold : grid()) {
        double fraction = 0.0;
        const auto reports = one(threshold, false);
        for (const VerificationReport& r : reports) {
          fraction += r.observed;
          if (!r.passed) log.add(r);
        }
        curve.add(to_double(threshold), fraction / static_cast<double>(reports.size()));
      }
    }
    return curve.finish(err_);
  }

  void lud(detail::ReportLog& log) {
    const JointTF joint = make_joint();
    for (const std::string& a : cfg_.algorithms) log.add(learning_under_dependence(joint, metric(a)));
  }

  JointTF make_joint() const {
    if (!cfg_.joint_file.empty()) {
      std::ifstream in(cfg_.joint_file);
      if (!in) throw std::invalid_argument("cannot open joint file '" + cfg_.joint_file + "'");
      return load_joint_csv(in, cfg_.n, cfg_.v);
    }
    if (cfg_.joint_fixture == "informative") {
      if (cfg_.v != 2) throw std::invalid_argument("the informative joint uses binary resources (--v 2)");
      return informative_joint(cfg_.n);
    }
    if (cfg_.joint_fixture == "independent") return independent_joint(cfg_.n, cfg_.k, resource_family());
    if (cfg_.joint_fixture == "random") return random_joint(cfg_.n, cfg_.k, resource_family(), derive_seed(cfg_.seed, 2));
    throw std::invalid_argument("--joint-fixture must be random, independent or informative");
  }

  void futility(detail::ReportLog& log) {
    const ResourceDistribution<S> d = distribution(resource_family());
    const TargetSet t = target();
    for (const std::string& a : cfg_.algorithms) {
      const DecomposableMetric<S> m = metric(a);
      // Marginal success through the black-box history-tree route when the
      // tree is exact, so the identity is checked across two computations.
      SuccessFunctional<S> direct;
      if (mode().is_exact()) {
        direct = [alg = make_algorithm<S>(a), alpha = parse_alpha<S>(cfg_.alpha), steps = cfg_.steps,
                  cap = cfg_.tree_cap](const TargetSet& target, const InformationResource& f) {
          return expected_success(alg, f, target, alpha, steps, cap);
        };
      }
      log.add(futility_check(m, d, t, direct));
    }
  }

  void bias_measure(detail::ReportLog& log) {
    const auto resources = resource_family();
    const TargetSet t = target();
    const double q = to_double(parse_scalar<S>(cfg_.q_min));
    for (const std::string& a : cfg_.algorithms) {
      log.add(favorable_bias_measure(metric(a), resources, t, q, cfg_.samples, derive_seed(cfg_.seed, 3)));
    }
  }

  int lemmas() {
    detail::CsvSink csv(cfg_.csv, out_);
    detail::CsvSink rows("", out_);
    detail::ReportLog log(text_, err_, csv, rows);
    const std::string& which = cfg_.lemma;
    if (which != "all" && which != "sauer-shelah" && which != "binomial-approx" && which != "max-satisfying-vectors") {
      throw std::invalid_argument("--lemma must be all, sauer-shelah, binomial-approx or max-satisfying-vectors");
    }
    const bool all = which == "all";
    if (all || which == "sauer-shelah") {
      if (cfg_.sweep) {
        for (std::size_t n = 1; n <= 64; ++n) {
          for (std::size_t d = 1; d <= std::min<std::size_t>(n, 32); ++d) log.add(check_sauer_shelah(n, d));
        }
      } else {
        log.add(check_sauer_shelah(cfg_.ss_n, cfg_.ss_d));
      }
    }
    if (all || which == "binomial-approx") {
      if (cfg_.sweep) {
        for (std::size_t b = 3; b <= 4; ++b) {
          for (std::size_t n = std::size_t{1} << b; n <= 64; ++n) log.add(check_binomial_approx(n, b));
        }
      } else {
        log.add(check_binomial_approx(cfg_.ba_n, cfg_.ba_b));
      }
    }
    if (all || which == "max-satisfying-vectors") {
      if (cfg_.sweep) {
        for (std::size_t n = 1; n <= 12; ++n) {
          for (std::size_t k = 1; k <= n; ++k) {
            for (int e = 0; e <= 10; ++e) {
              log.add(check_max_satisfying_vectors<S>(k, ProbabilityVector<S>::uniform(n), ratio<S>(e, 10), cfg_.enumeration_cap));
            }
          }
        }
      } else {
        log.add(check_max_satisfying_vectors<S>(cfg_.ms_k, ProbabilityVector<S>::uniform(cfg_.ms_n), parse_scalar<S>(cfg_.ms_eps),
                                                cfg_.enumeration_cap));
      }
    }
    return log.status();
  }

  static std::string hex(std::uint64_t mask) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(mask));
    return buf;
  }

  const ExperimentConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::ostream null_{nullptr};
  // Human-readable lines are dropped when a CSV goes to stdout.
  std::ostream& text_ = (cfg_.csv == "-" || cfg_.rows == "-" || cfg_.curve == "-") ? null_ : out_;
};

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

namespace detail {

inline void add_model_options(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--alg", c.algorithms, "Algorithm spec(s), e.g. uniform, point-mass:index=0, greedy:mass=3/4")
      ->capture_default_str();
  sub->add_option("--alpha", c.alpha, "per-query | final-query | geometric[:gamma=x] | custom:a,b,...")->capture_default_str();
  sub->add_option("--steps", c.steps, "Queries per search")->capture_default_str();
  sub->add_option("--mode", c.mode, "exact | monte-carlo")->capture_default_str();
  sub->add_option("--runs", c.runs, "Monte-Carlo runs")->capture_default_str();
  sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sub->add_option("--arithmetic", c.arithmetic, "rational | double")->capture_default_str();
  sub->add_option("--tree-cap", c.tree_cap, "Largest history tree walked in exact mode")->capture_default_str();
  sub->add_option("--enum-cap", c.enumeration_cap, "Largest n for target enumeration")->capture_default_str();
  sub->add_option("--n", c.n, "Search space size")->capture_default_str();
  sub->add_option("--v", c.v, "Resource alphabet size")->capture_default_str();
  sub->add_option("--resources", c.resources, "Resources as hex encodings (default: every resource)");
  sub->add_option("--random-resources", c.random_resources, "Draw this many seeded random resources instead");
  sub->add_option("--csv", c.csv, "CSV output path ('-' for stdout)");
}

inline void add_target_option(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--target", c.target, "Target elements, e.g. 0,1")->delimiter(',');
}

inline void add_threshold_options(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--q-min", c.q_min, "Minimum acceptable success probability")->capture_default_str();
  sub->add_option("--q-grid", c.q_grid, "Thresholds for --curve (default 0.1,...,1)")->delimiter(',');
  sub->add_option("--curve", c.curve, "Fraction-vs-threshold CSV path");
  sub->add_option("--rows", c.rows, "Per-instance CSV path");
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  CLI::App app{"Conservation-law and famine-bound experiments for black-box search", "algsearch"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI experiment file; command-line flags override it");

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"simulate", "Run seeded searches and list their queries"},
      {"strategy", "Strategy vector of each algorithm on each resource"},
      {"success", "Success probability and active information for a target"},
      {"bias", "Marginal success and bias of a resource distribution"},
      {"verify-nfl", "Conservation over a permutation-closed target family"},
      {"verify-favorable-targets", "Fraction of targets with at least b bits of active information"},
      {"verify-famine-targets", "Fraction of k-targets reaching q_min for a fixed resource"},
      {"verify-forte", "Fraction of (target, resource) pairs reaching q_min"},
      {"verify-lud", "Success under dependence between target and resource"},
      {"verify-famine-resources", "Fraction of resources reaching q_min for a fixed target"},
      {"verify-futility", "Bias-free resource distributions give baseline success"},
      {"verify-bias-measure", "Simplex measure of favorably biased distributions"},
      {"check-lemmas", "Counting lemmata in exact integer arithmetic"},
  };
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->configurable();
    sub->callback([&cfg, name = std::string(e.name)] { cfg.command = name; });
    const std::string name = e.name;
    if (name == "check-lemmas") {
      sub->add_option("--lemma", cfg.lemma, "all | sauer-shelah | binomial-approx | max-satisfying-vectors")->capture_default_str();
      sub->add_option("--ss-n", cfg.ss_n)->capture_default_str();
      sub->add_option("--ss-d", cfg.ss_d)->capture_default_str();
      sub->add_option("--ba-n", cfg.ba_n)->capture_default_str();
      sub->add_option("--ba-b", cfg.ba_b)->capture_default_str();
      sub->add_option("--ms-n", cfg.ms_n)->capture_default_str();
      sub->add_option("--ms-k", cfg.ms_k)->capture_default_str();
      sub->add_option("--ms-eps", cfg.ms_eps)->capture_default_str();
      sub->add_flag("--sweep", cfg.sweep, "Run the full parameter grids");
      sub->add_option("--arithmetic", cfg.arithmetic, "rational | double")->capture_default_str();
      sub->add_option("--enum-cap", cfg.enumeration_cap)->capture_default_str();
      sub->add_option("--csv", cfg.csv, "CSV output path ('-' for stdout)");
      continue;
    }
    detail::add_model_options(sub, cfg);
    if (name == "success" || name == "bias" || name == "verify-famine-resources" || name == "verify-futility" ||
        name == "verify-bias-measure") {
      detail::add_target_option(sub, cfg);
    }
    if (name == "bias" || name == "verify-futility") {
      sub->add_option("--weights", cfg.weights, "Resource weights (default uniform)")->delimiter(',');
    }
    if (name == "verify-nfl") {
      sub->add_option("--k", cfg.k, "Target size for the full C(n,k) family")->capture_default_str();
      sub->add_option("--family", cfg.family, "Explicit target family as bit masks");
      sub->add_option("--rows", cfg.rows, "Per-instance CSV path");
    }
    if (name == "verify-favorable-targets") {
      sub->add_option("--b", cfg.b, "Active-information threshold in bits")->capture_default_str();
      sub->add_option("--curve", cfg.curve, "Fraction-vs-b CSV path");
      sub->add_option("--rows", cfg.rows, "Per-instance CSV path");
    }
    if (name == "verify-famine-targets" || name == "verify-forte" || name == "verify-famine-resources") {
      detail::add_threshold_options(sub, cfg);
    }
    if (name == "verify-famine-targets" || name == "verify-forte" || name == "verify-lud") {
      sub->add_option("--k", cfg.k, "Target size")->capture_default_str();
    }
    if (name == "verify-lud") {
      sub->add_option("--joint", cfg.joint_file, "Joint CSV (target,resource,probability)");
      sub->add_option("--joint-fixture", cfg.joint_fixture, "random | independent | informative")->capture_default_str();
    }
    if (name == "verify-bias-measure") {
      sub->add_option("--q-min", cfg.q_min, "Minimum bias")->capture_default_str();
      sub->add_option("--samples", cfg.samples, "Simplex samples (at least 10000)")->capture_default_str();
    }
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (cfg.arithmetic == "rational") return Runner<Rational>(cfg, out, err).run();
    if (cfg.arithmetic == "double") return Runner<double>(cfg, out, err).run();
    throw std::invalid_argument("--arithmetic must be rational or double, got '" + cfg.arithmetic + "'");
  } catch (const CapError& e) {
    err << "cap violation: " << e.what() << '\n';
  } catch (const HypothesisError& e) {
    err << "hypothesis violation: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << '\n';
  }
  return kExitConfig;
}

}  // namespace algsearch::cli
