#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "shadowlab/cli/config.hpp"
#include "shadowlab/cli/csv.hpp"
#include "shadowlab/cli/table.hpp"
#include "shadowlab/deciders.hpp"
#include "shadowlab/induced.hpp"
#include "shadowlab/json_io.hpp"
#include "shadowlab/lifting.hpp"
#include "shadowlab/pwl.hpp"
#include "shadowlab/random_system.hpp"

namespace shadowlab::cli {

inline const std::vector<std::string> kVerdictColumns = {"system_id", "property",        "eps",
                                                         "delta",     "verdict",         "witness_or_cex",
                                                         "states_explored", "runtime_ms"};

namespace detail {

inline std::string system_id(const std::string& path) { return std::filesystem::path(path).stem().string(); }

inline std::vector<std::string> violation_listing(const FiniteMetricSpace& space) {
  std::vector<std::string> out;
  for (const auto& v : validate_space(space)) out.push_back(v.message);
  return out;
}

/// Parses and checks the metric axioms.
inline FiniteMetricSystem load_checked(const std::string& path) {
  FiniteMetricSystem sys = load_system(path);
  auto listing = violation_listing(sys.space());
  if (!listing.empty()) throw InvalidInput(path + ": metric axioms violated", std::move(listing));
  return sys;
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::string ms(bool timing) const {
    if (!timing) return "-";
    using namespace std::chrono;
    return std::to_string(duration_cast<milliseconds>(steady_clock::now() - start_).count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Row {
  std::vector<std::string> fields;
};

/// Collects rows, sorts them by system id (stable) and writes them.
class Report {
 public:
  Report(const RunConfig& cfg, std::vector<std::string> columns) : cfg_(cfg), columns_(std::move(columns)) {
    if (cfg_.verify_certificates) columns_.push_back("certificate");
  }

  void add(std::vector<std::string> fields) { rows_.push_back({std::move(fields)}); }
  void note(std::string line) { notes_.push_back(std::move(line)); }
  void trailer(std::string line) { trailers_.push_back(std::move(line)); }

  /// Records a certificate outcome in the last row.
  void certify(const CertificateCheck& c) {
    if (!cfg_.verify_certificates) return;
    rows_.back().fields.push_back(c.ok ? "ok" : "FAILED: " + c.reason);
    if (!c.ok) ++failed_;
  }
  /// Rows that carry no certificate of their own.
  void certify_none() {
    if (cfg_.verify_certificates) rows_.back().fields.push_back("-");
  }
  std::size_t failed() const { return failed_; }
  void keep_order() { sorted_ = false; }

  void write(std::ostream& os) {
    os << "# " << kToolVersion << " command=" << cfg_.command;
    if (!cfg_.target.empty()) os << " target=" << cfg_.target;
    os << " seed=" << cfg_.seed << '\n';
    for (const auto& n : notes_) os << "# " << n << '\n';
    write_csv_row(os, columns_);
    if (sorted_)
      std::stable_sort(rows_.begin(), rows_.end(),
                       [](const Row& a, const Row& b) { return a.fields.front() < b.fields.front(); });
    for (const auto& r : rows_) write_csv_row(os, r.fields);
    for (const auto& t : trailers_) os << "# " << t << '\n';
  }

 private:
  const RunConfig& cfg_;
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
  std::vector<std::string> notes_;
  std::vector<std::string> trailers_;
  std::size_t failed_ = 0;
  bool sorted_ = true;
};

inline DecideOptions decide_options(const RunConfig& c) { return {c.state_budget, c.enumeration_cap}; }

inline std::vector<ThresholdPair> threshold_pairs(const RunConfig& c, const FiniteMetricSpace& space) {
  if (c.eps.has_value() != c.delta.has_value()) throw InputError("give both --eps and --delta, or neither");
  if (c.eps) return {ThresholdPair::make(*c.eps, *c.delta)};
  const ThresholdGrid g = threshold_grid(space);
  std::vector<ThresholdPair> out;
  for (const auto& e : g.values)
    for (const auto& d : g.values) out.push_back(ThresholdPair::make(e, d));
  return out;
}

inline std::size_t horizon_or(const RunConfig& c, std::size_t fallback) { return c.horizon ? *c.horizon : fallback; }

/// Output stream: the --output file when given.
template <class Body>
int with_output(const RunConfig& c, std::ostream& out, Body&& body) {
  if (!c.output) return body(out);
  std::ofstream f(*c.output, std::ios::binary);
  if (!f) throw InputError("cannot write '" + *c.output + "'");
  return body(f);
}

}  // namespace detail

// ------------------------------------------------------------------ validate

inline int cmd_validate(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) throw InputError("validate needs at least one system file");
  int code = kExitOk;
  for (const auto& path : c.inputs) {
    FiniteMetricSystem sys = load_system(path);
    auto listing = detail::violation_listing(sys.space());
    if (listing.empty()) {
      out << path << ": ok (" << sys.size() << " points, " << (sys.is_surjective() ? "onto" : "not onto") << ")\n";
    } else {
      out << path << ": " << listing.size() << " violation(s)\n";
      for (const auto& l : listing) out << "  " << l << '\n';
      code = kExitInvalid;
    }
  }
  return code;
}

// ------------------------------------------------------------------- decide

inline int cmd_decide(const RunConfig& c, std::ostream& out) {
  const Property p = parse_property(c.target);
  detail::Report rep(c, kVerdictColumns);
  for (const auto& path : c.inputs) {
    const FiniteMetricSystem sys = detail::load_checked(path);
    const std::string id = detail::system_id(path);
    if (threshold_free(p)) {
      detail::Stopwatch sw;
      const Verdict v = decide(sys, p, ThresholdPair::make(1, 1), detail::decide_options(c));
      rep.add({id, c.target, "-", "-", detail::bool_text(v.holds), describe(v, sys.space()),
               std::to_string(v.states_explored), sw.ms(c.timing)});
      rep.certify(verify_certificate(sys, p, ThresholdPair::make(1, 1), v));
      continue;
    }
    for (const auto& tp : detail::threshold_pairs(c, sys.space())) {
      detail::Stopwatch sw;
      if (p == Property::StrongOrbital) {
        const std::size_t h = detail::horizon_or(c, 8);
        const BoundedVerdict b = decide_strong_orbital_shadowing(sys, tp, h);
        std::string verdict = b.status == BoundedVerdict::Status::Refuted ? "false"
                              : b.implied_by_shadowing                     ? "true"
                                                                           : "unknown@" + std::to_string(h);
        rep.add({id, c.target, to_string(tp.eps), to_string(tp.delta), verdict,
                 b.counterexample ? describe(*b.counterexample, sys.space()) : "-", std::to_string(b.lassos_checked),
                 sw.ms(c.timing)});
        rep.certify(verify_certificate(sys, tp, b));
        continue;
      }
      const Verdict v = decide(sys, p, tp, detail::decide_options(c));
      rep.add({id, c.target, to_string(tp.eps), to_string(tp.delta), detail::bool_text(v.holds),
               describe(v, sys.space()), std::to_string(v.states_explored), sw.ms(c.timing)});
      rep.certify(verify_certificate(sys, p, tp, v));
    }
  }
  rep.write(out);
  return rep.failed() ? kExitCertificate : kExitOk;
}

// ----------------------------------------------------------------- property

/// One row per grid eps with the largest passing grid delta, then a summary row.
inline int cmd_property(const RunConfig& c, std::ostream& out) {
  const Property p = parse_property(c.target);
  if (p == Property::StrongOrbital) throw InputError("strong-orbital has no exact decider; use decide --horizon");
  detail::Report rep(c, kVerdictColumns);
  for (const auto& path : c.inputs) {
    const FiniteMetricSystem sys = detail::load_checked(path);
    const std::string id = detail::system_id(path);
    const ThresholdGrid g = threshold_grid(sys.space());
    detail::Stopwatch total;
    bool holds = true;
    std::size_t explored = 0;
    if (threshold_free(p)) {
      const Verdict v = decide(sys, p, ThresholdPair::make(1, 1), detail::decide_options(c));
      holds = v.holds;
      explored = v.states_explored;
      rep.add({id, c.target, "-", "-", detail::bool_text(v.holds), describe(v, sys.space()),
               std::to_string(v.states_explored), total.ms(c.timing)});
      rep.certify(verify_certificate(sys, p, ThresholdPair::make(1, 1), v));
    } else {
      for (const auto& e : g.values) {
        detail::Stopwatch sw;
        std::optional<Verdict> last;
        std::optional<Rational> best;
        std::size_t states = 0;
        for (auto it = g.values.rbegin(); it != g.values.rend(); ++it) {
          last = decide(sys, p, ThresholdPair::make(e, *it), detail::decide_options(c));
          states += last->states_explored;
          if (last->holds) {
            best = *it;
            break;
          }
        }
        holds = holds && best.has_value();
        explored += states;
        const Rational shown = best ? *best : g.values.front();
        rep.add({id, c.target, to_string(e), best ? to_string(*best) : "none", detail::bool_text(best.has_value()),
                 describe(*last, sys.space()), std::to_string(states), sw.ms(c.timing)});
        rep.certify(verify_certificate(sys, p, ThresholdPair::make(e, shown), *last));
      }
    }
    rep.add({id, c.target, "*", "*", detail::bool_text(holds), "level", std::to_string(explored), total.ms(c.timing)});
    rep.certify_none();
  }
  rep.write(out);
  return rep.failed() ? kExitCertificate : kExitOk;
}

// ------------------------------------------------------------------- oracle

inline int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const Property p = parse_property(c.target);
  if (!c.horizon) throw InputError("oracle needs --horizon");
  detail::Report rep(c, kVerdictColumns);
  for (const auto& path : c.inputs) {
    const FiniteMetricSystem sys = detail::load_checked(path);
    const std::string id = detail::system_id(path);
    for (const auto& tp : detail::threshold_pairs(c, sys.space())) {
      detail::Stopwatch sw;
      const OracleResult r = oracle(sys, p, tp, *c.horizon);
      std::string info = r.counterexample ? describe(*r.counterexample, sys.space()) : "-";
      info += "; horizon=" + std::to_string(r.horizon);
      if (r.required_horizon) info += " required=" + std::to_string(*r.required_horizon);
      info += r.certified ? " certified" : " uncertified";
      rep.add({id, c.target, to_string(tp.eps), to_string(tp.delta), detail::bool_text(r.holds), info,
               std::to_string(r.states), sw.ms(c.timing)});
      CertificateCheck chk;
      if (r.counterexample && !r.counterexample->walk.empty() &&
          !is_pseudo_orbit(sys, r.counterexample->walk, tp.delta))
        chk = CertificateCheck::fail("oracle walk is not a delta-pseudo-orbit");
      rep.certify(chk);
    }
  }
  rep.write(out);
  return rep.failed() ? kExitCertificate : kExitOk;
}

// ------------------------------------------------------------------- induce

inline FiniteMetricSystem induce_system(const RunConfig& c) {
  if (c.inputs.empty()) throw InputError("induce needs a system file");
  std::vector<FiniteMetricSystem> base;
  for (const auto& p : c.inputs) base.push_back(detail::load_checked(p));
  InducedCaps caps;
  caps.max_points = c.point_cap;
  caps.hyperspace_base = c.hyperspace_cap;
  const std::string& kind = c.target;
  if (kind != "product" && base.size() != 1) throw InputError(kind + " takes exactly one system");
  if (kind == "hyperspace") return hyperspace_system(base[0], caps).system;
  if (kind == "symmetric") return symmetric_product(base[0], c.order, caps).system;
  if (kind == "tower") return inverse_limit(base[0], c.levels).system;
  if (kind == "product") {
    if (base.size() == 1) base.push_back(base[0]);
    return product_system(base, caps).system;
  }
  throw InputError("unknown induced system '" + kind + "' (hyperspace, symmetric, product, tower)");
}

inline int cmd_induce(const RunConfig& c, std::ostream& out) {
  const FiniteMetricSystem sys = induce_system(c);
  const Json j = system_to_json(sys);
  const std::string text = j.dump(2) + "\n";
  // The emitted document must parse back to a valid system.
  const FiniteMetricSystem again = system_from_json(Json::parse(text));
  if (!detail::violation_listing(again.space()).empty() || again.map() != sys.map())
    throw CertificateError("induced system does not round-trip");
  out << text;
  return kExitOk;
}

// ------------------------------------------------------------- factor-check

inline int cmd_factor_check(const RunConfig& c, std::ostream& out) {
  const LiftProperty lp = parse_lift_property(c.target);
  if (c.inputs.size() != 1) throw InputError("factor-check takes one factor-map file");
  const std::string& path = c.inputs[0];
  const FactorMapSpec spec =
      factor_map_from_json(parse_json_text(read_text_file(path), path), std::filesystem::path(path).parent_path());
  for (const auto* side : {&spec.domain, &spec.codomain}) {
    auto listing = detail::violation_listing(side->space());
    if (!listing.empty()) throw InvalidInput(path + ": metric axioms violated", std::move(listing));
  }
  auto problems = validate_factor_map(spec);
  if (!problems.empty()) throw InvalidInput(path + ": not a factor map", std::move(problems));

  std::vector<Property> governed;
  for (const auto& [p, name] : kPropertyNames)
    if (p != Property::StrongOrbital && governing_lift(p) == lp) governed.push_back(p);
  std::vector<std::string> columns = kVerdictColumns;
  for (Property p : governed) {
    columns.push_back(std::string(property_name(p)) + ":forward");
    columns.push_back(std::string(property_name(p)) + ":converse");
  }
  const LiftOptions lopt{c.state_budget, c.enumeration_cap};
  std::vector<std::string> implications;
  for (Property p : governed) {
    const PreservationReport r = verify_preservation(spec, p, detail::decide_options(c), lopt);
    const std::string na = "n/a";
    implications.push_back(!r.applicable ? na : r.forward_ok ? "ok" : "VIOLATION");
    implications.push_back(!r.applicable ? na : r.converse_ok ? "ok" : "VIOLATION");
  }
  detail::Report rep(c, columns);
  const std::string id = detail::system_id(path);
  auto add = [&](std::vector<std::string> fields) {
    fields.insert(fields.end(), implications.begin(), implications.end());
    rep.add(std::move(fields));
  };
  detail::Stopwatch sw;
  const bool fixed = c.closeness || c.up || c.down;
  if (fixed && !(c.closeness && c.up && c.down)) throw InputError("give --closeness, --up and --down together");
  if (lp == LiftProperty::SOALP) {
    if (!fixed) throw InputError("soalp has only a bounded refuter; give thresholds and --horizon");
    const AlpThresholds th = AlpThresholds::make(*c.closeness, *c.up, *c.down);
    const BoundedVerdict b = decide_soalp_bounded(spec, th, detail::horizon_or(c, 8));
    add({id, c.target, to_string(th.closeness), "up=" + to_string(th.up) + ";down=" + to_string(th.down),
         b.status == BoundedVerdict::Status::Refuted ? "false" : "unknown@" + std::to_string(b.horizon),
         b.counterexample ? describe(*b.counterexample, spec.codomain.space()) : "-",
         std::to_string(b.lassos_checked), sw.ms(c.timing)});
    rep.certify(verify_certificate(spec.codomain, ThresholdPair::make(th.closeness, th.down), b));
  } else if (fixed || threshold_free(lp)) {
    const AlpThresholds th = fixed ? AlpThresholds::make(*c.closeness, *c.up, *c.down) : AlpThresholds::make(1, 1, 1);
    const Verdict v = decide_lift(spec, lp, th, lopt);
    add({id, c.target, fixed ? to_string(th.closeness) : "-",
         fixed ? "up=" + to_string(th.up) + ";down=" + to_string(th.down) : "-", detail::bool_text(v.holds),
         describe(v, spec.codomain.space()), std::to_string(v.states_explored), sw.ms(c.timing)});
    rep.certify(verify_lift_certificate(spec, lp, th, v));
  } else {
    const LiftLevel lvl = lift_property_level(spec, lp, lopt);
    std::string info = "level";
    for (const auto& r : lvl.rows)
      if (!r.down) {
        info = "fails at closeness=" + to_string(r.closeness) + " up=" + to_string(r.up);
        break;
      }
    add({id, c.target, "*", "*", detail::bool_text(lvl.holds), info, std::to_string(lvl.rows.size()),
         sw.ms(c.timing)});
    rep.certify_none();
  }
  rep.write(out);
  std::size_t violations = std::count(implications.begin(), implications.end(), "VIOLATION");
  return rep.failed() || violations ? kExitCertificate : kExitOk;
}

// --------------------------------------------------------------- experiment

inline std::string state_text(const std::vector<Rational>& st) {
  std::string s = "{";
  for (std::size_t i = 0; i < st.size(); ++i) s += (i ? " " : "") + to_string(st[i]);
  return s + "}";
}

inline int cmd_experiment(const RunConfig& c, std::ostream& out) {
  ExampleParams p;
  if (c.eps) p.eps = *c.eps;
  if (c.delta) p.delta = *c.delta;
  if (c.horizon) p.horizon = *c.horizon;
  if (c.order != 2) p.n = c.order;
  const PseudoOrbitSpec s = generate_example(c.target, p);
  const std::string bad = validation_problem(s);
  if (!bad.empty()) throw CertificateError(c.target + ": " + bad);

  RunConfig plain = c;
  plain.verify_certificates = false;
  detail::Report rep(plain, {"step", "state", "defect", "set_size"});
  rep.note("eps=" + to_string(p.eps) + " delta=" + to_string(p.delta) + " horizon=" + std::to_string(p.horizon));
  for (const auto& [k, v] : s.notes) rep.note("note " + k + "=" + v);
  if (s.rotation)
    rep.note("horizon " + std::to_string(p.horizon) + " < alpha period " + std::to_string(s.rotation->period()));
  if (s.asymptotic) rep.note(std::string("defect schedule ") + (schedule_shrinks(s) ? "shrinks to zero" : "is flat"));

  // Per-step plot value and set size; filled by the analysis below.
  std::vector<std::string> plot(s.states.size(), "-");
  std::vector<std::string> sizes(s.states.size(), "-");
  CertificateCheck chk;
  std::vector<std::string> verdict;

  if (s.kind == StateKind::FiniteSet) {
    std::size_t n = 0;
    for (const auto& st : s.states) n = std::max(n, st.size());
    const auto sets = s.as_sets();
    const SymmetricRun run = symmetric_shadow_run(*s.map, sets, p.eps, n, std::nullopt, c.pattern_budget);
    for (std::size_t i = 0; i < run.live.size(); ++i) sizes[i] = std::to_string(run.live[i]);
    for (std::size_t i = 0; i + 1 < s.states.size(); ++i) plot[i] = to_decimal(s.defects[i], 12);
    if (run.empty_at) {
      verdict.push_back("F_" + std::to_string(n) + " run: no eps-shadowing set; emptiness certificate at step " +
                        std::to_string(*run.empty_at));
    } else {
      verdict.push_back("F_" + std::to_string(n) + " run: shadowing set exists up to step " +
                        std::to_string(run.horizon));
      if (!shadows_sets(*s.map, *run.witness, sets, p.eps)) chk = CertificateCheck::fail("witness does not shadow");
    }
    const bool eventual = c.target == "tent-F3-limit" || c.target == "cubic-tent-hyper-eventual";
    if (eventual && c.window > 0 && s.states.size() >= c.warmup + c.window) {
      const std::size_t count = std::min(c.windows, s.states.size() - c.warmup - c.window + 1);
      const auto wins = window_runs(*s.map, sets, p.eps, n, c.warmup, count, c.window, c.pattern_budget);
      std::size_t empty = 0, last = 0;
      for (const auto& w : wins)
        if (w.empty_at) {
          ++empty;
          last = std::max(last, *w.empty_at);
        }
      verdict.push_back("windows: " + std::to_string(empty) + " of " + std::to_string(wins.size()) +
                        " windows of length " + std::to_string(c.window) + " from step " + std::to_string(c.warmup) +
                        " are empty (latest emptiness at window step " + std::to_string(last) + ")");
    }
  } else if (s.kind == StateKind::CirclePair || s.kind == StateKind::CircleSet) {
    const Rational res = c.resolution ? *c.resolution : Rational(1, 1000);
    if (s.asymptotic) {
      const ProfileSearch r = limit_profile_search(s, res);
      for (std::size_t i = 0; i < s.states.size(); ++i) plot[i] = to_decimal(shadowlab::detail::state_offset(s, s.states[i]), 12);
      verdict.push_back("limit profile: " + std::to_string(r.matches) + " of " + std::to_string(r.candidates) +
                        " candidate offsets match the tail from step " + std::to_string(r.tail_start) +
                        " (tail offsets in [" + to_decimal(r.tail_min) + ", " + to_decimal(r.tail_max) + "])");
    } else {
      const DefectSearch r = rotation_defect_search(s, p.eps, res);
      Rational worst = 0;
      for (std::size_t i = 0; i < s.states.size(); ++i) {
        const Rational d = closure_distance(s, s.states[i], r.best_offset);
        worst = std::max(worst, d);
        plot[i] = to_decimal(d, 12);
      }
      if (worst != r.best_defect) chk = CertificateCheck::fail("best defect does not recompute");
      verdict.push_back(std::string(r.status == SearchStatus::Conclusive ? "conclusive" : "inconclusive") +
                        ": best candidate defect " + to_string(r.best_defect) + " at offset " +
                        to_string(r.best_offset) + ", slack " + to_string(r.slack) + ", lower bound " +
                        to_string(r.lower_bound) + (r.lower_bound > p.eps ? " > eps" : " <= eps"));
    }
    for (std::size_t i = 0; i < s.states.size(); ++i) sizes[i] = "2";
  } else {
    const bool orphan = !s.map->preimage_in(Rational(2), s.map->domain()).has_value();
    for (std::size_t i = 0; i < s.states.size(); ++i) sizes[i] = std::to_string(s.states[i].size());
    for (std::size_t i = 0; i + 1 < s.states.size(); ++i) plot[i] = to_decimal(s.defects[i], 12);
    verdict.push_back(std::string("truncated product with ") + s.note("factors") +
                      " factors; the all-2 point " + (orphan ? "has no preimage" : "has a preimage") +
                      "; the limit-point argument for the full product is not simulated");
    if (!orphan) chk = CertificateCheck::fail("all-2 point has a preimage");
  }

  for (std::size_t i = 0; i < s.states.size(); ++i) {
    const std::string defect = i + 1 < s.states.size() ? to_string(s.defects[i]) : "-";
    rep.add({std::to_string(i), state_text(s.states[i]), defect, sizes[i]});
  }
  for (const auto& v : verdict) rep.trailer("verdict: " + v);
  if (c.verify_certificates) rep.trailer(std::string("certificate: ") + (chk.ok ? "ok" : "FAILED: " + chk.reason));
  if (c.plot_data) {
    std::ofstream f(*c.plot_data, std::ios::binary);
    if (!f) throw InputError("cannot write '" + *c.plot_data + "'");
    write_csv_row(f, {"step", s.kind == StateKind::FiniteSet || s.kind == StateKind::Tuple ? "defect"
                             : s.asymptotic                                                 ? "offset"
                                                                                            : "closure_distance"});
    for (std::size_t i = 0; i < s.states.size(); ++i) write_csv_row(f, {std::to_string(i), plot[i]});
  }
  rep.keep_order();
  rep.write(out);
  return c.verify_certificates && !chk.ok ? kExitCertificate : kExitOk;
}

// -------------------------------------------------------------------- table

inline std::vector<std::pair<std::string, FiniteMetricSystem>> table_systems(const RunConfig& c) {
  std::vector<std::pair<std::string, FiniteMetricSystem>> out;
  for (const auto& path : c.inputs) out.emplace_back(detail::system_id(path), detail::load_checked(path));
  std::mt19937_64 rng(c.seed);
  for (std::size_t i = 0; i < c.random_systems; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % c.random_max_points);
    const MetricFamily fam = i % 2 ? MetricFamily::Discrete : MetricFamily::Line;
    char id[32];
    std::snprintf(id, sizeof id, "random-%05zu", i);
    out.emplace_back(id, random_system(rng, n, fam));
  }
  if (out.empty()) throw InputError("table needs system files or --random N");
  return out;
}

inline int cmd_table(const RunConfig& c, std::ostream& out) {
  TableCaps caps;
  caps.hyperspace_base = c.hyperspace_cap;
  caps.max_points = c.point_cap;
  caps.decide = detail::decide_options(c);
  const BatchReport rep = replicate_table(table_systems(c), caps);
  RunConfig plain = c;
  plain.verify_certificates = false;
  detail::Report r(plain, {"system_id", "constructor", "property", "base", "induced", "status", "detail"});
  r.note("caps: hyperspace_base=" + std::to_string(c.hyperspace_cap) +
         " enumeration=" + std::to_string(c.enumeration_cap) + " points=" + std::to_string(c.point_cap));
  auto opt = [](const std::optional<bool>& b) { return b ? detail::bool_text(*b) : std::string("-"); };
  for (const auto& row : rep.rows)
    r.add({row.system_id, std::string(constructor_name(row.cell.constructor)),
           std::string(property_name(row.cell.property)), row.cell.always ? "any" : opt(row.base_has),
           opt(row.induced_has), std::string(status_name(row.status)), row.detail});
  const auto& s = rep.summary;
  r.trailer("systems=" + std::to_string(s.systems) + " cells=" + std::to_string(s.cells) +
            " passed=" + std::to_string(s.passed) + " violations=" + std::to_string(s.violations) +
            " not_applicable=" + std::to_string(s.not_applicable) + " cap_breaches=" + std::to_string(s.cap_breaches));
  r.write(out);
  return s.violations ? kExitCertificate : kExitOk;
}

// ---------------------------------------------------------------- dispatch

inline int run(const RunConfig& c, std::ostream& out) {
  c.validate();
  static const std::vector<std::pair<std::string, std::function<int(const RunConfig&, std::ostream&)>>> table = {
      {"validate", cmd_validate}, {"decide", cmd_decide},         {"property", cmd_property},
      {"oracle", cmd_oracle},     {"induce", cmd_induce},         {"factor-check", cmd_factor_check},
      {"experiment", cmd_experiment}, {"table", cmd_table},
  };
  for (const auto& [name, fn] : table)
    if (name == c.command) return detail::with_output(c, out, [&](std::ostream& os) { return fn(c, os); });
  throw InputError("unknown command '" + c.command + "'");
}

/// Runs a command and maps failures onto exit codes, reporting on `err`.
inline int run_reporting(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    return run(c, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& l : e.listing) err << "  " << l << '\n';
    return kExitInvalid;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const CertificateError& e) {
    err << "certificate: " << e.what() << '\n';
    return kExitCertificate;
  }
}

}  // namespace shadowlab::cli
