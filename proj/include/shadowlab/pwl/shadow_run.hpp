#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/pwl/pl_map.hpp"

namespace shadowlab {

/// Candidate positions of f^i(z) for every prefix of a pseudo-orbit.
struct ShadowRun {
  std::vector<RationalIntervalSet> sets;
  std::optional<std::size_t> empty_at;

  bool shadowable() const { return !empty_at; }
};

inline void require_pseudo_orbit(const PLMap& f, const std::vector<Rational>& orbit, const Rational& delta) {
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    if (!f.domain().contains(orbit[i])) throw DomainError("step " + std::to_string(i) + " leaves the domain");
    if (i + 1 < orbit.size() && !(abs_value(f(orbit[i]) - orbit[i + 1]) < delta))
      throw DomainError("not a delta-pseudo-orbit at step " + std::to_string(i));
  }
}

inline RationalIntervalSet domain_ball(const PLMap& f, const Rational& x, const Rational& eps) {
  return RationalIntervalSet::ball(x, eps) & f.domain();
}

/// S_0 = B(x_0) and S_{i+1} = f(S_i) & B(x_{i+1}); the prefix is eps-shadowed
/// exactly when the last set is nonempty. The run stops at the first empty set.
inline ShadowRun shadow_set_run(const PLMap& f, const std::vector<Rational>& orbit, const Rational& eps,
                                const std::optional<Rational>& delta = std::nullopt) {
  if (orbit.empty()) throw DomainError("empty pseudo-orbit");
  if (delta) require_pseudo_orbit(f, orbit, *delta);
  ShadowRun run;
  run.sets.push_back(domain_ball(f, orbit[0], eps));
  for (std::size_t i = 1; run.sets.back().empty() == false && i < orbit.size(); ++i)
    run.sets.push_back(f.image(run.sets.back()) & domain_ball(f, orbit[i], eps));
  if (run.sets.back().empty()) run.empty_at = run.sets.size() - 1;
  return run;
}

// ------------------------------------------------------- symmetric products

using FinitePointSet = std::vector<Rational>;

inline FinitePointSet normalized(FinitePointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline FinitePointSet image_of(const PLMap& f, const FinitePointSet& s) {
  FinitePointSet out;
  for (const auto& x : s) out.push_back(f(x));
  return normalized(std::move(out));
}

inline Rational hausdorff_on_line(const FinitePointSet& a, const FinitePointSet& b) {
  auto one_side = [](const FinitePointSet& p, const FinitePointSet& q) {
    Rational worst = 0;
    for (const auto& x : p) {
      Rational best = abs_value(x - q.front());
      for (const auto& y : q) best = std::min(best, abs_value(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

/// Whether the orbit of `a` in F_n eps-shadows `seq` at every step.
inline bool shadows_sets(const PLMap& f, FinitePointSet a, const std::vector<FinitePointSet>& seq, const Rational& eps) {
  a = normalized(std::move(a));
  for (const auto& target : seq) {
    if (!(hausdorff_on_line(a, normalized(target)) < eps)) return false;
    a = image_of(f, a);
  }
  return true;
}

inline constexpr std::size_t kPatternBudget = 1'000'000;

struct SymmetricRun {
  /// Last step examined.
  std::size_t horizon = 0;
  std::optional<std::size_t> empty_at;
  /// Distinct live component tuples after each step.
  std::vector<std::size_t> live;
  /// A shadowing set (sorted) when every step stays alive.
  std::optional<FinitePointSet> witness;

  bool shadowable() const { return !empty_at; }
};

namespace detail {

/// n components, each with the set of possible current positions. Components
/// are interchangeable, so tuples are kept sorted; `origin[k]` names the
/// parent component of component k.
struct ComponentTuple {
  std::vector<RationalIntervalSet> comps;
  std::size_t parent = 0;
  std::vector<std::size_t> origin;
};

inline std::string tuple_key(const std::vector<RationalIntervalSet>& comps) {
  std::string key;
  for (const auto& c : comps) key += c.to_string() + "|";
  return key;
}

}  // namespace detail

/// Exact finite-horizon eps-shadowing in F_n: the candidate's k-th point must
/// stay inside B(A_i) at every step, and every target point needs some
/// component within eps. Patterns record which component covers which
/// target; equal component tuples are merged.
inline SymmetricRun symmetric_shadow_run(const PLMap& f, const std::vector<FinitePointSet>& raw, const Rational& eps,
                                         std::size_t n, const std::optional<Rational>& delta = std::nullopt,
                                         std::size_t budget = kPatternBudget) {
  if (raw.empty()) throw DomainError("empty pseudo-orbit");
  if (n == 0) throw DomainError("symmetric product order must be positive");
  std::vector<FinitePointSet> seq;
  for (const auto& s : raw) {
    if (s.empty()) throw DomainError("pseudo-orbit contains an empty set");
    seq.push_back(normalized(s));
    if (seq.back().size() > n) throw DomainError("a set has more than n points");
    for (const auto& x : seq.back())
      if (!f.domain().contains(x)) throw DomainError("point " + to_string(x) + " leaves the domain");
  }
  if (delta)
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (!(hausdorff_on_line(image_of(f, seq[i]), seq[i + 1]) < *delta))
        throw DomainError("not a delta-pseudo-orbit at step " + std::to_string(i));

  SymmetricRun run;
  std::vector<std::vector<detail::ComponentTuple>> layers;
  std::vector<detail::ComponentTuple> current{{std::vector<RationalIntervalSet>(n, f.domain()), 0, {}}};
  for (std::size_t k = 0; k < n; ++k) current[0].origin.push_back(k);

  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& targets = seq[i];
    std::vector<RationalIntervalSet> balls;
    RationalIntervalSet near_all;
    for (const auto& t : targets) {
      balls.push_back(domain_ball(f, t, eps));
      near_all = near_all | balls.back();
    }
    std::vector<detail::ComponentTuple> next;
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t s = 0; s < current.size(); ++s) {
      std::vector<RationalIntervalSet> base;
      bool dead = false;
      for (const auto& c : current[s].comps) {
        base.push_back((i == 0 ? c : f.image(c)) & near_all);
        dead = dead || base.back().empty();
      }
      if (dead) continue;
      // Assign targets to components one at a time, pruning empty sets.
      std::vector<RationalIntervalSet> work = base;
      auto assign = [&](auto&& self, std::size_t t) -> void {
        if (t == targets.size()) {
          std::vector<std::size_t> order(n);
          for (std::size_t k = 0; k < n; ++k) order[k] = k;
          std::vector<std::string> keys;
          for (const auto& c : work) keys.push_back(c.to_string());
          std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
          detail::ComponentTuple tup{{}, s, {}};
          for (auto k : order) {
            tup.comps.push_back(work[k]);
            tup.origin.push_back(k);
          }
          auto [it, fresh] = seen.emplace(detail::tuple_key(tup.comps), next.size());
          if (fresh) {
            if (next.size() >= budget)
              throw BudgetError("symmetric shadow run exceeded " + std::to_string(budget) + " patterns at step " +
                                std::to_string(i));
            next.push_back(std::move(tup));
          }
          return;
        }
        for (std::size_t k = 0; k < n; ++k) {
          // Identical components give identical branches.
          bool repeat = false;
          for (std::size_t e = 0; e < k && !repeat; ++e) repeat = work[e] == work[k];
          if (repeat) continue;
          RationalIntervalSet narrowed = work[k] & balls[t];
          if (narrowed.empty()) continue;
          RationalIntervalSet saved = std::move(work[k]);
          work[k] = std::move(narrowed);
          self(self, t + 1);
          work[k] = std::move(saved);
        }
      };
      assign(assign, 0);
    }
    run.horizon = i;
    run.live.push_back(next.size());
    layers.push_back(std::move(current));
    current = std::move(next);
    if (current.empty()) {
      run.empty_at = i;
      return run;
    }
  }

  // Pull one point of each final component back along its history.
  std::vector<Rational> pts;
  for (const auto& c : current[0].comps) pts.push_back(c.sample());
  const detail::ComponentTuple* tup = &current[0];
  for (std::size_t i = seq.size() - 1; i > 0; --i) {
    const detail::ComponentTuple& parent = layers[i][tup->parent];
    std::vector<Rational> back(n);
    for (std::size_t k = 0; k < n; ++k) {
      auto z = f.preimage_in(pts[k], parent.comps[tup->origin[k]]);
      if (!z) throw CertificateError("witness reconstruction lost a preimage");
      back[tup->origin[k]] = *z;
    }
    pts = std::move(back);
    tup = &parent;
  }
  run.witness = normalized(std::move(pts));
  return run;
}

/// Emptiness of every window seq[N, N + length) for N in [first, first + count):
/// the eventual form of shadowing restarts the candidate at each N.
struct WindowResult {
  std::size_t start = 0;
  std::optional<std::size_t> empty_at;
};

inline std::vector<WindowResult> window_runs(const PLMap& f, const std::vector<FinitePointSet>& seq, const Rational& eps,
                                             std::size_t n, std::size_t first, std::size_t count, std::size_t length,
                                             std::size_t budget = kPatternBudget) {
  if (first + count - 1 + length > seq.size()) throw DomainError("windows run past the generated horizon");
  std::vector<WindowResult> out;
  for (std::size_t s = first; s < first + count; ++s) {
    std::vector<FinitePointSet> win(seq.begin() + static_cast<std::ptrdiff_t>(s),
                                    seq.begin() + static_cast<std::ptrdiff_t>(s + length));
    out.push_back({s, symmetric_shadow_run(f, win, eps, n, std::nullopt, budget).empty_at});
  }
  return out;
}

}  // namespace shadowlab
