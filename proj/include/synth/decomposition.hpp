#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "synth/automaton.hpp"

namespace synth {

// Accepting state run without immediate self-repetition: q0 in Q0, last
// state accepting, q_i != q_{i+1}, edge length <= N.
using AcceptingRun = std::vector<int>;

// One reachability sub-problem: drive the state from the region labelling
// edge (source, via) to the region labelling edge (via, target) within
// `horizon` steps.
struct ReachTask {
  int source = -1;
  int via = -1;
  int target = -1;
  int horizon = 1;

  auto operator<=>(const ReachTask&) const = default;
};

// Key of a merged partition set: tasks sharing the source edge (q, q') are
// solved with one common certificate.
struct PartitionKey {
  int source = -1;
  int via = -1;

  auto operator<=>(const PartitionKey&) const = default;
  std::string str() const {
    return "(q" + std::to_string(source) + ",q" + std::to_string(via) + ")";
  }
};

struct PartitionGroup {
  PartitionKey key;
  std::vector<ReachTask> tasks;     // sorted, unique
  std::vector<int> source_labels;   // propositions on edge (q, q')
  std::vector<int> target_labels;   // union over outgoing edges of q' (self excluded)
  std::vector<int> successors;      // Delta(q') \ {q'}
  int horizon = 1;                  // max horizon over tasks; certificates reused for smaller T
};

struct Decomposition {
  int horizon_n = 0;
  std::vector<AcceptingRun> runs;                    // R_N
  std::map<int, std::vector<AcceptingRun>> runs_by_initial;  // p -> R^p_N
  std::map<AcceptingRun, std::vector<ReachTask>> tasks_by_run;
  std::vector<PartitionGroup> groups;
  bool vacuous_violation = false;  // Q0 cap F nonempty: bound 1 everywhere
};

// Propositions labelling the edge q -> q'. Empty result means no edge.
inline std::vector<int> edge_labels(const Dfa& dfa, int q, int q_next) {
  std::vector<int> labels;
  for (int a = 0; a < dfa.alphabet_size(); ++a)
    if (dfa.d(q, a) == q_next) labels.push_back(a);
  return labels;
}

inline std::vector<int> successors(const Dfa& dfa, int q) {
  std::set<int> s;
  for (int a = 0; a < dfa.alphabet_size(); ++a) s.insert(dfa.d(q, a));
  return std::vector<int>(s.begin(), s.end());
}

struct RunBudgetExceeded : std::runtime_error {
  explicit RunBudgetExceeded(size_t budget)
      : std::runtime_error("accepting-run enumeration exceeded budget of " +
                           std::to_string(budget)) {}
};

// All walks of edge length <= N from Q0 to the accepting set in the
// self-loop-free graph. Walks may revisit non-adjacent states; immediate
// repetition is excluded by construction. Runs stop at the first accepting
// state: the sum-product bound counts each first violation once, so edges
// leaving accepting states are not followed.
inline std::vector<AcceptingRun> accepting_runs(const Dfa& dfa, int n, size_t budget = 100000) {
  if (n < 1) throw std::invalid_argument("accepting_runs: N must be >= 1");
  std::vector<std::vector<int>> succ(dfa.num_states);
  for (int q = 0; q < dfa.num_states; ++q) {
    if (dfa.accepting[q]) continue;
    std::set<int> s;
    for (int a = 0; a < dfa.alphabet_size(); ++a)
      if (dfa.d(q, a) != q) s.insert(dfa.d(q, a));
    succ[q].assign(s.begin(), s.end());
  }

  std::vector<AcceptingRun> out;
  AcceptingRun path;
  auto dfs = [&](auto&& self, int q, int depth) -> void {
    path.push_back(q);
    if (dfa.accepting[q]) {
      if (out.size() >= budget) throw RunBudgetExceeded(budget);
      out.push_back(path);
    } else if (depth < n) {
      for (int t : succ[q]) self(self, t, depth + 1);
    }
    path.pop_back();
  };
  for (int q0 : dfa.initial) dfs(dfs, q0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// R^p_N: a run lands in the bucket of every proposition labelling its first
// edge. Length-1 runs (accepting initial state) have no first edge and set
// the vacuous flag instead.
inline std::map<int, std::vector<AcceptingRun>> partition_by_initial(
    const Dfa& dfa, const std::vector<AcceptingRun>& runs, bool* vacuous = nullptr) {
  std::map<int, std::vector<AcceptingRun>> by_p;
  for (const auto& run : runs) {
    if (run.size() < 2) {
      if (vacuous) *vacuous = true;
      continue;
    }
    for (int p : edge_labels(dfa, run[0], run[1])) by_p[p].push_back(run);
  }
  return by_p;
}

// P^p(q): one task per consecutive state triple. A run of length 2 yields
// no task; its violation needs no intermediate reachability. The horizon is
// N+2-|q| while the via state can stall on a self-loop, otherwise 1.
inline std::vector<ReachTask> reach_tasks(const AcceptingRun& run, int n,
                                          const std::vector<int>& q_s) {
  if (run.size() < 2) throw std::invalid_argument("reach_tasks: run shorter than 2 states");
  std::vector<ReachTask> tasks;
  if (run.size() == 2) return tasks;
  auto in_qs = [&](int q) { return std::find(q_s.begin(), q_s.end(), q) != q_s.end(); };
  for (size_t i = 0; i + 2 < run.size(); ++i) {
    ReachTask t;
    t.source = run[i];
    t.via = run[i + 1];
    t.target = run[i + 2];
    t.horizon = in_qs(run[i + 1]) ? n + 2 - (int)run.size() : 1;
    tasks.push_back(t);
  }
  return tasks;
}

// Group tasks by source edge (q, q'). The merged target region is the union
// of the labels of every outgoing edge of q' except its self-loop, and the
// synthesis horizon is the maximum over the group (the certificate bound
// gamma + c T is monotone in T, so it covers the smaller horizons too).
inline std::vector<PartitionGroup> merge_partitions(const Dfa& dfa,
                                                    const std::vector<ReachTask>& all_tasks) {
  std::map<PartitionKey, PartitionGroup> groups;
  for (const auto& t : all_tasks) {
    PartitionKey key{t.source, t.via};
    auto& g = groups[key];
    if (g.tasks.empty()) {
      g.key = key;
      g.source_labels = edge_labels(dfa, t.source, t.via);
      std::set<int> tl;
      for (int q2 : successors(dfa, t.via)) {
        if (q2 == t.via) continue;
        g.successors.push_back(q2);
        for (int p : edge_labels(dfa, t.via, q2)) tl.insert(p);
      }
      g.target_labels.assign(tl.begin(), tl.end());
    }
    g.tasks.push_back(t);
    g.horizon = std::max(g.horizon, t.horizon);
  }
  std::vector<PartitionGroup> out;
  for (auto& [k, g] : groups) {
    std::sort(g.tasks.begin(), g.tasks.end());
    g.tasks.erase(std::unique(g.tasks.begin(), g.tasks.end()), g.tasks.end());
    out.push_back(std::move(g));
  }
  return out;
}

// Full pipeline over a DFA for the negated specification.
inline Decomposition decompose(const Dfa& dfa, int n, size_t run_budget = 100000) {
  Decomposition dec;
  dec.horizon_n = n;
  dec.runs = accepting_runs(dfa, n, run_budget);
  dec.runs_by_initial = partition_by_initial(dfa, dec.runs, &dec.vacuous_violation);
  const std::vector<int> q_s = self_loops(dfa);
  std::vector<ReachTask> all;
  for (const auto& run : dec.runs) {
    if (run.size() < 2) continue;
    auto tasks = reach_tasks(run, n, q_s);
    dec.tasks_by_run[run] = tasks;
    all.insert(all.end(), tasks.begin(), tasks.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  dec.groups = merge_partitions(dfa, all);
  return dec;
}

}  // namespace synth
