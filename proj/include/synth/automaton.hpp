#pragma once

#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "synth/formula.hpp"

namespace synth {

// Deterministic finite automaton over the proposition alphabet. The
// transition table is total: delta has num_states * |ap| entries.
struct Dfa {
  int num_states = 0;
  std::vector<int> initial;               // non-empty, sorted
  std::vector<std::string> ap;            // alphabet (proposition names)
  std::vector<int> delta;                 // row-major [state][symbol]
  std::vector<bool> accepting;
  std::vector<std::string> state_labels;  // diagnostics; empty or per-state

  int d(int q, int a) const { return delta[(size_t)q * ap.size() + a]; }
  int alphabet_size() const { return (int)ap.size(); }

  bool is_accepting(int q) const { return accepting[q]; }

  void check_valid() const {
    if (initial.empty()) throw std::invalid_argument("dfa: no initial state");
    if ((size_t)num_states * ap.size() != delta.size())
      throw std::invalid_argument("dfa: transition table not total");
    for (int t : delta)
      if (t < 0 || t >= num_states) throw std::invalid_argument("dfa: dangling transition");
  }
};

// Run the word from each initial state; empty words are accepted iff some
// initial state is accepting.
inline bool accepts(const Dfa& dfa, const std::vector<int>& word) {
  for (int q0 : dfa.initial) {
    int q = q0;
    for (int sym : word) {
      if (sym < 0 || sym >= dfa.alphabet_size())
        throw std::out_of_range("accepts: symbol outside alphabet");
      q = dfa.d(q, sym);
    }
    if (dfa.accepting[q]) return true;
  }
  return false;
}

// Q_s: states with at least one self-loop.
inline std::vector<int> self_loops(const Dfa& dfa) {
  std::vector<int> qs;
  for (int q = 0; q < dfa.num_states; ++q)
    for (int a = 0; a < dfa.alphabet_size(); ++a)
      if (dfa.d(q, a) == q) {
        qs.push_back(q);
        break;
      }
  return qs;
}

struct TranslationBudgetExceeded : std::runtime_error {
  explicit TranslationBudgetExceeded(int budget)
      : std::runtime_error("translation exceeded state budget of " + std::to_string(budget)) {}
};

namespace detail {

// Progression through one symbol: the returned formula is satisfied by the
// remaining (possibly empty) suffix iff the original is satisfied by the
// word starting with `sym`. The strong next operator becomes a non-empty
// suffix guard F true & psi.
inline FormulaPtr progress(const FormulaPtr& f, int sym) {
  switch (f->kind) {
    case FKind::True:
      return f_true();
    case FKind::AP:
      return f->ap == sym ? f_true() : f_false();
    case FKind::Not:
      return f_not(progress(f->lhs, sym));
    case FKind::And:
      return f_and(progress(f->lhs, sym), progress(f->rhs, sym));
    case FKind::Or:
      return f_or(progress(f->lhs, sym), progress(f->rhs, sym));
    case FKind::Next:
      return f_and(f_eventually(f_true()), f->lhs);
    case FKind::Eventually:
      return f_or(progress(f->lhs, sym), f_eventually(f->lhs));
    case FKind::Always:
      return f_and(progress(f->lhs, sym), f_always(f->lhs));
    case FKind::Until:
      return f_or(progress(f->rhs, sym),
                  f_and(progress(f->lhs, sym), f_until(f->lhs, f->rhs)));
  }
  return f_false();  // unreachable
}

// Acceptance of the empty suffix: obligations discharged by the end of the
// word. G is vacuously true, F/U/X and propositions require a position.
inline bool eval_empty(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::AP: return false;
    case FKind::Not: return !eval_empty(f->lhs);
    case FKind::And: return eval_empty(f->lhs) && eval_empty(f->rhs);
    case FKind::Or: return eval_empty(f->lhs) || eval_empty(f->rhs);
    case FKind::Next: return false;
    case FKind::Eventually: return false;
    case FKind::Always: return true;
    case FKind::Until: return false;
  }
  return false;
}

inline void collect_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& atoms) {
  switch (f->kind) {
    case FKind::True:
      return;
    case FKind::Not:
      collect_atoms(f->lhs, atoms);
      return;
    case FKind::And:
    case FKind::Or:
      collect_atoms(f->lhs, atoms);
      collect_atoms(f->rhs, atoms);
      return;
    default:  // AP and temporal operators are opaque atoms
      for (const auto& a : atoms)
        if (formula_eq(a, f)) return;
      atoms.push_back(f);
  }
}

inline bool eval_boolean(const FormulaPtr& f, const std::vector<FormulaPtr>& atoms,
                         unsigned assignment) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::Not: return !eval_boolean(f->lhs, atoms, assignment);
    case FKind::And:
      return eval_boolean(f->lhs, atoms, assignment) && eval_boolean(f->rhs, atoms, assignment);
    case FKind::Or:
      return eval_boolean(f->lhs, atoms, assignment) || eval_boolean(f->rhs, atoms, assignment);
    default:
      for (size_t i = 0; i < atoms.size(); ++i)
        if (formula_eq(atoms[i], f)) return (assignment >> i) & 1u;
      throw std::logic_error("eval_boolean: unregistered atom");
  }
}

inline std::string structural_key(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True: return "T";
    case FKind::AP: return "p" + std::to_string(f->ap);
    case FKind::Not: return "!(" + structural_key(f->lhs) + ")";
    case FKind::And: return "&(" + structural_key(f->lhs) + "," + structural_key(f->rhs) + ")";
    case FKind::Or: return "|(" + structural_key(f->lhs) + "," + structural_key(f->rhs) + ")";
    case FKind::Next: return "X(" + structural_key(f->lhs) + ")";
    case FKind::Eventually: return "F(" + structural_key(f->lhs) + ")";
    case FKind::Always: return "G(" + structural_key(f->lhs) + ")";
    case FKind::Until:
      return "U(" + structural_key(f->lhs) + "," + structural_key(f->rhs) + ")";
  }
  return "?";
}

// Semantic state key: the boolean function of the formula over its temporal
// atoms, restricted to the atoms it actually depends on. States with equal
// keys accept the same language, so they can share a DFA state. Falls back
// to the structural key when the atom count makes enumeration unreasonable.
inline std::string state_key(const FormulaPtr& f) {
  std::vector<FormulaPtr> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > 16) return "s:" + structural_key(f);
  std::sort(atoms.begin(), atoms.end(),
            [](const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) < 0; });
  const unsigned n = (unsigned)atoms.size();
  std::vector<bool> table(1u << n);
  for (unsigned m = 0; m < (1u << n); ++m) table[m] = eval_boolean(f, atoms, m);
  // drop atoms the function does not depend on
  std::vector<FormulaPtr> used;
  std::vector<unsigned> used_idx;
  for (unsigned i = 0; i < n; ++i) {
    bool depends = false;
    for (unsigned m = 0; m < (1u << n) && !depends; ++m)
      if (table[m] != table[m ^ (1u << i)]) depends = true;
    if (depends) {
      used.push_back(atoms[i]);
      used_idx.push_back(i);
    }
  }
  std::string key = "t:";
  for (const auto& a : used) key += structural_key(a) + ";";
  key += "#";
  for (unsigned m = 0; m < (1u << (unsigned)used.size()); ++m) {
    unsigned full = 0;
    for (unsigned j = 0; j < used.size(); ++j)
      if ((m >> j) & 1u) full |= 1u << used_idx[j];
    key += table[full] ? '1' : '0';
  }
  return key;
}

}  // namespace detail

// Formula-progression translation. The language of the result equals the
// language of `phi` on all non-empty words over Pi; the empty word is never
// accepted (the initial state is kept distinct from any re-entered state so
// traces of length zero, which the semantics excludes, stay rejected).
inline Dfa translate(const FormulaPtr& phi, const PropositionSet& props,
                     int state_budget = 4096) {
  const int nsym = props.size();
  if (nsym == 0) throw std::invalid_argument("translate: empty proposition set");

  Dfa dfa;
  dfa.ap = props.names;

  std::map<std::string, int> ids;
  std::vector<FormulaPtr> formulas;

  FormulaPtr init = simplify(phi);
  formulas.push_back(init);
  dfa.accepting.push_back(false);  // empty trace is not a trace
  dfa.state_labels.push_back(pretty_print(init, props));
  dfa.initial = {0};
  // the initial state is interned under a private key on purpose
  ids["#init"] = 0;

  auto intern = [&](const FormulaPtr& g) -> int {
    const std::string key = detail::state_key(g);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const int id = (int)formulas.size();
    if (id >= state_budget) throw TranslationBudgetExceeded(state_budget);
    ids.emplace(key, id);
    formulas.push_back(g);
    dfa.accepting.push_back(detail::eval_empty(g));
    dfa.state_labels.push_back(pretty_print(g, props));
    return id;
  };

  std::queue<int> work;
  work.push(0);
  std::set<int> expanded;
  std::map<int, std::vector<int>> rows;
  while (!work.empty()) {
    const int q = work.front();
    work.pop();
    if (!expanded.insert(q).second) continue;
    std::vector<int> row(nsym);
    for (int a = 0; a < nsym; ++a) {
      FormulaPtr next = simplify(detail::progress(formulas[q], a));
      const int to = intern(next);
      row[a] = to;
      if (!expanded.count(to)) work.push(to);
    }
    rows[q] = std::move(row);
  }

  dfa.num_states = (int)formulas.size();
  dfa.delta.assign((size_t)dfa.num_states * nsym, 0);
  for (auto& [q, row] : rows)
    for (int a = 0; a < nsym; ++a) dfa.delta[(size_t)q * nsym + a] = row[a];
  dfa.check_valid();
  return dfa;
}

// Language-preserving minimization: trim unreachable states, then Moore
// partition refinement on the total transition table.
inline Dfa minimize(const Dfa& in) {
  in.check_valid();
  const int nsym = in.alphabet_size();

  // reachability trim
  std::vector<int> remap(in.num_states, -1);
  std::vector<int> order;
  {
    std::queue<int> bfs;
    for (int q0 : in.initial)
      if (remap[q0] < 0) {
        remap[q0] = 0;
        bfs.push(q0);
      }
    while (!bfs.empty()) {
      int q = bfs.front();
      bfs.pop();
      order.push_back(q);
      for (int a = 0; a < nsym; ++a) {
        int t = in.d(q, a);
        if (remap[t] < 0) {
          remap[t] = 0;
          bfs.push(t);
        }
      }
    }
  }

  std::vector<int> cls(in.num_states, -1);
  for (int q : order) cls[q] = in.accepting[q] ? 1 : 0;

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next_cls(in.num_states, -1);
    for (int q : order) {
      std::vector<int> sig;
      sig.reserve(nsym + 1);
      sig.push_back(cls[q]);
      for (int a = 0; a < nsym; ++a) sig.push_back(cls[in.d(q, a)]);
      auto [it, inserted] = sig_to_class.emplace(sig, (int)sig_to_class.size());
      next_cls[q] = it->second;
    }
    for (int q : order)
      if (next_cls[q] != cls[q]) changed = true;
    if (changed) cls = next_cls;
    if ((int)sig_to_class.size() == (int)order.size()) break;  // fully split
  }

  // renumber classes in BFS discovery order for stable output
  std::map<int, int> class_id;
  Dfa out;
  out.ap = in.ap;
  for (int q : order)
    if (!class_id.count(cls[q])) {
      int id = (int)class_id.size();
      class_id[cls[q]] = id;
      out.accepting.push_back(in.accepting[q]);
      out.state_labels.push_back(in.state_labels.empty() ? "" : in.state_labels[q]);
    }
  out.num_states = (int)class_id.size();
  out.delta.assign((size_t)out.num_states * nsym, -1);
  for (int q : order) {
    int c = class_id[cls[q]];
    for (int a = 0; a < nsym; ++a) out.delta[(size_t)c * nsym + a] = class_id[cls[in.d(q, a)]];
  }
  std::set<int> inits;
  for (int q0 : in.initial)
    if (remap[q0] == 0) inits.insert(class_id[cls[q0]]);
  out.initial.assign(inits.begin(), inits.end());
  out.check_valid();
  return out;
}

// Graphviz export; accepting states are double-circled, parallel edges are
// merged with comma-joined labels.
inline std::string to_dot(const Dfa& dfa, const std::string& name = "dfa") {
  if (dfa.ap.empty()) throw std::invalid_argument("to_dot: empty alphabet");
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int q = 0; q < dfa.num_states; ++q) {
    os << "  q" << q << " [label=\"q" << q << "\"";
    if (dfa.accepting[q]) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (size_t i = 0; i < dfa.initial.size(); ++i) {
    os << "  init" << i << " [shape=point];\n";
    os << "  init" << i << " -> q" << dfa.initial[i] << ";\n";
  }
  for (int q = 0; q < dfa.num_states; ++q) {
    std::map<int, std::string> edges;
    for (int a = 0; a < dfa.alphabet_size(); ++a) {
      std::string& lbl = edges[dfa.d(q, a)];
      if (!lbl.empty()) lbl += ",";
      lbl += dfa.ap[a];
    }
    for (auto& [to, lbl] : edges)
      os << "  q" << q << " -> q" << to << " [label=\"" << lbl << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace synth
