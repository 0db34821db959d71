#pragma once

// Hand-built automata and small systems shared across the test suite.

#include <set>
#include <utility>
#include <vector>

#include "synth/automaton.hpp"
#include "synth/formula.hpp"

namespace fixtures {

inline synth::PropositionSet props4() { return {{"p0", "p1", "p2", "p3"}}; }

// DFA accepting the negation of phi = (p0 & (G !p1 | G !p2)) | (p2 & G !p1),
// with the layout of the paper's five-state automaton: q3 is the accepting
// sink (its self-loops make the table total), Q_s \ F = {q1, q2, q4}.
inline synth::Dfa fig1b() {
  synth::Dfa d;
  d.ap = {"p0", "p1", "p2", "p3"};
  d.num_states = 5;
  d.initial = {0};
  d.accepting = {false, false, false, true, false};
  auto set = [&](std::vector<int>& row, int p0, int p1, int p2, int p3) {
    row = {p0, p1, p2, p3};
  };
  std::vector<std::vector<int>> rows(5);
  set(rows[0], 1, 3, 4, 3);  // q0: p0->q1, p1->q3, p2->q4, p3->q3
  set(rows[1], 1, 2, 4, 1);  // q1: waits for both p1 and p2
  set(rows[2], 2, 2, 3, 2);  // q2: waits for p2
  set(rows[3], 3, 3, 3, 3);  // q3: accepting sink
  set(rows[4], 4, 3, 4, 4);  // q4: waits for p1
  for (const auto& r : rows) d.delta.insert(d.delta.end(), r.begin(), r.end());
  d.check_valid();
  return d;
}

// Three-state DFA for the negation of p0 & G !(p1 | p2).
inline synth::Dfa room_temp_dfa() {
  synth::Dfa d;
  d.ap = {"p0", "p1", "p2", "p3"};
  d.num_states = 3;
  d.initial = {0};
  d.accepting = {false, false, true};
  d.delta = {
      1, 2, 2, 2,  // q0
      1, 2, 2, 1,  // q1
      2, 2, 2, 2,  // q2 accepting sink
  };
  d.check_valid();
  return d;
}

// Exhaustive product-construction language equivalence on total DFAs.
inline bool language_equal(const synth::Dfa& a, const synth::Dfa& b) {
  if (a.ap.size() != b.ap.size()) return false;
  std::vector<std::pair<int, int>> work;
  std::set<std::pair<int, int>> seen;
  for (int qa : a.initial)
    for (int qb : b.initial) work.emplace_back(qa, qb);
  // single-initial automata only; good enough for the fixtures here
  while (!work.empty()) {
    auto [qa, qb] = work.back();
    work.pop_back();
    if (!seen.insert({qa, qb}).second) continue;
    if (a.accepting[qa] != b.accepting[qb]) return false;
    for (int s = 0; s < (int)a.ap.size(); ++s) work.emplace_back(a.d(qa, s), b.d(qb, s));
  }
  return true;
}

// All words of the given length over an alphabet of size nsym.
inline std::vector<std::vector<int>> all_words(int nsym, int length) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(length, 0);
  while (true) {
    out.push_back(w);
    int i = length - 1;
    while (i >= 0 && ++w[i] == nsym) w[i--] = 0;
    if (i < 0) break;
  }
  if (length == 0) return {{}};
  return out;
}

}  // namespace fixtures
