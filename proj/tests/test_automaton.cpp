#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "synth/automaton.hpp"

using namespace synth;

TEST_CASE("translated negation of the running example matches the paper automaton") {
  PropositionSet props = fixtures::props4();
  FormulaPtr phi = parse("(p0 & (G !p1 | G !p2)) | (p2 & G !p1)", props);
  Dfa d = minimize(translate(negate(phi), props));
  REQUIRE(d.num_states == 5);
  // language equality with the hand-built automaton on every word up to length 5
  Dfa ref = fixtures::fig1b();
  for (int len = 1; len <= 5; ++len)
    for (const auto& w : fixtures::all_words(4, len))
      REQUIRE(accepts(d, w) == accepts(ref, w));
}

TEST_CASE("translate(!true) has the empty language") {
  PropositionSet props = fixtures::props4();
  Dfa d = minimize(translate(negate(f_true()), props));
  REQUIRE(d.num_states == 1);
  for (int len = 0; len <= 3; ++len)
    for (const auto& w : fixtures::all_words(4, len)) REQUIRE_FALSE(accepts(d, w));
}

TEST_CASE("translate(F p1) accepts exactly the words containing p1") {
  PropositionSet props{{"p0", "p1"}};
  FormulaPtr phi = parse("F p1", props);
  Dfa d = translate(phi, props);
  for (int len = 1; len <= 6; ++len)
    for (const auto& w : fixtures::all_words(2, len)) {
      const bool has_p1 = std::find(w.begin(), w.end(), 1) != w.end();
      REQUIRE(accepts(d, w) == has_p1);
      REQUIRE(accepts(d, w) == evaluate(phi, w, 0));
    }
}

TEST_CASE("translation soundness on a mixed corpus") {
  PropositionSet props{{"p0", "p1", "p2"}};
  std::vector<std::string> corpus = {
      "p0 U p1", "X p0", "G (p0 | p1)", "F (p0 & X p1)", "!(p0 U p1)", "p0 & G !(p1 | p2)",
  };
  for (const auto& text : corpus) {
    FormulaPtr phi = parse(text, props);
    Dfa d = translate(negate(phi), props);
    for (int len = 1; len <= 5; ++len)
      for (const auto& w : fixtures::all_words(3, len))
        REQUIRE(accepts(d, w) == !evaluate(phi, w, 0));
  }
}

TEST_CASE("accepts follows runs and the empty-word convention") {
  Dfa d = fixtures::fig1b();
  REQUIRE(accepts(d, {1}));           // q0 -> q3 on p1
  REQUIRE(accepts(d, {0, 1, 2}));     // q0 -> q1 -> q2 -> q3
  REQUIRE_FALSE(accepts(d, {0}));
  REQUIRE_FALSE(accepts(d, {}));      // Q0 and F disjoint here
  Dfa sink = d;
  sink.initial = {3};
  REQUIRE(accepts(sink, {}));         // initial state accepting
  REQUIRE_THROWS_AS(accepts(d, {7}), std::out_of_range);
}

TEST_CASE("self_loops on the paper automaton") {
  Dfa d = fixtures::fig1b();
  std::vector<int> qs = self_loops(d);
  // Non-accepting states with self-loops are exactly q1, q2, q4. The
  // accepting sink also self-loops in this total encoding; the paper's
  // figure leaves its outgoing edges undrawn.
  std::vector<int> non_accepting;
  for (int q : qs)
    if (!d.accepting[q]) non_accepting.push_back(q);
  REQUIRE(non_accepting == std::vector<int>{1, 2, 4});
  REQUIRE(std::find(qs.begin(), qs.end(), 3) != qs.end());
}

TEST_CASE("self_loops trivia") {
  // no loops at all
  Dfa d;
  d.ap = {"p0"};
  d.num_states = 2;
  d.initial = {0};
  d.accepting = {false, true};
  d.delta = {1, 0};
  REQUIRE(self_loops(d).empty());
  // single accept-all state
  Dfa one;
  one.ap = {"p0", "p1"};
  one.num_states = 1;
  one.initial = {0};
  one.accepting = {true};
  one.delta = {0, 0};
  REQUIRE(self_loops(one) == std::vector<int>{0});
}

TEST_CASE("minimize is identity on an already-minimal automaton") {
  Dfa d = fixtures::fig1b();
  Dfa m = minimize(d);
  REQUIRE(m.num_states == 5);
  REQUIRE(fixtures::language_equal(d, m));
}

TEST_CASE("minimize collapses duplicated sink states") {
  // two equivalent accepting sinks
  Dfa d;
  d.ap = {"p0", "p1"};
  d.num_states = 4;
  d.initial = {0};
  d.accepting = {false, false, true, true};
  d.delta = {
      1, 2,  // q0
      1, 3,  // q1
      2, 2,  // q2 sink
      3, 3,  // q3 sink (duplicate)
  };
  Dfa m = minimize(d);
  REQUIRE(m.num_states == 3);
  REQUIRE(fixtures::language_equal(d, m));
}

TEST_CASE("minimize keeps an empty-language automaton at one state") {
  Dfa d;
  d.ap = {"p0", "p1"};
  d.num_states = 3;
  d.initial = {0};
  d.accepting = {false, false, false};
  d.delta = {1, 1, 2, 2, 0, 1};
  Dfa m = minimize(d);
  REQUIRE(m.num_states == 1);
  REQUIRE_FALSE(m.accepting[0]);
}

TEST_CASE("minimize preserves acceptance on bounded words") {
  PropositionSet props{{"p0", "p1", "p2"}};
  std::vector<std::string> corpus = {"F (p0 & X p1)", "p0 U (p1 U p2)", "G F p1"};
  for (const auto& text : corpus) {
    Dfa d = translate(parse(text, props), props);
    Dfa m = minimize(d);
    REQUIRE(m.num_states <= d.num_states);
    REQUIRE(fixtures::language_equal(d, m));
  }
}

TEST_CASE("delta stays total and deterministic after construction") {
  PropositionSet props = fixtures::props4();
  Dfa d = translate(parse("p0 & G !(p1 | p2)", props), props);
  REQUIRE_NOTHROW(d.check_valid());
  Dfa m = minimize(d);
  REQUIRE_NOTHROW(m.check_valid());
}

TEST_CASE("state budget is an error, not truncation") {
  PropositionSet props = fixtures::props4();
  REQUIRE_THROWS_AS(translate(parse("(p0 & (G !p1 | G !p2)) | (p2 & G !p1)", props), props, 2),
                    TranslationBudgetExceeded);
}

TEST_CASE("to_dot output shape") {
  Dfa one;
  one.ap = {"p0"};
  one.num_states = 1;
  one.initial = {0};
  one.accepting = {true};
  one.delta = {0};
  std::string dot = to_dot(one);
  REQUIRE(dot.find("digraph") != std::string::npos);
  REQUIRE(dot.find("doublecircle") != std::string::npos);

  Dfa d = fixtures::fig1b();
  std::string big = to_dot(d);
  // five state nodes, accepting double-circled
  for (int q = 0; q < 5; ++q)
    REQUIRE(big.find("q" + std::to_string(q) + " [label") != std::string::npos);
  REQUIRE(big.find("q3 [label=\"q3\", shape=doublecircle]") != std::string::npos);

  Dfa empty_alpha;
  empty_alpha.num_states = 1;
  empty_alpha.initial = {0};
  empty_alpha.accepting = {false};
  REQUIRE_THROWS_AS(to_dot(empty_alpha), std::invalid_argument);
}
