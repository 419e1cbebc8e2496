#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include <sqed/errors.hpp>
#include <sqed/ts.hpp>
#include <sqed/zoo.hpp>

using namespace sqed;

namespace {

BuiltSystem toy() { return build_system(builtin_config("toy4")); }

}  // namespace

TEST_CASE("step applies opcode semantics and advances the history window") {
  auto b = toy();
  State s = b.sys.initial_state({1, 2, 0, 0});
  REQUIRE(b.sys.is_initial(s));

  // ADD l0 <- l0 l1 over values mod 4
  State s2 = b.sys.step(s, Instruction{0, 0, {0, 1}});
  CHECK(s2.arch == ArchState{3, 2, 0, 0});
  // window of length 1, five opcodes: tag = opcode id + 1
  CHECK(s2.narch == 1);
  CHECK_FALSE(b.sys.is_initial(s2));

  State s3 = b.sys.step(s2, Instruction{1, 3, {0, 0}});  // MUL l3 <- l0 l0
  CHECK(s3.arch == ArchState{3, 2, 0, 1});               // 3 * 3 = 9 mod 4
  CHECK(s3.narch == 2);
}

TEST_CASE("step is deterministic and total over the regular alphabet") {
  auto b = toy();
  State s = b.sys.initial_state({3, 1, 2, 0});
  for (const Instruction& i : regular_alphabet(b.sys)) {
    State a = b.sys.step(s, i);
    State c = b.sys.step(s, i);
    CHECK(a == c);
  }
  CHECK(regular_alphabet(b.sys).size() == 3u * 4 * 4 * 4);
}

TEST_CASE("run records every intermediate state") {
  auto b = toy();
  State s0 = b.sys.initial_state({1, 2, 0, 0});
  InstrSeq seq = {Instruction{0, 0, {0, 1}}, Instruction{2, 3, {0, 0}}};
  Path p = b.sys.run(s0, seq);
  REQUIRE(p.states.size() == 3);
  CHECK(p.initial() == s0);
  CHECK(p.states[1] == b.sys.step(s0, seq[0]));
  CHECK(p.final_state() == b.sys.step(p.states[1], seq[1]));
  CHECK(p.final_state().arch == ArchState{3, 2, 0, 3});
}

TEST_CASE("malformed states and instructions are rejected") {
  auto b = toy();
  CHECK_THROWS_AS(b.sys.validate_state(State{{1, 2, 0}, 0}), DomainError);
  CHECK_THROWS_AS(b.sys.validate_state(State{{1, 2, 0, 4}, 0}), DomainError);
  CHECK_THROWS_AS(b.sys.validate_state(State{{0, 0, 0, 0}, 99}), DomainError);
  CHECK_THROWS_AS(b.sys.validate_instr(Instruction{77, 0, {0, 0}}),
                  DomainError);
  CHECK_THROWS_AS(b.sys.validate_instr(Instruction{0, 9, {0, 0}}),
                  DomainError);
  CHECK_THROWS_AS(b.sys.validate_instr(Instruction{0, 0, {9, 0}}),
                  DomainError);
  State s = b.sys.initial_state({0, 0, 0, 0});
  CHECK_THROWS_AS(b.sys.step(s, Instruction{0, 9, {0, 0}}), DomainError);
}

TEST_CASE("soft reset clears the window and keeps the architectural part") {
  auto b = toy();
  State s = b.sys.initial_state({1, 2, 3, 0});
  s = b.sys.step(s, Instruction{0, 0, {0, 1}});
  REQUIRE(s.narch != 0);
  State r = b.sys.step(s, soft_reset_instr(b.sys));
  CHECK(r.arch == s.arch);
  CHECK(r.narch == 0);
}

TEST_CASE("hard reset jumps to the interned target from anywhere") {
  auto b = toy();
  State target = b.sys.initial_state({2, 0, 2, 0});
  Instruction hr = hard_reset_instr(b.sys, target);
  State s = b.sys.initial_state({3, 3, 3, 3});
  s = b.sys.step(s, Instruction{1, 0, {0, 1}});
  State r = b.sys.step(s, hr);
  CHECK(r == target);
}

TEST_CASE("reset target table interns each state once") {
  auto b = toy();
  State t1 = b.sys.initial_state({1, 0, 0, 0});
  State t2 = b.sys.initial_state({0, 1, 0, 0});
  std::uint32_t a = b.sys.intern_reset_target(t1);
  std::uint32_t c = b.sys.intern_reset_target(t2);
  CHECK(a != c);
  CHECK(b.sys.intern_reset_target(t1) == a);
  REQUIRE(b.sys.reset_target(a) != nullptr);
  CHECK(*b.sys.reset_target(a) == t1);
  CHECK(*b.sys.reset_target(c) == t2);
  CHECK(b.sys.reset_target(1u << 30) == nullptr);
}

TEST_CASE("nop recognition covers self-moves but not arithmetic") {
  auto b = toy();
  CHECK(b.sys.is_nop_instr(Instruction{2, 1, {1, 0}}));   // MOV l1 <- l1
  CHECK_FALSE(b.sys.is_nop_instr(Instruction{2, 1, {0, 0}}));
  CHECK_FALSE(b.sys.is_nop_instr(Instruction{0, 0, {0, 1}}));
  CHECK(b.sys.is_nop_instr(soft_reset_instr(b.sys)));
}

TEST_CASE("opcode lookup by name and role") {
  auto b = toy();
  REQUIRE(b.sys.find_opcode("MUL"));
  CHECK(b.sys.opcode(*b.sys.find_opcode("MUL")).name == "MUL");
  CHECK_FALSE(b.sys.find_opcode("DIV"));
  REQUIRE(b.sys.role_opcode(OpcodeRole::SoftReset));
  REQUIRE(b.sys.role_opcode(OpcodeRole::HardReset));
  CHECK_FALSE(b.sys.role_opcode(OpcodeRole::Nop));
}

TEST_CASE("breadth-first reachability matches brute-force enumeration") {
  auto b = toy();
  InstrSeq alpha = {Instruction{0, 0, {0, 1}}, Instruction{1, 1, {0, 1}},
                    Instruction{2, 2, {0, 0}}};
  std::vector<State> inits = {b.sys.initial_state({0, 0, 0, 0}),
                              b.sys.initial_state({1, 2, 3, 0})};
  const std::uint32_t depth = 3;

  Reach r = reach_bfs(b.sys, inits, alpha, depth, 1u << 20);
  REQUIRE(r.complete);

  // Brute force: run every sequence of length <= depth.
  std::set<State> expect(inits.begin(), inits.end());
  std::vector<InstrSeq> frontier = {{}};
  for (std::uint32_t d = 0; d < depth; ++d) {
    std::vector<InstrSeq> next;
    for (const InstrSeq& seq : frontier)
      for (const Instruction& i : alpha) {
        InstrSeq s2 = seq;
        s2.push_back(i);
        for (const State& s0 : inits)
          expect.insert(b.sys.run(s0, s2).final_state());
        next.push_back(s2);
      }
    frontier = std::move(next);
  }
  std::set<State> got;
  for (const auto& n : r.nodes) got.insert(n.state);
  CHECK(got == expect);
}

TEST_CASE("reach prefixes replay to their node") {
  auto b = toy();
  InstrSeq alpha = {Instruction{0, 0, {0, 1}}, Instruction{1, 1, {1, 1}}};
  std::vector<State> inits = {b.sys.initial_state({1, 2, 0, 0}),
                              b.sys.initial_state({2, 3, 0, 0})};
  Reach r = reach_bfs(b.sys, inits, alpha, 3, 1u << 20);
  REQUIRE(r.complete);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    InstrSeq pre = reach_prefix(r, i);
    CHECK(pre.size() == r.nodes[i].depth);
    const State& root = r.nodes[reach_root(r, i)].state;
    CHECK(r.nodes[reach_root(r, i)].depth == 0);
    CHECK(b.sys.run(root, pre).final_state() == r.nodes[i].state);
  }
}

TEST_CASE("state budget cuts exploration off with complete=false") {
  auto b = toy();
  std::vector<State> inits = {b.sys.initial_state({1, 2, 3, 0})};
  Reach r = reach_bfs(b.sys, inits, regular_alphabet(b.sys), 4, 10);
  CHECK_FALSE(r.complete);
  CHECK(r.nodes.size() >= 10);
  CHECK_THROWS_AS(
      enumerate_reachable(b.sys, inits, regular_alphabet(b.sys), 4, 10),
      ResourceError);
}

TEST_CASE("enumerate_reachable agrees with reach_bfs") {
  auto b = toy();
  std::vector<State> inits = {b.sys.initial_state({1, 0, 0, 0})};
  InstrSeq alpha = {Instruction{0, 1, {0, 0}}, Instruction{2, 0, {1, 0}}};
  Reach r = reach_bfs(b.sys, inits, alpha, 2, 1u << 20);
  auto states = enumerate_reachable(b.sys, inits, alpha, 2, 1u << 20);
  REQUIRE(states.size() == r.nodes.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    CHECK(states[i] == r.nodes[i].state);
}
