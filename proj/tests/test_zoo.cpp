#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <sqed/errors.hpp>
#include <sqed/zoo.hpp>

using namespace sqed;

TEST_CASE("every built-in constructs and knows whether it is clean") {
  auto names = builtin_names();
  REQUIRE(names.size() == 10);
  for (const std::string& n : names) {
    CAPTURE(n);
    BuiltSystem b = build_system(builtin_config(n));
    CHECK(b.sys.name() == n);
    bool clean = n == "toy4" || n == "tiny2";
    CHECK(b.reference() == clean);
    CHECK(b.sys.locations() % 2 == 0);
    CHECK(b.dup.originals().size() == b.sys.locations() / 2);
  }
  CHECK(builtin_corpus().size() == names.size());
  CHECK_THROWS_AS(builtin_config("no-such-system"), ConfigError);
}

TEST_CASE("the multiplier injection fires only after a multiply") {
  auto b = build_system(builtin_config("mulmul4"));
  State s = b.sys.initial_state({2, 3, 0, 0});
  Instruction mul{1, 2, {0, 1}};  // MUL l2 <- l0 l1

  // cold window: intended product
  State s1 = b.sys.step(s, mul);
  CHECK(s1.arch[2] == 2);  // 2 * 3 = 6 mod 4

  // hot window: off by one
  State s2 = b.sys.step(s1, mul);
  CHECK(s2.arch[2] == (2u * 3 + 1) % 4);

  // an intervening ADD cools the window down
  State s3 = b.sys.step(s1, Instruction{0, 3, {0, 0}});
  State s4 = b.sys.step(s3, mul);
  CHECK(s4.arch[2] == 2);
}

TEST_CASE("the everywhere-firing injection corrupts from the start") {
  auto b = build_system(builtin_config("si4"));
  State s = b.sys.initial_state({2, 3, 0, 0});
  State s1 = b.sys.step(s, Instruction{1, 2, {0, 1}});
  CHECK(s1.arch[2] == (2u * 3 + 1) % 4);
}

TEST_CASE("a two-deep window needs both history slots to match") {
  auto b = build_system(builtin_config("deep4"));
  State s = b.sys.initial_state({1, 1, 0, 0});
  Instruction mul{1, 2, {0, 1}};
  Instruction add{0, 3, {0, 1}};

  State after_one = b.sys.step(s, mul);
  CHECK(b.sys.step(after_one, add).arch[3] == 2);  // only one MUL behind

  State after_two = b.sys.step(after_one, mul);
  CHECK(b.sys.step(after_two, add).arch[3] == (1u + 1 + 1) % 4);
}

TEST_CASE("the clobbering injection writes outside its destination") {
  auto b = build_system(builtin_config("stomp4"));
  State s = b.sys.initial_state({1, 1, 2, 3});
  Instruction add{0, 0, {0, 1}};
  State s1 = b.sys.step(s, add);
  CHECK(s1.arch == ArchState{2, 1, 2, 3});
  State s2 = b.sys.step(s1, add);  // ADD after ADD: l3 gets stomped to 0
  CHECK(s2.arch[0] == 3);
  CHECK(s2.arch[3] == 0);
}

TEST_CASE("injections on a copying opcode remove it from the nop set") {
  ProcessorConfig cfg = builtin_config("toy4");
  cfg.name = "movbug4";
  BugInjection inj;
  inj.trigger.opcode = "MOV";
  inj.trigger.history = {"MOV"};
  inj.effect.type_a = true;
  inj.effect.delta_v = 1;
  cfg.bugs = {inj};
  auto b = build_system(cfg);

  auto clean = build_system(builtin_config("toy4"));
  CHECK(clean.sys.opcode(2).copies_first);
  CHECK_FALSE(b.sys.opcode(2).copies_first);

  auto nops = nop_alphabet(b.sys);
  for (const Instruction& i : nops)
    CHECK(b.sys.opcode(i.op).name != "MOV");
  // the self-move genuinely stops being architecture-preserving
  State s = b.sys.initial_state({1, 0, 0, 0});
  State mid = b.sys.step(s, Instruction{2, 0, {0, 0}});
  CHECK_FALSE(b.sys.is_nop_instr(Instruction{2, 0, {0, 0}}));
  CHECK(mid.arch[0] == 1);  // cold window: still a plain copy
}

TEST_CASE("nop alphabet holds self-moves, nop opcodes and the soft reset") {
  auto t = build_system(builtin_config("toy4"));
  auto nops = nop_alphabet(t.sys);
  CHECK(nops.size() == 5);  // 4 MOV self-moves + soft reset
  for (const Instruction& i : nops) CHECK(t.sys.is_nop_instr(i));

  auto rc = build_system(builtin_config("ridecore-lite"));
  auto rc_nops = nop_alphabet(rc.sys);
  auto nop_op = rc.sys.find_opcode("NOP");
  REQUIRE(nop_op);
  CHECK(std::any_of(rc_nops.begin(), rc_nops.end(),
                    [&](const Instruction& i) { return i.op == *nop_op; }));
}

TEST_CASE("alphabets are filtered by role and partition side") {
  auto b = build_system(builtin_config("toy4"));
  CHECK(regular_alphabet(b.sys).size() == 192);
  auto orig = original_alphabet(b.sys, b.dup);
  CHECK(orig.size() == 24);
  for (const Instruction& i : orig)
    CHECK(classify_instr(b.dup, i) == InstrClass::Original);
  CHECK(std::is_sorted(orig.begin(), orig.end()));
}

TEST_CASE("reset instructions require the corresponding opcode") {
  ProcessorConfig cfg = builtin_config("toy4");
  cfg.name = "noreset4";
  cfg.soft_reset = false;
  cfg.hard_reset = false;
  auto b = build_system(cfg);
  CHECK_THROWS_AS(soft_reset_instr(b.sys), DomainError);
  CHECK_THROWS_AS(
      hard_reset_instr(b.sys, b.sys.initial_state({0, 0, 0, 0})),
      DomainError);

  auto full = build_system(builtin_config("toy4"));
  State target = full.sys.initial_state({1, 2, 1, 2});
  Instruction hr = hard_reset_instr(full.sys, target);
  REQUIRE(full.sys.reset_target(hr.out) != nullptr);
  CHECK(*full.sys.reset_target(hr.out) == target);
}

TEST_CASE("declarations are validated before anything executes") {
  ProcessorConfig base = builtin_config("toy4");

  SUBCASE("duplicate opcode names") {
    ProcessorConfig c = base;
    c.opcodes.push_back(OpcodeDecl{"ADD", OpcodeRole::Regular, "a", ""});
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("regular opcode without semantics") {
    ProcessorConfig c = base;
    c.opcodes[0].expr = "";
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("injection on an unknown opcode") {
    ProcessorConfig c = base;
    BugInjection inj;
    inj.trigger.opcode = "DIV";
    inj.effect.type_a = true;
    c.bugs = {inj};
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("injection with no effect") {
    ProcessorConfig c = base;
    BugInjection inj;
    inj.trigger.opcode = "ADD";
    c.bugs = {inj};
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("wrong-value delta outside the value group") {
    ProcessorConfig c = base;
    BugInjection inj;
    inj.trigger.opcode = "ADD";
    inj.effect.type_a = true;
    inj.effect.delta_v = 0;
    c.bugs = {inj};
    CHECK_THROWS_AS(build_system(c), ConfigError);
    inj.effect.delta_v = 4;  // |V| == 4
    c.bugs = {inj};
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("history deeper than the window") {
    ProcessorConfig c = base;  // window length 1
    BugInjection inj;
    inj.trigger.opcode = "ADD";
    inj.trigger.history = {"MUL", "MUL"};
    inj.effect.type_a = true;
    c.bugs = {inj};
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("clobber target outside the register file") {
    ProcessorConfig c = base;
    BugInjection inj;
    inj.trigger.opcode = "ADD";
    inj.effect.type_b = true;
    inj.effect.bad = 17;
    c.bugs = {inj};
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("odd location counts cannot be partitioned") {
    ProcessorConfig c = base;
    c.locations = 5;
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("explicit partition must be a partition") {
    ProcessorConfig c = base;
    c.dup_originals = {0, 1};
    c.dup_duplicates = {2, 2};
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("search alphabet must be original-side") {
    ProcessorConfig c = base;
    c.search.alphabet = {Instruction{0, 2, {2, 3}}};
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
  SUBCASE("search bound must be positive") {
    ProcessorConfig c = base;
    c.search.bound = 0;
    CHECK_THROWS_AS(build_system(c), ConfigError);
  }
}

TEST_CASE("an explicit odd/even partition relocates duplicates") {
  ProcessorConfig c = builtin_config("toy4");
  c.name = "toy4-oddeven";
  c.dup_originals = {0, 2};
  c.dup_duplicates = {1, 3};
  auto b = build_system(c);
  CHECK(b.dup.dup_of(0) == 1);
  CHECK(b.dup.dup_of(2) == 3);
  CHECK(dup_instr(b.dup, Instruction{0, 0, {2, 0}}) ==
        Instruction{0, 1, {3, 1}});
}
