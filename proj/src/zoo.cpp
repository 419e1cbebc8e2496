#include "sqed/zoo.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sqed/errors.hpp"
#include "sqed/expr.hpp"

namespace sqed {

namespace {

struct CompiledInjection {
  OpcodeId op = 0;
  // Window digits to require, newest first; empty matches any window.
  std::vector<std::uint32_t> digits;
  std::optional<Location> out, in1, in2;
  BugEffect effect;
};

std::uint64_t pow_checked(std::uint64_t base, std::uint32_t exp,
                          std::uint64_t cap, const std::string& what) {
  std::uint64_t n = 1;
  for (std::uint32_t k = 0; k < exp; ++k) {
    n *= base;
    if (n > cap)
      throw ConfigError(what + " would need " + std::to_string(n) +
                        "+ states; raise is capped at " + std::to_string(cap));
  }
  return n;
}

OpcodeId opcode_index(const std::vector<OpcodeDecl>& decls,
                      const std::string& name, const std::string& ctx) {
  for (std::size_t i = 0; i < decls.size(); ++i)
    if (decls[i].name == name) return static_cast<OpcodeId>(i);
  throw ConfigError(ctx + ": unknown opcode \"" + name + "\"");
}

}  // namespace

BuiltSystem build_system(const ProcessorConfig& input) {
  ProcessorConfig cfg = input;
  if (cfg.name.empty()) throw ConfigError("config field \"name\" is empty");
  if (cfg.values < 2)
    throw ConfigError("config field \"values\" must be at least 2");
  if (cfg.locations < 2 || cfg.locations % 2 != 0)
    throw ConfigError("config field \"locations\" must be even and >= 2");
  if (cfg.opcodes.empty())
    throw ConfigError("config field \"opcodes\" is empty");

  if (cfg.soft_reset) {
    for (const auto& od : cfg.opcodes)
      if (od.role == OpcodeRole::SoftReset)
        throw ConfigError("soft_reset flag set but a soft-reset opcode \"" +
                          od.name + "\" is already declared");
    cfg.opcodes.push_back(OpcodeDecl{"SR", OpcodeRole::SoftReset, "", ""});
  }
  if (cfg.hard_reset) {
    for (const auto& od : cfg.opcodes)
      if (od.role == OpcodeRole::HardReset)
        throw ConfigError("hard_reset flag set but a hard-reset opcode \"" +
                          od.name + "\" is already declared");
    cfg.opcodes.push_back(OpcodeDecl{"HR", OpcodeRole::HardReset, "", ""});
  }

  std::set<std::string> names;
  int soft = 0, hard = 0;
  for (const auto& od : cfg.opcodes) {
    if (od.name.empty()) throw ConfigError("opcode with empty name");
    if (!names.insert(od.name).second)
      throw ConfigError("opcode \"" + od.name + "\" declared twice");
    if (od.role == OpcodeRole::SoftReset && ++soft > 1)
      throw ConfigError("more than one soft-reset opcode");
    if (od.role == OpcodeRole::HardReset && ++hard > 1)
      throw ConfigError("more than one hard-reset opcode");
    if (od.role == OpcodeRole::Regular && od.expr.empty())
      throw ConfigError("regular opcode \"" + od.name + "\" needs an expr");
  }

  const auto op_count = static_cast<std::uint32_t>(cfg.opcodes.size());
  const std::uint64_t window_base = op_count + 1;
  const auto narch_count = static_cast<std::uint32_t>(pow_checked(
      window_base, cfg.history, 1u << 20, "opcode-history window"));

  // Execution and contract functions per opcode.
  std::vector<OpcodeFn> exec_fns(op_count), spec_fns(op_count);
  for (OpcodeId id = 0; id < op_count; ++id) {
    const OpcodeDecl& od = cfg.opcodes[id];
    if (od.role != OpcodeRole::Regular) {
      if (!od.expr.empty() || !od.spec_expr.empty())
        throw ConfigError("opcode \"" + od.name +
                          "\": expressions are for regular opcodes only");
      continue;
    }
    Expr ex = Expr::parse(od.expr);
    const std::uint32_t mod = cfg.values;
    exec_fns[id] = [ex, mod](Value a, Value b) { return ex.eval(a, b, mod); };
    if (od.spec_expr.empty()) {
      spec_fns[id] = exec_fns[id];
    } else {
      Expr sx = Expr::parse(od.spec_expr);
      spec_fns[id] = [sx, mod](Value a, Value b) { return sx.eval(a, b, mod); };
    }
  }

  // Injection compilation and validation.
  std::vector<CompiledInjection> inj;
  for (std::size_t bi = 0; bi < cfg.bugs.size(); ++bi) {
    const BugInjection& b = cfg.bugs[bi];
    const std::string ctx = "bugs[" + std::to_string(bi) + "]";
    CompiledInjection c;
    c.op = opcode_index(cfg.opcodes, b.trigger.opcode, ctx);
    if (cfg.opcodes[c.op].role != OpcodeRole::Regular)
      throw ConfigError(ctx + ": injections only apply to regular opcodes");
    if (b.trigger.history.size() > cfg.history)
      throw ConfigError(ctx + ": history pattern longer than the window (" +
                        std::to_string(cfg.history) + ")");
    for (auto it = b.trigger.history.rbegin(); it != b.trigger.history.rend();
         ++it) {
      OpcodeId h = opcode_index(cfg.opcodes, *it, ctx);
      OpcodeRole role = cfg.opcodes[h].role;
      if (role != OpcodeRole::Regular && role != OpcodeRole::Nop)
        throw ConfigError(ctx + ": \"" + *it +
                          "\" never appears in the history window");
      c.digits.push_back(h + 1);
    }
    auto check_loc = [&](const char* field,
                         const std::optional<Location>& v) {
      if (v && *v >= cfg.locations)
        throw ConfigError(ctx + ": trigger." + std::string(field) +
                          " out of range");
    };
    check_loc("out", b.trigger.out);
    check_loc("in1", b.trigger.in1);
    check_loc("in2", b.trigger.in2);
    c.out = b.trigger.out;
    c.in1 = b.trigger.in1;
    c.in2 = b.trigger.in2;
    c.effect = b.effect;
    if (!b.effect.type_a && !b.effect.type_b)
      throw ConfigError(ctx + ": effect does nothing");
    if (b.effect.type_a &&
        (b.effect.delta_v == 0 || b.effect.delta_v >= cfg.values))
      throw ConfigError(ctx + ": delta_v must lie in [1, |V|-1]");
    if (b.effect.type_b) {
      if (b.effect.bad >= cfg.locations)
        throw ConfigError(ctx + ": effect.bad out of range");
      if (b.effect.write >= cfg.values)
        throw ConfigError(ctx + ": effect.write out of range");
    }
    inj.push_back(std::move(c));
  }

  std::vector<OpcodeInfo> infos;
  infos.reserve(op_count);
  for (OpcodeId id = 0; id < op_count; ++id) {
    OpcodeInfo info;
    info.name = cfg.opcodes[id].name;
    info.role = cfg.opcodes[id].role;
    if (info.role == OpcodeRole::Regular) {
      bool copies = true;
      for (Value a = 0; a < cfg.values && copies; ++a)
        for (Value b = 0; b < cfg.values && copies; ++b)
          copies = exec_fns[id](a, b) == a;
      // A self-move is only architecture-preserving if no injection can
      // rewrite this opcode's behavior.
      for (const auto& c : inj)
        if (c.op == id) copies = false;
      info.copies_first = copies;
    }
    infos.push_back(std::move(info));
  }

  const std::uint32_t values = cfg.values;
  const std::uint32_t history = cfg.history;
  std::vector<OpcodeRole> roles(op_count);
  for (OpcodeId id = 0; id < op_count; ++id) roles[id] = cfg.opcodes[id].role;

  auto shift_window = [window_base, narch_count,
                       history](std::uint32_t tag, OpcodeId op) -> std::uint32_t {
    if (history == 0) return 0;
    std::uint64_t next =
        (static_cast<std::uint64_t>(tag) * window_base + (op + 1)) % narch_count;
    return static_cast<std::uint32_t>(next);
  };

  auto matches = [window_base](const CompiledInjection& c, std::uint32_t tag,
                               const Instruction& i) -> bool {
    if (i.op != c.op) return false;
    if (c.out && *c.out != i.out) return false;
    if (c.in1 && *c.in1 != i.in[0]) return false;
    if (c.in2 && *c.in2 != i.in[1]) return false;
    std::uint32_t w = tag;
    for (std::uint32_t want : c.digits) {
      if (w % window_base != want) return false;
      w /= window_base;
    }
    return true;
  };

  TransitionSystem::Delta delta =
      [values, roles, exec_fns, inj, shift_window,
       matches](const State& s, const Instruction& i) -> State {
    switch (roles[i.op]) {
      case OpcodeRole::SoftReset:
        return State{s.arch, 0};
      case OpcodeRole::Nop:
        return State{s.arch, shift_window(s.narch, i.op)};
      case OpcodeRole::HardReset:
        // Handled by the core before delta is consulted.
        return s;
      case OpcodeRole::Regular:
        break;
    }
    State t;
    t.arch = s.arch;
    const Value intended = exec_fns[i.op](s.arch[i.in[0]], s.arch[i.in[1]]);
    t.arch[i.out] = intended;
    for (const auto& c : inj) {
      if (!matches(c, s.narch, i)) continue;
      if (c.effect.type_a)
        t.arch[i.out] = (intended + c.effect.delta_v) % values;
      if (c.effect.type_b && c.effect.bad != i.out)
        t.arch[c.effect.bad] = c.effect.write;
    }
    t.narch = shift_window(s.narch, i.op);
    return t;
  };

  TransitionSystem sys(cfg.name, cfg.values, cfg.locations, narch_count,
                       std::move(infos), std::move(delta));

  DupMap dup = cfg.dup_originals.empty() && cfg.dup_duplicates.empty()
                   ? half_split(cfg.locations)
                   : DupMap::make(cfg.locations, cfg.dup_originals,
                                  cfg.dup_duplicates);

  SpecRelation spec(cfg.values, std::move(spec_fns));

  // Search defaults sanity.
  if (cfg.search.bound < 1)
    throw ConfigError("search.bound must be at least 1");
  if (cfg.search.families.empty())
    throw ConfigError("search.families is empty");
  for (const Instruction& i : cfg.search.alphabet) {
    sys.validate_instr(i);
    if (sys.opcode(i.op).role != OpcodeRole::Regular)
      throw ConfigError("search.alphabet must hold regular instructions");
    if (classify_instr(dup, i) != InstrClass::Original)
      throw ConfigError("search.alphabet instruction " +
                        sys.instr_to_string(i) + " is not original");
  }

  return BuiltSystem{std::move(sys), std::move(spec), std::move(dup),
                     std::move(cfg)};
}

Instruction soft_reset_instr(const TransitionSystem& sys) {
  auto op = sys.role_opcode(OpcodeRole::SoftReset);
  if (!op) throw DomainError(sys.name() + " has no soft-reset instruction");
  return Instruction{*op, 0, {0, 0}};
}

Instruction hard_reset_instr(const TransitionSystem& sys, const State& target) {
  auto op = sys.role_opcode(OpcodeRole::HardReset);
  if (!op) throw DomainError(sys.name() + " has no hard-reset instruction");
  std::uint32_t idx = sys.intern_reset_target(target);
  return Instruction{*op, idx, {0, 0}};
}

InstrSeq nop_alphabet(const TransitionSystem& sys) {
  InstrSeq out;
  for (OpcodeId op = 0; op < sys.opcodes().size(); ++op) {
    const OpcodeInfo& info = sys.opcodes()[op];
    if (info.role == OpcodeRole::Nop || info.role == OpcodeRole::SoftReset) {
      out.push_back(Instruction{op, 0, {0, 0}});
    } else if (info.role == OpcodeRole::Regular && info.copies_first) {
      for (Location l = 0; l < sys.locations(); ++l)
        out.push_back(Instruction{op, l, {l, l}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

InstrSeq original_alphabet(const TransitionSystem& sys, const DupMap& m) {
  InstrSeq out;
  for (const Instruction& i : regular_alphabet(sys))
    if (classify_instr(m, i) == InstrClass::Original) out.push_back(i);
  return out;
}

namespace {

ProcessorConfig toy4_base(const std::string& name) {
  ProcessorConfig c;
  c.name = name;
  c.values = 4;
  c.locations = 4;
  c.history = 1;
  c.opcodes = {OpcodeDecl{"ADD", OpcodeRole::Regular, "a + b", ""},
               OpcodeDecl{"MUL", OpcodeRole::Regular, "a * b", ""},
               OpcodeDecl{"MOV", OpcodeRole::Regular, "a", ""}};
  c.soft_reset = true;
  c.hard_reset = true;
  c.search.bound = 2;
  c.search.families = {TestFamily::Standard, TestFamily::Extended,
                       TestFamily::Interleaved};
  c.search.inits.kind = InitEnum::Kind::Exhaustive;
  return c;
}

BugInjection history_bug(std::vector<std::string> hist, std::string op,
                         BugEffect effect) {
  BugInjection b;
  b.trigger.history = std::move(hist);
  b.trigger.opcode = std::move(op);
  b.effect = effect;
  return b;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"toy4",   "mulmul4", "stomp4", "both4", "movadd4",
          "si4",    "deep4",   "tiny2",  "tiny2x", "ridecore-lite"};
}

ProcessorConfig builtin_config(const std::string& name) {
  if (name == "toy4") return toy4_base("toy4");

  if (name == "mulmul4") {
    ProcessorConfig c = toy4_base("mulmul4");
    BugEffect e;
    e.type_a = true;
    e.delta_v = 1;
    c.bugs = {history_bug({"MUL"}, "MUL", e)};
    c.search.bound = 3;
    return c;
  }
  if (name == "stomp4") {
    ProcessorConfig c = toy4_base("stomp4");
    BugEffect e;
    e.type_b = true;
    e.bad = 3;
    e.write = 0;
    c.bugs = {history_bug({"ADD"}, "ADD", e)};
    return c;
  }
  if (name == "both4") {
    ProcessorConfig c = toy4_base("both4");
    BugEffect e;
    e.type_a = true;
    e.delta_v = 1;
    e.type_b = true;
    e.bad = 3;
    e.write = 1;
    c.bugs = {history_bug({"MUL"}, "ADD", e)};
    return c;
  }
  if (name == "movadd4") {
    ProcessorConfig c = toy4_base("movadd4");
    BugEffect e;
    e.type_a = true;
    e.delta_v = 2;
    c.bugs = {history_bug({"MOV"}, "ADD", e)};
    return c;
  }
  if (name == "si4") {
    ProcessorConfig c = toy4_base("si4");
    BugEffect e;
    e.type_a = true;
    e.delta_v = 1;
    c.bugs = {history_bug({}, "MUL", e)};  // fires from any window, n0 included
    return c;
  }
  if (name == "deep4") {
    ProcessorConfig c = toy4_base("deep4");
    c.history = 2;
    BugEffect e;
    e.type_a = true;
    e.delta_v = 1;
    c.bugs = {history_bug({"MUL", "MUL"}, "ADD", e)};
    c.search.bound = 3;
    return c;
  }
  if (name == "tiny2") {
    ProcessorConfig c;
    c.name = "tiny2";
    c.values = 2;
    c.locations = 2;
    c.history = 1;
    c.opcodes = {OpcodeDecl{"XOR", OpcodeRole::Regular, "a + b", ""},
                 OpcodeDecl{"AND", OpcodeRole::Regular, "a * b", ""}};
    c.soft_reset = true;
    c.hard_reset = true;
    c.search.bound = 2;
    c.search.families = {TestFamily::Standard};
    c.search.inits.kind = InitEnum::Kind::Exhaustive;
    return c;
  }
  if (name == "tiny2x") {
    ProcessorConfig c = builtin_config("tiny2");
    c.name = "tiny2x";
    BugEffect e;
    e.type_a = true;
    e.delta_v = 1;
    c.bugs = {history_bug({"XOR"}, "XOR", e)};
    return c;
  }
  if (name == "ridecore-lite") {
    ProcessorConfig c;
    c.name = "ridecore-lite";
    c.values = 16;
    c.locations = 32;
    c.history = 1;
    c.opcodes = {OpcodeDecl{"ADD", OpcodeRole::Regular, "a + b", ""},
                 OpcodeDecl{"MUL", OpcodeRole::Regular, "a * b", ""},
                 OpcodeDecl{"MOV", OpcodeRole::Regular, "a", ""},
                 OpcodeDecl{"NOP", OpcodeRole::Nop, "", ""}};
    c.soft_reset = true;
    c.hard_reset = true;
    BugEffect e;
    e.type_a = true;
    e.delta_v = 1;
    c.bugs = {history_bug({"MUL"}, "MUL", e)};
    c.search.bound = 3;
    c.search.families = {TestFamily::Standard, TestFamily::Interleaved};
    // The two instructions of the worked multiplier scenario.
    c.search.alphabet = {Instruction{0, 12, {4, 15}},
                         Instruction{1, 15, {12, 12}}};
    c.search.inits.kind = InitEnum::Kind::Sample;
    c.search.inits.count = 4;
    c.search.inits.seed = 7;
    return c;
  }
  throw ConfigError("unknown built-in system \"" + name + "\"");
}

std::vector<ProcessorConfig> builtin_corpus() {
  std::vector<ProcessorConfig> out;
  for (const std::string& n : builtin_names()) out.push_back(builtin_config(n));
  return out;
}

}  // namespace sqed
