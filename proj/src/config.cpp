#include "sqed/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqed/errors.hpp"

namespace sqed {

namespace {

using njson = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& ctx, const std::string& what) {
  throw ConfigError(ctx.empty() ? what : ctx + ": " + what);
}

void expect_object(const njson& v, const std::string& ctx) {
  if (!v.is_object()) bad(ctx, "expected an object");
}

void reject_unknown(const njson& o, const std::string& ctx,
                    std::initializer_list<const char*> allowed) {
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) bad(ctx, "unknown key \"" + it.key() + "\"");
  }
}

std::string get_string(const njson& o, const std::string& ctx, const char* key,
                       const char* fallback = nullptr) {
  auto it = o.find(key);
  if (it == o.end()) {
    if (fallback) return fallback;
    bad(ctx, std::string("missing \"") + key + "\"");
  }
  if (!it->is_string()) bad(ctx + "." + key, "expected a string");
  return it->get<std::string>();
}

std::uint64_t get_uint(const njson& o, const std::string& ctx, const char* key,
                       std::uint64_t fallback, bool required = false) {
  auto it = o.find(key);
  if (it == o.end()) {
    if (required) bad(ctx, std::string("missing \"") + key + "\"");
    return fallback;
  }
  if (!it->is_number_unsigned())
    bad(ctx + "." + key, "expected a non-negative integer");
  return it->get<std::uint64_t>();
}

bool get_bool(const njson& o, const std::string& ctx, const char* key,
              bool fallback) {
  auto it = o.find(key);
  if (it == o.end()) return fallback;
  if (!it->is_boolean()) bad(ctx + "." + key, "expected a boolean");
  return it->get<bool>();
}

OpcodeRole parse_role(const std::string& s, const std::string& ctx) {
  if (s == "regular") return OpcodeRole::Regular;
  if (s == "nop") return OpcodeRole::Nop;
  bad(ctx, "role must be \"regular\" or \"nop\" (resets come from the "
           "soft_reset/hard_reset flags)");
}

const char* role_string(OpcodeRole r) {
  switch (r) {
    case OpcodeRole::Regular:
      return "regular";
    case OpcodeRole::Nop:
      return "nop";
    case OpcodeRole::SoftReset:
      return "softreset";
    case OpcodeRole::HardReset:
      return "hardreset";
  }
  return "?";
}

OpcodeId opcode_id_by_name(const std::vector<OpcodeDecl>& decls,
                           const std::string& name, const std::string& ctx) {
  for (std::size_t i = 0; i < decls.size(); ++i)
    if (decls[i].name == name) return static_cast<OpcodeId>(i);
  bad(ctx, "unknown opcode \"" + name + "\"");
}

Instruction parse_instr(const njson& o, const std::string& ctx,
                        const std::vector<OpcodeDecl>& decls) {
  expect_object(o, ctx);
  reject_unknown(o, ctx, {"opcode", "out", "in1", "in2"});
  Instruction i;
  i.op = opcode_id_by_name(decls, get_string(o, ctx, "opcode"), ctx);
  i.out = static_cast<Location>(get_uint(o, ctx, "out", 0, true));
  i.in[0] = static_cast<Location>(get_uint(o, ctx, "in1", 0, true));
  i.in[1] = static_cast<Location>(get_uint(o, ctx, "in2", 0, true));
  return i;
}

InitEnum parse_inits(const njson& o, const std::string& ctx) {
  expect_object(o, ctx);
  reject_unknown(o, ctx, {"kind", "count", "seed"});
  InitEnum e;
  std::string kind = get_string(o, ctx, "kind", "exhaustive");
  if (kind == "exhaustive")
    e.kind = InitEnum::Kind::Exhaustive;
  else if (kind == "zero")
    e.kind = InitEnum::Kind::ZeroOnly;
  else if (kind == "sample")
    e.kind = InitEnum::Kind::Sample;
  else
    bad(ctx + ".kind", "expected \"exhaustive\", \"zero\" or \"sample\"");
  e.count = get_uint(o, ctx, "count", e.count);
  e.seed = get_uint(o, ctx, "seed", e.seed);
  return e;
}

const char* init_kind_string(InitEnum::Kind k) {
  switch (k) {
    case InitEnum::Kind::Exhaustive:
      return "exhaustive";
    case InitEnum::Kind::ZeroOnly:
      return "zero";
    case InitEnum::Kind::Sample:
      return "sample";
  }
  return "?";
}

}  // namespace

ProcessorConfig config_from_json(const std::string& text) {
  njson root;
  try {
    root = njson::parse(text);
  } catch (const njson::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  expect_object(root, "config");
  reject_unknown(root, "config",
                 {"schema", "name", "values", "locations", "history",
                  "opcodes", "soft_reset", "hard_reset", "duplication",
                  "bugs", "search"});
  if (get_uint(root, "config", "schema", 0, true) != 1)
    bad("config.schema", "this build reads schema version 1");

  ProcessorConfig cfg;
  cfg.name = get_string(root, "config", "name");
  cfg.values = static_cast<std::uint32_t>(
      get_uint(root, "config", "values", cfg.values));
  cfg.locations = static_cast<std::uint32_t>(
      get_uint(root, "config", "locations", 0, true));
  cfg.history = static_cast<std::uint32_t>(
      get_uint(root, "config", "history", cfg.history));
  cfg.soft_reset = get_bool(root, "config", "soft_reset", false);
  cfg.hard_reset = get_bool(root, "config", "hard_reset", false);

  auto ops = root.find("opcodes");
  if (ops == root.end() || !ops->is_array())
    bad("config.opcodes", "expected an array");
  for (std::size_t i = 0; i < ops->size(); ++i) {
    const njson& o = (*ops)[i];
    const std::string ctx = "opcodes[" + std::to_string(i) + "]";
    expect_object(o, ctx);
    reject_unknown(o, ctx, {"name", "role", "expr", "spec_expr"});
    OpcodeDecl d;
    d.name = get_string(o, ctx, "name");
    d.role = parse_role(get_string(o, ctx, "role", "regular"), ctx);
    d.expr = get_string(o, ctx, "expr", "");
    d.spec_expr = get_string(o, ctx, "spec_expr", "");
    cfg.opcodes.push_back(std::move(d));
  }

  if (auto dup = root.find("duplication"); dup != root.end()) {
    expect_object(*dup, "duplication");
    reject_unknown(*dup, "duplication", {"originals", "duplicates"});
    for (const char* key : {"originals", "duplicates"}) {
      auto arr = dup->find(key);
      if (arr == dup->end() || !arr->is_array())
        bad(std::string("duplication.") + key, "expected an array");
      auto& sink = std::string(key) == "originals" ? cfg.dup_originals
                                                   : cfg.dup_duplicates;
      for (const njson& v : *arr) {
        if (!v.is_number_unsigned())
          bad(std::string("duplication.") + key, "locations are integers");
        sink.push_back(v.get<Location>());
      }
    }
    if (cfg.dup_originals.size() != cfg.dup_duplicates.size())
      bad("duplication", "originals and duplicates must pair up");
  }

  if (auto bugs = root.find("bugs"); bugs != root.end()) {
    if (!bugs->is_array()) bad("config.bugs", "expected an array");
    for (std::size_t i = 0; i < bugs->size(); ++i) {
      const njson& b = (*bugs)[i];
      const std::string ctx = "bugs[" + std::to_string(i) + "]";
      expect_object(b, ctx);
      reject_unknown(b, ctx, {"trigger", "effect"});
      BugInjection inj;
      auto trig = b.find("trigger");
      if (trig == b.end()) bad(ctx, "missing \"trigger\"");
      expect_object(*trig, ctx + ".trigger");
      reject_unknown(*trig, ctx + ".trigger",
                     {"opcode", "history", "out", "in1", "in2"});
      inj.trigger.opcode = get_string(*trig, ctx + ".trigger", "opcode");
      if (auto h = trig->find("history"); h != trig->end()) {
        if (!h->is_array()) bad(ctx + ".trigger.history", "expected an array");
        for (const njson& v : *h) {
          if (!v.is_string())
            bad(ctx + ".trigger.history", "opcode names are strings");
          inj.trigger.history.push_back(v.get<std::string>());
        }
      }
      if (trig->contains("out"))
        inj.trigger.out = static_cast<Location>(
            get_uint(*trig, ctx + ".trigger", "out", 0, true));
      if (trig->contains("in1"))
        inj.trigger.in1 = static_cast<Location>(
            get_uint(*trig, ctx + ".trigger", "in1", 0, true));
      if (trig->contains("in2"))
        inj.trigger.in2 = static_cast<Location>(
            get_uint(*trig, ctx + ".trigger", "in2", 0, true));
      auto eff = b.find("effect");
      if (eff == b.end()) bad(ctx, "missing \"effect\"");
      expect_object(*eff, ctx + ".effect");
      reject_unknown(*eff, ctx + ".effect",
                     {"type_a", "delta_v", "type_b", "bad", "write"});
      inj.effect.type_a = get_bool(*eff, ctx + ".effect", "type_a", false);
      inj.effect.delta_v = static_cast<std::uint32_t>(
          get_uint(*eff, ctx + ".effect", "delta_v", 1));
      inj.effect.type_b = get_bool(*eff, ctx + ".effect", "type_b", false);
      inj.effect.bad = static_cast<Location>(
          get_uint(*eff, ctx + ".effect", "bad", 0));
      inj.effect.write = static_cast<Value>(
          get_uint(*eff, ctx + ".effect", "write", 0));
      cfg.bugs.push_back(std::move(inj));
    }
  }

  if (auto se = root.find("search"); se != root.end()) {
    expect_object(*se, "search");
    reject_unknown(*se, "search",
                   {"bound", "families", "alphabet", "inits",
                    "max_insertions"});
    cfg.search.bound = static_cast<std::uint32_t>(
        get_uint(*se, "search", "bound", cfg.search.bound));
    if (auto fams = se->find("families"); fams != se->end()) {
      if (!fams->is_array()) bad("search.families", "expected an array");
      cfg.search.families.clear();
      for (const njson& v : *fams) {
        if (!v.is_string()) bad("search.families", "family names are strings");
        auto f = family_from_name(v.get<std::string>());
        if (!f)
          bad("search.families", "unknown family \"" + v.get<std::string>() +
                                     "\"");
        cfg.search.families.push_back(*f);
      }
    }
    if (auto alpha = se->find("alphabet"); alpha != se->end()) {
      if (!alpha->is_array()) bad("search.alphabet", "expected an array");
      for (std::size_t i = 0; i < alpha->size(); ++i)
        cfg.search.alphabet.push_back(
            parse_instr((*alpha)[i],
                        "search.alphabet[" + std::to_string(i) + "]",
                        cfg.opcodes));
    }
    if (auto in = se->find("inits"); in != se->end())
      cfg.search.inits = parse_inits(*in, "search.inits");
    cfg.search.max_insertions = static_cast<std::uint32_t>(
        get_uint(*se, "search", "max_insertions", cfg.search.max_insertions));
  }

  return cfg;
}

ProcessorConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return config_from_json(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ProcessorConfig resolve_config(const std::string& name_or_path) {
  for (const std::string& n : builtin_names())
    if (n == name_or_path) return builtin_config(n);
  return load_config_file(name_or_path);
}

std::string config_to_json(const ProcessorConfig& cfg) {
  ojson root;
  root["schema"] = 1;
  root["name"] = cfg.name;
  root["values"] = cfg.values;
  root["locations"] = cfg.locations;
  root["history"] = cfg.history;
  ojson ops = ojson::array();
  for (const OpcodeDecl& d : cfg.opcodes) {
    // Reset opcodes are represented by the two flags below; a normalized
    // config that already carries them round-trips through the flags.
    if (d.role == OpcodeRole::SoftReset || d.role == OpcodeRole::HardReset)
      continue;
    ojson o;
    o["name"] = d.name;
    o["role"] = role_string(d.role);
    if (!d.expr.empty()) o["expr"] = d.expr;
    if (!d.spec_expr.empty()) o["spec_expr"] = d.spec_expr;
    ops.push_back(std::move(o));
  }
  root["opcodes"] = std::move(ops);
  root["soft_reset"] = cfg.soft_reset;
  root["hard_reset"] = cfg.hard_reset;
  if (!cfg.dup_originals.empty() || !cfg.dup_duplicates.empty()) {
    ojson dup;
    dup["originals"] = cfg.dup_originals;
    dup["duplicates"] = cfg.dup_duplicates;
    root["duplication"] = std::move(dup);
  }
  ojson bugs = ojson::array();
  for (const BugInjection& b : cfg.bugs) {
    ojson o;
    ojson trig;
    trig["opcode"] = b.trigger.opcode;
    trig["history"] = b.trigger.history;
    if (b.trigger.out) trig["out"] = *b.trigger.out;
    if (b.trigger.in1) trig["in1"] = *b.trigger.in1;
    if (b.trigger.in2) trig["in2"] = *b.trigger.in2;
    o["trigger"] = std::move(trig);
    ojson eff;
    eff["type_a"] = b.effect.type_a;
    eff["delta_v"] = b.effect.delta_v;
    eff["type_b"] = b.effect.type_b;
    eff["bad"] = b.effect.bad;
    eff["write"] = b.effect.write;
    o["effect"] = std::move(eff);
    bugs.push_back(std::move(o));
  }
  root["bugs"] = std::move(bugs);
  ojson se;
  se["bound"] = cfg.search.bound;
  ojson fams = ojson::array();
  for (TestFamily f : cfg.search.families) fams.push_back(family_name(f));
  se["families"] = std::move(fams);
  ojson alpha = ojson::array();
  for (const Instruction& i : cfg.search.alphabet) {
    ojson o;
    o["opcode"] = cfg.opcodes[i.op].name;
    o["out"] = i.out;
    o["in1"] = i.in[0];
    o["in2"] = i.in[1];
    alpha.push_back(std::move(o));
  }
  se["alphabet"] = std::move(alpha);
  ojson in;
  in["kind"] = init_kind_string(cfg.search.inits.kind);
  in["count"] = cfg.search.inits.count;
  in["seed"] = cfg.search.inits.seed;
  se["inits"] = std::move(in);
  se["max_insertions"] = cfg.search.max_insertions;
  root["search"] = std::move(se);
  return root.dump(2) + "\n";
}

}  // namespace sqed
