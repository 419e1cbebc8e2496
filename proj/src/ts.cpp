#include "sqed/ts.hpp"

#include <sstream>
#include <unordered_set>
#include <utility>

namespace sqed {

std::uint32_t ResetTargets::intern(const State& target) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(target);
  if (it != index_.end()) return it->second;
  auto idx = static_cast<std::uint32_t>(targets_.size());
  targets_.push_back(std::make_unique<State>(target));
  index_.emplace(target, idx);
  return idx;
}

const State* ResetTargets::lookup(std::uint32_t index) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (index >= targets_.size()) return nullptr;
  return targets_[index].get();
}

std::size_t ResetTargets::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return targets_.size();
}

TransitionSystem::TransitionSystem(std::string name, std::uint32_t values,
                                   std::uint32_t locations,
                                   std::uint32_t narch_count,
                                   std::vector<OpcodeInfo> opcodes, Delta delta)
    : name_(std::move(name)),
      values_(values),
      locations_(locations),
      narch_count_(narch_count),
      opcodes_(std::move(opcodes)),
      delta_(std::move(delta)),
      resets_(std::make_shared<ResetTargets>()) {
  if (values_ < 2) throw ConfigError("system needs at least two values");
  if (locations_ < 2) throw ConfigError("system needs at least two locations");
  if (narch_count_ < 1) throw ConfigError("empty non-architectural set");
  if (opcodes_.empty()) throw ConfigError("empty opcode table");
  if (!delta_) throw ConfigError("missing transition function");
}

const OpcodeInfo& TransitionSystem::opcode(OpcodeId id) const {
  if (id >= opcodes_.size())
    throw DomainError("opcode id " + std::to_string(id) + " out of range");
  return opcodes_[id];
}

std::optional<OpcodeId> TransitionSystem::find_opcode(
    const std::string& name) const {
  for (std::size_t i = 0; i < opcodes_.size(); ++i)
    if (opcodes_[i].name == name) return static_cast<OpcodeId>(i);
  return std::nullopt;
}

std::optional<OpcodeId> TransitionSystem::role_opcode(OpcodeRole role) const {
  for (std::size_t i = 0; i < opcodes_.size(); ++i)
    if (opcodes_[i].role == role) return static_cast<OpcodeId>(i);
  return std::nullopt;
}

State TransitionSystem::initial_state(ArchState arch) const {
  State s{std::move(arch), 0};
  validate_state(s);
  return s;
}

void TransitionSystem::validate_state(const State& s) const {
  if (s.arch.size() != locations_)
    throw DomainError("state has " + std::to_string(s.arch.size()) +
                      " locations, system has " + std::to_string(locations_));
  for (std::size_t l = 0; l < s.arch.size(); ++l)
    if (s.arch[l] >= values_)
      throw DomainError("value " + std::to_string(s.arch[l]) + " at l" +
                        std::to_string(l) + " exceeds |V|-1");
  if (s.narch >= narch_count_)
    throw DomainError("non-architectural tag " + std::to_string(s.narch) +
                      " out of range");
}

void TransitionSystem::validate_instr(const Instruction& i) const {
  if (i.op >= opcodes_.size())
    throw DomainError("opcode id " + std::to_string(i.op) + " out of range");
  if (opcodes_[i.op].role == OpcodeRole::HardReset) {
    if (resets_->lookup(i.out) == nullptr)
      throw DomainError("hard-reset target #" + std::to_string(i.out) +
                        " was never registered");
    return;
  }
  for (Location l : {i.out, i.in[0], i.in[1]})
    if (l >= locations_)
      throw DomainError("location index " + std::to_string(l) +
                        " exceeds |L|-1 in " + instr_to_string(i));
}

State TransitionSystem::step(const State& s, const Instruction& i) const {
  validate_state(s);
  validate_instr(i);
  if (opcodes_[i.op].role == OpcodeRole::HardReset) return *resets_->lookup(i.out);
  return delta_(s, i);
}

Path TransitionSystem::run(const State& s0, const InstrSeq& seq) const {
  Path p;
  p.states.reserve(seq.size() + 1);
  p.instrs = seq;
  p.states.push_back(s0);
  for (const Instruction& i : seq) p.states.push_back(step(p.states.back(), i));
  return p;
}

bool TransitionSystem::is_nop_instr(const Instruction& i) const {
  validate_instr(i);
  switch (opcodes_[i.op].role) {
    case OpcodeRole::Nop:
    case OpcodeRole::SoftReset:
      return true;
    case OpcodeRole::HardReset:
      return false;
    case OpcodeRole::Regular:
      return opcodes_[i.op].copies_first && i.out == i.in[0];
  }
  return false;
}

std::uint32_t TransitionSystem::intern_reset_target(const State& target) const {
  validate_state(target);
  if (target.narch != 0)
    throw DomainError("hard-reset target must be an initial state");
  return resets_->intern(target);
}

const State* TransitionSystem::reset_target(std::uint32_t index) const {
  return resets_->lookup(index);
}

std::string TransitionSystem::instr_to_string(const Instruction& i) const {
  std::ostringstream os;
  if (i.op < opcodes_.size()) {
    const OpcodeInfo& info = opcodes_[i.op];
    if (info.role == OpcodeRole::HardReset) {
      os << info.name << " #" << i.out;
      return os.str();
    }
    os << info.name;
  } else {
    os << "op" << i.op;
  }
  os << " l" << i.out << " <- l" << i.in[0] << " l" << i.in[1];
  return os.str();
}

std::string TransitionSystem::seq_to_string(const InstrSeq& seq) const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (k) os << "; ";
    os << instr_to_string(seq[k]);
  }
  os << "]";
  return os.str();
}

InstrSeq regular_alphabet(const TransitionSystem& sys) {
  InstrSeq out;
  for (OpcodeId op = 0; op < sys.opcodes().size(); ++op) {
    if (sys.opcodes()[op].role != OpcodeRole::Regular) continue;
    for (Location d = 0; d < sys.locations(); ++d)
      for (Location a = 0; a < sys.locations(); ++a)
        for (Location b = 0; b < sys.locations(); ++b)
          out.push_back(Instruction{op, d, {a, b}});
  }
  return out;
}

Reach reach_bfs(const TransitionSystem& sys, const std::vector<State>& inits,
                const InstrSeq& alphabet, std::uint32_t depth,
                std::size_t max_states) {
  Reach r;
  std::unordered_set<State, StateHash> seen;
  for (const State& s : inits) {
    sys.validate_state(s);
    if (!seen.insert(s).second) continue;
    if (r.nodes.size() >= max_states) {
      r.complete = false;
      return r;
    }
    r.nodes.push_back(Reach::Node{s, 0, -1, Instruction{}});
  }
  std::size_t head = 0;
  while (head < r.nodes.size()) {
    // Nodes are appended in depth order, so the frontier is contiguous.
    const std::size_t cur = head++;
    if (r.nodes[cur].depth == depth) continue;
    const State base = r.nodes[cur].state;
    const std::uint32_t d = r.nodes[cur].depth;
    for (const Instruction& i : alphabet) {
      State nxt = sys.step(base, i);
      if (!seen.insert(nxt).second) continue;
      if (r.nodes.size() >= max_states) {
        r.complete = false;
        return r;
      }
      r.nodes.push_back(
          Reach::Node{std::move(nxt), d + 1, static_cast<std::int32_t>(cur), i});
    }
  }
  return r;
}

InstrSeq reach_prefix(const Reach& r, std::size_t idx) {
  InstrSeq rev;
  std::int32_t cur = static_cast<std::int32_t>(idx);
  while (cur >= 0 && r.nodes[cur].pred >= 0) {
    rev.push_back(r.nodes[cur].via);
    cur = r.nodes[cur].pred;
  }
  return InstrSeq(rev.rbegin(), rev.rend());
}

std::size_t reach_root(const Reach& r, std::size_t idx) {
  std::size_t cur = idx;
  while (r.nodes[cur].pred >= 0)
    cur = static_cast<std::size_t>(r.nodes[cur].pred);
  return cur;
}

std::vector<State> enumerate_reachable(const TransitionSystem& sys,
                                       const std::vector<State>& inits,
                                       const InstrSeq& alphabet,
                                       std::uint32_t depth,
                                       std::size_t max_states) {
  Reach r = reach_bfs(sys, inits, alphabet, depth, max_states);
  if (!r.complete)
    throw ResourceError("reachability budget of " + std::to_string(max_states) +
                            " states exceeded; partial count " +
                            std::to_string(r.nodes.size()),
                        r.nodes.size());
  std::vector<State> out;
  out.reserve(r.nodes.size());
  for (auto& n : r.nodes) out.push_back(n.state);
  return out;
}

}  // namespace sqed
