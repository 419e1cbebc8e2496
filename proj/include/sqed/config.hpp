#ifndef SQED_CONFIG_HPP
#define SQED_CONFIG_HPP

#include <string>

#include "sqed/zoo.hpp"

namespace sqed {

// Processor declarations travel as JSON, schema version 1:
//
// {
//   "schema": 1,
//   "name": "toy4",
//   "values": 4,
//   "locations": 4,
//   "history": 1,
//   "opcodes": [
//     {"name": "ADD", "expr": "a + b"},
//     {"name": "NOP", "role": "nop"}
//   ],
//   "soft_reset": true,
//   "hard_reset": true,
//   "duplication": {"originals": [0, 1], "duplicates": [2, 3]},
//   "bugs": [
//     {"trigger": {"opcode": "MUL", "history": ["MUL"]},
//      "effect": {"type_a": true, "delta_v": 1}}
//   ],
//   "search": {
//     "bound": 2,
//     "families": ["standard"],
//     "alphabet": [{"opcode": "ADD", "out": 0, "in1": 0, "in2": 1}],
//     "inits": {"kind": "exhaustive"},
//     "max_insertions": 2
//   }
// }
//
// "duplication" defaults to the low-half split, "spec_expr" to "expr", and
// numeric knobs to the values shown above. Unknown keys are rejected.
ProcessorConfig config_from_json(const std::string& text);

// Reads and parses a JSON file. ConfigError names the file on any problem.
ProcessorConfig load_config_file(const std::string& path);

// A builtin corpus name resolves directly; anything else is a file path.
ProcessorConfig resolve_config(const std::string& name_or_path);

// Normalized round-trippable form; config_from_json(config_to_json(c))
// reproduces c.
std::string config_to_json(const ProcessorConfig& cfg);

}  // namespace sqed

#endif
