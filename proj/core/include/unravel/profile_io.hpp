#pragma once

#include <iosfwd>
#include <string>

#include "unravel/ballots.hpp"

namespace unravel {

// Profile file schema (JSON):
//   {
//     "domain": ["0", "1", "*"],
//     "agents": ["a", "b"],
//     "ballots": {
//       "a": [{"delegates": ["b"], "fn": {"kind": "id", "of": "b"}},
//             {"vote": "1"}],
//       "b": [{"delegates": ["a", "c"], "fn": {"kind": "dnf", "expr": "a&c"}},
//             {"vote": "0"}]
//     }
//   }
// Ballot levels are listed from the most preferred delegation down to the
// mandatory direct backup vote.

profile parse_profile(const std::string& text);
profile load_profile(const std::string& path);

std::string serialize_profile(const profile& p, bool pretty = false);
void save_profile(const profile& p, const std::string& path, bool pretty = true);

}  // namespace unravel
