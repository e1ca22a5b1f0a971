#pragma once

// Line-oriented text formats: complex files, oracle dumps, pairing files.
// '#' starts a comment; blank lines are ignored. Parse errors are
// InputError with a "line N: " prefix.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccr/complex.hpp"
#include "ccr/oracle.hpp"

namespace ccr {

// complex <name>
// factors <n>
// factor <k>            (0-based, in order)
// vertex <id>
// edge <id> <id>
// ray <id> at <vertex>
// point <name> = (<coord>,...)
ComplexDescription parse_complex(std::string_view text);
std::string format_complex(const ComplexDescription& desc);

// oracle <name>
// depth <D>
// points <n>
// point <id>            (n lines)
// quad <a> <b> <c> <d> admissible <0|1> crt <e0> <e1> <e2>
RecordedOracle parse_oracle(std::string_view text);
std::string format_oracle(const CrossRatioOracle& o);

/// "<idX> <idY>" per line.
std::vector<std::pair<std::string, std::string>> parse_pairing(std::string_view text);

/// Index map from a pairing; every point of `from` must be paired once.
std::vector<std::size_t> map_from_pairing(const std::vector<std::pair<std::string, std::string>>& pairs,
                                          const CrossRatioOracle& from, const CrossRatioOracle& to);

/// Whole file; InputError when unreadable.
std::string read_file(const std::string& path);

}  // namespace ccr
