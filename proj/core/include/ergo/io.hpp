#pragma once

#include <string>

#include "ergo/contrib.hpp"
#include "ergo/state.hpp"

namespace ergo {

// 17 significant digits, enough to round-trip any double
std::string format_double(double v);

struct StateFile {
  BipartiteState state;
  BipartiteHamiltonian hamiltonian;
};

// Parses the documented JSON state format:
//   {"d_a": int, "d_b": int, "rho": [[[re, im], ...], ...],
//    "H": {"kind": "non_interacting"|"general", "h_a": ..., "h_b": ..., "h": ...}}
// Throws ValidationError with a field-level message on malformed input.
StateFile read_state_file(const std::string& path);
StateFile parse_state_json(const std::string& text);

std::string write_state_json(const StateFile& f);

std::string report_json(const ContributionReport& rep);
std::string report_csv(const ContributionReport& rep);

// {"error": {"type": ..., "message": ...}} for machine-readable stderr
std::string error_json(const std::string& type, const std::string& message);

}  // namespace ergo
