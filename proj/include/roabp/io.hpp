#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "roabp/roabp.hpp"
#include "roabp/shift_tuple.hpp"

namespace roabp {

/// Malformed input; the message names the source and the offending position.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A program together with the modulus its coefficients were read under. Use
/// the program only while that modulus is current (see ModulusScope).
struct RoabpFile {
  std::uint64_t modulus;
  Roabp roabp;
};

/// JSON document with keys modulus, n, d, w, order (1-based), shape and
/// layers (layer -> row -> column -> coefficient list, lowest degree first).
RoabpFile parse_roabp(std::string_view text, std::string_view source = "<input>");
RoabpFile read_roabp_file(const std::string& path);

/// Canonical text: residues in [0, p), trimmed coefficient lists, one layer
/// per line. Uses the current modulus.
std::string serialize(const Roabp& r);

/// {"shift": [[c0, c1, ...], ...]} with one polynomial in t per variable, or
/// {"weights": [w1, ...]} for f_i = t^{w_i}. Read under the current modulus.
ShiftTuple parse_shift(std::string_view text, int n, std::string_view source = "<input>");
ShiftTuple read_shift_file(const std::string& path, int n);

}  // namespace roabp
