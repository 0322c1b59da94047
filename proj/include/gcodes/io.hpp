#pragma once

#include <string>
#include <string_view>

#include "gcodes/codes.hpp"

namespace gcodes {

/// Reads the generator-matrix text format:
///
///   q n k
///   g11 g12 ... g1n
///   ...
///   gk1 gk2 ... gkn
///
/// Entries are field encodings in decimal separated by single spaces; lines
/// starting with '#' are skipped and the text must end with a newline. The
/// rows must be independent. Throws ParseError.
LinearCode parse_generator(std::string_view text);
LinearCode read_generator_file(const std::string& path);

/// Writes the RREF generator of c in the same format.
std::string format_generator(const LinearCode& c);

/// One line with the k x n RREF basis, row-major, single spaces.
std::string format_rref_line(const Subspace& s);

}  // namespace gcodes
