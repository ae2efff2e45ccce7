#pragma once

// Matrix documents: {"rows": r, "cols": c, "data": [[re, im], ...]}, row-major.
// The canonical text is the compact JSON object followed by a newline, with
// every number in shortest round-trip decimal form, so parse -> write is
// byte-identical on canonical input and write -> parse is bit-exact.

#include <filesystem>
#include <string>
#include <string_view>

#include "twoproj/matcore.hpp"

namespace twoproj {

/// Throws ParseError (with line and column) or DimensionError.
CMatrix parse_matrix_text(std::string_view text);
CMatrix parse_matrix_file(const std::filesystem::path& path);

std::string write_matrix(const CMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const CMatrix& m);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_shortest(double x);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace twoproj
