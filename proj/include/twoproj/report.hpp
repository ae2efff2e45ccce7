#pragma once

// Report documents emitted by the command-line tool.

#include <string>

#include <json.hpp>

#include "twoproj/matcore.hpp"
#include "twoproj/projpair.hpp"

namespace twoproj {

using Json = nlohmann::ordered_json;

/// Two-space indented JSON with every floating-point value printed with 17
/// significant digits; arrays of scalars stay on one line.
std::string dump_report(const Json& doc);

Json matrix_json(const CMatrix& m);
Json complex_json(Complex z);
Json tolerance_json(const Tolerance& tol);
Json verification_json(const VerificationReport& rep);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace twoproj
