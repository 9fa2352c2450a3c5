#pragma once

#include <puritylens/verify.hpp>

#include <string>
#include <vector>

// Serialization helpers shared by the CLI and the tests: an RFC-4180-style
// CSV writer with full round-trip precision and a deterministic JSON form
// of the verification summary (same input -> byte-identical output).

namespace puritylens {

// 17-significant-digit decimal form ("%.17g"); parses back to the exact
// same double.  Used for every numeric CSV cell.
std::string format_double(double value);

// Writes header + rectangular rows, comma-separated, '\n' line endings.
// Rows must all match the header width.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Deterministic JSON rendering of a verification summary.
std::string to_json(const VerificationSummary& summary);

}  // namespace puritylens
