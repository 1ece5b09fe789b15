#ifndef CUBIC_IO_HPP
#define CUBIC_IO_HPP

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "cubic/gauss.hpp"
#include "cubic/moments.hpp"

namespace cubic {

using Json = nlohmann::ordered_json;

Json eisenstein_json(const Eisenstein& z);
Json complex_json(const Complex& z);

/// {q, F, genus, delta, a, b, omega}; a and b as [x, y] pairs meaning x + y xi_3.
Json ldata_json(const FieldCtx& ctx, const LData& L);

extern const char* const kMomentCsvHeader;
void write_moment_csv_row(std::ostream& os, const MomentReport& r);
Json moment_json(const MomentReport& r);

/// Parses rows written by write_moment_csv_row (header line included).
std::vector<std::vector<std::string>> read_csv(std::istream& is);

extern const char* const kDualMainCsvHeader;
void write_dual_main_csv_row(std::ostream& os, const FieldCtx& ctx, const DualMainTerm& r);

/// Shortest round-trip text of a double.
std::string fmt_double(double x);

/// FNV-1a 64 digest of a byte string, as 16 hex digits.
std::string digest_hex(const std::string& bytes);

}  // namespace cubic

#endif  // CUBIC_IO_HPP
