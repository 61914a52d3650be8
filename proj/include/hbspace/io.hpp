#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "hbspace/defect.hpp"

namespace hbspace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Complex numbers are [re, im]; polynomials are arrays of them, ascending degree.
Json json_of(cplx z);
Json json_of(const ComplexPoly& p);
Json json_of(const RationalFn& f);  // {num, den}
Json json_of(const Pair& pair);     // {b, a, grid_residual}
Json json_of(const HardyVec& f);
Json json_of(const Tolerances& tol);
Json json_of(const NullspaceReport& r);  // {dim, singular_values (10 smallest), gap_ratio}
Json json_of(const DefectReport& r);
Json json_of(const VerifyRecord& r);

/// {w, m, norm_b, coeffs_prefix (first 32), route}
Json kernel_report(const HbElement& k, cplx w, int m, const std::string& route);

cplx cplx_from_json(const Json& j);
ComplexPoly poly_from_json(const Json& j);
RationalFn rational_from_json(const Json& j);
HardyVec hardy_from_json(const Json& j);

/// Binary fixture: u64 length, then interleaved f64 re/im, all little-endian.
void write_binary(std::ostream& out, const HardyVec& f);
HardyVec read_binary(std::istream& in);

/// One `name,value` row per residual and dimension in the report.
std::string defect_csv(const DefectReport& r);

}  // namespace hbspace
