#include "hbspace/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "hbspace/error.hpp"

namespace hbspace {

namespace {

constexpr std::size_t kPrefix = 32;
constexpr std::size_t kReportedSingularValues = 10;

template <class T>
void put_le(std::ostream& out, T v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw Error(ErrorCode::kParse, "truncated binary fixture");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

Json prefix_of(const HardyVec& f) {
  Json out = Json::array();
  for (std::size_t k = 0; k < std::min(kPrefix, f.size()); ++k) out.push_back(json_of(f[k]));
  return out;
}

Json matrix_of(const Eigen::MatrixXcd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json_of(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Json json_of(cplx z) { return Json::array({z.real(), z.imag()}); }

Json json_of(const ComplexPoly& p) {
  Json out = Json::array();
  for (cplx c : p.coeffs()) out.push_back(json_of(c));
  return out;
}

Json json_of(const RationalFn& f) { return Json{{"num", json_of(f.num())}, {"den", json_of(f.den())}}; }

Json json_of(const Pair& pair) {
  return Json{{"b", json_of(pair.b())}, {"a", json_of(pair.a())}, {"grid_residual", pair.grid_residual()}};
}

Json json_of(const HardyVec& f) {
  Json out = Json::array();
  for (cplx c : f.coeffs()) out.push_back(json_of(c));
  return out;
}

Json json_of(const Tolerances& tol) {
  Json out = Json::object();
  for (const auto& [name, value] : tol.named()) out[std::string(name)] = value;
  out["grid"] = tol.grid;
  return out;
}

Json json_of(const NullspaceReport& r) {
  // Smallest singular values, in descending order.
  const auto& s = r.singular_values;
  const std::size_t from = s.size() > kReportedSingularValues ? s.size() - kReportedSingularValues : 0;
  return Json{{"dim", r.dim},
              {"singular_values", std::vector<double>(s.begin() + static_cast<std::ptrdiff_t>(from), s.end())},
              {"gap_ratio", r.gap_ratio},
              {"ambiguous", r.ambiguous}};
}

Json kernel_report(const HbElement& k, cplx w, int m, const std::string& route) {
  return Json{{"w", json_of(w)}, {"m", m}, {"norm_b", hb_norm(k)}, {"coeffs_prefix", prefix_of(k.value)},
              {"route", route}};
}

Json json_of(const DefectReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) {
    points.push_back(Json{{"z", json_of(p.point.z)},
                          {"order", p.point.order},
                          {"lambda", json_of(p.lambda)},
                          {"lambda_alt", json_of(p.lambda_alt)},
                          {"nullspace_dim", p.nullspace_dim},
                          {"nullspace_dim_next", p.nullspace_dim_next},
                          {"gap_ratio", p.gap_ratio},
                          {"candidate_residual", p.candidate_residual},
                          {"angle_to_operator_kernel", p.angle_to_operator_kernel}});
  }
  Json basis = Json::array();
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    basis.push_back(Json{{"label", r.labels[i]},
                         {"norm_b", hb_norm(r.basis[i])},
                         {"plus_residual", r.basis[i].plus_residual},
                         {"coeffs_prefix", prefix_of(r.basis[i].value)}});
  }
  return Json{{"N", r.space ? r.space->N() : 0},
              {"dimension", r.dimension},
              {"nullspace_dimension", r.nullspace_dimension},
              {"points", points},
              {"basis", basis},
              {"gram", matrix_of(r.gram)},
              {"gram_condition", r.gram_condition},
              {"ortho_residual", r.ortho_residual},
              {"ystar_residual", r.ystar_residual},
              {"angle_to_operator_kernel", r.angle_to_operator_kernel},
              {"lambda_independence_angle", r.lambda_independence_angle},
              {"notes", r.notes}};
}

Json json_of(const VerifyRecord& r) {
  Json limits = Json::array();
  for (const auto& t : r.limits) {
    limits.push_back(Json{{"m", t.m},
                          {"phi", t.phi},
                          {"steps", t.steps},
                          {"distances", t.distances},
                          {"norms", t.norms},
                          {"limit_norm", t.limit_norm},
                          {"threshold", t.threshold},
                          {"decreasing", t.decreasing},
                          {"passed", t.passed}});
  }
  const bool limits_passed =
      r.precondition_met && std::all_of(r.limits.begin(), r.limits.end(), [](const LimitTrace& t) { return t.passed; });
  Json checks = Json::object();
  checks["limits"] = Json{{"ran", r.precondition_met}, {"passed", limits_passed}, {"traces", limits}};
  checks["span"] = Json{{"ran", r.precondition_met},
                        {"passed", r.span_passed},
                        {"angle", r.span_angle},
                        {"nullspace_dim", r.span_nullspace_dim}};
  checks["dichotomy"] = Json{{"ran", true},
                             {"passed", r.dichotomy_passed},
                             {"order", r.dichotomy_order},
                             {"steps", r.dichotomy_steps},
                             {"norms", r.dichotomy_norms},
                             {"growth", r.dichotomy_growth}};
  checks["isometry"] = Json{{"ran", r.precondition_met}, {"passed", r.isometry_passed}, {"deviation", r.isometry_deviation}};
  checks["lambda_independence"] = Json{{"ran", r.precondition_met},
                                       {"passed", r.lambda_independence_passed},
                                       {"angle", r.lambda_independence_angle}};
  return Json{{"z0", json_of(r.z0)},
              {"k", r.k},
              {"k_max", r.k_max},
              {"lambda", json_of(r.lambda)},
              {"lambda_alt", json_of(r.lambda_alt)},
              {"precondition_met", r.precondition_met},
              {"checks", checks},
              {"passed", r.passed},
              {"failures", r.failures}};
}

cplx cplx_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::kParse, "complex number must be [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexPoly poly_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "polynomial must be an array of [re, im]");
  std::vector<cplx> c;
  for (const auto& e : j) c.push_back(cplx_from_json(e));
  return ComplexPoly(std::move(c));
}

RationalFn rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw Error(ErrorCode::kParse, "rational function must be {num, den}");
  }
  const ComplexPoly den = poly_from_json(j["den"]);
  if (den.is_zero()) throw Error(ErrorCode::kParse, "zero denominator");
  return RationalFn(poly_from_json(j["num"]), den);
}

HardyVec hardy_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "vector must be an array of [re, im]");
  std::vector<cplx> c;
  for (const auto& e : j) c.push_back(cplx_from_json(e));
  return HardyVec(std::move(c));
}

void write_binary(std::ostream& out, const HardyVec& f) {
  put_le<std::uint64_t>(out, f.size());
  for (cplx c : f.coeffs()) {
    put_le(out, c.real());
    put_le(out, c.imag());
  }
}

HardyVec read_binary(std::istream& in) {
  const auto n = get_le<std::uint64_t>(in);
  if (n > (std::uint64_t{1} << 32)) throw Error(ErrorCode::kParse, "implausible fixture length");
  std::vector<cplx> c(n);
  for (auto& x : c) {
    const double re = get_le<double>(in);
    x = {re, get_le<double>(in)};
  }
  return HardyVec(std::move(c));
}

std::string defect_csv(const DefectReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "name,value\n";
  os << "dimension," << r.dimension << "\n";
  os << "nullspace_dimension," << r.nullspace_dimension << "\n";
  os << "gram_condition," << r.gram_condition << "\n";
  os << "ortho_residual," << r.ortho_residual << "\n";
  os << "ystar_residual," << r.ystar_residual << "\n";
  os << "angle_to_operator_kernel," << r.angle_to_operator_kernel << "\n";
  os << "lambda_independence_angle," << r.lambda_independence_angle << "\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& p = r.points[i];
    const std::string key = "point" + std::to_string(i) + ".";
    os << key << "order," << p.point.order << "\n";
    os << key << "nullspace_dim," << p.nullspace_dim << "\n";
    os << key << "gap_ratio," << p.gap_ratio << "\n";
    os << key << "candidate_residual," << p.candidate_residual << "\n";
    os << key << "angle_to_operator_kernel," << p.angle_to_operator_kernel << "\n";
  }
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    os << "basis." << r.labels[i] << ".plus_residual," << r.basis[i].plus_residual << "\n";
  }
  return os.str();
}

}  // namespace hbspace
