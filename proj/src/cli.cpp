#include "hbspace/cli.hpp"

#include <CLI11.hpp>
#include <bit>
#include <ostream>
#include <sstream>

#include "hbspace/defect.hpp"
#include "hbspace/error.hpp"
#include "hbspace/io.hpp"
#include "hbspace/parse.hpp"

namespace hbspace {

namespace {

struct Outcome {
  Json report;
  int status = kExitOk;
  std::string csv;  // residual table for --emit csv; empty means "flatten the report"
};

cplx parse_constant(const std::string& text, const char* what, const Tolerances& tol) {
  const RationalFn f = parse_rational(text, tol);
  if (!f.is_constant()) throw Error(ErrorCode::kParse, std::string(what) + " must be a complex constant, got '" + text + "'");
  return f(0.0);
}

void validate(const JobConfig& c) {
  if (c.n < 64 || c.n > 16384 || !std::has_single_bit(c.n)) {
    throw Error(ErrorCode::kInvalidArgument, "N must be a power of two in [64, 16384]");
  }
  for (const auto& [name, value] : c.tol.named()) {
    if (!(value > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance " + std::string(name) + " must be positive");
  }
  if (c.tol.grid <= 0) throw Error(ErrorCode::kInvalidArgument, "tolerance grid must be positive");
  if (c.output != "json" && c.output != "csv" && c.output != "pretty") {
    throw Error(ErrorCode::kInvalidArgument, "output must be json, csv or pretty");
  }
  if (c.emit && *c.emit != "csv") throw Error(ErrorCode::kInvalidArgument, "emit supports csv only");
  if (c.k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
}

Json header(const JobConfig& c) {
  return Json{{"schema", kSchemaVersion}, {"command", c.command}, {"b_literal", c.b}, {"N", c.n}};
}

Outcome run_pair(const JobConfig& c, const Pair& pair) {
  Outcome o;
  o.report = header(c);
  o.report["pair"] = json_of(pair);
  Json uni = Json::array();
  for (const auto& u : pair.unimodular_set()) uni.push_back(Json{{"z", json_of(u.z)}, {"value", json_of(u.value)}});
  o.report["unimodular_set"] = uni;
  Json bd = Json::array();
  for (const auto& p : detect_boundary_structure(pair)) bd.push_back(Json{{"z", json_of(p.z)}, {"order", p.order}});
  o.report["boundary_zeros_of_a"] = bd;
  return o;
}

Outcome run_kernel(const JobConfig& c, const Pair& pair) {
  if (!c.z0) throw Error(ErrorCode::kInvalidArgument, "kernel needs --z0 (the point w)");
  const cplx w = parse_constant(*c.z0, "z0", c.tol);
  Outcome o;
  o.report = header(c);
  const double r = std::abs(w);
  if (r > 1.0 + c.tol.cluster) throw Error(ErrorCode::kInvalidArgument, "w must lie in the closed disk");
  if (r < 1.0 - c.tol.cluster) {
    const HbSpace space(pair, approach_truncation(c.n, w));
    o.report["N_eff"] = space.N();
    o.report["kernel"] = kernel_report(deriv_kernel(space, w, c.k), w, c.k, "interior");
    return o;
  }
  const cplx z0 = require_unimodular(w, "w");
  const cplx lambda = c.lambda ? parse_constant(*c.lambda, "lambda", c.tol) : choose_lambda(pair, z0).lambda;
  const HbSpace space(pair, c.n);
  o.report["N_eff"] = space.N();
  o.report["lambda"] = json_of(lambda);
  o.report["kernel"] = kernel_report(boundary_kernel(space, lambda, z0, c.k), z0, c.k, "boundary");
  return o;
}

Outcome run_defect(const JobConfig& c, const Pair& pair) {
  const DefectReport rep = defect_space(pair, c.n);
  Outcome o;
  o.report = header(c);
  o.report["defect"] = json_of(rep);
  std::vector<std::string> failures;
  if (rep.nullspace_dimension != rep.dimension) failures.push_back("operator null-space dimension differs from the boundary count");
  if (rep.ortho_residual > c.tol.orth) failures.push_back("ortho_residual exceeds tol.orth");
  if (rep.ystar_residual > c.tol.ystar) failures.push_back("ystar_residual exceeds tol.ystar");
  if (rep.angle_to_operator_kernel > c.tol.angle) failures.push_back("angle_to_operator_kernel exceeds tol.angle");
  if (rep.lambda_independence_angle > c.tol.angle) failures.push_back("lambda_independence_angle exceeds tol.angle");
  o.report["passed"] = failures.empty();
  o.report["failures"] = failures;
  o.status = failures.empty() ? kExitOk : kExitFailure;
  o.csv = defect_csv(rep);
  return o;
}

Outcome run_verify(const JobConfig& c, const Pair& pair) {
  if (!c.z0) throw Error(ErrorCode::kInvalidArgument, "verify needs --z0");
  const cplx z0 = parse_constant(*c.z0, "z0", c.tol);
  std::optional<cplx> lambda;
  if (c.lambda) lambda = parse_constant(*c.lambda, "lambda", c.tol);
  const VerifyRecord rec = verify_boundary_kernels(pair, z0, c.k, c.n, c.seed, lambda);
  Outcome o;
  o.report = header(c);
  o.report["verify"] = json_of(rec);
  // A k beyond k_max is an input error, but the blow-up result is still reported.
  o.status = !rec.precondition_met ? kExitInput : rec.passed ? kExitOk : kExitFailure;
  std::ostringstream os;
  os.precision(17);
  os << "name,value\n";
  for (const auto& t : rec.limits) {
    os << "limit.m" << t.m << ".phi" << t.phi << ".final_distance," << t.distances.back() << "\n";
    os << "limit.m" << t.m << ".phi" << t.phi << ".threshold," << t.threshold << "\n";
  }
  if (rec.precondition_met) {
    os << "span_angle," << rec.span_angle << "\n";
    os << "span_nullspace_dim," << rec.span_nullspace_dim << "\n";
    os << "isometry_deviation," << rec.isometry_deviation << "\n";
    os << "lambda_independence_angle," << rec.lambda_independence_angle << "\n";
  }
  os << "dichotomy_order," << rec.dichotomy_order << "\n";
  os << "dichotomy_growth," << rec.dichotomy_growth << "\n";
  o.csv = os.str();
  return o;
}

void flatten(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

bool is_scalar_array(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
}

void pretty(const Json& j, int indent, std::ostream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_primitive()) {
      os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    } else if (is_scalar_array(value)) {
      os << pad << key << ": " << value.dump() << "\n";
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), is_scalar_array)) {
      os << pad << key << ": " << value.dump() << "\n";
    } else {
      os << pad << key << ":\n";
      pretty(value, indent + 2, os);
    }
  }
}

void write(const JobConfig& c, const Outcome& o, std::ostream& out) {
  if (c.emit) {
    if (!o.csv.empty()) {
      out << o.csv;
    } else {
      out << "name,value\n";
      flatten(o.report, "", out);
    }
  } else if (c.output == "json") {
    out << o.report.dump(2) << "\n";
  } else if (c.output == "csv") {
    out << "name,value\n";
    flatten(o.report, "", out);
  } else {
    pretty(o.report, 0, out);
  }
}

}  // namespace

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Pair pair = pair_from_b(parse_rational(config.b, config.tol), config.tol);
    Outcome o;
    if (config.command == "pair") o = run_pair(config, pair);
    else if (config.command == "kernel") o = run_kernel(config, pair);
    else if (config.command == "defect") o = run_defect(config, pair);
    else if (config.command == "verify") o = run_verify(config, pair);
    else throw Error(ErrorCode::kInvalidArgument, "unknown command '" + config.command + "'");
    write(config, o, out);
    if (o.status != kExitOk) err << "hbspace: " << config.command << " did not pass (exit " << o.status << ")\n";
    return o.status;
  } catch (const Error& e) {
    const int status = e.is_input_error() ? kExitInput : kExitFailure;
    if (config.output == "json" && !config.emit) {
      Json j = header(config);
      j["error"] = Json{{"code", error_code_name(e.code())}, {"message", e.what()}, {"residual", e.residual()}};
      out << j.dump(2) << "\n";
    }
    err << "hbspace: " << e.what() << "\n";
    return status;
  } catch (const std::exception& e) {
    err << "hbspace: internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations in de Branges-Rovnyak spaces H(b) for nonextreme rational b"};
  app.require_subcommand(1, 1);
  JobConfig config;
  std::string lambda, z0, emit;

  const std::pair<const char*, const char*> commands[] = {
      {"pair", "construct the pair (b, a)"},
      {"kernel", "reproducing or derivative kernel at --z0 of order --k"},
      {"defect", "basis of the orthogonal complement of M(a) in H(b)"},
      {"verify", "check the boundary-kernel description at --z0 up to order --k"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--b", config.b, "rational symbol, e.g. \"(1+z)/2\"")->required();
    sub->add_option("--N", config.n, "truncation, a power of two in [64, 16384]")->capture_default_str();
    sub->add_option("--lambda", lambda, "unimodular lambda (default: chosen from a 64-point grid)");
    sub->add_option("--z0", z0, "boundary point, or w for kernel");
    sub->add_option("--k", config.k, "order")->capture_default_str();
    sub->add_option("--output", config.output, "json, csv or pretty")->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for randomized sweeps")->capture_default_str();
    sub->add_option("--emit", emit, "csv: print only the flattened residual table");
    for (auto& [tname, ptr] : config.tol.named()) {
      sub->add_option("--tol-" + std::string(tname), *ptr, "tolerance override")->capture_default_str();
    }
    sub->add_option("--tol-grid", config.tol.grid, "circle sample count")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  config.command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--lambda")) config.lambda = lambda;
  if (sub->count("--z0")) config.z0 = z0;
  if (sub->count("--emit")) config.emit = emit;
  return run(config, out, err);
}

}  // namespace hbspace
