#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "hbspace/cli.hpp"
#include "hbspace/io.hpp"

using namespace hbspace;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hbspace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("pair command") {
  const Result ok = invoke({"pair", "--b", "(1+z)/2"});
  CHECK(ok.status == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j["schema"] == 1);
  CHECK(j["pair"]["a"]["num"][0][0].get<double>() == doctest::Approx(0.5));

  const Result extreme = invoke({"pair", "--b", "z"});
  CHECK(extreme.status == 1);
  CHECK(Json::parse(extreme.out)["error"]["code"] == "extreme-symbol");
}

TEST_CASE("defect command on the canonical pair") {
  const Result r = invoke({"defect", "--b", "(1+z)/2", "--N", "512", "--output", "json"});
  CHECK(r.status == 0);
  CHECK(Json::parse(r.out)["defect"]["dimension"] == 1);

  const Result csv = invoke({"defect", "--b", "(1+z)/2", "--N", "256", "--emit", "csv"});
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("name,value\n", 0) == 0);
  CHECK(csv.out.find("ortho_residual,") != std::string::npos);
}

TEST_CASE("kernel command") {
  const Result r = invoke({"kernel", "--b", "(1+z)/2", "--z0", "0.3+0.4i", "--k", "1", "--N", "256"});
  CHECK(r.status == 0);
  const Json j = Json::parse(r.out)["kernel"];
  CHECK(j["route"] == "interior");
  CHECK(j["coeffs_prefix"].size() == 32);

  const Result b = invoke({"kernel", "--b", "(1+z)/2", "--z0", "1", "--N", "256"});
  CHECK(b.status == 0);
  const Json k = Json::parse(b.out)["kernel"];
  CHECK(k["route"] == "boundary");
  CHECK(k["coeffs_prefix"][0][0].get<double>() == doctest::Approx(0.5));
  CHECK(k["norm_b"].get<double>() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args = {"defect", "--b", "(1+z)/2", "--N", "256", "--seed", "7"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> p = {"pair", "--b", "(1+z)/3", "--output", "pretty"};
  CHECK(invoke(p).out == invoke(p).out);
}

TEST_CASE("precondition failure exits 1 and still reports the blow-up") {
  const Result r = invoke({"verify", "--b", "(1+z)/2", "--z0", "1", "--k", "1", "--N", "128"});
  CHECK(r.status == 1);
  const Json v = Json::parse(r.out)["verify"];
  CHECK(v["precondition_met"] == false);
  CHECK(v["checks"]["dichotomy"]["passed"] == true);
}

TEST_CASE("malformed inputs exit 1") {
  const std::vector<std::vector<std::string>> bad = {
      {"pair", "--b", "1/(z-z)"},
      {"pair", "--b", "(1+z"},
      {"pair", "--b", "2x"},
      {"pair", "--b", "z"},
      {"pair", "--b", "2*z"},
      {"pair"},
      {"frobnicate", "--b", "z/2"},
      {"defect", "--b", "z/2", "--N", "100"},
      {"defect", "--b", "z/2", "--N", "32"},
      {"defect", "--b", "z/2", "--N", "32768"},
      {"defect", "--b", "z/2", "--N", "abc"},
      {"defect", "--b", "z/2", "--tol-orth", "0"},
      {"defect", "--b", "z/2", "--tol-angle", "-1"},
      {"defect", "--b", "z/2", "--output", "xml"},
      {"defect", "--b", "z/2", "--emit", "tsv"},
      {"defect", "--b", "z/2", "--bogus", "1"},
      {"kernel", "--b", "z/2"},
      {"kernel", "--b", "z/2", "--z0", "2"},
      {"kernel", "--b", "z/2", "--z0", "z"},
      {"kernel", "--b", "(1+z)/2", "--z0", "-1"},
      {"verify", "--b", "z/2", "--z0", "0.5"},
      {"verify", "--b", "z/2", "--z0", "1", "--k", "-1"},
      {"verify", "--b", "(1+z)/2", "--z0", "1", "--lambda", "1"},
  };
  for (const auto& args : bad) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    CAPTURE(joined);
    CHECK(invoke(args).status == 1);
  }
}
