#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "zfree/cli.hpp"

using zfree::cplx;

namespace {

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv{"zfree"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = zfree::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("complex literal parsing") {
  CHECK(zfree::parse_complex("0.01+50i") == cplx(0.01, 50.0));
  CHECK(zfree::parse_complex("-1.5-2i") == cplx(-1.5, -2.0));
  CHECK(zfree::parse_complex("3") == cplx(3.0, 0.0));
  CHECK(zfree::parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(zfree::parse_complex("1e-2+5e1i") == cplx(0.01, 50.0));
  CHECK_THROWS(zfree::parse_complex("banana"));
}

TEST_CASE("certify-zeta defaults reproduce the headline disc as json") {
  std::string out;
  const int code = run({"certify-zeta"}, &out);
  CHECK(code == zfree::kExitOk);
  const nlohmann::json j = nlohmann::json::parse(out);
  CHECK(j.contains("center_re"));
  CHECK(j.contains("center_im"));
  CHECK(j.contains("radius"));
  CHECK(j.contains("R"));
  CHECK(j.contains("certified_by"));
  CHECK(j.contains("inputs"));
  CHECK(j.contains("errors"));
  CHECK(std::abs(j["center_re"].get<double>() - 0.5) < 1e-4);
  CHECK(std::abs(j["center_im"].get<double>() - 50.0) < 1e-4);
  const double radius = j["radius"].get<double>();
  CHECK(radius >= 1.44e-5);
  CHECK(radius <= 1.54e-5);
}

TEST_CASE("text and json outputs agree to printed precision") {
  std::string text, json_out;
  CHECK(run({"certify-zeta", "--out", "text"}, &text) == zfree::kExitOk);
  CHECK(run({"certify-zeta", "--out", "json"}, &json_out) == zfree::kExitOk);
  const nlohmann::json j = nlohmann::json::parse(json_out);
  std::ostringstream want;
  want.precision(12);
  want << j["radius"].get<double>();
  CHECK(text.find(want.str().substr(0, 10)) != std::string::npos);
}

TEST_CASE("domain errors exit with code 2") {
  std::string out, err;
  CHECK(run({"certify-zeta", "--r", "1.2"}, &out, &err) == zfree::kExitDomain);
  CHECK(!err.empty());
  CHECK(run({"certify-zeta", "--sigma1", "0.7"}, &out, &err) == zfree::kExitDomain);
  CHECK(run({"disc-geometry", "--lambda", "-1+2i", "--R", "0.5"}, &out, &err) ==
        zfree::kExitDomain);
}

TEST_CASE("verification suites pass") {
  for (const char* suite : {"pascal", "vandermonde", "triangular", "completion"}) {
    std::string out;
    CHECK(run({"verify", suite}, &out) == zfree::kExitOk);
    const nlohmann::json j = nlohmann::json::parse(out);
    CHECK(j["pass"].get<bool>());
    for (const auto& c : j["checks"]) CHECK(c["pass"].get<bool>());
  }
}

TEST_CASE("mellin verification suite passes") {
  std::string out;
  CHECK(run({"verify", "mellin"}, &out) == zfree::kExitOk);
  const nlohmann::json j = nlohmann::json::parse(out);
  CHECK(j["pass"].get<bool>());
}

TEST_CASE("disc-geometry round-trips the headline pseudo disc") {
  std::string out;
  const int code = run({"disc-geometry", "--lambda", "0.01+50i", "--R", "7.482075055527e-4",
                        "--shift", "0.49"},
                       &out);
  CHECK(code == zfree::kExitOk);
  const nlohmann::json j = nlohmann::json::parse(out);
  CHECK(std::abs(j["center_re"].get<double>() - 0.500000011196) < 1e-9);
  CHECK(std::abs(j["radius"].get<double>() - 1.4964158488e-5) < 1e-12);
}

TEST_CASE("batch sweep emits csv rows") {
  std::string out;
  const int code = run({"certify-zeta", "--batch", "10:12:3", "--out", "csv"}, &out);
  CHECK(code == zfree::kExitOk);
  // header plus three rows
  int lines = 0;
  for (char ch : out)
    if (ch == '\n') ++lines;
  CHECK(lines == 4);
  CHECK(out.find("radius") != std::string::npos);
}

TEST_CASE("distance command reports a bound and discs") {
  std::string out;
  const int code = run({"distance", "--lambda", "1+2i", "--r", "0.6", "--sigma1", "-2",
                        "--grid", "1,0.5", "--target", "w", "--out", "json"},
                       &out);
  CHECK(code == zfree::kExitOk);
  const nlohmann::json j = nlohmann::json::parse(out);
  CHECK(j["value"].get<double>() > 0.0);
  CHECK(j.contains("gram_condition"));
  CHECK(j.contains("thm62"));
}

TEST_CASE("unknown verify suite is a domain error") {
  std::string out, err;
  CHECK(run({"verify", "prime-counting"}, &out, &err) == zfree::kExitDomain);
}
