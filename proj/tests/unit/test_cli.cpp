#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "twistzero/qseries.hpp"

using json = nlohmann::json;
using twistzero::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> csv_rows(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("twistzero_cli_" + name);
}

}  // namespace

TEST(Cli, CoeffsWritesTables) {
  const auto path = temp("delta.txt");
  const Outcome o = call({"coeffs", "--form", "eta:1^24", "--count", "100", "--out", path.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const twistzero::CoeffTable t = twistzero::load_coeffs(path.string());
  ASSERT_EQ(t.count(), 100u);
  EXPECT_EQ(t.c[0], twistzero::cplx(1.0));
  EXPECT_EQ(t.c[1], twistzero::cplx(-24.0));
  std::filesystem::remove(path);

  const Outcome g = call({"coeffs", "--form", "theta*eta:4^6", "--count", "100"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(g.out.rfind("# twistzero-coeffs v1 weight2=7 level=16 ", 0), 0u) << g.out.substr(0, 80);

  const Outcome bad = call({"coeffs", "--form", "eta:1^5", "--count", "10"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_EQ(call({"coeffs", "--form", "theta*eta:4^6", "--level", "6", "--count", "10"}).code, 3);
  EXPECT_EQ(call({"coeffs", "--form", "nonsense", "--count", "10"}).code, 3);
  EXPECT_EQ(call({"frobnicate"}).code, 3);
}

TEST(Cli, EvalGridAndModuli) {
  const Outcome o = call({"eval", "--form", "eta:1^24", "--twist", "1/5", "--t0", "0", "--t1", "5", "--step", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::string header;
  const auto rows = csv_rows(o.out, &header);
  EXPECT_EQ(header, "t,L_re,L_im,Z,err");
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 5u);
    EXPECT_EQ(rows[i][0], static_cast<double>(i));
    EXPECT_NEAR(std::abs(rows[i][3]), std::hypot(rows[i][1], rows[i][2]), 1e-10);
  }
}

TEST(Cli, EvalRejections) {
  const Outcome o = call({"eval", "--form", "eta:1^24", "--twist", "2/5", "--t1", "2", "--step", "1"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("p^2"), std::string::npos) << o.err;
  const Outcome noz =
      call({"eval", "--form", "eta:1^24", "--twist", "2/5", "--t1", "2", "--step", "1", "--no-z"});
  EXPECT_EQ(noz.code, 0) << noz.err;
  EXPECT_EQ(call({"eval", "--form", "eta:1^24", "--twist", "1/5", "--step", "0"}).code, 3);
  EXPECT_EQ(call({"eval", "--form", "eta:1^24", "--twist", "1/0"}).code, 3);
  // non-reduced twists are reduced first
  const std::vector<std::string> half = {"eval", "--form", "eta:1^24", "--twist", "1/2", "--t1", "1", "--step", "1"};
  auto unreduced = half;
  unreduced[4] = "2/4";
  EXPECT_EQ(call(unreduced).out, call(half).out);
}

TEST(Cli, ZerosReport) {
  const Outcome o = call({"zeros", "--form", "eta:1^24", "--twist", "1/5", "--t0", "0", "--t1", "40"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  ASSERT_GE(j.at("count").get<int>(), 1);
  for (const auto& z : j.at("zeros")) {
    EXPECT_LE(z.at("abs_L").get<double>(), 1e-6);
    EXPECT_LE(z.at("width").get<double>(), 1e-8);
  }
  EXPECT_EQ(j.at("count").get<std::size_t>(), j.at("brackets").size());

  const Outcome empty = call({"zeros", "--form", "eta:1^24", "--twist", "1/5", "--t0", "3", "--t1", "3"});
  ASSERT_EQ(empty.code, 0) << empty.err;
  EXPECT_EQ(json::parse(empty.out).at("count").get<int>(), 0);

  const Outcome lost =
      call({"zeros", "--form", "eta:1^24", "--twist", "1/5", "--t0", "0", "--t1", "12", "--tol", "1e-16"});
  ASSERT_EQ(lost.code, 0) << lost.err;
  const json lj = json::parse(lost.out);
  EXPECT_FALSE(lj.at("warnings").empty());
  EXPECT_NE(lj.at("warnings")[0].get<std::string>().find("LostBracket"), std::string::npos);
}

TEST(Cli, FecheckAndDeterminism) {
  const Outcome o = call({"fecheck", "--form", "eta:1^24", "--twist", "0/1", "--s", "6"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_LE(json::parse(o.out).at("max_residual").get<double>(), 1e-8);

  const std::vector<std::string> args = {"fecheck", "--form", "theta*eta:4^6", "--twist", "1/16", "--re0", "1.25",
                                         "--re1", "2.25", "--grid", "3", "--random", "4", "--seed", "7"};
  const Outcome a = call(args);
  const Outcome b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j.at("residuals").size(), 13u);
  EXPECT_LE(j.at("max_residual").get<double>(), 1e-5);
  auto other = args;
  other.back() = "8";
  EXPECT_NE(call(other).out, a.out);

  const std::vector<std::string> ev = {"eval", "--form", "eta:1^24", "--twist", "1/5", "--t1", "3", "--step", "0.5"};
  EXPECT_EQ(call(ev).out, call(ev).out);
}

TEST(Cli, HlCommand) {
  const Outcome low = call({"hl", "--form", "eta:1^24", "--twist", "1/5", "--T", "2"});
  EXPECT_EQ(low.code, 2);
  EXPECT_NE(low.err.find("2/log 2"), std::string::npos) << low.err;

  const Outcome o = call({"hl", "--form", "eta:1^24", "--twist", "1/5", "--T", "4"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  ASSERT_EQ(j.at("hl").size(), 1u);
  const json& row = j.at("hl")[0];
  EXPECT_EQ(row.at("verdict").get<std::string>(), "SignChangeForced");
  EXPECT_GE(row.at("ratio").get<double>(), 10.0);
  EXPECT_TRUE(row.contains("I_signed"));
  EXPECT_TRUE(row.contains("I_abs"));
  EXPECT_EQ(call({"hl", "--form", "eta:1^24", "--twist", "1/5", "--T", "4", "--probes", "bogus"}).code, 3);
}

TEST(Cli, ConfigOverridesFlags) {
  const auto path = temp("config.json");
  {
    std::ofstream f(path);
    f << R"({"t1": 2, "step": 1, "twist": "1/5"})";
  }
  const Outcome o = call({"eval", "--form", "eta:1^24", "--twist", "2/5", "--t1", "9", "--config", path.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(csv_rows(o.out, nullptr).size(), 3u);
  {
    std::ofstream f(path);
    f << R"({"t1": 2, "colour": "blue"})";
  }
  EXPECT_EQ(call({"eval", "--form", "eta:1^24", "--twist", "1/5", "--config", path.string()}).code, 3);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  EXPECT_EQ(call({"eval", "--form", "eta:1^24", "--twist", "1/5", "--config", path.string()}).code, 3);
  std::filesystem::remove(path);
  EXPECT_EQ(call({"eval", "--form", "eta:1^24", "--twist", "1/5", "--config", path.string()}).code, 3);
}

TEST(Cli, ParseComplex) {
  using twistzero::cli::parse_complex;
  EXPECT_EQ(parse_complex("6"), std::complex<double>(6.0, 0.0));
  EXPECT_EQ(parse_complex("6+2i"), std::complex<double>(6.0, 2.0));
  EXPECT_EQ(parse_complex("1.75-0.5i"), std::complex<double>(1.75, -0.5));
  EXPECT_EQ(parse_complex("3i"), std::complex<double>(0.0, 3.0));
  EXPECT_THROW(parse_complex("x"), twistzero::Error);
}
