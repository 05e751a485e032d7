#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "cli/csv_io.hpp"
#include "cli/svg.hpp"
#include "ffdm/error.hpp"

namespace ffdm::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ffdm(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("ffdm_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<CsvSection> parse(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

// Minimal well-formedness: balanced tags, quoted attributes, one root.
bool well_formed_xml(const std::string& s) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  int roots = 0;
  while ((i = s.find('<', i)) != std::string::npos) {
    const std::size_t close = s.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = s.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.starts_with("?") || tag.starts_with("!")) continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (tag.starts_with("/")) {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    if (stack.empty()) ++roots;
    if (tag.ends_with("/")) continue;
    stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
  }
  return stack.empty() && roots == 1;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
  return n;
}

TEST(Csv, FormatIsRoundTripExact) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, 2.0}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(2.0), "2");
}

TEST(Csv, RereadAndReemitIsByteIdentical) {
  const auto r = ffdm({"solve", "--alpha", "0.35", "--theta", "-0.055", "--N", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ostringstream again;
  write_csv(again, parse(r.out));
  EXPECT_EQ(again.str(), r.out);

  const auto w = ffdm({"weights", "--alpha", "0.5", "--theta", "0.25", "--kmax", "7"});
  ASSERT_EQ(w.code, 0);
  std::ostringstream again_w;
  write_csv(again_w, parse(w.out));
  EXPECT_EQ(again_w.str(), w.out);
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(parse("x,T\n1,2\n3\n"), Error);
  EXPECT_THROW(parse("x,T\n1,abc\n"), Error);
}

TEST(Profile, Parsing) {
  std::istringstream good("x,T_obs\n0,2\n0.5,1.4\n1,1\n");
  const auto p = read_profile(good);
  EXPECT_EQ(p.points.size(), 3u);
  EXPECT_EQ(p.left, 0.0);
  EXPECT_EQ(p.right, 1.0);

  std::istringstream header("x,T\n0,2\n0.5,1.4\n1,1\n");
  EXPECT_THROW(read_profile(header), Error);
  std::istringstream unsorted("x,T_obs\n0,2\n0.7,1.4\n0.5,1\n");
  EXPECT_THROW(read_profile(unsorted), Error);
  std::istringstream outside("x,T_obs\n0,2\n0.5,1.4\n1,1\n");
  EXPECT_THROW(read_profile(outside, 0.0, 0.9), Error);
}

TEST(Svg, ValidWithOnePolylinePerProfile) {
  Chart c{"a < b & \"c\"", "x", "T", {}};
  c.series.push_back({"one", {0, 1}, {2, 1}, false});
  c.series.push_back({"two", {0, 0.5, 1}, {2, 1.6, 1}, false});
  c.series.push_back({"pts", {0.2, 0.4}, {1.9, 1.7}, true});
  const auto svg = render_svg(c);
  EXPECT_TRUE(well_formed_xml(svg));
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_EQ(count(svg, "<circle"), 2u + 1u);  // points plus legend swatch
  EXPECT_NE(svg.find("a &lt; b &amp; &quot;c&quot;"), std::string::npos);
  EXPECT_EQ(xml_escape("<&>'\""), "&lt;&amp;&gt;&apos;&quot;");
}

TEST(Solve, ClassicalCaseCsv) {
  const auto r = ffdm({"solve", "--alpha", "2", "--theta", "0", "--N", "10", "--L", "0", "--R",
                       "1", "--gl", "2", "--gr", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto s = parse(r.out);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].header, (std::vector<std::string>{"x", "T"}));
  ASSERT_EQ(s[0].rows.size(), 11u);
  for (const auto& row : s[0].rows) EXPECT_NEAR(row[1], 2.0 - row[0], 1e-10);
}

TEST(Solve, SingularOrderRejected) {
  for (const char* a : {"1", "1.0000001", "0.9999999"}) {
    const auto r = ffdm({"solve", "--alpha", a, "--theta", "0"});
    EXPECT_EQ(r.code, kExitInputError) << a;
    EXPECT_NE(r.err.find("singular order of the Riesz-Feller operator"), std::string::npos)
        << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  }
}

TEST(Solve, ValidationExitCodes) {
  EXPECT_EQ(ffdm({"solve", "--alpha", "0.5", "--theta", "0.9"}).code, kExitInputError);
  EXPECT_EQ(ffdm({"solve", "--alpha", "2.5"}).code, kExitInputError);
  EXPECT_EQ(ffdm({"solve", "--N", "1"}).code, kExitInputError);
  EXPECT_EQ(ffdm({"solve", "--bogus"}).code, kExitInputError);
  EXPECT_EQ(ffdm({}).code, kExitInputError);
  const auto r = ffdm({"solve", "--alpha", "1.003"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Solve, FractionalProfileDeviatesFromLinear) {
  const auto r = ffdm({"solve", "--alpha", "0.35", "--theta", "-0.055", "--N", "200", "--gl", "2",
                       "--gr", "1"});
  ASSERT_EQ(r.code, kExitOk);
  double dev = 0.0;
  const auto rows = parse(r.out)[0].rows;
  for (const auto& row : rows) dev = std::max(dev, std::fabs(row[1] - 2.0 + row[0]));
  EXPECT_GT(dev, 0.05);
}

TEST(Solve, JsonCarriesManifestAndDiffersOnlyInTimestamp) {
  TempDir tmp;
  const std::vector<std::string> base{"solve",   "--alpha", "1.5", "--theta", "0.2",
                                      "--N",     "20",      "--out", tmp / "s.csv", "--json"};
  auto a = base, b = base;
  a.push_back(tmp / "a.json");
  b.push_back(tmp / "a.json");
  ASSERT_EQ(ffdm(a).code, 0);
  auto ja = nlohmann::json::parse(slurp(tmp / "a.json"));
  ASSERT_EQ(ffdm(b).code, 0);
  auto jb = nlohmann::json::parse(slurp(tmp / "a.json"));

  for (const char* key : {"manifest", "nodes", "values", "residual_inf"}) {
    EXPECT_TRUE(ja.contains(key)) << key;
  }
  const auto& m = ja["manifest"];
  EXPECT_EQ(m["command"], "solve");
  EXPECT_EQ(m["alpha"], 1.5);
  EXPECT_EQ(m["theta"], 0.2);
  EXPECT_EQ(m["N"], 20);
  EXPECT_EQ(m["gl"], 2.0);
  EXPECT_EQ(m["gr"], 1.0);
  EXPECT_EQ(m["lambda1"], 0.0);
  EXPECT_TRUE(m.contains("version"));
  EXPECT_TRUE(m.contains("timestamp"));
  EXPECT_EQ(ja["nodes"].size(), 21u);

  ja["manifest"].erase("timestamp");
  jb["manifest"].erase("timestamp");
  EXPECT_EQ(ja, jb);
}

TEST(Weights, ClassicalStencil) {
  const auto r = ffdm({"weights", "--alpha", "2", "--theta", "0", "--kmax", "5"});
  ASSERT_EQ(r.code, kExitOk);
  const auto s = parse(r.out);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].header, (std::vector<std::string>{"k", "w"}));
  EXPECT_EQ(s[1].header, (std::vector<std::string>{"j", "sL", "sR"}));
  ASSERT_EQ(s[0].rows.size(), 11u);
  for (const auto& row : s[0].rows) {
    const double expected = row[0] == 0 ? -2.0 : (std::fabs(row[0]) == 1 ? 1.0 : 0.0);
    EXPECT_NEAR(row[1], expected, 1e-12) << row[0];
  }
}

TEST(Weights, SymmetryAndMirror) {
  const auto sym = parse(ffdm({"weights", "--alpha", "1.5", "--theta", "0", "--kmax", "10"}).out);
  const auto& w = sym[0].rows;
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_EQ(w[i][1], w[w.size() - 1 - i][1]);

  const auto pos = parse(ffdm({"weights", "--alpha", "0.5", "--theta", "0.25", "--kmax", "10"}).out);
  const auto neg =
      parse(ffdm({"weights", "--alpha", "0.5", "--theta", "-0.25", "--kmax", "10"}).out);
  for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(pos[1].rows[j][2], neg[1].rows[j][1]);
}

TEST(Sweep, Fig2Preset) {
  TempDir tmp;
  const auto r = ffdm({"sweep", "--preset", "fig2", "--N", "200", "--out", tmp.path().string(),
                       "--json", tmp / "sweep.json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<fs::path> csvs;
  for (const auto& e : fs::directory_iterator(tmp.path())) {
    if (e.path().extension() == ".csv") csvs.push_back(e.path());
  }
  EXPECT_EQ(csvs.size(), 8u);
  const auto svg = slurp(tmp / "sweep.svg");
  EXPECT_TRUE(well_formed_xml(svg));
  EXPECT_EQ(count(svg, "<polyline"), 8u);

  const auto j = nlohmann::json::parse(slurp(tmp / "sweep.json"));
  ASSERT_EQ(j["profiles"].size(), 8u);
  const std::string last = j["profiles"][7]["csv"];
  const auto rows = parse(slurp(last))[0].rows;
  EXPECT_EQ(j["profiles"][7]["alpha"], 2.0);
  for (const auto& row : rows) EXPECT_NEAR(row[1], 2.0 - row[0], 1e-9);
}

TEST(Sweep, Fig3PresetZeroSkewIsMirrorSymmetric) {
  TempDir tmp;
  const auto r = ffdm({"sweep", "--preset", "fig3", "--N", "200", "--out", tmp.path().string(),
                       "--json", tmp / "sweep.json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(tmp / "sweep.json"));
  ASSERT_EQ(j["profiles"].size(), 7u);
  EXPECT_EQ(j["profiles"][0]["theta"], 0.0);

  // theta = 0 with (gL, gR) swapped is the node reversal of the preset curve.
  const auto fwd = parse(slurp(j["profiles"][0]["csv"]))[0].rows;
  const auto rev = parse(ffdm({"solve", "--alpha", "1.01", "--theta", "0", "--N", "200", "--gl",
                               "1", "--gr", "2"})
                             .out)[0]
                       .rows;
  ASSERT_EQ(fwd.size(), rev.size());
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    EXPECT_NEAR(fwd[i][1], rev[fwd.size() - 1 - i][1], 1e-9);
  }
}

TEST(Sweep, Errors) {
  TempDir tmp;
  const auto r = ffdm({"sweep", "--alpha", "1", "--theta", "0", "--out", tmp.path().string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(fs::is_empty(tmp.path()));
  EXPECT_EQ(ffdm({"sweep", "--preset", "fig9"}).code, kExitInputError);
  EXPECT_EQ(ffdm({"sweep"}).code, kExitInputError);
  EXPECT_THROW(preset("fig4"), Error);
}

TEST(Verify, ReductionAndConvergence) {
  const auto r = ffdm({"verify", "reduction"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["all_passed"].get<bool>());
  EXPECT_TRUE(j.contains("manifest"));
  ASSERT_EQ(j["checks"].size(), 1u);

  const auto c = ffdm({"verify", "convergence", "--alpha", "1.5", "--theta", "0"});
  EXPECT_EQ(c.code, kExitOk) << c.err;
  const auto s = nlohmann::json::parse(c.out)["checks"][0]["differences"];
  ASSERT_EQ(s.size(), 3u);
  EXPECT_GT(s[0].get<double>(), s[1].get<double>());
  EXPECT_GT(s[1].get<double>(), s[2].get<double>());
}

TEST(Verify, FailureExitCode) {
  const auto r = ffdm({"verify", "reduction", "--lambda2", "0.5"});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["all_passed"].get<bool>());
  EXPECT_EQ(ffdm({"verify", "nonsense"}).code, kExitInputError);
}

TEST(Fit, RecoversParametersFromSolveOutput) {
  TempDir tmp;
  const auto s = ffdm({"solve", "--alpha", "0.35", "--theta", "-0.055", "--N", "200"});
  ASSERT_EQ(s.code, 0);
  const auto rows = parse(s.out)[0].rows;
  {
    std::ofstream f(tmp / "data.csv");
    f << "x,T_obs\n";
    for (std::size_t i = 0; i < rows.size(); i += 10) {
      f << format_number(rows[i][0]) << ',' << format_number(rows[i][1]) << '\n';
    }
  }
  const auto r = ffdm({"fit", "--data", tmp / "data.csv", "--out", tmp / "fit.json", "--svg",
                       tmp / "fit.svg"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"manifest", "alpha_star", "theta_star", "sse", "iterations", "converged"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_NEAR(j["alpha_star"].get<double>(), 0.35, 0.01);
  EXPECT_NEAR(j["theta_star"].get<double>(), -0.055, 0.01);
  EXPECT_EQ(nlohmann::json::parse(slurp(tmp / "fit.json")), j);
  const auto svg = slurp(tmp / "fit.svg");
  EXPECT_TRUE(well_formed_xml(svg));
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  EXPECT_EQ(count(svg, "<circle"), 21u + 1u);
}

TEST(Fit, LinearDataAndBadInput) {
  TempDir tmp;
  {
    std::ofstream f(tmp / "lin.csv");
    f << "x,T_obs\n";
    for (int i = 0; i <= 10; ++i) f << i / 10.0 << ',' << 2.0 - i / 10.0 << '\n';
  }
  const auto r = ffdm({"fit", "--data", tmp / "lin.csv", "--N", "64"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_GE(nlohmann::json::parse(r.out)["alpha_star"].get<double>(), 1.9);

  {
    std::ofstream f(tmp / "unsorted.csv");
    f << "x,T_obs\n0,2\n0.6,1.3\n0.4,1.5\n1,1\n";
  }
  EXPECT_EQ(ffdm({"fit", "--data", tmp / "unsorted.csv"}).code, kExitInputError);
  EXPECT_EQ(ffdm({"fit", "--data", tmp / "missing.csv"}).code, kExitInputError);
  EXPECT_EQ(ffdm({"fit"}).code, kExitInputError);
}

}  // namespace
}  // namespace ffdm::cli
