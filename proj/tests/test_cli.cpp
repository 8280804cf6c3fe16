#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("mcmv_cli_" + std::to_string(testkit::seed_from_env()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_spec(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& args) {
  static int counter = 0;
  const fs::path out = work_dir() / ("stdout_" + std::to_string(counter));
  const fs::path err = work_dir() / ("stderr_" + std::to_string(counter++));
  const std::string cmd = std::string(MCMV_CLI) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::string operator_spec(const std::vector<mcmv::cplx>& block, const std::vector<mcmv::cplx>& poles, double phase,
                          const std::string& extra = "") {
  json j;
  for (const auto& a : block) j["verblunsky"].push_back({a.real(), a.imag()});
  for (const auto& z : poles) j["poles"].push_back({z.real(), z.imag()});
  j["phase"] = phase;
  std::string s = j.dump(-1, ' ', false, json::error_handler_t::strict);
  if (!extra.empty()) s.insert(s.size() - 1, "," + extra);
  return s;
}

std::string random_n2_spec() {
  testkit::Rng rng;
  std::vector<mcmv::cplx> block(4);
  for (auto& a : block) a = rng.disk(0.8);
  return operator_spec(block, {0.0, mcmv::cplx(0.3, 0.2)}, 0.7);
}

} // namespace

TEST_CASE("bands") {
  const fs::path free = write_spec("free.json", R"({"verblunsky": [[0, 0], [0, 0]], "phase": 0})");
  const Run r = run("bands --input " + free.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == "mcmv-kit/1");
  CHECK(nlohmann::ordered_json::parse(r.out).begin().key() == "schema");
  CHECK(j.contains("tol"));
  CHECK(j["g"] == 0);
  REQUIRE(j["bands"].size() == 1);
  CHECK(j["bands"][0][0].get<double>() == 0.0);
  CHECK(std::abs(j["bands"][0][1].get<double>() - 2 * kPi) < 1e-15);

  const double a = std::sqrt(0.5);
  const fs::path half = write_spec("half.json", operator_spec({a, a}, {0.0}, 0.0));
  const json h = json::parse(run("bands --input " + half.string()).out);
  CHECK(h["g"] == 1);
  REQUIRE(h["bands"].size() == 1);
  CHECK(std::abs(h["bands"][0][0].get<double>() - kPi / 2) < 1e-8);
  CHECK(std::abs(h["bands"][0][1].get<double>() - 3 * kPi / 2) < 1e-8);
  REQUIRE(h["gap_edges"].size() == 1);
  CHECK(h["critical_points"].size() == 2);
}

TEST_CASE("validation errors exit with 2") {
  const Run bad = run("bands --input " + write_spec("broken.json", R"({"verblunsky": [[0.3, 0.1)").string());
  CHECK(bad.code == 2);
  CHECK(bad.err.find("malformed JSON") != std::string::npos);
  CHECK(run("bands --input " + write_spec("both.json", R"({"verblunsky": [[0, 0], [0, 0]], "gaps": [[1, 2]]})").string()).code == 2);
  CHECK(run("bands --input " + write_spec("none.json", R"({"other": 1})").string()).code == 2);
  CHECK(run("bands --input " + write_spec("odd.json", R"({"verblunsky": [[0, 0]]})").string()).code == 2);
  CHECK(run("bands --input " + write_spec("out.json", R"({"verblunsky": [[1.5, 0], [0, 0]]})").string()).code == 2);
  CHECK(run("bands --input " + write_spec("pole.json", R"({"verblunsky": [[0, 0], [0, 0], [0, 0], [0, 0]], "poles": [[0.2, 0], [0.1, 0]]})").string()).code == 2);
  CHECK(run("ahlfors --input " + (work_dir() / "free.json").string()).code == 2);
  CHECK(run("bands --input " + (work_dir() / "missing.json").string()).code == 2);
  CHECK(run("bands").code == 2);
  CHECK(run("frobnicate --input x").code == 2);
}

TEST_CASE("magic formula pass and fail") {
  const Run f = run("magic --input " + (work_dir() / "free.json").string());
  CHECK(f.code == 0);
  CHECK(json::parse(f.out)["pass"] == true);

  const fs::path n2 = write_spec("n2.json", random_n2_spec());
  const Run ok = run("magic --input " + n2.string());
  CHECK(ok.code == 0);
  const json j = json::parse(ok.out);
  CHECK(j["max_deviation"].get<double>() < 1e-9);
  CHECK(j["tol"].get<double>() == 1e-9);
  CHECK_FALSE(j["per_diagonal"].empty());

  const json spec = json::parse(random_n2_spec());
  json perturbed = spec;
  perturbed["overrides"] = json::array({{{"k", 5}, {"a", {0.1, -0.2}}}});
  const Run bad = run("magic --input " + write_spec("perturbed.json", perturbed.dump()).string());
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["max_deviation"].get<double>() > 1e-3);

  const Run ranged = run("magic --input " + n2.string() + " --range 4 20 --tol 1e-8");
  const json rj = json::parse(ranged.out);
  CHECK(rj["range"][0] == 4);
  CHECK(rj["range"][1] == 20);
  CHECK(rj["tol"].get<double>() == 1e-8);
}

TEST_CASE("divisor") {
  const json f = json::parse(run("divisor --input " + (work_dir() / "free.json").string()).out);
  CHECK(f["divisor"].is_array());
  CHECK(f["divisor"].empty());
  const json d = json::parse(run("divisor --input " + (work_dir() / "n2.json").string()).out);
  const json b = json::parse(run("bands --input " + (work_dir() / "n2.json").string()).out);
  CHECK(d["divisor"].size() == b["g"].get<std::size_t>());
  for (const json& p : d["divisor"]) CHECK(std::abs(std::abs(p["epsilon"].get<int>()) - 1) == 0);
}

TEST_CASE("measure CSV integrates to one") {
  const fs::path csv = work_dir() / "measure.csv";
  const Run r = run("measure --input " + (work_dir() / "n2.json").string() + " --grid 4096 --out " + csv.string());
  REQUIRE(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,nu_ac");
  double trapezoid = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    trapezoid += std::stod(line.substr(comma + 1)) / 4096;
    ++rows;
  }
  CHECK(rows == 4096);
  const json side = json::parse(slurp(csv.string() + ".json"));
  double atoms = 0.0;
  for (const json& m : side["masses"]) atoms += m["weight"].get<double>();
  CHECK(std::abs(trapezoid + atoms - 1.0) < 2e-3);
  CHECK(std::abs(side["total"].get<double>() - 1.0) < 1e-8);
}

TEST_CASE("Ahlfors data") {
  const fs::path gaps = write_spec("gaps.json", R"({"gaps": [[1, 2], [3, 5]]})");
  const fs::path csv = work_dir() / "ahlfors.csv";
  const Run r = run("ahlfors --input " + gaps.string() + " --z0 0.7,1.3 --grid 256 --out " + csv.string());
  CHECK(r.code == 0);
  const json j = json::parse(slurp(csv.string() + ".json"));
  CHECK(j["zeros"].size() == 2);
  CHECK(j["critical_points"].size() == 6);
  CHECK(slurp(csv).rfind("x,re_w,im_w,delta\n", 0) == 0);
  CHECK(run("ahlfors --input " + gaps.string() + " --z0 0.7,-1.3").code == 2);

  const fs::path arcs = write_spec("arcs.json", R"({"arcs": [[0.5, 2.4], [2.9, 5.6]]})");
  const fs::path side = work_dir() / "arcs_side.json";
  CHECK(run("ahlfors --input " + arcs.string() + " --json " + side.string()).code == 0);
  CHECK(json::parse(slurp(side))["poles"].size() == 2);

  // Invariant under z -> -z: the two poles merge at 0.
  const fs::path sym = write_spec("sym.json", R"({"arcs": [[-1, 1], [2.141592653589793, 4.141592653589793]]})");
  CHECK(run("ahlfors --input " + sym.string()).code == 3);
}

TEST_CASE("stripping and roundtrip") {
  const fs::path n2 = work_dir() / "n2.json";
  for (int depth : {1, 3}) {
    const Run s = run("stripping --input " + n2.string() + " --depth " + std::to_string(depth));
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["max_residual"].get<double>() < 1e-10);
  }
  const Run rt = run("roundtrip --input " + n2.string());
  CHECK(rt.code == 0);
  const json j = json::parse(rt.out);
  CHECK(j["max_error"].get<double>() < 1e-7);
  CHECK(j["coefficients"].size() == 8);
}

TEST_CASE("identical input gives byte-identical output") {
  const std::string args = "bands --input " + (work_dir() / "n2.json").string();
  CHECK(run(args).out == run(args).out);
  const std::string out = run(args).out;
  CHECK(out.find("e-09") != std::string::npos);
  // 17 significant digits survive a parse/print round trip.
  const json j = json::parse(out);
  for (const json& c : j["critical_points"]) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", c["t"].get<double>());
    CHECK(out.find(buf) != std::string::npos);
  }
}
