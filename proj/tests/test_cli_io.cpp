#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "su2opt/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCli = SU2OPT_CLI_PATH;
const char* kSchemaDir = SU2OPT_SCHEMA_DIR;

// Structural subset of JSON Schema: "type", "required", nested "properties".
// Enough to hold the reports to the shipped contract.
bool validates(const json& schema, const json& value, std::string* why) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    const bool ok = (t == "object" && value.is_object()) ||
                    (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) ||
                    (t == "number" && value.is_number()) ||
                    (t == "boolean" && value.is_boolean());
    if (!ok) {
      *why = "expected type " + t + ", got " + value.dump();
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) {
        *why = "missing required key " + key.get<std::string>();
        return false;
      }
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (value.contains(key) && !validates(sub, value.at(key), why)) {
        *why = key + ": " + *why;
        return false;
      }
    }
  }
  return true;
}

bool validates_against(const std::string& schema_file, const json& report) {
  std::ifstream in(fs::path(kSchemaDir) / schema_file);
  REQUIRE(in.good());
  const json schema = json::parse(in);
  std::string why;
  const bool ok = validates(schema, report, &why);
  if (!ok) UNSCOPED_INFO(schema_file << ": " << why);
  return ok;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "su2opt_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(kCli) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("format_double round-trips at 17 significant digits") {
  for (const double v : {1.0 / 3.0, su2opt::kPi, -0.88857658763167325, 1e-17, 0.0}) {
    const std::string s = su2opt::io::format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("config parsing: comments, blanks, trimming, errors") {
  std::istringstream in(
      "# run configuration\n"
      "omega0 = 4.0\n"
      "\n"
      "gamma1=1.0   # inline comment\n"
      "  gamma2 =3.0\n");
  const auto cfg = su2opt::io::parse_config(in);
  CHECK(cfg.get_double("omega0", 0.0) == 4.0);
  CHECK(cfg.get_double("gamma1", 0.0) == 1.0);
  CHECK(cfg.get_double("gamma2", 0.0) == 3.0);
  CHECK(cfg.get_double("missing", -1.0) == -1.0);

  std::istringstream bad("omega0 4.0\n");
  CHECK_THROWS_AS(su2opt::io::parse_config(bad), su2opt::RangeError);
  std::istringstream notnum("omega0 = four\n");
  const auto cfg2 = su2opt::io::parse_config(notnum);
  CHECK_THROWS_AS(cfg2.get_double("omega0", 0.0), su2opt::RangeError);
}

TEST_CASE("cli: flags override config file values") {
  const fs::path cfg = scratch_dir() / "run.cfg";
  std::ofstream(cfg) << "omega0 = 4\ngamma1 = 1\ngamma2 = 3\n";
  const auto base = run_cli("classify --config " + cfg.string());
  REQUIRE(base.exit_code == 0);
  const json jb = json::parse(base.out);
  CHECK(jb["rotation"] == "co_rotating");

  // override gamma2 from the command line: 5 > omega0 flips the rotation
  const auto over = run_cli("classify --config " + cfg.string() + " --gamma2 5");
  REQUIRE(over.exit_code == 0);
  const json jo = json::parse(over.out);
  CHECK(jo["rotation"] == "counter_rotating");
  CHECK(jo["params"]["gamma1"] == 1.0);
}

TEST_CASE("cli frontline: header, ordering, arc law") {
  const auto r = run_cli("frontline --omega0 4 --gamma1 1 --gamma2 3 --t 1.0 "
                         "--resolution 32");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "branch,omega,tau,x,y");
  std::string prev_branch;
  double prev_omega = 0.0;
  int zero_rows = 0;
  std::vector<std::string> branch_order;
  while (std::getline(in, line)) {
    const auto cells = split_csv_line(line);
    REQUIRE(cells.size() == 5);
    const double omega = std::stod(cells[1]);
    const double tau = std::stod(cells[2]);
    const double x = std::stod(cells[3]);
    const double y = std::stod(cells[4]);
    CHECK(tau == 0.5);  // physical t = 1.0
    if (cells[0] != prev_branch) {
      branch_order.push_back(cells[0]);
      prev_branch = cells[0];
    } else {
      CHECK(omega >= prev_omega);  // omega ascending within a branch
    }
    prev_omega = omega;
    if (cells[0] == "zero") {
      ++zero_rows;
      const double c = std::cos(tau);
      CHECK(x * x + y * y == Catch::Approx(c * c).margin(1e-12));
    }
  }
  CHECK(zero_rows == 32);
  REQUIRE(branch_order.size() == 3);
  CHECK(branch_order[0] == "minus");
  CHECK(branch_order[1] == "plus");
  CHECK(branch_order[2] == "zero");
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("frontline --no-such-flag 1").exit_code == 2);
  CHECK(run_cli("classify --omega0 1 --gamma1 -2 --gamma2 0").exit_code == 2);
  // all pinned families emptied by the border cut -> empty locus
  const auto empty = run_cli("frontline --omega0 4 --gamma1 1 --gamma2 3 --t 8.0");
  CHECK(empty.exit_code == 3);
  CHECK(empty.err.find("empty") != std::string::npos);
  // unreachable horizon
  const auto unreach = run_cli(
      "synth --omega0 4 --gamma1 1 --gamma2 3 --target general "
      "--alpha-re 0 --alpha-im 0 --beta-re 1 --beta-im 0 --tau-max 0.2");
  CHECK(unreach.exit_code == 4);
}

TEST_CASE("cli synth: JSON report fields and values") {
  const auto r = run_cli("synth --omega0 4 --gamma1 2 --gamma2 3 --target swap "
                         "--oracle-grid 96");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == "su2opt/synth-report/v1");
  CHECK(validates_against("synth-report.v1.schema.json", j));
  CHECK(j["t_f"].get<double>() == Catch::Approx(0.5 * su2opt::kPi).epsilon(1e-12));
  CHECK(j["branch"] == "zero");
  CHECK(j["u_z"].get<double>() == 0.0);
  CHECK(j["residual"].get<double>() < 1e-6);
  REQUIRE(j.contains("oracle"));
  CHECK(std::abs(j["oracle"]["t_f"].get<double>() - 0.5 * su2opt::kPi) <
        1e-3 * su2opt::kPi);

  const auto d = run_cli("synth --omega0 4 --gamma1 1 --gamma2 3 "
                         "--target diagonal --lambda 3.14159265358979324 "
                         "--oracle-grid 96");
  REQUIRE(d.exit_code == 0);
  const json jd = json::parse(d.out);
  CHECK(jd["t_f"].get<double>() == Catch::Approx(0.88857658763167325).epsilon(1e-9));
  CHECK(jd["residual"].get<double>() < 1e-6);
}

TEST_CASE("cli classify: boundary case surfaces as a named field") {
  const auto r = run_cli("classify --omega0 3 --gamma1 1 --gamma2 3");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(validates_against("classify-report.v1.schema.json", j));
  REQUIRE(j.contains("boundary_case"));
  CHECK(j["boundary_case"].size() == 1);
  CHECK(j["boundary_case"][0] == "gamma2_equals_omega0");

  const auto f1 = run_cli("classify --omega0 4 --gamma1 1 --gamma2 3");
  const json j1 = json::parse(f1.out);
  CHECK(j1["excluded_disk_radius"].get<double>() == Catch::Approx(0.5).epsilon(1e-12));
  const auto f2 = run_cli("classify --omega0 2 --gamma1 2 --gamma2 3");
  const json j2 = json::parse(f2.out);
  CHECK(j2["rotation"] == "counter_rotating");
  CHECK(j2["depth"] == "full_depth");
}

TEST_CASE("cli sweep: dominance holds, reruns are byte-identical") {
  const std::string args = "sweep --omega0 2 --n 80 --seed 12345";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("violations=0") != std::string::npos);

  const auto c = run_cli("sweep --omega0 2 --n 80 --seed 99");
  CHECK(c.out != a.out);

  const auto empty = run_cli("sweep --omega0 2 --n 0 --seed 1");
  CHECK(empty.exit_code == 0);
  std::istringstream in(empty.out);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "gamma1,gamma2,lambda,t_f_asym,t_f_sym,dominance_ok");
  REQUIRE(std::getline(in, line));
  CHECK(line.rfind("# rows=0", 0) == 0);

  CHECK(a.out.back() == '\n');  // LF-terminated
}

TEST_CASE("cli reachable: deterministic SVG plus boundary CSV") {
  const fs::path svg1 = scratch_dir() / "fig1.svg";
  const fs::path svg2 = scratch_dir() / "fig2.svg";
  const fs::path csv = scratch_dir() / "fig1.csv";
  const std::string base = "reachable --omega0 4 --gamma1 1 --gamma2 3 "
                           "--times 0.6,1.0,1.4 --resolution 256 ";
  const auto r1 = run_cli(base + "--out " + svg1.string() + " --out-csv " + csv.string());
  const auto r2 = run_cli(base + "--out " + svg2.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  const std::string s1 = slurp(svg1), s2 = slurp(svg2);
  CHECK(s1 == s2);
  CHECK(s1.rfind("<svg", 0) == 0);
  CHECK(s1.find("</svg>") != std::string::npos);
  CHECK(s1.find("polyline") != std::string::npos);
  CHECK(s1.find("stroke-dasharray") != std::string::npos);  // endpoint traces

  // boundary CSV: header plus vertices inside the closed disk
  std::istringstream in(slurp(csv));
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "t,tau,piece,param,x,y");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto cells = split_csv_line(line);
    REQUIRE(cells.size() == 6);
    const double x = std::stod(cells[4]);
    const double y = std::stod(cells[5]);
    CHECK(x * x + y * y <= 1.0 + 1e-9);
    ++rows;
  }
  CHECK(rows > 100);

  // the documented alternate reading tau = t also renders
  const auto alt = run_cli("reachable --omega0 4 --gamma1 1 --gamma2 3 "
                           "--times 0.6 --resolution 64 --tau-equals-t --out " +
                           (scratch_dir() / "alt.svg").string());
  CHECK(alt.exit_code == 0);

  // a single tiny time still yields a valid SVG
  const fs::path tiny = scratch_dir() / "tiny.svg";
  const auto r3 = run_cli("reachable --omega0 4 --gamma1 1 --gamma2 3 --times 0.001 "
                          "--resolution 64 --out " + tiny.string());
  CHECK(r3.exit_code == 0);
  const std::string s3 = slurp(tiny);
  CHECK(s3.rfind("<svg", 0) == 0);
  CHECK(s3.find("</svg>") != std::string::npos);
}

TEST_CASE("cli verify: residual report") {
  const auto r = run_cli("verify --omega0 4 --gamma1 1 --gamma2 3 --branch minus "
                         "--omega 2.5 --phi 0.3 --t 3.0 --step 0.0005");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == "su2opt/verify-report/v1");
  CHECK(validates_against("verify-report.v1.schema.json", j));
  CHECK(j["residuals"]["alpha_distance"].get<double>() < 1e-8);
  CHECK(j["residuals"]["beta_distance"].get<double>() < 1e-8);
  CHECK(j["residuals"]["unitarity"].get<double>() < 1e-10);
  CHECK(j["residuals"]["costate_closed_form"].get<double>() < 1e-8);
  CHECK(j["residuals"]["costate_invariant"].get<double>() < 1e-8);
  CHECK(j["residuals"]["hamiltonian_drift"].get<double>() < 1e-8);
}
