#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "entcost/cli.hpp"

using namespace entcost;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(const std::vector<std::string>& args) {
  const auto r = invoke(args);
  REQUIRE_MESSAGE(r.code <= 1, r.err);
  return Json::parse(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream f(name);
  f << text;
  return name;
}

}  // namespace

TEST_CASE("bell-mix rows") {
  const Json doc = invoke_json({"bell-mix", "--grid", "3"});
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("command") == "bell-mix");
  const Json& rows = doc.at("outputs").at("rows");
  REQUIRE(rows.size() == 3);

  const Json& first = rows[0];
  CHECK(first.at("p").get<double>() == 0.0);
  CHECK(first.at("Ec").get<double>() == doctest::Approx(1.0));
  CHECK(first.at("Ed").get<double>() == doctest::Approx(1.0));
  CHECK(first.at("Ef").get<double>() == doctest::Approx(1.0));
  CHECK(std::abs(first.at("gap").get<double>()) < 1e-12);

  const Json& mid = rows[1];
  CHECK(mid.at("p").get<double>() == 0.25);
  CHECK(std::abs(mid.at("Ec").get<double>() - 0.354579) < 1e-5);
  CHECK(std::abs(mid.at("Ed").get<double>() - 0.188722) < 1e-5);
  CHECK(std::abs(mid.at("Ef").get<double>() - 0.354579) < 1e-5);
  CHECK(std::abs(mid.at("gap").get<double>() - 0.165857) < 1e-5);

  const Json& last = rows[2];
  CHECK(last.at("p").get<double>() == 0.5);
  for (const char* k : {"Ec", "Ed", "Ef", "gap"}) CHECK(std::abs(last.at(k).get<double>()) < 1e-9);

  CHECK(invoke_json({"bell-mix"}).at("outputs").at("rows").size() == 101);
}

TEST_CASE("bell-mix csv") {
  const auto r = invoke({"bell-mix", "--p", "0.25", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "p,Ec,Ed,Ef,gap\n0.25,0.354578903,0.188721876,0.354578903,0.165857027\n");
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(invoke({"bell-mix", "--p", "0.7"}).code == cli::kInputError);
  CHECK(invoke({"bell-mix", "--grid", "1"}).code == cli::kInputError);
  CHECK(invoke({"bell-mix", "--p", "0.1", "--grid", "5"}).code == cli::kInputError);
  CHECK(invoke({"additivity", "--p", "0.6", "--q", "0.1"}).code == cli::kInputError);
  CHECK(invoke({"example", "--id", "7"}).code == cli::kInputError);
  CHECK(invoke({"eb-check"}).code == cli::kInputError);
  CHECK(invoke({"frobnicate"}).code == cli::kInputError);
  CHECK(invoke({"bell-mix", "--format", "xml"}).code == cli::kInputError);
}

TEST_CASE("example command") {
  const Json e3 = invoke_json({"example", "--id", "3"}).at("outputs");
  CHECK(e3.at("spectrum").size() == 2);
  CHECK(std::abs(e3.at("spectrum")[0].get<double>() - 1.0 / 3) < 1e-9);
  CHECK(std::abs(e3.at("Ef").get<double>() - 0.918296) < 1e-5);
  CHECK(std::abs(e3.at("Ec").get<double>() - 0.918296) < 1e-5);
  CHECK(e3.at("eb").at("verdict") == "breaking");

  const Json e4 = invoke_json({"example", "--id", "4"}).at("outputs");
  CHECK(std::abs(e4.at("Ef").get<double>() - 1.5) < 1e-9);
  CHECK(std::abs(e4.at("Ec").get<double>() - 1.5) < 1e-9);
  CHECK(e4.at("eb").at("method") == "design_decomposition");
  CHECK(e4.at("eb").at("ensemble").size() == 12);

  const Json e2 = invoke_json({"example", "--id", "2"}).at("outputs");
  CHECK(std::abs(e2.at("Ef").get<double>() - 1.0) < 1e-9);
  CHECK(e2.at("eb").at("verdict") == "not_breaking");
  CHECK(e2.at("Ec").is_null());

  const Json e1 = invoke_json({"example", "--id", "1"}).at("outputs");
  CHECK(e1.at("constant_entanglement") == false);
  CHECK(e1.at("Ec_equals_Ef") == true);

  const Json lit = invoke_json({"example", "--id", "4", "--literal-basis"}).at("outputs");
  CHECK(lit.at("constant_entanglement") == false);
  CHECK(lit.at("eb").at("verdict") == "not_breaking");
  CHECK(invoke({"example", "--id", "2", "--literal-basis"}).code == cli::kInputError);
}

TEST_CASE("eb-check exit codes") {
  CHECK(invoke({"eb-check", "--example", "1"}).code == cli::kSuccess);
  CHECK(invoke({"eb-check", "--example", "2"}).code == cli::kNegativeVerdict);
  const auto e4 = invoke({"eb-check", "--example", "4"});
  CHECK(e4.code == cli::kSuccess);
  CHECK(Json::parse(e4.out).at("outputs").at("ensemble").size() == 12);

  const auto depol = write_temp("cli_depol_choi.json", to_json(Matrix::identity(9) * (1.0 / 9), {3, 3}).dump());
  CHECK(invoke({"eb-check", "--choi", depol}).code == cli::kIndeterminate);
  std::remove(depol.c_str());

  const auto bell = write_temp("cli_bell_choi.json", to_json(bell_state(BellKind::PhiPlus)).dump());
  CHECK(invoke({"eb-check", "--choi", bell}).code == cli::kNegativeVerdict);
  std::remove(bell.c_str());
}

TEST_CASE("ef command") {
  const auto path = write_temp("cli_bell_mix.json", to_json(bell_mix(BellMixParam(0.25))).dump());
  const Json doc = invoke_json({"ef", "--input", path, "--restarts", "4", "--seed", "3"});
  const Json& out = doc.at("outputs");
  CHECK(std::abs(out.at("value").get<double>() - 0.3546) < 5e-3);
  CHECK(out.at("reconstruction_residual").get<double>() <= 1e-8);
  CHECK(out.at("history").size() == 4);
  CHECK(doc.at("seed") == 3);
  std::remove(path.c_str());

  const auto pure = write_temp("cli_phi.json", to_json(bell_state(BellKind::PhiPlus)).dump());
  CHECK(std::abs(invoke_json({"ef", "--input", pure, "--restarts", "2"}).at("outputs").at("value").get<double>() -
                 1.0) < 1e-9);
  std::remove(pure.c_str());

  const auto bad = write_temp("cli_bad.json", "{\"dims\": [2, 2], ");
  CHECK(invoke({"ef", "--input", bad}).code == cli::kInputError);
  std::remove(bad.c_str());
  CHECK(invoke({"ef", "--input", "/nonexistent.json"}).code == cli::kInputError);

  const auto notstate = write_temp("cli_notstate.json", R"({"dims": [2, 1], "re": [[1, 0], [0, 1]]})");
  CHECK(invoke({"ef", "--input", notstate}).code == cli::kInvariantViolation);
  std::remove(notstate.c_str());
}

TEST_CASE("additivity command") {
  const Json doc = invoke_json({"additivity", "--p", "0", "--q", "0", "--restarts", "2"});
  CHECK(std::abs(doc.at("outputs").at("gap").get<double>()) <= 1e-6);

  const Json mixed = invoke_json({"additivity", "--p", "0.1", "--q", "0.4", "--restarts", "6"});
  const double gap = mixed.at("outputs").at("gap").get<double>();
  CHECK(gap >= -1e-6);
  CHECK(gap <= 1e-2);
}

TEST_CASE("identical invocations are byte-identical") {
  const std::vector<std::vector<std::string>> cmds = {
      {"bell-mix", "--grid", "11"},
      {"example", "--id", "3", "--seed", "9"},
      {"eb-check", "--example", "4"},
      {"additivity", "--p", "0.25", "--q", "0.1", "--restarts", "3", "--seed", "5"},
  };
  for (const auto& c : cmds) CHECK(invoke(c).out == invoke(c).out);
  auto csv = cmds[1];
  csv.insert(csv.end(), {"--format", "csv"});
  CHECK(invoke(csv).out == invoke(csv).out);
}

TEST_CASE("--out writes the document to a file") {
  const std::string path = "cli_out.json";
  const auto r = invoke({"bell-mix", "--p", "0.5", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == invoke({"bell-mix", "--p", "0.5"}).out);
  std::remove(path.c_str());
}
