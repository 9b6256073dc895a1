#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "kmlab/cli.hpp"
#include "kmlab/report.hpp"

using namespace kmlab;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string input_error_location(const json& doc, Mode mode = Mode::Exact) {
  try {
    parse_input(doc, mode);
  } catch (const input_error& e) {
    return e.location();
  }
  return "<none>";
}

json raw_contact() {
  // contact family k = 1, lambda = 2, c = 0 written out by hand
  return json::parse(R"({
    "frame_kind": "orthonormal",
    "metric": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "brackets": [[1, 2, [2, 0, 0]], [0, 1, [0, 0, 2]], [0, 2, [0, 2, 0]]],
    "phi": [[0, 0, 0], [0, 0, -1], [0, 1, 0]],
    "xi": [1, 0, 0],
    "eta": [1, 0, 0],
    "epsilon": -1
  })");
}

}  // namespace

TEST_CASE("parse family documents") {
  const auto in = parse_input(json::parse(R"({"family": "contact", "params": {"k": 1, "lambda": "1/2", "c": "-3"}})"),
                              Mode::Exact);
  REQUIRE(in.family);
  CHECK(in.family->at("lambda") == Scalar(1, 2));
  CHECK(echo_input(in) == json::parse(R"({"family": "contact", "params": {"k": "1", "lambda": "1/2", "c": "-3"}})"));
  CHECK(input_error_location(json::parse(R"({"family": "contact", "extra": 1})")) == "/extra");
  CHECK(input_error_location(json::parse(R"({"family": 3})")) == "/family");
  CHECK_THROWS_AS(parse_input(json::parse(R"({"family": "sphere", "params": {}})"), Mode::Exact), family_error);
  CHECK(input_error_location(json::parse(R"({"family": "contact", "params": {"k": 0.5}})")).rfind("/params", 0) == 0);
  CHECK_NOTHROW(parse_input(json::parse(R"({"family": "contact", "params": {"k": 0.5, "lambda": 0, "c": 0}})"),
                            Mode::Float));
}

TEST_CASE("parse raw documents") {
  const auto in = parse_input(raw_contact(), Mode::Exact);
  REQUIRE(in.raw);
  const auto st = materialize(in);
  const auto fam = build(FamilySpec::make("contact", {{"k", 1}, {"lambda", 2}, {"c", 0}}));
  CHECK(st.host.structure().slice(1) == fam.host.structure().slice(1));
  CHECK(st.phi == fam.phi);

  json bad = raw_contact();
  bad["metric"][1][2] = "x";
  CHECK(input_error_location(bad) == "/metric/1/2");
  bad = raw_contact();
  bad["metric"][1][2] = "1/0";
  CHECK(input_error_location(bad) == "/metric/1/2");
  bad = raw_contact();
  bad["brackets"].push_back(json::parse("[2, 1, [0, 0, 0]]"));
  CHECK(input_error_location(bad).rfind("/brackets/3", 0) == 0);
  bad = raw_contact();
  bad["brackets"][0][0] = 7;
  CHECK(input_error_location(bad).rfind("/brackets/0", 0) == 0);
  bad = raw_contact();
  bad["epsilon"] = "minus";
  CHECK(input_error_location(bad) == "/epsilon");
  bad = raw_contact();
  bad["frame_kind"] = "Oblique";
  CHECK(input_error_location(bad) == "/frame_kind");
  bad = raw_contact();
  bad.erase("phi");
  CHECK(input_error_location(bad) == "/phi");

  json jac = raw_contact();
  jac["brackets"] = json::parse("[[0, 1, [0, 1, 0]], [1, 2, [1, 0, 0]]]");
  CHECK_THROWS_AS(materialize(parse_input(jac, Mode::Exact)), validation_error);
  CHECK_THROWS_AS(parse_input_text("{not json", Mode::Exact), input_error);
}

TEST_CASE("parse_params") {
  const auto p = parse_params("k=1, lambda=-1/2,c=0", Mode::Exact);
  CHECK(p.at("lambda") == Scalar(-1, 2));
  CHECK(p.size() == 3);
  CHECK(parse_params("", Mode::Exact).empty());
  CHECK_THROWS_AS(parse_params("k=1,k=2", Mode::Exact), input_error);
  CHECK_THROWS_AS(parse_params("k", Mode::Exact), input_error);
  CHECK_THROWS_AS(parse_params("k=abc", Mode::Exact), input_error);
  CHECK_THROWS_AS(parse_params("k=0.5", Mode::Exact), input_error);
}

TEST_CASE("raw and family inputs produce the same analysis") {
  ReportOptions opt;
  const auto a = make_report(parse_input(raw_contact(), Mode::Exact), opt);
  InputDocument fam;
  fam.family = FamilySpec::make("contact", {{"k", 1}, {"lambda", 2}, {"c", 0}});
  const auto b = make_report(fam, opt);
  CHECK(a.kappa_mu == b.kappa_mu);
  CHECK(a.invariants == b.invariants);
  CHECK(a.group == b.group);
  CHECK(a.curvature == b.curvature);
  CHECK(a.identities == b.identities);
}

TEST_CASE("report round trip is byte identical") {
  const std::vector<std::string> names = {"contact", "para", "nilpotent1", "pcm-canonical"};
  const std::vector<std::map<std::string, Scalar>> params = {
      {{"k", 1}, {"lambda", 2}, {"c", 0}},
      {{"u", 1}, {"a", 0}, {"b", 1}, {"c", 1}},
      {{"k", 1}, {"lambda", Scalar(1, 2)}},
      {{"kappa", -3}, {"mu", 4}, {"epsilon", 1}, {"b", 0}},
  };
  for (std::size_t i = 0; i < names.size(); ++i)
    for (Mode mode : {Mode::Exact, Mode::Float}) {
      InputDocument in;
      in.family = FamilySpec::make(names[i], params[i]);
      ReportOptions opt;
      opt.mode = mode;
      const Report r = make_report(in, opt);
      const std::string text = dump_canonical(report_to_json(r));
      const Report back = report_from_json(json::parse(text));
      CHECK(back == r);
      CHECK(dump_canonical(report_to_json(back)) == text);
    }
  CHECK_THROWS_AS(report_from_json(json::parse(R"({"schema": "v2"})")), input_error);
}

TEST_CASE("D-homothety before analysis keeps the invariant") {
  for (const auto& [name, p] : std::vector<std::pair<std::string, std::map<std::string, Scalar>>>{
           {"contact", {{"k", 1}, {"lambda", 2}, {"c", 0}}},
           {"contact", {{"k", 0}, {"lambda", 3}, {"c", 1}}},
           {"para", {{"u", 1}, {"a", 2}, {"b", 1}, {"c", 1}}},
           {"para", {{"u", 0}, {"a", 1}, {"b", 2}, {"c", 1}}}}) {
    InputDocument in;
    in.family = FamilySpec::make(name, p);
    ReportOptions opt;
    const auto base = make_report(in, opt);
    opt.dhomothety = Scalar(4);
    const auto moved = make_report(in, opt);
    CHECK(moved.dhomothety == std::optional<std::string>("4"));
    CHECK(moved.invariants == base.invariants);
    CHECK(moved.group.name == base.group.name);
  }
}

TEST_CASE("text report") {
  InputDocument in;
  in.family = FamilySpec::make("contact", {{"k", 1}, {"lambda", 2}, {"c", 0}});
  const std::string text = report_to_text(make_report(in, ReportOptions{}));
  CHECK(text.find("SL(2,R) or O(1,2) | simple | I<1, I≠−1") != std::string::npos);
  CHECK(text.find("-3") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run({"family", "contact", "--params", "k=1,lambda=2,c=0"}).code == kExitOk);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"family", "contact", "--params", "k=0,lambda=0,c=0", "--format", "text"}).code == kExitOk);

  auto r = run({"family", "sphere", "--params", "k=1"});
  CHECK(r.code == kExitParse);
  CHECK(r.err.rfind("kmlab: parse error:", 0) == 0);
  CHECK(run({"family", "contact", "--params", "k=1,lambda=x,c=0"}).code == kExitParse);
  CHECK(run({"family", "contact", "--params", "k=1,lambda=2"}).code == kExitParse);
  CHECK(run({"--mode", "symbolic", "family", "contact"}).code == kExitParse);
  CHECK(run({"--identities", "BKP_nope", "family", "contact", "--params", "k=1,lambda=2,c=0"}).code == kExitParse);
  CHECK(run({"analyze", "/nonexistent/input.json"}).code == kExitParse);
  CHECK(run({"family", "contact", "--sweep", "k=1", "--dhomothety", "4"}).code == kExitParse);

  r = run({"family", "para-general", "--params", "p1=0,p2=0,a=1,b=0,c=0,d=0,u=1"});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.rfind("kmlab: validation error:", 0) == 0);
  CHECK(r.err.find("jacobi") != std::string::npos);
  CHECK(run({"--dhomothety", "-1", "family", "contact", "--params", "k=1,lambda=2,c=0"}).code == kExitInvalid);
  CHECK(run({"--dhomothety", "2", "family", "para", "--params", "u=1,a=0,b=1,c=1"}).code == kExitInvalid);
  CHECK(run({"--mode", "float", "--dhomothety", "2", "family", "para", "--params", "u=1,a=0,b=1,c=1"}).code ==
        kExitOk);
}

TEST_CASE("cli output matches the golden fixtures") {
  const std::string dir = KMLAB_GOLDEN_DIR;
  auto r = run({"family", "contact", "--params", "k=1,lambda=2,c=0", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out == read_file(dir + "/contact_k1_l2_c0.json"));
  r = run({"family", "contact", "--params", "k=0,lambda=0,c=0"});
  CHECK(r.out == read_file(dir + "/contact_abelian.json"));
  r = run({"family", "para", "--params", "u=1,a=0,b=1,c=1", "--identities", "all"});
  CHECK(r.out == read_file(dir + "/para_u1_a0_b1_c1.json"));

  const json j = json::parse(read_file(dir + "/contact_k1_l2_c0.json"));
  CHECK(j["kappa_mu"]["kappa"] == "-3");
  CHECK(j["kappa_mu"]["mu"] == "2");
  CHECK(j["group"]["name"] == "SL(2,R)/O(1,2)");
  const json a = json::parse(read_file(dir + "/contact_abelian.json"));
  CHECK(a["class"]["tag"] == "AlmostCosymplectic");
  CHECK(a["group"]["name"] == "not classified (cosymplectic)");
  const json p = json::parse(read_file(dir + "/para_u1_a0_b1_c1.json"));
  CHECK(p["invariants"][0]["value"] == "0");
  for (const auto& id : p["identities"])
    if (id["status"] != "skipped") CHECK(id["residual"] == "0");
}

TEST_CASE("sweeps hit every populated table row") {
  std::set<std::string> hit;
  auto collect = [&](const std::string& family, const std::string& grid) {
    for (const auto& row : run_sweep(family, grid, {}, Mode::Exact)) {
      if (!row.valid || row.group.table == 0) continue;
      hit.insert(std::to_string(row.group.table) + ": " + row.group.range);
    }
  };
  collect("contact", "k=1;lambda=*;c=*");
  collect("contact", "k=0;lambda=*;c=*");
  collect("nilpotent1", "k=0|1;lambda=*");
  collect("nilpotent2", "k=0|1;lambda=*");
  collect("para", "u=1;a=*;b=-2..2;c=-2..2");
  collect("para", "u=0;a=*;b=-2..2;c=-2..2");
  const std::vector<std::string> rows = {
      "1: I=1",     "1: I=−1",        "1: I>1",       "1: I<1, I≠−1", "3: |C|=1",   "3: |C|>1",
      "3: |C|<1",   "2: E=1",         "2: E=0 and κ>−1", "2: E=0, κ<−1", "2: 0<E<1", "2: E<0 or E>1",
      "4: F=1",     "4: F=0, κ>0",    "4: F=0, κ<0",  "4: 0<F<1",     "4: F>1 or F<0"};
  for (const auto& r : rows) {
    CAPTURE(r);
    CHECK(hit.count(r) == 1);
  }
}

TEST_CASE("sweep grid parsing") {
  const auto rows = run_sweep("contact", "k=1;lambda=0..2;c=0|1/2", {}, Mode::Exact);
  CHECK(rows.size() == 6);
  CHECK(rows.front().params.at("lambda") == "0");
  const auto fixed = run_sweep("contact", "lambda=1|2", {{"k", 1}, {"c", 0}}, Mode::Exact);
  CHECK(fixed.size() == 2);
  CHECK_THROWS_AS(run_sweep("contact", "z=1", {}, Mode::Exact), input_error);
  CHECK_THROWS_AS(run_sweep("contact", "k", {}, Mode::Exact), input_error);
  const auto invalid = run_sweep("para-general", "p1=0;p2=0;a=1;b=0;c=0;d=0;u=0|1", {}, Mode::Exact);
  REQUIRE(invalid.size() == 2);
  CHECK(invalid[0].valid);
  CHECK_FALSE(invalid[1].valid);
  const json j = sweep_to_json("para-general", invalid);
  CHECK(j["invalid_points"] == 1);
}
