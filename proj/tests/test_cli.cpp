#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "psk/cli.hpp"
#include "psk/serialize.hpp"

using namespace psk;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("outerplanar pipeline") {
  const auto gen = run({"generate", "--family", "max-outerplanar", "--n", "50", "--seed", "1"});
  REQUIRE(gen.code == 0);
  const auto emb = run({"embed", "--method", "outerplanar"}, gen.out);
  REQUIRE(emb.code == 0);
  const auto ver = run({"verify"}, emb.out);
  CHECK(ver.code == 0);
  CHECK(parse_json(ver.out)["ok"] == true);
}

TEST_CASE("oracle on the gadget") {
  const auto gen = run({"generate", "--family", "kbar3", "--k", "2"});
  const auto stw = run({"oracle", "stw"}, gen.out);
  CHECK(stw.code == 0);
  CHECK(stw.out == "3\n");
  CHECK(run({"oracle", "tw"}, gen.out).out == "2\n");
  CHECK(run({"oracle", "omega"}, gen.out).out == "3\n");
  const auto w = run({"oracle", "tw", "--witness"}, gen.out);
  CHECK(parse_json(w.out)["witness"]["nodes"] == 5);
}

TEST_CASE("simple-stw rejects a trace that reuses a clique") {
  const std::string trace = R"({"k":2,"base":[0,1,2],"steps":[{"v":3,"clique":[0,1]},{"v":4,"clique":[0,1]}]})";
  const auto r = run({"embed", "--method", "simple-stw"}, trace);
  CHECK(r.code == 1);
  CHECK(r.err.find("InvalidTrace") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"generate", "--family", "kbar3", "--bogus"}).code == 2);
  CHECK(run({"embed", "--method", "outerplanar"}, "{not json").code == 2);
  CHECK(run({"generate", "--family", "nope"}).code == 2);
  const auto big = run({"generate", "--family", "complete", "--n", "7"});
  CHECK(run({"oracle", "search"}, big.out).code == 3);
  CHECK(run({"oracle", "search", "--max-host-size", "5"}, R"({"n":2,"edges":[]})").code == 3);
  CHECK(run({"generate", "--family", "attachment-closure", "--k", "2", "--copies", "50", "--rounds", "3", "--cap",
             "1000"})
            .code == 3);
  const auto k4 = run({"generate", "--family", "complete", "--n", "4"});
  CHECK(run({"embed", "--method", "outerplanar"}, k4.out).code == 1);
  CHECK(run({"help"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify fails closed on a tampered embedding") {
  const auto gen = run({"generate", "--family", "simple-ktree", "--k", "3", "--n", "12", "--seed", "5"});
  const auto emb = run({"embed", "--method", "simple-stw"}, gen.out);
  REQUIRE(emb.code == 0);
  Json j = parse_json(emb.out);
  j["map"][0][1] = j["map"][1][1];
  const auto ver = run({"verify"}, j.dump() + "\n");
  CHECK(ver.code == 1);
  CHECK(parse_json(ver.out)["ok"] == false);
}

TEST_CASE("unbounded method, products, diagnose and normalize") {
  const auto gen = run({"generate", "--family", "ktree", "--k", "3", "--n", "20", "--seed", "2"});
  CHECK(run({"embed", "--method", "unbounded", "--p", "2", "--q", "2"}, gen.out).code == 0);
  CHECK(run({"embed", "--method", "unbounded", "--p", "1", "--q", "1"}, gen.out).code == 2);

  const std::string arc = R"({"n":2,"arcs":[[0,1]],"oriented":true})";
  const auto dp = run({"product", "--directed"}, arc + "\n" + arc + "\n");
  CHECK(dp.code == 0);
  CHECK(parse_json(dp.out)["arcs"].size() == 5);
  const std::string p3 = R"({"n":3,"edges":[[0,1],[1,2]]})";
  const auto sp = run({"product", "--strong"}, p3 + "\n" + p3 + "\n");
  CHECK(parse_json(sp.out)["edges"].size() == 20);
  CHECK(run({"product", "--strong", "--directed"}, "").code == 2);

  const auto strace = run({"generate", "--family", "simple-ktree", "--k", "3", "--n", "15", "--seed", "2"});
  const auto emb = run({"embed", "--method", "simple-stw"}, strace.out);
  const auto diag = run({"diagnose", "--k", "3"}, emb.out);
  CHECK(diag.code == 0);
  CHECK(lines(diag.out) > 0);
  const auto one = run({"diagnose", "--clique", "0,1,2"}, emb.out);
  CHECK(parse_json(one.out)["clique"].size() == 3);

  const auto lb = run({"generate", "--family", "stw-lowerbound", "--k", "3", "--with-decomposition"});
  REQUIRE(lines(lb.out) == 2);
  const auto norm = run({"normalize", "--k", "3", "--trace"}, lb.out);
  CHECK(norm.code == 0);
  CHECK(lines(norm.out) == 2);
}

TEST_CASE("seeds, counts and worker counts") {
  const auto a = run({"generate", "--family", "simple-ktree", "--k", "2", "--n", "30", "--seed", "4", "--count", "6"});
  CHECK(lines(a.out) == 6);
  const auto b = run({"generate", "--family", "simple-ktree", "--k", "2", "--n", "30", "--seed", "4", "--count", "6",
                      "--jobs", "3"});
  CHECK(a.out == b.out);
  const auto e1 = run({"embed", "--method", "simple-stw"}, a.out);
  const auto e4 = run({"embed", "--method", "simple-stw", "--jobs", "4"}, a.out);
  CHECK(e1.code == 0);
  CHECK(e1.out == e4.out);

  setenv("PSK_SEED", "4", 1);
  const auto c = run({"generate", "--family", "simple-ktree", "--k", "2", "--n", "30", "--seed", "999", "--count", "6"});
  unsetenv("PSK_SEED");
  CHECK(c.out == a.out);
}

TEST_CASE("files and dot output") {
  const auto dir = std::filesystem::temp_directory_path() / "psk_cli_test";
  std::filesystem::create_directories(dir);
  const std::string in = (dir / "g.json").string(), out = (dir / "e.json").string(), dot = (dir / "e.dot").string();
  REQUIRE(run({"generate", "--family", "max-outerplanar", "--n", "12", "-o", in}).code == 0);
  const auto r = run({"embed", "--method", "outerplanar", "-i", in, "-o", out, "--dot", dot});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(dot);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str().find("digraph P") == 0);
  CHECK(run({"verify", "-i", out}).code == 0);
  std::filesystem::remove_all(dir);
}
