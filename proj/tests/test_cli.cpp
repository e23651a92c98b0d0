#include <doctest.h>

#include <cstdio>
#include <sys/wait.h>

#include <array>
#include <string>

#include "test_util.hpp"

using testutil::fixture;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the command line tool with stderr folded into stdout.
Run run(const std::string& args) {
  const std::string cmd = std::string(LIFTKIT_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
  const int w = pclose(p);
  r.status = WIFEXITED(w) ? WEXITSTATUS(w) : -1;
  return r;
}

std::string fx(const std::string& name) { return fixture(name); }

}  // namespace

TEST_CASE("slack reproduces the seven-vertex matrix") {
  const Run r = run("slack " + fx("p7.vpoly") + " --order-by " + fx("p7.hpoly"));
  CHECK(r.status == 0);
  CHECK(r.out ==
        "SLACK 7 7\n"
        "2 2 2 0 0 0 1\n"
        "0 0 0 2 2 2 1\n"
        "0 0 2 0 0 2 4\n"
        "0 2 0 0 2 0 0\n"
        "4 0 2 4 0 2 0\n"
        "3 2 2 1 0 0 0\n"
        "1 0 0 3 2 2 0\n");
}

TEST_CASE("factorization round trip through files") {
  const std::string order = " --order-by " + fx("p7.hpoly");
  CHECK(run("verify-fact " + fx("p7.vpoly") + " " + fx("p7.nnf") + order).out == "ok\n");
  const Run lift = run("lift-from-fact " + fx("p7.vpoly") + " " + fx("p7.nnf") + order);
  CHECK(lift.status == 0);
  CHECK(lift.out == testutil::read_text(fx("p7.lift")));
  const Run v = run("verify-lift " + fx("p7.vpoly") + " " + fx("p7.lift"));
  CHECK(v.status == 0);
  CHECK(v.out.rfind("exact", 0) == 0);
  const Run back = run("fact-from-lift " + fx("p7.vpoly") + " " + fx("p7.lift") + order);
  CHECK(back.status == 0);
  CHECK(back.out.find("NNF 6 7 7") != std::string::npos);
}

TEST_CASE("a wrong factorization exits 1 with a location") {
  const Run r = run("verify-fact " + fx("square.vpoly") + " " + fx("p7.nnf"));
  CHECK(r.status != 0);
  const Run s = run("verify-fact " + fx("p7.vpoly") + " " + fx("p7.nnf"));
  CHECK(s.status == 1);
  CHECK(s.out.rfind("mismatch at row", 0) == 0);
}

TEST_CASE("input errors exit 2 with line and column") {
  const Run r = run("slack " + fx("p7.nnf"));
  CHECK(r.status == 2);
  const Run m = run("slack /nonexistent.vpoly");
  CHECK(m.status == 2);
  const Run b = run("honeycomb member " + fx("p7.vpoly"));
  CHECK(b.status == 2);
  CHECK(b.out.find("line 1, column 1") != std::string::npos);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("polar " + fx("simplex.vpoly")).status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("honeycomb subcommands") {
  const Run m = run("honeycomb member " + fx("n3_member.triple"));
  CHECK(m.status == 0);
  CHECK(m.out.rfind("member\ne ", 0) == 0);
  const Run n = run("honeycomb member " + fx("n3_nonmember.triple"));
  CHECK(n.status == 1);
  CHECK(n.out.find("farkas") != std::string::npos);
  const Run e = run("honeycomb eliminate3 --lambda \"1 0 -1\" --mu \"2 1 0\"");
  CHECK(e.status == 0);
  CHECK(e.out.find("e1 >= 2 + nu1 + nu2") != std::string::npos);
  const Run b = run("honeycomb build --n 3");
  CHECK(b.out.rfind("honeycomb n=3 edges=18 internal=9 free=6\n", 0) == 0);
}

TEST_CASE("bounds report for the cube") {
  const Run r = run("bounds " + fx("cube.vpoly") + " --machine");
  CHECK(r.status == 0);
  CHECK(r.out.find("bound polyhedral 5 ") != std::string::npos);
  CHECK(r.out.find("bound spectrahedral 4 ") != std::string::npos);
  const Run t = run("bounds " + fx("cyclic8.vpoly") + " --neighborly 2");
  CHECK(t.out.find("2-neighborly on 8 vertices") != std::string::npos);
  CHECK(run("bounds " + fx("cube.vpoly") + " --log-base 3").status == 2);
}

TEST_CASE("generated lifts match the fixtures") {
  CHECK(run("lift obdd " + fx("xor3.obdd")).out == testutil::read_text(fx("xor3.lift")));
  CHECK(run("lift chain " + fx("vee3.poset")).out == testutil::read_text(fx("vee3.lift")));
  CHECK(run("lift klevel " + fx("square.vpoly")).out == testutil::read_text(fx("square.sdpa")));
  CHECK(run("lift klevel --exact " + fx("cube.vpoly")).out == testutil::read_text(fx("cube.sdpa.exact")));
  CHECK(run("lift theta " + fx("c4.graph")).out == testutil::read_text(fx("c4.sdpa")));
  CHECK(run("lift epiquad " + fx("disk.quad")).out == testutil::read_text(fx("disk.sdpa")));
  CHECK(run("lift klevel -k 2 " + fx("hexagon_affine.vpoly")).status == 2);
}

TEST_CASE("verify-lift tiers") {
  CHECK(run("verify-lift " + fx("square.vpoly") + " " + fx("square.sdpa.exact")).out.rfind("certified", 0) == 0);
  CHECK(run("verify-lift " + fx("cube.vpoly") + " " + fx("cube.sdpa.exact")).status == 0);
  const Run wrong = run("verify-lift " + fx("square.vpoly") + " " + fx("p7.lift"));
  CHECK(wrong.status == 2);
  const Run partial = run("verify-lift " + fx("hexagon_affine.vpoly") + " " + fx("square.sdpa.exact"));
  CHECK(partial.status == 0);
  CHECK(partial.out.rfind("partial", 0) == 0);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::string args = "factorize " + fx("square.vpoly") + " --rank 4 --seed 7";
  const Run a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}
