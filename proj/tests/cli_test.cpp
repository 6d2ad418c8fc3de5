#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "fieldtopos/fieldsite.hpp"
#include "fieldtopos/io.hpp"

using namespace fieldtopos;
using json = nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

Result run(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, DocumentedExamples) {
  auto a = run("pres char --file " + fixture("pres_six.json") + " --bound 50");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out.rfind("{2,3} (finite, certified)", 0), 0u) << a.out;

  auto b = run("site demorgan --cat " + fixture("cospan.json") + " --top trivial");
  EXPECT_EQ(b.code, 1);
  EXPECT_EQ(b.out, "false; witness object p, sieve {q->p}\n");

  auto c = run("fieldsite gset 2 2 4");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "count=2 orbits=[2] transitive\n");
}

TEST(Cli, VerdictExitCodes) {
  EXPECT_EQ(run("irr test x^2+1 2").code, 1);
  EXPECT_EQ(run("irr test x^2+1 3").code, 0);
  EXPECT_EQ(run("site ore --cat " + fixture("cospan.json")).code, 0);
  EXPECT_EQ(run("site ore --cat " + fixture("parallel.json")).code, 1);
  EXPECT_EQ(run("site boolean --cat " + fixture("cospan.json") + " --top " + fixture("cospan_j1.json")).code, 0);
  EXPECT_EQ(run("site sheaf --cat " + fixture("cospan.json") + " --top " + fixture("cospan_j1.json") +
                " --presheaf " + fixture("cospan_const2.json"))
                .code,
            1);
  EXPECT_EQ(run("pres tsieve --file " + fixture("pres_six.json") + " --set 2,3").code, 0);
  EXPECT_EQ(run("pres tsieve --file " + fixture("pres_six.json") + " --set 2").code, 1);
  EXPECT_EQ(run("pres tsieve --file " + fixture("pres_root2.json") + " --set 2,3").code, 1);
  EXPECT_EQ(run("fieldsite rigid 2 2 2").code, 0);
  EXPECT_EQ(run("fieldsite orefields 2 4").code, 0);
  EXPECT_EQ(run("fieldsite atomicbool 3 3").code, 0);
}

TEST(Cli, DefaultTruncation) {
  auto r = run("fieldsite build");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("objects=28 morphisms=652", 0), 0u) << r.out;
  EXPECT_EQ(run("fieldsite rigid").code, 0);
  EXPECT_EQ(run("fieldsite charcover 'GF(2)'").code, 2);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  EXPECT_EQ(run("site").code, 2);
  EXPECT_EQ(run("site demorgan").code, 2);
  EXPECT_EQ(run("site demorgan --cat /does/not/exist.json").code, 2);
  EXPECT_EQ(run("site demorgan --cat " + fixture("cospan.json") + " --bogus").code, 2);
  EXPECT_EQ(run("field make 4 2").code, 2);
  EXPECT_EQ(run("ring split 'GF(2) x GF(4)' '(1, 1)'").code, 2);
  EXPECT_EQ(run("ring decompose 2 'x^2'").code, 2);
  EXPECT_EQ(run("fieldsite charcover 3 1 2 'GF(4)'").code, 2);
  EXPECT_EQ(run("fieldsite build 7 6 3").code, 2);
  EXPECT_EQ(run("fieldsite gset 2 0 4").code, 2);
  EXPECT_EQ(run("pres char --file " + fixture("cospan.json")).code, 2);
  EXPECT_EQ(run("site closure --cat " + fixture("cospan.json") + " --object nowhere").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, CategoryRoundTrip) {
  for (const char* name : {"cospan", "square", "z2", "retract"}) {
    auto r = run("--json site validate --cat " + fixture(std::string(name) + ".json"));
    ASSERT_EQ(r.code, 0);
    const FinCategory C = io::category_from_json(io::read_json_file(fixture(std::string(name) + ".json")));
    EXPECT_EQ(io::category_from_json(json::parse(r.out)), C) << name;
  }
}

TEST(Cli, TopologyRoundTrip) {
  auto r = run("--json site saturate --cat " + fixture("cospan.json") + " --top " + fixture("cospan_j1.json"));
  ASSERT_EQ(r.code, 0);
  auto site = make_site(io::category_from_json(io::read_json_file(fixture("cospan.json"))));
  EXPECT_EQ(io::topology_from_json(site, json::parse(r.out)),
            io::topology_from_json(site, io::read_json_file(fixture("cospan_j1.json"))));

  auto d = run("--json site demorganize --cat " + fixture("cospan.json"));
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(io::topology_from_json(site, json::parse(d.out)),
            io::topology_from_json(site, io::read_json_file(fixture("cospan_j1.json"))));
}

TEST(Cli, PresentationRoundTrip) {
  for (const char* name : {"pres_six.json", "pres_root2.json", "pres_gauss.json"}) {
    auto r = run("--json pres char --file " + fixture(name));
    ASSERT_EQ(r.code, 0) << name;
    EXPECT_EQ(io::presentation_from_json(json::parse(r.out).at("presentation")),
              io::presentation_from_json(io::read_json_file(fixture(name))));
  }
}

TEST(Cli, FieldSiteDumpRoundTrip) {
  auto r = run("fieldsite dump 2 2 2");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  const TruncatedSite T = build_truncated_site(2, 2, 2);
  const FinCategory C = io::category_from_json(j.at("category"));
  EXPECT_EQ(C, T.category());
  auto site = make_site(C);
  EXPECT_EQ(io::topology_from_json(site, j.at("topology")).cover_count(), T.coverage.cover_count());
}
