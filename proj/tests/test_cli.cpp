#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "maxmin/generators.hpp"
#include "maxmin/io.hpp"

using nlohmann::json;

namespace {

std::string g_cli;
std::string g_dir;

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string path_of(const std::string& name) { return g_dir + "/" + name; }

}  // namespace

TEST_CASE("generate, solve, decide, certify through the binary") {
    REQUIRE(!g_cli.empty());

    RunResult gen = run_cli("gen gap --out " + path_of("gap.json"));
    REQUIRE(gen.code == 0);

    SUBCASE("exact optimum and gap reproduction") {
        RunResult exact = run_cli("exact " + path_of("gap.json") + " --json");
        REQUIRE(exact.code == 0);
        json j = json::parse(exact.out);
        CHECK(j.at("opt").get<std::string>() == "3");

        RunResult lp = run_cli("lp " + path_of("gap.json") + " --scan --gap --json");
        REQUIRE(lp.code == 0);
        json l = json::parse(lp.out);
        CHECK(l.at("lp_opt").get<std::string>() == "4");
        CHECK(l.at("integrality_gap").get<std::string>() == "4/3");
    }

    SUBCASE("threshold verdicts") {
        RunResult feasible = run_cli("lp " + path_of("gap.json") + " --threshold 4");
        CHECK(feasible.code == 0);
        CHECK(feasible.out.find("FEASIBLE") == 0);
        RunResult infeasible = run_cli("lp " + path_of("gap.json") + " --threshold 5");
        CHECK(infeasible.code == 0);
        CHECK(infeasible.out.find("INFEASIBLE") == 0);
        RunResult trivial = run_cli("lp " + path_of("gap.json") + " --threshold 0");
        CHECK(trivial.out.find("FEASIBLE") == 0);
    }

    SUBCASE("certificates verify and print") {
        RunResult cert = run_cli("certify " + path_of("gap.json") + " --theorem 3 --json");
        REQUIRE(cert.code == 0);
        json c = json::parse(cert.out);
        CHECK(c.at("verified").get<bool>());
        CHECK(c.at("threshold").get<std::string>() == "9");
        CHECK(c.at("opt").get<std::string>() == "3");
    }

    SUBCASE("submodularity check") {
        RunResult check = run_cli("check " + path_of("gap.json") + " --json");
        REQUIRE(check.code == 0);
        json c = json::parse(check.out);
        CHECK(c.at("submodular").get<bool>());
        CHECK(c.at("monotone").get<bool>());
    }

    SUBCASE("identical invocations produce identical bytes") {
        RunResult a = run_cli("lp " + path_of("gap.json") + " --scan --json");
        RunResult b = run_cli("lp " + path_of("gap.json") + " --scan --json");
        CHECK(a.out == b.out);
    }
}

TEST_CASE("solve command covers both search and single-run modes") {
    {
        maxmin::Instance inst(maxmin::default_labels(5), 2,
                              maxmin::SetFunction::additive({maxmin::Value(3), maxmin::Value(3),
                                                             maxmin::Value(2), maxmin::Value(2),
                                                             maxmin::Value(2)}));
        maxmin::write_instance_file(inst, path_of("fives.json"));
    }
    RunResult search = run_cli("solve " + path_of("fives.json") + " --alpha 2/5 --json");
    REQUIRE(search.code == 0);
    json s = json::parse(search.out);
    CHECK(s.at("achieved_min").get<std::string>() == "5");
    CHECK(s.at("guessed_opt").get<std::string>() == "12");

    RunResult fixed = run_cli("solve " + path_of("fives.json") + " --threshold 12/5 --trace --json");
    REQUIRE(fixed.code == 0);
    json f = json::parse(fixed.out);
    CHECK(f.at("achieved_min").get<std::string>() == "3");
    CHECK(f.at("trace").at("seeding").size() == 2);

    RunResult bad_alpha = run_cli("solve " + path_of("fives.json") + " --alpha 0");
    CHECK(bad_alpha.code == 2);
    RunResult both = run_cli("solve " + path_of("fives.json") + " --alpha 1/2 --threshold 1");
    CHECK(both.code == 2);
}

TEST_CASE("exit codes distinguish failure classes") {
    RunResult parse_fail = run_cli("exact " + path_of("missing.json"));
    CHECK(parse_fail.code == 2);

    {
        maxmin::Instance base = maxmin::gen_gap_instance();
        maxmin::Instance constrained(base.labels(), 3, base.valuation(),
                                     {maxmin::Matroid::uniform(6, 2)});
        maxmin::write_instance_file(constrained, path_of("matroid.json"));
    }
    RunResult unsupported = run_cli("solve " + path_of("matroid.json") + " --alpha 2/5");
    CHECK(unsupported.code == 3);
    RunResult wrong_family = run_cli("certify " + path_of("matroid.json") + " --theorem 3");
    CHECK(wrong_family.code == 2);
    RunResult matroid_cert = run_cli("certify " + path_of("matroid.json") + " --theorem 8 --json");
    CHECK(matroid_cert.code == 0);
    CHECK(json::parse(matroid_cert.out).at("verified").get<bool>());

    RunResult budget = run_cli("exact " + path_of("gap.json") + " --budget 3");
    CHECK(budget.code == 4);
}

TEST_CASE("the budget environment variable is honored and the flag wins") {
    run_cli("gen gap --out " + path_of("gap_env.json"));
    std::string old_cli = g_cli;
    g_cli = "MAXMIN_BUDGET=3 " + old_cli;
    RunResult env_budget = run_cli("exact " + path_of("gap_env.json"));
    CHECK(env_budget.code == 4);
    RunResult flag_wins = run_cli("exact " + path_of("gap_env.json") + " --budget 100000 --json");
    CHECK(flag_wins.code == 0);
    CHECK(json::parse(flag_wins.out).at("opt") == "3");
    g_cli = old_cli;
}

TEST_CASE("the steered family replays through files") {
    RunResult gen = run_cli("gen sylvester --levels 2 --out " + path_of("syl.json") +
                            " --policy-out " + path_of("syl_policy.json") + " --refs-out " +
                            path_of("syl_refs.json"));
    REQUIRE(gen.code == 0);
    std::ifstream refs_in(path_of("syl_refs.json"));
    json refs = json::parse(refs_in);
    std::string threshold = refs.at("threshold").get<std::string>();
    RunResult run = run_cli("solve " + path_of("syl.json") + " --threshold " + threshold +
                            " --tiebreak " + path_of("syl_policy.json") + " --json");
    REQUIRE(run.code == 0);
    json r = json::parse(run.out);
    CHECK(r.at("achieved_min").get<std::string>() == refs.at("greedy_min").get<std::string>());
    CHECK(r.at("allocation").at("unallocated").empty());
}

int main(int argc, char** argv) {
    doctest::Context context;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (!arg.empty() && arg[0] != '-') g_cli = arg;
    }
    context.applyCommandLine(argc, argv);
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-maxmin-binary>\n");
        return 1;
    }
    char tmpl[] = "/tmp/maxmin_cli_XXXXXX";
    char* dir = mkdtemp(tmpl);
    if (!dir) {
        std::fprintf(stderr, "cannot create a scratch directory\n");
        return 1;
    }
    g_dir = dir;
    int res = context.run();
    std::string cleanup = "rm -rf " + g_dir;
    if (std::system(cleanup.c_str()) != 0) std::fprintf(stderr, "scratch cleanup failed\n");
    return res;
}
