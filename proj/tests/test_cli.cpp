#include <doctest.h>

#include <json.hpp>
#include <quadring/euclid.hpp>
#include <quadring/field.hpp>
#include <quadring/format.hpp>
#include <quadring/quadint.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Drives the installed binary through a shell. QUADRING_CLI_PATH and
// QUADRING_GOLDEN_DIR come from the build system.

namespace {

using nlohmann::json;
using namespace quadring;

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string("\"") + QUADRING_CLI_PATH + "\" " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    CmdResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = out;
    return r;
}

json golden(const std::string& name) {
    std::ifstream in(std::string(QUADRING_GOLDEN_DIR) + "/" + name);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", name);
    return json::parse(in);
}

std::filesystem::path temp_file(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(p);
    return p;
}

// Value on the line "key = value".
std::string line_value(const std::string& out, const std::string& key) {
    std::istringstream ss(out);
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
    FAIL("no line for key ", key);
    return {};
}

}  // namespace

TEST_CASE("gcd prints the worked example exactly") {
    auto r = run_cli("gcd -m 14 \"137\" \"39-1*sqrt(14)\"");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "gcd = -19+4*sqrt(14)\n"
          "lambda = 12\n"
          "mu = -43-1*sqrt(14)\n"
          "chain = 1\n");
}

TEST_CASE("step prints the worked example exactly") {
    auto r = run_cli("step -m 14 \"137\" \"39-1*sqrt(14)\"");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "gamma = 12\n"
          "delta = 43+1*sqrt(14)\n"
          "rho = -19+4*sqrt(14)\n"
          "trace = Lemma2\n");
}

TEST_CASE("certify single field") {
    auto heegner = run_cli("certify -m -163");
    CHECK(heegner.code == 0);
    CHECK(heegner.out == "CertifiedPID (imaginary, all small primes inert)\n");

    auto split = run_cli("certify -m 14");
    CHECK(split.code == 0);
    CHECK(split.out == "CertifiedPID (witness table complete)\n");

    auto stuck = run_cli("certify -m 10");
    CHECK(stuck.code == 1);
    CHECK(stuck.out == "Inconclusive at p=2\n");
}

TEST_CASE("certify over a range") {
    auto r = run_cli("certify --range -11 -1");
    CHECK(r.code == 0);
    std::istringstream ss(r.out);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    // One line per squarefree m in [-11, -1], ascending.
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "m=-11: CertifiedPID (imaginary, all small primes inert)");
    CHECK(lines[1] == "m=-10: Inconclusive at p=2");
    CHECK(lines[2] == "m=-7: CertifiedPID (witness table complete)");
    CHECK(lines[3] == "m=-6: Inconclusive at p=2");
    CHECK(lines[7] == "m=-1: CertifiedPID (imaginary, all small primes inert)");
}

TEST_CASE("norm prints the plain integer") {
    CHECK(run_cli("norm -m 14 \"39-1*sqrt(14)\"").out == "1507\n");
    CHECK(run_cli("norm -m 5 \"(1+1*sqrt(5))/2\"").out == "-1\n");
}

TEST_CASE("contract violations exit 2") {
    CHECK(run_cli("norm -m 14 \"39-1*sqrt(15)\"").code == 2);
    CHECK(run_cli("norm -m 12 \"1\"").code == 2);
    CHECK(run_cli("gcd -m 14 \"137\" \"(1+1*sqrt(14))/2\"").code == 2);
    CHECK(run_cli("gcd -m 10 \"3\" \"2\"").code == 2);
    CHECK(run_cli("prime-elem -m 14 -p 6").code == 2);
    CHECK(run_cli("cf -m -5").code == 2);
    CHECK(run_cli("cf -m 12").code == 2);
    CHECK(run_cli("sqrtmod -n 3 -p 15").code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("norm -m 14").code == 2);
    CHECK(run_cli("gcd -m 14 \"137\"").code == 2);
    CHECK(run_cli("sqrtmod -n 5").code == 2);
    CHECK(run_cli("certify").code == 2);
    CHECK(run_cli("--bogus certify -m 2").code == 2);
}

TEST_CASE("clean negatives exit 1") {
    auto none = run_cli("sqrtmod -n 2 -p 3");
    CHECK(none.code == 1);
    CHECK(none.out == "none\n");
    CHECK(run_cli("prime-elem -m 14 -p 3").code == 1);
    CHECK(run_cli("table -m 10").code == 1);
}

TEST_CASE("sqrtmod prints the smallest root") {
    auto r = run_cli("sqrtmod -n 14 -p 137");
    CHECK(r.code == 0);
    CHECK(r.out == "39\n");
    CHECK(run_cli("sqrtmod -n 2 -p 7").out == "3\n");
}

TEST_CASE("prime-elem prints a generator") {
    CHECK(run_cli("prime-elem -m 14 -p 137").out == "-19+4*sqrt(14)\n");
    CHECK(run_cli("prime-elem -m 2 -p 7").out == "3-1*sqrt(2)\n");
}

TEST_CASE("cf prints the expansion and the unit") {
    auto r = run_cli("cf -m 14");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "sqrt(14) = [3; 1, 2, 1, 6]\n"
          "unit = 15+4*sqrt(14)\n"
          "norm = 1\n");
    auto r2 = run_cli("cf -m 2");
    CHECK(r2.out ==
          "sqrt(2) = [1; 2]\n"
          "unit = 1+1*sqrt(2)\n"
          "norm = -1\n");
}

TEST_CASE("table matches the golden file") {
    auto r = run_cli("table -m 14");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out) == golden("table_m14.json"));

    auto stuck = run_cli("table -m 10", true);
    CHECK(stuck.code == 1);
    CHECK(stuck.out.find("incomplete: no witness for p = 2") != std::string::npos);
}

TEST_CASE("table save and reuse") {
    auto path = temp_file("quadring_t14.json");
    auto saved = run_cli("table -m 14 --save \"" + path.string() + "\"");
    CHECK(saved.code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    CHECK(json::parse(in) == golden("table_m14.json"));

    auto cached = run_cli("--table \"" + path.string() + "\" gcd -m 14 \"137\" \"39-1*sqrt(14)\"");
    CHECK(cached.code == 0);
    CHECK(cached.out ==
          "gcd = -19+4*sqrt(14)\n"
          "lambda = 12\n"
          "mu = -43-1*sqrt(14)\n"
          "chain = 1\n");

    // Wrong field behind the cache path is a contract error.
    CHECK(run_cli("--table \"" + path.string() + "\" gcd -m 2 \"3\" \"1\"").code == 2);

    // Missing cache file: built once, then written for the next call.
    auto fresh = temp_file("quadring_t14_fresh.json");
    auto built = run_cli("--table \"" + fresh.string() + "\" step -m 14 \"137\" \"39-1*sqrt(14)\"");
    CHECK(built.code == 0);
    std::ifstream in2(fresh);
    REQUIRE(in2.good());
    CHECK(json::parse(in2) == golden("table_m14.json"));

    auto corrupt = temp_file("quadring_corrupt.json");
    std::ofstream(corrupt) << "{]";
    CHECK(run_cli("--table \"" + corrupt.string() + "\" gcd -m 14 \"137\" \"2\"").code == 2);

    std::filesystem::remove(path);
    std::filesystem::remove(fresh);
    std::filesystem::remove(corrupt);
}

TEST_CASE("json outputs parse and match the schemas") {
    CHECK(json::parse(run_cli("--json certify -m 14").out) == golden("certify_m14.json"));
    CHECK(json::parse(run_cli("--json certify -m -163").out) == golden("certify_m_neg163.json"));

    auto stuck = run_cli("--json certify -m 10");
    CHECK(stuck.code == 1);
    CHECK(json::parse(stuck.out) == golden("certify_m10.json"));

    auto g = json::parse(run_cli("--json gcd -m 14 \"137\" \"39-1*sqrt(14)\"").out);
    CHECK(g["m"] == 14);
    CHECK(g["gcd"] == "-19+4*sqrt(14)");
    CHECK(g["lambda"] == "12");
    CHECK(g["mu"] == "-43-1*sqrt(14)");
    CHECK(g["chain_length"] == 1);

    auto st = json::parse(run_cli("--json step -m 14 \"137\" \"39-1*sqrt(14)\"").out);
    CHECK(st["gamma"] == "12");
    CHECK(st["delta"] == "43+1*sqrt(14)");
    CHECK(st["rho"] == "-19+4*sqrt(14)");
    CHECK(st["trace"] == json::array({"Lemma2"}));

    auto nrm = json::parse(run_cli("--json norm -m 14 \"39-1*sqrt(14)\"").out);
    CHECK(nrm["norm"] == "1507");

    auto pe = json::parse(run_cli("--json prime-elem -m 2 -p 7").out);
    CHECK(pe["element"] == "3-1*sqrt(2)");
    CHECK(pe["norm"] == "7");

    auto cf = json::parse(run_cli("--json cf -m 14").out);
    CHECK(cf["a0"] == 3);
    CHECK(cf["period"] == json::array({1, 2, 1, 6}));
    CHECK(cf["unit"] == "15+4*sqrt(14)");
    CHECK(cf["unit_norm"] == 1);

    auto sq = run_cli("--json sqrtmod -n 2 -p 3");
    CHECK(sq.code == 1);
    CHECK(json::parse(sq.out)["root"].is_null());

    auto range = json::parse(run_cli("--json certify --range 2 5").out);
    REQUIRE(range.is_array());
    REQUIRE(range.size() == 3);
    CHECK(range[0]["m"] == 2);
    CHECK(range[2]["m"] == 5);
    for (const auto& c : range) CHECK(c["status"] == "CertifiedPID");

    auto tbl = run_cli("--json table -m 10");
    CHECK(tbl.code == 1);
    auto tj = json::parse(tbl.out);
    CHECK(tj["required"] == json::array({2}));
    CHECK(tj["entries"].empty());
}

TEST_CASE("printed elements re-parse to equal values") {
    FieldParams f14 = field_params(14);
    auto r = run_cli("gcd -m 14 \"137\" \"39-1*sqrt(14)\"");
    CHECK(parse_quadint(line_value(r.out, "gcd"), f14) == QuadInt::from_ab(-19, 4, f14));
    CHECK(parse_quadint(line_value(r.out, "mu"), f14) == QuadInt::from_ab(-43, -1, f14));

    FieldParams f2 = field_params(2);
    auto pe = run_cli("prime-elem -m 2 -p 7");
    std::string elem = pe.out.substr(0, pe.out.size() - 1);
    CHECK(parse_quadint(elem, f2) == QuadInt::from_ab(3, -1, f2));
}

TEST_CASE("reduce-unit keeps the Bezout identity") {
    FieldParams f14 = field_params(14);
    QuadInt alpha = QuadInt::integer(137, f14);
    QuadInt beta = QuadInt::from_ab(39, -1, f14);

    auto r = run_cli("--reduce-unit gcd -m 14 \"137\" \"39-1*sqrt(14)\"");
    CHECK(r.code == 0);
    QuadInt g = parse_quadint(line_value(r.out, "gcd"), f14);
    QuadInt lambda = parse_quadint(line_value(r.out, "lambda"), f14);
    QuadInt mu = parse_quadint(line_value(r.out, "mu"), f14);
    CHECK(g == unit_reduce(QuadInt::from_ab(-19, 4, f14)));
    CHECK(alpha * lambda + beta * mu == g);
    CHECK(divides(g, alpha));
    CHECK(divides(g, beta));

    auto pe = run_cli("--reduce-unit prime-elem -m 14 -p 137");
    std::string elem = pe.out.substr(0, pe.out.size() - 1);
    CHECK(elem == render(unit_reduce(QuadInt::from_ab(-19, 4, f14))));
}

TEST_CASE("output is deterministic") {
    auto a = run_cli("gcd -m 14 \"137\" \"39-1*sqrt(14)\"");
    auto b = run_cli("gcd -m 14 \"137\" \"39-1*sqrt(14)\"");
    CHECK(a.out == b.out);
    auto c = run_cli("--json certify -m 14");
    auto d = run_cli("--json certify -m 14");
    CHECK(c.out == d.out);
}
