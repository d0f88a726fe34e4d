#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "eu/asymptotics.hpp"
#include "eu/contour.hpp"
#include "eu/harness.hpp"
#include "eu/ibp.hpp"

using namespace eu;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    const std::string out = "cli_test_stdout.txt", err = "cli_test_stderr.txt";
    const std::string cmd = std::string(EU_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("eval is bit-identical to the library call") {
    const Run r = run("eval --method leading --t 1e6 --delta 0.5 --sigma 0.5 --Lambda 0");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const Approximation a = leading_order(ProblemParams::from_Lambda(1e6, 0.5, 0.5, 0.0));
    CHECK(j["re"].get<double>() == a.value.real());
    CHECK(j["im"].get<double>() == a.value.imag());
    CHECK(j["budget"].get<double>() == a.budget_total());
    CHECK(j["invocation"]["t"].get<double>() == 1e6);
    CHECK(j["invocation"]["Lambda"].get<double>() == 0.0);

    const Run o = run("oracle --t 1e4 --delta 0.5 --lambda 0.02 --tol 1e-11");
    REQUIRE(o.code == 0);
    const json jo = json::parse(o.out);
    const QuadratureResult q = jb_oracle({1e4, 0.5, 0.5, 0.02}, 1e-11);
    CHECK(jo["re"].get<double>() == q.value.real());
    CHECK(jo["im"].get<double>() == q.value.imag());
    CHECK(jo["abs_err"].get<double>() == q.abs_error_estimate);
    CHECK(jo["panels"].get<int>() == q.panels);

    const Run c = run("eval --method corollary --t 1e8 --delta 0.5 --Lambda 0.5 --format csv");
    REQUIRE(c.code == 0);
    const Approximation ca = corollary_leading(ProblemParams::from_Lambda(1e8, 0.5, 0.5, 0.5));
    char buf[64];
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,", ca.value.real(), ca.value.imag());
    CHECK(c.out.find(buf) != std::string::npos);
    CHECK(c.out.rfind("t,delta,sigma,lambda,Lambda,omega,method,m,a,re,im,budget\n", 0) == 0);
}

TEST_CASE("parameter errors exit 1 with error JSON") {
    for (const char* args : {"eval --t 1e6 --delta 0.5 --Lambda 0 --bogus 1",
                             "eval --t 1e6 --delta 0.5 --Lambda 0 --lambda 0.1",
                             "eval --t 16 --delta 0.5 --lambda 4",
                             "eval --method magic --t 1e6 --delta 0.5 --Lambda 0",
                             "eval --method large-omega --t 1e6 --delta 0.5 --Lambda 0",
                             "eval --method all-orders --t 1e6 --delta 0.5 --Lambda 0 --b 0.4",
                             "eval --method all-orders --t 1e6 --delta 0.5 --sigma 0.75 --Lambda 0",
                             "eval --t 1e6 --delta 0.5",
                             "sweep",
                             "verify --suite Nope",
                             ""}) {
        const Run r = run(args);
        CHECK_MESSAGE(r.code == 1, args);
        const json e = json::parse(r.err);
        CHECK(e["error"].contains("code"));
        CHECK(e["error"].contains("message"));
    }
}

TEST_CASE("point config records") {
    {
        std::ofstream os("cli_point.json");
        os << R"({"t": 1e6, "delta": 0.5, "sigma": 0.5, "Lambda": 2, "m": 5, "b": 0.45})";
    }
    const Run r = run("eval --method all-orders --config cli_point.json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const ProblemParams p = ProblemParams::from_Lambda(1e6, 0.5, 0.5, 2.0);
    const double a = choose_split(derive(p), 5, 0.45).split->a;
    CHECK(j["re"].get<double>() == all_orders(p, 5, a).value.real());
    CHECK(j["m"].get<int>() == 5);
    {
        std::ofstream os("cli_bad.json");
        os << R"({"t": 1e6, "delta": 0.5, "Lambda": 2, "colour": 1})";
    }
    CHECK(run("eval --config cli_bad.json").code == 1);
}

TEST_CASE("sweep writes the fixed CSV schema") {
    {
        std::ofstream os("cli_sweep.json");
        os << R"({"t_grid": [1e4, 1e6], "lambda_spec": {"kind": "omega", "values": [0, 2]},
                 "methods": ["leading", "corollary"], "record_runtime": false})";
    }
    const Run r = run("sweep --config cli_sweep.json --out cli_rows.csv");
    REQUIRE(r.code == 0);
    const std::string csv = slurp("cli_rows.csv");
    std::istringstream is(csv);
    std::string line;
    int n = 0;
    std::getline(is, line);
    CHECK(line == csv_header);
    while (std::getline(is, line)) ++n;
    CHECK(n == 8);
    CHECK(run("sweep --config cli_sweep.json --out cli_rows2.csv").code == 0);
    CHECK(slurp("cli_rows2.csv") == csv);
}

TEST_CASE("compare, terms and verify") {
    const Run c = run("compare --t 1e5 --delta 0.5 --Lambda 1");
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["rows"].size() == 5);

    const Run t = run("terms --m 4 --t 1e6 --delta 0.5 --Lambda 0");
    REQUIRE(t.code == 0);
    const json jt = json::parse(t.out);
    CHECK(jt["tables"].size() == 7);
    const json& lvl2 = jt["tables"][2]["entries"];
    CHECK(lvl2.size() == 4);
    CHECK(lvl2[1]["num"] == "-7");
    CHECK(lvl2[1]["den"] == "2");
    CHECK(jt["terms"].size() == 6);
    const ProblemParams p = ProblemParams::from_Lambda(1e6, 0.5, 0.5, 0.0);
    const double k = choose_split(derive(p), 4).split->k;
    CHECK(jt["terms"][0]["re"].get<double>() == t_term(1, p, k).value.real());

    const Run v = run("verify --suite ExponentIdentity");
    CHECK(v.code == 0);
    const json jv = json::parse(v.out);
    CHECK(jv["pass"].get<bool>());
    CHECK(jv["reports"].size() == 1);
}
