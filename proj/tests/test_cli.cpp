#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "primewin/cli.hpp"
#include "primewin/report.hpp"

using namespace primewin;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("bt example emits one passing row") {
    const auto r = run({"bt", "--q", "4", "--a", "1", "--x", "10000", "--h", "400"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "experiment,param_json,metric,bound,ratio,verdict");
    CHECK(ls[1].rfind("bt-ap,", 0) == 0);
    CHECK(ls[1].substr(ls[1].size() - 5) == ",pass");
}

TEST_CASE("zeros example") {
    const auto r = run({"zeros", "--component", "zeta", "--T", "100", "--format", "jsonl"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1);
    const auto rep = parse_jsonl_row(ls[0]);
    CHECK(rep.params["counted"].get<double>() == 58);
    CHECK(rep.params["predicted"].get<double>() == doctest::Approx(56.2546871747));
    CHECK(rep.metric == doctest::Approx(58 - 56.2546871747));
}

TEST_CASE("usage, data, capacity and sink errors map to exit codes") {
    CHECK(run({"meansq", "--q", "0", "--X", "1000", "--h", "30"}).code == 2);
    CHECK(run({"meansq", "--q", "12", "--a", "6", "--X", "1000", "--h", "30"}).code == 2);
    CHECK(run({"bt", "--q", "4", "--a", "1", "--x", "10000", "--h", "4"}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"bt", "--q", "4", "--bogus", "1"}).code == 2);
    CHECK(run({"zeros", "--component", "zeta", "--T", "100", "--zeros-manifest", "/nonexistent"}).code == 3);
    CHECK(run({"bt", "--field", "nowhere", "--x", "100", "--h", "10"}).code == 2);
    CHECK(run({"bt", "--poly", "-5", "0", "--x", "100", "--h", "10"}).code == 3);
    CHECK(run({"bt", "--poly", "1", "0", "--x", "100", "--h", "10"}).code == 0);
    CHECK(run({"bt", "--config", "/nonexistent.ini"}).code == 2);
    CHECK(run({"sieve", "--hi", "5e9"}).code == 4);
    CHECK(run({"sieve", "--hi", "100", "-o", "/nonexistent/dir/out.csv"}).code == 5);
}

TEST_CASE("help exits cleanly") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ap-scan") != std::string::npos);
}

TEST_CASE("empty scans: header only in CSV, nothing in JSON lines") {
    const auto csv = run({"sieve", "--lo", "32", "--hi", "36"});
    CHECK(csv.code == 0);
    CHECK(lines(csv.out) == std::vector<std::string>{"experiment,param_json,metric,bound,ratio,verdict"});
    const auto js = run({"sieve", "--lo", "32", "--hi", "36", "--format", "jsonl"});
    CHECK(js.code == 0);
    CHECK(js.out.empty());
}

TEST_CASE("sieve rows follow window order") {
    const auto r = run({"sieve", "--hi", "10", "--format", "jsonl"});
    std::vector<std::int64_t> ns;
    for (const auto& l : lines(r.out)) ns.push_back(parse_jsonl_row(l).params["n"].get<std::int64_t>());
    CHECK(ns == std::vector<std::int64_t>{2, 3, 4, 5, 7, 8, 9});
}

TEST_CASE("JSON lines round-trip at 12 significant digits") {
    const auto r = run({"smoothed", "--x", "10000", "--h", "200", "--eps", "0.5", "--T", "500",
                        "--draws", "10", "--format", "jsonl"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() >= 2);
    for (const auto& l : ls) {
        const auto rep = parse_jsonl_row(l);
        CHECK(rep.metric == round12(rep.metric));
        CHECK(rep.bound == round12(rep.bound));
        CHECK(rep.ratio == round12(rep.ratio));
        std::ostringstream again;
        write_row(again, rep, Format::jsonl);
        CHECK(again.str() == l + "\n");
    }
}

TEST_CASE("seeded draws are deterministic") {
    const std::vector<std::string> args{"smoothed", "--x", "5000", "--h", "100", "--eps", "0.3",
                                        "--T", "200", "--draws", "25", "--seed", "7"};
    CHECK(run(args).out == run(args).out);
    auto other = args;
    other.back() = "8";
    CHECK(run(args).out != run(other).out);
}

TEST_CASE("config file supplies options") {
    const std::string path = "primewin_test_config.ini";
    {
        std::ofstream cfg(path);
        cfg << "q = 4\na = 1\nx = 10000\nh = 400\nformat = jsonl\n";
    }
    const auto r = run({"bt", "--config", path});
    std::remove(path.c_str());
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1);
    const auto rep = parse_jsonl_row(ls[0]);
    CHECK(rep.experiment == "bt-ap");
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.metric == 21);
}

TEST_CASE("config sections and command-line precedence") {
    const std::string path = "primewin_test_sections.ini";
    {
        std::ofstream cfg(path);
        cfg << "# shared\nformat = jsonl\n[bt]\nx = 10000\nh = 400\n[meansq]\nX = oops\n";
    }
    const auto r = run({"bt", "--config", path, "--h", "100"});
    const auto bad = run({"bt", "--config", path, "--x", "10000", "--h", "100", "--q", "0"});
    std::remove(path.c_str());
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1);
    const auto rep = parse_jsonl_row(ls[0]);
    CHECK(rep.params["h"].get<double>() == 100);
    CHECK(rep.metric == 11);
    CHECK(bad.code == 2);
}

TEST_CASE("failing verdicts exit 1") {
    CHECK(run({"meansq", "--q", "1", "--X", "1000", "--h", "30", "--ratio-ceiling", "1e-12"}).code == 1);
    CHECK(run({"meansq", "--q", "1", "--X", "1000", "--h", "30"}).code == 0);
}

TEST_CASE("window forms") {
    const auto direct = run({"bt", "--x", "10000", "--h", "100", "--format", "jsonl"});
    // h = 1 * 10000^0.5 * (log x)^0
    const auto form = run({"bt", "--x", "10000", "--h-coef", "1", "--h-exp", "0.5", "--h-log", "0",
                           "--format", "jsonl"});
    CHECK(direct.code == 0);
    CHECK(parse_jsonl_row(lines(direct.out)[0]).metric == parse_jsonl_row(lines(form.out)[0]).metric);
}

TEST_CASE("other subcommands run") {
    CHECK(run({"ap-scan", "--q", "4", "--a", "3", "--c1", "4", "--x-lo", "1000", "--x-hi", "20000"}).code == 0);
    CHECK(run({"field-scan", "--field", "Q(i)", "--c1", "4", "--x-lo", "1000", "--x-hi", "20000"}).code == 0);
    CHECK(run({"inertia", "--q", "1", "--X", "10000", "--h-coef", "1"}).code == 0);
    CHECK(run({"explicit", "--T", "1000", "--x-lo", "50.5", "--x-hi", "1000.5", "--x-step", "50",
               "--max-normalized", "5"}).code == 0);
    CHECK(run({"bt", "--field", "Q(zeta5)", "--x", "10000", "--h", "100"}).code == 0);
}
