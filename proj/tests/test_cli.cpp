#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = smf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> cells(const std::string& line) {
    std::vector<std::string> v;
    std::istringstream in(line);
    for (std::string c; std::getline(in, c, ',');) v.push_back(c);
    return v;
}

}  // namespace

TEST_CASE("number formatting") {
    using smf::cli::format_number;
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(std::log(2.0)) == "0.69314718055994529");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(-2.5e-7) == "-2.4999999999999999e-07");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("digits command") {
    auto r = run({"digits", "--p", "2", "--num", "2", "--den", "3", "--n", "10"});
    CHECK(r.code == 0);
    CHECK(r.out == "i,a,b,trusted\n1,1,1,1\n2,1,1,1\n# terminated=finite\n");

    r = run({"digits", "--p", "5", "--num", "5", "--den", "1"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).size() == 3);
    CHECK(lines(r.out)[1] == "1,1,1,1");

    r = run({"digits", "--p", "2", "--num", "1", "--den", "2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NotPAdicInteger") != std::string::npos);

    r = run({"digits", "--p", "3", "--num", "1", "--den", "2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NotInDomain") != std::string::npos);

    r = run({"digits", "--p", "2", "--num", "abc"});
    CHECK(r.code == 2);

    r = run({"digits", "--p", "3", "--num", "3", "--den", "7", "--n", "5", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["p"] == 3);
    CHECK(j["digits"].size() == 5);
    CHECK(j["terminated"] == "open");
}

TEST_CASE("dimension command") {
    auto r = run({"dimension", "--p", "2", "--q", "1", "--beta", "2"});
    CHECK(r.code == 0);
    auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "q,beta,lambda,mean_digit,s_alpha,dimension");
    auto c = cells(rows[1]);
    CHECK(std::stod(c[5]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::stod(c[2]) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

    r = run({"dimension", "--p", "2", "--q", "2", "--beta", "2.449489742783178"});
    CHECK(std::stod(cells(lines(r.out)[1])[5]) == doctest::Approx(1.0).epsilon(1e-10));

    r = run({"dimension", "--p", "3", "--q", "1", "--beta", "1"});
    c = cells(lines(r.out)[1]);
    CHECK(std::stod(c[5]) == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-15));
    CHECK(c[4] == "inf");

    r = run({"dimension", "--p", "3", "--q", "1", "--beta", "1", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["s_alpha"].is_null());
    CHECK(j.size() == 6);

    r = run({"dimension", "--p", "2", "--q", "-2", "--beta", "1e6"});
    CHECK(r.code == 1);
    CHECK(r.err.find("NoBracket") != std::string::npos);

    CHECK(run({"dimension", "--p", "4", "--q", "1", "--beta", "2"}).code == 2);
    CHECK(run({"dimension", "--p", "2", "--q", "1", "--beta", "0.5"}).code == 2);
    CHECK(run({"dimension", "--p", "2", "--q", "1"}).code == 2);
    CHECK(run({"dimension", "--p", "2", "--q", "x", "--beta", "2"}).code == 2);
}

TEST_CASE("spectrum command") {
    auto r = run({"spectrum", "--p", "3", "--q", "0", "--beta-min", "1", "--beta-max", "4", "--steps", "7"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0] == "q,beta,lambda,mean_digit,s_alpha,dimension");
    CHECK(cells(rows[1])[1] == "1");
    CHECK(cells(rows[7])[1] == "4");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(cells(rows[i]).size() == 6);
        const double d = std::stod(cells(rows[i])[5]);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
    CHECK(r.out.find('\r') == std::string::npos);

    CHECK(run({"spectrum", "--p", "3", "--steps", "1"}).code == 2);
    CHECK(run({"spectrum", "--p", "3", "--beta-min", "0.5"}).code == 2);
    CHECK(run({"spectrum", "--p", "3", "--beta-min", "3", "--beta-max", "2"}).code == 2);

    const auto again = run({"spectrum", "--p", "3", "--q", "0", "--beta-min", "1", "--beta-max", "4", "--steps", "7"});
    CHECK(again.out == r.out);
}

TEST_CASE("haar command") {
    const auto r = run({"haar", "--p", "2", "--q-list", "-1,0,1,2"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "q,haar_mean,lambda,dimension");
    CHECK(std::stod(cells(rows[3])[1]) == 2.0);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(cells(rows[i])[3]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("montecarlo command") {
    const std::vector<std::string> args{"montecarlo", "--p", "2", "--q", "1", "--samples", "200",
                                        "--orbit-length", "100", "--seed", "5", "--format", "json"};
    const auto r = run(args);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"q", "p", "mode", "samples", "orbit_length", "mean", "stderr", "seed",
                            "digits_used", "haar_mean", "z_score"})
        CHECK(j.contains(key));
    CHECK(j["mode"] == "digit_model");
    CHECK(j["seed"] == 5);
    CHECK(j["samples"] == 200);
    CHECK(j["stderr"].get<double>() > 0.0);
    CHECK(std::abs(j["z_score"].get<double>()) < 4.0);
    CHECK(run(args).out == r.out);

    const auto orbit = run({"montecarlo", "--p", "3", "--q", "0", "--mode", "orbit", "--samples", "50",
                            "--orbit-length", "50"});
    CHECK(orbit.code == 0);
    CHECK(lines(orbit.out)[0] == "q,p,mode,samples,orbit_length,mean,stderr,seed,digits_used,haar_mean,z_score");
    CHECK(cells(lines(orbit.out)[1])[2] == "orbit");

    CHECK(run({"montecarlo", "--p", "2", "--mode", "orbit", "--orbit-length", "500", "--precision", "16"}).code == 1);
    CHECK(run({"montecarlo", "--p", "2", "--mode", "nope"}).code == 2);
    CHECK(run({"montecarlo", "--p", "2", "--samples", "0"}).code == 2);
}

TEST_CASE("output file and usage errors") {
    const std::string path = "cli_test_output.csv";
    std::remove(path.c_str());
    const auto r = run({"dimension", "--p", "2", "--q", "1", "--beta", "2", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == run({"dimension", "--p", "2", "--q", "1", "--beta", "2"}).out);
    std::remove(path.c_str());

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"dimension", "--p", "2", "--beta", "2", "--format", "xml"}).code == 2);
}
