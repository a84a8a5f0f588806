#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"

using namespace charsum;
using namespace charsum::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "charsum");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<Json> parse_lines(const std::string& text) {
    std::vector<Json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(Json::parse(line));
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "charsum_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

}  // namespace

TEST_CASE("sum") {
    auto r = invoke({"sum", "--p", "7", "--chi", "quadratic", "--subgroup-order", "3", "--a", "1"});
    REQUIRE(r.code == 0);
    const auto j = parse_lines(r.out).at(0);
    CHECK(j["integer"] == "-1");
    CHECK(j["mode"] == "exact");
    CHECK(std::stod(j["ratio"].get<std::string>()) == doctest::Approx(0.37796).epsilon(1e-5));

    CHECK(invoke({"sum", "--p", "7", "--chi", "0", "--subgroup-order", "3"}).code == 2);
    CHECK(invoke({"sum", "--p", "7", "--chi", "0", "--kind", "nonlinear"}).code == 2);
    auto bad = invoke({"sum", "--p", "9"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("odd prime") != std::string::npos);
    CHECK(invoke({"sum", "--p", "7", "--subgroup-order", "4"}).code == 2);
    CHECK(invoke({"sum", "--p", "7", "--kind", "product", "--a", "2", "--b", "2"}).code == 2);
    CHECK(invoke({"sum", "--p", "7", "--kind", "bogus"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("sum kinds") {
    auto product = invoke({"sum", "--p", "7", "--kind", "product", "--subgroup-order", "3", "--a", "1", "--b", "2"});
    REQUIRE(product.code == 0);
    CHECK(parse_lines(product.out).at(0)["integer"] == "-1");

    auto nonlinear = invoke({"sum", "--p", "7", "--kind", "nonlinear", "--subgroup-order", "3", "--a", "1"});
    CHECK(parse_lines(nonlinear.out).at(0)["integer"] == "-1");

    auto explicit_d = invoke({"sum", "--p", "7", "--d", "1,2,4", "--a", "1", "--mode", "numeric"});
    const auto j = parse_lines(explicit_d.out).at(0);
    CHECK(j["re"] == "-1");
    CHECK(!j.contains("coeffs"));

    auto kl = invoke({"sum", "--p", "7", "--kind", "kloosterman", "--subgroup-order", "1", "--k", "2", "--l", "3"});
    const auto k = parse_lines(kl.out).at(0);
    CHECK(std::stod(k["abs"].get<std::string>()) == doctest::Approx(1.0));

    auto gauss = invoke({"sum", "--p", "7", "--kind", "exp", "--d", "1,2,4", "--a", "1"});
    const auto g = parse_lines(gauss.out).at(0);
    CHECK(std::stod(g["abs"].get<std::string>()) == doctest::Approx(std::sqrt(2.0)));

    auto csv = invoke({"sum", "--p", "7", "--subgroup-order", "3", "--format", "csv"});
    const auto rows = lines_of(csv.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].starts_with("kind,p,chi,H,a,mode,coeffs"));
    CHECK(rows[1].find("\"[1,0,0,2,0,0]\"") != std::string::npos);
}

TEST_CASE("verify") {
    auto r = invoke({"verify", "--p-max", "61", "--claims", "eq2,granville,konyagin"});
    CHECK(r.code == 0);
    const auto records = parse_lines(r.out);
    CHECK(!records.empty());
    for (const auto& j : records) {
        CHECK(j["pass"] == true);
        CHECK(j["margin"] == "0");
    }
    CHECK(r.err.find("0 fail") != std::string::npos);

    auto small = invoke({"verify", "--p-max", "3"});
    CHECK(small.code == 0);
    CHECK(!parse_lines(small.out).empty());

    auto cap = invoke({"verify", "--p-min", "10000", "--p-max", "10010", "--mode", "exact", "--claims", "granville"});
    CHECK(cap.code == 1);
    const auto caps = parse_lines(cap.out);
    REQUIRE(caps.size() == 2);
    for (const auto& j : caps) CHECK(j["status"] == "capacity_exceeded");

    CHECK(invoke({"verify", "--claims", "nope"}).code == 2);
    CHECK(invoke({"verify", "--p-min", "20", "--p-max", "10"}).code == 0);
}

TEST_CASE("verify output is independent of worker count") {
    auto one = invoke({"verify", "--p-max", "19", "--seed", "42", "--workers", "1"});
    auto three = invoke({"verify", "--p-max", "19", "--seed", "42", "--workers", "3"});
    CHECK(one.out == three.out);
    auto other = invoke({"verify", "--p-max", "19", "--seed", "43"});
    CHECK(other.out != one.out);

    setenv("CHARSUM_WORKERS", "4", 1);
    auto env = invoke({"verify", "--p-max", "19", "--seed", "42"});
    CHECK(env.out == one.out);
    setenv("CHARSUM_WORKERS", "zero", 1);
    CHECK(invoke({"verify", "--p-max", "3"}).code == 2);
    unsetenv("CHARSUM_WORKERS");
}

TEST_CASE("scan") {
    auto r = invoke({"scan", "--problem", "1", "--p-min", "7", "--p-max", "7"});
    REQUIRE(r.code == 0);
    const auto j = parse_lines(r.out).at(0);
    CHECK(j["H"] == 3);
    CHECK(std::stod(j["max_ratio"].get<std::string>()) == doctest::Approx(0.37796).epsilon(1e-5));

    auto empty = invoke({"scan", "--problem", "1", "--p-min", "24", "--p-max", "28"});
    CHECK(empty.code == 0);
    CHECK(empty.out.empty());

    CHECK(invoke({"scan", "--problem", "7"}).code == 2);
}

TEST_CASE("scan achievers re-evaluate") {
    for (const char* problem : {"5", "6a", "6b"}) {
        RunConfig cfg;
        cfg.problem = problem;
        cfg.p_min = 3;
        cfg.p_max = 101;
        for (const auto& rec : run_scan(cfg)) {
            CHECK(rec.recheck == doctest::Approx(rec.statistic).epsilon(1e-12));
            CHECK(rec.grid == "full");
            std::uint64_t total = 0;
            for (auto c : rec.histogram) total += c;
            CHECK(total == rec.tuples);
            // re-evaluate the achiever through the engines directly
            const auto ctx = make_ctx(rec.p);
            const auto h = subgroup_near_sqrt(ctx);
            const auto u = static_cast<Residue>(std::get<std::int64_t>(rec.achiever[0].value));
            const auto v = static_cast<Residue>(std::get<std::int64_t>(rec.achiever[1].value));
            double value = 0.0;
            if (rec.problem == "5") value = shifted_product_sum(ctx, quadratic_character(ctx), h, u, v, Mode::exact).abs();
            else if (rec.problem == "6a") value = kloosterman_over_H(ctx, h, u, v).abs();
            else value = inverse_shift_sum(ctx, h, u, v).abs();
            CHECK(value / std::sqrt(double(rec.p)) == doctest::Approx(rec.statistic).epsilon(1e-12));
        }
    }
    RunConfig big;
    big.problem = "5";
    big.p_min = big.p_max = 1009;
    const auto r = scan_prime(big, 1009);
    CHECK(r.grid == "sample");
    CHECK(r.tuples == 1000);
    CHECK(scan_prime(big, 1009).statistic == r.statistic);
}

TEST_CASE("table") {
    const auto verify_path = scratch("verify.jsonl");
    write_file(verify_path, invoke({"verify", "--p-max", "13", "--claims", "eq2,thm2"}).out);
    auto t = invoke({"table", verify_path.string()});
    REQUIRE(t.code == 0);
    const auto rows = lines_of(t.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "claim,records,pass,vacuous_pass,fail,capacity_exceeded,pass_rate,min_margin");
    CHECK(rows[1].starts_with("thm2,"));
    CHECK(rows[2].starts_with("eq2,"));
    CHECK(rows[2].find(",1,0") != std::string::npos);

    const auto empty_path = scratch("empty.jsonl");
    write_file(empty_path, "");
    auto e = invoke({"table", empty_path.string()});
    CHECK(e.code == 0);
    CHECK(lines_of(e.out).size() == 1);

    const auto scan_path = scratch("scan.jsonl");
    const auto s11 = invoke({"scan", "--p-min", "11", "--p-max", "11"}).out;
    const auto s7 = invoke({"scan", "--p-min", "7", "--p-max", "7"}).out;
    write_file(scan_path, s11 + s7);
    const auto out_path = scratch("table.csv");
    auto st = invoke({"table", scan_path.string(), "-o", out_path.string()});
    CHECK(st.code == 0);
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto srows = lines_of(buf.str());
    REQUIRE(srows.size() == 3);
    CHECK(srows[1].starts_with("1,7,"));
    CHECK(srows[2].starts_with("1,11,"));

    const auto mixed = scratch("mixed.jsonl");
    write_file(mixed, s7 + invoke({"verify", "--p-max", "3", "--claims", "thm2"}).out);
    CHECK(invoke({"table", mixed.string()}).code == 2);
    const auto junk = scratch("junk.jsonl");
    write_file(junk, "{not json\n");
    CHECK(invoke({"table", junk.string()}).code == 2);
    CHECK(invoke({"table", scratch("missing.jsonl").string()}).code == 2);
}

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");

    auto r = invoke({"verify", "--p-max", "7", "--claims", "eq2", "--format", "csv"});
    const auto rows = lines_of(r.out);
    CHECK(rows[0] == verdict_csv_header());
    CHECK(rows.size() > 1);
}
