#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lbmfd/schemefile.hpp"

using namespace lbmfd;

namespace {

std::string fixture(const std::string& name) {
    return std::string(LBMFD_FIXTURE_DIR) + "/" + name;
}

struct CmdResult {
    int status;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(LBMFD_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scheme file round trip") {
    for (const char* name : {"d1q2.lbm", "d1q3n2.lbm"}) {
        SchemeDocument doc = parse_scheme_file(fixture(name));
        std::string text = serialize_scheme(doc);
        SchemeDocument again = parse_scheme_text(text, "roundtrip");
        CHECK(again.scheme.d == doc.scheme.d);
        CHECK(again.scheme.q == doc.scheme.q);
        CHECK(again.scheme.N == doc.scheme.N);
        CHECK(again.scheme.velocities == doc.scheme.velocities);
        CHECK(again.scheme.lattice_speed == doc.scheme.lattice_speed);
        CHECK(again.scheme.moment_matrix == doc.scheme.moment_matrix);
        CHECK(again.scheme.rates == doc.scheme.rates);
        CHECK(again.scheme.equilibria == doc.scheme.equilibria);
        CHECK(again.bindings == doc.bindings);
    }
}

TEST_CASE("parse errors carry positions") {
    // Unknown symbol in an equilibrium.
    std::string bad =
        "lbm-scheme v1\n"
        "dimension: 1\n"
        "velocities: (1) (-1)\n"
        "lattice_speed: 1\n"
        "conserved: 1\n"
        "moments:\n"
        "  1 1\n"
        "  1 -1\n"
        "relaxation: 0 1\n"
        "equilibrium m2: mm1\n";
    try {
        parse_scheme_text(bad, "bad.lbm");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("bad.lbm:10") != std::string::npos);
        CHECK(std::string(e.what()).find("mm1") != std::string::npos);
    }

    // Wrong row count in the moment matrix.
    std::string short_rows =
        "lbm-scheme v1\n"
        "dimension: 1\n"
        "velocities: (1) (-1)\n"
        "lattice_speed: 1\n"
        "conserved: 1\n"
        "moments:\n"
        "  1 1\n"
        "relaxation: 0 1\n"
        "equilibrium m2: 0\n";
    CHECK_THROWS_AS(parse_scheme_text(short_rows, "rows.lbm"), Error);

    // Conservation violation surfaces as a validation error.
    std::string zero_rate =
        "lbm-scheme v1\n"
        "dimension: 1\n"
        "velocities: (1) (-1)\n"
        "lattice_speed: 1\n"
        "conserved: 1\n"
        "moments:\n"
        "  1 1\n"
        "  1 -1\n"
        "relaxation: 0 0\n"
        "equilibrium m2: 0\n";
    try {
        parse_scheme_text(zero_rate, "rate.lbm");
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
    }
}

TEST_CASE("cli: validate and derive-fd") {
    auto ok = run_cli("validate " + fixture("d1q2.lbm"));
    CHECK(ok.status == 0);
    CHECK(ok.out.find("valid") != std::string::npos);

    auto fd = run_cli("derive-fd " + fixture("d1q2.lbm"));
    CHECK(fd.status == 0);
    CHECK(fd.out.find("time_levels: 2") != std::string::npos);

    auto usage = run_cli("frobnicate " + fixture("d1q2.lbm"));
    CHECK(usage.status == 2);
}

TEST_CASE("cli: equivalent equations emit the advection-diffusion PDE") {
    auto r = run_cli("equivalent-eqs --order 2 " + fixture("d1q2.lbm"));
    CHECK(r.status == 0);
    // The Henon factor (1/s2 - 1/2) appears as (2 - s2)/(2 s2) once the
    // coefficient is normalized; the dxx term carries (C^2 - lambda^2)/lambda
    // times that, all inside one canonical coefficient.
    CHECK(r.out.find("dx dx m1") != std::string::npos);
    CHECK(r.out.find("cross_check: pass") != std::string::npos);
}

TEST_CASE("cli: check passes on the fixtures and fails on a broken scheme") {
    for (const char* name : {"d1q2.lbm", "d1q3n2.lbm"}) {
        auto r = run_cli("check " + fixture(name));
        CHECK(r.status == 0);
        CHECK(r.out.find("all_pass: true") != std::string::npos);
        CHECK(r.out.find("fail") == std::string::npos);
    }

    // derive-fd on an invalid scheme: status 1 plus a validation section.
    std::string tmp = "/tmp/lbmfd_invalid.lbm";
    {
        std::ofstream f(tmp);
        f << "lbm-scheme v1\ndimension: 1\nvelocities: (1) (-1)\nlattice_speed: 1\n"
             "conserved: 1\nmoments:\n  1 1\n  1 1\nrelaxation: 0 1\nequilibrium m2: 0\n";
    }
    auto bad = run_cli("derive-fd " + tmp);
    CHECK(bad.status == 1);
    CHECK(bad.out.find("invalid") != std::string::npos);
    CHECK(bad.out.find("singular") != std::string::npos);
}

TEST_CASE("cli: simulate reports exact equivalence") {
    auto r = run_cli("simulate --cells 16 --steps 20 " + fixture("d1q2.lbm"));
    CHECK(r.status == 0);
    CHECK(r.out.find("max_deviation: 0") != std::string::npos);
    CHECK(r.out.find("verdict: pass") != std::string::npos);
}

TEST_CASE("cli: structured report mirrors the text output") {
    std::string path = "/tmp/lbmfd_report.json";
    auto r = run_cli("check --report " + path + " " + fixture("d1q2.lbm"));
    CHECK(r.status == 0);
    auto doc = nlohmann::json::parse(read_file(path));
    REQUIRE(doc.contains("checks"));
    // Every check row in the JSON appears verbatim in the text rendering.
    for (const auto& row : doc["checks"]) {
        CHECK(r.out.find(row["name"].get<std::string>()) != std::string::npos);
        CHECK(r.out.find(row["verdict"].get<std::string>()) != std::string::npos);
    }
    CHECK(doc["all_pass"].get<bool>());
}

TEST_CASE("cli: maxwell route and convergence study") {
    auto mx = run_cli("maxwell --order 2 " + fixture("d1q2.lbm"));
    CHECK(mx.status == 0);
    CHECK(mx.out.find("cross_check: pass") != std::string::npos);

    auto conv = run_cli("convergence --grids 32 --grids 64 --grids 128 --profile modified " +
                        fixture("d1q2.lbm"));
    CHECK(conv.status == 0);
    CHECK(conv.out.find("observed_order") != std::string::npos);
}
