// The command-line layer: expression grammar with positioned diagnostics, the
// command implementations and their JSON bodies, exit-code mapping, and
// end-to-end subprocess runs of the installed binary (byte determinism included).

#include <cstdio>
#include <sys/wait.h>

#include "doctest.h"
#include "support.hpp"

#include "wgkm_cli/commands.hpp"
#include "wgkm_cli/expr.hpp"
#include "wgkm_cli/render.hpp"

using namespace wgkm;
using namespace wgkm::cli;

namespace {

std::string usage_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Usage);
        return e.what();
    }
    FAIL("expected a usage error");
    return "";
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(WGKM_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = out;
    return r;
}

} // namespace

TEST_CASE("expression grammar: round trips") {
    ClassExpr e = ClassExpr::parse("c1(T)^3");
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].atom.kind == ExprAtom::Kind::Chern);
    CHECK(e.terms[0].atom.index == 1);
    CHECK(e.terms[0].atom.bundle == Bundle::Tangent);
    CHECK(e.terms[0].exponent == 3);
    CHECK(e.to_string() == "c1(T)^3");
    CHECK(e.degree() == 3);
    CHECK(!e.on_slice());

    ClassExpr ws = ClassExpr::parse("  c2(S) * X1 ^ 2\t* td(T) ");
    CHECK(ws.to_string() == "c2(S)*X1^2*td(T)");
    CHECK(!ws.degree().has_value()); // Todd atom: inhomogeneous
    CHECK(!ws.on_slice());

    ClassExpr slice = ClassExpr::parse("Y1,e*Y2,s1");
    CHECK(slice.on_slice());
    CHECK(slice.degree() == 2);
    CHECK(slice.terms[0].atom.element == "e");
    CHECK(slice.terms[1].atom.element == "s1");
    CHECK(slice.to_string() == "Y1,e*Y2,s1");

    ClassExpr line = ClassExpr::parse("L(0)*L(1)");
    CHECK(line.on_slice());
    CHECK(line.degree() == 2);
    CHECK(line.to_string() == "L(0)*L(1)");

    CHECK(ClassExpr::parse("td(S)").to_string() == "td(S)");
    CHECK(ClassExpr::parse("X1").terms[0].exponent == 1);
}

TEST_CASE("expression grammar: positioned rejections") {
    auto msg_of = [](const std::string& text) {
        return usage_message([&] { ClassExpr::parse(text); });
    };
    CHECK(msg_of("").find("empty") != std::string::npos);
    CHECK(msg_of("c0(T)").find("c0 is the constant 1") != std::string::npos);
    CHECK(msg_of("X0").find("1-based") != std::string::npos);
    CHECK(msg_of("Y0,e").find("1-based") != std::string::npos);
    CHECK(msg_of("Z3").find("expected an atom") != std::string::npos);
    CHECK(msg_of("c1(T)^0").find("zero exponents") != std::string::npos);
    CHECK(msg_of("c1(T)#").find("position 6") != std::string::npos);
    CHECK(msg_of("c1(T)*").find("position 7") != std::string::npos);
    CHECK(msg_of("c1(Q)").find("position") != std::string::npos);
    CHECK(msg_of("Y1").find("position") != std::string::npos); // missing ,element
    CHECK(msg_of("c9999999(T)").find("position") != std::string::npos);
    // Every parse diagnostic carries a position.
    for (const char* bad : {"", "c0(T)", "X0", "Z3", "c1(T)^0", "c1(T)#", "L(x)"})
        CHECK(msg_of(bad).find("position") != std::string::npos);
}

TEST_CASE("expression evaluation and index validation against a space") {
    SymmetricSpace sp = SymmetricSpace::build("group:A1");
    WonderfulVariety wv(sp);

    auto integral = [&](const std::string& text) {
        ClassExpr e = ClassExpr::parse(text);
        return localize_integral(evaluate_expr(e, wv, e.on_slice()));
    };
    CHECK(integral("c1(T)^3") == Rat(64));
    CHECK(integral("c1(S)^3") == Rat(8));
    CHECK(integral("X1^3") == Rat(8));
    CHECK(integral("td(T)") == Rat(1));
    CHECK(integral("c1(T)^2*X1") == Rat(32)); // 16 H^2 * 2H on projective 3-space
    CHECK(integral("Y1,e") == Rat(1));        // point count of the slice line
    CHECK(integral("L(0)") == Rat(1));

    auto bad = [&](const std::string& text) {
        ClassExpr e = ClassExpr::parse(text);
        return usage_message([&] { evaluate_expr(e, wv, e.on_slice()); });
    };
    CHECK(bad("X2").find("X1..X1") != std::string::npos);
    CHECK(bad("Y2,e").find("Y1..Y1") != std::string::npos);
    CHECK(bad("L(7)").find("L(0)..L(1)") != std::string::npos);
    CHECK(bad("Y1,s9").find("unknown restricted Weyl element") != std::string::npos);

    // Non-minimal coset representatives are rejected with the valid list.
    SymmetricSpace a2 = SymmetricSpace::build("group:A2");
    WonderfulVariety wv2(a2);
    ClassExpr e = ClassExpr::parse("Y1,s2");
    std::string m = usage_message([&] { evaluate_expr(e, wv2, true); });
    CHECK(m.find("not a minimal coset representative") != std::string::npos);
    CHECK(m.find("s2s1") != std::string::npos);
}

TEST_CASE("command bodies carry the documented fields") {
    {
        CommandResult r = cmd_euler("group:A1");
        CHECK(r.exit_code == 0);
        CHECK(r.body["schema"] == "wgkm/1");
        CHECK(r.body["space"] == "group:A1");
        CHECK(r.body["vertices"] == 4);
        CHECK(r.body["euler"] == 4);
    }
    {
        CommandResult r = cmd_integrate("group:A1", "c1(T)^3");
        CHECK(r.body["integral"] == 64);
        CHECK(r.body["degree"] == 3);
        CHECK(r.body["dim"] == 3);
        CHECK(r.body["domain"] == "X");
        CHECK(r.body["expr"] == "c1(T)^3");
    }
    {
        CommandResult r = cmd_integrate("group:A2", "Y1,e*Y2,e");
        CHECK(r.body["domain"] == "Y");
        CHECK(r.body["integral"] == 1);
    }
    {
        CommandResult r = cmd_integrate("group:A2", "L(0)*L(1)");
        CHECK(r.body["integral"] == 1);
    }
    {
        // Frozen regression value: a mixed Chern number on the rank-two group case.
        CommandResult r = cmd_integrate("group:A2", "c1(T)^2*c2(T)^3");
        CHECK(r.body["integral"] == 1425276);
    }
    {
        CommandResult r = cmd_describe("EF6");
        CHECK(r.body["types"]["K"] == "F4");
        CHECK(r.body["types"]["L"] == "D4");
        CHECK(r.body["weyl_orders"]["W_G_over_K"] == 6);
        CHECK(r.body["fixed_points"]["X"] == 270);
        CHECK(r.body["dim"]["X"] == 26);
    }
    {
        CommandResult r = cmd_betti("group:A1", "X");
        CHECK(r.body["betti"] == json::array({1, 1, 1, 1}));
        CommandResult ry = cmd_betti("group:A2", "Y");
        CHECK(ry.body["betti"] == json::array({1, 4, 1}));
    }
    {
        CommandResult r = cmd_dims("group:A1", 3);
        REQUIRE(r.body["dims"].size() == 4);
        const long expect[4] = {1, 1, 3, 3};
        for (int d = 0; d <= 3; ++d) {
            CHECK(r.body["dims"][d]["degree"] == d);
            CHECK(r.body["dims"][d]["via_x"] == expect[d]);
            CHECK(r.body["dims"][d]["via_y"] == expect[d]);
            CHECK(r.body["dims"][d]["agree"] == true);
        }
    }
    {
        CommandResult r = cmd_verify("group:A1", "fast");
        CHECK(r.exit_code == 0);
        CHECK(r.body["passed"] == true);
        CHECK(r.body["checks"].is_array());
        CHECK(r.body["checks"].size() > 5);
    }
    {
        CommandResult r = cmd_gkm("group:A1", "X");
        CHECK(r.body["nvars"] == 2);
        CHECK(r.body["dim"] == 3);
        CHECK(r.body["vertices"].size() == 4);
        CHECK(r.body["vertices"][0]["label"] == "e");
        CHECK(r.body["vertices"][0]["tangent"].size() == 3);
        CHECK(r.body["edges"].size() == 6);
    }
    {
        CommandResult r = cmd_chern("group:A1", "T", "direct", std::nullopt);
        CHECK(r.body["variety"] == "X");
        CHECK(r.body["max_degree"] == 3);
        CHECK(r.body["values"].size() == 4);
        CommandResult rf = cmd_chern("group:A1", "S", "formula", std::nullopt);
        CHECK(rf.body["variety"] == "Y");
        CHECK(rf.body["values"].size() == 2);
    }
}

TEST_CASE("command-level usage errors") {
    // Expression degree must match the integration domain exactly; both numbers
    // appear in the diagnostic.
    std::string m = usage_message([] { cmd_integrate("group:A1", "c1(T)^2"); });
    CHECK(m.find("degree 2") != std::string::npos);
    CHECK(m.find("dimension 3") != std::string::npos);

    // Full-degree series on wide lattices require an explicit truncation degree.
    std::string chern_msg =
        usage_message([] { cmd_chern("AC:3", "T", "direct", std::nullopt); });
    CHECK(chern_msg.find("--max-degree") != std::string::npos);
    CHECK(usage_message([] { cmd_todd("AC:3", "T", std::nullopt); }).find("--max-degree") !=
          std::string::npos);
    CHECK(cmd_chern("AC:3", "T", "direct", 2).body["max_degree"] == 2);

    // Todd atoms over the full space hit the same budget guard.
    CHECK(usage_message([] { cmd_integrate("AC:3", "td(T)"); }).find("exceeds") !=
          std::string::npos);

    CHECK_THROWS_AS(cmd_chern("group:A1", "Q", "direct", std::nullopt), Error);
    CHECK_THROWS_AS(cmd_chern("group:A1", "T", "sideways", std::nullopt), Error);
    CHECK_THROWS_AS(cmd_betti("group:A1", "Z"), Error);
    CHECK_THROWS_AS(cmd_verify("group:A1", "extreme"), Error);
    CHECK_THROWS_AS(cmd_dims("group:A1", -1), Error);
    CHECK_THROWS_AS(cmd_describe("AC:1"), Error);
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code_of(ErrorKind::Usage) == 1);
    CHECK(exit_code_of(ErrorKind::Computation) == 2);
    CHECK(exit_code_of(ErrorKind::Verification) == 3);
}

TEST_CASE("JSON rendering of exact values") {
    CHECK(rat_json(Rat(5)) == json(5));
    CHECK(rat_json(make_rat(1, 2)) == json("1/2"));
    CHECK(rat_json(rat_from_string("-9007199254740991")) == json(-9007199254740991LL));
    CHECK(rat_json(rat_from_string("9007199254740992")) == json("9007199254740992"));

    CHECK(character_json(Character(IntVec{2, -1})) == json::array({2, -1}));

    // Leading term first: x0 + x1 renders with the lexicographically larger first.
    Polynomial f = Polynomial::from_character(Character(IntVec{1, 1}));
    json pj = polynomial_json(f);
    REQUIRE(pj.size() == 2);
    CHECK(pj[0] == json::array({1, json::array({1, 0})}));
    CHECK(pj[1] == json::array({1, json::array({0, 1})}));
    CHECK(polynomial_json(Polynomial::zero(2)) == json::array());
}

TEST_CASE("binary end-to-end: spec examples, determinism, exit codes") {
    {
        RunResult r = run_cli("euler group:A1");
        CHECK(r.exit_code == 0);
        json body = json::parse(r.output);
        CHECK(body["vertices"] == 4);
        CHECK(body["euler"] == 4);
    }
    {
        RunResult r = run_cli("integrate group:A1 --expr \"c1(T)^3\"");
        CHECK(r.exit_code == 0);
        CHECK(json::parse(r.output)["integral"] == 64);
    }
    {
        RunResult r = run_cli("describe EF6");
        CHECK(r.exit_code == 0);
        json body = json::parse(r.output);
        CHECK(body["types"]["K"] == "F4");
        CHECK(body["types"]["L"] == "D4");
        CHECK(body["weyl_orders"]["W_G_over_K"] == 6);
        CHECK(body["fixed_points"]["X"] == 270);
    }
    {
        // Byte-for-byte determinism across repeated runs.
        RunResult a = run_cli("describe AC:3");
        RunResult b = run_cli("describe AC:3");
        CHECK(a.exit_code == 0);
        CHECK(a.output == b.output);
        RunResult c = run_cli("gkm group:A2 --variety Y");
        RunResult d = run_cli("gkm group:A2 --variety Y");
        CHECK(c.exit_code == 0);
        CHECK(c.output == d.output);
    }
    {
        RunResult r = run_cli("describe AC:1");
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("n >= 2") != std::string::npos);
    }
    {
        RunResult r = run_cli("integrate group:A1 --expr \"c1(T)^2\"");
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("degree 2") != std::string::npos);
        CHECK(r.output.find("dimension 3") != std::string::npos);
    }
    {
        CHECK(run_cli("").exit_code == 1);          // a subcommand is required
        CHECK(run_cli("frobnicate").exit_code == 1); // unknown subcommand
        CHECK(run_cli("--help").exit_code == 0);
        CHECK(run_cli("verify group:A1 --level fast").exit_code == 0);
    }
    {
        // Cache maintenance against a scratch directory.
        std::string scratch = "./cli-cache-scratch";
        std::string env = "WONDERFUL_CACHE_DIR=" + scratch + " ";
        RunResult r = run_cli(env + "cache --rebuild group:A1");
        CHECK(r.exit_code == 0);
        json body = json::parse(r.output);
        CHECK(body["weyl_order"] == 4);
        CHECK(body["cached"] == false); // far below the persistence threshold
        RunResult cleared = run_cli(env + "cache --clear");
        CHECK(cleared.exit_code == 0);
        CHECK(json::parse(cleared.output)["action"] == "clear");
        CHECK(run_cli(env + "cache").exit_code == 1);
        CHECK(run_cli(env + "cache --rebuild group:A1 --clear").exit_code == 1);
    }
}
