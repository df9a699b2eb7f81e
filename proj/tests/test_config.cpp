#include <doctest.h>

#include "dda/config.hpp"
#include "dda/errors.hpp"

using namespace dda;

TEST_CASE("parses the documented key-value grammar") {
    const std::string text =
        "# experiment description\n"
        "manifold = veronese(n=3)\n"
        "theta = poly(coeffs=[0, 0, 0, 1])\n"
        "psi = power(tau=3)\n"
        "v = [1.5, 0.5]\n"
        "seed = 42\n";
    auto doc = parse_config(text);
    REQUIRE(doc.size() == 5);

    auto M = make_manifold(doc.at("manifold"));
    CHECK(M.n() == 3);
    CHECK(M.m() == 1);

    auto theta = make_shift(doc.at("theta"));
    CHECK(!theta.is_zero());
    CHECK(theta.eval(std::vector<double>{2.0}) == doctest::Approx(8.0));

    auto psi = make_psi(doc.at("psi"));
    CHECK(psi(2.0) == doctest::Approx(0.125));

    auto v = make_weights(doc.at("v"));
    CHECK(v.n() == 2);
    CHECK(v.v1() == doctest::Approx(1.5));

    CHECK(doc.at("seed").kind == ConfigValue::Kind::Number);
    CHECK(doc.at("seed").number == doctest::Approx(42.0));
}

TEST_CASE("numbers, lists and calls") {
    CHECK(parse_config_value("3.5").number == doctest::Approx(3.5));
    CHECK(parse_config_value("-2e-3").number == doctest::Approx(-0.002));
    auto lst = parse_config_value("[1, 2.5, -3]");
    REQUIRE(lst.list.size() == 3);
    CHECK(lst.list[2] == doctest::Approx(-3.0));
    auto call = parse_config_value("power(tau=3, scale=0.5)");
    CHECK(call.callee == "power");
    CHECK(call.args.at("scale").number == doctest::Approx(0.5));
    auto bare = parse_config_value("zero");
    CHECK(bare.kind == ConfigValue::Kind::Call);
    CHECK(bare.args.empty());
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_config("manifold = veronese(n=3)\npsi = power(tau=\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 2);
        CHECK(e.column >= 16);
    }
    try {
        parse_config("v [1, 1]\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS(parse_config_value("[1, oops]"), config_error);
    CHECK_THROWS_AS(parse_config_value("power(tau=3) junk"), config_error);
}

TEST_CASE("factory shape errors") {
    CHECK_THROWS_AS(make_manifold(parse_config_value("veronese()")), config_error);
    CHECK_THROWS_AS(make_manifold(parse_config_value("torus(n=2)")), config_error);
    CHECK_THROWS_AS(make_shift(parse_config_value("poly()")), config_error);
    CHECK_THROWS_AS(make_psi(parse_config_value("power(beta=1)")), config_error);
    CHECK_THROWS_AS(make_weights(parse_config_value("[1.5, 1.5, 0.5]")), config_error);
    CHECK_THROWS_AS(make_weights(parse_config_value("7")), config_error);

    auto zero = make_shift(parse_config_value("zero"));
    CHECK(zero.is_zero());
    auto c = make_shift(parse_config_value("constant(c=0.25)"));
    CHECK(c.eval(std::vector<double>{0.5}) == doctest::Approx(0.25));
}

TEST_CASE("canonical form and hash are stable") {
    auto doc1 = parse_config("b = [1, 2]\na = power(tau=3, scale=1)\n");
    auto doc2 = parse_config("a  =  power( scale = 1 , tau = 3 )\nb=[1,2]\n");
    CHECK(canonical_config(doc1) == canonical_config(doc2));
    const auto h = config_hash(canonical_config(doc1));
    CHECK(h.size() == 16);
    CHECK(h == config_hash(canonical_config(doc2)));
    CHECK(h != config_hash("something else"));
    // FNV-1a reference value for the empty string
    CHECK(config_hash("") == "cbf29ce484222325");
}
