#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpqed/expr.hpp"
#include "mpqed/parser.hpp"
#include "mpqed/serialize.hpp"

using namespace mpqed;

namespace {

struct Fixture {
    RegistryPtr reg = make_standard_registry();
    SymbolId m1, m2;

    Fixture() {
        m1 = reg->intern("m1", SymbolKind::Mass);
        m2 = reg->intern("m2", SymbolKind::Mass);
    }

    ParserContext ctx() const {
        ParserContext c;
        c.reg = reg;
        return c;
    }
};

}  // namespace

TEST_CASE("polynomials: arithmetic, division, content") {
    Fixture fx;
    Poly m1 = Poly::var(fx.m1), m2 = Poly::var(fx.m2);
    Poly sum = m1 + m2;
    Poly diff = m1 - m2;
    Poly prod = sum * diff;
    Poly expected = m1 * m1 - m2 * m2;
    CHECK(prod == expected);
    CHECK(prod.divided_by(sum).has_value());
    CHECK(*prod.divided_by(sum) == diff);
    CHECK(!prod.divided_by(m1 + m1 + m2).has_value());

    Poly p = sum * sum * Poly(Int(6));
    CHECK(p.content() == 6);

    auto root = (sum * sum).sqrt();
    REQUIRE(root.has_value());
    CHECK(*root == sum);
    CHECK(!(prod).sqrt().has_value());
}

TEST_CASE("rational functions: normalization and cross-multiplied equality") {
    Fixture fx;
    RatFunc m1 = RatFunc::var(fx.m1), m2 = RatFunc::var(fx.m2);
    RatFunc M = m1 + m2;
    // m1/M + m2/M == 1
    RatFunc s = m1 / M + m2 / M;
    CHECK(s == RatFunc(Rat(1)));
    // (m1^2 - m2^2)/(m1+m2) == m1 - m2
    RatFunc q = (m1 * m1 - m2 * m2) / M;
    CHECK(q == m1 - m2);
    CHECK(q.den().empty());
    // evaluation
    std::vector<Rat> vals(sym::first_free + 2, Rat(1));
    vals[fx.m1] = Rat(3);
    vals[fx.m2] = Rat(2);
    CHECK((m1 / M).evaluate(vals) == Rat(3, 5));
}

TEST_CASE("rational square roots pick the dominant-mass sign") {
    Fixture fx;
    RatFunc m1 = RatFunc::var(fx.m1), m2 = RatFunc::var(fx.m2);
    RatFunc M = m1 + m2;
    // 1 - 4*(m1 m2/M)/M == ((m1-m2)/M)^2
    RatFunc v = RatFunc(Rat(1)) - RatFunc(Rat(4)) * m1 * m2 / (M * M);
    auto r1 = v.sqrt(fx.m1);
    REQUIRE(r1.has_value());
    CHECK(*r1 == (m1 - m2) / M);
    auto r2 = v.sqrt(fx.m2);
    REQUIRE(r2.has_value());
    CHECK(*r2 == (m2 - m1) / M);
}

TEST_CASE("scalar grading stays separate from rational functions") {
    Fixture fx;
    ScalarExpr a = ScalarExpr::graded(1, RatFunc(Rat(2)));
    ScalarExpr b = ScalarExpr::graded(2, RatFunc::var(fx.m1));
    ScalarExpr p = a * b;
    CHECK(p.parts().size() == 1);
    CHECK(p.parts().begin()->first == 3);
    ScalarExpr s = a + b + (-a);
    CHECK(s == b);
}

TEST_CASE("additive and multiplicative identities") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr x = parse_op("2 * e * dot(R2, E(alpha * R1))", ctx);
    OpExpr zero;
    zero.reg = fx.reg;
    CHECK(equals(add(x, zero), x));
    CHECK(equals(multiply(x, op_unit(fx.reg)), x));
    // (c T) + (-c T) -> empty
    CHECK(add(x, negate(x)).is_zero());
}

TEST_CASE("coefficient merge: eR2.E + eR2.E = 2 eR2.E") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr x = parse_op("e * dot(R2, E(alpha * R1))", ctx);
    OpExpr two = parse_op("2 * e * dot(R2, E(alpha * R1))", ctx);
    OpExpr sum = add(x, x);
    CHECK(sum.terms.size() == 1);
    CHECK(equals(sum, two));
}

TEST_CASE("multiply distributes and preserves order; squaring gives 4 raw products") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr s = parse_op("dot(P2, P2) + invnorm(R2)", ctx);
    OpExpr sq = multiply(s, s);
    CHECK(sq.terms.size() == 4);  // before canonicalization
    // order preservation by construction
    OpExpr ab = multiply(parse_op("dot(P2, P2)", ctx), parse_op("invnorm(R2)", ctx));
    CHECK(ab.terms.size() == 1);
    CHECK(ab.terms[0].factors[0].kind == FactorKind::Dot);
    CHECK(ab.terms[0].factors[1].kind == FactorKind::InverseNorm);
}

TEST_CASE("commutation predicate: conjugate pairs and independent indices") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    auto factor_of = [&](const std::string& s) { return parse_op(s, ctx).terms.at(0).factors.at(0); };
    OpFactor p2 = factor_of("dot(P2, P2)");
    OpFactor inv2 = factor_of("invnorm(R2)");
    OpFactor inv3 = factor_of("invnorm(R3)");
    CHECK(!commutes(p2, inv2));
    CHECK(commutes(p2, inv3));
    // field evaluated at a point mentioning R1 vs P1
    OpFactor bfield = factor_of("dot(R2, B(alpha * R1))");
    OpFactor p1 = factor_of("dot(P1, P1)");
    CHECK(!commutes(p1, bfield));
    OpFactor p3 = factor_of("dot(P3, P3)");
    CHECK(commutes(p3, bfield));  // R2 and R1 do not involve index 3
    CHECK(!commutes(p2, bfield)); // because of the R2 in the dot
}

TEST_CASE("canonicalize: cross antisymmetry and commuting-factor sorting") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr z = parse_op("dot(P1, cross(R2, R3) + cross(R3, R2))", ctx);
    CHECK(z.is_zero());

    OpExpr a = parse_op("dot(R2, R3) * dot(R3, R3)", ctx);
    OpExpr b = parse_op("dot(R3, R3) * dot(R2, R3)", ctx);
    CHECK(equals(a, b));

    // noncommuting order is preserved and distinct
    OpExpr pq = parse_op("dot(P2, P2) * invnorm(R2)", ctx);
    OpExpr qp = parse_op("invnorm(R2) * dot(P2, P2)", ctx);
    CHECK(!equals(pq, qp));
}

TEST_CASE("canonicalize is idempotent on a mixed expression") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr e = parse_op(
        "dot(P1, cross(R3, R2)) * invnorm(2 * R2 - R3)"
        " + 1/2 * m1 * dot(R2, Pi(alpha * R1; R2 + R3)) + Hf", ctx);
    OpExpr c1 = canonicalize(e);
    OpExpr c2 = canonicalize(c1);
    CHECK(equals(c1, c2));
    CHECK(serialize(c1) == serialize(c2));
}

TEST_CASE("Pi normalizes to E with coefficient -eps0") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr pi_form = parse_op("1 / eps0 * dot(R2, Pi(alpha * R1))", ctx);
    OpExpr e_form = parse_op("-dot(R2, E(alpha * R1))", ctx);
    CHECK(equals(pi_form, e_form));
}

TEST_CASE("hermitian marker is structural") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr marked = parse_op("hc(dot(P1, cross(R2, B(alpha * R1))))", ctx);
    OpExpr plain = parse_op("dot(P1, cross(R2, B(alpha * R1)))", ctx);
    CHECK(!equals(marked, plain));
    CHECK(equals(marked, marked));
}

TEST_CASE("equality via rational-function normalization") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    // e = (e m1/M + e m2/M) with M = m1+m2
    ctx.defs["M"] = parse_scalar("m1 + m2", fx.ctx());
    OpExpr lhs = parse_op("e * dot(R2, E(alpha * R1))", ctx);
    OpExpr rhs = parse_op("(e * m1 / M + e * m2 / M) * dot(R2, E(alpha * R1))", ctx);
    CHECK(equals(lhs, rhs));
}

TEST_CASE("substitution: hydrogen-style linear map") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    ScalarExpr m1 = ScalarExpr::var(fx.m1), m2 = ScalarExpr::var(fx.m2);
    ScalarExpr M = m1 + m2;
    Substitution s;
    // r1 -> R1 + (m2/M) R2, r2 -> R1 - (m1/M) R2
    VecExpr R1{VecAtom::position(1, Frame::Jacobi)}, R2{VecAtom::position(2, Frame::Jacobi)};
    s.map.push_back({VecAtom::position(1, Frame::Lab), R1 + R2.scaled(m2 / M)});
    s.map.push_back({VecAtom::position(2, Frame::Lab), R1 - R2.scaled(m1 / M)});

    OpExpr diff = parse_op("dot(r1 - r2, E(alpha * R1))", ctx);
    OpExpr expect = parse_op("dot(R2, E(alpha * R1))", ctx);
    CHECK(equals(substitute(diff, s), expect));

    // identity map
    Substitution id;
    CHECK(equals(substitute(diff, id), diff));

    // e(r1 - R) - e(r2 - R) -> e R2 with R the center of mass
    OpExpr dip = parse_op("e * dot(r1, E(alpha * R1)) - e * dot(r2, E(alpha * R1))", ctx);
    OpExpr dip_expected = parse_op("e * dot(R2, E(alpha * R1))", ctx);
    CHECK(equals(substitute(dip, s), dip_expected));
}

TEST_CASE("substitution rejects unregistered symbols in images") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    OpExpr x = parse_op("dot(r1, r1)", ctx);
    Substitution s;
    VecExpr img{VecAtom::position(1, Frame::Jacobi)};
    img = img.scaled(ScalarExpr::var(static_cast<SymbolId>(fx.reg->size() + 5)));
    s.map.push_back({VecAtom::position(1, Frame::Lab), img});
    CHECK_THROWS_AS(substitute(x, s), AlgebraError);
}

TEST_CASE("registry mismatch is rejected") {
    Fixture a, b;
    OpExpr x = parse_op("dot(R2, R2)", a.ctx());
    OpExpr y = parse_op("dot(R2, R2)", b.ctx());
    CHECK_THROWS_AS(add(x, y), AlgebraError);
}

TEST_CASE("serialize/parse round trip on representative expressions") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    const char* cases[] = {
        "e * dot(R2, E(alpha * R1))",
        "mu^2 * 1/2 / (m1 + m2) * hc(dot(P1, cross(R2, B(alpha * R1))))",
        "dot(P1, P1) / (2 * m1) + dot(P2, P2) / (2 * m2) - hbar * c * invnorm(R2) + Hf",
        "1/6 * (m1^2 - m1*m2 + m2^2) / (m1 + m2)^2 * dot(R2, E(alpha * R1; R2^2))",
        "invnorm(R2 + 2 * R3) - invnorm(R2 - 2 * R3)",
    };
    for (auto* text : cases) {
        OpExpr e = parse_op(text, ctx);
        std::string s1 = serialize(e);
        OpExpr back = parse_op(s1, ctx);
        CHECK(equals(e, back));
        CHECK(serialize(back) == s1);
    }
}

TEST_CASE("parser reports locations and suggestions") {
    Fixture fx;
    ParserContext ctx = fx.ctx();
    CHECK_THROWS_AS(parse_op("dot(R2, E(alpha * R1)", ctx), ParseError);
    try {
        parse_op("alpa * dot(R2, R2)", ctx);
        CHECK(false);
    } catch (const ParseError& err) {
        CHECK(std::string(err.what()).find("alpha") != std::string::npos);
    }
    try {
        parse_op("\n\n  dot(R2,, R2)", ctx);
        CHECK(false);
    } catch (const ParseError& err) {
        CHECK(err.line == 3);
    }
}
