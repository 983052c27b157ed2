#include "support.hpp"

#include "dimsolve/linsolve.hpp"

#include <doctest.h>

using namespace dimsolve;
using testsupport::Gen;
using testsupport::grid_points;
using testsupport::poly;

namespace {

const std::vector<std::string> XYZ{"X", "Y", "Z"};

bool no_redundant(const Polyhedron& c) {
    const auto& cs = c.constraints();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::vector<AtomicConstraint> rest;
        for (std::size_t j = 0; j < cs.size(); ++j)
            if (j != i) rest.push_back(cs[j]);
        if (entails(Polyhedron(c.dims(), rest), cs[i])) return false;
    }
    return true;
}

// Random polyhedron that also fits in the [-3,3] box, so integer
// feasibility is decided on a finite set.
Polyhedron boxed(Gen& g, int max_constraints) {
    Polyhedron c = g.polyhedron(XYZ, max_constraints, 4, 4);
    c.add_all(poly(XYZ, "X>=-3, X=<3, Y>=-3, Y=<3, Z>=-3, Z=<3").constraints());
    return c;
}

}  // namespace

TEST_CASE("atomic constraints normalize over the integers") {
    const LinExpr x = LinExpr::var("X");
    CHECK(to_string(AtomicConstraint(x, Rel::Lt, LinExpr(Rational(3)))) == "-X>=-2");
    CHECK(to_string(AtomicConstraint(x * 2, Rel::Le, LinExpr(Rational(5)))) == "-X>=-2");
    CHECK(AtomicConstraint(x * 2, Rel::Eq, LinExpr(Rational(3))).is_contradiction());
    CHECK(AtomicConstraint(LinExpr(Rational(1)), Rel::Le, LinExpr(Rational(2))).is_tautology());
    CHECK(AtomicConstraint(x * 2, Rel::Eq, LinExpr::var("Y") * 2) == AtomicConstraint(x, Rel::Eq, LinExpr::var("Y")));
    CHECK(AtomicConstraint(-x, Rel::Eq, LinExpr::var("Y")) == AtomicConstraint(x, Rel::Eq, -LinExpr::var("Y")));
}

TEST_CASE("sat examples") {
    CHECK_FALSE(sat(poly({"A", "B"}, "A>5, B<A, A=<1")));
    CHECK(sat(poly({"A", "B"}, "A>=0, A=<1, B=A")));
    const Polyhedron cyc = poly(XYZ, "X-Y=<0, Y-Z=<0, Z-X=<-1");
    CHECK_FALSE(sat(cyc));
    CHECK(grid_points(Polyhedron(XYZ, {}), -3, 3).size() == 343);
    CHECK(grid_points(poly(XYZ, "X-Y=<0, Y-Z=<0"), -3, 3).size() > 0);
    // the grid oracle agrees: no point of [-3,3]^3 satisfies all three
    int found = 0;
    testsupport::for_each_point(XYZ, -3, 3, [&](const auto& pt) {
        const Rational x = pt.at("X"), y = pt.at("Y"), z = pt.at("Z");
        if (x - y <= 0 && y - z <= 0 && z - x <= -1) ++found;
    });
    CHECK(found == 0);
}

TEST_CASE("entails examples") {
    CHECK(entails(poly({"A", "B"}, "A>=2, B=A"), poly({"B"}, "B>=1")));
    CHECK_FALSE(entails(poly({"A"}, "A>=0"), poly({"A"}, "A>=1")));
    const std::vector<std::string> abcd{"A", "B", "C", "D"};
    CHECK(entails(poly(abcd, "-A>= -2, A>1, A-C=2, B-D=1"), poly({"A"}, "A>1")));
    CHECK_THROWS_AS(entails(poly({"A"}, "A>=0"), poly({"B"}, "B>=0")), DimensionError);
}

TEST_CASE("project examples") {
    const Polyhedron p1 = project(poly({"X", "Y"}, "X=<Y, Y=<5"), std::vector<std::string>{"X"});
    CHECK(equivalent(p1, poly({"X"}, "X=<5")));
    const Polyhedron p2 = project(poly({"A", "A2", "B2"}, "A>1, A2=A-2, B2>=0, B2=<4"), std::vector<std::string>{"A", "A2"});
    CHECK(equivalent(p2, poly({"A", "A2"}, "A>1, A2=A-2")));
    const Polyhedron p3 = project(poly({"X", "Y", "Z"}, "X=Y+Z, Y>=0, Y=<1, Z>=0, Z=<1"), std::vector<std::string>{"X"});
    // oracle: integer y, z in [0,1] give x in {0,1,2}
    CHECK(equivalent(p3, poly({"X"}, "X>=0, X=<2")));
}

TEST_CASE("hull examples") {
    CHECK(equivalent(hull(poly({"X"}, "X=0"), poly({"X"}, "X=1")), poly({"X"}, "X>=0, X=<1")));
    const Polyhedron c = poly({"A"}, "A>=3");
    CHECK(hull(Polyhedron::empty({"A"}), c) == c);
    CHECK(hull(c, Polyhedron::empty({"A"})) == c);
    const Polyhedron h = hull(poly({"A", "B"}, "A=2, B=2"), poly({"A", "B"}, "A=3, B=3"));
    CHECK(equivalent(h, poly({"A", "B"}, "A>=2, A=<3, B=A")));
    const auto pts = grid_points(h, -5, 5);
    CHECK(pts.size() == 2);
    CHECK_THROWS_AS(hull(poly({"A"}, "A=0"), poly({"B"}, "B=0")), DimensionError);
}

TEST_CASE("widen examples") {
    CHECK(equivalent(widen(poly({"X"}, "X>=0, X=<1"), poly({"X"}, "X>=0, X=<2")), poly({"X"}, "X>=0")));
    const Polyhedron c = poly({"A", "B"}, "A>=0, A=<1, B=A");
    CHECK(equivalent(widen(c, c), c));

    // First two Kleene iterates of the Fibonacci program with fib(0)=0, fib(1)=1.
    const Program fib = parse_program(
        "fib(A,B) :- A>=0, A=<1, B=A.\n"
        "fib(A,B) :- A>1, A2=A-2, fib(A2,B2), A1=A-1, fib(A1,B1), B=B1+B2.\n");
    LinsolveOptions no_widen;
    no_widen.widen_delay = 1000;
    const AbstractState s1 = step(fib, {}, no_widen);
    const AbstractState s2 = step(fib, s1, no_widen);
    const Polyhedron it1 = *s1.find(PredRef("fib"));
    const Polyhedron it2 = *s2.find(PredRef("fib"));
    CHECK(equivalent(it1, c));
    // hand computation: the second iterate adds fib(2) = 1
    CHECK(equivalent(it2, hull(c, poly({"A", "B"}, "A=2, B=1"))));
    // c as written: A>=0 and B=<A survive, A=<1 and B>=A do not
    const Polyhedron w = widen(c, it2);
    CHECK(equivalent(w, poly({"A", "B"}, "A>=0, B=<A")));
    CHECK_FALSE(entails(w, poly({"A"}, "A=<1")));
    // the engine's own form of the first iterate bounds B instead of A
    const Polyhedron w1 = widen(it1, it2);
    CHECK(equivalent(w1, poly({"A", "B"}, "B>=0, B=<1, B=<A")));
    CHECK_FALSE(entails(w1, poly({"A"}, "A=<1")));
}

TEST_CASE("widen_h79 keeps implied relations that standard widening loses") {
    // Point (2,1) widened against the segment to (3,2): the line survives.
    const Polyhedron a = poly({"A", "B"}, "A=2, B=1");
    const Polyhedron b = poly({"A", "B"}, "A=3, B=2");
    const Polyhedron h = hull(a, b);
    CHECK(equivalent(widen(a, h), poly({"A", "B"}, "A>=2, B>=1")));
    CHECK(equivalent(widen_h79(a, h), poly({"A", "B"}, "A-B=1, A>=2")));
}

TEST_CASE("simplify examples") {
    CHECK(simplify(poly({"A"}, "A>=0, A>=-1")) == poly({"A"}, "A>=0"));
    CHECK(simplify(poly({"A"}, "A>=0, A<0")).is_empty());
    // linearized fib(1) clause of the Fibonacci program with fib(1)=1
    const std::vector<std::string> v{"A", "B", "C", "D", "E", "F"};
    const Polyhedron raw = poly(v, "A>1, C=A-2, E=A-1, B=F+D, E>=0, E=<1, F=1");
    const Polyhedron proj = simplify(project(raw, std::vector<std::string>{"A", "B", "C", "D"}));
    const Polyhedron printed = poly({"A", "B", "C", "D"}, "-A>= -2, A>1, A-C=2, B-D=1");
    CHECK(equivalent(proj, printed));
    CHECK(no_redundant(proj));
    CHECK(proj.constraints().size() <= printed.constraints().size());
}

TEST_CASE("sat agrees with the integer grid on bounded systems") {
    Gen g(11);
    int agree_sat = 0;
    for (int i = 0; i < 300; ++i) {
        const Polyhedron c = boxed(g, 4);
        const bool grid = !grid_points(c, -3, 3).empty();
        REQUIRE(sat(c) == grid);
        agree_sat += grid;
    }
    CHECK(agree_sat > 20);
}

TEST_CASE("sat is implied by a grid point on unbounded systems") {
    Gen g(12);
    for (int i = 0; i < 300; ++i) {
        const Polyhedron c = g.polyhedron(XYZ, 4);
        if (!grid_points(c, -3, 3).empty()) REQUIRE(sat(c));
        if (!sat(c)) REQUIRE(grid_points(c, -4, 4).empty());
    }
}

TEST_CASE("entails is sound on the grid, reflexive and transitive") {
    Gen g(13);
    int entailed = 0;
    for (int i = 0; i < 300; ++i) {
        const Polyhedron a = g.polyhedron(XYZ, 4, 3, 3);
        const Polyhedron b = g.polyhedron(XYZ, 2, 3, 3);
        const Polyhedron c = g.polyhedron(XYZ, 2, 3, 3);
        REQUIRE(entails(a, a));
        if (entails(a, b)) {
            ++entailed;
            for (const auto& pt : grid_points(a, -3, 3)) REQUIRE(b.contains(pt));
            if (entails(b, c)) REQUIRE(entails(a, c));
        } else if (!a.is_empty()) {
            // on bounded inputs a counterexample exists in the box
            Polyhedron ab = a;
            ab.add_all(poly(XYZ, "X>=-3, X=<3, Y>=-3, Y=<3, Z>=-3, Z=<3").constraints());
            if (entails(ab, b) == false) {
                bool witness = false;
                for (const auto& pt : grid_points(ab, -3, 3)) witness = witness || !b.contains(pt);
                REQUIRE(witness);
            }
        }
    }
    CHECK(entailed > 10);
}

TEST_CASE("project is sound and, for unit coefficients, complete") {
    Gen g(14);
    for (int i = 0; i < 300; ++i) {
        std::vector<AtomicConstraint> cs;
        const int n = g.range(1, 4);
        for (int j = 0; j < n; ++j) {
            LinExpr e = g.expr({"X", "Y"}, 3, 4);
            e.add_term("Z", g.range(-1, 1));
            cs.push_back(AtomicConstraint(e, g.chance(15) ? Rel::Eq : Rel::Le, LinExpr()));
        }
        const Polyhedron c(XYZ, cs);
        const std::vector<std::string> keep{"X", "Y"};
        const Polyhedron p = project(c, keep);
        for (const auto& pt : grid_points(c, -3, 3)) REQUIRE(p.contains({{"X", pt.at("X")}, {"Y", pt.at("Y")}}));
        for (const auto& pt : grid_points(p, -3, 3)) {
            Polyhedron fixed = c;
            fixed.add_all(poly(XYZ, "X=" + pt.at("X").get_str() + ", Y=" + pt.at("Y").get_str()).constraints());
            REQUIRE(sat(fixed));
        }
    }
}

TEST_CASE("hull contains both arguments and is tight on points") {
    Gen g(15);
    for (int i = 0; i < 300; ++i) {
        const Polyhedron a = g.polyhedron(XYZ, 3);
        const Polyhedron b = g.polyhedron(XYZ, 3);
        const Polyhedron h = hull(a, b);
        REQUIRE(entails(a, h));
        REQUIRE(entails(b, h));
        for (const auto& pt : grid_points(a, -2, 2)) REQUIRE(h.contains(pt));
    }
    for (int i = 0; i < 100; ++i) {
        // two integer points: the hull is the segment, so its integer points
        // are exactly those on the segment
        const int x0 = g.range(-3, 3), y0 = g.range(-3, 3), x1 = g.range(-3, 3), y1 = g.range(-3, 3);
        const Polyhedron a = poly({"X", "Y"}, "X=" + std::to_string(x0) + ", Y=" + std::to_string(y0));
        const Polyhedron b = poly({"X", "Y"}, "X=" + std::to_string(x1) + ", Y=" + std::to_string(y1));
        const Polyhedron h = hull(a, b);
        testsupport::for_each_point({"X", "Y"}, -4, 4, [&](const auto& pt) {
            const Rational x = pt.at("X"), y = pt.at("Y");
            const Rational cross = (x - x0) * (y1 - y0) - (y - y0) * (x1 - x0);
            const bool between = (x - x0) * (x - x1) <= 0 && (y - y0) * (y - y1) <= 0;
            REQUIRE(h.contains(pt) == (cross == 0 && between));
        });
    }
}

TEST_CASE("widening is an upper bound and chains stabilize") {
    Gen g(16);
    for (int i = 0; i < 200; ++i) {
        const Polyhedron a = g.polyhedron(XYZ, 4);
        const Polyhedron b = hull(a, g.polyhedron(XYZ, 3));
        const Polyhedron w = widen(a, b);
        const Polyhedron wh = widen_h79(a, b);
        REQUIRE(entails(b, w));
        REQUIRE(entails(b, wh));
        REQUIRE(entails(wh, w));

        // ascending chain through random joins
        if (a.is_empty()) continue;
        Polyhedron cur = a;
        std::size_t halves = 0;
        for (const auto& c : a.constraints()) halves += c.is_equality() ? 2 : 1;
        std::size_t steps = 0;
        for (;;) {
            const Polyhedron next = widen(cur, hull(cur, g.polyhedron(XYZ, 3)));
            ++steps;
            if (equivalent(next, cur)) break;
            cur = next;
            REQUIRE(steps <= halves + 1);
        }
    }
}

TEST_CASE("simplify preserves the polyhedron and leaves no redundant constraint") {
    Gen g(17);
    for (int i = 0; i < 300; ++i) {
        const Polyhedron c = g.polyhedron(XYZ, 5);
        const Polyhedron s = simplify(c);
        REQUIRE(equivalent(c, s));
        REQUIRE(no_redundant(s));
        REQUIRE(simplify(s) == s);
    }
}
