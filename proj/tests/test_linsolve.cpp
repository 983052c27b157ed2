#include "support.hpp"

#include "dimsolve/dimension.hpp"
#include "dimsolve/kdim.hpp"
#include "dimsolve/linsolve.hpp"

#include <doctest.h>

using namespace dimsolve;
using testsupport::Gen;
using testsupport::poly;

TEST_CASE("solve_linear on the at-most-0 Fibonacci program") {
    const Program k0 = kdim(parse_program_file(DIMSOLVE_DATA "/fib.pl"), 0);
    const LinearVerdict v = solve_linear(k0);
    REQUIRE(v.solved());
    CHECK(inductive(v.model, k0));
    const auto facts = v.model.facts(PredRef("fib", DimIndex::exactly(0)));
    REQUIRE(facts.size() == 1);
    CHECK(equivalent(facts[0].constraint, poly({"A", "B"}, "A>=0, A=<1, B=A")));
}

TEST_CASE("unsafe and non-linear inputs") {
    const LinearVerdict v = solve_linear(parse_program("false :- X=1, p(X).\np(X) :- X=1.\n"));
    CHECK_FALSE(v.solved());
    CHECK(v.reason.find("false") != std::string::npos);

    CHECK_THROWS_AS(solve_linear(parse_program_file(DIMSOLVE_DATA "/fib.pl")), std::invalid_argument);
}

TEST_CASE("a counter stabilizes after widening") {
    const Program p = parse_program("p(X) :- X=0.\np(X) :- p(Y), X=Y+1.\nfalse :- p(X), X<0.\n");
    const LinearVerdict v = solve_linear(p);
    REQUIRE(v.solved());
    CHECK(v.rounds < 10);
    const auto facts = v.model.facts(PredRef("p"));
    REQUIRE(facts.size() == 1);
    CHECK(equivalent(facts[0].constraint, poly({"A"}, "A>=0")));

    LinsolveOptions capped;
    capped.max_rounds = 2;
    capped.delay_retries = 0;
    capped.widen_delay = 50;
    CHECK_FALSE(solve_linear(p, capped).solved());
}

TEST_CASE("thresholds keep a bound the plain widening loses") {
    // the guard X=<10 survives widening, so the query X>=12 stays unreachable
    const Program p = parse_program("p(X) :- X=0.\np(X) :- p(Y), Y=<9, X=Y+1.\nfalse :- p(X), X>=12.\n");
    const LinearVerdict v = solve_linear(p);
    REQUIRE(v.solved());
    CHECK(equivalent(v.model.facts(PredRef("p"))[0].constraint, poly({"A"}, "A>=0, A=<10")));
}

TEST_CASE("step only grows") {
    Gen g(61);
    for (int i = 0; i < 100; ++i) {
        const Program p = kdim(g.program(), 0);
        AbstractState s;
        for (int r = 0; r < 6; ++r) {
            const AbstractState n = step(p, s);
            for (const auto& [pred, poly] : s.interp) {
                const Polyhedron* grown = n.find(pred);
                REQUIRE(grown);
                REQUIRE(entails(poly, *grown));
            }
            s = n;
        }
    }
}

TEST_CASE("solved models are inductive and unsafe programs are never solved") {
    Gen g(62);
    int solved = 0, unsafe = 0;
    for (int i = 0; i < 150; ++i) {
        const Program src = g.program();
        const Program p = g.chance(50) ? kdim(src, 0) : linearize(kdim(src, 1), g.indexed_model(src, 0));
        const LinearVerdict v = solve_linear(p);
        bool reaches_false = false;
        for (const auto& pred : {PredRef("false", DimIndex::exactly(0)), PredRef("false", DimIndex::exactly(1))})
            if (!enumerate(p, pred, 7).empty()) reaches_false = true;
        if (v.solved()) {
            ++solved;
            REQUIRE(inductive(v.model, p));
            REQUIRE_FALSE(reaches_false);
        }
        unsafe += reaches_false;
    }
    MESSAGE("solved " << solved << ", with a derivation of false " << unsafe);
    CHECK(solved > 30);
    CHECK(unsafe > 10);
}
