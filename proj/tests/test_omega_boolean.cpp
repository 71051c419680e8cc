#include <doctest.h>

#include "quala/errors.hpp"
#include "quala/omega.hpp"
#include "quala/valuation.hpp"
#include "support.hpp"

using namespace quala;
using namespace quala::test;

namespace {

// One-state Buechi automaton over {a, b} accepting words with
// infinitely many a's.
BooleanOmegaAutomaton infinitely_many_a() {
    return {{"q"},
            "q",
            {"a", "b"},
            {{"q", "a", "q", true}, {"q", "b", "q", false}},
            AcceptanceKind::Buchi};
}

BooleanOmegaAutomaton universal_buchi() {
    return {{"q"},
            "q",
            {"a", "b"},
            {{"q", "a", "q", true}, {"q", "b", "q", true}},
            AcceptanceKind::Buchi};
}

// Random total Buechi automaton.
BooleanOmegaAutomaton random_nbw(SplitMix64& rng, int states) {
    std::vector<State> names;
    for (int i = 0; i < states; ++i) names.push_back("s" + std::to_string(i));
    std::vector<BooleanTransition> trans;
    for (const auto& q : names)
        for (const Symbol s : {"a", "b"}) {
            size_t fan = 1 + rng.below(2);
            for (size_t k = 0; k < fan; ++k)
                trans.push_back({q, s, names[rng.below(names.size())],
                                 rng.below(2) == 0});
        }
    return {names, "s0", {"a", "b"}, std::move(trans), AcceptanceKind::Buchi};
}

}  // namespace

TEST_CASE("threshold_automaton carves cut-point languages") {
    auto a = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "1"}, {"q", "b", "q", "0"}},
                ValueFunctionTag::limsup());
    auto cut = threshold_automaton(a, Rational(1));
    CHECK(cut.kind() == AcceptanceKind::Buchi);
    CHECK(lasso_membership(cut, lasso({}, {"a"})));
    CHECK(lasso_membership(cut, lasso({}, {"a", "b"})));
    CHECK(!lasso_membership(cut, lasso({"a"}, {"b"})));

    // Threshold at or below the least weight accepts everything.
    auto low = threshold_automaton(a, Rational(0));
    for (const auto& w : all_lassos({"a", "b"}, 3))
        CHECK(lasso_membership(low, w));

    // Threshold above the largest weight accepts nothing.
    auto high = threshold_automaton(a, Rational(2));
    CHECK(nbw_emptiness(high));

    auto li = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "1"}, {"q", "b", "q", "0"}},
                 ValueFunctionTag::liminf());
    CHECK(threshold_automaton(li, Rational(1)).kind() == AcceptanceKind::CoBuchi);
    CHECK_THROWS_AS(threshold_automaton(fraction_of_a(), Rational(1)),
                    UnsupportedTag);
}

TEST_CASE("membership matches threshold semantics") {
    SplitMix64 rng(7);
    for (int i = 0; i < 20; ++i) {
        for (const auto& tag :
             {ValueFunctionTag::limsup(), ValueFunctionTag::liminf()}) {
            RandomAutomatonOptions opt;
            opt.states = 2;
            opt.deterministic = i % 2 == 0;
            auto a = random_automaton(rng, tag, opt);
            for (const auto& v : weight_set(a)) {
                auto cut = threshold_automaton(a, v);
                for (const auto& w : sampled_lassos(a.alphabet(), 6, 100 + i))
                    CHECK(lasso_membership(cut, w) == (evaluate_lasso(a, w) >= v));
            }
        }
    }
}

TEST_CASE("threshold languages shrink as the threshold rises") {
    SplitMix64 rng(11);
    for (int i = 0; i < 10; ++i) {
        auto a = random_automaton(rng, ValueFunctionTag::limsup());
        auto values = weight_set(a);
        for (size_t k = 0; k + 1 < values.size(); ++k) {
            auto lo = threshold_automaton(a, values[k]);
            auto hi = threshold_automaton(a, values[k + 1]);
            for (const auto& w : sampled_lassos(a.alphabet(), 8, 200 + i))
                if (lasso_membership(hi, w)) CHECK(lasso_membership(lo, w));
        }
    }
}

TEST_CASE("emptiness and witnesses") {
    CHECK(!nbw_emptiness(universal_buchi()));
    auto witness = accepting_witness(infinitely_many_a());
    REQUIRE(witness.has_value());
    CHECK(lasso_membership(infinitely_many_a(), *witness));
    CHECK(!lasso_membership(infinitely_many_a(), lasso({}, {"b"})));

    BooleanOmegaAutomaton empty{{"q"},
                                "q",
                                {"a", "b"},
                                {{"q", "a", "q", false}, {"q", "b", "q", false}},
                                AcceptanceKind::Buchi};
    CHECK(nbw_emptiness(empty));
}

TEST_CASE("nbw_complement on the canonical examples") {
    // Complement of the universal language is empty.
    CHECK(nbw_emptiness(nbw_complement(universal_buchi())));

    // Complement of "infinitely many a's" is "finitely many a's".
    auto comp = nbw_complement(infinitely_many_a());
    CHECK(lasso_membership(comp, lasso({}, {"b"})));
    CHECK(lasso_membership(comp, lasso({"a", "a"}, {"b"})));
    CHECK(!lasso_membership(comp, lasso({}, {"a", "b"})));
    CHECK(!lasso_membership(comp, lasso({}, {"a"})));
}

TEST_CASE("nbw_complement is a language complement on random automata") {
    SplitMix64 rng(13);
    auto lassos = all_lassos({"a", "b"}, 4);
    for (int i = 0; i < 40; ++i) {
        auto b = random_nbw(rng, 1 + static_cast<int>(rng.below(3)));
        auto c = nbw_complement(b);
        CHECK(c.is_total());
        for (const auto& w : lassos)
            CHECK(lasso_membership(b, w) != lasso_membership(c, w));
    }
}

TEST_CASE("ncw_determinize") {
    // Two-state coBuechi automaton for "eventually only a's".
    BooleanOmegaAutomaton ncw{{"q", "r"},
                              "q",
                              {"a", "b"},
                              {{"q", "a", "q", false},
                               {"q", "b", "q", false},
                               {"q", "a", "r", true},
                               {"r", "a", "r", true},
                               {"r", "b", "q", false}},
                              AcceptanceKind::CoBuchi};
    auto dcw = ncw_determinize(ncw);
    CHECK(dcw.is_deterministic());
    CHECK(dcw.is_total());
    CHECK(lasso_membership(dcw, lasso({}, {"a"})));
    CHECK(!lasso_membership(dcw, lasso({}, {"a", "b"})));
    CHECK(lasso_membership(dcw, lasso({"b"}, {"a"})));
    for (const auto& w : all_lassos({"a", "b"}, 4))
        CHECK(lasso_membership(dcw, w) == lasso_membership(ncw, w));
    CHECK(dcw.states().size() <= 9);  // 3^n bound at n = 2

    // Already-deterministic input stays language-equal.
    BooleanOmegaAutomaton det{{"q"},
                              "q",
                              {"a", "b"},
                              {{"q", "a", "q", true}, {"q", "b", "q", false}},
                              AcceptanceKind::CoBuchi};
    auto d2 = ncw_determinize(det);
    for (const auto& w : all_lassos({"a", "b"}, 3))
        CHECK(lasso_membership(d2, w) == lasso_membership(det, w));

    // Empty language stays empty.
    BooleanOmegaAutomaton none{{"q"},
                               "q",
                               {"a", "b"},
                               {{"q", "a", "q", false}, {"q", "b", "q", false}},
                               AcceptanceKind::CoBuchi};
    CHECK(nbw_emptiness(ncw_determinize(none)));
}

TEST_CASE("ncw_determinize agrees with membership on random automata") {
    SplitMix64 rng(17);
    auto lassos = all_lassos({"a", "b"}, 4);
    for (int i = 0; i < 30; ++i) {
        auto b = random_nbw(rng, 1 + static_cast<int>(rng.below(3)));
        BooleanOmegaAutomaton ncw{b.states(), b.initial(), b.alphabet(),
                                  b.transitions(), AcceptanceKind::CoBuchi};
        auto dcw = ncw_determinize(ncw);
        CHECK(dcw.is_deterministic());
        for (const auto& w : lassos)
            CHECK(lasso_membership(dcw, w) == lasso_membership(ncw, w));
    }
}

TEST_CASE("nlinf_determinize") {
    // Initial choice between constant loops of value 1 and 2.
    auto choice = wa({"i", "one", "two"}, "i", {"a", "b"},
                     {{"i", "a", "one", "1"}, {"i", "b", "one", "1"},
                      {"i", "a", "two", "2"}, {"i", "b", "two", "2"},
                      {"one", "a", "one", "1"}, {"one", "b", "one", "1"},
                      {"two", "a", "two", "2"}, {"two", "b", "two", "2"}},
                     ValueFunctionTag::liminf());
    auto det = nlinf_determinize(choice);
    CHECK(validate(det).is_deterministic);
    for (const auto& w : sampled_lassos({"a", "b"}, 10, 23))
        CHECK(evaluate_lasso(det, w) == Rational(2));

    // Deterministic input: language unchanged.
    auto d = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "1"}, {"q", "b", "q", "0"}},
                ValueFunctionTag::liminf());
    auto dd = nlinf_determinize(d);
    for (const auto& w : sampled_lassos({"a", "b"}, 10, 29))
        CHECK(evaluate_lasso(dd, w) == evaluate_lasso(d, w));

    CHECK_THROWS_AS(nlinf_determinize(fraction_of_a()), UnsupportedTag);
}

TEST_CASE("nlinf_determinize is pointwise equal on random automata") {
    SplitMix64 rng(31);
    for (int i = 0; i < 20; ++i) {
        RandomAutomatonOptions opt;
        opt.states = 2 + static_cast<int>(rng.below(2));
        opt.weights = {"0", "1/2", "1"};
        auto a = random_nondeterministic(rng, ValueFunctionTag::liminf(), opt);
        auto det = nlinf_determinize(a);
        CHECK(validate(det).is_deterministic);
        CHECK(validate(det).is_total);
        for (const auto& w : sampled_lassos(a.alphabet(), 10, 900 + i))
            CHECK(evaluate_lasso(det, w) == evaluate_lasso(a, w));
    }
}

TEST_CASE("nlinf_determinize matches breakpoint determinization on {0,1} weights") {
    SplitMix64 rng(37);
    for (int i = 0; i < 15; ++i) {
        RandomAutomatonOptions opt;
        opt.states = 2;
        opt.weights = {"0", "1"};
        auto a = random_nondeterministic(rng, ValueFunctionTag::liminf(), opt);
        auto det = nlinf_determinize(a);
        auto dcw = ncw_determinize(threshold_automaton(a, Rational(1)));
        for (const auto& w : sampled_lassos(a.alphabet(), 8, 1000 + i))
            CHECK((evaluate_lasso(det, w) >= Rational(1)) ==
                  lasso_membership(dcw, w));
    }
}
