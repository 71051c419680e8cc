#include <doctest.h>

#include "quala/closure.hpp"
#include "quala/errors.hpp"
#include "quala/omega.hpp"
#include "quala/valuation.hpp"
#include "support.hpp"

using namespace quala;
using namespace quala::test;

namespace {

WeightedAutomaton constant_automaton(ValueFunctionTag tag, const char* weight) {
    return wa({"q"}, "q", {"a", "b"},
              {{"q", "a", "q", weight}, {"q", "b", "q", weight}}, tag);
}

ValueFunctionTag tag_half() { return ValueFunctionTag::disc(rat("1/2")); }

}  // namespace

TEST_CASE("max_omega on deterministic Sup and LimSup uses the plain product") {
    auto c1 = constant_automaton(ValueFunctionTag::sup(), "1");
    auto c2 = constant_automaton(ValueFunctionTag::sup(), "2");
    auto m = max_omega(c1, c2);
    CHECK(validate(m).is_deterministic);
    for (const auto& w : sampled_lassos({"a", "b"}, 10, 3))
        CHECK(evaluate_lasso(m, w) == Rational(2));
    CHECK(m.states().size() <= c1.states().size() * c2.states().size());
}

TEST_CASE("max_omega rejects deterministic LimAvg and Disc") {
    CHECK_THROWS_AS(max_omega(motor_a(), motor_b()), ClosureError);
    CHECK_THROWS_AS(max_omega(bank_a1(rat("1/2")), bank_a2(rat("1/2"))),
                    ClosureError);
}

TEST_CASE("max_omega through an initial choice computes the pointwise max") {
    // Nondeterministic variants of the motor models: max equals the
    // coarser model since it dominates pointwise.
    SplitMix64 rng(3);
    auto na = random_nondeterministic(rng, ValueFunctionTag::limavg());
    auto a = motor_a();
    (void)na;
    auto nd_b = wa({"OFF", "ON", "X"}, "OFF", {"on", "off", "slow"},
                   {{"OFF", "off", "OFF", "0"},
                    {"OFF", "off", "X", "0"},
                    {"OFF", "on", "ON", "10"},
                    {"OFF", "slow", "ON", "10"},
                    {"ON", "on", "ON", "2"},
                    {"ON", "off", "OFF", "10"},
                    {"ON", "slow", "OFF", "10"},
                    {"X", "off", "OFF", "0"},
                    {"X", "on", "ON", "10"},
                    {"X", "slow", "ON", "10"}},
                   ValueFunctionTag::limavg());
    auto m = max_omega(a, nd_b);
    for (const auto& w : sampled_lassos(a.alphabet(), 30, 7))
        CHECK(evaluate_lasso(m, w) ==
              std::max(evaluate_lasso(a, w), evaluate_lasso(nd_b, w)));
}

TEST_CASE("max_omega determinizes LimInf products") {
    RandomAutomatonOptions opt;
    opt.states = 2;
    opt.deterministic = true;
    opt.weights = {"0", "1"};
    SplitMix64 rng(5);
    for (int i = 0; i < 10; ++i) {
        auto a = random_automaton(rng, ValueFunctionTag::liminf(), opt);
        auto b = random_automaton(rng, ValueFunctionTag::liminf(), opt);
        auto m = max_omega(a, b);
        CHECK(validate(m).is_deterministic);
        for (const auto& w : sampled_lassos(a.alphabet(), 12, 100 + i))
            CHECK(evaluate_lasso(m, w) ==
                  std::max(evaluate_lasso(a, w), evaluate_lasso(b, w)));
    }
}

TEST_CASE("min_omega on LimInf and Sup") {
    auto c1 = constant_automaton(ValueFunctionTag::liminf(), "1");
    auto c3 = constant_automaton(ValueFunctionTag::liminf(), "3");
    auto m = min_omega(c1, c3);
    CHECK(validate(m).is_deterministic);
    for (const auto& w : sampled_lassos({"a", "b"}, 10, 11))
        CHECK(evaluate_lasso(m, w) == Rational(1));

    SplitMix64 rng(13);
    for (int i = 0; i < 10; ++i) {
        RandomAutomatonOptions opt;
        opt.states = 2;
        opt.deterministic = i % 2 == 0;
        auto a = random_automaton(rng, ValueFunctionTag::sup(), opt);
        auto b = random_automaton(rng, ValueFunctionTag::sup(), opt);
        auto s = min_omega(a, b);
        for (const auto& w : sampled_lassos(a.alphabet(), 10, 200 + i))
            CHECK(evaluate_lasso(s, w) ==
                  std::min(evaluate_lasso(a, w), evaluate_lasso(b, w)));
    }
}

TEST_CASE("min_omega on deterministic LimSup uses the watched-bit product") {
    auto x = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "1"}, {"q", "b", "q", "0"}},
                ValueFunctionTag::limsup());
    auto y = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "0"}, {"q", "b", "q", "1"}},
                ValueFunctionTag::limsup());
    auto m = min_omega(x, y);
    CHECK(validate(m).is_deterministic);
    // Both components see 1 infinitely often on (ab)^w.
    CHECK(evaluate_lasso(m, lasso({}, {"a", "b"})) == Rational(1));
    CHECK(evaluate_lasso(m, lasso({}, {"a"})) == Rational(0));
    CHECK(evaluate_lasso(m, lasso({"b"}, {"b"})) == Rational(0));
    size_t vcount = 2;  // joint weights {0, 1}
    CHECK(m.states().size() <= x.states().size() * y.states().size() *
                                   (static_cast<size_t>(1) << vcount));

    // Nondeterministic route: guessed threshold construction.
    SplitMix64 rng(17);
    for (int i = 0; i < 8; ++i) {
        RandomAutomatonOptions opt;
        opt.states = 2;
        auto a = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        auto b = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        auto s = min_omega(a, b);
        for (const auto& w : sampled_lassos(a.alphabet(), 8, 300 + i))
            CHECK(evaluate_lasso(s, w) ==
                  std::min(evaluate_lasso(a, w), evaluate_lasso(b, w)));
        // Self-min is the identity on values.
        auto self = min_omega(a, a);
        for (const auto& w : sampled_lassos(a.alphabet(), 5, 400 + i))
            CHECK(evaluate_lasso(self, w) == evaluate_lasso(a, w));
    }
}

TEST_CASE("min_omega rejects LimAvg and Disc") {
    CHECK_THROWS_AS(min_omega(fraction_of_a(), fraction_of_a()), ClosureError);
    CHECK_THROWS_AS(min_omega(bank_a1(rat("1/2")), bank_a2(rat("1/2"))),
                    ClosureError);
}

TEST_CASE("complement_omega on deterministic Disc") {
    // Single state, a: 3/4, b: 0 at lambda = 1/2; weights map to
    // 1 - lambda - v.
    auto a = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "3/4"}, {"q", "b", "q", "0"}},
                tag_half());
    auto c = complement_omega(a);
    CHECK(weight_set(c) == std::vector<Rational>{rat("-1/4"), rat("1/2")});
    CHECK(evaluate_lasso(c, lasso({}, {"a"})) == rat("-1/2"));
    CHECK(evaluate_lasso(a, lasso({}, {"a"})) == rat("3/2"));
    for (const auto& w : sampled_lassos({"a", "b"}, 25, 19))
        CHECK(evaluate_lasso(a, w) + evaluate_lasso(c, w) == Rational(1));
}

TEST_CASE("sum with the Disc complement is constantly one") {
    SplitMix64 rng(23);
    for (int i = 0; i < 10; ++i) {
        RandomAutomatonOptions opt;
        opt.deterministic = true;
        auto a = random_automaton(rng, tag_half(), opt);
        auto s = sum_omega(a, complement_omega(a));
        for (const auto& w : sampled_lassos(a.alphabet(), 10, 500 + i))
            CHECK(evaluate_lasso(s, w) == Rational(1));
    }
}

TEST_CASE("complement_omega on nondeterministic LimSup via ranking") {
    // Weights {0,1} encode a Buechi language: value 1 iff infinitely
    // many a's along some run; here the automaton is a plain one-state
    // encoder made nondeterministic with a shadow state.
    auto a = wa({"q", "r"}, "q", {"a", "b"},
                {{"q", "a", "q", "1"}, {"q", "b", "q", "0"},
                 {"q", "b", "r", "0"}, {"r", "a", "r", "1"}, {"r", "b", "r", "0"}},
                ValueFunctionTag::limsup());
    REQUIRE(!validate(a).is_deterministic);
    auto c = complement_omega(a);
    // Cut-point at 1 of the complement is the boolean complement of
    // the cut-point at 1 of the original.
    auto cut = threshold_automaton(c, Rational(1));
    auto original = threshold_automaton(a, Rational(1));
    for (const auto& w : all_lassos({"a", "b"}, 4)) {
        CHECK(lasso_membership(cut, w) != lasso_membership(original, w));
        CHECK(evaluate_lasso(c, w) == Rational(1) - evaluate_lasso(a, w));
    }
}

TEST_CASE("complement_omega on multi-threshold nondeterministic LimSup") {
    SplitMix64 rng(61);
    for (int i = 0; i < 6; ++i) {
        RandomAutomatonOptions opt;
        opt.states = 2;
        opt.weights = {"0", "1/2", "1"};
        auto a = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        auto comp = complement_omega(a);
        CHECK(validate(comp).is_total);
        for (const auto& w : sampled_lassos(a.alphabet(), 10, 1100 + i))
            CHECK(evaluate_lasso(comp, w) == Rational(1) - evaluate_lasso(a, w));
    }
}

TEST_CASE("complement_omega handles constant LimSup automata") {
    auto a = wa({"q"}, "q", {"a", "b"},
                {{"q", "a", "q", "2/5"}, {"q", "a", "q", "2/5"},
                 {"q", "b", "q", "2/5"}},
                ValueFunctionTag::limsup());
    REQUIRE(!validate(a).is_deterministic);
    auto c = complement_omega(a);
    for (const auto& w : sampled_lassos({"a", "b"}, 6, 29))
        CHECK(evaluate_lasso(c, w) == rat("3/5"));
}

TEST_CASE("complement_omega rejects the non-closed classes") {
    CHECK_THROWS_AS(complement_omega(constant_automaton(ValueFunctionTag::sup(), "1")),
                    ClosureError);
    CHECK_THROWS_AS(
        complement_omega(constant_automaton(ValueFunctionTag::liminf(), "1")),
        ClosureError);
    CHECK_THROWS_AS(complement_omega(fraction_of_a()), ClosureError);
    // Deterministic LimSup stays open even though nondeterministic
    // LimSup is closed.
    CHECK_THROWS_AS(
        complement_omega(constant_automaton(ValueFunctionTag::limsup(), "1")),
        ClosureError);
    // Nondeterministic Disc stays open.
    auto nd = wa({"q"}, "q", {"a", "b"},
                 {{"q", "a", "q", "1"}, {"q", "a", "q", "0"}, {"q", "b", "q", "0"}},
                 tag_half());
    CHECK_THROWS_AS(complement_omega(nd), ClosureError);
}

TEST_CASE("sum_omega on the bank models") {
    auto c1 = scale(bank_a1(rat("1/2")), rat("1/2"));
    auto c2 = scale(bank_a2(rat("1/2")), rat("1/2"));
    auto combined = sum_omega(c1, c2);
    CHECK(validate(combined).is_deterministic);
    CHECK(evaluate_lasso(combined, lasso({}, {"g1g2"})) == Rational(14));
    for (const auto& w : sampled_lassos(bank_alphabet(), 20, 31))
        CHECK(evaluate_lasso(combined, w) ==
              evaluate_lasso(c1, w) + evaluate_lasso(c2, w));
}

TEST_CASE("sum_omega on Sup and deterministic LimSup") {
    auto s = sum_omega(constant_automaton(ValueFunctionTag::sup(), "1"),
                       constant_automaton(ValueFunctionTag::sup(), "2"));
    for (const auto& w : sampled_lassos({"a", "b"}, 8, 37))
        CHECK(evaluate_lasso(s, w) == Rational(3));

    auto x = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "1"}, {"q", "b", "q", "0"}},
                ValueFunctionTag::limsup());
    auto y = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "0"}, {"q", "b", "q", "1"}},
                ValueFunctionTag::limsup());
    auto m = sum_omega(x, y);
    CHECK(validate(m).is_deterministic);
    CHECK(evaluate_lasso(m, lasso({}, {"a", "b"})) == Rational(2));
    CHECK(evaluate_lasso(m, lasso({}, {"a"})) == Rational(1));
    size_t pairs = weight_set(x).size() * weight_set(y).size();
    CHECK(m.states().size() <= x.states().size() * y.states().size() *
                                   (static_cast<size_t>(1) << pairs));
}

TEST_CASE("sum_omega on LimInf computes the sum of the floors") {
    // The floors interact: on (ab)^w both components alternate, so the
    // sum of LimInfs is 0 even though every step sums to 1.
    auto x = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "0"}, {"q", "b", "q", "1"}},
                ValueFunctionTag::liminf());
    auto y = wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "1"}, {"q", "b", "q", "0"}},
                ValueFunctionTag::liminf());
    auto m = sum_omega(x, y);
    CHECK(validate(m).is_deterministic);
    CHECK(evaluate_lasso(m, lasso({}, {"a", "b"})) == Rational(0));
    CHECK(evaluate_lasso(m, lasso({}, {"a"})) == Rational(1));
    CHECK(evaluate_lasso(m, lasso({"a"}, {"b"})) == Rational(1));

    SplitMix64 rng(41);
    for (int i = 0; i < 8; ++i) {
        RandomAutomatonOptions opt;
        opt.states = 2;
        opt.weights = {"0", "1/2", "1"};
        opt.deterministic = i % 2 == 0;
        auto a = random_automaton(rng, ValueFunctionTag::liminf(), opt);
        auto b = random_automaton(rng, ValueFunctionTag::liminf(), opt);
        auto s = sum_omega(a, b);
        if (opt.deterministic) CHECK(validate(s).is_deterministic);
        for (const auto& w : sampled_lassos(a.alphabet(), 10, 600 + i))
            CHECK(evaluate_lasso(s, w) ==
                  evaluate_lasso(a, w) + evaluate_lasso(b, w));
    }
}

TEST_CASE("sum_omega on nondeterministic LimSup guesses weight pairs") {
    SplitMix64 rng(43);
    for (int i = 0; i < 8; ++i) {
        RandomAutomatonOptions opt;
        opt.states = 2;
        opt.weights = {"0", "1", "2"};
        auto a = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        auto b = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        auto s = sum_omega(a, b);
        for (const auto& w : sampled_lassos(a.alphabet(), 8, 700 + i))
            CHECK(evaluate_lasso(s, w) ==
                  evaluate_lasso(a, w) + evaluate_lasso(b, w));
    }
}

TEST_CASE("sum_omega rejects LimAvg") {
    CHECK_THROWS_AS(sum_omega(fraction_of_a(), fraction_of_a()), ClosureError);
    SplitMix64 rng(47);
    auto na = random_nondeterministic(rng, ValueFunctionTag::limavg());
    auto nb = random_nondeterministic(rng, ValueFunctionTag::limavg());
    CHECK_THROWS_AS(sum_omega(na, nb), ClosureError);
}

TEST_CASE("closures work over single-symbol alphabets") {
    SplitMix64 rng(67);
    RandomAutomatonOptions opt;
    opt.alphabet = {"t"};
    opt.states = 2;
    opt.weights = {"-1", "0", "2"};
    for (int i = 0; i < 6; ++i) {
        auto a = random_automaton(rng, ValueFunctionTag::limsup(), opt);
        auto b = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        auto m = min_omega(a, b);
        auto s = sum_omega(a, b);
        for (const auto& w : sampled_lassos({"t"}, 4, 1200 + i)) {
            CHECK(evaluate_lasso(m, w) ==
                  std::min(evaluate_lasso(a, w), evaluate_lasso(b, w)));
            CHECK(evaluate_lasso(s, w) ==
                  evaluate_lasso(a, w) + evaluate_lasso(b, w));
        }
        auto comp = complement_omega(b);
        for (const auto& w : sampled_lassos({"t"}, 4, 1300 + i))
            CHECK(evaluate_lasso(comp, w) == Rational(1) - evaluate_lasso(b, w));
    }
}

TEST_CASE("closures refuse partial automata") {
    auto partial = wa({"p", "q"}, "p", {"a", "b"},
                      {{"p", "a", "q", "1"},
                       {"p", "b", "p", "0"},
                       {"q", "a", "q", "1"}},
                      ValueFunctionTag::limsup());
    CHECK_THROWS_AS(min_omega(partial, partial), NotTotal);
    CHECK_THROWS_AS(complement_omega(partial), NotTotal);
}

TEST_CASE("binary omega closures reject mismatched discount factors") {
    CHECK_THROWS_AS(sum_omega(bank_a1(rat("1/2")), bank_a2(rat("1/4"))),
                    LambdaMismatch);
    CHECK_THROWS_AS(
        sum_omega(fraction_of_a(), constant_automaton(ValueFunctionTag::sup(), "1")),
        TagMismatch);
}

TEST_CASE("determinism is preserved where the construction promises it") {
    SplitMix64 rng(53);
    RandomAutomatonOptions opt;
    opt.states = 2;
    opt.weights = {"0", "1"};
    opt.deterministic = true;
    for (int i = 0; i < 6; ++i) {
        auto s1 = random_automaton(rng, ValueFunctionTag::sup(), opt);
        auto s2 = random_automaton(rng, ValueFunctionTag::sup(), opt);
        CHECK(validate(max_omega(s1, s2)).is_deterministic);
        CHECK(validate(min_omega(s1, s2)).is_deterministic);
        CHECK(validate(sum_omega(s1, s2)).is_deterministic);

        auto l1 = random_automaton(rng, ValueFunctionTag::limsup(), opt);
        auto l2 = random_automaton(rng, ValueFunctionTag::limsup(), opt);
        CHECK(validate(max_omega(l1, l2)).is_deterministic);
        CHECK(validate(min_omega(l1, l2)).is_deterministic);
        CHECK(validate(sum_omega(l1, l2)).is_deterministic);

        auto i1 = random_automaton(rng, ValueFunctionTag::liminf(), opt);
        auto i2 = random_automaton(rng, ValueFunctionTag::liminf(), opt);
        CHECK(validate(min_omega(i1, i2)).is_deterministic);
        CHECK(validate(sum_omega(i1, i2)).is_deterministic);

        auto d1 = random_automaton(rng, tag_half(), opt);
        auto d2 = random_automaton(rng, tag_half(), opt);
        CHECK(validate(sum_omega(d1, d2)).is_deterministic);
        CHECK(validate(complement_omega(d1)).is_deterministic);
    }
}

TEST_CASE("construction sizes respect the stated costs") {
    SplitMix64 rng(59);
    RandomAutomatonOptions opt;
    opt.states = 2;
    opt.weights = {"0", "1", "1/2"};
    opt.deterministic = true;
    for (int i = 0; i < 6; ++i) {
        auto l1 = random_automaton(rng, ValueFunctionTag::limsup(), opt);
        auto l2 = random_automaton(rng, ValueFunctionTag::limsup(), opt);
        size_t n1 = l1.states().size(), n2 = l2.states().size();
        std::set<Rational> joint;
        for (const auto& v : weight_set(l1)) joint.insert(v);
        for (const auto& v : weight_set(l2)) joint.insert(v);
        CHECK(min_omega(l1, l2).states().size() <=
              n1 * n2 * (static_cast<size_t>(1) << joint.size()));
        size_t pairs = weight_set(l1).size() * weight_set(l2).size();
        CHECK(sum_omega(l1, l2).states().size() <=
              n1 * n2 * (static_cast<size_t>(1) << pairs));

        auto g1 = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        auto g2 = random_nondeterministic(rng, ValueFunctionTag::limsup(), opt);
        std::set<Rational> joint2;
        for (const auto& v : weight_set(g1)) joint2.insert(v);
        for (const auto& v : weight_set(g2)) joint2.insert(v);
        CHECK(min_omega(g1, g2).states().size() <=
              g1.states().size() * g2.states().size() * 2 * joint2.size() + 1);
        CHECK(sum_omega(g1, g2).states().size() <=
              g1.states().size() * g2.states().size() * 2 *
                      weight_set(g1).size() * weight_set(g2).size() +
                  1);
    }
}
