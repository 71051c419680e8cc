// quala: exact operations on weighted automata over finite and
// ultimately periodic infinite words.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "quala/analysis.hpp"
#include "quala/closure.hpp"
#include "quala/errors.hpp"
#include "quala/io.hpp"
#include "quala/omega.hpp"
#include "quala/prng.hpp"
#include "quala/valuation.hpp"
#include "quala/words.hpp"

using namespace quala;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;     // parse / validation errors
constexpr int kExitClosure = 2;   // provably impossible operation / not isolated
constexpr int kExitResource = 3;  // resource caps

struct Output {
    std::optional<unsigned> decimal;  // add display-only decimal fields

    void rational(Json& doc, const char* key, const Rational& v) const {
        doc[key] = v.str_pq();
        if (decimal) doc[std::string(key) + "_decimal"] = v.decimal(*decimal);
    }

    void print(const Json& doc) const { std::cout << doc.dump(2) << "\n"; }
};

WeightedAutomaton load_weighted(const std::string& path) {
    WeightedAutomaton a = parse_automaton(load_json_file(path));
    require_total(a);
    return a;
}

void write_or_embed(const Json& automaton_doc, const std::string& out_path,
                    Json& result) {
    result["automaton"] = automaton_doc;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw SyntaxError("cannot write file '" + out_path + "'");
        out << automaton_doc.dump(2) << "\n";
    }
}

// A parallel copy of one initial transition makes the automaton
// formally nondeterministic without changing any run values; used to
// request the nondeterministic-class constructions explicitly.
WeightedAutomaton as_nondeterministic(const WeightedAutomaton& a) {
    if (!validate(a).is_deterministic) return a;
    std::vector<Transition> trans = a.transitions();
    for (const auto& t : a.transitions()) {
        if (t.from == a.initial()) {
            trans.push_back(t);
            break;
        }
    }
    return {a.states(), a.initial(), a.alphabet(), std::move(trans), a.tag()};
}

std::vector<LassoWord> sample_words(const WeightedAutomaton& a, long samples,
                                    std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<LassoWord> out;
    for (long i = 0; i < samples; ++i)
        out.push_back(sample_lasso(a.alphabet(), rng, 4, 4));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"exact quantitative languages as weighted automata"};
    app.require_subcommand(1);

    Output output;
    unsigned decimal_digits = 0;
    app.add_option("--decimal", decimal_digits,
                   "add decimal approximations with this many digits");

    std::string file_a, file_b, out_path, word_text, op_name;
    std::string eta_text, eps_text, delta_text = "1/100", c_text;
    long max_depth = 25, samples = 100, max_positions = 10000;
    std::uint64_t seed = 0;
    bool as_nondet = false;

    auto* validate_cmd =
        app.add_subcommand("validate", "totality / determinism report");
    validate_cmd->add_option("file", file_a)->required();

    auto* eval_cmd = app.add_subcommand("eval", "exact value of a word");
    eval_cmd->add_option("file", file_a)->required();
    eval_cmd
        ->add_option("--word", word_text, "finite: \"a b a\"; lasso: \"a (b a)\"")
        ->required();
    eval_cmd->add_option("--max-positions", max_positions,
                         "cap on |u|+|v| for lasso evaluation");

    auto* compose_cmd =
        app.add_subcommand("compose", "max, min or sum of two automata");
    compose_cmd->add_option("op", op_name)
        ->required()
        ->check(CLI::IsMember({"max", "min", "sum"}));
    compose_cmd->add_option("fileA", file_a)->required();
    compose_cmd->add_option("fileB", file_b)->required();
    compose_cmd->add_option("-o,--out", out_path);
    compose_cmd->add_flag(
        "--as-nondet", as_nondet,
        "treat the inputs as members of the nondeterministic class");

    auto* complement_cmd = app.add_subcommand("complement", "automaton for 1 - L");
    complement_cmd->add_option("file", file_a)->required();
    complement_cmd->add_option("-o,--out", out_path);
    complement_cmd->add_flag("--as-nondet", as_nondet);

    auto* shift_cmd = app.add_subcommand("shift", "automaton for c + L");
    shift_cmd->add_option("file", file_a)->required();
    shift_cmd->add_option("-c", c_text, "rational constant p/q")->required();
    shift_cmd->add_option("-o,--out", out_path);

    auto* scale_cmd = app.add_subcommand("scale", "automaton for c * L, c >= 0");
    scale_cmd->add_option("file", file_a)->required();
    scale_cmd->add_option("-c", c_text, "rational constant p/q")->required();
    scale_cmd->add_option("-o,--out", out_path);

    auto* reduce_cmd = app.add_subcommand(
        "reduce-bool", "LimAvg with weights in [0,1] to weights {0,1}");
    reduce_cmd->add_option("file", file_a)->required();
    reduce_cmd->add_option("-o,--out", out_path);

    auto* cutpoint_cmd = app.add_subcommand(
        "cutpoint", "Buechi automaton for {w : L(w) >= eta} at an isolated eta");
    cutpoint_cmd->add_option("file", file_a)->required();
    cutpoint_cmd->add_option("--eta", eta_text)->required();
    cutpoint_cmd->add_option("--eps", eps_text,
                             "isolation margin (required for disc automata)");
    cutpoint_cmd->add_option("-o,--out", out_path);

    auto* isolate_cmd = app.add_subcommand("isolate", "isolation check / probe");
    isolate_cmd->add_option("file", file_a)->required();
    isolate_cmd->add_option("--eta", eta_text)->required();
    isolate_cmd->add_option("--delta", delta_text, "probe tolerance (disc)");
    isolate_cmd->add_option("--max-depth", max_depth, "probe depth cap (disc)");

    auto* perturb_cmd = app.add_subcommand("perturb", "seeded eps-approximation");
    perturb_cmd->add_option("file", file_a)->required();
    perturb_cmd->add_option("--eps", eps_text)->required();
    perturb_cmd->add_option("--seed", seed)->required();
    perturb_cmd->add_option("-o,--out", out_path);

    auto* dsup_cmd =
        app.add_subcommand("dsup", "sampled sup-distance between two automata");
    dsup_cmd->add_option("fileA", file_a)->required();
    dsup_cmd->add_option("fileB", file_b)->required();
    dsup_cmd->add_option("--samples", samples);
    dsup_cmd->add_option("--seed", seed);

    auto* top_cmd = app.add_subcommand("top", "top value and witness lasso");
    top_cmd->add_option("file", file_a)->required();

    auto* diff_cmd = app.add_subcommand(
        "diff", "sampled max |L_A - L_B| and first refinement violation");
    diff_cmd->add_option("fileA", file_a)->required();
    diff_cmd->add_option("fileB", file_b)->required();
    diff_cmd->add_option("--samples", samples);
    diff_cmd->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (decimal_digits > 0) output.decimal = decimal_digits;

    if (validate_cmd->parsed()) {
        WeightedAutomaton a = parse_automaton(load_json_file(file_a));
        ValidationReport report = validate(a);
        Json doc;
        doc["operation"] = "validate";
        doc["input"] = file_a;
        doc["is_total"] = report.is_total;
        doc["is_deterministic"] = report.is_deterministic;
        Json violations = Json::array();
        for (const auto& [q, s] : report.violations)
            violations.push_back(Json{{"state", q}, {"symbol", s}});
        doc["violations"] = std::move(violations);
        output.print(doc);
        return report.is_total ? kExitOk : kExitUsage;
    }

    if (eval_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        Word w = parse_word(word_text);
        Json doc;
        doc["operation"] = "eval";
        doc["input"] = file_a;
        doc["word"] = word_text;
        if (auto* fw = std::get_if<FiniteWord>(&w)) {
            output.rational(doc, "value", evaluate_finite(a, *fw));
        } else {
            auto& lw = std::get<LassoWord>(w);
            if (static_cast<long>(lw.positions()) > max_positions)
                throw TooLarge("lasso exceeds --max-positions");
            output.rational(doc, "value", evaluate_lasso(a, lw));
        }
        output.print(doc);
        return kExitOk;
    }

    if (compose_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        WeightedAutomaton b = load_weighted(file_b);
        if (as_nondet) {
            a = as_nondeterministic(a);
            b = as_nondeterministic(b);
        }
        auto build = [&]() {
            if (a.tag().finite_words()) {
                if (op_name == "max") return max_finite(a, b);
                if (op_name == "min") return min_finite(a, b);
                return sum_finite(a, b);
            }
            if (op_name == "max") return max_omega(a, b);
            if (op_name == "min") return min_omega(a, b);
            return sum_omega(a, b);
        };
        WeightedAutomaton composed = build();
        Json doc;
        doc["operation"] = "compose " + op_name;
        doc["inputs"] = Json::array({file_a, file_b});
        doc["states"] = composed.states().size();
        write_or_embed(emit_automaton(composed, op_name), out_path, doc);
        output.print(doc);
        return kExitOk;
    }

    if (complement_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        if (as_nondet) a = as_nondeterministic(a);
        WeightedAutomaton composed =
            a.tag().finite_words() ? complement_finite(a) : complement_omega(a);
        Json doc;
        doc["operation"] = "complement";
        doc["input"] = file_a;
        doc["states"] = composed.states().size();
        write_or_embed(emit_automaton(composed, "complement"), out_path, doc);
        output.print(doc);
        return kExitOk;
    }

    if (shift_cmd->parsed() || scale_cmd->parsed()) {
        bool shifting = shift_cmd->parsed();
        WeightedAutomaton a = load_weighted(file_a);
        Rational c = Rational::parse(c_text);
        WeightedAutomaton moved = shifting ? shift(a, c) : scale(a, c);
        Json doc;
        doc["operation"] = shifting ? "shift" : "scale";
        doc["input"] = file_a;
        output.rational(doc, "c", c);
        write_or_embed(emit_automaton(moved, doc["operation"].get<std::string>()),
                       out_path, doc);
        output.print(doc);
        return kExitOk;
    }

    if (reduce_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        WeightedAutomaton reduced = boolean_weight_reduction(a);
        Json doc;
        doc["operation"] = "reduce-bool";
        doc["input"] = file_a;
        doc["granularity"] = boolean_reduction_granularity(a).str();
        doc["states"] = reduced.states().size();
        write_or_embed(emit_automaton(reduced, "reduced"), out_path, doc);
        output.print(doc);
        return kExitOk;
    }

    if (cutpoint_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        Rational eta = Rational::parse(eta_text);
        CutpointAutomaton cut = [&] {
            if (a.tag().kind() == ValueFunction::LimAvg)
                return cutpoint_dlavg(a, eta);
            if (a.tag().kind() == ValueFunction::Disc) {
                if (eps_text.empty())
                    throw UnsupportedTag("disc cut-points need --eps");
                return cutpoint_ddisc(a, eta, Rational::parse(eps_text));
            }
            throw UnsupportedTag("cutpoint needs a limavg or disc automaton");
        }();
        Json doc;
        doc["operation"] = "cutpoint";
        doc["input"] = file_a;
        doc["source_type"] = cut.source_tag;
        output.rational(doc, "eta", cut.eta);
        if (cut.eps) output.rational(doc, "eps", *cut.eps);
        if (cut.depth) doc["depth"] = *cut.depth;
        write_or_embed(emit_boolean_automaton(cut.automaton, "cutpoint"), out_path,
                       doc);
        output.print(doc);
        return kExitOk;
    }

    if (isolate_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        Rational eta = Rational::parse(eta_text);
        IsolationResult res = [&] {
            if (a.tag().kind() == ValueFunction::LimAvg)
                return isolation_check_dlavg(a, eta);
            if (a.tag().kind() == ValueFunction::Disc)
                return isolation_probe_disc(a, eta, Rational::parse(delta_text),
                                            static_cast<int>(max_depth));
            throw UnsupportedTag("isolate needs a limavg or disc automaton");
        }();
        Json doc;
        doc["operation"] = "isolate";
        doc["input"] = file_a;
        output.rational(doc, "eta", eta);
        switch (res.verdict) {
            case IsolationResult::Verdict::Isolated:
                doc["verdict"] = "isolated";
                if (res.margin) output.rational(doc, "margin", *res.margin);
                output.print(doc);
                return kExitOk;
            case IsolationResult::Verdict::NotIsolated:
                doc["verdict"] = "not-isolated";
                doc["witness"] = res.witness->str();
                output.rational(doc, "witness_value", *res.witness_value);
                output.print(doc);
                return kExitClosure;
            case IsolationResult::Verdict::Unknown:
                doc["verdict"] = "unknown";
                doc["depth_reached"] = res.depth_reached;
                output.print(doc);
                return kExitResource;
        }
    }

    if (perturb_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        Rational eps = Rational::parse(eps_text);
        WeightedAutomaton moved = epsilon_approximation(a, eps, seed);
        Json doc;
        doc["operation"] = "perturb";
        doc["input"] = file_a;
        output.rational(doc, "eps", eps);
        doc["seed"] = seed;
        write_or_embed(emit_automaton(moved, "perturbed"), out_path, doc);
        output.print(doc);
        return kExitOk;
    }

    if (dsup_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        WeightedAutomaton b = load_weighted(file_b);
        auto words = sample_words(a, samples, seed);
        Rational best(0);
        std::optional<LassoWord> where;
        for (const auto& w : words) {
            Rational d = (evaluate_lasso(a, w) - evaluate_lasso(b, w)).abs();
            if (!where || d > best) {
                best = d;
                where = w;
            }
        }
        Json doc;
        doc["operation"] = "dsup";
        doc["inputs"] = Json::array({file_a, file_b});
        doc["samples"] = samples;
        doc["seed"] = seed;
        output.rational(doc, "sampled_dsup", best);
        if (where) doc["attained_at"] = where->str();
        output.print(doc);
        return kExitOk;
    }

    if (top_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        TopValue top = top_value(a);
        Json doc;
        doc["operation"] = "top";
        doc["input"] = file_a;
        output.rational(doc, "value", top.value);
        doc["witness"] = top.witness.str();
        output.print(doc);
        return kExitOk;
    }

    if (diff_cmd->parsed()) {
        WeightedAutomaton a = load_weighted(file_a);
        WeightedAutomaton b = load_weighted(file_b);
        auto words = sample_words(a, samples, seed);
        Rational best(0);
        std::optional<LassoWord> violation;
        Rational vleft(0), vright(0);
        for (const auto& w : words) {
            Rational left = evaluate_lasso(a, w);
            Rational right = evaluate_lasso(b, w);
            best = std::max(best, (left - right).abs());
            if (!violation && left > right) {
                violation = w;
                vleft = left;
                vright = right;
            }
        }
        Json doc;
        doc["operation"] = "diff";
        doc["inputs"] = Json::array({file_a, file_b});
        doc["samples"] = samples;
        doc["seed"] = seed;
        output.rational(doc, "max_abs_difference", best);
        if (violation) {
            Json v;
            v["word"] = violation->str();
            output.rational(v, "left", vleft);
            output.rational(v, "right", vright);
            doc["violation"] = std::move(v);
        } else {
            doc["violation"] = nullptr;
        }
        output.print(doc);
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ClosureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitClosure;
    } catch (const NotIsolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitClosure;
    } catch (const TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
