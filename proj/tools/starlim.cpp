// starlim: exact nonstandard arithmetic and limit engines on the command line.
// Every command prints deterministic output for a fixed argv: JSON by default,
// a terser human form with --format text. Exit codes: 0 success, 1 usage or
// parse errors, 2 domain errors, 3 internal invariant violations.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "starlim/starlim.hpp"

using json = nlohmann::ordered_json;
using namespace starlim;

namespace {

struct GlobalOptions {
  std::string fragment_text;
  std::string format = "json";
  bool one_based = true;

  UltraFragment fragment() const { return UltraFragment::parse(fragment_text); }
  bool json_mode() const { return format == "json"; }
};

Rat require_rat(const std::string& text, const std::string& what) {
  auto q = parse_rat(text);
  if (!q) throw SyntaxError(what + " must be a rational 'p/q'", SourceSpan{0, text.size()});
  return *q;
}

Nat display_index(Nat nu, const GlobalOptions& opt) {
  // With one-based display the reader's index set starts at 1, and a witness
  // of 0 means the same tail as a witness of 1.
  return (opt.one_based && nu == 0) ? 1 : nu;
}

json germ_json(const Germ& g) {
  return json{{"expr", g.format()},
              {"modulus", g.modulus()},
              {"threshold", g.threshold()}};
}

json omega_json(const OmegaWitness& w) {
  json j;
  j["omega"] = w.omega.germ().format();
  j["class"] = w.residue_class;
  j["class_limit"] = w.class_limit ? json(to_string(*w.class_limit)) : json(nullptr);
  return j;
}

json verdict_json(const LimitVerdict& v) {
  json j;
  j["outcome"] = v.converges() ? "converges" : "diverges";
  if (v.converges()) j["limit"] = to_string(*v.limit);
  if (v.bad_omega || v.bad_epsilon) {
    json ce;
    if (v.bad_omega) {
      json bo = omega_json(v.bad_omega->primary);
      if (v.bad_omega->conflicting) bo["conflicting"] = omega_json(*v.bad_omega->conflicting);
      ce["bad_omega"] = bo;
    }
    if (v.bad_epsilon) {
      ce["bad_epsilon"] = json{{"epsilon", to_string(v.bad_epsilon->epsilon)},
                               {"s_epsilon", v.bad_epsilon->s_set.to_text()},
                               {"cofinite", v.bad_epsilon->s_set.is_cofinite()}};
    }
    j["counterexample"] = ce;
  }
  j["engines"] = v.engines;
  return j;
}

json classification_json(const Classification& c) {
  return json{{"infinitesimal", c.infinitesimal},
              {"finite", c.finite},
              {"infinitely_large", c.infinitely_large},
              {"standard", c.standard},
              {"standard_value", c.standard_value ? json(to_string(*c.standard_value)) : json(nullptr)}};
}

const char* ordering_text(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
  }
  return "";
}

const char* frechet_text(FrechetOrdering o) {
  switch (o) {
    case FrechetOrdering::LessEq: return "less_eq";
    case FrechetOrdering::GreaterEq: return "greater_eq";
    case FrechetOrdering::Equal: return "equal";
    case FrechetOrdering::Incomparable: return "incomparable";
  }
  return "";
}

json trace_json(const ProofTrace& t) {
  json steps = json::array();
  for (const auto& st : t.steps) {
    json s;
    switch (st.op) {
      case ProofTrace::Step::Op::Define:
        s["op"] = "define";
        s["name"] = st.name;
        s["set"] = st.set->to_text();
        break;
      case ProofTrace::Step::Op::Intersect:
        s["op"] = "intersect";
        s["name"] = st.name;
        s["inputs"] = st.inputs;
        s["set"] = st.set->to_text();
        break;
      case ProofTrace::Step::Op::SubsetCheck:
        s["op"] = "subset_check";
        s["inputs"] = st.inputs;
        s["result"] = *st.verdict;
        break;
      case ProofTrace::Step::Op::CofiniteCheck:
        s["op"] = "cofinite_check";
        s["name"] = st.name;
        s["result"] = *st.verdict;
        s["witness"] = st.witness ? json(*st.witness) : json(nullptr);
        break;
    }
    steps.push_back(s);
  }
  return json{{"steps", steps}, {"conclusion", t.conclusion}, {"replay_ok", t.replay()}};
}

void emit(const json& j, const GlobalOptions& opt, const std::string& text_form) {
  if (opt.json_mode())
    std::cout << j.dump() << "\n";
  else
    std::cout << text_form << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"exact nonstandard arithmetic, Frechet/ultrafilter machinery and limit engines"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  GlobalOptions opt;
  app.add_option("--fragment", opt.fragment_text,
                 "ultrafilter fragment as 'm:r,...' (default: the zero tower)");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_flag("--one-based,!--zero-based", opt.one_based,
               "report sequence indices for a 1-based reader (default on)");

  std::string expr_a, expr_b, expr_c, set_a, set_b, limit_text, eps_text, op_name;
  unsigned universe = 3;

  auto* limit_cmd = app.add_subcommand("limit", "decide convergence with all three engines");
  limit_cmd->add_option("expr", expr_a, "sequence expression")->required();

  auto* stdpart_cmd = app.add_subcommand("std-part", "standard part of a finite germ");
  stdpart_cmd->add_option("expr", expr_a)->required();

  auto* classify_cmd = app.add_subcommand("classify", "infinitesimal/finite/infinitely-large flags");
  classify_cmd->add_option("expr", expr_a)->required();

  auto* compare_cmd = app.add_subcommand("compare", "fragment order and Frechet partial order");
  compare_cmd->add_option("x", expr_a)->required();
  compare_cmd->add_option("y", expr_b)->required();

  auto* witness_cmd = app.add_subcommand("witness-nu", "minimal nu with |a(n)-L| < eps beyond it");
  witness_cmd->add_option("expr", expr_a)->required();
  witness_cmd->add_option("--L", limit_text, "candidate limit")->required();
  witness_cmd->add_option("--eps", eps_text, "band width")->required();

  auto* seps_cmd = app.add_subcommand("s-epsilon", "the index set {n : |a(n)-L| < eps}");
  seps_cmd->add_option("expr", expr_a)->required();
  seps_cmd->add_option("--L", limit_text)->required();
  seps_cmd->add_option("--eps", eps_text)->required();

  auto* squeeze_cmd = app.add_subcommand("squeeze", "squeeze-theorem proof trace for a <= x <= b");
  squeeze_cmd->add_option("lower", expr_a)->required();
  squeeze_cmd->add_option("middle", expr_b)->required();
  squeeze_cmd->add_option("upper", expr_c)->required();
  squeeze_cmd->add_option("--L", limit_text)->required();
  squeeze_cmd->add_option("--eps", eps_text)->required();

  auto* star_cmd = app.add_subcommand("star-member", "membership of a germ in *A");
  star_cmd->add_option("expr", expr_a)->required();
  star_cmd->add_option("set", set_a, "real set like '(0,2] {3} [5,inf)'")->required();

  auto* compose_cmd = app.add_subcommand("compose", "hypersequence value a(omega)");
  compose_cmd->add_option("expr", expr_a)->required();
  compose_cmd->add_option("omega", expr_b, "hypernatural index expression")->required();

  auto* setop_cmd = app.add_subcommand("set-op", "boolean algebra of eventually periodic sets");
  setop_cmd->add_option("--op", op_name, "union|intersect|difference|complement")
      ->required()
      ->check(CLI::IsMember({"union", "intersect", "difference", "complement"}));
  setop_cmd->add_option("a", set_a, "set literal {T=..; mod=..; res=..; exc=..}")->required();
  setop_cmd->add_option("b", set_b, "second set literal");

  auto* measure_cmd = app.add_subcommand("measure", "two-valued measure of a set under the fragment");
  measure_cmd->add_option("set", set_a)->required();

  auto* model_cmd = app.add_subcommand("model-check", "exhaustive finite-universe theorem checks");
  model_cmd->add_option("--k", universe, "universe size (1..4)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  UltraFragment frag = opt.fragment();

  if (limit_cmd->parsed()) {
    LimitVerdict v = limit_verdict(parse_germ(expr_a));
    std::string text = v.converges() ? "converges to " + to_string(*v.limit) : "diverges";
    emit(verdict_json(v), opt, text);
  } else if (stdpart_cmd->parsed()) {
    Rat st = parse_germ(expr_a).standard_part(frag);
    emit(json{{"st", to_string(st)}}, opt, to_string(st));
  } else if (classify_cmd->parsed()) {
    Classification c = parse_germ(expr_a).classify(frag);
    std::string text;
    if (c.infinitesimal) text += "infinitesimal ";
    if (c.finite) text += "finite ";
    if (c.infinitely_large) text += "infinitely-large ";
    text += c.standard ? "standard" : "nonstandard";
    emit(classification_json(c), opt, text);
  } else if (compare_cmd->parsed()) {
    Germ x = parse_germ(expr_a);
    Germ y = parse_germ(expr_b);
    const char* ord = ordering_text(x.compare(y, frag));
    const char* fre = frechet_text(x.frechet_compare(y));
    emit(json{{"order", ord}, {"frechet", fre}}, opt, std::string(ord) + " (frechet: " + fre + ")");
  } else if (witness_cmd->parsed()) {
    Nat nu = witness_nu(parse_germ(expr_a), require_rat(limit_text, "--L"), require_rat(eps_text, "--eps"));
    Nat shown = display_index(nu, opt);
    emit(json{{"nu", shown}}, opt, std::to_string(shown));
  } else if (seps_cmd->parsed()) {
    NatSet s = s_epsilon(parse_germ(expr_a), require_rat(limit_text, "--L"), require_rat(eps_text, "--eps"));
    auto w = s.frechet_witness();
    json j{{"set", s.to_text()},
           {"cofinite", s.is_cofinite()},
           {"witness", w ? json(display_index(*w, opt)) : json(nullptr)}};
    emit(j, opt, s.to_text() + (s.is_cofinite() ? " (cofinite)" : " (not cofinite)"));
  } else if (squeeze_cmd->parsed()) {
    ProofTrace t = squeeze_check(parse_germ(expr_a), parse_germ(expr_c), parse_germ(expr_b),
                                 require_rat(limit_text, "--L"), require_rat(eps_text, "--eps"));
    emit(trace_json(t), opt,
         std::string("conclusion: S_eps cofinite; steps: ") + std::to_string(t.steps.size()));
  } else if (star_cmd->parsed()) {
    bool in = star_member(parse_germ(expr_a), RealSetDesc::parse(set_a), frag);
    emit(json{{"member", in}}, opt, in ? "member" : "not a member");
  } else if (compose_cmd->parsed()) {
    Germ a = parse_germ(expr_a);
    HyperNat omega = HyperNat::certify(parse_germ(expr_b), frag);
    Germ composed = compose(a, omega);
    emit(germ_json(composed), opt, composed.format());
  } else if (setop_cmd->parsed()) {
    NatSet a = NatSet::parse_text(set_a);
    NatSet result;
    if (op_name == "complement") {
      if (!set_b.empty())
        throw SyntaxError("complement takes a single set", SourceSpan{0, set_b.size()});
      result = a.complement();
    } else {
      if (set_b.empty()) throw SyntaxError("missing second set", SourceSpan{0, 0});
      NatSet b = NatSet::parse_text(set_b);
      result = op_name == "union" ? a.unite(b)
               : op_name == "intersect" ? a.intersect(b)
                                        : a.difference(b);
    }
    emit(json{{"result", result.to_text()}}, opt, result.to_text());
  } else if (measure_cmd->parsed()) {
    NatSet a = NatSet::parse_text(set_a);
    Measure01 mu(frag);
    emit(json{{"measure", mu(a)}, {"decide", frag.decide(a)}}, opt, std::to_string(mu(a)));
  } else if (model_cmd->parsed()) {
    auto filters = models::enumerate_filters(universe);
    auto ultras = models::enumerate_ultrafilters(universe);
    bool extensions_ok = true;
    for (const auto& f : filters) extensions_ok = extensions_ok && !models::extend_filter(f).empty();
    bool measures_ok = true;
    bool dichotomy_ok = true;
    bool union_ok = true;
    std::uint32_t full = models::full_mask(universe);
    for (const auto& u : ultras) {
      measures_ok = measures_ok && models::check_measure(u).all();
      dichotomy_ok = dichotomy_ok && models::is_ultrafilter(u);
      for (std::uint32_t a = 0; a <= full && union_ok; ++a) {
        for (std::uint32_t b = 0; b <= full && union_ok; ++b) {
          if (models::has(u, a | b) && !(models::has(u, a) || models::has(u, b))) union_ok = false;
          if ((a & b) == 0 && (a | b) == full && !(models::has(u, a) != models::has(u, b)))
            union_ok = false;
        }
      }
    }
    bool count_filters_ok = filters.size() == (1u << universe) - 1;
    bool count_ultras_ok = ultras.size() == universe;
    json checks{{"filter_count", count_filters_ok ? "pass" : "fail"},
                {"ultrafilter_count", count_ultras_ok ? "pass" : "fail"},
                {"every_filter_extends", extensions_ok ? "pass" : "fail"},
                {"dichotomy", dichotomy_ok ? "pass" : "fail"},
                {"union_lemma", union_ok ? "pass" : "fail"},
                {"measure_correspondence", measures_ok ? "pass" : "fail"}};
    json j{{"k", universe},
           {"filters", filters.size()},
           {"ultrafilters", ultras.size()},
           {"theorems", checks}};
    bool all = count_filters_ok && count_ultras_ok && extensions_ok && dichotomy_ok &&
               union_ok && measures_ok;
    emit(j, opt,
         "filters=" + std::to_string(filters.size()) + " ultrafilters=" + std::to_string(ultras.size()) +
             (all ? " all-pass" : " FAIL"));
    if (!all) return 3;
  }
  return 0;
}

json error_json(const std::string& kind, const std::string& message,
                std::optional<SourceSpan> span = std::nullopt) {
  json e{{"kind", kind}, {"message", message}};
  if (span) e["span"] = json{{"begin", span->begin}, {"end", span->end}};
  return json{{"error", e}};
}

}  // namespace

int main(int argc, char** argv) {
  bool json_mode = true;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--format" && i + 1 < argc && std::string(argv[i + 1]) == "text")
      json_mode = false;
    if (std::string(argv[i]) == "--format=text") json_mode = false;
  }
  auto report = [&](const json& j, const std::string& plain) {
    if (json_mode)
      std::cout << j.dump() << "\n";
    else
      std::cerr << plain << "\n";
  };
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    report(error_json(e.kind(), e.what(), e.span()),
           "error: " + std::string(e.kind()) + " at [" + std::to_string(e.span().begin) + "," +
               std::to_string(e.span().end) + "): " + e.what());
    return 1;
  } catch (const Error& e) {
    report(error_json(e.kind(), e.what()), "error: " + std::string(e.kind()) + ": " + e.what());
    return 2;
  } catch (const std::logic_error& e) {
    report(error_json("InternalInvariant", e.what()), std::string("internal error: ") + e.what());
    return 3;
  }
}
