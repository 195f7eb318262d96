// Copyright 2026 The balfi-lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// balfi-lab: command-line front end.
//
// Exit codes: 0 affirmative, 1 negative (countermodel or rejected proof),
// 2 inconclusive within the search bound, 3 input or usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "balfi/balfi.hpp"
#include "balfi/firstorder.hpp"
#include "balfi/hilbert.hpp"
#include "balfi/io.hpp"
#include "balfi/modal.hpp"
#include "balfi/modelfind.hpp"
#include "balfi/syntax.hpp"

namespace fs = std::filesystem;
using namespace balfi;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

bool g_json = false;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

std::vector<AxiomTag> parse_tags(const std::vector<std::string>& items) {
  std::vector<AxiomTag> out;
  for (const auto& item : items) {
    auto t = axiom_tag_from_name(item);
    if (!t) throw Error("unknown axiom tag '" + item + "'");
    out.push_back(*t);
  }
  return out;
}

std::string table_text(const Balfi& b, std::span<const Element> table) {
  std::string out;
  const int n = b.algebra().atoms();
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (r) out += " ";
    out += describe(b.algebra().at(r), n) + "->" + describe(table[r], n);
  }
  return out;
}

void print_model(const Balfi& b) {
  std::cout << "atoms: " << b.algebra().atoms() << "\n";
  std::cout << "neg:  " << table_text(b, b.neg_table()) << "\n";
  std::cout << "circ: " << table_text(b, b.circ_table()) << "\n";
}

void print_valuation(const Valuation& v, int n_atoms) {
  std::cout << "valuation:";
  for (const auto& [x, e] : v) std::cout << " " << x << "=" << describe(e, n_atoms);
  std::cout << "\n";
}

// Options shared by the model-search verbs.
struct SearchOptions {
  int atoms = 2;
  std::string calculus;
  std::vector<std::string> require, forbid;
  bool paraconsistent = false;
  bool lfi = false;
  std::size_t random = 0;
  std::uint64_t seed = 0;
  std::size_t limit = 0;
  unsigned jobs = 1;

  void attach(CLI::App* app) {
    app->add_option("--atoms", atoms, "Number of atoms of the powerset algebra")->check(CLI::Range(1, 16));
    app->add_option("--calculus", calculus, "RmbC-family calculus whose tags filter the models");
    app->add_option("--require", require, "Axiom tags the models must satisfy")->delimiter(',');
    app->add_option("--forbid", forbid, "Axiom tags the models must fail")->delimiter(',');
    app->add_flag("--paraconsistent", paraconsistent, "Only paraconsistent models");
    app->add_flag("--lfi", lfi, "Only models witnessing the LFI conditions");
    app->add_option("--random", random, "Sample this many models instead of enumerating");
    app->add_option("--seed", seed, "Seed for --random");
    app->add_option("--limit", limit, "Stop after this many models");
    app->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  }

  SearchSpec spec() const {
    SearchSpec s;
    s.n_atoms = atoms;
    s.require_tags = parse_tags(require);
    if (!calculus.empty()) {
      CalculusSpec calc = calculus_by_name(calculus);
      if (calc.sig != SignatureId::Sigma || calc.first_order) {
        throw Error("calculus " + calc.name + " has no BALFI semantics");
      }
      for (const auto& ax : calc.axioms) {
        if (auto t = axiom_tag_from_name(ax.id)) s.require_tags.push_back(*t);
      }
    }
    s.forbid_tags = parse_tags(forbid);
    s.require_paraconsistent = paraconsistent;
    s.require_lfi = lfi;
    if (random > 0) {
      s.mode = SearchMode::Random;
      s.random_count = random;
      s.seed = seed;
    }
    if (limit > 0) s.limit = limit;
    s.jobs = jobs;
    if (const char* cap = std::getenv("BALFI_LAB_MAX_SPACE")) s.space_cap = std::strtod(cap, nullptr);
    return s;
  }
};

Formula read_formula(const std::string& text) { return parse(text, SignatureId::SigmaE); }

int report_countermodel(const std::optional<Countermodel>& cm, bool exhaustive,
                        const std::string& positive) {
  if (cm) {
    if (g_json) {
      emit(Json{{"result", "countermodel"},
                {"model", balfi_to_json(cm->model)},
                {"valuation", valuation_to_json(cm->valuation)}});
    } else {
      std::cout << "countermodel\n";
      print_model(cm->model);
      print_valuation(cm->valuation, cm->model.algebra().atoms());
    }
    return kNo;
  }
  if (exhaustive) {
    if (g_json) {
      emit(Json{{"result", "holds-in-searched-class"}});
    } else {
      std::cout << positive << " in every searched model (bounded check, not a proof)\n";
    }
    return kYes;
  }
  if (g_json) {
    emit(Json{{"result", "none-within-bound"}});
  } else {
    std::cout << "no countermodel within bound\n";
  }
  return kUnknown;
}

// ---------------------------------------------------------------------------

struct ParseCmd {
  std::string formula, sig = "Sigma";
  bool first_order = false;
  std::vector<std::string> constants;

  int run() const {
    Formula f = Formula::top();
    if (first_order) {
      f = parse_first_order(formula, {constants.begin(), constants.end()});
    } else {
      auto id = signature_from_name(sig);
      if (!id) throw Error("unknown signature '" + sig + "'");
      f = parse(formula, *id);
    }
    if (g_json) {
      emit(Json{{"formula", render(f)}, {"complexity", complexity(f)}, {"depth", depth(f)}});
    } else {
      std::cout << render(f) << "\n";
    }
    return kYes;
  }
};

struct CheckProofCmd {
  std::string script, calculus, mode = "auto";

  int run() const {
    std::optional<CalculusSpec> fallback;
    if (!calculus.empty()) fallback = calculus_by_name(calculus);
    Script s = parse_script(read_file(script), fallback);
    const CalculusSpec calc = !calculus.empty() ? *fallback : calculus_by_name(s.calculus);
    std::string how = mode;
    if (how == "auto") how = s.proof.premises.empty() ? "theorem" : "global";
    std::optional<ProofError> err;
    std::optional<Formula> proved;
    try {
      Regime regime = how == "theorem"  ? Regime::Theorem
                      : how == "global" ? Regime::Global
                      : how == "local"  ? Regime::Local
                                        : throw Error("unknown mode '" + how + "'");
      CheckedProof checked = check_steps(calc, s.proof, regime);
      if (checked.lines.empty()) throw ProofError(ProofError::Kind::ConclusionMismatch, 0, "empty proof");
      proved = checked.lines.back();
      if (s.goal && *s.goal != *proved) {
        throw ProofError(ProofError::Kind::ConclusionMismatch, checked.lines.size(),
                         "proof ends in " + render(*proved) + ", not the goal");
      }
    } catch (const ProofError& e) {
      err = e;
    }
    if (g_json) {
      Json j{{"accepted", !err}, {"calculus", calc.name}, {"mode", how}};
      if (proved && !err) j["conclusion"] = render(*proved);
      if (err) j["error"] = Json{{"kind", name(err->kind())}, {"step", err->step()}, {"message", err->what()}};
      emit(j);
    } else if (err) {
      std::cout << "rejected: " << err->what() << "\n";
    } else {
      std::cout << "accepted (" << how << ", " << calc.name << "): " << render(*proved) << "\n";
    }
    return err ? kNo : kYes;
  }
};

struct ValidityCmd {
  SearchOptions search;
  std::string formula;

  int run() const {
    const SearchSpec spec = search.spec();
    auto cm = find_countermodel(spec, {}, read_formula(formula), ConsequenceMode::Local);
    const bool exhaustive = spec.mode == SearchMode::Exhaustive && !spec.limit;
    return report_countermodel(cm, exhaustive, "valid");
  }
};

struct ConsequenceCmd {
  SearchOptions search;
  std::vector<std::string> premises;
  std::string goal, mode = "local";

  int run() const {
    const SearchSpec spec = search.spec();
    std::vector<Formula> gamma;
    for (const auto& p : premises) gamma.push_back(read_formula(p));
    if (mode != "local" && mode != "global") throw Error("mode must be local or global");
    auto cm = find_countermodel(spec, gamma, read_formula(goal),
                                mode == "local" ? ConsequenceMode::Local : ConsequenceMode::Global);
    const bool exhaustive = spec.mode == SearchMode::Exhaustive && !spec.limit;
    return report_countermodel(cm, exhaustive, "consequence holds");
  }
};

struct FindCmd {
  SearchOptions search;
  std::vector<std::string> premises;
  std::string goal, mode = "local";

  int run() const {
    SearchSpec spec = search.spec();
    if (!goal.empty()) {
      std::vector<Formula> gamma;
      for (const auto& p : premises) gamma.push_back(read_formula(p));
      if (mode != "local" && mode != "global") throw Error("mode must be local or global");
      auto cm = find_countermodel(spec, gamma, read_formula(goal),
                                  mode == "local" ? ConsequenceMode::Local : ConsequenceMode::Global);
      if (!cm) {
        if (g_json) emit(Json{{"result", "none-within-bound"}});
        else std::cout << "no model within bound\n";
        return kUnknown;
      }
      if (g_json) {
        emit(Json{{"result", "found"}, {"model", balfi_to_json(cm->model)},
                  {"valuation", valuation_to_json(cm->valuation)}});
      } else {
        std::cout << balfi_to_json(cm->model).dump() << "\n";
        print_valuation(cm->valuation, cm->model.algebra().atoms());
      }
      return kYes;
    }
    spec.limit = 1;
    auto found = enumerate_balfis(spec);
    if (found.empty()) {
      if (g_json) emit(Json{{"result", "none-within-bound"}});
      else std::cout << "no model within bound\n";
      return kUnknown;
    }
    if (g_json) emit(Json{{"result", "found"}, {"model", balfi_to_json(found.front())}});
    else std::cout << balfi_to_json(found.front()).dump() << "\n";
    return kYes;
  }
};

struct EnumerateCmd {
  SearchOptions search;
  bool count_only = false;

  int run() const {
    std::size_t count = 0;
    for_each_balfi(search.spec(), [&](const Balfi& b) {
      ++count;
      if (!count_only) std::cout << balfi_to_json(b).dump() << "\n";
      return true;
    });
    if (count_only) {
      if (g_json) emit(Json{{"count", count}});
      else std::cout << count << "\n";
    }
    return count > 0 ? kYes : kUnknown;
  }
};

struct TranslateCmd {
  std::string formula;

  int run() const {
    Formula t = translate(parse(formula, SignatureId::Sigma));
    if (g_json) emit(Json{{"translation", render(t)}});
    else std::cout << render(t) << "\n";
    return kYes;
  }
};

struct FrameCheckCmd {
  std::string frame;
  std::vector<std::string> tags;
  int sweep = 0;
  unsigned jobs = 1;

  int run() const {
    std::vector<AxiomTag> selected = parse_tags(tags);
    if (selected.empty()) selected = {AxiomTag::ciw, AxiomTag::ci, AxiomTag::cl, AxiomTag::cf, AxiomTag::ce};
    if (sweep > 0) {
      std::size_t bad = sweep_frames(sweep, jobs, [&](const NeighborhoodFrame& fr) {
        for (AxiomTag t : selected) {
          if (frame_condition(fr, t) != frame_valid_schema(fr, schema_of(t))) return false;
        }
        return true;
      });
      if (g_json) emit(Json{{"worlds", sweep}, {"discrepancies", bad}});
      else std::cout << "frames with a condition/schema discrepancy: " << bad << "\n";
      return bad == 0 ? kYes : kNo;
    }
    if (frame.empty()) throw Error("frame-check needs --frame or --sweep");
    NeighborhoodFrame fr = frame_from_json(Json::parse(read_file(frame)));
    bool all_valid = true;
    Json rows = Json::array();
    for (AxiomTag t : selected) {
      const bool cond = frame_condition(fr, t);
      const bool valid = frame_valid_schema(fr, schema_of(t));
      all_valid = all_valid && valid;
      if (g_json) {
        rows.push_back(Json{{"tag", name(t)}, {"condition", cond}, {"schema_valid", valid}});
      } else {
        std::cout << name(t) << ": condition=" << (cond ? "true" : "false")
                  << " schema_valid=" << (valid ? "true" : "false") << "\n";
      }
    }
    if (g_json) emit(rows);
    return all_valid ? kYes : kNo;
  }
};

struct FoEvalCmd {
  std::string structure, formula;
  std::vector<std::string> assign;
  bool valid = false;

  int run() const {
    FOStructure s = structure_from_json(Json::parse(read_file(structure)));
    std::set<std::string> consts;
    for (const auto& [c, _] : s.consts) consts.insert(c);
    Formula f = parse_first_order(formula, consts);
    s.signature().check(f);
    if (valid) {
      const bool ok = fo_valid_in(s, f);
      if (g_json) emit(Json{{"valid", ok}});
      else std::cout << (ok ? "valid" : "not valid") << "\n";
      return ok ? kYes : kNo;
    }
    Assignment mu;
    for (const auto& a : assign) {
      const auto eq = a.find('=');
      if (eq == std::string::npos) throw Error("assignments look like x=0");
      mu[a.substr(0, eq)] = std::stoi(a.substr(eq + 1));
    }
    Element e = fo_evaluate(s, mu, f);
    if (g_json) emit(Json{{"value", element_to_json(e)}});
    else std::cout << describe(e, s.balfi.algebra().atoms()) << "\n";
    return kYes;
  }
};

struct ExamplesCmd {
  std::string which;

  int run() const {
    std::vector<ExampleName> names;
    if (which.empty()) {
      names.assign(all_examples().begin(), all_examples().end());
    } else {
      auto e = example_from_name(which);
      if (!e) throw Error("unknown example '" + which + "'");
      names.push_back(*e);
    }
    for (ExampleName e : names) {
      Balfi b = reconstruct_example(e);
      if (g_json) {
        emit(Json{{"name", name(e)}, {"model", balfi_to_json(b)},
                  {"paraconsistent", is_paraconsistent(b)}, {"lfi", is_lfi(b)}});
      } else {
        std::cout << name(e) << "\n";
        print_model(b);
      }
    }
    return kYes;
  }
};

struct LibraryCmd {
  std::string write_dir, check_dir;

  int run() const {
    if (!write_dir.empty()) {
      fs::create_directories(write_dir);
      for (const auto& e : theorem_library()) {
        std::ofstream out(fs::path(write_dir) / e.file);
        out << render_script(e.calculus, e.proof, e.goal, {}, e.title);
        std::cout << e.file << "\n";
      }
      return kYes;
    }
    if (check_dir.empty()) throw Error("library needs --write or --check");
    bool all_ok = true;
    for (const auto& entry : fs::directory_iterator(check_dir)) {
      if (entry.path().extension() != ".prf") continue;
      Script s = parse_script(read_file(entry.path().string()));
      const CalculusSpec calc = calculus_by_name(s.calculus);
      Verdict v = s.proof.premises.empty()
                      ? check_global_derivation(calc, {}, s.goal.value_or(Formula::top()), s.proof)
                      : check_global_derivation(calc, s.proof.premises, s.goal.value_or(Formula::top()), s.proof);
      all_ok = all_ok && v.accepted;
      std::cout << entry.path().filename().string() << ": "
                << (v ? "accepted" : std::string("rejected: ") + v.error->what()) << "\n";
    }
    return all_ok ? kYes : kNo;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for paraconsistent logics of formal inconsistency"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Structured output");

  ParseCmd parse_cmd;
  auto* p = app.add_subcommand("parse", "Parse and print a formula");
  p->add_option("--formula", parse_cmd.formula)->required();
  p->add_option("--sig", parse_cmd.sig, "Signature name");
  p->add_flag("--first-order", parse_cmd.first_order);
  p->add_option("--constants", parse_cmd.constants)->delimiter(',');

  CheckProofCmd check_cmd;
  auto* cp = app.add_subcommand("check-proof", "Check a proof script");
  cp->add_option("--script", check_cmd.script)->required()->check(CLI::ExistingFile);
  cp->add_option("--calculus", check_cmd.calculus, "Overrides the script's calculus");
  cp->add_option("--mode", check_cmd.mode, "theorem, global, local or auto");

  ValidityCmd validity_cmd;
  auto* va = app.add_subcommand("validity", "Search for a countermodel to a formula");
  validity_cmd.search.attach(va);
  va->add_option("--formula", validity_cmd.formula)->required();

  ConsequenceCmd cons_cmd;
  auto* co = app.add_subcommand("consequence", "Search for a countermodel to a consequence");
  cons_cmd.search.attach(co);
  co->add_option("--premise", cons_cmd.premises);
  co->add_option("--goal", cons_cmd.goal)->required();
  co->add_option("--mode", cons_cmd.mode, "local or global");

  FindCmd find_cmd;
  auto* fi = app.add_subcommand("find", "Find a model, optionally refuting a goal");
  find_cmd.search.attach(fi);
  fi->add_option("--premise", find_cmd.premises);
  fi->add_option("--goal", find_cmd.goal);
  fi->add_option("--mode", find_cmd.mode, "local or global");

  EnumerateCmd enum_cmd;
  auto* en = app.add_subcommand("enumerate", "Stream models as JSON lines");
  enum_cmd.search.attach(en);
  en->add_flag("--count-only", enum_cmd.count_only);

  TranslateCmd tr_cmd;
  auto* tr = app.add_subcommand("translate", "Translate into the bimodal language");
  tr->add_option("--formula", tr_cmd.formula)->required();

  FrameCheckCmd frame_cmd;
  auto* fc = app.add_subcommand("frame-check", "Frame conditions against schema validity");
  fc->add_option("--frame", frame_cmd.frame)->check(CLI::ExistingFile);
  fc->add_option("--tags", frame_cmd.tags)->delimiter(',');
  fc->add_option("--sweep", frame_cmd.sweep, "Check every frame over this many worlds")->check(CLI::Range(1, 2));
  fc->add_option("--jobs", frame_cmd.jobs)->check(CLI::Range(1, 256));

  FoEvalCmd fo_cmd;
  auto* fo = app.add_subcommand("fo-eval", "Evaluate a first-order formula in a structure");
  fo->add_option("--structure", fo_cmd.structure)->required()->check(CLI::ExistingFile);
  fo->add_option("--formula", fo_cmd.formula)->required();
  fo->add_option("--assign", fo_cmd.assign)->delimiter(',');
  fo->add_flag("--valid", fo_cmd.valid);

  ExamplesCmd ex_cmd;
  auto* ex = app.add_subcommand("examples", "Reconstruct the named example models");
  ex->add_option("--name", ex_cmd.which);

  LibraryCmd lib_cmd;
  auto* li = app.add_subcommand("library", "Write or check the theorem library scripts");
  li->add_option("--write", lib_cmd.write_dir);
  li->add_option("--check", lib_cmd.check_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*p) return parse_cmd.run();
    if (*cp) return check_cmd.run();
    if (*va) return validity_cmd.run();
    if (*co) return cons_cmd.run();
    if (*fi) return find_cmd.run();
    if (*en) return enum_cmd.run();
    if (*tr) return tr_cmd.run();
    if (*fc) return frame_cmd.run();
    if (*fo) return fo_cmd.run();
    if (*ex) return ex_cmd.run();
    if (*li) return lib_cmd.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
