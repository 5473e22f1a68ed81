#include "selfsim/cli.hpp"

#include "selfsim/algebra.hpp"
#include "selfsim/contracting.hpp"
#include "selfsim/error.hpp"
#include "selfsim/measure.hpp"
#include "selfsim/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace selfsim::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group = "grigorchuk";
  std::string element;
  std::string elements;
  std::string expr;
  std::string lhs;
  std::string rhs;
  std::string word;
  std::string prefix;
  std::string period;
  int depth = -1;
  std::size_t max_states = Limits{}.max_states;
  int max_depth = Limits{}.max_depth;
  bool json_output = false;
  bool amenable = false;
};

GroupSpec resolve_group(const std::string &name) {
  if (auto spec = builtin_spec(name)) return *spec;
  std::ifstream in(name);
  if (!in) throw UsageError("unknown group '" + name + "' (not a built-in and not a readable file)");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = name.substr(name.find_last_of('/') + 1);
  return parse_spec(buf.str(), stem);
}

class Session {
 public:
  Session(const Options &opt, std::ostream &out)
      : opt_(opt), out_(out), group_(resolve_group(opt.group)), limits_{opt.max_states, opt.max_depth} {
    if (opt.max_states == 0 || opt.max_depth <= 0) throw UsageError("limits must be positive");
  }

  int dispatch(const std::string &command) {
    static const std::map<std::string, void (Session::*)()> table{
        {"fix-measure", &Session::fix_measure}, {"count-fixed", &Session::count_fixed_cmd},
        {"defect", &Session::defect},           {"classify", &Session::classify},
        {"nucleus", &Session::nucleus},         {"afd-check", &Session::afd_check},
        {"y-measure", &Session::y_measure_cmd}, {"kms", &Session::kms},
        {"kms-check", &Session::kms_check},     {"trace-check", &Session::trace_check},
        {"gram", &Session::gram},               {"an-distance", &Session::an_distance},
        {"act", &Session::act},                 {"report", &Session::report},
    };
    (this->*table.at(command))();
    return 0;
  }

 private:
  GroupWord element() const {
    if (opt_.element.empty()) throw UsageError("--element is required");
    return group_.normalize(group_.parse(opt_.element));
  }

  int depth() const {
    if (opt_.depth < 0) throw UsageError("--depth is required");
    return opt_.depth;
  }

  std::string fmt(const GroupWord &g) const { return group_.format(g); }

  void emit(const json &j, const std::string &text) {
    if (opt_.json_output)
      out_ << j.dump(2) << "\n";
    else
      out_ << text << "\n";
  }

  static std::string measure_text(const MeasureReport &m) {
    if (m.exact) return format_rational(*m.exact);
    return "[" + format_rational(m.lower) + ", " + format_rational(m.upper) + "] (counting bounds, depth " +
           std::to_string(m.depth_used) + ")";
  }

  void fix_measure() {
    GroupWord g = element();
    MeasureReport m = fixed_measure(group_, g, limits_);
    json j = measure_json(m);
    j["element"] = fmt(g);
    emit(j, measure_text(m));
  }

  void count_fixed_cmd() {
    GroupWord g = element();
    int n = depth();
    Integer all = count_fixed(group_, g, n, limits_);
    TaintedCount nontrivial = count_fixed_nontrivial(group_, g, n, limits_);
    json j{{"element", fmt(g)},
           {"depth", n},
           {"count", all.get_str()},
           {"nontrivial", nontrivial.count.get_str()},
           {"tainted", nontrivial.tainted}};
    emit(j, all.get_str());
  }

  void defect() {
    GroupWord g = element();
    int n = depth();
    TaintedCount c = count_fixed_nontrivial(group_, g, n, limits_);
    Rational d = generic_defect(group_, g, n, limits_);
    json j{{"element", fmt(g)}, {"depth", n}, {"defect", rational_json(d)}, {"tainted", c.tainted}};
    emit(j, format_rational(d) + (c.tainted ? " (upper bound: undecided sections counted)" : ""));
  }

  void classify() {
    GenericityReport r = genericity_classify(group_, limits_);
    json tested = json::array();
    std::ostringstream text;
    text << genericity_name(r.verdict) << (r.covers_group ? " (covers G via nucleus)" : " (tested set only)");
    for (const ElementDefect &d : r.tested) {
      tested.push_back({{"element", fmt(d.element)},
                        {"exact", d.exact},
                        {"lower", rational_json(d.lower)},
                        {"upper", rational_json(d.upper)}});
      text << "\n  " << fmt(d.element) << ": ";
      if (d.exact)
        text << format_rational(d.lower);
      else
        text << "[" << format_rational(d.lower) << ", " << format_rational(d.upper) << "]";
    }
    emit({{"verdict", std::string(genericity_name(r.verdict))},
          {"covers_group", r.covers_group},
          {"tested", tested}},
         text.str());
  }

  void nucleus() {
    NucleusOutcome n = compute_nucleus(group_, limits_);
    if (!n.nucleus) {
      emit({{"status", "Inconclusive"}, {"diagnostic", n.diagnostic}}, "Inconclusive: " + n.diagnostic);
      return;
    }
    json elems = json::array();
    std::string text = "{";
    for (std::size_t i = 0; i < n.nucleus->elements.size(); ++i) {
      elems.push_back(fmt(n.nucleus->elements[i].word));
      text += (i ? ", " : "") + fmt(n.nucleus->elements[i].word);
    }
    text += "} witness_depth=" + std::to_string(n.nucleus->witness_depth);
    emit({{"status", "Found"}, {"elements", elems}, {"witness_depth", n.nucleus->witness_depth}}, text);
  }

  void afd_check() {
    std::vector<GroupWord> elems;
    if (!opt_.element.empty()) {
      elems.push_back(element());
    } else {
      NucleusOutcome n = compute_nucleus(group_, limits_);
      if (!n.nucleus) {
        emit({{"status", "Inconclusive"}, {"diagnostic", n.diagnostic}}, "Inconclusive: " + n.diagnostic);
        return;
      }
      elems = n.nucleus->words();
    }
    AfdResult r = afd_hypothesis_check(group_, elems, limits_);
    json w = json::object();
    std::string text(afd_status_name(r.status));
    for (const AfdWitness &a : r.witnesses) {
      std::string u = format_word(a.word, group_.alphabet_size());
      w[fmt(a.element)] = u;
      text += "\n  " + fmt(a.element) + ": \"" + u + "\"";
    }
    json j{{"status", std::string(afd_status_name(r.status))}, {"witnesses", w}};
    if (r.counterexample) {
      j["counterexample"] = fmt(*r.counterexample);
      text += "\n  counterexample: " + fmt(*r.counterexample);
    }
    emit(j, text);
  }

  void y_measure_cmd() {
    GroupWord g = element();
    MeasureReport m = y_measure(group_, g, limits_);
    json j = measure_json(m);
    j["element"] = fmt(g);
    emit(j, measure_text(m));
  }

  StarAlgebra algebra() const { return StarAlgebra(group_, limits_); }

  Monomial monomial(const StarAlgebra &alg, const std::string &text, const char *flag) const {
    if (text.empty()) throw UsageError(std::string(flag) + " is required");
    AlgebraElement e = alg.parse(text);
    if (e.size() != 1 || e.terms().begin()->second.coefficient != 1)
      throw UsageError(std::string(flag) + " must be a single monomial with coefficient 1");
    return e.terms().begin()->second.monomial;
  }

  void kms() {
    if (opt_.expr.empty()) throw UsageError("--expr is required");
    StarAlgebra alg = algebra();
    AlgebraElement e = alg.parse(opt_.expr);
    Rational v = alg.psi(e);
    emit({{"expr", alg.format(e)}, {"psi", rational_json(v)}}, format_rational(v));
  }

  void pair_check(bool trace) {
    StarAlgebra alg = algebra();
    Monomial a = monomial(alg, opt_.lhs, "--a");
    Monomial b = monomial(alg, opt_.rhs, "--b");
    bool ok = trace ? alg.trace_check(a, b) : alg.kms_check(a, b);
    Rational ab = alg.psi(alg.multiply(a, b));
    Rational ba = alg.psi(alg.multiply(b, a));
    emit({{"holds", ok},
          {"psi_ab", rational_json(ab)},
          {"psi_ba", rational_json(ba)},
          {"degree", a.degree()}},
         std::string(ok ? "true" : "false") + " (psi(ab) = " + format_rational(ab) +
             ", psi(ba) = " + format_rational(ba) + ", deg a = " + std::to_string(a.degree()) + ")");
  }
  void kms_check() { pair_check(false); }
  void trace_check() { pair_check(true); }

  void gram() {
    if (opt_.elements.empty()) throw UsageError("--elements is required");
    std::vector<GroupWord> elems;
    std::stringstream in(opt_.elements);
    for (std::string item; std::getline(in, item, ',');) elems.push_back(group_.normalize(group_.parse(item)));
    StarAlgebra alg = algebra();
    GramResult r = alg.gram_psd(elems);
    json matrix = json::array();
    std::ostringstream text;
    text << (r.psd.psd ? "PSD" : "NotPSD") << "\n";
    for (const auto &row : r.matrix) {
      json jrow = json::array();
      text << " ";
      for (const Rational &v : row) {
        jrow.push_back(rational_json(v));
        text << " " << format_rational(v);
      }
      text << "\n";
      matrix.push_back(jrow);
    }
    json j{{"psd", r.psd.psd}, {"matrix", matrix}};
    if (r.psd.certificate) {
      json pivots = json::array();
      text << "pivots:";
      for (const Rational &d : r.psd.certificate->diagonal) {
        pivots.push_back(rational_json(d));
        text << " " << format_rational(d);
      }
      j["pivots"] = pivots;
      j["pivot_order"] = r.psd.certificate->pivot_order;
    }
    if (r.psd.witness) {
      json w = json::array();
      text << "witness:";
      for (const Rational &v : *r.psd.witness) {
        w.push_back(rational_json(v));
        text << " " << format_rational(v);
      }
      j["witness"] = w;
    }
    emit(j, text.str());
  }

  void an_distance() {
    GroupWord g = element();
    AnDistance d = algebra().an_distance(g, depth());
    if (!d.consistent())
      throw std::logic_error("algebra and counting disagree: " + format_rational(d.psi_value) + " vs " +
                             format_rational(d.closed_form));
    emit({{"element", fmt(g)},
          {"depth", depth()},
          {"distance", rational_json(d.psi_value)},
          {"closed_form", rational_json(d.closed_form)},
          {"terms", d.terms}},
         format_rational(d.psi_value));
  }

  void act() {
    GroupWord g = element();
    const int n = group_.alphabet_size();
    if (!opt_.period.empty()) {
      PeriodicWord w{parse_word(opt_.prefix, n), parse_word(opt_.period, n)};
      PeriodicWord img = act_periodic(group_, g, w, limits_);
      emit({{"prefix", format_word(img.prefix, n)}, {"period", format_word(img.period, n)}},
           format_word(img.prefix, n) + "(" + format_word(img.period, n) + ")^inf");
      return;
    }
    WordAction a = group_.act_word(g, parse_word(opt_.word, n));
    emit({{"image", format_word(a.image, n)}, {"section", fmt(a.section)}},
         format_word(a.image, n) + " " + fmt(a.section));
  }

  void report() {
    Report r = build_report(group_, opt_.amenable, limits_);
    if (opt_.json_output)
      out_ << render_json(group_, r).dump(2) << "\n";
    else
      out_ << render_text(group_, r);
  }

  const Options &opt_;
  std::ostream &out_;
  Group group_;
  Limits limits_;
};

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Bernoulli fixed-point measures, KMS functionals and nuclei of self-similar groups",
               "selfsim"};
  app.require_subcommand(1);
  Options opt;

  struct Command {
    const char *name;
    const char *help;
  };
  const Command commands[] = {
      {"fix-measure", "exact mu(fix g)"},
      {"count-fixed", "number of fixed words of length --depth"},
      {"defect", "genericity defect at --depth"},
      {"classify", "genericity dichotomy"},
      {"nucleus", "nucleus of a contracting action"},
      {"afd-check", "trivial section in every nucleus element (or --element)"},
      {"y-measure", "measure of the union of escape sets of g"},
      {"kms", "psi of --expr"},
      {"kms-check", "KMS identity for monomials --a, --b"},
      {"trace-check", "trace property for degree-0 monomials --a, --b"},
      {"gram", "PSD decision of the fixed-measure Gram matrix of --elements"},
      {"an-distance", "psi((g - a_n)^*(g - a_n)) at n = --depth"},
      {"act", "apply --element to --word, or to --prefix (--period)^inf"},
      {"report", "full report with the factor-type conclusion"},
  };
  for (const Command &c : commands) {
    CLI::App *sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--group", opt.group, "built-in name or path to a definition file");
    sub->add_option("--element", opt.element, "group word, e.g. ab'c");
    sub->add_option("--elements", opt.elements, "comma-separated group words");
    sub->add_option("--expr", opt.expr, "algebra expression");
    sub->add_option("--a", opt.lhs, "left monomial");
    sub->add_option("--b", opt.rhs, "right monomial");
    sub->add_option("--word", opt.word, "finite word over the alphabet");
    sub->add_option("--prefix", opt.prefix, "prefix of an eventually periodic word");
    sub->add_option("--period", opt.period, "period of an eventually periodic word");
    sub->add_option("--depth", opt.depth, "word length n");
    sub->add_option("--max-states", opt.max_states, "section closure budget");
    sub->add_option("--max-depth", opt.max_depth, "counting depth budget");
    sub->add_flag("--json", opt.json_output, "machine-readable output");
    sub->add_flag("--amenable", opt.amenable, "declare the group amenable");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    Session session(opt, out);
    return session.dispatch(command);
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace selfsim::cli
