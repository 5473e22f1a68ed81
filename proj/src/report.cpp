#include "selfsim/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace selfsim {

std::string_view conclusion_name(Conclusion c) {
  switch (c) {
    case Conclusion::AfdIII: return "AFD-III";
    case Conclusion::IIIOnly: return "III-only";
    case Conclusion::None: return "None";
  }
  return "None";
}

std::string spec_hash(const GroupSpec &spec) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : format_spec(spec)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

nlohmann::json integer_json(const Integer &z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

std::string lambda_text(int alphabet_size) { return "{1/" + std::to_string(alphabet_size) + "}"; }

std::string measure_text(const MeasureReport &m) {
  if (m.exact) return format_rational(*m.exact);
  return "[" + format_rational(m.lower) + ", " + format_rational(m.upper) + "] (counting bounds, depth " +
         std::to_string(m.depth_used) + ")";
}

}  // namespace

nlohmann::json rational_json(const Rational &r) {
  return {{"num", integer_json(r.get_num())}, {"den", integer_json(r.get_den())}};
}

nlohmann::json measure_json(const MeasureReport &m) {
  return {{"exact", m.exact ? rational_json(*m.exact) : nlohmann::json(nullptr)},
          {"lower", rational_json(m.lower)},
          {"upper", rational_json(m.upper)},
          {"method", std::string(method_name(m.method))},
          {"depth_used", m.depth_used}};
}

Report build_report(const Group &group, bool amenable, const Limits &limits) {
  Report r;
  r.group_name = group.spec().name;
  r.spec_hash = spec_hash(group.spec());
  r.alphabet_size = group.alphabet_size();
  r.amenable = amenable;
  for (int t = 0; t < group.num_generators(); ++t) {
    GroupWord g = group.generator(t);
    r.fixed_measures.push_back({g, fixed_measure(group, g, limits)});
  }
  r.genericity = genericity_classify(group, limits);
  r.nucleus = compute_nucleus(group, limits);
  if (r.nucleus.nucleus) {
    r.afd = afd_hypothesis_check(group, *r.nucleus.nucleus, limits);
    for (const GroupWord &g : r.nucleus.nucleus->words())
      r.escape_measures.push_back({g, y_measure(group, g, limits)});
  }

  const std::string lambda = lambda_text(group.alphabet_size());
  const bool generic = r.genericity.verdict == Genericity::One && r.genericity.covers_group;
  bool escape_route = r.nucleus.nucleus && r.afd && r.afd->status == AfdStatus::Holds &&
                      !r.escape_measures.empty();
  for (const ElementMeasure &m : r.escape_measures)
    escape_route = escape_route && m.measure.exact && *m.measure.exact == 1;
  const bool amenable_route = generic && amenable;

  if (escape_route) {
    r.grounds.push_back("[verified] action is contracting; nucleus computed with witness depth " +
                        std::to_string(r.nucleus.nucleus->witness_depth));
    r.grounds.push_back("[verified] every nucleus element has a trivial section (witness words found)");
    r.grounds.push_back("[verified] mu(union_n Y_g^n) = 1 exactly for every nucleus element, hence for every g");
    r.grounds.push_back("=> escape sets of full measure for all g: AFD factor of type III_" + lambda);
  }
  if (amenable_route) {
    r.grounds.push_back("[verified] mu(G-generic) = 1: zero genericity defect on generators, inverses and nucleus");
    r.grounds.push_back("[declared] G is amenable (user flag, not verified)");
    r.grounds.push_back("=> mu(G-generic) = 1 and G amenable: AFD factor of type III_" + lambda);
  }
  if (escape_route || amenable_route) {
    r.conclusion = Conclusion::AfdIII;
  } else if (generic) {
    r.conclusion = Conclusion::IIIOnly;
    r.grounds.push_back("[verified] mu(G-generic) = 1: zero genericity defect on generators, inverses and nucleus");
    r.grounds.push_back("=> mu(G-generic) = 1: factor of type III_" + lambda + " (hyperfiniteness not established)");
  } else {
    r.grounds.push_back("no hypothesis set could be verified; no conclusion");
  }
  return r;
}

std::string render_text(const Group &group, const Report &r) {
  std::ostringstream out;
  const int n = r.alphabet_size;
  out << "group: " << r.group_name << " (|X| = " << n << ", spec " << r.spec_hash << ")\n";
  out << "KMS state: beta = log " << n << ", psi(S_u g S_v*) = delta_{u,v} " << n << "^-|u| mu(fix g)\n";
  out << "fixed-point measures mu(fix g):\n";
  for (const ElementMeasure &m : r.fixed_measures)
    out << "  " << group.format(m.element) << ": " << measure_text(m.measure) << "\n";
  out << "genericity: " << genericity_name(r.genericity.verdict)
      << (r.genericity.covers_group ? " (tested set includes the nucleus, covers G)"
                                    : " (tested set only)")
      << "\n";
  for (const ElementDefect &d : r.genericity.tested) {
    out << "  defect " << group.format(d.element) << ": ";
    if (d.exact)
      out << format_rational(d.lower) << "\n";
    else
      out << "[" << format_rational(d.lower) << ", " << format_rational(d.upper) << "]\n";
  }
  if (r.nucleus.nucleus) {
    const Nucleus &nu = *r.nucleus.nucleus;
    out << "nucleus: {";
    for (std::size_t i = 0; i < nu.elements.size(); ++i)
      out << (i ? ", " : "") << group.format(nu.elements[i].word);
    out << "} (" << nu.elements.size() << " elements, witness depth " << nu.witness_depth << ")\n";
  } else {
    out << "nucleus: Inconclusive (" << r.nucleus.diagnostic << ")\n";
  }
  if (r.afd) {
    out << "trivial-section hypothesis: " << afd_status_name(r.afd->status) << "\n";
    for (const AfdWitness &w : r.afd->witnesses)
      out << "  h(" << group.format(w.element) << ", \"" << format_word(w.word, n) << "\") = e\n";
    if (r.afd->counterexample) out << "  counterexample: " << group.format(*r.afd->counterexample) << "\n";
  }
  if (!r.escape_measures.empty()) {
    out << "escape measures mu(union_n Y_g^n):\n";
    for (const ElementMeasure &m : r.escape_measures)
      out << "  " << group.format(m.element) << ": " << measure_text(m.measure) << "\n";
  }
  out << "amenable (declared): " << (r.amenable ? "yes" : "no") << "\n";
  out << "conclusion: " << conclusion_name(r.conclusion);
  if (r.conclusion != Conclusion::None) out << "_" << lambda_text(n);
  out << "\n";
  for (const std::string &g : r.grounds) out << "  " << g << "\n";
  return out.str();
}

nlohmann::json render_json(const Group &group, const Report &r) {
  using nlohmann::json;
  json j;
  j["group"] = r.group_name;
  j["spec_hash"] = r.spec_hash;
  j["alphabet_size"] = r.alphabet_size;
  j["beta"] = "log " + std::to_string(r.alphabet_size);
  j["lambda"] = rational_json(Rational(1, r.alphabet_size));
  json fixed = json::object();
  for (const ElementMeasure &m : r.fixed_measures) fixed[group.format(m.element)] = measure_json(m.measure);
  j["fixed_measures"] = fixed;
  json tested = json::array();
  for (const ElementDefect &d : r.genericity.tested)
    tested.push_back({{"element", group.format(d.element)},
                      {"exact", d.exact},
                      {"lower", rational_json(d.lower)},
                      {"upper", rational_json(d.upper)}});
  j["genericity"] = {{"verdict", std::string(genericity_name(r.genericity.verdict))},
                     {"covers_group", r.genericity.covers_group},
                     {"tested", tested}};
  if (r.nucleus.nucleus) {
    json elems = json::array();
    for (const NucleusElement &e : r.nucleus.nucleus->elements) elems.push_back(group.format(e.word));
    j["nucleus"] = {{"status", "Found"},
                    {"elements", elems},
                    {"witness_depth", r.nucleus.nucleus->witness_depth}};
  } else {
    j["nucleus"] = {{"status", "Inconclusive"}, {"diagnostic", r.nucleus.diagnostic}};
  }
  if (r.afd) {
    json w = json::object();
    for (const AfdWitness &a : r.afd->witnesses) w[group.format(a.element)] = format_word(a.word, r.alphabet_size);
    j["afd_hypothesis"] = {{"status", std::string(afd_status_name(r.afd->status))}, {"witnesses", w}};
  } else {
    j["afd_hypothesis"] = nullptr;
  }
  json esc = json::object();
  for (const ElementMeasure &m : r.escape_measures) esc[group.format(m.element)] = measure_json(m.measure);
  j["escape_measures"] = esc;
  j["amenable_declared"] = r.amenable;
  j["conclusion"] = std::string(conclusion_name(r.conclusion));
  j["grounds"] = r.grounds;
  return j;
}

}  // namespace selfsim
