#pragma once

// Summary of everything the engine can establish about a group, ending in a
// conditional conclusion about the von Neumann algebra generated in the GNS
// representation of the KMS state at beta = log|X|.

#include "selfsim/contracting.hpp"
#include "selfsim/measure.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

enum class Conclusion { AfdIII, IIIOnly, None };

std::string_view conclusion_name(Conclusion c);

struct ElementMeasure {
  GroupWord element;
  MeasureReport measure;
};

struct Report {
  std::string group_name;
  std::string spec_hash;
  int alphabet_size = 2;
  std::vector<ElementMeasure> fixed_measures;
  GenericityReport genericity;
  NucleusOutcome nucleus;
  std::optional<AfdResult> afd;
  /// mu(union_n Y_g^n) over the nucleus elements.
  std::vector<ElementMeasure> escape_measures;
  bool amenable = false;
  Conclusion conclusion = Conclusion::None;
  /// One line per hypothesis behind the conclusion, marked as verified or
  /// declared.
  std::vector<std::string> grounds;
};

/// FNV-1a 64 of the canonical spec text, as 16 hex digits.
std::string spec_hash(const GroupSpec &spec);

Report build_report(const Group &group, bool amenable, const Limits &limits = {});

std::string render_text(const Group &group, const Report &report);
nlohmann::json render_json(const Group &group, const Report &report);

/// {"num": n, "den": d}; integers outside int64 become decimal strings.
nlohmann::json rational_json(const Rational &r);
nlohmann::json measure_json(const MeasureReport &m);

}  // namespace selfsim
