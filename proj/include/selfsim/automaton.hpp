#pragma once

// Self-similar group actions given by wreath recursion.
//
// A group element is a word over generator tokens. Each generator t carries a
// permutation of the alphabet X = {0, ..., |X|-1} and one section word per
// letter, so that t(xw) = perm_t(x) sections_t[x](w). Words act from the
// right: (g1 g2)(w) = g1(g2(w)).

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace selfsim {

using Letter = int;
using Word = std::vector<Letter>;

/// One generator occurrence in a group word, possibly inverted.
struct Token {
  int gen = 0;
  bool inverse = false;

  Token inverted() const { return {gen, !inverse}; }
  auto operator<=>(const Token &) const = default;
};

/// Freely reduced word over generator tokens. The empty word is the unit.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(const std::vector<Token> &tokens);

  static GroupWord generator(int gen, bool inverse = false) {
    return GroupWord({Token{gen, inverse}});
  }

  const std::vector<Token> &tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  GroupWord inverse() const;

  /// Concatenation followed by free reduction.
  friend GroupWord operator*(const GroupWord &a, const GroupWord &b);

  auto operator<=>(const GroupWord &) const = default;

 private:
  std::vector<Token> tokens_;
};

/// Shortlex order: shorter first, then lexicographic on tokens.
bool shortlex_less(const GroupWord &a, const GroupWord &b);

struct GroupWordHash {
  std::size_t operator()(const GroupWord &w) const noexcept;
};

struct Generator {
  std::string name;
  std::vector<Letter> perm;
  std::vector<GroupWord> sections;
};

struct GroupSpec {
  std::string name;
  int alphabet_size = 2;
  std::vector<Generator> generators;

  std::optional<int> find_generator(std::string_view token) const;
};

/// Exploration budgets shared by every bounded operation.
struct Limits {
  std::size_t max_states = 10000;
  int max_depth = 24;
};

void validate(const Limits &limits);

/// Three-valued answer for questions that bounded exploration may not settle.
enum class Verdict { Yes, No, Unknown };

std::string_view verdict_name(Verdict v);

// ---------------------------------------------------------------------------
// Group definition documents.

/// Throws Error(MalformedSpec) on any structural problem.
void validate(const GroupSpec &spec);

/// Parses the text format:
///
///   alphabet_size = 2
///   gen a perm = [1,0] sections = ["",""]
///   gen b perm = [0,1] sections = ["a","c"]
///
/// Section words concatenate tokens; a trailing ' inverts the preceding
/// token. Blank lines and lines starting with '#' are ignored.
GroupSpec parse_spec(std::string_view text, std::string name = "custom");

/// Renders a spec in the format accepted by parse_spec.
std::string format_spec(const GroupSpec &spec);

/// "grigorchuk", "dihedral" and "odometer".
std::optional<GroupSpec> builtin_spec(std::string_view name);
std::vector<std::string> builtin_names();

/// A built-in name, or otherwise a document in the text format.
GroupSpec load_spec(std::string_view name_or_text);

/// Tokenizes with longest match against the declared generator names. The
/// strings "", "e" (unless e is a generator) and "1" denote the unit.
GroupWord parse_group_word(const GroupSpec &spec, std::string_view text);
std::string format_group_word(const GroupSpec &spec, const GroupWord &g);

/// Letters as decimal digits ("0110") or, for any alphabet, comma separated
/// ("0,11,3"). Letters must be below alphabet_size.
Word parse_word(std::string_view text, int alphabet_size);
std::string format_word(const Word &u, int alphabet_size);

// ---------------------------------------------------------------------------
// Group action.

struct LetterAction {
  Letter letter;
  GroupWord section;
};

struct WordAction {
  Word image;
  GroupWord section;
};

struct PeriodicWord {
  Word prefix;
  Word period;

  bool operator==(const PeriodicWord &) const = default;
};

/// Bring prefix.period^inf to its shortest form: primitive period, and the
/// prefix as short as rotation allows.
PeriodicWord canonical_periodic(PeriodicWord w);

/// Immutable view of a GroupSpec with precomputed inverse recursion and
/// generator orders. Safe to share between threads.
class Group {
 public:
  explicit Group(GroupSpec spec);

  const GroupSpec &spec() const { return spec_; }
  int alphabet_size() const { return spec_.alphabet_size; }
  int num_generators() const { return static_cast<int>(spec_.generators.size()); }

  /// Order of a generator when a small power acts trivially, 0 otherwise.
  int generator_order(int gen) const { return orders_[gen]; }

  /// Free reduction plus reduction of generator powers modulo known orders.
  GroupWord normalize(const GroupWord &g) const;
  GroupWord multiply(const GroupWord &a, const GroupWord &b) const;
  GroupWord inverse(const GroupWord &g) const;
  GroupWord generator(int gen, bool inverse = false) const;

  /// (v(g,x), h(g,x)), composed right to left over the tokens of g.
  LetterAction act_letter(const GroupWord &g, Letter x) const;
  /// (v(g,u), h(g,u)).
  WordAction act_word(const GroupWord &g, const Word &u) const;
  /// Letter permutation x -> v(g,x).
  std::vector<Letter> permutation(const GroupWord &g) const;

  GroupWord parse(std::string_view text) const { return parse_group_word(spec_, text); }
  std::string format(const GroupWord &g) const { return format_group_word(spec_, g); }

 private:
  GroupSpec spec_;
  std::vector<std::vector<Letter>> inverse_perm_;
  std::vector<std::vector<GroupWord>> inverse_sections_;
  std::vector<int> orders_;
};

/// Image of the eventually periodic word prefix.period^inf under g.
/// Throws Error(ClosureBudgetExceeded) past limits.max_states distinct
/// (section, phase) pairs.
PeriodicWord act_periodic(const Group &group, const GroupWord &g,
                          const PeriodicWord &w, const Limits &limits = {});

// ---------------------------------------------------------------------------
// Section closures.

/// Minimized automaton of the sections h(g,u), u in X*.
///
/// States are numbered in breadth-first order from the root with letters
/// visited in increasing order, so two non-truncated closures of equal
/// elements are identical field by field (apart from representative words).
struct SectionClosure {
  int alphabet_size = 2;
  int root = 0;
  /// Shortlex-least word found for each state.
  std::vector<GroupWord> words;
  std::vector<std::vector<Letter>> perm_of;
  /// trans[s][x] is the state of h(s,x); -1 marks unexplored sections,
  /// which only occur when truncated.
  std::vector<std::vector<int>> trans;
  std::vector<bool> identity;
  /// True when every state reachable from s was fully explored.
  std::vector<bool> complete;
  bool truncated = false;

  std::size_t size() const { return words.size(); }
  bool is_identity_state(int s) const { return identity[s]; }
  std::vector<int> identity_states() const;
  bool fixes_all(int s) const;

  /// Structural encoding of the sub-automaton reachable from s. For complete
  /// states equal keys mean equal action.
  std::string canonical_key(int s) const;
};

SectionClosure section_closure(const Group &group, const GroupWord &g,
                               const Limits &limits = {});

/// Yes iff g acts trivially; No as soon as a section moving a letter turns
/// up; Unknown when the budget ran out first.
Verdict is_identity(const Group &group, const GroupWord &g,
                    const Limits &limits = {});

Verdict equal(const Group &group, const GroupWord &g1, const GroupWord &g2,
              const Limits &limits = {});

}  // namespace selfsim
