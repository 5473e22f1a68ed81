#include "selfsim/automaton.hpp"
#include "selfsim/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace selfsim {

// ---------------------------------------------------------------------------
// GroupWord

namespace {

std::vector<Token> free_reduce(const std::vector<Token> &tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const Token &t : tokens) {
    if (!out.empty() && out.back() == t.inverted())
      out.pop_back();
    else
      out.push_back(t);
  }
  return out;
}

}  // namespace

GroupWord::GroupWord(const std::vector<Token> &tokens) : tokens_(free_reduce(tokens)) {}

GroupWord GroupWord::inverse() const {
  GroupWord out;
  out.tokens_.reserve(tokens_.size());
  for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it)
    out.tokens_.push_back(it->inverted());
  return out;
}

GroupWord operator*(const GroupWord &a, const GroupWord &b) {
  std::vector<Token> joined = a.tokens_;
  joined.insert(joined.end(), b.tokens_.begin(), b.tokens_.end());
  return GroupWord(joined);
}

bool shortlex_less(const GroupWord &a, const GroupWord &b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.tokens() < b.tokens();
}

std::size_t GroupWordHash::operator()(const GroupWord &w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (const Token &t : w.tokens()) {
    h ^= static_cast<std::size_t>(t.gen) * 2 + (t.inverse ? 1 : 0);
    h *= 1099511628211ull;
  }
  return h;
}

std::optional<int> GroupSpec::find_generator(std::string_view token) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == token) return static_cast<int>(i);
  return std::nullopt;
}

void validate(const Limits &limits) {
  if (limits.max_states == 0 || limits.max_depth <= 0)
    throw std::invalid_argument("limits must be positive");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Documents

namespace {

const std::regex kTokenPattern("[A-Za-z][A-Za-z0-9_]*");

[[noreturn]] void malformed(const std::string &what) {
  throw Error(ErrorKind::MalformedSpec, what);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(const std::string &s, const std::string &context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    malformed("expected a non-negative integer in " + context + ", got '" + s + "'");
  if (s.size() > 9) malformed("integer too large in " + context);
  return std::stoi(s);
}

std::vector<std::string> parse_quoted_list(const std::string &body, const std::string &context) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
  };
  skip_ws();
  if (i == body.size()) return out;
  while (true) {
    skip_ws();
    if (i >= body.size() || body[i] != '"') malformed("expected quoted word in " + context);
    std::size_t close = body.find('"', i + 1);
    if (close == std::string::npos) malformed("unterminated quote in " + context);
    out.push_back(body.substr(i + 1, close - i - 1));
    i = close + 1;
    skip_ws();
    if (i == body.size()) break;
    if (body[i] != ',') malformed("expected ',' in " + context);
    ++i;
  }
  return out;
}

}  // namespace

void validate(const GroupSpec &spec) {
  if (spec.alphabet_size < 2) malformed("alphabet_size must be at least 2");
  const auto n = static_cast<std::size_t>(spec.alphabet_size);
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const Generator &g = spec.generators[i];
    if (!std::regex_match(g.name, kTokenPattern)) malformed("bad generator token '" + g.name + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (spec.generators[j].name == g.name) malformed("duplicate generator '" + g.name + "'");
    if (g.perm.size() != n) malformed("perm of '" + g.name + "' has wrong length");
    if (g.sections.size() != n) malformed("sections of '" + g.name + "' have wrong length");
    std::vector<bool> hit(n, false);
    for (Letter y : g.perm) {
      if (y < 0 || y >= spec.alphabet_size || hit[y])
        malformed("perm of '" + g.name + "' is not a bijection");
      hit[y] = true;
    }
    for (const GroupWord &w : g.sections)
      for (const Token &t : w.tokens())
        if (t.gen < 0 || t.gen >= static_cast<int>(spec.generators.size()))
          malformed("section of '" + g.name + "' uses an undeclared generator");
  }
}

GroupSpec parse_spec(std::string_view text, std::string name) {
  static const std::regex alphabet_line(R"(^alphabet_size\s*=\s*(\S+)$)");
  static const std::regex gen_line(
      R"(^gen\s+(\S+)\s+perm\s*=\s*\[([^\]]*)\]\s*sections\s*=\s*\[(.*)\]$)");

  struct RawGen {
    std::string name;
    std::vector<Letter> perm;
    std::vector<std::string> sections;
  };

  std::optional<int> alphabet;
  std::vector<RawGen> raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = "line " + std::to_string(lineno);
    std::smatch m;
    if (std::regex_match(t, m, alphabet_line)) {
      if (alphabet) malformed("alphabet_size given twice");
      alphabet = parse_int(m[1], where);
    } else if (std::regex_match(t, m, gen_line)) {
      RawGen g;
      g.name = m[1];
      if (!std::regex_match(g.name, kTokenPattern)) malformed("bad generator token '" + g.name + "'");
      std::string perm_body = trim(m[2].str());
      if (!perm_body.empty())
        for (const std::string &p : split(perm_body, ',')) g.perm.push_back(parse_int(p, where));
      g.sections = parse_quoted_list(m[3], where);
      raw.push_back(std::move(g));
    } else {
      malformed("unrecognized " + where + ": '" + t + "'");
    }
  }
  if (!alphabet) malformed("missing alphabet_size");

  GroupSpec spec;
  spec.name = std::move(name);
  spec.alphabet_size = *alphabet;
  for (const RawGen &g : raw) spec.generators.push_back({g.name, g.perm, {}});
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (const std::string &w : raw[i].sections)
      spec.generators[i].sections.push_back(parse_group_word(spec, w));
  validate(spec);
  return spec;
}

std::string format_spec(const GroupSpec &spec) {
  std::ostringstream out;
  out << "alphabet_size = " << spec.alphabet_size << "\n";
  for (const Generator &g : spec.generators) {
    out << "gen " << g.name << " perm = [";
    for (std::size_t i = 0; i < g.perm.size(); ++i) out << (i ? "," : "") << g.perm[i];
    out << "] sections = [";
    for (std::size_t i = 0; i < g.sections.size(); ++i) {
      out << (i ? "," : "") << '"';
      for (const Token &t : g.sections[i].tokens())
        out << spec.generators[t.gen].name << (t.inverse ? "'" : "");
      out << '"';
    }
    out << "]\n";
  }
  return out.str();
}

namespace {

struct Builtin {
  const char *name;
  const char *text;
};

constexpr Builtin kBuiltins[] = {
    {"grigorchuk",
     "alphabet_size = 2\n"
     "gen a perm = [1,0] sections = [\"\",\"\"]\n"
     "gen b perm = [0,1] sections = [\"a\",\"c\"]\n"
     "gen c perm = [0,1] sections = [\"a\",\"d\"]\n"
     "gen d perm = [0,1] sections = [\"\",\"b\"]\n"},
    {"dihedral",
     "alphabet_size = 2\n"
     "gen a perm = [1,0] sections = [\"\",\"\"]\n"
     "gen b perm = [0,1] sections = [\"a\",\"b\"]\n"},
    {"odometer",
     "alphabet_size = 2\n"
     "gen a perm = [1,0] sections = [\"\",\"a\"]\n"},
};

}  // namespace

std::optional<GroupSpec> builtin_spec(std::string_view name) {
  for (const Builtin &b : kBuiltins)
    if (name == b.name) return parse_spec(b.text, b.name);
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const Builtin &b : kBuiltins) out.emplace_back(b.name);
  return out;
}

GroupSpec load_spec(std::string_view name_or_text) {
  if (auto spec = builtin_spec(trim(name_or_text))) return *spec;
  return parse_spec(name_or_text);
}

GroupWord parse_group_word(const GroupSpec &spec, std::string_view text) {
  std::string s = trim(text);
  if (s.empty() || s == "1" || (s == "e" && !spec.find_generator("e"))) return {};
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
      const std::string &name = spec.generators[i].name;
      if (name.size() > best_len && s.compare(pos, name.size(), name) == 0) {
        best = static_cast<int>(i);
        best_len = name.size();
      }
    }
    if (best < 0) malformed("unknown token at '" + s.substr(pos) + "'");
    pos += best_len;
    bool inverse = false;
    while (pos < s.size() && s[pos] == '\'') {
      inverse = !inverse;
      ++pos;
    }
    tokens.push_back({best, inverse});
  }
  return GroupWord(tokens);
}

std::string format_group_word(const GroupSpec &spec, const GroupWord &g) {
  if (g.empty()) return "e";
  std::string out;
  for (const Token &t : g.tokens()) {
    out += spec.generators[t.gen].name;
    if (t.inverse) out += '\'';
  }
  return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
  std::string s = trim(text);
  Word out;
  if (s.empty()) return out;
  auto check = [&](long v) {
    if (v < 0 || v >= alphabet_size)
      throw std::invalid_argument("letter " + std::to_string(v) + " outside the alphabet");
    out.push_back(static_cast<Letter>(v));
  };
  if (s.find(',') != std::string::npos) {
    for (const std::string &part : split(s, ',')) {
      if (part.empty() || !std::all_of(part.begin(), part.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("bad letter '" + part + "'");
      check(std::stol(part));
    }
  } else {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument(std::string("bad letter '") + c + "'");
      check(c - '0');
    }
  }
  return out;
}

std::string format_word(const Word &u, int alphabet_size) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (alphabet_size > 10 && i) out += ',';
    out += std::to_string(u[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group

namespace {

constexpr int kMaxOrderProbe = 6;
const Limits kOrderProbeLimits{2000, 24};

bool is_identity_perm(const std::vector<Letter> &perm) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<Letter>(i)) return false;
  return true;
}

}  // namespace

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  const int n = spec_.alphabet_size;
  orders_.assign(spec_.generators.size(), 0);
  for (const Generator &g : spec_.generators) {
    std::vector<Letter> inv(n);
    for (int x = 0; x < n; ++x) inv[g.perm[x]] = x;
    std::vector<GroupWord> secs(n);
    for (int x = 0; x < n; ++x) secs[x] = g.sections[inv[x]].inverse();
    inverse_perm_.push_back(std::move(inv));
    inverse_sections_.push_back(std::move(secs));
  }
  for (int t = 0; t < num_generators(); ++t) {
    std::vector<Token> power;
    for (int k = 1; k <= kMaxOrderProbe; ++k) {
      power.push_back({t, false});
      if (is_identity(*this, GroupWord(power), kOrderProbeLimits) == Verdict::Yes) {
        orders_[t] = k;
        break;
      }
    }
  }
}

GroupWord Group::normalize(const GroupWord &g) const {
  struct Run {
    int gen;
    int exp;
  };
  auto reduce = [&](int gen, int exp) {
    int k = orders_[gen];
    if (k <= 0) return exp;
    int r = ((exp % k) + k) % k;
    if (2 * r > k) r -= k;
    return r;
  };
  std::vector<Run> runs;
  for (const Token &t : g.tokens()) {
    int e = t.inverse ? -1 : 1;
    if (!runs.empty() && runs.back().gen == t.gen) {
      runs.back().exp = reduce(t.gen, runs.back().exp + e);
      if (runs.back().exp == 0) runs.pop_back();
    } else {
      e = reduce(t.gen, e);
      if (e != 0) runs.push_back({t.gen, e});
    }
  }
  std::vector<Token> tokens;
  for (const Run &r : runs)
    for (int i = 0; i < std::abs(r.exp); ++i) tokens.push_back({r.gen, r.exp < 0});
  return GroupWord(tokens);
}

GroupWord Group::multiply(const GroupWord &a, const GroupWord &b) const { return normalize(a * b); }

GroupWord Group::inverse(const GroupWord &g) const { return normalize(g.inverse()); }

GroupWord Group::generator(int gen, bool inverse) const {
  return normalize(GroupWord::generator(gen, inverse));
}

LetterAction Group::act_letter(const GroupWord &g, Letter x) const {
  const auto &tokens = g.tokens();
  std::vector<const GroupWord *> parts(tokens.size());
  std::size_t total = 0;
  for (std::size_t i = tokens.size(); i-- > 0;) {
    const Token &t = tokens[i];
    if (!t.inverse) {
      parts[i] = &spec_.generators[t.gen].sections[x];
      x = spec_.generators[t.gen].perm[x];
    } else {
      parts[i] = &inverse_sections_[t.gen][x];
      x = inverse_perm_[t.gen][x];
    }
    total += parts[i]->size();
  }
  std::vector<Token> joined;
  joined.reserve(total);
  for (const GroupWord *p : parts) joined.insert(joined.end(), p->tokens().begin(), p->tokens().end());
  return {x, normalize(GroupWord(joined))};
}

WordAction Group::act_word(const GroupWord &g, const Word &u) const {
  WordAction out{{}, normalize(g)};
  out.image.reserve(u.size());
  for (Letter x : u) {
    LetterAction step = act_letter(out.section, x);
    out.image.push_back(step.letter);
    out.section = std::move(step.section);
  }
  return out;
}

std::vector<Letter> Group::permutation(const GroupWord &g) const {
  std::vector<Letter> perm(alphabet_size());
  std::iota(perm.begin(), perm.end(), 0);
  const auto &tokens = g.tokens();
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    const auto &p = it->inverse ? inverse_perm_[it->gen] : spec_.generators[it->gen].perm;
    for (Letter &y : perm) y = p[y];
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Periodic words

PeriodicWord canonical_periodic(PeriodicWord w) {
  const std::size_t p = w.period.size();
  if (p == 0) return w;
  for (std::size_t d = 1; d <= p; ++d) {
    if (p % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < p && ok; ++i) ok = w.period[i] == w.period[i - d];
    if (ok) {
      w.period.resize(d);
      break;
    }
  }
  while (!w.prefix.empty() && w.prefix.back() == w.period.back()) {
    w.prefix.pop_back();
    std::rotate(w.period.rbegin(), w.period.rbegin() + 1, w.period.rend());
  }
  return w;
}

PeriodicWord act_periodic(const Group &group, const GroupWord &g, const PeriodicWord &w,
                          const Limits &limits) {
  if (w.period.empty()) throw std::invalid_argument("period must be nonempty");
  WordAction head = group.act_word(g, w.prefix);
  std::map<std::pair<GroupWord, std::size_t>, std::size_t> seen;
  Word out;
  GroupWord state = head.section;
  std::size_t phase = 0;
  while (true) {
    auto key = std::make_pair(state, phase);
    if (auto it = seen.find(key); it != seen.end()) {
      PeriodicWord image;
      image.prefix = head.image;
      image.prefix.insert(image.prefix.end(), out.begin(), out.begin() + it->second);
      image.period.assign(out.begin() + it->second, out.end());
      return canonical_periodic(std::move(image));
    }
    if (seen.size() >= limits.max_states)
      throw Error(ErrorKind::ClosureBudgetExceeded,
                  "periodic orbit exceeded " + std::to_string(limits.max_states) + " states");
    seen.emplace(std::move(key), out.size());
    LetterAction step = group.act_letter(state, w.period[phase]);
    out.push_back(step.letter);
    state = std::move(step.section);
    phase = (phase + 1) % w.period.size();
  }
}

// ---------------------------------------------------------------------------
// Section closures

namespace {

// Sections longer than this are left unexplored. Word lengths can double at
// every level (t = (tt, e)), which would exhaust memory long before the state
// budget.
constexpr std::size_t kMaxSectionLength = 4096;

struct Exploration {
  std::vector<GroupWord> words;
  std::vector<std::vector<Letter>> perms;
  std::vector<std::vector<int>> trans;
  std::vector<bool> expanded;
  int root = 0;
  int identity = -1;
  bool truncated = false;
  bool moved = false;
};

Exploration explore(const Group &group, const GroupWord &g, const Limits &limits,
                    bool seed_identity, bool stop_on_moved) {
  const int n = group.alphabet_size();
  Exploration ex;
  std::vector<std::vector<GroupWord>> pending;
  std::unordered_map<GroupWord, int, GroupWordHash> index;
  std::deque<int> queue;

  auto discover = [&](const GroupWord &w) -> int {
    if (auto it = index.find(w); it != index.end()) return it->second;
    if (ex.words.size() >= limits.max_states || w.size() > kMaxSectionLength) {
      ex.truncated = true;
      return -1;
    }
    int id = static_cast<int>(ex.words.size());
    index.emplace(w, id);
    std::vector<Letter> perm(n);
    std::vector<GroupWord> secs(n);
    for (int x = 0; x < n; ++x) {
      LetterAction a = group.act_letter(w, x);
      perm[x] = a.letter;
      secs[x] = std::move(a.section);
    }
    if (!is_identity_perm(perm)) ex.moved = true;
    ex.words.push_back(w);
    ex.perms.push_back(std::move(perm));
    ex.trans.emplace_back(n, -1);
    ex.expanded.push_back(false);
    pending.push_back(std::move(secs));
    queue.push_back(id);
    return id;
  };

  ex.root = discover(group.normalize(g));
  if (stop_on_moved && ex.moved) return ex;
  if (seed_identity) ex.identity = discover(GroupWord{});
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int x = 0; x < n; ++x) {
      ex.trans[s][x] = discover(pending[s][x]);
      if (stop_on_moved && ex.moved) return ex;
    }
    ex.expanded[s] = true;
    pending[s].clear();
    pending[s].shrink_to_fit();
  }
  return ex;
}

SectionClosure minimize(const Exploration &ex, int alphabet_size) {
  const int n = alphabet_size;
  const int m = static_cast<int>(ex.words.size());

  // States that can reach an unexplored section stay singleton classes.
  std::vector<bool> tainted(m, false);
  std::vector<std::vector<int>> reverse(m);
  std::vector<int> stack;
  for (int s = 0; s < m; ++s) {
    bool incomplete = !ex.expanded[s];
    for (int x = 0; x < n; ++x) {
      int t = ex.trans[s][x];
      if (t < 0)
        incomplete = true;
      else
        reverse[t].push_back(s);
    }
    if (incomplete) {
      tainted[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int p : reverse[s])
      if (!tainted[p]) {
        tainted[p] = true;
        stack.push_back(p);
      }
  }

  // Partition refinement seeded by letter permutations.
  std::vector<int> cls(m);
  {
    std::map<std::vector<int>, int> ids;
    for (int s = 0; s < m; ++s) {
      std::vector<int> sig;
      if (tainted[s])
        sig = {-1, s};
      else
        sig.assign(ex.perms[s].begin(), ex.perms[s].end());
      cls[s] = ids.try_emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
  }
  std::size_t num_classes = 0;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(m);
    for (int s = 0; s < m; ++s) {
      std::vector<int> sig{cls[s]};
      if (!tainted[s])
        for (int x = 0; x < n; ++x) sig.push_back(cls[ex.trans[s][x]]);
      next[s] = ids.try_emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
    cls = std::move(next);
    if (ids.size() == num_classes) break;
    num_classes = ids.size();
  }

  // Quotient, renumbered breadth-first from the root.
  std::vector<int> member(num_classes, -1);
  std::vector<GroupWord> best(num_classes);
  for (int s = 0; s < m; ++s) {
    int c = cls[s];
    if (member[c] < 0 || shortlex_less(ex.words[s], best[c])) {
      if (member[c] < 0) member[c] = s;
      best[c] = ex.words[s];
    }
  }
  std::vector<int> order(num_classes, -1);
  std::vector<int> classes;
  std::deque<int> queue{cls[ex.root]};
  order[cls[ex.root]] = 0;
  classes.push_back(cls[ex.root]);
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (int x = 0; x < n; ++x) {
      int t = ex.trans[member[c]][x];
      if (t < 0) continue;
      int d = cls[t];
      if (order[d] < 0) {
        order[d] = static_cast<int>(classes.size());
        classes.push_back(d);
        queue.push_back(d);
      }
    }
  }

  SectionClosure out;
  out.alphabet_size = n;
  out.root = 0;
  out.truncated = ex.truncated;
  int identity_class = ex.identity >= 0 ? cls[ex.identity] : -1;
  for (int c : classes) {
    int s = member[c];
    out.words.push_back(best[c]);
    out.perm_of.push_back(ex.perms[s]);
    std::vector<int> row(n, -1);
    for (int x = 0; x < n; ++x)
      if (ex.trans[s][x] >= 0) row[x] = order[cls[ex.trans[s][x]]];
    out.trans.push_back(std::move(row));
    out.identity.push_back(c == identity_class);
    out.complete.push_back(!tainted[s]);
  }
  return out;
}

}  // namespace

std::vector<int> SectionClosure::identity_states() const {
  std::vector<int> out;
  for (std::size_t s = 0; s < size(); ++s)
    if (identity[s]) out.push_back(static_cast<int>(s));
  return out;
}

bool SectionClosure::fixes_all(int s) const { return is_identity_perm(perm_of[s]); }

std::string SectionClosure::canonical_key(int s) const {
  std::vector<int> order(size(), -1);
  std::vector<int> states{s};
  order[s] = 0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (int t : trans[states[i]])
      if (t >= 0 && order[t] < 0) {
        order[t] = static_cast<int>(states.size());
        states.push_back(t);
      }
  std::string key = std::to_string(states.size()) + ":";
  for (int q : states) {
    for (Letter y : perm_of[q]) key += std::to_string(y) + ",";
    key += ">";
    for (int t : trans[q]) key += (t < 0 ? std::string("?") : std::to_string(order[t])) + ",";
    key += "|";
  }
  return key;
}

SectionClosure section_closure(const Group &group, const GroupWord &g, const Limits &limits) {
  validate(limits);
  Exploration ex = explore(group, g, limits, true, false);
  return minimize(ex, group.alphabet_size());
}

Verdict is_identity(const Group &group, const GroupWord &g, const Limits &limits) {
  validate(limits);
  GroupWord w = group.normalize(g);
  if (w.empty()) return Verdict::Yes;
  Exploration ex = explore(group, w, limits, false, true);
  if (ex.moved) return Verdict::No;
  return ex.truncated ? Verdict::Unknown : Verdict::Yes;
}

Verdict equal(const Group &group, const GroupWord &g1, const GroupWord &g2, const Limits &limits) {
  return is_identity(group, group.multiply(g1, group.inverse(g2)), limits);
}

}  // namespace selfsim
