#include "vag/presentation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "vag/errors.hpp"
#include "vag/preset_data.hpp"

namespace vag {

std::optional<std::size_t> VAPresentation::generator_index(std::string_view generator) const {
  auto it = std::find(generators.begin(), generators.end(), generator);
  if (it == generators.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators.begin());
}

std::optional<std::size_t> VAPresentation::letter_index(std::string_view symbol) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i].symbol == symbol) return i;
  return std::nullopt;
}

void VAPresentation::validate() const {
  const std::size_t n = generators.size();
  const std::size_t m = quotient.order();
  if (action.size() != m) throw PresentationError("ACTION must have one line per quotient element");
  for (const auto& perm : action) {
    if (perm.size() != n) throw PresentationError("ACTION line length differs from generator count");
    std::vector<bool> seen(n, false);
    for (auto i : perm) {
      if (i >= n || seen[i]) throw PresentationError("ACTION line is not a permutation");
      seen[i] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (action[quotient.identity()][i] != i) throw PresentationError("identity must act trivially");
  for (QuotientIndex q = 0; q < m; ++q)
    for (QuotientIndex r = 0; r < m; ++r)
      for (std::size_t i = 0; i < n; ++i)
        if (action[q][action[r][i]] != action[quotient.multiply(q, r)][i])
          throw PresentationError("ACTION is not a group action: fails at (" + quotient.name(q) + ", " +
                                  quotient.name(r) + ", " + generators[i] + ")");
  for (const auto& rel : relations)
    if (rel.size() != n) throw PresentationError("relation length differs from generator count");
  if (epsilon && epsilon->size() != n) throw PresentationError("EPSILON length differs from generator count");
  if (alphabet.empty()) throw PresentationError("alphabet is empty");
  for (const auto& letter : alphabet) {
    if (letter.lattice.size() != n) throw PresentationError("letter '" + letter.symbol + "' has wrong lattice length");
    if (letter.quotient >= m) throw PresentationError("letter '" + letter.symbol + "' has bad quotient element");
    if (letter.weight <= 0) throw PresentationError("letter '" + letter.symbol + "' must have positive weight");
    auto inv = letter_index(letter.inverse_symbol);
    if (!inv) throw PresentationError("inverse '" + letter.inverse_symbol + "' of '" + letter.symbol + "' is not in the alphabet");
    const Letter& other = alphabet[*inv];
    if (other.inverse_symbol != letter.symbol)
      throw PresentationError("letters '" + letter.symbol + "' and '" + other.symbol + "' are not mutually inverse");
    if (other.weight != letter.weight)
      throw PresentationError("letter '" + letter.symbol + "' and its inverse have different weights");
  }
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < alphabet.size(); ++j)
      if (alphabet[i].symbol == alphabet[j].symbol) throw PresentationError("duplicate symbol '" + alphabet[i].symbol + "'");
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::optional<Int> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) {
    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::string section;
    while (std::getline(in, raw)) {
      ++number;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      auto tokens = split(raw);
      if (tokens.empty()) continue;
      static const std::vector<std::string> kSections = {"NAME", "QUOTIENT", "LATTICE_GENERATORS", "ACTION",
                                                         "RELATIONS", "ALPHABET", "EPSILON"};
      if (std::find(kSections.begin(), kSections.end(), tokens.front()) != kSections.end()) {
        section = tokens.front();
        if (section_lines_.count(section)) fail(number, "duplicate section " + section);
        section_lines_[section];
        section_start_[section] = number;
        tokens.erase(tokens.begin());
        if (tokens.empty()) continue;
      }
      if (section.empty()) fail(number, "content before first section header");
      section_lines_[section].push_back({number, std::move(tokens)});
    }
  }

  VAPresentation parse() {
    VAPresentation p;
    if (auto it = section_lines_.find("NAME"); it != section_lines_.end() && !it->second.empty())
      p.name = it->second.front().tokens.front();
    p.quotient = parse_quotient();
    p.generators = parse_generators();
    p.action = parse_action(p);
    p.relations = parse_relations(p);
    p.alphabet = parse_alphabet(p);
    p.epsilon = parse_epsilon(p);
    try {
      p.validate();
    } catch (const PresentationError& e) {
      throw ParseError(source_, section_for(e.what()), e.what());
    }
    return p;
  }

 private:
  [[noreturn]] void fail(std::size_t line, const std::string& what) const { throw ParseError(source_, line, what); }

  // Header line of the section a validation message is about.
  std::size_t section_for(std::string_view what) const {
    auto about = [&](std::string_view key) { return what.find(key) != std::string_view::npos; };
    const char* section = about("ACTION") || about("act trivially") ? "ACTION"
                          : about("EPSILON")                        ? "EPSILON"
                          : about("relation")                       ? "RELATIONS"
                                                                    : "ALPHABET";
    auto it = section_start_.find(section);
    return it == section_start_.end() ? 0 : it->second;
  }

  const std::vector<Line>& required(const std::string& section) const {
    auto it = section_lines_.find(section);
    if (it == section_lines_.end()) fail(0, "missing section " + section);
    return it->second;
  }

  FiniteGroup parse_quotient() {
    const auto& lines = required("QUOTIENT");
    std::vector<std::string> names;
    std::vector<const Line*> rows;
    std::optional<std::size_t> order;
    for (const auto& line : lines) {
      if (line.tokens.front() == "names") {
        names.assign(line.tokens.begin() + 1, line.tokens.end());
      } else if (line.tokens.front() == "order") {
        if (line.tokens.size() != 2) fail(line.number, "expected 'order <m>'");
        auto v = parse_int(line.tokens[1]);
        if (!v || *v <= 0) fail(line.number, "order must be a positive integer");
        order = static_cast<std::size_t>(*v);
      } else {
        rows.push_back(&line);
      }
    }
    const std::size_t m = order ? *order : (names.empty() ? rows.size() : names.size());
    if (!names.empty() && names.size() != m) fail(section_start_.at("QUOTIENT"), "names count differs from order");
    if (rows.size() != m) fail(section_start_.at("QUOTIENT"), "expected " + std::to_string(m) + " table rows");
    std::vector<std::vector<QuotientIndex>> table;
    for (const Line* row : rows) {
      if (row->tokens.size() != m) fail(row->number, "table row must have " + std::to_string(m) + " entries");
      std::vector<QuotientIndex> r;
      for (const auto& tok : row->tokens) r.push_back(quotient_token(tok, names, m, row->number));
      table.push_back(std::move(r));
    }
    try {
      return FiniteGroup(std::move(table), std::move(names));
    } catch (const PresentationError& e) {
      fail(section_start_.at("QUOTIENT"), e.what());
    }
  }

  QuotientIndex quotient_token(const std::string& tok, const std::vector<std::string>& names, std::size_t m,
                               std::size_t line) const {
    auto it = std::find(names.begin(), names.end(), tok);
    if (it != names.end()) return static_cast<QuotientIndex>(it - names.begin());
    auto v = parse_int(tok);
    if (!v || *v < 0 || static_cast<std::size_t>(*v) >= m) fail(line, "unknown quotient element '" + tok + "'");
    return static_cast<QuotientIndex>(*v);
  }

  std::vector<std::string> parse_generators() {
    std::vector<std::string> gens;
    for (const auto& line : required("LATTICE_GENERATORS"))
      for (const auto& tok : line.tokens) {
        if (std::find(gens.begin(), gens.end(), tok) != gens.end()) fail(line.number, "duplicate generator '" + tok + "'");
        gens.push_back(tok);
      }
    if (gens.empty()) fail(section_start_.at("LATTICE_GENERATORS"), "no lattice generators");
    return gens;
  }

  std::size_t generator_token(const VAPresentation& p, const std::string& tok, std::size_t line) const {
    if (auto i = p.generator_index(tok)) return *i;
    auto v = parse_int(tok);
    if (!v || *v < 0 || static_cast<std::size_t>(*v) >= p.generators.size())
      fail(line, "unknown lattice generator '" + tok + "'");
    return static_cast<std::size_t>(*v);
  }

  std::vector<std::vector<std::size_t>> parse_action(const VAPresentation& p) {
    const std::size_t m = p.quotient.order();
    std::vector<std::vector<std::size_t>> action(m);
    std::vector<bool> seen(m, false);
    for (const auto& line : required("ACTION")) {
      const auto& t = line.tokens;
      if (t.size() < 2 || t[1] != ":") fail(line.number, "expected '<element> : <images...>'");
      auto q = quotient_token(t[0], p.quotient.names(), m, line.number);
      if (seen[q]) fail(line.number, "duplicate ACTION line for '" + t[0] + "'");
      seen[q] = true;
      if (t.size() - 2 != p.generators.size()) fail(line.number, "ACTION line must list one image per generator");
      for (std::size_t i = 2; i < t.size(); ++i) action[q].push_back(generator_token(p, t[i], line.number));
    }
    for (std::size_t q = 0; q < m; ++q)
      if (!seen[q]) fail(section_start_.at("ACTION"), "missing ACTION line for '" + p.quotient.name(q) + "'");
    return action;
  }

  // Either |S| integers, or a signed combination such as "x + x_tau - 2*y".
  IntVector lattice_vector(const VAPresentation& p, const std::vector<std::string>& tokens, std::size_t line) const {
    const std::size_t n = p.generators.size();
    if (tokens.size() == n && std::all_of(tokens.begin(), tokens.end(), [](const auto& t) { return parse_int(t).has_value(); })) {
      IntVector v;
      for (const auto& t : tokens) v.push_back(*parse_int(t));
      return v;
    }
    IntVector v(n, 0);
    Int sign = 1;
    bool expect_term = true;
    for (std::string tok : tokens) {
      if (tok == "+" || tok == "-") {
        sign = tok == "-" ? -1 : 1;
        expect_term = true;
        continue;
      }
      if (!expect_term) fail(line, "expected '+' or '-' before '" + tok + "'");
      Int coeff = sign;
      if (tok.front() == '-') {
        coeff = -coeff;
        tok.erase(tok.begin());
      }
      if (auto star = tok.find('*'); star != std::string::npos) {
        auto c = parse_int(tok.substr(0, star));
        if (!c) fail(line, "bad coefficient in '" + tok + "'");
        coeff = checked::mul(coeff, *c);
        tok = tok.substr(star + 1);
      }
      auto g = p.generator_index(tok);
      if (!g) fail(line, "unknown lattice generator '" + tok + "'");
      v[*g] = checked::add(v[*g], coeff);
      sign = 1;
      expect_term = false;
    }
    if (expect_term) fail(line, "incomplete linear combination");
    return v;
  }

  std::vector<IntVector> parse_relations(const VAPresentation& p) {
    std::vector<IntVector> rels;
    auto it = section_lines_.find("RELATIONS");
    if (it == section_lines_.end()) return rels;
    for (const auto& line : it->second) rels.push_back(lattice_vector(p, line.tokens, line.number));
    return rels;
  }

  std::vector<Letter> parse_alphabet(const VAPresentation& p) {
    std::vector<Letter> letters;
    for (const auto& line : required("ALPHABET")) {
      const auto& t = line.tokens;
      if (t.size() != 5) fail(line.number, "expected '<symbol> <inverse> <lattice> <quotient> <weight>'");
      Letter letter;
      letter.symbol = t[0];
      letter.inverse_symbol = t[1];
      if (t[2] == "ZERO") {
        letter.lattice.assign(p.generators.size(), 0);
      } else if (t[2].find(',') != std::string::npos) {
        std::vector<std::string> parts;
        std::string part;
        std::istringstream in(t[2]);
        while (std::getline(in, part, ',')) parts.push_back(part);
        if (parts.size() != p.generators.size()) fail(line.number, "lattice vector has wrong length");
        for (const auto& s : parts) {
          auto v = parse_int(s);
          if (!v) fail(line.number, "bad integer '" + s + "' in lattice vector");
          letter.lattice.push_back(*v);
        }
      } else {
        letter.lattice = lattice_vector(p, {t[2]}, line.number);
      }
      letter.quotient = quotient_token(t[3], p.quotient.names(), p.quotient.order(), line.number);
      auto w = parse_int(t[4]);
      if (!w || *w <= 0) fail(line.number, "weight must be a positive integer");
      letter.weight = *w;
      for (const auto& other : letters)
        if (other.symbol == letter.symbol) fail(line.number, "duplicate symbol '" + letter.symbol + "'");
      letters.push_back(std::move(letter));
    }
    return letters;
  }

  std::optional<IntVector> parse_epsilon(const VAPresentation& p) {
    auto it = section_lines_.find("EPSILON");
    if (it == section_lines_.end()) return std::nullopt;
    std::vector<std::string> tokens;
    std::size_t line = section_start_.at("EPSILON");
    for (const auto& l : it->second) tokens.insert(tokens.end(), l.tokens.begin(), l.tokens.end());
    if (tokens.size() != p.generators.size()) fail(line, "EPSILON must list one integer per lattice generator");
    IntVector eps;
    for (const auto& tok : tokens) {
      auto v = parse_int(tok);
      if (!v) fail(line, "bad integer '" + tok + "' in EPSILON");
      eps.push_back(*v);
    }
    return eps;
  }

  std::string source_;
  std::map<std::string, std::vector<Line>> section_lines_;
  std::map<std::string, std::size_t> section_start_;
};

}  // namespace

VAPresentation parse_presentation(std::string_view text, const std::string& source) {
  return Parser(text, source).parse();
}

VAPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str(), path);
}

bool is_preset(std::string_view name) { return name == "H" || name == "G"; }

std::string_view preset_text(std::string_view name) {
  if (name == "H") return preset_data::kH;
  if (name == "G") return preset_data::kG;
  throw Error("unknown preset '" + std::string(name) + "'");
}

VAPresentation preset_presentation(std::string_view name) {
  return parse_presentation(preset_text(name), "preset:" + std::string(name));
}

}  // namespace vag
