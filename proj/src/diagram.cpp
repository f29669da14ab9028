#include "catsl2/diagram.hpp"

#include <fmt/format.h>

#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

namespace catsl2 {

namespace {

struct TokenInfo {
  TokenKind kind;
  std::string_view name;
  std::vector<Letter> in, out;
};

const std::array<TokenInfo, 10>& token_table() {
  using L = Letter;
  static const std::array<TokenInfo, 10> table{{
      {TokenKind::IdE, "id_e", {L::E}, {L::E}},
      {TokenKind::IdF, "id_f", {L::F}, {L::F}},
      {TokenKind::DotE, "dot_e", {L::E}, {L::E}},
      {TokenKind::DotF, "dot_f", {L::F}, {L::F}},
      {TokenKind::CrossEE, "cross_ee", {L::E, L::E}, {L::E, L::E}},
      {TokenKind::CrossFF, "cross_ff", {L::F, L::F}, {L::F, L::F}},
      {TokenKind::CupFE, "cup_fe", {}, {L::F, L::E}},
      {TokenKind::CupEF, "cup_ef", {}, {L::E, L::F}},
      {TokenKind::CapFE, "cap_fe", {L::F, L::E}, {}},
      {TokenKind::CapEF, "cap_ef", {L::E, L::F}, {}},
  }};
  return table;
}

const TokenInfo& info(TokenKind kind) { return token_table()[static_cast<std::size_t>(kind)]; }

std::string letters_text(const std::vector<Letter>& w, std::size_t from, std::size_t count) {
  std::string s;
  for (std::size_t i = from; i < from + count && i < w.size(); ++i) s += (s.empty() ? "" : " ") + std::string(w[i] == Letter::E ? "E" : "F");
  return s.empty() ? "nothing" : s;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_cap(TokenKind k) { return k == TokenKind::CapFE || k == TokenKind::CapEF; }

}  // namespace

std::string_view token_name(TokenKind kind) { return info(kind).name; }
std::vector<Letter> token_input(TokenKind kind) { return info(kind).in; }
std::vector<Letter> token_output(TokenKind kind) { return info(kind).out; }

std::string SourceSpan::to_string() const { return fmt::format("{}:{}-{}", line, column_begin, column_end); }

DiagramError::DiagramError(const std::string& message, SourceSpan span, std::string expected, std::string actual)
    : std::runtime_error(fmt::format("{}: {}", span.to_string(), message)),
      span_(span),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

std::vector<Letter> apply_layer(const std::vector<Letter>& below, const DiagramLayer& layer) {
  std::vector<Letter> above;
  std::size_t pos = 0;
  for (const auto& t : layer.tokens) {
    const TokenInfo& ti = info(t.kind);
    const std::size_t need = ti.in.size();
    if (pos + need > below.size()) {
      std::string what = is_cap(t.kind) ? "cap" : (t.kind == TokenKind::CrossEE || t.kind == TokenKind::CrossFF ? "crossing" : "strand");
      throw DiagramError(fmt::format("{} consumes {} strand{}, found {}", what, need, need == 1 ? "" : "s", below.size() - pos),
                         t.span, letters_text(ti.in, 0, need), letters_text(below, pos, need));
    }
    for (std::size_t i = 0; i < need; ++i) {
      if (below[pos + i] != ti.in[i])
        throw DiagramError(fmt::format("orientation mismatch: {} expects {}, found {}", ti.name, letters_text(ti.in, 0, need),
                                       letters_text(below, pos, need)),
                           t.span, letters_text(ti.in, 0, need), letters_text(below, pos, need));
    }
    pos += need;
    above.insert(above.end(), ti.out.begin(), ti.out.end());
  }
  if (pos != below.size())
    throw DiagramError(fmt::format("layer consumes {} strand{}, the word below has {}", pos, pos == 1 ? "" : "s", below.size()),
                       layer.span, fmt::format("{} strands", below.size()), fmt::format("{} strands", pos));
  return above;
}

SignedWord DiagramAST::codomain() const {
  std::vector<Letter> w = domain.letters;
  for (const auto& l : layers) w = apply_layer(w, l);
  return SignedWord{w, weight};
}

bool DiagramAST::same_shape(const DiagramAST& o) const {
  if (N != o.N || weight != o.weight || !(domain == o.domain) || layers.size() != o.layers.size()) return false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& a = layers[i].tokens;
    const auto& b = o.layers[i].tokens;
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j].kind != b[j].kind) return false;
  }
  return true;
}

DiagramAST parse_diagram(const std::string& text) {
  DiagramAST ast;
  std::optional<int> N, weight;
  bool have_domain = false;
  std::vector<Letter> word, domain_letters;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const int indent = static_cast<int>(line.find_first_not_of(" \t"));
    SourceSpan whole{line_no, indent + 1, static_cast<int>(line.find_last_not_of(" \t")) + 2};

    auto colon = line.find(':');
    auto eq = line.find('=');
    if (colon != std::string::npos && trim(line.substr(0, colon)) == "layer") {
      if (!N || !weight || !have_domain)
        throw DiagramError("layer before the header is complete", whole, "N, weight and domain lines", "layer");
      DiagramLayer layer;
      layer.span = whole;
      std::size_t i = colon + 1;
      while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        std::string name = line.substr(i, j - i);
        SourceSpan span{line_no, static_cast<int>(i) + 1, static_cast<int>(j) + 1};
        for (char c : name)
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw DiagramError(fmt::format("unexpected character '{}'", c), span, "a generator name", name);
        std::optional<TokenKind> kind;
        for (const auto& ti : token_table())
          if (ti.name == name) kind = ti.kind;
        if (!kind) throw DiagramError(fmt::format("unknown token '{}'", name), span, "one of id_e id_f dot_e dot_f cross_ee cross_ff cup_fe cup_ef cap_fe cap_ef", name);
        layer.tokens.push_back({*kind, span});
        i = j;
      }
      if (layer.tokens.empty() && !word.empty())
        throw DiagramError("empty layer", whole, fmt::format("{} strands", word.size()), "0 strands");
      word = apply_layer(word, layer);
      ast.layers.push_back(std::move(layer));
      continue;
    }
    if (eq == std::string::npos)
      throw DiagramError("expected 'key = value' or 'layer: ...'", whole, "N, weight, domain or layer", trim(line));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    SourceSpan vspan{line_no, static_cast<int>(line.find(value, eq + 1)) + 1, 0};
    vspan.column_end = vspan.column_begin + static_cast<int>(value.size());
    if (!ast.layers.empty()) throw DiagramError("header line after the first layer", whole, "layer", key);
    if (key == "N" || key == "weight") {
      auto v = parse_int(value);
      if (!v) throw DiagramError(fmt::format("{} must be an integer", key), vspan, "integer", value);
      if (key == "N") {
        if (*v < 1) throw DiagramError("N must be positive", vspan, "N >= 1", value);
        N = v;
      } else {
        weight = v;
      }
    } else if (key == "domain") {
      try {
        word = SignedWord::parse(value, 0).letters;
        domain_letters = word;
      } catch (const std::invalid_argument& e) {
        throw DiagramError(e.what(), vspan, "E/F letters or 1", value);
      }
      have_domain = true;
    } else {
      throw DiagramError(fmt::format("unknown header key '{}'", key), whole, "N, weight or domain", key);
    }
  }
  SourceSpan end{line_no + 1, 1, 1};
  if (!N) throw DiagramError("missing 'N = ...' line", end, "N line", "end of input");
  if (!weight) throw DiagramError("missing 'weight = ...' line", end, "weight line", "end of input");
  if (!have_domain) throw DiagramError("missing 'domain = ...' line", end, "domain line", "end of input");
  if (((*weight + *N) % 2 + 2) % 2 != 0)
    throw DiagramError(fmt::format("weight {} has the wrong parity for N = {}", *weight, *N), end, "weight + N even",
                       std::to_string(*weight));
  ast.N = *N;
  ast.weight = *weight;
  ast.domain = SignedWord{domain_letters, *weight};
  return ast;
}

std::string render_diagram(const DiagramAST& ast) {
  std::string s = fmt::format("N = {}\nweight = {}\ndomain = {}\n", ast.N, ast.weight, ast.domain.letters_string());
  for (const auto& l : ast.layers) {
    s += "layer:";
    for (const auto& t : l.tokens) s += " " + std::string(token_name(t.kind));
    s += "\n";
  }
  return s;
}

int table_degree(const DiagramAST& ast) {
  // The region right of a token is fixed by everything right of it in the same slice.
  int total = 0;
  std::vector<Letter> word = ast.domain.letters;
  for (const auto& layer : ast.layers) {
    std::vector<Letter> next = apply_layer(word, layer);
    int region = ast.weight;
    for (auto it = layer.tokens.rbegin(); it != layer.tokens.rend(); ++it) {
      const TokenInfo& ti = info(it->kind);
      switch (it->kind) {
        case TokenKind::DotE:
        case TokenKind::DotF:
          total += 2;
          break;
        case TokenKind::CrossEE:
        case TokenKind::CrossFF:
          total -= 2;
          break;
        case TokenKind::CupFE:
        case TokenKind::CapFE:
          total += region + 1;
          break;
        case TokenKind::CupEF:
        case TokenKind::CapEF:
          total += 1 - region;
          break;
        default:
          break;
      }
      for (Letter l : ti.in) region += l == Letter::E ? 2 : -2;
    }
    word = std::move(next);
  }
  return total;
}

BimMap compile_layers(const FlagPath& domain, const std::vector<std::vector<TokenKind>>& layers) {
  BimMap result = BimMap::identity(domain);
  for (const auto& tokens : layers) {
    FlagPath path = result.codomain();
    std::vector<Letter> below;
    for (int i = 0; i < path.length(); ++i) below.push_back(strand_letter(path, i));
    DiagramLayer layer;
    for (TokenKind k : tokens) layer.tokens.push_back({k, {}});
    apply_layer(below, layer);
    std::vector<int> offsets;
    int pos = 0;
    for (TokenKind k : tokens) {
      offsets.push_back(pos);
      pos += static_cast<int>(info(k).in.size());
    }
    for (int t = static_cast<int>(tokens.size()) - 1; t >= 0; --t) {
      const FlagPath& p = result.codomain();
      const int at = offsets[t];
      switch (tokens[t]) {
        case TokenKind::IdE:
        case TokenKind::IdF:
          continue;
        case TokenKind::DotE:
        case TokenKind::DotF:
          result = compose_vertical(gen_dot(p, at), result);
          break;
        case TokenKind::CrossEE:
          result = compose_vertical(gen_crossing(CrossingKind::Upward, p, at), result);
          break;
        case TokenKind::CrossFF:
          result = compose_vertical(gen_crossing(CrossingKind::Downward, p, at), result);
          break;
        case TokenKind::CupFE:
          result = compose_vertical(gen_cup(CupKind::FE, p, at), result);
          break;
        case TokenKind::CupEF:
          result = compose_vertical(gen_cup(CupKind::EF, p, at), result);
          break;
        case TokenKind::CapFE:
          result = compose_vertical(gen_cap(CupKind::FE, p, at), result);
          break;
        case TokenKind::CapEF:
          result = compose_vertical(gen_cap(CupKind::EF, p, at), result);
          break;
      }
    }
  }
  return result;
}

BimMap compile_layers(const FlagPath& domain, const std::vector<std::string>& layers) {
  std::vector<std::vector<TokenKind>> parsed;
  for (const auto& text : layers) {
    std::vector<TokenKind> tokens;
    std::istringstream in(text);
    std::string name;
    while (in >> name) {
      std::optional<TokenKind> kind;
      for (const auto& ti : token_table())
        if (ti.name == name) kind = ti.kind;
      if (!kind) throw std::invalid_argument(fmt::format("unknown token '{}'", name));
      tokens.push_back(*kind);
    }
    parsed.push_back(std::move(tokens));
  }
  return compile_layers(domain, parsed);
}

BimMap compile_diagram(const DiagramAST& ast, std::vector<std::string>* warnings) {
  FlagPath domain = compile_word(ast.domain, ast.N);
  if (domain.is_zero()) {
    if (warnings) warnings->push_back(fmt::format("domain {} is the zero bimodule; the diagram is the zero map", domain.to_string()));
  }
  std::vector<std::vector<TokenKind>> layers;
  for (const auto& l : ast.layers) {
    std::vector<TokenKind> t;
    for (const auto& tok : l.tokens) t.push_back(tok.kind);
    layers.push_back(std::move(t));
  }
  BimMap f = compile_layers(domain, layers);
  if (domain.is_zero()) return BimMap::zero(f.domain(), f.codomain(), table_degree(ast));
  return f;
}

}  // namespace catsl2
