#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catsl2/twomorphism.hpp"

namespace catsl2 {

enum class TokenKind { IdE, IdF, DotE, DotF, CrossEE, CrossFF, CupFE, CupEF, CapFE, CapEF };

std::string_view token_name(TokenKind kind);
/// Strands a token takes from below and the strands it leaves above, left to right.
std::vector<Letter> token_input(TokenKind kind);
std::vector<Letter> token_output(TokenKind kind);

/// 1-based line, 1-based half-open column range.
struct SourceSpan {
  int line = 0;
  int column_begin = 0;
  int column_end = 0;
  std::string to_string() const;  // "3:8-14"
};

struct DiagramToken {
  TokenKind kind = TokenKind::IdE;
  SourceSpan span;
};

struct DiagramLayer {
  std::vector<DiagramToken> tokens;
  SourceSpan span;
};

/// Layers are listed bottom first. weight is the rightmost region, which no generator changes.
struct DiagramAST {
  int N = 1;
  int weight = 0;
  SignedWord domain;
  std::vector<DiagramLayer> layers;

  /// Word after all layers.
  SignedWord codomain() const;
  /// Structural equality; spans are ignored.
  bool same_shape(const DiagramAST& o) const;
};

class DiagramError : public std::runtime_error {
 public:
  DiagramError(const std::string& message, SourceSpan span, std::string expected = "", std::string actual = "");
  const SourceSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

 private:
  SourceSpan span_;
  std::string expected_, actual_;
};

/// Parses and type checks. Throws DiagramError.
DiagramAST parse_diagram(const std::string& text);
/// Canonical text; parse_diagram(render_diagram(a)) has the same shape as a.
std::string render_diagram(const DiagramAST& ast);

/// Checks that a layer fits on the given word and returns the word above it.
std::vector<Letter> apply_layer(const std::vector<Letter>& below, const DiagramLayer& layer);

/// Sum of the table degrees of all generators in the diagram.
int table_degree(const DiagramAST& ast);

/// Vertical composite of the layers, bottom to top. If the domain is the zero bimodule the result is the
/// zero map and a message is appended to warnings.
BimMap compile_diagram(const DiagramAST& ast, std::vector<std::string>* warnings = nullptr);

/// Compiles slices given as token strings ("id_f cup_ef") on an explicit domain path.
BimMap compile_layers(const FlagPath& domain, const std::vector<std::string>& layers);
BimMap compile_layers(const FlagPath& domain, const std::vector<std::vector<TokenKind>>& layers);

/// Parses an element of the bimodule on path, in the grammar of README "Element expressions", and normalizes it.
/// Throws DiagramError (line 1) on lexical or typing errors.
BimElement parse_element(const std::string& text, const FlagPath& path);

}  // namespace catsl2
