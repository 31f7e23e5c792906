#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "stringtop/cdga.hpp"
#include "stringtop/error.hpp"
#include "stringtop/pd_algebra.hpp"
#include "stringtop/string_ops.hpp"

namespace stringtop {

/// Malformed input text; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class AlgebraKind { Sullivan, FinitePd, BG };

std::string to_string(AlgebraKind kind);

struct AlgebraFile {
  AlgebraKind kind = AlgebraKind::Sullivan;
  std::string name;
  /// Default truncation degree declared in the file.
  std::optional<int> truncation;
  std::optional<FreeCdga> sullivan;
  std::optional<FinitePdAlgebra> pd;
  std::optional<BGPresentation> bg;
};

/// Parses the sectioned key-value format described in the README. Throws
/// ParseError for syntax problems and ValidationError for structural ones.
AlgebraFile parse_algebra(std::string_view text, const std::string& source = "<input>");
AlgebraFile load_algebra(const std::filesystem::path& path);

/// Canonical text form; parse_algebra(serialize(f)) reproduces f.
std::string serialize(const AlgebraFile& file);

bool same_presentation(const AlgebraFile& a, const AlgebraFile& b);

/// Sullivan model of a BG presentation: /\(x1, ..., xn) with zero differential.
FreeCdga bg_model(const BGPresentation& g);

/// Text accepted back by the parser, "0" for zero. Ground base only.
std::string format_polynomial(const FreeCdga& a, const Element& x);
std::string format_linear(const FiniteCdga& a, const FiniteElement& x);

}  // namespace stringtop
