#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvpa/courant.hpp"
#include "cvpa/graded_view.hpp"
#include "cvpa/tca.hpp"

namespace cvpa {

/// Positioned error in a structure file. Lines and columns start at 1;
/// column 0 means the whole line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, std::string message);
  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_;
  int line_;
  int column_;
  std::string message_;
};

struct Binding {
  std::string key;    // "bracket", "prod 0 1 1", ...
  std::string value;  // a name, "0", or a vector expression
  int line = 0;
  int column = 0;
  bool operator==(const Binding&) const = default;
};

struct StructureSection {
  std::string kind;  // courant | 1tca | graded-vpa
  std::vector<Binding> bindings;
  int line = 0;
  bool operator==(const StructureSection&) const = default;
};

/// Line-oriented structure-constant file:
///
///   META cutoff 3
///   SPACE A : e x
///   PRODUCT mult A A -> A symmetric
///     (e,e) -> e
///   END
///   MAP partial A -> B
///     (x) -> dx
///   END
///   STRUCTURE courant
///     bracket = bracket
///   END
///
/// Entry keys are basis labels or 0-based indices; unspecified entries are
/// zero. A symmetric or antisymmetric flag fills the mirror of any entry
/// that is not given explicitly. '#' starts a comment.
struct StructureFile {
  std::string source = "<input>";
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<SpaceRef> spaces;
  std::vector<std::pair<std::string, BilinearMap>> products;
  std::vector<std::pair<std::string, LinearMap>> maps;
  std::optional<StructureSection> structure;

  SpaceRef find_space(std::string_view name) const;
  const BilinearMap* find_product(std::string_view name) const;
  const LinearMap* find_map(std::string_view name) const;
  std::optional<std::string> find_meta(std::string_view key) const;
};

StructureFile parse(std::string_view text, std::string source = "<input>");
/// Throws ParseError with line 0 when the file cannot be read.
StructureFile parse_file(const std::string& path);
/// Canonical text; parse(print(f)) reproduces f up to binding positions.
std::string print(const StructureFile& f);

StructureFile courant_file(const CourantAlgebroid& x);
/// The algebra and action are optional extras that from_1tca needs.
StructureFile tca_file(const OneTruncatedConformalAlgebra& t, const UnitalCommAlgebra* algebra = nullptr,
                       const BilinearMap* action = nullptr);
StructureFile view_file(const GradedVpaView& v);

/// Throw ParseError positioned at the STRUCTURE section or binding.
CourantAlgebroid to_courant(const StructureFile& f);
OneTruncatedConformalAlgebra to_tca(const StructureFile& f);
/// Algebra and action of a 1tca file, when all of mult, unit and action are bound.
std::optional<std::pair<UnitalCommAlgebra, BilinearMap>> tca_extras(const StructureFile& f);
GradedVpaView to_view(const StructureFile& f);

}  // namespace cvpa
