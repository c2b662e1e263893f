#pragma once

#include "symcone/cone.hpp"
#include "symcone/decomp.hpp"
#include "symcone/perm_group.hpp"
#include "symcone/pivot.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symcone {

inline constexpr std::string_view kFormatHeader = "# symcone-format 1";

enum class ParseErrorKind {
  malformed_header,
  ragged_row,
  zero_row,
  bad_token,
  truncated,
  malformed_cycle,
  index_out_of_range,
  not_bijection,
  unknown_keyword,
};

std::string to_string(ParseErrorKind k);

/// `line` is 1-based; 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

enum class Representation { V, H };
enum class NumberFormat { rational, integer };

/// A cdd-style polyhedron file. Rows keep their leading column: the
/// homogenizing marker for V (1 point, 0 ray), the constant b of b + a·x ≥ 0
/// for H.
struct InputDocument {
  Representation kind = Representation::V;
  NumberFormat format = NumberFormat::rational;
  RationalMatrix rows;
  /// 0-based rows that are equations (H) or lineality directions (V).
  std::vector<int> linearity;
  /// Optional `symmetry` section, acting on rows.
  std::vector<Permutation> group;
  /// Optional `options` section of `key value` lines.
  std::map<std::string, std::string> options;

  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

InputDocument parse_document(std::string_view text);
std::string render(const InputDocument& doc);

struct Polyhedron {
  Representation kind = Representation::V;
  RationalMatrix points;
  RationalMatrix rays;
  /// Rows [b a] meaning b + a·x ≥ 0.
  RationalMatrix inequalities;
  /// Rows of `inequalities` that hold with equality.
  std::vector<int> equations;
};

/// V rows with a positive marker t are the point x/t.
Polyhedron parse_polyhedron_file(std::string_view text);

/// A V document without points describes the cone of its rays.
bool is_homogeneous(const InputDocument& doc);

/// The cone of a V document, one generator per row and in row order:
/// (x/t, 1) for points and (x, 0) for rays, or just x when the document is
/// homogeneous. For an H document, the cone generated by the rows (a, b),
/// followed by -(a, b) for each equation and by (0, ..., 0, 1). Lineality
/// rows of a V document are followed by their negations.
Cone document_cone(const InputDocument& doc);

/// One generator per line in 1-based disjoint-cycle notation. Blank lines and
/// lines starting with '#' are skipped.
PermGroup parse_group_file(std::string_view text, int degree);
std::string render_group(const PermGroup& g);

/// `generator <cycles>`, `order <labels>` and `sign <label> push|pull` lines.
/// Labels are 1-based positions in subgroup.point_orbits().
PerturbationSpec parse_perturbation_file(std::string_view text, int degree);
std::string render_perturbation(const PerturbationSpec& spec);

/// One face per line as 1-based indices.
std::vector<FaceSet> parse_face_file(std::string_view text, int degree);
std::string render_faces(const std::vector<FaceSet>& faces);

/// H-representation with integer rows [b a] from homogenized normals (a, b).
std::string render_h_representation(const std::vector<RationalVector>& normals,
                                    const std::vector<RationalVector>& equations);

std::string render_bank(const Bank& bank);
/// Stores every entry of the file into `bank`; returns how many were new.
std::size_t load_bank(std::string_view text, Bank& bank);

}  // namespace symcone
