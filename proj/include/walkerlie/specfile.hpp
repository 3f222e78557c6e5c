#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walkerlie/foliation.hpp"

namespace walkerlie {

struct CurveSpec {
  std::string type;  // "polyline" | "parametric"
  std::vector<std::vector<double>> vertices;
  std::vector<std::string> components;
  double t_begin = 0;
  double t_end = 1;
};

struct SubspaceSpec {
  std::string name;
  std::vector<RatVector> span;
};

/// Parsed check document. One JSON format, five kinds:
/// walker3 | walker4 | walker_general | lie_group | deformation.
struct SpecDocument {
  std::string kind;
  std::uint64_t seed = 42;
  std::optional<double> tolerance;

  // walker3
  int epsilon = 1;
  std::string f;
  // walker4
  std::string a, b, c;
  // walker_general
  int dimension = 0;
  int rank = 0;
  std::vector<std::string> coordinates;
  std::vector<std::vector<std::string>> h_block, a_block, b_block;
  // lie_group / deformation
  std::vector<std::string> basis;
  std::vector<std::string> brackets;
  std::vector<std::vector<Rational>> metric;
  std::vector<SubspaceSpec> subspaces;
  std::vector<Rational> grid;
  // curves and the representation used to develop them
  std::vector<CurveSpec> curves;
  std::string representation = "auto";
  int representation_size = 0;
  std::vector<std::vector<std::vector<Rational>>> representation_generators;

  ZeroContext zero_context() const;
};

SpecDocument parse_spec_text(const std::string& json_text);
SpecDocument load_spec_file(const std::string& path);

// --- helpers shared with the pipeline -------------------------------------

/// Builds the Walker data for walker3/walker4/walker_general documents.
WalkerSpec walker_spec_of(const SpecDocument& doc);

/// Parses bracket lines "[i,j] = 2*e1 - 1/2*e3" into structure constants.
/// For deformation documents the coefficients may mention the parameter
/// "t". Returns the flat (k,i,j) tensor.
std::vector<ExprPtr> parse_bracket_lines(const std::vector<std::string>& lines, int dim,
                                         const std::string& parameter);

/// Exact tensor from parameter-free bracket lines.
LieAlgebra algebra_of(const SpecDocument& doc);

DeformationFamily family_of(const SpecDocument& doc);

Curve curve_of(const CurveSpec& cs, const Chart& chart);

}  // namespace walkerlie
