#include "walkerlie/specfile.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace walkerlie {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

Rational rational_of(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return rational_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(what + ": " + e.what());
    }
  }
  fail(what + " must be a number or a rational string");
}

std::string expression_of(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_float()) {
    std::ostringstream os;
    os << to_string(rational_from_double(j.get<double>()));
    return os.str();
  }
  fail(what + " must be an expression string or a number");
}

std::vector<std::vector<std::string>> expr_matrix_of(const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of rows");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) {
    if (!row.is_array()) fail(what + " rows must be arrays");
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(expression_of(e, what));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

ZeroContext SpecDocument::zero_context() const {
  ZeroContext ctx;
  ctx.seed = seed;
  if (tolerance) ctx.tol = *tolerance;
  return ctx;
}

SpecDocument parse_spec_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("document must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) fail("missing \"kind\"");

  SpecDocument doc;
  doc.kind = j["kind"].get<std::string>();
  if (j.contains("seed")) doc.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tolerance")) doc.tolerance = j["tolerance"].get<double>();

  if (doc.kind == "walker3") {
    if (!j.contains("f")) fail("walker3 requires \"f\"");
    doc.f = expression_of(j["f"], "f");
    doc.epsilon = j.value("epsilon", 1);
    if (doc.epsilon != 1 && doc.epsilon != -1) fail("epsilon must be +1 or -1");
  } else if (doc.kind == "walker4") {
    for (const char* key : {"a", "b", "c"}) {
      if (!j.contains(key)) fail(std::string("walker4 requires \"") + key + "\"");
    }
    doc.a = expression_of(j["a"], "a");
    doc.b = expression_of(j["b"], "b");
    doc.c = expression_of(j["c"], "c");
  } else if (doc.kind == "walker_general") {
    if (!j.contains("dimension") || !j.contains("rank"))
      fail("walker_general requires \"dimension\" and \"rank\"");
    doc.dimension = j["dimension"].get<int>();
    doc.rank = j["rank"].get<int>();
    if (j.contains("coordinates")) {
      for (const auto& c : j["coordinates"]) doc.coordinates.push_back(c.get<std::string>());
    }
    doc.h_block = j.contains("h") ? expr_matrix_of(j["h"], "h")
                                  : std::vector<std::vector<std::string>>{};
    doc.a_block = j.contains("a") ? expr_matrix_of(j["a"], "a")
                                  : std::vector<std::vector<std::string>>{};
    doc.b_block = j.contains("b") ? expr_matrix_of(j["b"], "b")
                                  : std::vector<std::vector<std::string>>{};
  } else if (doc.kind == "lie_group" || doc.kind == "deformation") {
    if (!j.contains("dimension")) fail(doc.kind + " requires \"dimension\"");
    doc.dimension = j["dimension"].get<int>();
    if (!j.contains("brackets") || !j["brackets"].is_array())
      fail(doc.kind + " requires a \"brackets\" array");
    for (const auto& b : j["brackets"]) doc.brackets.push_back(b.get<std::string>());
    if (j.contains("basis")) {
      for (const auto& b : j["basis"]) doc.basis.push_back(b.get<std::string>());
    }
    if (doc.kind == "lie_group") {
      if (!j.contains("metric")) fail("lie_group requires \"metric\"");
      for (const auto& row : j["metric"]) {
        RatVector r;
        for (const auto& e : row) r.push_back(rational_of(e, "metric entry"));
        doc.metric.push_back(std::move(r));
      }
      if (j.contains("subspaces")) {
        for (const auto& s : j["subspaces"]) {
          SubspaceSpec sub;
          sub.name = s.value("name", "D");
          if (!s.contains("span")) fail("subspace requires \"span\"");
          for (const auto& v : s["span"]) {
            RatVector vec;
            for (const auto& e : v) vec.push_back(rational_of(e, "subspace entry"));
            sub.span.push_back(std::move(vec));
          }
          doc.subspaces.push_back(std::move(sub));
        }
      }
    } else {
      if (!j.contains("grid") || !j["grid"].is_array())
        fail("deformation requires a \"grid\" array");
      for (const auto& t : j["grid"]) doc.grid.push_back(rational_of(t, "grid value"));
    }
  } else {
    fail("unknown kind '" + doc.kind + "'");
  }

  if (j.contains("curves")) {
    for (const auto& c : j["curves"]) {
      CurveSpec cs;
      cs.type = c.value("type", "polyline");
      if (cs.type == "polyline") {
        if (!c.contains("vertices")) fail("polyline curve requires \"vertices\"");
        for (const auto& v : c["vertices"]) {
          std::vector<double> vert;
          for (const auto& x : v) vert.push_back(x.get<double>());
          cs.vertices.push_back(std::move(vert));
        }
      } else if (cs.type == "parametric") {
        if (!c.contains("components") || !c.contains("range"))
          fail("parametric curve requires \"components\" and \"range\"");
        for (const auto& e : c["components"]) cs.components.push_back(expression_of(e, "component"));
        cs.t_begin = c["range"][0].get<double>();
        cs.t_end = c["range"][1].get<double>();
      } else {
        fail("unknown curve type '" + cs.type + "'");
      }
      doc.curves.push_back(std::move(cs));
    }
  }
  if (j.contains("representation")) {
    const auto& rep = j["representation"];
    if (rep.is_string()) {
      doc.representation = rep.get<std::string>();
    } else if (rep.is_object()) {
      doc.representation = "custom";
      if (!rep.contains("size") || !rep.contains("generators"))
        fail("a custom representation needs \"size\" and \"generators\"");
      doc.representation_size = rep["size"].get<int>();
      for (const auto& gen : rep["generators"]) {
        std::vector<RatVector> m;
        for (const auto& row : gen) {
          RatVector r;
          for (const auto& e : row) r.push_back(rational_of(e, "generator entry"));
          m.push_back(std::move(r));
        }
        doc.representation_generators.push_back(std::move(m));
      }
    } else {
      fail("\"representation\" must be a name or an object");
    }
  }
  return doc;
}

SpecDocument load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open spec file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

WalkerSpec walker_spec_of(const SpecDocument& doc) {
  ZeroContext ctx = doc.zero_context();
  if (doc.kind == "walker3") {
    Chart chart = coordinate_chart(3);
    return walker3_spec(parse(doc.f, chart), doc.epsilon);
  }
  if (doc.kind == "walker4") {
    Chart chart = coordinate_chart(4);
    return walker4_spec(parse(doc.a, chart), parse(doc.b, chart), parse(doc.c, chart));
  }
  if (doc.kind == "walker_general") {
    int n = doc.dimension;
    int r = doc.rank;
    if (n <= 0 || r <= 0) throw ValidationError("dimension and rank must be positive");
    Chart chart = doc.coordinates.empty() ? coordinate_chart(n) : Chart(doc.coordinates);
    if (chart.dim() != n) throw ValidationError("coordinate count differs from dimension");
    auto to_exprs = [&chart](const std::vector<std::vector<std::string>>& rows) {
      ExprMatrix out;
      for (const auto& row : rows) {
        ExprVector r_out;
        for (const auto& text : row) r_out.push_back(parse(text, chart));
        out.push_back(std::move(r_out));
      }
      return out;
    };
    int m = n - 2 * r;
    ExprMatrix h = doc.h_block.empty() && m == 0 ? ExprMatrix{} : to_exprs(doc.h_block);
    ExprMatrix a = doc.a_block.empty()
                       ? ExprMatrix(static_cast<std::size_t>(r),
                                    ExprVector(static_cast<std::size_t>(std::max(m, 0)), constant(0)))
                       : to_exprs(doc.a_block);
    ExprMatrix b = doc.b_block.empty()
                       ? ExprMatrix(static_cast<std::size_t>(r),
                                    ExprVector(static_cast<std::size_t>(r), constant(0)))
                       : to_exprs(doc.b_block);
    return walker_general_spec(chart, r, h, a, b, ctx);
  }
  throw ValidationError("document kind '" + doc.kind + "' does not define a Walker metric");
}

std::vector<ExprPtr> parse_bracket_lines(const std::vector<std::string>& lines, int dim,
                                         const std::string& parameter) {
  std::vector<std::string> names;
  if (!parameter.empty()) names.push_back(parameter);
  for (int i = 1; i <= dim; ++i) names.push_back("e" + std::to_string(i));
  Chart chart(names);

  std::vector<ExprPtr> c(static_cast<std::size_t>(dim * dim * dim), constant(0));
  auto idx = [dim](int k, int i, int j) {
    return static_cast<std::size_t>((k * dim + i) * dim + j);
  };
  for (const auto& line : lines) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("bracket entry needs '=': " + line);
    std::string lhs = line.substr(0, eq);
    std::string rhs = line.substr(eq + 1);
    auto open = lhs.find('[');
    auto comma = lhs.find(',');
    auto close = lhs.find(']');
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos)
      throw ValidationError("bracket entry needs '[i,j]': " + line);
    int i = 0, j = 0;
    try {
      i = std::stoi(lhs.substr(open + 1, comma - open - 1));
      j = std::stoi(lhs.substr(comma + 1, close - comma - 1));
    } catch (const std::exception&) {
      throw ValidationError("bracket indices must be integers: " + line);
    }
    if (i < 1 || j < 1 || i > dim || j > dim)
      throw ValidationError("bracket indices out of range: " + line);
    if (i == j) throw ValidationError("bracket of a vector with itself is zero: " + line);

    ExprPtr rhs_expr = parse(rhs, chart);
    // Extract linear coefficients in the basis symbols and verify nothing
    // quadratic or cross remains.
    std::vector<ExprPtr> residual_terms{rhs_expr};
    for (int k = 0; k < dim; ++k) {
      std::string ek = "e" + std::to_string(k + 1);
      ExprPtr coef = differentiate(rhs_expr, ek);
      for (int m = 0; m < dim; ++m) {
        if (free_variables(coef).count("e" + std::to_string(m + 1)))
          throw ValidationError("bracket entry is not linear in the basis: " + line);
      }
      c[idx(k, i - 1, j - 1)] = coef;
      c[idx(k, j - 1, i - 1)] = simplify(negate(coef));
      residual_terms.push_back(negate(product(coef, Expr::make_variable(ek))));
    }
    if (!is_zero(sum(std::move(residual_terms))).zero)
      throw ValidationError("bracket entry is not linear in the basis: " + line);
  }
  return c;
}

LieAlgebra algebra_of(const SpecDocument& doc) {
  std::vector<ExprPtr> c = parse_bracket_lines(doc.brackets, doc.dimension, "");
  std::vector<Rational> values(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto v = ratfunc_constant(c[i]);
    if (!v) throw ValidationError("bracket coefficients must be rational constants");
    values[i] = *v;
  }
  return LieAlgebra::from_rational(doc.dimension, std::move(values), doc.basis);
}

DeformationFamily family_of(const SpecDocument& doc) {
  std::vector<ExprPtr> c = parse_bracket_lines(doc.brackets, doc.dimension, "t");
  return DeformationFamily::create(doc.dimension, "t", std::move(c), doc.zero_context());
}

Curve curve_of(const CurveSpec& cs, const Chart& chart) {
  if (cs.type == "polyline") {
    std::vector<Point> vertices;
    for (const auto& v : cs.vertices) {
      if (static_cast<int>(v.size()) != chart.dim())
        throw ValidationError("polyline vertex arity differs from chart dimension");
      Point p;
      for (int i = 0; i < chart.dim(); ++i) p.set(chart.name(i), v[static_cast<std::size_t>(i)]);
      vertices.push_back(std::move(p));
    }
    return polyline_curve(chart, std::move(vertices));
  }
  Chart tc({"t"});
  ExprVector comps;
  for (const auto& text : cs.components) comps.push_back(parse(text, tc));
  return parametric_curve(chart, "t", std::move(comps), cs.t_begin, cs.t_end);
}

}  // namespace walkerlie
