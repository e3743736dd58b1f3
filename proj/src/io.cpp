#include "qgft/io.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <fstream>

namespace qgft {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw IoError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw IoError(std::string(what) + ": expected a number");
  return v.get<double>();
}

ComplexMatrix read_planes(const Json& j, Index size, const char* what) {
  const Json& re = field(j, "re", what);
  const Json& im = field(j, "im", what);
  if (!re.is_array() || !im.is_array() || static_cast<Index>(re.size()) != size ||
      static_cast<Index>(im.size()) != size) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(size) + " rows");
  }
  ComplexMatrix m(size, size);
  for (Index r = 0; r < size; ++r) {
    const Json& rr = re[static_cast<std::size_t>(r)];
    const Json& ir = im[static_cast<std::size_t>(r)];
    if (!rr.is_array() || !ir.is_array() || static_cast<Index>(rr.size()) != size ||
        static_cast<Index>(ir.size()) != size) {
      throw DimensionMismatch(std::string(what) + ": row " + std::to_string(r) + " has wrong length");
    }
    for (Index c = 0; c < size; ++c) {
      m(r, c) = Complex(number(rr[static_cast<std::size_t>(c)], what),
                        number(ir[static_cast<std::size_t>(c)], what));
    }
  }
  require_finite(m, what);
  return m;
}

Json write_planes(const ComplexMatrix& m, Index n) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

std::size_t parse_size(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw IoError("bad group spec \"" + std::string(spec) + "\"");
  }
  return value;
}

std::optional<FiniteGroup> parse_builtin(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  if (colon == std::string_view::npos) {
    if (spec == "s3") return FiniteGroup::symmetric(3);
    if (spec == "s4") return FiniteGroup::symmetric(4);
    return std::nullopt;
  }
  const std::string_view arg = spec.substr(colon + 1);
  if (head == "cyclic") return FiniteGroup::cyclic(parse_size(arg, spec));
  if (head == "dihedral") return FiniteGroup::dihedral(parse_size(arg, spec));
  if (head == "symmetric") return FiniteGroup::symmetric(parse_size(arg, spec));
  if (head == "product") {
    // The separator is the first 'x' at which both sides parse.
    for (std::size_t pos = arg.find('x'); pos != std::string_view::npos; pos = arg.find('x', pos + 1)) {
      try {
        FiniteGroup left = parse_group_spec(arg.substr(0, pos));
        FiniteGroup right = parse_group_spec(arg.substr(pos + 1));
        return FiniteGroup::direct_product(left, right);
      } catch (const IoError&) {
        continue;
      }
    }
    throw IoError("bad product spec \"" + std::string(spec) + "\"");
  }
  return std::nullopt;
}

}  // namespace

FiniteGroup cayley_from_json(const Json& j) {
  const char* what = "Cayley table";
  if (!j.is_object()) {
    throw GroupError(GroupErrorKind::malformed_table, "expected an object with order and table");
  }
  if (!j.contains("table") || !j.at("table").is_array()) {
    throw GroupError(GroupErrorKind::malformed_table, "missing \"table\" array");
  }
  std::vector<std::vector<std::size_t>> rows;
  for (const Json& row : j.at("table")) {
    if (!row.is_array()) throw GroupError(GroupErrorKind::malformed_table, "rows must be arrays");
    std::vector<std::size_t> r;
    for (const Json& v : row) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw GroupError(GroupErrorKind::out_of_range,
                         "row " + std::to_string(rows.size()) + ": entries must be non-negative integers");
      }
      r.push_back(v.get<std::size_t>());
    }
    rows.push_back(std::move(r));
  }
  if (j.contains("order")) {
    const Json& order = j.at("order");
    if (!order.is_number_integer() || order.get<long long>() != static_cast<long long>(rows.size())) {
      throw GroupError(GroupErrorKind::malformed_table,
                       std::string(what) + ": order does not match the number of rows");
    }
  }
  return FiniteGroup::from_cayley_table(rows);
}

Json cayley_to_json(const FiniteGroup& g) {
  return Json{{"order", g.order()}, {"table", g.table()}};
}

MultiplicativeUnitary unitary_from_json(const Json& j) {
  const char* what = "unitary";
  const Json& nj = field(j, "n", what);
  if (!nj.is_number_integer() || nj.get<long long>() < 1) throw IoError("unitary: n must be a positive integer");
  const auto n = nj.get<Index>();
  return MultiplicativeUnitary::dense(read_planes(j, n * n, what));
}

Json unitary_to_json(const MultiplicativeUnitary& mu) {
  return write_planes(mu.matrix(), mu.dimension());
}

Json matrix_to_json(const ComplexMatrix& m) { return write_planes(m, m.rows()); }

ComplexMatrix matrix_from_json(const Json& j) {
  const Json& nj = field(j, "n", "matrix");
  if (!nj.is_number_integer() || nj.get<long long>() < 0) throw IoError("matrix: n must be a non-negative integer");
  return read_planes(j, nj.get<Index>(), "matrix");
}

GroupFunction function_from_json(const Json& j) {
  const Json& values = field(j, "values", "function");
  if (!values.is_array()) throw IoError("function: \"values\" must be an array");
  GroupFunction f(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Json& v = values[i];
    if (!v.is_array() || v.size() != 2) {
      throw IoError("function: entry " + std::to_string(i) + " must be [re, im]");
    }
    f(static_cast<Index>(i)) = Complex(number(v[0], "function"), number(v[1], "function"));
    if (!std::isfinite(f(static_cast<Index>(i)).real()) || !std::isfinite(f(static_cast<Index>(i)).imag())) {
      throw NonFiniteEntry("function: entry " + std::to_string(i) + " is not finite");
    }
  }
  return f;
}

Json function_to_json(const GroupFunction& f) {
  Json values = Json::array();
  for (Index i = 0; i < f.size(); ++i) values.push_back(Json::array({f(i).real(), f(i).imag()}));
  return Json{{"values", std::move(values)}};
}

FiniteGroup parse_group_spec(std::string_view spec) {
  if (auto g = parse_builtin(spec)) return *std::move(g);
  const std::filesystem::path path{std::string(spec)};
  if (!std::filesystem::is_regular_file(path)) {
    throw IoError("unknown group \"" + std::string(spec) + "\" (not a shorthand or a file)");
  }
  return cayley_from_json(read_json_file(path));
}

}  // namespace qgft
