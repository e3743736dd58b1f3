#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qgft/group.hpp"
#include "qgft/group_model.hpp"
#include "qgft/unitary.hpp"

namespace qgft {

class IoError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);

/// { "order": n, "table": [[...]] }
FiniteGroup cayley_from_json(const Json& j);
Json cayley_to_json(const FiniteGroup& g);

/// { "n": n, "re": [[...]], "im": [[...]] } with an n²×n² matrix.
MultiplicativeUnitary unitary_from_json(const Json& j);
Json unitary_to_json(const MultiplicativeUnitary& mu);

/// { "n": rows, "re": [[...]], "im": [[...]] } for a square operator.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// { "values": [[re, im], ...] }
GroupFunction function_from_json(const Json& j);
Json function_to_json(const GroupFunction& f);

/// cyclic:<n>, dihedral:<m>, symmetric:<k>, s3, s4, product:<spec>x<spec>,
/// or the path of a Cayley table file.
FiniteGroup parse_group_spec(std::string_view spec);

}  // namespace qgft
