#pragma once

// JSON documents for states, certificates and optimiser results.
//
// State format: {"dims": [dA, dB], "re": [[...], ...], "im": [[...], ...]}
// with row-major nested arrays; a ket uses flat "re"/"im" arrays.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "entcost/channels.hpp"
#include "entcost/ef_variational.hpp"
#include "entcost/states.hpp"

namespace entcost {

using Json = nlohmann::ordered_json;

/// Malformed or structurally invalid input document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

Json to_json(const Matrix& m, DimSplit split);
Json to_json(const DensityMatrix& rho);
Json to_json(const PureState& psi);
Json to_json(const Decomposition& dec);
Json to_json(const EfResult& result);
Json to_json(const EbCertificate& cert);

/// Parses a density matrix, or a ket (turned into its projector). Structural
/// problems raise ParseError; a well-formed matrix that is not a valid state
/// raises ContractError.
DensityMatrix density_from_json(const Json& doc);
PureState pure_from_json(const Json& doc);

/// Reads and parses a file; unreadable files and bad JSON raise ParseError.
Json read_json_file(const std::string& path);

}  // namespace entcost
