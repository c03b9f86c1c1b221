#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "isotope/classify.hpp"

namespace isotope {

using json = nlohmann::ordered_json;

json field_spec_to_json(const FieldSpec& spec);
json extension_to_json(const CyclicExtension& ext);
/// Accepts {p, m, n} with an optional modulus check; builds the extension.
std::shared_ptr<const CyclicExtension> extension_from_json(const json& j);

json operator_to_json(const TwistedOperator& f);
TwistedOperator operator_from_json(const CyclicExtension& ext, const json& j);

json presentation_to_json(const IsotopePresentation& p);
IsotopePresentation presentation_from_json(const CyclicExtension& ext, const json& j);

json matrix_to_json(const FMatrix& m);
FMatrix matrix_from_json(const json& j);

json tensor_to_json(const AlgebraStructure& a);
/// Reads {n, q_spec, c}; builds the ambient extension from q_spec.
std::pair<std::shared_ptr<const CyclicExtension>, AlgebraStructure> tensor_from_json(
    const json& j);

json witness_to_json(const IsoWitness& w);
json witness_to_json(const CriticalWitness& w);

json tag_to_json(const TypeTag& t);
json atlas_to_json(const AtlasReport& r);

/// Wraps a thrown error as {error: {kind, message}}.
json error_to_json(const std::string& kind, const std::string& message);

}  // namespace isotope
