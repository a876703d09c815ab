#pragma once

#include <nlohmann/json.hpp>

#include "fields.hpp"

namespace sojourn_lab {

//! Replayable JSON document: generator, parameters, seed, space, payload arrays.
nlohmann::ordered_json field_to_json(FieldRealization const& field);

//! Inverse of field_to_json. Throws ConfigError on malformed documents.
FieldRealization field_from_json(nlohmann::ordered_json const& doc);

}  // namespace sojourn_lab
