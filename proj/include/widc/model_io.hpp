#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "widc/committee.hpp"

namespace widc {

// {n, c, class_names, rules:[{pos_literals, neg_literals, votes}], default}
// plus variable_names when present. Unknown keys are ignored on load.
nlohmann::json to_json(const DecisionCommittee& dc);
DecisionCommittee committee_from_json(const nlohmann::json& j);

std::string dump_model(const DecisionCommittee& dc);

}  // namespace widc
