#pragma once

#include "json.hpp"
#include "tripsim/criteria.hpp"

namespace tripsim {

nlohmann::json report_to_json(const CriterionReport& r);

}  // namespace tripsim
