#include "tripsim/report_json.hpp"

namespace tripsim {

namespace {

const char* sign_str(Sign s) { return s == Sign::plus ? "+" : "-"; }

}  // namespace

nlohmann::json report_to_json(const CriterionReport& r) {
  nlohmann::json j;
  j["v12"] = r.v12;
  j["v13"] = r.v13;
  j["v23"] = r.v23;
  j["vlf_violated"] = r.vlf_violated;

  j["duan"] = nlohmann::json::array();
  for (const auto& d : r.duan) {
    j["duan"].push_back({{"pair", {d.i, d.j}},
                         {"value", d.value},
                         {"violated", d.violated}});
  }

  j["epr_two_mode"] = nlohmann::json::array();
  for (const auto& e : r.epr_two_mode) {
    j["epr_two_mode"].push_back({{"mode", e.a},
                                 {"combo", {e.b, e.c}},
                                 {"sign", sign_str(e.sign)},
                                 {"vinf_x", e.vinf_x},
                                 {"vinf_y", e.vinf_y},
                                 {"product", e.product},
                                 {"violated", e.violated}});
  }

  j["epr_one_mode"] = nlohmann::json::array();
  for (const auto& e : r.epr_one_mode) {
    j["epr_one_mode"].push_back({{"pair", {e.a, e.b}},
                                 {"inferring_mode", e.c},
                                 {"sign", sign_str(e.sign)},
                                 {"vinf_x", e.vinf_x},
                                 {"vinf_y", e.vinf_y},
                                 {"product", e.product},
                                 {"violated", e.violated}});
  }

  j["tripartite_confirmed"] = {{"vlf", r.vlf_confirmed},
                               {"epr_two_mode", r.epr_two_confirmed},
                               {"epr_one_mode", r.epr_one_confirmed},
                               {"any", r.tripartite_confirmed}};
  j["permutation_symmetric"] = r.permutation_symmetric;
  j["vxy_nonzero"] = r.vxy_nonzero;
  return j;
}

}  // namespace tripsim
