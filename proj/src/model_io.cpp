#include "widc/model_io.hpp"

#include "widc/error.hpp"

namespace widc {

using nlohmann::json;

json to_json(const DecisionCommittee& dc) {
  json j;
  j["n"] = dc.n();
  j["c"] = dc.c();
  std::vector<std::string> names(dc.class_names().begin(), dc.class_names().end());
  if (names.empty())
    for (std::size_t k = 0; k < dc.c(); ++k) names.push_back(std::to_string(k));
  j["class_names"] = names;
  if (!dc.variable_names().empty())
    j["variable_names"] = std::vector<std::string>(dc.variable_names().begin(), dc.variable_names().end());
  json rules = json::array();
  for (const auto& r : dc.rules()) {
    json jr;
    jr["pos_literals"] = r.monomial.positive().indices();
    jr["neg_literals"] = r.monomial.negative().indices();
    jr["votes"] = r.votes.values();
    rules.push_back(std::move(jr));
  }
  j["rules"] = std::move(rules);
  j["default"] = std::vector<double>(dc.default_vector().values().begin(), dc.default_vector().values().end());
  return j;
}

DecisionCommittee committee_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto c = j.at("c").get<std::size_t>();
    DecisionCommittee dc(n, c);
    if (j.contains("class_names")) dc.set_class_names(j["class_names"].get<std::vector<std::string>>());
    if (j.contains("variable_names")) dc.set_variable_names(j["variable_names"].get<std::vector<std::string>>());
    for (const auto& jr : j.at("rules")) {
      Monomial m(n);
      for (auto v : jr.at("pos_literals").get<std::vector<std::size_t>>()) m.add({v, Polarity::Positive});
      for (auto v : jr.at("neg_literals").get<std::vector<std::size_t>>()) m.add({v, Polarity::Negative});
      const auto votes = jr.at("votes").get<std::vector<int>>();
      dc.add_rule({std::move(m), VoteVector(std::span<const int>(votes))});
    }
    dc.set_default(DefaultVector(j.at("default").get<std::vector<double>>()));
    return dc;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model: ") + e.what());
  } catch (const Error& e) {
    throw DataError(std::string("invalid model: ") + e.what());
  }
}

std::string dump_model(const DecisionCommittee& dc) { return to_json(dc).dump(2); }

}  // namespace widc
