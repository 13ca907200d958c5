#pragma once

#include "widc/committee.hpp"

namespace fixture {

// Credit-style committee: variables NoProj, NoEdu, Lengthy, NoWholesaler;
// classes adhere, ?, not-adhere.
inline widc::DecisionCommittee credit_committee() {
  using namespace widc;
  DecisionCommittee dc(4, 3);
  dc.set_variable_names({"NoProj", "NoEdu", "Lengthy", "NoWholesaler"});
  dc.set_class_names({"adhere", "?", "not-adhere"});
  const Literal r1[] = {{0, Polarity::Positive}, {1, Polarity::Positive}};
  const Literal r2[] = {{0, Polarity::Positive}, {2, Polarity::Positive}, {3, Polarity::Positive}};
  dc.add_rule({Monomial::from_literals(4, r1), VoteVector{-1, -1, 1}});
  dc.add_rule({Monomial::from_literals(4, r2), VoteVector{1, -1, 1}});
  dc.set_default(DefaultVector({0.32, 0.68, 0.0}));
  return dc;
}

}  // namespace fixture
