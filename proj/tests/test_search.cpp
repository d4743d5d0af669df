#include <doctest.h>

#include "flatpbd/design.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/search.hpp"
#include "flatpbd/verify.hpp"

using namespace flatpbd;

TEST_CASE("search_design finds a {3}-GDD of type 3^5") {
  SearchSpec spec;
  spec.type = TypeMultiset::of_sizes({3, 3, 3, 3, 3});
  spec.k = sizes({3, 4, 5});
  SearchOutcome outcome = search_design(spec);
  REQUIRE(outcome.status == SearchStatus::kFound);
  CHECK(outcome.design.gdd.type() == spec.type);
  CHECK(verify_gdd(outcome.design.gdd, spec.k).passed);
}

TEST_CASE("search_design on 1^5 yields the single 5-block") {
  SearchSpec spec;
  spec.type = TypeMultiset::of_sizes({1, 1, 1, 1, 1});
  spec.k = sizes({3, 4, 5});
  SearchOutcome outcome = search_design(spec);
  REQUIRE(outcome.status == SearchStatus::kFound);
  REQUIRE(outcome.design.gdd.blocks.size() == 1);
  CHECK(outcome.design.gdd.blocks[0] == Block{0, 1, 2, 3, 4});
}

TEST_CASE("infeasibility preflight: type 3^2 4^2 cannot exist") {
  TypeMultiset type = TypeMultiset::of_sizes({3, 3, 4, 4});
  std::string reason = infeasibility_reason(type, sizes({3, 4, 5}));
  CHECK(reason.find("73") != std::string::npos);

  SearchSpec spec;
  spec.type = type;
  spec.k = sizes({3, 4, 5});
  SearchOutcome outcome = search_design(spec);
  CHECK(outcome.status == SearchStatus::kNotFoundProven);
  CHECK(outcome.note.find("73") != std::string::npos);
}

TEST_CASE("preflight is silent on feasible types") {
  CHECK(infeasibility_reason(TypeMultiset::of_sizes({3, 3, 3, 3, 3}),
                             sizes({3, 4, 5}))
            .empty());
  CHECK(infeasibility_reason(TypeMultiset::of_sizes({1, 1, 3, 3, 3}),
                             sizes({3, 4, 5}))
            .empty());
}

TEST_CASE("budget exhaustion is reported as such") {
  SearchSpec spec;
  spec.type = TypeMultiset::of_sizes({3, 3, 3, 3, 3});
  spec.k = sizes({3});
  spec.node_budget = 2;
  SearchOutcome outcome = search_design(spec);
  CHECK(outcome.status == SearchStatus::kBudgetExhausted);
}

TEST_CASE("proven exhaustion differs from budget exhaustion") {
  // Type 2^2 with K={3,4,5}: 4 cross pairs but no block fits (usable
  // sizes are capped by the group count, 2 < 3).
  SearchSpec spec;
  spec.type = TypeMultiset::of_sizes({2, 2});
  spec.k = sizes({3, 4, 5});
  SearchOutcome outcome = search_design(spec);
  CHECK(outcome.status == SearchStatus::kNotFoundProven);
}

TEST_CASE("search is deterministic and seeds only permute the hunt") {
  SearchSpec spec;
  spec.type = TypeMultiset::of_sizes({1, 1, 3, 3, 3});
  spec.k = sizes({3, 4, 5});
  SearchOutcome a = search_design(spec);
  SearchOutcome b = search_design(spec);
  REQUIRE(a.status == SearchStatus::kFound);
  CHECK(a.design.gdd.blocks == b.design.gdd.blocks);

  spec.seed = 99;
  SearchOutcome c = search_design(spec);
  REQUIRE(c.status == SearchStatus::kFound);
  CHECK(verify_gdd(c.design.gdd, spec.k).passed);
}
