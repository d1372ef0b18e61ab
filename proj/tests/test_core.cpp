#include "doctest.h"
#include "overbook/core.hpp"
#include "test_util.hpp"

using namespace overbook;

TEST_CASE("normalize sorts by critical ratio, flags always-accept") {
  RawInstance raw;
  raw.lambda = {0.5, 0.5};
  raw.value = {0.1, 0.5};
  raw.show_prob = {0.2, 0.5};
  raw.capacity = 3;
  raw.horizon = 10;
  Instance inst = normalize(raw);
  // ratios are 0.5 and 1.0, so input type 2 comes first and is always-accept
  CHECK(inst.input_index == std::vector<int>{1, 0});
  CHECK(inst.critical_ratio[0] == doctest::Approx(1.0));
  CHECK(inst.critical_ratio[1] == doctest::Approx(0.5));
  CHECK(inst.always_accept[0]);
  CHECK_FALSE(inst.always_accept[1]);
}

TEST_CASE("normalize breaks ratio ties by value") {
  RawInstance raw;
  raw.lambda = {0.3, 0.2, 0.5};
  raw.value = {0.044, 0.1, 0.06};
  raw.show_prob = {0.2, 0.5, 0.3};
  raw.capacity = 5;
  raw.horizon = 25;
  Instance inst = normalize(raw);
  CHECK(inst.critical_ratio[0] == doctest::Approx(0.22));
  CHECK(inst.critical_ratio[1] == doctest::Approx(0.2));
  CHECK(inst.critical_ratio[2] == doctest::Approx(0.2));
  // tie between input types 2 and 3 resolved by the larger value 0.1
  CHECK(inst.input_index == std::vector<int>{0, 1, 2});
  CHECK(inst.value[1] == doctest::Approx(0.1));
}

TEST_CASE("refunds shift the effective value and ratio") {
  RawInstance raw;
  raw.lambda = {1.0};
  raw.value = {0.3};
  raw.show_prob = {0.5};
  raw.refund = {0.1};
  raw.capacity = 2;
  raw.horizon = 5;
  Instance inst = normalize(raw);
  CHECK(inst.eff_value[0] == doctest::Approx(0.25));
  CHECK(inst.critical_ratio[0] == doctest::Approx(0.5));
}

TEST_CASE("zero show probability means infinite ratio and always-accept") {
  RawInstance raw;
  raw.lambda = {0.8, 0.2};
  raw.value = {0.5, 0.1};
  raw.show_prob = {1.0, 0.0};
  raw.capacity = 4;
  raw.horizon = 8;
  Instance inst = normalize(raw);
  CHECK(std::isinf(inst.critical_ratio[0]));
  CHECK(inst.input_index[0] == 1);
  CHECK(inst.always_accept[0]);
}

TEST_CASE("normalize rejects bad fields") {
  RawInstance raw;
  raw.lambda = {0.5, 0.4};  // sums to 0.9
  raw.value = {0.1, 0.2};
  raw.show_prob = {0.5, 0.5};
  raw.capacity = 1;
  raw.horizon = 5;
  CHECK_THROWS_AS(normalize(raw), std::invalid_argument);
  raw.lambda = {0.5, 0.5};
  raw.value = {1.0, 0.2};  // v must stay below 1
  CHECK_THROWS_AS(normalize(raw), std::invalid_argument);
  raw.value = {0.1, 0.2};
  raw.horizon = 0;
  CHECK_THROWS_AS(normalize(raw), std::invalid_argument);
  raw.horizon = 5;
  raw.capacity = -1;
  CHECK_THROWS_AS(normalize(raw), std::invalid_argument);
  raw.capacity = 1;
  raw.refund = {0.2, 0.1};  // refund above value
  CHECK_THROWS_AS(normalize(raw), std::invalid_argument);
}

TEST_CASE("normalize is idempotent and the permutation recovers the input") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    test::InstanceOptions opt;
    opt.refunds = trial % 2 == 1;
    opt.multi_unit = trial % 3 == 0;
    RawInstance raw = test::random_raw_instance(rng, opt);
    Instance inst = normalize(raw);

    Instance again = normalize(to_raw(inst));
    CHECK(again.arrival_prob == inst.arrival_prob);
    CHECK(again.value == inst.value);
    CHECK(again.show_prob == inst.show_prob);
    CHECK(again.critical_ratio == inst.critical_ratio);
    for (int j = 0; j < again.k; ++j) CHECK(again.input_index[j] == j);

    CHECK(to_input_order(inst, inst.value) == raw.value);
    CHECK(to_input_order(inst, inst.show_prob) == raw.show_prob);
    CHECK(to_input_order(inst, inst.arrival_prob) == raw.lambda);

    for (int j = 0; j + 1 < inst.k; ++j)
      CHECK(inst.critical_ratio[j] >= inst.critical_ratio[j + 1]);
  }
}

TEST_CASE("count_window counts per type") {
  ArrivalSequence a = {0, 1, 0};
  CHECK(count_window(a, 1, 3, 2) == std::vector<int>{2, 1});
  CHECK(count_window(a, 2, 2, 2) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(count_window(a, 0, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(count_window(a, 2, 4, 2), std::invalid_argument);
}

TEST_CASE("count_window sums to the window length") {
  Rng rng(11);
  RawInstance raw;
  raw.lambda = {0.2, 0.3, 0.5};
  raw.value = {0.1, 0.2, 0.3};
  raw.show_prob = {0.5, 0.6, 0.7};
  raw.capacity = 5;
  raw.horizon = 40;
  Instance inst = normalize(raw);
  for (int trial = 0; trial < 20; ++trial) {
    ArrivalSequence a = sample_arrivals(inst, rng.uniform_int(1 << 20));
    auto counts = count_window(a, 1, inst.horizon, inst.k);
    int total = 0;
    for (int c : counts) total += c;
    CHECK(total == inst.horizon);
    int t = 1 + rng.uniform_int(inst.horizon - 1);
    auto unit = count_window(a, t, t, inst.k);
    int unit_total = 0;
    for (int c : unit) unit_total += c;
    CHECK(unit_total == 1);
  }
}

TEST_CASE("instance files round-trip") {
  RawInstance raw;
  raw.lambda = {0.25, 0.75};
  raw.value = {0.3, 0.6};
  raw.show_prob = {0.4, 0.9};
  raw.refund = {0.0, 0.2};
  raw.demand = {2, 1};
  raw.capacity = 7;
  raw.horizon = 30;
  RawInstance parsed = parse_instance_json(instance_to_json(raw));
  CHECK(parsed.lambda == raw.lambda);
  CHECK(parsed.value == raw.value);
  CHECK(parsed.show_prob == raw.show_prob);
  CHECK(parsed.refund == raw.refund);
  CHECK(parsed.demand == raw.demand);
  CHECK(parsed.capacity == raw.capacity);
  CHECK(parsed.horizon == raw.horizon);
  CHECK_THROWS_AS(parse_instance_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json("{\"lambda\":[1.0]}"), std::invalid_argument);
}
