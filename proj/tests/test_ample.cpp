#include <doctest.h>

#include "helpers.hpp"
#include "pseudospace/amalgam.hpp"
#include "pseudospace/ample.hpp"

using namespace pseudospace;
using testing_support::make_graph;

namespace {

AmpleInstance singletons(std::vector<VertexId> vs, AmpleVariant variant, std::vector<VertexId> params = {}) {
  AmpleInstance inst;
  for (VertexId v : vs) inst.tuples.push_back({v});
  inst.params = std::move(params);
  inst.variant = variant;
  return inst;
}

}  // namespace

TEST_SUITE("ample") {
  TEST_CASE("flag witness on a single chamber") {
    auto chain = chamber_chain(3);
    auto inst = flag_witness(chain);
    CHECK(inst.variant == AmpleVariant::Evans);
    CHECK(inst.params.empty());
    REQUIRE(inst.tuples.size() == 4);
    for (VertexId v = 0; v < 4; ++v) CHECK(inst.tuples[v] == std::vector<VertexId>{v});
    CHECK(verify_witness(chain, inst).verdict());
    inst.variant = AmpleVariant::Pillay;
    CHECK(verify_witness(chain, inst).verdict());

    auto got = extract_flag(chain, inst);
    CHECK(got.status == FlagExtraction::Status::Found);
    CHECK(got.flag == std::vector<VertexId>{0, 1, 2, 3});
  }

  TEST_CASE("malformed instances") {
    auto chain = chamber_chain(2);
    CHECK_THROWS_AS(validate(chain, singletons({0}, AmpleVariant::Pillay)), GraphError);
    CHECK_THROWS_AS(validate(chain, singletons({0, 7}, AmpleVariant::Pillay)), std::out_of_range);
    CHECK_THROWS_AS(validate(chain, singletons({0, 1}, AmpleVariant::Pillay, {9})), std::out_of_range);
    CHECK_THROWS_AS(flag_witness(LevelGraph(2)), GraphError);
    CHECK_NOTHROW(validate(chain, singletons({0, 1}, AmpleVariant::Evans)));
  }

  TEST_CASE("disconnected ends violate condition 2") {
    auto two = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {2, 3}});
    for (auto variant : {AmpleVariant::Pillay, AmpleVariant::Evans}) {
      auto report = verify_witness(two, singletons({0, 3}, variant));
      CHECK_FALSE(report.verdict());
      CHECK(report.violates(2));
    }
  }

  TEST_CASE("extraction needs a witness of full length") {
    auto chain = chamber_chain(3);
    auto shorter = singletons({0, 1, 2}, AmpleVariant::Evans);
    auto got = extract_flag(chain, shorter);
    CHECK(got.status == FlagExtraction::Status::NotWitness);
    CHECK(got.precondition.violates(0));

    auto two = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {2, 3}});
    auto bad = extract_flag(two, singletons({0, 3}, AmpleVariant::Evans));
    CHECK(bad.status == FlagExtraction::Status::NotWitness);
    CHECK(bad.precondition.violates(2));
  }

  TEST_CASE("generated flag witnesses") {
    int instances = 0, swapped_fail = 0, swapped = 0;
    for (int n = 1; n <= 4; ++n)
      for (auto build : {BuildVariant::Saturated, BuildVariant::Prime})
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
          auto g = generate(n, 10 + 4 * n, seed, build).graph;
          Closure cl(g);
          auto inst = flag_witness(g);
          for (auto variant : {AmpleVariant::Pillay, AmpleVariant::Evans}) {
            inst.variant = variant;
            auto report = verify_witness(cl, inst);
            CHECK_MESSAGE(report.verdict(), "n=" << n << " seed=" << seed);
          }
          auto got = extract_flag(cl, inst);
          REQUIRE(got.status == FlagExtraction::Status::Found);
          REQUIRE(got.flag.size() == static_cast<std::size_t>(n + 1));
          CHECK(is_flag(cl.index(), got.flag) != FlagKind::NotFlag);
          for (std::size_t i = 0; i < got.flag.size(); ++i) {
            VertexSet base(inst.tuples[i].begin(), inst.tuples[i].end());
            base.insert(inst.params.begin(), inst.params.end());
            CHECK(cl.acl(base).count(got.flag[i]) == 1);
          }
          ++instances;

          if (n >= 2) {
            // The ladder is order sensitive.
            auto perm = inst;
            std::swap(perm.tuples[0], perm.tuples[1]);
            swapped_fail += !verify_witness(cl, perm).verdict();
            ++swapped;
          }
        }
    CHECK(instances >= 50);
    CHECK(swapped_fail == swapped);
  }

  TEST_CASE("parameters are adjoined to every tuple") {
    auto chain = chamber_chain(2);
    // With the whole chamber as parameters every closure contains it, so the
    // ends are independent over the parameters and condition 2 fails.
    auto report = verify_witness(chain, singletons({0, 1, 2}, AmpleVariant::Pillay, {0, 1, 2}));
    CHECK(report.violates(2));
  }
}
