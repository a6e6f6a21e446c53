#include "doctest.h"
#include "support.hpp"

using namespace wst;

namespace {

const std::vector<std::vector<int>> kTriples{{1, 5, 9}, {2, 5, 8}, {3, 4, 6}, {2, 7, 8}, {1, 6, 9}};
const std::vector<int> kUniverse{1, 2, 3, 4, 5, 6, 7, 8, 9};

// Maps a witness row of component j back to the 1-based index of its triple:
// by bottom positions (empty-world mode) or by the row's values (instance mode).
std::set<int> witness_triples(const GWSD& w, const Witness& wit, const std::vector<std::vector<int>>& triples,
                              bool by_bottoms) {
  GWSD c = canonicalize(w);
  std::set<int> out;
  for (std::size_t j = 0; j < wit.choice.size(); ++j) {
    const Relation& comp = c.components[j];
    const Tuple& row = comp.tuples()[wit.choice[j]];
    std::set<int> elems;
    for (std::size_t p = 0; p < row.size(); ++p) {
      if (by_bottoms) {
        if (row[p].is_bottom()) elems.insert(std::stoi(comp.schema()[p].parts()[1].substr(1)));
      } else {
        elems.insert(std::stoi(row[p].text()));
      }
    }
    for (std::size_t t = 0; t < triples.size(); ++t)
      if (std::set<int>(triples[t].begin(), triples[t].end()) == elems) out.insert(static_cast<int>(t + 1));
  }
  return out;
}

EnumBudget decision_budget(const GWSD& w, const std::set<Value>& extra) {
  std::size_t k = variable_count(w);
  return as_budget(oracle_pool(constants_of(w), extra, k), 0);
}

void check_witness(const GWSD& w, const Decision& d, const std::function<bool(const World&)>& ok) {
  REQUIRE(d.witness);
  if (d.witness->world) {
    CHECK(ok(*d.witness->world));
  } else {
    auto world = realize(w, *d.witness);
    REQUIRE(world);
    CHECK(ok(*world));
  }
}

}  // namespace

TEST_CASE("tuple possibility examples") {
  auto dt = load_as<GWSD>("fig-dt.gwsd");
  Decision d = tuple_possible(dt, "R", {C(1)});
  CHECK(d.verdict);
  CHECK(d.method == Method::kPtime);
  check_witness(dt, d, [](const World& x) { return x.at("R").contains({C(1)}); });

  CHECK_FALSE(tuple_possible(load_as<GWSD>("fig5.gwsd"), "R", {C(1), C(2)}).verdict);

  auto census = load_as<GWSD>("census.wsd");
  Decision c = tuple_possible(census, "R", {C(185), C("Smith"), C(1)});
  CHECK(c.verdict);
  CHECK_FALSE(tuple_possible(census, "R", {C(186), C("Smith"), C(1)}).verdict);
}

TEST_CASE("tuple certainty examples") {
  auto dt = load_as<GWSD>("fig-dt.gwsd");
  CHECK(tuple_certain(dt, "R", {C(1)}).verdict);
  CHECK_FALSE(tuple_certain(dt, "S", {C(1)}).verdict);
  CHECK(tuple_certain(dt, "S", {C(1)}).method == Method::kPtime);

  GWSD empty = dt;
  empty.global = Conjunction{Atom::ne(V("y"), V("y"))};
  CHECK(tuple_certain(empty, "S", {C(42)}).verdict);

  // Attribute-level decompositions are refused.
  CHECK_THROWS_AS(tuple_certain(load_as<GWSD>("census.wsd"), "R", {C(185), C("Smith"), C(1)}), LevelError);
}

TEST_CASE("instance possibility and certainty on fig 4") {
  auto w = load_as<GWSD>("fig4.wsd");
  World first({{"R", rel({"A", "B"}, {{C(1), C(2)}, {C(5), C(6)}})}});
  World wrong({{"R", rel({"A", "B"}, {{C(1), C(2)}, {C(3), C(4)}})}});
  Decision p = instance_possible(w, first);
  CHECK(p.verdict);
  check_witness(w, p, [&](const World& x) { return x == first; });
  CHECK_FALSE(instance_possible(w, wrong).verdict);
  CHECK_FALSE(instance_certain(w, first).verdict);
  CHECK_FALSE(empty_world_possible(w).verdict);
}

TEST_CASE("instance certainty degenerate cases") {
  GWSD single;
  single.schema = {{"R", {"A"}}};
  single.components.push_back(rel({"R.d1.A"}, {{C(1)}}));
  single.components.push_back(rel({"R.d2.A"}, {{C(2)}}));
  World only({{"R", rel({"A"}, {{C(1)}, {C(2)}})}});
  CHECK(instance_certain(single, only).verdict);

  GWSD var = single;
  var.components[1] = rel({"R.d2.A"}, {{V("x")}});
  CHECK_FALSE(instance_certain(var, only).verdict);
  CHECK_FALSE(instance_certain(var, World({{"R", rel({"A"}, {{C(1)}})}})).verdict);
}

TEST_CASE("empty world possibility") {
  GWSD bottoms;
  bottoms.schema = {{"R", {"A"}}};
  bottoms.components.push_back(rel({"R.d1.A"}, {{B()}}));
  bottoms.components.push_back(rel({"R.d2.A"}, {{B()}}));
  CHECK(empty_world_possible(bottoms).verdict);
}

TEST_CASE("exact cover reduction") {
  Encoding enc = encode_x3c(kUniverse, kTriples);
  CHECK(enc.wsd.components.size() == 3);
  for (const auto& c : enc.wsd.components) CHECK(c.size() == 5);
  CHECK(print(enc.wsd) == print(load_as<GWSD>("x3c-empty.wsd")));
  Decision d = empty_world_possible(enc.wsd);
  CHECK(d.verdict);
  REQUIRE(d.witness);
  CHECK(witness_triples(enc.wsd, *d.witness, kTriples, true) == std::set<int>{1, 3, 4});

  Encoding inst = encode_x3c(kUniverse, kTriples, X3CMode::kInstance);
  REQUIRE(inst.instance);
  CHECK(print(inst.wsd) == print(load_as<GWSD>("x3c-instance.wsd")));
  Decision i = instance_possible(inst.wsd, *inst.instance);
  CHECK(i.verdict);
  REQUIRE(i.witness);
  CHECK(witness_triples(inst.wsd, *i.witness, kTriples, false) == std::set<int>{1, 3, 4});

  CHECK_THROWS_AS(encode_x3c({1, 2, 3, 4}, {{1, 2, 3}}), InstanceError);
  CHECK_THROWS_AS(encode_x3c({1, 2, 3}, {{1, 2, 4}}), InstanceError);
}

TEST_CASE("3CNF and 3DNF reductions") {
  std::vector<Clause> cnf{{1, 2, 3}, {1, -2, 4}, {-1, 2, -4}};
  Encoding e = encode_cnf3(cnf);
  CHECK(print(e.wsd) == print(load_as<GWSD>("3cnf.wsd")));
  Decision d = q_decide(QProblem::kTuplePossible, e.wsd, e.query, *e.target);
  CHECK(d.verdict);
  check_witness(e.wsd, d, [&](const World& x) { return eval_on_world(e.query, x).contains(*e.target); });
  // The nullary answer can also be asked for as ().
  CHECK(q_decide(QProblem::kTuplePossible, e.wsd, e.query, Tuple{}).verdict);

  Encoding h = encode_dnf3(cnf);
  CHECK(h.wsd.components.size() == 4);
  CHECK(print(h.wsd) == print(load_as<GWSD>("3dnf.wsd")));
  Decision c = q_decide(QProblem::kTupleCertain, h.wsd, h.query, *h.target);
  CHECK_FALSE(c.verdict);
  check_witness(h.wsd, c, [&](const World& x) { return !eval_on_world(h.query, x).contains(*h.target); });
}

TEST_CASE("identity query agrees with plain tuple possibility") {
  Rng rng(81);
  for (int i = 0; i < 50; ++i) {
    GWSD w = random_gwsd(rng);
    Tuple t{C(uniform(rng, 1, 4))};
    CHECK(q_decide(QProblem::kTuplePossible, w, parse_query("R"), t).verdict == tuple_possible(w, "R", t).verdict);
    CHECK(q_decide(QProblem::kTupleCertain, w, parse_query("R"), t).verdict == tuple_certain(w, "R", t).verdict);
  }
}

TEST_CASE("property: plain decisions agree with the enumeration oracle") {
  Rng rng(82);
  for (int i = 0; i < 200; ++i) {
    GWSD w = random_gwsd(rng);
    std::vector<std::pair<std::string, Tuple>> targets;
    for (int k = 0; k < 3; ++k) {
      targets.push_back({"R", {C(uniform(rng, 1, 5))}});
      targets.push_back({"S", {C(uniform(rng, 1, 5)), C(uniform(rng, 1, 5))}});
    }
    std::set<Value> extra;
    for (const auto& [r, t] : targets) extra.insert(t.begin(), t.end());
    auto b = decision_budget(w, extra);
    WorldSet worlds = oracle_worlds(w, b.pool);
    for (const auto& [r, t] : targets) {
      Decision p = tuple_possible(w, r, t);
      Decision c = tuple_certain(w, r, t);
      CHECK(p.verdict == oracle_tuple_possible(worlds, r, t));
      CHECK(c.verdict == oracle_tuple_certain(worlds, r, t));
      if (c.verdict && !worlds.empty()) CHECK(p.verdict);
      if (p.verdict) check_witness(w, p, [&](const World& x) { return world_has(x, r, t); });
    }
    std::vector<World> instances;
    if (!worlds.empty()) {
      auto it = worlds.begin();
      std::advance(it, uniform(rng, 0, static_cast<int>(worlds.size()) - 1));
      instances.push_back(*it);
    }
    instances.push_back(World({{"R", rel({"A"}, {{C(1)}})}, {"S", rel({"B", "C"}, {})}}));
    instances.push_back(World({{"R", rel({"A"}, {})}, {"S", rel({"B", "C"}, {})}}));
    for (const auto& inst : instances) {
      // Instance constants may be new to the pool.
      std::set<Value> ic = extra;
      for (const auto& [n, r] : inst.relations())
        for (const auto& t : r.tuples()) ic.insert(t.begin(), t.end());
      WorldSet iw = oracle_worlds(w, decision_budget(w, ic).pool);
      Decision p = instance_possible(w, inst);
      CHECK(p.verdict == oracle_instance_possible(iw, inst));
      if (p.verdict) check_witness(w, p, [&](const World& x) { return x == inst; });
      CHECK(instance_certain(w, inst).verdict == oracle_instance_certain(iw, inst));
    }
    World none({{"R", rel({"A"}, {})}, {"S", rel({"B", "C"}, {})}});
    CHECK(empty_world_possible(w).verdict == oracle_instance_possible(worlds, none));
  }
}

TEST_CASE("property: exact cover search agrees with the reduction") {
  Rng rng(83);
  for (int i = 0; i < 60; ++i) {
    int n = coin(rng) ? 6 : 9;
    std::vector<int> universe;
    for (int e = 1; e <= n; ++e) universe.push_back(e);
    std::vector<std::vector<int>> triples;
    for (int k = uniform(rng, 1, 4); k > 0; --k) {
      std::vector<int> u = universe;
      std::shuffle(u.begin(), u.end(), rng);
      triples.push_back({u[0], u[1], u[2]});
    }
    bool expected = oracle_exact_cover(n, triples);
    Encoding e = encode_x3c(universe, triples);
    CHECK(empty_world_possible(e.wsd).verdict == expected);
    Encoding f = encode_x3c(universe, triples, X3CMode::kInstance);
    CHECK(instance_possible(f.wsd, *f.instance).verdict == expected);
  }
}

TEST_CASE("property: CNF and DNF reductions agree with truth tables") {
  Rng rng(84);
  for (int i = 0; i < 40; ++i) {
    auto clauses = random_clauses(rng, uniform(rng, 3, 4), uniform(rng, 1, 4));
    Encoding e = encode_cnf3(clauses);
    CHECK(q_decide(QProblem::kTuplePossible, e.wsd, e.query, *e.target).verdict == oracle_cnf_sat(clauses));
    Encoding h = encode_dnf3(clauses);
    CHECK(q_decide(QProblem::kTupleCertain, h.wsd, h.query, *h.target).verdict == oracle_dnf_tautology(clauses));
  }
}
