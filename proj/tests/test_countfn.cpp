#include <doctest.h>

#include "ppa/countfn.hpp"

using namespace ppa;

namespace {

Natural at(const CountFn& f, const Natural& n) { return f.eval(n).value(); }

}  // namespace

TEST_CASE("basic kinds") {
  CHECK(at(CountFn::identity(), 7) == 7);
  CHECK(at(CountFn::affine(2, 3), 10) == 23);
  CHECK(at(CountFn::constant(4), 1000) == 4);
  CHECK(at(CountFn{}, 5) == 0);
  const CountFn t = CountFn::table({3, 1, 2});
  CHECK(at(t, 2) == 3);
  CHECK(at(t, 100) == 3);
  CHECK(at(CountFn::max({CountFn::constant(5), CountFn::identity()}), 3) == 5);
  CHECK(at(CountFn::max({CountFn::constant(5), CountFn::identity()}), 9) == 9);
  CHECK(at(CountFn::compose(CountFn::affine(2, 0), CountFn::affine(1, 1)), 4) == 10);
}

TEST_CASE("iterate") {
  CHECK(at(iterate(CountFn::affine(1, 1), 3), 0) == 3);
  CHECK(at(iterate(CountFn::affine(2, 0), 5), 1) == 32);
  CHECK(at(iterate(CountFn::affine(7, 3), 0), 11) == 11);
  CHECK(at(iterate(CountFn::constant(4), 1000000), 0) == 4);
  CHECK(at(iterate(CountFn::identity(), 1000000), 9) == 9);
}

TEST_CASE("majorize") {
  const CountFn t = majorize(CountFn::table({3, 1, 2, 5}));
  CHECK(t.table_values() == std::vector<Natural>{3, 3, 3, 5});
  CHECK(majorize(CountFn::identity()).describe() == "id");
  CHECK(majorize(CountFn::constant(4)).describe() == "const 4");
  const CountFn wave = CountFn::closure(
      "", [](EvalContext&, const Natural& n) { return Natural(n % 3); }, false);
  const CountFn m = majorize(wave);
  CHECK(m.monotone());
  CHECK(at(m, 0) == 0);
  CHECK(at(m, 1) == 1);
  CHECK(at(m, 5) == 2);
}

TEST_CASE("fspec parsing") {
  std::vector<std::string> notes;
  CHECK(parse_fspec("const 3").describe() == "const 3");
  CHECK(parse_fspec(" id ").describe() == "id");
  CHECK(parse_fspec("affine 2 1").describe() == "affine 2 1");
  CHECK(parse_fspec("expceil 4").describe() == "expceil 4");
  CHECK(at(parse_fspec("expceil 4"), 2) == 30);
  const CountFn t = parse_fspec("table 3,1,2", &notes);
  CHECK(notes.size() == 1);
  CHECK(t.table_values() == std::vector<Natural>{3, 3, 3});
  notes.clear();
  parse_fspec("table 1,2,2", &notes);
  CHECK(notes.empty());
  CHECK_THROWS_AS(parse_fspec("quadratic 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fspec("const"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fspec("const -1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fspec("table"), std::invalid_argument);
}

TEST_CASE("budget") {
  Budget small;
  small.max_bits = 16;
  CHECK(CountFn::affine(2, 0).eval(100000, small).is_exact() == false);
  CHECK(iterate(CountFn::affine(2, 0), 100).eval(1, small).to_string() == "BUDGET_EXCEEDED(eval)");
  const CountFn named = CountFn::closure("inner", [](EvalContext& cx, const Natural& n) {
    return cx.bound(n * n);
  });
  CHECK(named.eval(1 << 10, small).stage() == "inner");
  Budget few;
  few.max_calls = 10;
  CHECK_FALSE(iterate(CountFn::affine(1, 1), 100).eval(0, few).is_exact());
  CHECK(iterate(CountFn::affine(1, 1), 100).eval(0).value() == 100);
}

TEST_CASE("budget soundness: exact values survive a larger budget") {
  const CountFn f = iterate(CountFn::affine(3, 1), 40);
  for (std::size_t bits : {16u, 32u, 64u, 128u}) {
    Budget b;
    b.max_bits = bits;
    const BoundValue v = f.eval(5, b);
    if (!v.is_exact()) continue;
    Budget bigger = b;
    bigger.max_bits *= 4;
    CHECK(f.eval(5, bigger) == v);
  }
}
