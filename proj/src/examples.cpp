#include "fintop/examples.hpp"

#include <stdexcept>

namespace fintop::examples {

FinSpace sierpinski() { return FinSpace::from_relations({"0", "1"}, {{"0", "1"}}); }

FinSpace ss0() {
  return FinSpace::from_relations({"a", "b", "c", "d"},
                                  {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

FinSpace example3_space() {
  return FinSpace::from_relations({"a", "b", "c"}, {{"b", "c"}, {"c", "b"}, {"b", "a"}});
}

FinSpace indiscrete2() {
  return FinSpace::from_relations({"1", "2"}, {{"1", "2"}, {"2", "1"}});
}

TopFunctor f_functor(int j) {
  FinSpace s = sierpinski();
  FinSpace x = example3_space();
  std::vector<int> arrow;
  switch (j) {
    case 1: arrow = {0, 1, 2}; break;  // identity
    case 2: arrow = {0, 1, 1}; break;  // a -> a, b -> b, c -> b
    case 3: arrow = {1, 1, 1}; break;  // constant at b
    default: throw std::invalid_argument("f_functor: j must be 1, 2 or 3");
  }
  return TopFunctor::from_cover(s, {x, x}, {{{0, 1}, arrow}});
}

ContinuousMap nonsurjective_map() {
  FinSpace e = FinSpace::from_relations({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  return ContinuousMap(e, sierpinski(), {0, 1, 1});
}

TopFunctor functor_over_ss0(const FinSpace& fiber, const std::vector<int>& bd_arrow) {
  FinSpace base = ss0();
  std::vector<int> id(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) id[i] = static_cast<int>(i);
  std::map<std::pair<int, int>, std::vector<int>> arrows;
  arrows[{0, 2}] = id;        // a <= c
  arrows[{0, 3}] = id;        // a <= d
  arrows[{1, 2}] = id;        // b <= c
  arrows[{1, 3}] = bd_arrow;  // b <= d
  return TopFunctor::from_cover(base, std::vector<FinSpace>(4, fiber), std::move(arrows));
}

TopFunctor d_functor(int j) {
  FinSpace f = indiscrete2();
  if (j == 1) return functor_over_ss0(f, {0, 1});
  if (j == 2) return functor_over_ss0(f, {1, 0});
  throw std::invalid_argument("d_functor: j must be 1 or 2");
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {"sierpinski", "ss0", "f3", "non-surjective-E",
                                                 "indiscrete-fiber"};
  return names;
}

json registry_document(const std::string& name) {
  if (name == "sierpinski") return emit_space(sierpinski());
  if (name == "ss0") return emit_space(ss0());
  if (name == "f3") return emit_functor(f_functor(3));
  if (name == "non-surjective-E") return emit_map(nonsurjective_map());
  if (name == "indiscrete-fiber") return emit_space(indiscrete2());
  throw std::invalid_argument("unknown example: " + name);
}

}  // namespace fintop::examples
