#include "nilrigid/poly_lists.hpp"

namespace nilrigid::lists {

namespace {

std::vector<MultiPoly> parse_all(std::initializer_list<const char*> texts) {
  std::vector<MultiPoly> out;
  for (const char* t : texts) out.push_back(MultiPoly::parse(t));
  return out;
}

}  // namespace

std::vector<MultiPoly> p_5_4() {
  return parse_all({"t123*t345", "t124*t345 + t234*t145 - t134*t245"});
}

std::vector<MultiPoly> q_5_3() { return parse_all({"t123*t134*t345", "t123*t234*t345"}); }

std::vector<MultiPoly> i64_degree2() {
  return parse_all({
      "t123*t345",
      "t134*t456",
      "t234*t456",
      "t123*t356 + t124*t456",
      "t124*t345 + t234*t145 - t134*t245",
      "t135*t456 + t345*t156 - t145*t356",
      "t235*t456 + t345*t256 - t245*t356",
      "t123*t346 - t125*t456 - t245*t156 + t145*t256",
      "t124*t346 + t234*t146 - t134*t246 + t125*t356 + t235*t156 - t135*t256",
  });
}

std::vector<MultiPoly> i64_degree4() {
  std::vector<MultiPoly> out;
  // t123 * (t134 | t234) * (t145 | t245 | t345) * (t156 | t256 | t356 | t456)
  for (const char* second : {"t134", "t234"}) {
    for (const char* third : {"t145", "t245", "t345"}) {
      for (const char* fourth : {"t156", "t256", "t356", "t456"}) {
        out.push_back(MultiPoly::parse(std::string("t123*") + second + "*" + third + "*" + fourth));
      }
    }
  }
  return out;
}

std::vector<MultiPoly> q_6_3() {
  return parse_all({
      "t123*t134*t345",
      "t123*t234*t345",
      "t134*t145*t456",
      "t134*t245*t456",
      "t134*t345*t456",
      "t145*t234*t456",
      "t234*t245*t456",
      "t234*t345*t456",
      "(t134*t235 - t135*t234)*t456",
      "t123*t145*t356 + t124*t145*t456",
      "t123*t245*t356 + t124*t245*t456",
      "t123*t345*t356 + t124*t345*t456",
      "t123*t134*t346 + t123*t135*t356 + t124*t135*t456 - t125*t134*t456",
      "t123*t234*t346 + t123*t235*t356 + t124*t235*t456 - t125*t234*t456",
  });
}

std::map<Var, Rational> restriction(bool mirrored) {
  if (mirrored) {
    // Image of the set below under e_1 <-> e_2: t_{1,j,k} <-> t_{2,j,k}.
    return zero_assignment({Var(1, 2, 4), Var(1, 3, 5), Var(1, 5, 6), Var(2, 3, 4), Var(2, 4, 5), Var(2, 4, 6),
                            Var(3, 4, 5), Var(3, 5, 6), Var(4, 5, 6)});
  }
  return zero_assignment({Var(1, 2, 4), Var(1, 3, 4), Var(1, 4, 5), Var(1, 4, 6), Var(2, 3, 5), Var(2, 5, 6),
                          Var(3, 4, 5), Var(3, 5, 6), Var(4, 5, 6)});
}

std::vector<MultiPoly> restricted_i64() { return parse_all({"t123*t234*t245*t156", "t123*t346 - t245*t156"}); }

}  // namespace nilrigid::lists
