#pragma once

// Polynomial lists written out in the literature for n = 5, 6, used as
// fixed expected values by the reproduction suites and tests.

#include <map>
#include <vector>

#include "nilrigid/poly.hpp"

namespace nilrigid::lists {

/// P1, P2: generators of I_{5,4}.
std::vector<MultiPoly> p_5_4();
/// Q1, Q2: SN_3 = 0 for n = 5.
std::vector<MultiPoly> q_5_3();
/// Degree 2 (J) and degree 4 (N_4) generators of I_{6,4} as printed.
std::vector<MultiPoly> i64_degree2();
std::vector<MultiPoly> i64_degree4();
/// Q1..Q14: SN_3 = 0 for n = 6. q_6_3()[i-1] is Q_i.
std::vector<MultiPoly> q_6_3();

/// Variables set to zero to restrict I_{6,4}; Q14 survives as
/// t_{1,2,3}t_{2,3,4}t_{3,4,6}. `mirrored` applies e_1 <-> e_2, which keeps
/// t_{1,3,4} and zeroes t_{2,3,4}; Q13 then survives as t_{1,2,3}t_{1,3,4}t_{3,4,6}.
std::map<Var, Rational> restriction(bool mirrored = false);
/// Image of I_{6,4} under restriction(): the two printed generators.
std::vector<MultiPoly> restricted_i64();

}  // namespace nilrigid::lists
