#pragma once

// Built-in loops. Construction recipes:
//   Z_n      cyclic group, table[i][j] = i+j mod n
//   V4       Klein four-group Z2 x Z2
//   S3       symmetric group on 3 letters (composition acting on the left)
//   D4       dihedral group of order 8, r^4 = s^2 = 1, s r = r^-1 s
//   Q8       quaternion group {1,-1,i,-i,j,-j,k,-k}
//   O16      octonion sign loop {+-e0..+-e7}; ei*ej from the Fano triples
//            (1,2,4),(2,3,5),(3,4,6),(4,5,7),(5,6,1),(6,7,2),(7,1,3) read
//            cyclically, ei^2 = -1, anticommuting otherwise. Moufang,
//            nonassociative.
//   M(S3,2)  Chein double of S3, order 12: (g,0)(h,0)=(gh,0),
//            (g,0)(h,1)=(hg,1), (g,1)(h,0)=(gh^-1,1), (g,1)(h,1)=(h^-1g,0).
//            The smallest nonassociative Moufang loop.
//   CML81    smallest nonassociative commutative Moufang loop, order 81:
//            F3^4 with x*y = x+y+((x1-y1)(x2*y3-x3*y2)) e4.
//   LS5      a fixed nonassociative loop of order 5 (hardcoded Latin square).

#include "loopforge/cayley.hpp"

#include <string>
#include <vector>

namespace loopforge {

// Throws LoopError for unknown names.
CayleyLoop catalog(const std::string& name);

std::vector<std::string> catalog_names();

} // namespace loopforge
