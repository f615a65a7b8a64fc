#pragma once

#include <string>

#include "besov/params.hpp"

namespace besov {

// Verdict of the box-indicator membership test, with the clause that
// decided it spelled out as a formula over (s, p, q, tau, n).
struct MembershipVerdict {
  bool member = false;
  std::string active_condition;
};

enum class Extension { Extends, DoesNotExtend, Open };

// Whether the pairing with the box indicator extends to a continuous
// linear functional on the whole space. Open is a first-class outcome:
// one parameter slab is genuinely unresolved and is reported as such.
struct FunctionalVerdict {
  Extension value = Extension::DoesNotExtend;
  std::string active_condition;
};

const char* to_string(Extension e);

// Is the indicator of the unit cube a member of the space?
// For tau > 1/p: member iff s <= n(1/p - tau). For tau <= 1/p the
// classical-scale condition also applies: s < 1/p, or s = 1/p with
// q = inf, and in addition s <= n(1/p - tau).
MembershipVerdict chi_membership(const BesovParams& params);

// Membership of the basis elements themselves. The content of the
// corresponding characterization is that this coincides with
// chi_membership; exposing both makes the identity a tested statement.
MembershipVerdict haar_element_membership(const BesovParams& params);

// Three-way extension verdict. The Open slab is p < 1,
// s = (1 - tau p) n (1/p - 1), tau in (0, (n-1)/(n p)], q in (p, 1].
FunctionalVerdict functional_verdict(const BesovParams& params);

// Embedding into the uniformly continuous bounded functions:
// s + n(tau - 1/p) > 0.
bool cub_embedding(const BesovParams& params);

// Smallest generator smoothness degree N1 with
// N1 + 1 > max{ n + n/p - n tau - s, 2 sigma_p + 2n + n tau + 1,
//               n(1 + 1/p + 1/2), n + s, -s + n/p }.
long long min_generator_regularity(const BesovParams& params);

}  // namespace besov
